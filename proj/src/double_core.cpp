#include "lerf/double_core.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "lerf/errors.hpp"
#include "lerf/free_cover.hpp"

namespace lerf {

namespace {

// Color mask per positive letter index for quick tests.
bool has_color_edge(const DoubleSpec& spec, const BicoloredGraph& g, Vertex v, bool x_color) {
  for (const auto& arc : g.out(v)) {
    if (spec.is_x_letter(arc.label) == x_color) {
      return true;
    }
  }
  return false;
}

}  // namespace

DoubleSpec DoubleSpec::make(const Alphabet& x_alphabet, const Word& w) {
  return make_with(x_alphabet, x_alphabet.primed(), w);
}

DoubleSpec DoubleSpec::make_with(const Alphabet& x_alphabet, const Alphabet& y_alphabet,
                                 const Word& w) {
  if (x_alphabet.size() == 0) {
    throw SpecInvariantError("factor alphabet is empty");
  }
  if (x_alphabet.size() != y_alphabet.size()) {
    throw SpecInvariantError("factor and mirror alphabets differ in size");
  }
  for (const auto& s : x_alphabet.symbols()) {
    if (y_alphabet.find(s)) {
      throw SpecInvariantError("factor and mirror alphabets share symbol '" + s + "'");
    }
  }
  if (w.empty()) {
    throw SpecInvariantError("amalgamating word is trivial");
  }
  for (Letter l : w) {
    if (!x_alphabet.contains(l)) {
      throw SpecInvariantError("amalgamating word leaves the factor alphabet");
    }
  }
  const auto decomposition = cyclic_reduce(w);
  if (!decomposition.conjugator.empty()) {
    throw SpecInvariantError("amalgamating word is not cyclically reduced");
  }
  if (primitive_root(w).exponent != 1) {
    throw SpecInvariantError("amalgamating word is a proper power, so its cyclic group is not malnormal");
  }

  DoubleSpec spec;
  spec.x_ = x_alphabet;
  spec.y_ = y_alphabet;
  spec.joint_ = Alphabet::join(x_alphabet, y_alphabet);
  spec.w_ = w;
  spec.w_mirror_ = spec.mirror(w);
  return spec;
}

Letter DoubleSpec::mirror(Letter l) const {
  const auto n = static_cast<Letter>(x_.size());
  const Letter a = l < 0 ? -l : l;
  const Letter image = a <= n ? a + n : a - n;
  return l < 0 ? -image : image;
}

Word DoubleSpec::mirror(const Word& word) const {
  std::vector<Letter> out;
  out.reserve(word.size());
  for (Letter l : word) {
    out.push_back(mirror(l));
  }
  return Word(std::move(out));
}

std::vector<Letter> DoubleSpec::x_letters() const {
  std::vector<Letter> out(x_.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<Letter>(i + 1);
  }
  return out;
}

std::vector<Letter> DoubleSpec::y_letters() const {
  std::vector<Letter> out(y_.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<Letter>(x_.size() + i + 1);
  }
  return out;
}

DoubleSpec DoubleSpec::swapped() const {
  DoubleSpec spec;
  spec.x_ = y_;
  spec.y_ = x_;
  spec.joint_ = Alphabet::join(y_, x_);
  // In the swapped joint alphabet the old mirror word is spelled over the
  // leading (factor) range, which is exactly where w must live.
  std::vector<Letter> w_letters;
  for (Letter l : w_) {
    const Letter a = (l < 0 ? -l : l);
    const auto image = static_cast<Letter>(a);  // same index in the new factor
    w_letters.push_back(l < 0 ? -image : image);
  }
  spec.w_ = Word(std::move(w_letters));
  spec.w_mirror_ = spec.mirror(spec.w_);
  return spec;
}

std::vector<Vertex> bichromatic_vertices(const DoubleSpec& spec, const BicoloredGraph& g) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (has_color_edge(spec, g, v, true) && has_color_edge(spec, g, v, false)) {
      out.push_back(v);
    }
  }
  return out;
}

std::optional<CompatibilityViolation> find_compatibility_violation(const DoubleSpec& spec,
                                                                   const BicoloredGraph& g) {
  const Word w_inv = spec.w().inverse();
  const Word w_mirror_inv = spec.w_mirror().inverse();

  // One direction of a power orbit: steps until either trace leaves the
  // graph or the pair of reached vertices repeats.
  struct OrbitWalk {
    const Word& step_x;
    const Word& step_y;
    Vertex x_at;
    Vertex y_at;
    std::set<std::pair<Vertex, Vertex>> seen;
    bool active = true;

    // Advances one power; reports endpoints when both traces complete.
    std::optional<std::pair<Vertex, Vertex>> advance(const BicoloredGraph& graph) {
      if (!active || !seen.insert({x_at, y_at}).second) {
        active = false;
        return std::nullopt;
      }
      const auto tx = trace(graph, x_at, step_x);
      const auto ty = trace(graph, y_at, step_y);
      if (!tx.complete || !ty.complete) {
        active = false;
        return std::nullopt;
      }
      x_at = tx.end;
      y_at = ty.end;
      return std::make_pair(x_at, y_at);
    }
  };

  for (Vertex v : bichromatic_vertices(spec, g)) {
    // Exponents interleaved by absolute value, positive first; this is the
    // scan order precover completion merges in.
    OrbitWalk forward{spec.w(), spec.w_mirror(), v, v, {}, true};
    OrbitWalk backward{w_inv, w_mirror_inv, v, v, {}, true};
    for (int k = 1; forward.active || backward.active; ++k) {
      if (auto ends = forward.advance(g); ends && ends->first != ends->second) {
        return CompatibilityViolation{v, k, ends->first, ends->second};
      }
      if (auto ends = backward.advance(g); ends && ends->first != ends->second) {
        return CompatibilityViolation{v, -k, ends->first, ends->second};
      }
    }
  }
  return std::nullopt;
}

bool is_amalgam_compatible(const DoubleSpec& spec, const BicoloredGraph& g) {
  return !find_compatibility_violation(spec, g).has_value();
}

namespace {

bool monochromatic_components_are_covers(const DoubleSpec& spec, const BicoloredGraph& g) {
  if (!g.is_well_labeled()) {
    return false;
  }
  for (const bool x_color : {true, false}) {
    const auto letters = x_color ? spec.x_letters() : spec.y_letters();
    const auto split = components(g, letters);
    for (const auto& comp : split.components) {
      for (Vertex v : comp.vertices) {
        if (!is_saturated_at(g, v, letters)) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

bool is_precover(const DoubleSpec& spec, const BicoloredGraph& g) {
  return monochromatic_components_are_covers(spec, g) && is_amalgam_compatible(spec, g);
}

bool is_double_cover(const DoubleSpec& spec, const BicoloredGraph& g) {
  if (g.vertex_count() == 0 || !is_precover(spec, g)) {
    return false;
  }
  const auto x = spec.x_letters();
  const auto y = spec.y_letters();
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!is_saturated_at(g, v, x) || !is_saturated_at(g, v, y)) {
      return false;
    }
  }
  return true;
}

CompletionResult complete_precover(const DoubleSpec& spec, const BicoloredGraph& g) {
  if (!monochromatic_components_are_covers(spec, g)) {
    throw Property1Violated("a monochromatic component is not a cover of its factor");
  }

  CompletionResult result;
  result.graph = g;
  result.vertex_map.resize(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    result.vertex_map[v] = v;
  }

  while (auto violation = find_compatibility_violation(spec, result.graph)) {
    const Vertex a = violation->x_end;
    const Vertex b = violation->y_end;
    // Under the completion preconditions the two stray endpoints are
    // monochromatic and of different colors, so identifying them cannot
    // disturb any monochromatic component.
    const bool a_x = has_color_edge(spec, result.graph, a, true);
    const bool a_y = has_color_edge(spec, result.graph, a, false);
    const bool b_x = has_color_edge(spec, result.graph, b, true);
    const bool b_y = has_color_edge(spec, result.graph, b, false);
    if ((a_x && a_y) || (b_x && b_y) || (a_x && b_x) || (a_y && b_y)) {
      throw CompletionError("endpoints to identify are not monochromatic of different colors");
    }
    const auto merged = merge_pair(result.graph, a, b);
    result.graph = merged.graph;
    for (auto& image : result.vertex_map) {
      image = merged.vertex_map[image];
    }
  }
  return result;
}

LabeledGraph graft(const LabeledGraph& host, Vertex host_vertex, const LabeledGraph& patch,
                   Vertex patch_vertex, std::span<const Letter> subalphabet) {
  if (host_vertex >= host.vertex_count() || patch_vertex >= patch.vertex_count()) {
    throw DanglingVertex("graft vertex outside its graph");
  }
  if (host.alphabet() != patch.alphabet()) {
    throw UnknownLetter("graft patch uses a different alphabet");
  }
  std::vector<bool> in_sub(host.alphabet().size() + 1, false);
  for (Letter l : subalphabet) {
    in_sub[static_cast<std::size_t>(l < 0 ? -l : l)] = true;
  }
  auto sub_letter = [&](Letter l) {
    return in_sub[static_cast<std::size_t>(l < 0 ? -l : l)];
  };
  for (const auto& e : patch.positive_edges()) {
    if (!sub_letter(e.label)) {
      throw UnknownLetter("graft patch carries an edge outside the subalphabet");
    }
  }
  if (!host.is_well_labeled() || !patch.is_well_labeled()) {
    throw NotWellLabeled("graft requires well-labeled graphs");
  }

  // Follow the subalphabet component of host_vertex into the patch; the map
  // is forced edge by edge because both graphs are well-labeled.
  constexpr Vertex kUnset = static_cast<Vertex>(-1);
  std::vector<Vertex> image(host.vertex_count(), kUnset);
  image[host_vertex] = patch_vertex;
  std::vector<Vertex> frontier = {host_vertex};
  std::vector<Vertex> component = {host_vertex};
  while (!frontier.empty()) {
    const Vertex v = frontier.back();
    frontier.pop_back();
    for (const auto& arc : host.out(v)) {
      if (!sub_letter(arc.label)) {
        continue;
      }
      const auto target = patch.neighbor(image[v], arc.label);
      if (!target) {
        throw NoEmbedding("host component does not embed in the patch");
      }
      if (image[arc.to] == kUnset) {
        image[arc.to] = *target;
        frontier.push_back(arc.to);
        component.push_back(arc.to);
      } else if (image[arc.to] != *target) {
        throw NoEmbedding("host component does not embed in the patch");
      }
    }
  }
  {
    std::set<Vertex> distinct;
    for (Vertex v : component) {
      distinct.insert(image[v]);
    }
    if (distinct.size() != component.size()) {
      throw NoEmbedding("host component maps non-injectively into the patch");
    }
  }

  // Host keeps its ids; patch vertices outside the shared component get
  // fresh ids in ascending patch order.
  LabeledGraph out = host;
  std::vector<Vertex> patch_to_out(patch.vertex_count(), kUnset);
  for (Vertex v : component) {
    patch_to_out[image[v]] = v;
  }
  for (Vertex v = 0; v < patch.vertex_count(); ++v) {
    if (patch_to_out[v] == kUnset) {
      patch_to_out[v] = out.add_vertex();
    }
  }
  for (const auto& e : patch.positive_edges()) {
    out.add_edge(patch_to_out[e.from], e.label, patch_to_out[e.to]);
  }
  return out;
}

void hall_complete_components(const DoubleSpec& spec, BicoloredGraph& g) {
  if (!g.is_well_labeled()) {
    throw NotWellLabeled("component completion requires a folded graph");
  }
  for (const bool x_color : {true, false}) {
    const auto letters = x_color ? spec.x_letters() : spec.y_letters();
    const auto split = components(g, letters);
    for (const auto& comp : split.components) {
      for (Letter letter : letters) {
        std::vector<Vertex> deficient_sources;
        std::vector<Vertex> missing_targets;
        for (Vertex v : comp.vertices) {
          if (!g.has_outgoing(v, letter)) {
            deficient_sources.push_back(v);
          }
          if (!g.has_outgoing(v, inverse_letter(letter))) {
            missing_targets.push_back(v);
          }
        }
        for (std::size_t k = 0; k < deficient_sources.size(); ++k) {
          g.add_edge(deficient_sources[k], letter, missing_targets[k]);
        }
      }
    }
  }
}

BicoloredGraph mirror_graph(const DoubleSpec& spec, const BicoloredGraph& g) {
  BicoloredGraph out(g.alphabet(), g.vertex_count());
  for (const auto& e : g.positive_edges()) {
    out.add_edge(e.from, spec.mirror(e.label), e.to);
  }
  out.set_basepoint(g.basepoint());
  return out;
}

DoubleUpResult double_up(const DoubleSpec& spec, const BicoloredGraph& g) {
  if (!is_precover(spec, g)) {
    throw NotPrecover("double_up requires a precover");
  }
  const auto mirrored = mirror_graph(spec, g);

  // Mirror copies of monochromatic vertices are identified with their
  // originals; copies of bichromatic vertices stay separate.
  std::vector<Vertex> mirror_map(g.vertex_count());
  std::size_t fresh = g.vertex_count();
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const bool bichromatic =
        has_color_edge(spec, g, v, true) && has_color_edge(spec, g, v, false);
    mirror_map[v] = bichromatic ? static_cast<Vertex>(fresh++) : v;
  }

  BicoloredGraph out(g.alphabet(), fresh);
  for (const auto& e : g.positive_edges()) {
    out.add_edge(e.from, e.label, e.to);
  }
  for (const auto& e : mirrored.positive_edges()) {
    out.add_edge(mirror_map[e.from], e.label, mirror_map[e.to]);
  }
  out.set_basepoint(g.basepoint());
  return {std::move(out), std::move(mirror_map)};
}

namespace {

// Splits a reduced word into maximal one-color runs.
std::vector<Word> split_syllables(const DoubleSpec& spec, const Word& word) {
  std::vector<Word> out;
  std::vector<Letter> run;
  for (Letter l : word) {
    if (!run.empty() && spec.is_x_letter(run.back()) != spec.is_x_letter(l)) {
      out.emplace_back(std::move(run));
      run.clear();
    }
    run.push_back(l);
  }
  if (!run.empty()) {
    out.emplace_back(std::move(run));
  }
  return out;
}

// Is the syllable a power of the amalgamating word of its color? The word is
// cyclically reduced and primitive, so powers are literal repetitions.
bool is_amalgam_power(const DoubleSpec& spec, const Word& syllable) {
  const bool x_color = spec.is_x_letter(syllable[0]);
  const Word& base = x_color ? spec.w() : spec.w_mirror();
  if (syllable.size() % base.size() != 0) {
    return false;
  }
  const int k = static_cast<int>(syllable.size() / base.size());
  return syllable == base.pow(k) || syllable == base.pow(-k);
}

}  // namespace

std::vector<Word> normal_form(const DoubleSpec& spec, std::span<const Letter> raw) {
  return normal_form(spec, reduce(spec.joint_alphabet(), raw));
}

std::vector<Word> normal_form(const DoubleSpec& spec, const Word& word) {
  std::vector<Word> syllables = split_syllables(spec, word);
  while (true) {
    if (syllables.empty()) {
      return syllables;
    }
    if (syllables.size() == 1) {
      // A lone amalgam power is written over the factor alphabet.
      if (is_amalgam_power(spec, syllables[0]) && !spec.is_x_letter(syllables[0][0])) {
        syllables[0] = spec.mirror(syllables[0]);
      }
      return syllables;
    }
    std::size_t flip = syllables.size();
    for (std::size_t i = 0; i < syllables.size(); ++i) {
      if (is_amalgam_power(spec, syllables[i])) {
        flip = i;
        break;
      }
    }
    if (flip == syllables.size()) {
      return syllables;
    }
    // Rewriting the amalgam syllable to the opposite color lets it merge
    // with its neighbors; flatten and resplit to apply the cancellations.
    Word flat;
    for (std::size_t i = 0; i < syllables.size(); ++i) {
      flat = flat * (i == flip ? spec.mirror(syllables[i]) : syllables[i]);
    }
    syllables = split_syllables(spec, flat);
  }
}

}  // namespace lerf
