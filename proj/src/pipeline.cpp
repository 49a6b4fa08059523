#include "lerf/pipeline.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "lerf/free_cover.hpp"

namespace lerf {

void PipelineParams::validate() const {
  if (cyclic_degree < 1) {
    throw ConfigError("cyclic degree must be at least 1");
  }
  if (escalation_factor < 2) {
    throw ConfigError("escalation factor must be at least 2");
  }
  if (max_rounds < 0) {
    throw ConfigError("round budget cannot be negative");
  }
}

void pinch_fold(const DoubleSpec& spec, BicoloredGraph& g, std::span<Vertex> tracked) {
  const auto apply = [&](const std::vector<Vertex>& map) {
    for (auto& t : tracked) {
      t = map[t];
    }
  };
  auto folded = fold_with_map(g);
  g = std::move(folded.graph);
  apply(folded.vertex_map);
  while (const auto violation = find_compatibility_violation(spec, g)) {
    auto merged = merge_pair(g, violation->x_end, violation->y_end);
    g = std::move(merged.graph);
    apply(merged.vertex_map);
    folded = fold_with_map(g);
    g = std::move(folded.graph);
    apply(folded.vertex_map);
  }
}

StagedGraph seed_graph(const DoubleSpec& spec, std::span<const Word> subgroup_generators,
                       const Word& witness) {
  const Word reduced_witness = reduce(spec.joint_alphabet(), witness.letters());
  if (normal_form(spec, reduced_witness).empty()) {
    throw EmptyWitness("witness is trivial in the double");
  }

  BicoloredGraph g = spec.make_graph(1);
  g.set_basepoint(0);
  for (const auto& raw : subgroup_generators) {
    const Word gen = reduce(spec.joint_alphabet(), raw.letters());
    if (gen.empty()) {
      continue;
    }
    Vertex v = 0;
    for (std::size_t i = 0; i + 1 < gen.size(); ++i) {
      const Vertex fresh = g.add_vertex();
      g.add_edge(v, gen[i], fresh);
      v = fresh;
    }
    g.add_edge(v, gen[gen.size() - 1], 0);
  }
  Vertex witness_end = trace_extend(g, 0, reduced_witness);

  auto folded = fold_with_map(g);
  g = std::move(folded.graph);
  witness_end = folded.vertex_map[witness_end];

  // Pin a w/w'-path pair with shared endpoints at every vertex of the folded
  // wedge, so each of them meets both colors.
  std::vector<Vertex> snapshot(g.vertex_count());
  std::iota(snapshot.begin(), snapshot.end(), Vertex{0});
  for (std::size_t i = 0; i < snapshot.size(); ++i) {
    const Vertex v = snapshot[i];
    const Vertex x_end = trace_extend(g, v, spec.w());
    const Vertex y_end = trace_extend(g, v, spec.w_mirror());
    if (x_end == y_end) {
      continue;
    }
    auto merged = merge_pair(g, x_end, y_end);
    g = std::move(merged.graph);
    for (auto& s : snapshot) {
      s = merged.vertex_map[s];
    }
    witness_end = merged.vertex_map[witness_end];
    auto refolded = fold_with_map(g);
    g = std::move(refolded.graph);
    for (auto& s : snapshot) {
      s = refolded.vertex_map[s];
    }
    witness_end = refolded.vertex_map[witness_end];
  }

  std::vector<Vertex> tracked = {witness_end};
  pinch_fold(spec, g, tracked);
  witness_end = tracked[0];

  if (witness_end == *g.basepoint()) {
    throw ElementInSubgroup("witness collapses into the basepoint");
  }
  return {std::move(g), witness_end};
}

namespace {

bool is_bichromatic(const DoubleSpec& spec, const BicoloredGraph& g, Vertex v) {
  bool x_seen = false;
  bool y_seen = false;
  for (const auto& arc : g.out(v)) {
    (spec.is_x_letter(arc.label) ? x_seen : y_seen) = true;
  }
  return x_seen && y_seen;
}

// Extends the word path from `from` and pinches its endpoint onto `to`
// (merge + fold + compatibility pinches). Returns false when the path
// already ran there and nothing changed.
bool realize_path(const DoubleSpec& spec, StagedGraph& state, Vertex from, const Word& word,
                  Vertex to) {
  const auto already = trace(state.graph, from, word);
  if (already.complete && already.end == to) {
    return false;
  }
  const Vertex end = trace_extend(state.graph, from, word);
  if (end != to) {
    auto merged = merge_pair(state.graph, end, to);
    state.graph = std::move(merged.graph);
    state.witness_end = merged.vertex_map[state.witness_end];
  }
  std::vector<Vertex> tracked = {state.witness_end};
  pinch_fold(spec, state.graph, tracked);
  state.witness_end = tracked[0];
  return true;
}

// One realization pass; returns true when it changed the graph. Loops of the
// gcd exponent are installed on both sides of every bichromatic vertex, and,
// when requested, connecting path pairs between bichromatic vertices sharing
// a power orbit.
bool realization_pass(const DoubleSpec& spec, StagedGraph& state, bool with_paths) {
  const auto bichromatic = bichromatic_vertices(spec, state.graph);
  for (const Vertex v : bichromatic) {
    const int kx = cyclic_intersection(state.graph, v, spec.w());
    const int ky = cyclic_intersection(state.graph, v, spec.w_mirror());
    const int g0 = std::gcd(kx, ky);
    if (g0 > 0) {
      if (kx != g0 && realize_path(spec, state, v, spec.w().pow(g0), v)) {
        return true;
      }
      if (ky != g0 && realize_path(spec, state, v, spec.w_mirror().pow(g0), v)) {
        return true;
      }
    }
    if (!with_paths) {
      continue;
    }
    for (const bool x_side : {true, false}) {
      const Word& step = x_side ? spec.w() : spec.w_mirror();
      const Word& other = x_side ? spec.w_mirror() : spec.w();
      Vertex u = v;
      for (std::size_t i = 1; i <= state.graph.vertex_count(); ++i) {
        const auto t = trace(state.graph, u, step);
        if (!t.complete) {
          break;
        }
        u = t.end;
        if (u == v) {
          break;
        }
        if (is_bichromatic(spec, state.graph, u) &&
            realize_path(spec, state, v, other.pow(static_cast<int>(i)), u)) {
          return true;
        }
      }
    }
  }
  return false;
}

void run_to_fixpoint(const DoubleSpec& spec, StagedGraph& state, bool with_paths) {
  // Each realized loop or path stays realized, so passes strictly shrink the
  // outstanding requirements; the cap guards the heuristic against blowup.
  constexpr int kChangeCap = 1000;
  for (int changes = 0; realization_pass(spec, state, with_paths); ++changes) {
    if (changes > kChangeCap) {
      throw CompletionError("intersection realization did not reach a fixpoint");
    }
  }
}

}  // namespace

void realize_amalgam_intersections(const DoubleSpec& spec, StagedGraph& state) {
  run_to_fixpoint(spec, state, true);
}

void close_finite_orbits(const DoubleSpec& spec, StagedGraph& state) {
  run_to_fixpoint(spec, state, false);
}

std::vector<Vertex> deficient_vertices(const DoubleSpec& spec, const BicoloredGraph& g) {
  std::vector<Vertex> out;
  for (const Vertex v : bichromatic_vertices(spec, g)) {
    if (cyclic_intersection(g, v, spec.w()) == 0 &&
        cyclic_intersection(g, v, spec.w_mirror()) == 0) {
      out.push_back(v);
    }
  }
  return out;
}

namespace {

// Closes the word-power orbit of `vertex` into a cycle of exactly `degree`
// composite steps, reusing the existing partial orbit and appending fresh
// corners for the rest.
void build_power_cycle(BicoloredGraph& g, Vertex vertex, const Word& word, int degree) {
  std::set<Vertex> seen = {vertex};
  std::vector<Vertex> forward;
  Vertex cur = vertex;
  while (true) {
    const auto t = trace(g, cur, word);
    if (!t.complete) {
      break;
    }
    cur = t.end;
    if (!seen.insert(cur).second) {
      throw NoEmbedding("power orbit revisits a vertex; it cannot sit in a cycle");
    }
    forward.push_back(cur);
  }
  std::vector<Vertex> backward;
  const Word inverse_word = word.inverse();
  cur = vertex;
  while (true) {
    const auto t = trace(g, cur, inverse_word);
    if (!t.complete) {
      break;
    }
    cur = t.end;
    if (!seen.insert(cur).second) {
      throw NoEmbedding("power orbit revisits a vertex; it cannot sit in a cycle");
    }
    backward.push_back(cur);
  }

  std::vector<Vertex> path(backward.rbegin(), backward.rend());
  path.push_back(vertex);
  path.insert(path.end(), forward.begin(), forward.end());
  if (path.size() > static_cast<std::size_t>(degree)) {
    throw NoEmbedding("partial orbit exceeds the cyclic cover degree");
  }

  const std::size_t fresh_corners = static_cast<std::size_t>(degree) - path.size();
  cur = path.back();
  for (std::size_t i = 0; i < fresh_corners; ++i) {
    cur = trace_extend(g, cur, word);
  }

  // Closing step from the last corner back to the head of the path, spliced
  // through whatever partial prefix and suffix already exist. The word is
  // cyclically reduced, so the splice cannot clash at either end.
  const Vertex target = path.front();
  const auto tf = trace(g, cur, word);
  if (tf.complete) {
    if (tf.end != target) {
      throw NoEmbedding("closing step already leads elsewhere");
    }
    return;
  }
  const auto tb = trace(g, target, inverse_word);
  const std::size_t n = word.size();
  if (tf.consumed + tb.consumed >= n) {
    throw NoEmbedding("partial paths overlap across the closing step");
  }
  Vertex splice = tf.end;
  for (std::size_t i = tf.consumed; i + tb.consumed + 1 < n; ++i) {
    const Vertex fresh = g.add_vertex();
    g.add_edge(splice, word[i], fresh);
    splice = fresh;
  }
  g.add_edge(splice, word[n - tb.consumed - 1], tb.end);
}

}  // namespace

void attach_cyclic_cover(const DoubleSpec& spec, StagedGraph& state, int degree) {
  if (degree < 1) {
    throw ConfigError("cyclic cover degree must be at least 1");
  }
  const auto deficient = deficient_vertices(spec, state.graph);
  if (deficient.empty()) {
    throw NoDeficientVertex("no bichromatic vertex with trivial amalgam intersection");
  }
  const Vertex u = deficient.front();
  build_power_cycle(state.graph, u, spec.w(), degree);
  build_power_cycle(state.graph, u, spec.w_mirror(), degree);
  if (cyclic_intersection(state.graph, u, spec.w()) != degree ||
      cyclic_intersection(state.graph, u, spec.w_mirror()) != degree) {
    throw Error("cyclic cover attachment did not close at the requested degree");
  }
}

namespace {

std::string round_note(int round, long long degree) {
  return "round=" + std::to_string(round) + " M=" + std::to_string(degree);
}

}  // namespace

DoubleCertificate separate_double(const DoubleSpec& spec, std::span<const Word> subgroup_generators,
                                  const Word& witness, const PipelineParams& params) {
  params.validate();
  std::vector<Word> gens;
  for (const auto& g : subgroup_generators) {
    gens.push_back(reduce(spec.joint_alphabet(), g.letters()));
  }
  const Word reduced_witness = reduce(spec.joint_alphabet(), witness.letters());

  Trail trail;
  const auto record = [&](const std::string& stage, const BicoloredGraph& g,
                          const std::string& note = "") {
    trail.push_back({stage, g.vertex_count(), g.edge_count(), note});
  };

  for (int round = 0; round < params.max_rounds; ++round) {
    try {
      StagedGraph state = seed_graph(spec, gens, reduced_witness);
      record("seed", state.graph, "round=" + std::to_string(round));

      realize_amalgam_intersections(spec, state);
      record("pair-intersections", state.graph);
      close_finite_orbits(spec, state);
      record("close-finite-orbits", state.graph);
      // Merges so far only identify vertices equal in the coset graph of the
      // subgroup, so a collapse is a genuine membership detection.
      if (state.witness_end == *state.graph.basepoint()) {
        throw ElementInSubgroup("witness collapses into the basepoint");
      }

      long long degree =
          std::max<long long>(params.cyclic_degree, 2LL * state.graph.vertex_count() + 1);
      for (int i = 0; i < round; ++i) {
        degree = std::min(degree * params.escalation_factor, 1'000'000LL);
      }

      while (true) {
        const auto deficient = deficient_vertices(spec, state.graph);
        if (deficient.empty()) {
          break;
        }
        attach_cyclic_cover(spec, state, static_cast<int>(degree));
        record("cyclic-cover", state.graph, round_note(round, degree));
        std::vector<Vertex> tracked = {state.witness_end};
        pinch_fold(spec, state.graph, tracked);
        state.witness_end = tracked[0];
        record("pinch", state.graph);
        // Past this point merges mix in the attached cover structure, so a
        // collapse no longer certifies membership; fail the round instead.
        if (state.witness_end == *state.graph.basepoint()) {
          throw CompletionError("witness collapsed after cover attachment");
        }
        if (deficient_vertices(spec, state.graph).size() >= deficient.size()) {
          throw CompletionError("deficient vertex count did not decrease");
        }
      }

      hall_complete_components(spec, state.graph);
      record("complete-components", state.graph);

      auto completed = complete_precover(spec, state.graph);
      state.graph = std::move(completed.graph);
      state.witness_end = completed.vertex_map[state.witness_end];
      record("complete-precover", state.graph);
      if (state.witness_end == *state.graph.basepoint()) {
        throw CompletionError("witness collapsed during precover completion");
      }

      auto doubled = double_up(spec, state.graph);
      record("double-up", doubled.graph);

      DoubleCertificate cert;
      cert.spec = spec;
      cert.cover = std::move(doubled.graph);
      cert.basepoint = *cert.cover.basepoint();
      cert.subgroup_generators = gens;
      cert.witness = reduced_witness;
      cert.witness_end = state.witness_end;

      const auto report = verify_certificate(cert);
      record("verify", cert.cover, report.ok ? "ok" : report.diagnostic);
      if (report.ok) {
        cert.trail = trail;
        return cert;
      }
    } catch (const NoEmbedding& e) {
      trail.push_back({"round-failed", 0, 0, e.what()});
    } catch (const CompletionError& e) {
      trail.push_back({"round-failed", 0, 0, e.what()});
    } catch (const Property1Violated& e) {
      trail.push_back({"round-failed", 0, 0, e.what()});
    } catch (const NotPrecover& e) {
      trail.push_back({"round-failed", 0, 0, e.what()});
    }
  }
  throw Exhausted("no verified certificate within " + std::to_string(params.max_rounds) +
                      " rounds",
                  trail);
}

VerifyReport verify_certificate(const DoubleCertificate& cert) {
  const auto& g = cert.cover;
  if (cert.basepoint >= g.vertex_count() || cert.witness_end >= g.vertex_count()) {
    return {false, "vertex out of range"};
  }
  if (!g.is_well_labeled()) {
    return {false, "not well-labeled"};
  }
  {
    // Granular cover check: component covers, compatibility, saturation.
    const auto& spec = cert.spec;
    for (const bool x_color : {true, false}) {
      const auto letters = x_color ? spec.x_letters() : spec.y_letters();
      for (const auto& comp : components(g, letters).components) {
        for (Vertex v : comp.vertices) {
          if (!is_saturated_at(g, v, letters)) {
            return {false, "monochromatic component not a cover"};
          }
        }
      }
    }
    if (!is_amalgam_compatible(spec, g)) {
      return {false, "not compatible"};
    }
    const auto x = spec.x_letters();
    const auto y = spec.y_letters();
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (!is_saturated_at(g, v, x) || !is_saturated_at(g, v, y)) {
        return {false, "not saturated"};
      }
    }
  }
  for (const auto& gen : cert.subgroup_generators) {
    if (!lab_contains(g, cert.basepoint, gen)) {
      return {false, "generator does not loop"};
    }
  }
  const auto t = trace(g, cert.basepoint, cert.witness);
  if (!t.complete) {
    return {false, "witness incomplete"};
  }
  if (t.end != cert.witness_end) {
    return {false, "witness end mismatch"};
  }
  if (t.end == cert.basepoint) {
    return {false, "witness returns"};
  }
  return {true, ""};
}

}  // namespace lerf
