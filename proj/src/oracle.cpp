#include "lerf/oracle.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "lerf/errors.hpp"
#include "lerf/pipeline.hpp"

namespace lerf {

Presentation::Presentation(Alphabet gens, std::vector<Word> rels)
    : generators(std::move(gens)) {
  relators.reserve(rels.size());
  for (auto& r : rels) {
    relators.push_back(reduce(generators, r.letters()));
  }
}

Permutation identity_permutation(int degree) {
  Permutation p(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) {
    p[static_cast<std::size_t>(i)] = i;
  }
  return p;
}

Permutation compose(const Permutation& first, const Permutation& then) {
  Permutation out(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    out[i] = then[static_cast<std::size_t>(first[i])];
  }
  return out;
}

Permutation invert(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  }
  return out;
}

Permutation evaluate(const Word& word, std::span<const Permutation> images, int degree) {
  Permutation acc = identity_permutation(degree);
  for (Letter l : word) {
    const auto idx = static_cast<std::size_t>((l < 0 ? -l : l) - 1);
    acc = compose(acc, l > 0 ? images[idx] : invert(images[idx]));
  }
  return acc;
}

std::string cycle_notation(const Permutation& p) {
  std::ostringstream out;
  std::vector<bool> seen(p.size(), false);
  bool any = false;
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (seen[start] || p[start] == static_cast<int>(start)) {
      continue;
    }
    any = true;
    out << "(";
    std::size_t at = start;
    bool first = true;
    do {
      seen[at] = true;
      out << (first ? "" : " ") << at + 1;
      first = false;
      at = static_cast<std::size_t>(p[at]);
    } while (at != start);
    out << ")";
  }
  if (!any) {
    out << "()";
  }
  return out.str();
}

namespace {

std::vector<Permutation> all_permutations(int degree) {
  std::vector<Permutation> out;
  Permutation p = identity_permutation(degree);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Largest generator index occurring in the word (1-based), 0 for the identity.
std::size_t max_generator(const Word& w) {
  std::size_t top = 0;
  for (Letter l : w) {
    top = std::max(top, static_cast<std::size_t>(l < 0 ? -l : l));
  }
  return top;
}

bool is_identity(const Permutation& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != static_cast<int>(i)) {
      return false;
    }
  }
  return true;
}

}  // namespace

void for_each_hom(const Presentation& p, int degree,
                  const std::function<bool(const HomImage&)>& visit) {
  if (degree < 1 || degree > kMaxOracleDegree) {
    throw ConfigError("oracle degree must be between 1 and " +
                      std::to_string(kMaxOracleDegree));
  }
  const auto perms = all_permutations(degree);
  const std::size_t k = p.generators.size();

  // Relators checked as soon as their last generator gets an image.
  std::vector<std::vector<const Word*>> ready(k + 1);
  for (const auto& r : p.relators) {
    ready[max_generator(r)].push_back(&r);
  }
  for (const Word* r : ready[0]) {
    if (!is_identity(evaluate(*r, {}, degree))) {
      return;  // a constant relator fails: no homomorphisms at all
    }
  }

  HomImage hom;
  hom.degree = degree;
  hom.images.resize(k);
  bool keep_going = true;

  const std::function<void(std::size_t)> descend = [&](std::size_t depth) {
    if (!keep_going) {
      return;
    }
    if (depth == k) {
      keep_going = visit(hom);
      return;
    }
    for (const auto& candidate : perms) {
      hom.images[depth] = candidate;
      bool feasible = true;
      for (const Word* r : ready[depth + 1]) {
        if (!is_identity(evaluate(*r, std::span(hom.images.data(), depth + 1), degree))) {
          feasible = false;
          break;
        }
      }
      if (feasible) {
        descend(depth + 1);
      }
      if (!keep_going) {
        return;
      }
    }
  };
  descend(0);
}

std::vector<HomImage> enumerate_homs(const Presentation& p, int degree) {
  std::vector<HomImage> out;
  for_each_hom(p, degree, [&](const HomImage& hom) {
    out.push_back(hom);
    return true;
  });
  return out;
}

std::vector<Permutation> permutation_closure(std::span<const Permutation> generators, int degree) {
  std::set<Permutation> closed;
  std::vector<Permutation> frontier = {identity_permutation(degree)};
  closed.insert(frontier[0]);
  std::vector<Permutation> signed_gens;
  for (const auto& g : generators) {
    signed_gens.push_back(g);
    signed_gens.push_back(invert(g));
  }
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& element : frontier) {
      for (const auto& g : signed_gens) {
        auto product = compose(element, g);
        if (closed.insert(product).second) {
          next.push_back(std::move(product));
        }
      }
    }
    frontier = std::move(next);
  }
  return {closed.begin(), closed.end()};
}

bool closure_member(const Presentation& p, std::span<const Word> subgroup_generators,
                    const Word& g, int degree_max) {
  return first_separating_degree(p, subgroup_generators, g, degree_max) == 0;
}

int first_separating_degree(const Presentation& p, std::span<const Word> subgroup_generators,
                            const Word& g, int degree_max) {
  if (degree_max < 1 || degree_max > kMaxOracleDegree) {
    throw ConfigError("oracle degree must be between 1 and " +
                      std::to_string(kMaxOracleDegree));
  }
  const Word g_reduced = reduce(p.generators, g.letters());
  std::vector<Word> subgroup;
  for (const auto& s : subgroup_generators) {
    subgroup.push_back(reduce(p.generators, s.letters()));
  }
  for (int degree = 1; degree <= degree_max; ++degree) {
    bool separated = false;
    for_each_hom(p, degree, [&](const HomImage& hom) {
      std::vector<Permutation> images;
      images.reserve(subgroup.size());
      for (const auto& s : subgroup) {
        images.push_back(evaluate(s, hom.images, degree));
      }
      const auto closed = permutation_closure(images, degree);
      const auto g_image = evaluate(g_reduced, hom.images, degree);
      if (std::find(closed.begin(), closed.end(), g_image) == closed.end()) {
        separated = true;
        return false;
      }
      return true;
    });
    if (separated) {
      return degree;
    }
  }
  return 0;
}

namespace {

// Letters of the cover's alphabet act on vertices; a cover makes each a
// total bijection.
struct Action {
  bool total = true;
  std::vector<Permutation> images;
};

Action vertex_action(const LabeledGraph& cover) {
  Action action;
  const int degree = static_cast<int>(cover.vertex_count());
  for (std::size_t i = 1; i <= cover.alphabet().size(); ++i) {
    Permutation perm(static_cast<std::size_t>(degree), -1);
    std::vector<bool> hit(static_cast<std::size_t>(degree), false);
    for (Vertex v = 0; v < cover.vertex_count(); ++v) {
      const auto target = cover.neighbor(v, static_cast<Letter>(i));
      if (!target || hit[*target]) {
        action.total = false;
        return action;
      }
      perm[v] = static_cast<int>(*target);
      hit[*target] = true;
    }
    action.images.push_back(std::move(perm));
  }
  return action;
}

CrossCheckReport check_action(const LabeledGraph& cover, Vertex basepoint,
                              std::span<const Word> subgroup_generators, const Word& witness,
                              Vertex witness_end, std::span<const Word> relators) {
  const int degree = static_cast<int>(cover.vertex_count());
  if (basepoint >= cover.vertex_count() || witness_end >= cover.vertex_count()) {
    return {false, "vertex out of range"};
  }
  const auto action = vertex_action(cover);
  if (!action.total) {
    return {false, "letters do not act as permutations"};
  }
  for (const auto& r : relators) {
    if (!is_identity(evaluate(r, action.images, degree))) {
      return {false, "relator acts nontrivially"};
    }
  }
  std::vector<Permutation> subgroup_images;
  for (const auto& s : subgroup_generators) {
    subgroup_images.push_back(evaluate(s, action.images, degree));
  }
  const auto witness_image = evaluate(witness, action.images, degree);
  if (witness_image[basepoint] != static_cast<int>(witness_end)) {
    return {false, "witness action disagrees with the recorded endpoint"};
  }
  std::set<int> orbit = {static_cast<int>(basepoint)};
  std::vector<int> frontier = {static_cast<int>(basepoint)};
  std::vector<Permutation> signed_images;
  for (const auto& s : subgroup_images) {
    signed_images.push_back(s);
    signed_images.push_back(invert(s));
  }
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int point : frontier) {
      for (const auto& s : signed_images) {
        const int image = s[static_cast<std::size_t>(point)];
        if (orbit.insert(image).second) {
          next.push_back(image);
        }
      }
    }
    frontier = std::move(next);
  }
  if (orbit.count(static_cast<int>(witness_end)) != 0) {
    return {false, "subgroup orbit reaches the witness endpoint"};
  }
  return {true, ""};
}

}  // namespace

CrossCheckReport cross_check(const FreeCertificate& cert) {
  return check_action(cert.cover, cert.basepoint, cert.subgroup_generators, cert.witness,
                      cert.witness_end, {});
}

CrossCheckReport cross_check(const DoubleCertificate& cert) {
  const Word relator = cert.spec.w() * cert.spec.w_mirror().inverse();
  const Word relators[] = {relator};
  return check_action(cert.cover, cert.basepoint, cert.subgroup_generators, cert.witness,
                      cert.witness_end, relators);
}

}  // namespace lerf
