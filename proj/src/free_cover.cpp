#include "lerf/free_cover.hpp"

#include <algorithm>
#include <set>

#include "lerf/errors.hpp"

namespace lerf {

LabeledGraph subgroup_graph(const Alphabet& alphabet, std::span<const Word> generators) {
  LabeledGraph wedge(alphabet, 1);
  wedge.set_basepoint(0);
  for (const auto& gen : generators) {
    if (gen.empty()) {
      continue;
    }
    Vertex v = 0;
    for (std::size_t i = 0; i + 1 < gen.size(); ++i) {
      const Vertex fresh = wedge.add_vertex();
      wedge.add_edge(v, gen[i], fresh);
      v = fresh;
    }
    wedge.add_edge(v, gen[gen.size() - 1], 0);
  }
  return fold(wedge);
}

bool is_free_group_cover(const LabeledGraph& g) {
  if (g.vertex_count() == 0 || !g.is_well_labeled()) {
    return false;
  }
  std::vector<Letter> letters(g.alphabet().size());
  for (std::size_t i = 0; i < letters.size(); ++i) {
    letters[i] = static_cast<Letter>(i + 1);
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!is_saturated_at(g, v, letters)) {
      return false;
    }
  }
  return true;
}

LabeledGraph hall_complete(const LabeledGraph& g) {
  if (!g.is_well_labeled()) {
    throw NotWellLabeled("hall_complete requires a folded graph");
  }
  LabeledGraph out = g;
  for (std::size_t i = 1; i <= g.alphabet().size(); ++i) {
    const auto letter = static_cast<Letter>(i);
    std::vector<Vertex> deficient_sources;
    std::vector<Vertex> missing_targets;
    for (Vertex v = 0; v < out.vertex_count(); ++v) {
      if (!out.has_outgoing(v, letter)) {
        deficient_sources.push_back(v);
      }
      if (!out.has_outgoing(v, inverse_letter(letter))) {
        missing_targets.push_back(v);
      }
    }
    // Both lists have the same size: each counts n minus the edges labeled
    // by this letter. Ascending match keeps the completion deterministic.
    for (std::size_t k = 0; k < deficient_sources.size(); ++k) {
      out.add_edge(deficient_sources[k], letter, missing_targets[k]);
    }
  }
  return out;
}

FreeCertificate separate_free(const Alphabet& alphabet, std::span<const Word> generators,
                              const Word& g) {
  LabeledGraph graph = subgroup_graph(alphabet, generators);
  Vertex end = trace_extend(graph, *graph.basepoint(), g);
  const auto refolded = fold_with_map(graph);
  graph = refolded.graph;
  end = refolded.vertex_map[end];
  if (end == *graph.basepoint()) {
    throw ElementInSubgroup("element already lies in the subgroup");
  }

  FreeCertificate cert;
  cert.alphabet = alphabet;
  cert.cover = hall_complete(graph);
  cert.basepoint = *graph.basepoint();
  cert.subgroup_generators.assign(generators.begin(), generators.end());
  cert.witness = g;
  cert.witness_end = end;
  return cert;
}

int cyclic_intersection(const LabeledGraph& g, Vertex v, const Word& w) {
  if (w.empty()) {
    throw EmptyWord("cyclic_intersection of the identity");
  }
  std::set<Vertex> seen;
  Vertex cur = v;
  int power = 0;
  while (seen.insert(cur).second) {
    const auto t = trace(g, cur, w);
    if (!t.complete) {
      return 0;
    }
    cur = t.end;
    ++power;
    if (cur == v) {
      return power;
    }
  }
  return 0;  // the orbit looped without passing through v
}

FreeVerifyReport verify_certificate(const FreeCertificate& cert) {
  if (cert.basepoint >= cert.cover.vertex_count()) {
    return {false, "basepoint outside the cover"};
  }
  if (!cert.cover.is_well_labeled()) {
    return {false, "not well-labeled"};
  }
  if (!is_free_group_cover(cert.cover)) {
    return {false, "not saturated"};
  }
  for (const auto& gen : cert.subgroup_generators) {
    if (!lab_contains(cert.cover, cert.basepoint, gen)) {
      return {false, "generator does not loop"};
    }
  }
  const auto t = trace(cert.cover, cert.basepoint, cert.witness);
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
