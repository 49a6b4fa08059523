#pragma once

#include <span>
#include <vector>

#include "lerf/graph.hpp"
#include "lerf/word.hpp"

namespace lerf {

// A finite cover of the free group separating a subgroup from a word: every
// generator loops at the basepoint while the witness traces to a different
// vertex, so the permutation action on the vertices is a finite quotient in
// which the images stay apart.
struct FreeCertificate {
  Alphabet alphabet;
  LabeledGraph cover;
  Vertex basepoint = 0;
  std::vector<Word> subgroup_generators;
  Word witness;
  Vertex witness_end = 0;
};

// Wedge of generator loops, folded; Lab(graph, basepoint) is exactly the
// subgroup the generators produce.
LabeledGraph subgroup_graph(const Alphabet& alphabet, std::span<const Word> generators);

// Well-labeled and saturated at every vertex: each letter acts as a
// permutation of the vertices.
bool is_free_group_cover(const LabeledGraph& g);

// M. Hall completion: extends each letter's partial injection to a
// permutation of the same vertex set. Deficient sources and missing targets
// are matched in ascending vertex order, which fixes the output uniquely.
// Throws NotWellLabeled on unfolded input.
LabeledGraph hall_complete(const LabeledGraph& g);

// Builds a certificate separating g from the subgroup the generators span.
// Throws ElementInSubgroup when there is nothing to separate.
FreeCertificate separate_free(const Alphabet& alphabet, std::span<const Word> generators,
                              const Word& g);

// Least k >= 1 with w^k readable as a loop at v, 0 when no power closes.
// Exact: the power orbit revisits a vertex within |V| steps. Throws EmptyWord.
int cyclic_intersection(const LabeledGraph& g, Vertex v, const Word& w);

// Re-checks every certificate invariant from scratch.
struct FreeVerifyReport {
  bool ok = false;
  std::string diagnostic;  // first failed check, empty when ok
};
FreeVerifyReport verify_certificate(const FreeCertificate& cert);

}  // namespace lerf
