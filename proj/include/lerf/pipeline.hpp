#pragma once

#include <span>
#include <string>
#include <vector>

#include "lerf/double_core.hpp"
#include "lerf/errors.hpp"
#include "lerf/graph.hpp"
#include "lerf/word.hpp"

namespace lerf {

// Degree of the cyclic cover attached at deficient vertices, retry budget,
// and the factor the degree grows by after a failed round. The construction
// stages are heuristic; soundness rests entirely on verify_certificate.
struct PipelineParams {
  int cyclic_degree = 1;     // floor; each round also enforces 2|V|+1
  int max_rounds = 5;        // 0 exhausts immediately
  int escalation_factor = 2;

  void validate() const;  // throws ConfigError
};

struct StageRecord {
  std::string stage;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::string note;
};
using Trail = std::vector<StageRecord>;

// The retry budget ran out without a verified certificate.
struct Exhausted : Error {
  Exhausted(const std::string& msg, Trail t) : Error(msg), trail(std::move(t)) {}
  Trail trail;
};

// A finite cover of the double in which every subgroup generator loops at
// the basepoint while the witness escapes, plus the construction trail.
struct DoubleCertificate {
  DoubleSpec spec;
  BicoloredGraph cover;
  Vertex basepoint = 0;
  std::vector<Word> subgroup_generators;
  Word witness;
  Vertex witness_end = 0;
  Trail trail;
};

// Working state of one run: the graph under construction plus the tracked
// witness endpoint (the basepoint rides inside the graph).
struct StagedGraph {
  BicoloredGraph graph;
  Vertex witness_end = 0;
};

// Folds, then repeatedly identifies the endpoints of complete equal-power
// w/w' trace pairs from a common vertex, to a fixpoint. Every merge equates
// vertices that are genuinely equal in the ambient coset graph, so this only
// sharpens the approximation. Tracked vertices are remapped in place.
void pinch_fold(const DoubleSpec& spec, BicoloredGraph& g, std::span<Vertex> tracked);

// Wedge of subgroup-generator loops with the witness path attached, folded,
// then a w/w'-path pair pinned at every vertex and pinched to a fixpoint.
// Throws EmptyWitness when the witness is trivial in the double and
// ElementInSubgroup when it collapses into the basepoint.
StagedGraph seed_graph(const DoubleSpec& spec, std::span<const Word> subgroup_generators,
                       const Word& witness);

// At every bichromatic vertex, realizes the amalgam-intersection exponent on
// both sides (loops of the gcd power) and pairs the connecting paths between
// bichromatic vertices sharing a power orbit. Runs to a fixpoint.
void realize_amalgam_intersections(const DoubleSpec& spec, StagedGraph& state);

// Closes the w- and w'-orbits of every bichromatic vertex with nontrivial
// intersection into full cycles on both sides. Idempotent; vertices with
// trivial intersection are untouched.
void close_finite_orbits(const DoubleSpec& spec, StagedGraph& state);

// Bichromatic vertices whose amalgam intersection is trivial on both sides.
std::vector<Vertex> deficient_vertices(const DoubleSpec& spec, const BicoloredGraph& g);

// Attaches a degree-M cyclic cover of the amalgam subgroup at the first
// deficient vertex: its w-orbit is closed into an M-cycle of w-paths and
// mirrored on the other side, making both components amalgam-complete there.
// Throws NoDeficientVertex, or NoEmbedding when the partial orbit cannot sit
// inside an M-cycle.
void attach_cyclic_cover(const DoubleSpec& spec, StagedGraph& state, int degree);

// The full generate-and-verify run: seed, realize intersections, resolve all
// deficient vertices with cyclic covers, complete the factor components,
// finish the precover, double up, verify. On verification failure the cyclic
// degree escalates and the run restarts, up to max_rounds.
DoubleCertificate separate_double(const DoubleSpec& spec, std::span<const Word> subgroup_generators,
                                  const Word& witness, const PipelineParams& params = {});

// Re-checks the three certificate invariants from scratch, independently of
// how the certificate was built.
struct VerifyReport {
  bool ok = false;
  std::string diagnostic;  // first failed check, empty when ok
};
VerifyReport verify_certificate(const DoubleCertificate& cert);

}  // namespace lerf
