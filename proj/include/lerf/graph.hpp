#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lerf/word.hpp"

namespace lerf {

using Vertex = std::uint32_t;

struct EdgeSpec {
  Vertex from;
  Letter label;
  Vertex to;
};

struct TraceOutcome {
  Vertex end;
  std::size_t consumed;
  bool complete;  // consumed == word length
};

// Finite graph with inverse-paired labeled edges and an optional basepoint.
// Every stored edge carries its formal inverse: adding (u, x, v) also adds
// (v, x^-1, u), so adjacency lists always describe both directions.
class LabeledGraph {
 public:
  struct Arc {
    Letter label;
    Vertex to;
    bool operator==(const Arc&) const = default;
  };

  LabeledGraph() = default;
  LabeledGraph(Alphabet alphabet, std::size_t vertex_count);

  // Applies inverse closure and drops duplicate edges.
  // Throws UnknownLetter / DanglingVertex.
  static LabeledGraph build(Alphabet alphabet, std::size_t vertex_count,
                            std::span<const EdgeSpec> edges,
                            std::optional<Vertex> basepoint);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t vertex_count() const { return adjacency_.size(); }
  // Inverse pairs counted once.
  std::size_t edge_count() const { return directed_count_ / 2; }

  std::optional<Vertex> basepoint() const { return basepoint_; }
  void set_basepoint(std::optional<Vertex> v);

  Vertex add_vertex();
  // Returns false when the edge (and its inverse) is already present.
  bool add_edge(Vertex from, Letter label, Vertex to);
  bool has_edge(Vertex from, Letter label, Vertex to) const;

  const std::vector<Arc>& out(Vertex v) const { return adjacency_[v]; }

  // Unique successor along `label`, if any. Throws NotWellLabeled when the
  // vertex has two distinct outgoing edges with that label.
  std::optional<Vertex> neighbor(Vertex v, Letter label) const;
  bool has_outgoing(Vertex v, Letter label) const;

  // One entry per inverse pair, positively labeled, sorted by
  // (from, letter_rank, to).
  std::vector<EdgeSpec> positive_edges() const;

  bool is_well_labeled() const;

  // Inverse closure, label validity, basepoint bounds. Test aid.
  void check_invariants() const;

 private:
  Alphabet alphabet_;
  std::vector<std::vector<Arc>> adjacency_;
  std::optional<Vertex> basepoint_;
  std::size_t directed_count_ = 0;
};

// Folding: quotient by the smallest vertex equivalence that makes the graph
// well-labeled. The output is canonically renumbered (BFS from the basepoint,
// remaining components by least surviving id) so byte-identical graphs come
// out of any merge order. `seed` shuffles the internal worklist; it exists to
// exercise confluence and never changes the result.
struct FoldResult {
  LabeledGraph graph;
  std::vector<Vertex> vertex_map;  // input vertex -> output vertex
};
FoldResult fold_with_map(const LabeledGraph& g, std::uint64_t seed = 0);
LabeledGraph fold(const LabeledGraph& g, std::uint64_t seed = 0);

// Quotient identifying exactly the two given vertices (no folding).
FoldResult merge_pair(const LabeledGraph& g, Vertex a, Vertex b);

// Follows the unique label-matching path as far as it exists. Ambiguity en
// route throws NotWellLabeled.
TraceOutcome trace(const LabeledGraph& g, Vertex start, const Word& w);

// Traces w and appends a fresh simple path for any untraced suffix; the input
// embeds in the result. Returns the endpoint.
Vertex trace_extend(LabeledGraph& g, Vertex start, const Word& w);

// Every signed letter of the subalphabet (given as positive letters, both
// signs implied) labels an edge leaving v.
bool is_saturated_at(const LabeledGraph& g, Vertex v, std::span<const Letter> subalphabet);

// Connected components of the subgraph of edges labeled in the subalphabet.
// Vertices meeting no such edge are reported as singletons, not components.
struct ComponentSplit {
  struct Component {
    std::vector<Vertex> vertices;  // ascending original ids
    LabeledGraph graph;            // induced subgraph; local id = index in `vertices`
  };
  std::vector<Component> components;
  std::vector<Vertex> singletons;
};
ComponentSplit components(const LabeledGraph& g, std::span<const Letter> subalphabet);

// Membership in Lab(g, base) for a folded g: the trace is complete and loops.
bool lab_contains(const LabeledGraph& g, Vertex base, const Word& w);

// Canonical serialization of a well-labeled graph: BFS renumbering from the
// basepoint (least id otherwise), then sorted edge lines.
std::string canonical_string(const LabeledGraph& g);

// One rendered edge per inverse pair, positive label, deterministic order.
// Labels of the first `x_letter_count` generators are drawn black and all
// others blue; 0 draws everything black.
std::string to_dot(const LabeledGraph& g, std::size_t x_letter_count = 0);

}  // namespace lerf
