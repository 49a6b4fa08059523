#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lerf/graph.hpp"
#include "lerf/word.hpp"

namespace lerf {

// Graph over the union of two disjoint signed alphabets; every edge label
// lies in exactly one color class by construction of the joint alphabet.
using BicoloredGraph = LabeledGraph;

// The amalgam data of a double of free groups along a cyclic subgroup: a
// factor alphabet, its primed mirror, the amalgamating word w and its
// letterwise mirror w'. The word must be nontrivial, cyclically reduced and
// not a proper power, so the cyclic subgroup it spans is malnormal.
class DoubleSpec {
 public:
  // Derives the mirror alphabet by priming. Throws SpecInvariantError.
  static DoubleSpec make(const Alphabet& x_alphabet, const Word& w);
  // Explicit mirror alphabet; must be disjoint from the factor alphabet
  // and of the same size.
  static DoubleSpec make_with(const Alphabet& x_alphabet, const Alphabet& y_alphabet,
                              const Word& w);

  const Alphabet& x_alphabet() const { return x_; }
  const Alphabet& y_alphabet() const { return y_; }
  const Alphabet& joint_alphabet() const { return joint_; }
  const Word& w() const { return w_; }
  const Word& w_mirror() const { return w_mirror_; }

  std::size_t x_size() const { return x_.size(); }
  bool is_x_letter(Letter l) const {
    return static_cast<std::size_t>(l < 0 ? -l : l) <= x_.size();
  }
  Letter mirror(Letter l) const;
  Word mirror(const Word& word) const;

  std::vector<Letter> x_letters() const;  // positive letters of the factor
  std::vector<Letter> y_letters() const;

  // Same double with the color roles exchanged.
  DoubleSpec swapped() const;

  BicoloredGraph make_graph(std::size_t vertex_count) const {
    return BicoloredGraph(joint_, vertex_count);
  }

 private:
  DoubleSpec() = default;
  Alphabet x_;
  Alphabet y_;
  Alphabet joint_;
  Word w_;
  Word w_mirror_;
};

// Vertices with outgoing edges of both colors.
std::vector<Vertex> bichromatic_vertices(const DoubleSpec& spec, const BicoloredGraph& g);

// Witness of a compatibility failure: from `vertex`, the w^exponent and
// w'^exponent traces are both complete but end at different vertices.
struct CompatibilityViolation {
  Vertex vertex;
  int exponent;
  Vertex x_end;
  Vertex y_end;
};

// First violation in the scan order (ascending vertex, then |exponent| with
// positive before negative), or nullopt when the graph is compatible.
// Exponents are enumerated until both power orbits leave the graph or the
// pair of reached vertices repeats.
std::optional<CompatibilityViolation> find_compatibility_violation(const DoubleSpec& spec,
                                                                   const BicoloredGraph& g);

bool is_amalgam_compatible(const DoubleSpec& spec, const BicoloredGraph& g);

// Every monochromatic component is a cover of its factor and the graph is
// compatible.
bool is_precover(const DoubleSpec& spec, const BicoloredGraph& g);

// A precover saturated for both full alphabets at every vertex.
bool is_double_cover(const DoubleSpec& spec, const BicoloredGraph& g);

// Identifies pairs of monochromatic endpoints of equal-power w/w' traces
// until the graph is compatible. Monochromatic components pass through
// unchanged. Requires every monochromatic component to be a cover
// (Property1Violated otherwise); the remaining preconditions — equal
// amalgam intersections and paired connecting paths at bichromatic
// vertices — are trusted from the caller, and a merge that would touch a
// bichromatic vertex reports CompletionError.
struct CompletionResult {
  BicoloredGraph graph;
  std::vector<Vertex> vertex_map;
};
CompletionResult complete_precover(const DoubleSpec& spec, const BicoloredGraph& g);

// Amalgamates `patch` onto `host` at the given vertices: the subalphabet
// component of host_vertex must embed into the patch (label-respecting,
// basepoint-preserving, injective), the two copies of that component are
// identified, and everything else of the patch is adjoined fresh. Host
// vertex ids are preserved. Throws NoEmbedding.
LabeledGraph graft(const LabeledGraph& host, Vertex host_vertex, const LabeledGraph& patch,
                   Vertex patch_vertex, std::span<const Letter> subalphabet);

// Completes every monochromatic component to a cover of its factor, in
// place: per component and letter, the partial injection extends to a
// permutation of the component's vertices (deficient sources matched to
// missing targets in ascending order). Vertices meeting no edge of a color
// are left alone for that color. Throws NotWellLabeled.
void hall_complete_components(const DoubleSpec& spec, BicoloredGraph& g);

// Relabels every edge through the color bijection x_i <-> y_i.
BicoloredGraph mirror_graph(const DoubleSpec& spec, const BicoloredGraph& g);

// Doubling: glues the mirror copy onto the graph along all monochromatic
// vertices, producing a cover of the double. Input vertex ids are preserved;
// mirror_map sends each input vertex to its mirror copy in the output.
// Throws NotPrecover.
struct DoubleUpResult {
  BicoloredGraph graph;
  std::vector<Vertex> mirror_map;
};
DoubleUpResult double_up(const DoubleSpec& spec, const BicoloredGraph& g);

// Alternating syllable decomposition of a word of the double: no interior
// syllable is a power of the amalgamating word, and a lone amalgam-power
// syllable is written over the factor alphabet. Empty exactly when the
// element is trivial in the double.
std::vector<Word> normal_form(const DoubleSpec& spec, std::span<const Letter> raw);
std::vector<Word> normal_form(const DoubleSpec& spec, const Word& word);

}  // namespace lerf
