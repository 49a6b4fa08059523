#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lerf/free_cover.hpp"
#include "lerf/word.hpp"

namespace lerf {

struct DoubleCertificate;

// Finite presentation: generator symbols plus reduced relator words.
struct Presentation {
  Presentation() = default;
  Presentation(Alphabet generators, std::vector<Word> relators);

  Alphabet generators;
  std::vector<Word> relators;
};

// Images 0-based: perm[i] is where point i goes.
using Permutation = std::vector<int>;

Permutation identity_permutation(int degree);
Permutation compose(const Permutation& first, const Permutation& then);
Permutation invert(const Permutation& p);
// Image of a word under generator images.
Permutation evaluate(const Word& word, std::span<const Permutation> images, int degree);
// Cycle notation on points 1..n, fixed points omitted, "()" for the identity.
std::string cycle_notation(const Permutation& p);

// A homomorphism of the presentation into a symmetric group: one permutation
// per generator, every relator evaluating to the identity.
struct HomImage {
  int degree = 1;
  std::vector<Permutation> images;
};

// Exhaustive degrees are capped; larger requests are a configuration error.
inline constexpr int kMaxOracleDegree = 5;

// All homomorphisms into the symmetric group of the given degree, generator
// images in lexicographic order. The search assigns one generator at a time
// and rejects a prefix as soon as a fully-assigned relator fails.
// `visit` may return false to stop early.
void for_each_hom(const Presentation& p, int degree,
                  const std::function<bool(const HomImage&)>& visit);
std::vector<HomImage> enumerate_homs(const Presentation& p, int degree);

// Whether the image of g lies in the image of the subgroup under every
// homomorphism up to degree_max — i.e. no quotient of that size separates
// them. A necessary-condition probe of the profinite closure.
bool closure_member(const Presentation& p, std::span<const Word> subgroup_generators,
                    const Word& g, int degree_max);

// Least degree <= degree_max at which some homomorphism separates g from the
// subgroup image, 0 when none does.
int first_separating_degree(const Presentation& p, std::span<const Word> subgroup_generators,
                            const Word& g, int degree_max);

// Subgroup of the symmetric group generated by the given permutations,
// as the closed set of elements (breadth-first products).
std::vector<Permutation> permutation_closure(std::span<const Permutation> generators, int degree);

// Replays a certificate through an independent route: the letters act on
// the cover's vertices as permutations, the presentation's relators must act
// trivially, and the subgroup orbit of the basepoint must avoid the witness
// image of the basepoint.
struct CrossCheckReport {
  bool ok = false;
  std::string detail;
};
CrossCheckReport cross_check(const FreeCertificate& cert);
CrossCheckReport cross_check(const DoubleCertificate& cert);

}  // namespace lerf
