#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "lerf/errors.hpp"
#include "lerf/double_core.hpp"
#include "lerf/free_cover.hpp"
#include "support_double.hpp"

using namespace lerf;
using namespace lerf::testing;

namespace {

const DoubleSpec kSpec = ab_double();

Word jw(const std::string& text) { return parse_word(kSpec.joint_alphabet(), text); }

// Letters of the joint alphabet {a, b, a', b'}.
constexpr Letter kA = 1;
constexpr Letter kB = 2;
constexpr Letter kAp = 3;
constexpr Letter kBp = 4;

}  // namespace

TEST_CASE("DoubleSpec derivation and invariants") {
  CHECK(kSpec.y_alphabet().symbols() == std::vector<std::string>{"a'", "b'"});
  CHECK(kSpec.joint_alphabet().size() == 4);
  CHECK(kSpec.w_mirror() == jw("a'b'"));
  CHECK(kSpec.mirror(kA) == kAp);
  CHECK(kSpec.mirror(-kBp) == -kB);

  const Alphabet x({"a", "b"});
  CHECK_THROWS_AS(DoubleSpec::make(x, parse_word(x, "abab")), SpecInvariantError);
  CHECK_THROWS_AS(DoubleSpec::make(x, parse_word(x, "aa")), SpecInvariantError);
  CHECK_THROWS_AS(DoubleSpec::make(x, parse_word(x, "abA")), SpecInvariantError);
  CHECK_THROWS_AS(DoubleSpec::make(x, Word()), SpecInvariantError);
  CHECK_NOTHROW(DoubleSpec::make(x, parse_word(x, "ab")));
  CHECK_NOTHROW(DoubleSpec::make(x, parse_word(x, "aba")));  // cyclically reduced, primitive
  CHECK_THROWS_AS(DoubleSpec::make(Alphabet({"a", "a'"}), Word({1})), SpecInvariantError);
}

TEST_CASE("bichromatic_vertices") {
  auto g = kSpec.make_graph(3);
  g.add_edge(0, kA, 1);
  g.add_edge(0, kAp, 2);
  CHECK(bichromatic_vertices(kSpec, g) == std::vector<Vertex>{0});

  auto mono = kSpec.make_graph(2);
  mono.add_edge(0, kA, 1);
  CHECK(bichromatic_vertices(kSpec, mono).empty());

  auto disjoint = kSpec.make_graph(4);
  disjoint.add_edge(0, kA, 1);
  disjoint.add_edge(2, kAp, 3);
  CHECK(bichromatic_vertices(kSpec, disjoint).empty());
}

TEST_CASE("compatibility examples") {
  // w-loop and w'-loop of matching exponents at the shared vertex.
  auto good = kSpec.make_graph(3);
  good.add_edge(0, kA, 1);
  good.add_edge(1, kB, 0);
  good.add_edge(0, kAp, 2);
  good.add_edge(2, kBp, 0);
  CHECK(is_amalgam_compatible(kSpec, good));

  // Complete w- and w'-traces from the shared vertex to different ends.
  auto bad = kSpec.make_graph(5);
  bad.add_edge(0, kA, 1);
  bad.add_edge(1, kB, 2);
  bad.add_edge(0, kAp, 3);
  bad.add_edge(3, kBp, 4);
  const auto violation = find_compatibility_violation(kSpec, bad);
  REQUIRE(violation.has_value());
  CHECK(violation->vertex == 0);
  CHECK(violation->exponent == 1);
  CHECK(violation->x_end == 2);
  CHECK(violation->y_end == 4);

  auto mono = kSpec.make_graph(2);
  mono.add_edge(0, kA, 1);
  CHECK(is_amalgam_compatible(kSpec, mono));  // no bichromatic vertices
}

TEST_CASE("compatibility is symmetric in colors") {
  Rng rng(321);
  const auto swapped = kSpec.swapped();
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_glued_input(rng, kSpec, 5);
    CHECK(is_amalgam_compatible(kSpec, g) ==
          is_amalgam_compatible(swapped, mirror_graph(kSpec, g)));
  }
}

TEST_CASE("is_precover examples") {
  Rng rng(11);
  const auto x_cover = random_factor_cover(rng, kSpec, 4);
  CHECK(is_precover(kSpec, x_cover));  // no Y-edges: vacuous compatibility

  const auto glued = random_glued_input(rng, kSpec, 4);
  const auto completed = complete_precover(kSpec, glued).graph;
  CHECK(is_precover(kSpec, completed));

  // Unsaturated X-component: a bare a-edge.
  auto partial = kSpec.make_graph(2);
  partial.add_edge(0, kA, 1);
  CHECK_FALSE(is_precover(kSpec, partial));
}

TEST_CASE("is_double_cover examples") {
  Rng rng(13);
  const auto pre = random_precover(rng, kSpec, 4);
  const auto doubled = double_up(kSpec, pre);
  CHECK(is_double_cover(kSpec, doubled.graph));

  // A precover with a monochromatic vertex is not a cover of the double.
  const auto x_only = random_factor_cover(rng, kSpec, 4);
  REQUIRE(is_precover(kSpec, x_only));
  CHECK_FALSE(is_double_cover(kSpec, x_only));

  const auto lonely = kSpec.make_graph(1);
  CHECK_FALSE(is_double_cover(kSpec, lonely));
}

TEST_CASE("complete_precover identifies stray orbit endpoints") {
  // Index-2 factor cover (a swaps, b fixes) glued to its mirror at vertex 0.
  // Both orbits of the glue vertex close at exponent 2 but pass through
  // distinct monochromatic vertices, which the completion must identify.
  auto x_cover = kSpec.make_graph(2);
  x_cover.add_edge(0, kA, 1);
  x_cover.add_edge(1, kA, 0);
  x_cover.add_edge(0, kB, 0);
  x_cover.add_edge(1, kB, 1);

  const auto y_cover = mirror_graph(kSpec, x_cover);
  const auto glued = glue_at(kSpec, x_cover, 0, y_cover, 0);
  const int kx = cyclic_intersection(glued, 0, kSpec.w());
  const int ky = cyclic_intersection(glued, 0, kSpec.w_mirror());
  REQUIRE(kx == 2);
  REQUIRE(kx == ky);

  const auto completed = complete_precover(kSpec, glued);
  CHECK(is_amalgam_compatible(kSpec, completed.graph));
  CHECK(is_precover(kSpec, completed.graph));
  CHECK(completed.graph.vertex_count() < glued.vertex_count());

  // Already compatible input passes through unchanged.
  const auto again = complete_precover(kSpec, completed.graph);
  CHECK(again.graph.vertex_count() == completed.graph.vertex_count());
  CHECK(canonical_string(again.graph) == canonical_string(completed.graph));

  // Property 1 violation: bare partial component.
  auto partial = kSpec.make_graph(2);
  partial.add_edge(0, kA, 1);
  CHECK_THROWS_AS(complete_precover(kSpec, partial), Property1Violated);
}

TEST_CASE("complete_precover preserves monochromatic components") {
  Rng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const auto glued = random_glued_input(rng, kSpec, 5);
    const auto completed = complete_precover(kSpec, glued);
    CAPTURE(trial);
    REQUIRE(is_amalgam_compatible(kSpec, completed.graph));

    for (const bool x_color : {true, false}) {
      const auto letters = x_color ? kSpec.x_letters() : kSpec.y_letters();
      const auto before = components(glued, letters);
      // The quotient map restricted to same-color components is injective
      // and carries every edge, so each component lands isomorphically.
      std::set<Vertex> images;
      std::size_t colored_vertices = 0;
      for (const auto& comp : before.components) {
        colored_vertices += comp.vertices.size();
        for (Vertex v : comp.vertices) {
          images.insert(completed.vertex_map[v]);
        }
      }
      REQUIRE(images.size() == colored_vertices);
      for (const auto& e : glued.positive_edges()) {
        REQUIRE(completed.graph.has_edge(completed.vertex_map[e.from], e.label,
                                         completed.vertex_map[e.to]));
      }
      const auto after = components(completed.graph, letters);
      REQUIRE(after.components.size() == before.components.size());
      for (std::size_t i = 0; i < before.components.size(); ++i) {
        REQUIRE(before.components[i].graph.edge_count() ==
                after.components[i].graph.edge_count());
      }
    }
  }
}

TEST_CASE("graft examples") {
  const auto sub = kSpec.x_letters();

  // Patch of one vertex: plain disjoint union glued at a point.
  auto host = kSpec.make_graph(2);
  host.add_edge(0, kAp, 1);
  const auto patch_point = kSpec.make_graph(1);
  const auto glued = graft(host, 0, patch_point, 0, sub);
  CHECK(glued.vertex_count() == 2);
  CHECK(glued.edge_count() == 1);

  // Host whose w-orbit at the basepoint is a length-2 partial path, patch a
  // 6-cycle of w-paths containing it: the graft adds the remaining 4 steps.
  auto partial = kSpec.make_graph(5);
  partial.add_edge(0, kA, 1);
  partial.add_edge(1, kB, 2);
  partial.add_edge(2, kA, 3);
  partial.add_edge(3, kB, 4);
  auto cycle = kSpec.make_graph(12);
  for (Vertex i = 0; i < 12; i += 2) {
    cycle.add_edge(i, kA, i + 1);
    cycle.add_edge(i + 1, kB, (i + 2) % 12);
  }
  const auto grafted = graft(partial, 0, cycle, 0, sub);
  CHECK(grafted.is_well_labeled());
  CHECK(grafted.vertex_count() == 12);
  CHECK(grafted.edge_count() == 12);
  for (const auto& e : partial.positive_edges()) {
    CHECK(grafted.has_edge(e.from, e.label, e.to));
  }

  // Component larger than the patch: no embedding.
  auto large = kSpec.make_graph(16);
  Vertex v = 0;
  for (Vertex i = 1; i < 16; ++i) {
    large.add_edge(v, (i % 2) ? kA : kB, i);
    v = i;
  }
  CHECK_THROWS_AS(graft(large, 0, cycle, 0, sub), NoEmbedding);
}

TEST_CASE("graft embeds both inputs on random instances") {
  Rng rng(3131);
  const auto sub = kSpec.x_letters();
  int done = 0;
  while (done < 200) {
    // Patch: a factor cover; host: some subgraph of it around a vertex plus
    // random mirror-colored decoration.
    const auto patch = random_factor_cover(rng, kSpec, 5);
    const auto pv = static_cast<Vertex>(rng.below(patch.vertex_count()));
    auto host = kSpec.make_graph(1);
    host.set_basepoint(0);
    // Grow the host component by tracing patch paths from pv.
    std::vector<Vertex> host_of_patch(patch.vertex_count(), static_cast<Vertex>(-1));
    host_of_patch[pv] = 0;
    std::vector<Vertex> reached = {pv};
    const std::size_t steps = rng.below(6);
    for (std::size_t s = 0; s < steps; ++s) {
      const Vertex from = reached[rng.below(reached.size())];
      const auto& arcs = patch.out(from);
      if (arcs.empty()) {
        continue;
      }
      const auto& arc = arcs[rng.below(arcs.size())];
      if (host_of_patch[arc.to] == static_cast<Vertex>(-1)) {
        host_of_patch[arc.to] = host.add_vertex();
        reached.push_back(arc.to);
      }
      host.add_edge(host_of_patch[from], arc.label, host_of_patch[arc.to]);
    }
    trace_extend(host, 0, kSpec.w_mirror());  // off-color decoration

    const auto out = graft(host, 0, patch, pv, sub);
    CAPTURE(done);
    REQUIRE(out.is_well_labeled());
    for (const auto& e : host.positive_edges()) {
      REQUIRE(out.has_edge(e.from, e.label, e.to));
    }
    REQUIRE(out.vertex_count() >= std::max(host.vertex_count(), patch.vertex_count()));
    out.check_invariants();
    ++done;
  }
}

TEST_CASE("double_up worked example") {
  // Index-2 cover of the factor: a swaps the two vertices, b loops.
  auto g = kSpec.make_graph(2);
  g.add_edge(0, kA, 1);
  g.add_edge(1, kA, 0);
  g.add_edge(0, kB, 0);
  g.add_edge(1, kB, 1);
  g.set_basepoint(0);
  REQUIRE(is_precover(kSpec, g));

  const auto doubled = double_up(kSpec, g);
  CHECK(doubled.graph.vertex_count() == 2);  // both vertices monochromatic
  CHECK(is_double_cover(kSpec, doubled.graph));
  // Same permutation in both colors.
  CHECK(doubled.graph.has_edge(0, kAp, 1));
  CHECK(doubled.graph.has_edge(0, kBp, 0));
}

TEST_CASE("double_up of a full cover is a disjoint mirror copy") {
  Rng rng(99);
  const auto pre = random_precover(rng, kSpec, 4);
  const auto cover = double_up(kSpec, pre).graph;
  REQUIRE(is_double_cover(kSpec, cover));
  // Every vertex of a cover is bichromatic, so nothing is identified.
  const auto again = double_up(kSpec, cover);
  CHECK(again.graph.vertex_count() == 2 * cover.vertex_count());
  CHECK(is_double_cover(kSpec, again.graph));

  auto not_pre = kSpec.make_graph(2);
  not_pre.add_edge(0, kA, 1);
  CHECK_THROWS_AS(double_up(kSpec, not_pre), NotPrecover);
}

TEST_CASE("double_up on random precovers") {
  Rng rng(2718);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pre = random_precover(rng, kSpec, 5);
    const auto result = double_up(kSpec, pre);
    CAPTURE(trial);
    REQUIRE(is_double_cover(kSpec, result.graph));
    REQUIRE(result.graph.vertex_count() <= 2 * pre.vertex_count());
    for (const auto& e : pre.positive_edges()) {
      REQUIRE(result.graph.has_edge(e.from, e.label, e.to));  // input embeds
    }
    result.graph.check_invariants();
  }
}

TEST_CASE("normal_form examples") {
  auto nf = normal_form(kSpec, jw("a'b'"));
  REQUIRE(nf.size() == 1);
  CHECK(nf[0] == jw("ab"));

  nf = normal_form(kSpec, jw("aa'"));
  REQUIRE(nf.size() == 2);
  CHECK(nf[0] == jw("a"));
  CHECK(nf[1] == jw("a'"));

  nf = normal_form(kSpec, jw("aba'b'"));
  REQUIRE(nf.size() == 1);
  CHECK(nf[0] == jw("abab"));

  CHECK(normal_form(kSpec, Word()).empty());

  // The defining relation and its consequences vanish.
  CHECK(normal_form(kSpec, jw("abB'A'")).empty());
  CHECK(normal_form(kSpec, jw("a'b'BA")).empty());
  CHECK(normal_form(kSpec, jw("aba'b'") * jw("B'A'BA")).empty());

  CHECK_THROWS_AS(normal_form(kSpec, std::vector<Letter>{5}), UnknownLetter);
}

TEST_CASE("normal_form invariants on random words") {
  Rng rng(424242);
  for (int trial = 0; trial < 400; ++trial) {
    const Word raw = random_reduced_word(rng, 4, rng.below(11));
    const auto nf = normal_form(kSpec, raw);
    // Syllables alternate colors and no interior syllable is an amalgam
    // power; a fixpoint was reached.
    for (std::size_t i = 0; i < nf.size(); ++i) {
      REQUIRE_FALSE(nf[i].empty());
      if (i + 1 < nf.size()) {
        CHECK(kSpec.is_x_letter(nf[i][0]) != kSpec.is_x_letter(nf[i + 1][0]));
      }
      const bool x_color = kSpec.is_x_letter(nf[i][0]);
      const Word& base = x_color ? kSpec.w() : kSpec.w_mirror();
      const bool power = nf[i].size() % base.size() == 0 &&
                         (base.pow(static_cast<int>(nf[i].size() / base.size())) == nf[i] ||
                          base.pow(-static_cast<int>(nf[i].size() / base.size())) == nf[i]);
      if (nf.size() > 1) {
        CHECK_FALSE(power);
      }
    }
    // The decomposition multiplies back to a word equal to the input in the
    // double: flattening and renormalizing is stable.
    Word flat;
    for (const auto& s : nf) {
      flat = flat * s;
    }
    CHECK(normal_form(kSpec, flat) == nf);
  }
}

TEST_CASE("hall_complete_components completes factor components separately") {
  Rng rng(515);
  for (int trial = 0; trial < 100; ++trial) {
    auto g = fold(random_glued_input(rng, kSpec, 4));
    // Punch holes: rebuild with a random subset of edges, fold again.
    const auto edges = g.positive_edges();
    auto sparse = kSpec.make_graph(g.vertex_count());
    for (const auto& e : edges) {
      if (rng.below(4) != 0) {
        sparse.add_edge(e.from, e.label, e.to);
      }
    }
    auto folded = fold(sparse);
    hall_complete_components(kSpec, folded);
    for (const bool x_color : {true, false}) {
      const auto letters = x_color ? kSpec.x_letters() : kSpec.y_letters();
      for (const auto& comp : components(folded, letters).components) {
        for (Vertex v : comp.vertices) {
          REQUIRE(is_saturated_at(folded, v, letters));
        }
      }
    }
  }
}
