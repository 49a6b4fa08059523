#include "lerf/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "lerf/errors.hpp"

namespace lerf {

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), Vertex{0});
  }

  Vertex root(Vertex x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  // Least id survives as the representative.
  bool merge(Vertex a, Vertex b) {
    a = root(a);
    b = root(b);
    if (a == b) {
      return false;
    }
    if (b < a) {
      std::swap(a, b);
    }
    parent[b] = a;
    return true;
  }

  std::vector<Vertex> parent;
};

// xorshift-style mixer; only used to vary fold worklist order.
std::uint64_t mix(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

bool arc_order(const LabeledGraph::Arc& a, const LabeledGraph::Arc& b) {
  const int ra = letter_rank(a.label);
  const int rb = letter_rank(b.label);
  return ra != rb ? ra < rb : a.to < b.to;
}

// BFS renumbering of a quotiented edge list; used by fold and canonical form.
// `prefer` picks the BFS start when present, else the least live vertex.
// Exploration follows sorted arcs, so for well-labeled graphs the numbering
// is invariant under input renaming.
std::vector<Vertex> bfs_numbering(std::size_t n, const std::vector<std::vector<LabeledGraph::Arc>>& adj,
                                  const std::vector<bool>& live, std::optional<Vertex> prefer) {
  constexpr Vertex kUnset = static_cast<Vertex>(-1);
  std::vector<Vertex> number(n, kUnset);
  Vertex next = 0;
  std::deque<Vertex> queue;

  auto enqueue = [&](Vertex v) {
    if (number[v] == kUnset) {
      number[v] = next++;
      queue.push_back(v);
    }
  };

  auto run = [&](Vertex start) {
    enqueue(start);
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop_front();
      auto arcs = adj[v];
      std::sort(arcs.begin(), arcs.end(), arc_order);
      for (const auto& a : arcs) {
        enqueue(a.to);
      }
    }
  };

  if (prefer && live[*prefer]) {
    run(*prefer);
  }
  for (Vertex v = 0; v < n; ++v) {
    if (live[v] && number[v] == kUnset) {
      run(v);
    }
  }
  return number;
}

}  // namespace

LabeledGraph::LabeledGraph(Alphabet alphabet, std::size_t vertex_count)
    : alphabet_(std::move(alphabet)), adjacency_(vertex_count) {}

LabeledGraph LabeledGraph::build(Alphabet alphabet, std::size_t vertex_count,
                                 std::span<const EdgeSpec> edges,
                                 std::optional<Vertex> basepoint) {
  LabeledGraph g(std::move(alphabet), vertex_count);
  for (const auto& e : edges) {
    if (!g.alphabet_.contains(e.label)) {
      throw UnknownLetter("edge label " + std::to_string(e.label) + " is outside the alphabet");
    }
    if (e.from >= vertex_count || e.to >= vertex_count) {
      throw DanglingVertex("edge references vertex outside the graph");
    }
    g.add_edge(e.from, e.label, e.to);
  }
  g.set_basepoint(basepoint);
  return g;
}

void LabeledGraph::set_basepoint(std::optional<Vertex> v) {
  if (v && *v >= vertex_count()) {
    throw DanglingVertex("basepoint outside the graph");
  }
  basepoint_ = v;
}

Vertex LabeledGraph::add_vertex() {
  adjacency_.emplace_back();
  return static_cast<Vertex>(adjacency_.size() - 1);
}

bool LabeledGraph::add_edge(Vertex from, Letter label, Vertex to) {
  if (from >= vertex_count() || to >= vertex_count()) {
    throw DanglingVertex("edge references vertex outside the graph");
  }
  if (!alphabet_.contains(label)) {
    throw UnknownLetter("edge label outside the alphabet");
  }
  if (has_edge(from, label, to)) {
    return false;
  }
  adjacency_[from].push_back({label, to});
  ++directed_count_;
  // A loop (v, x, v) still gets both signed directions at v.
  adjacency_[to].push_back({inverse_letter(label), from});
  ++directed_count_;
  return true;
}

bool LabeledGraph::has_edge(Vertex from, Letter label, Vertex to) const {
  for (const auto& a : adjacency_[from]) {
    if (a.label == label && a.to == to) {
      return true;
    }
  }
  return false;
}

std::optional<Vertex> LabeledGraph::neighbor(Vertex v, Letter label) const {
  std::optional<Vertex> found;
  for (const auto& a : adjacency_[v]) {
    if (a.label != label) {
      continue;
    }
    if (found && *found != a.to) {
      throw NotWellLabeled("two outgoing edges labeled " + alphabet_.print(label) +
                           " at vertex " + std::to_string(v));
    }
    found = a.to;
  }
  return found;
}

bool LabeledGraph::has_outgoing(Vertex v, Letter label) const {
  for (const auto& a : adjacency_[v]) {
    if (a.label == label) {
      return true;
    }
  }
  return false;
}

std::vector<EdgeSpec> LabeledGraph::positive_edges() const {
  std::vector<EdgeSpec> out;
  out.reserve(edge_count());
  for (Vertex v = 0; v < vertex_count(); ++v) {
    for (const auto& a : adjacency_[v]) {
      if (a.label > 0) {
        out.push_back({v, a.label, a.to});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const EdgeSpec& x, const EdgeSpec& y) {
    if (x.from != y.from) {
      return x.from < y.from;
    }
    const int rx = letter_rank(x.label);
    const int ry = letter_rank(y.label);
    if (rx != ry) {
      return rx < ry;
    }
    return x.to < y.to;
  });
  return out;
}

bool LabeledGraph::is_well_labeled() const {
  for (Vertex v = 0; v < vertex_count(); ++v) {
    std::map<Letter, Vertex> seen;
    for (const auto& a : adjacency_[v]) {
      auto [it, inserted] = seen.emplace(a.label, a.to);
      if (!inserted && it->second != a.to) {
        return false;
      }
    }
  }
  return true;
}

void LabeledGraph::check_invariants() const {
  if (basepoint_ && *basepoint_ >= vertex_count()) {
    throw DanglingVertex("basepoint outside the graph");
  }
  std::size_t directed = 0;
  for (Vertex v = 0; v < vertex_count(); ++v) {
    for (const auto& a : adjacency_[v]) {
      ++directed;
      if (!alphabet_.contains(a.label)) {
        throw UnknownLetter("stored edge label outside the alphabet");
      }
      if (a.to >= vertex_count()) {
        throw DanglingVertex("stored edge target outside the graph");
      }
      if (!has_edge(a.to, inverse_letter(a.label), v)) {
        throw Error("inverse closure violated");
      }
    }
  }
  if (directed != directed_count_) {
    throw Error("edge count out of sync");
  }
}

FoldResult fold_with_map(const LabeledGraph& g, std::uint64_t seed) {
  const std::size_t n = g.vertex_count();
  UnionFind uf(n);

  // Worklist folding: scan a class for same-label arcs to different classes,
  // merge the targets, rescan whatever grew.
  std::vector<std::vector<LabeledGraph::Arc>> adj(n);
  for (Vertex v = 0; v < n; ++v) {
    adj[v] = g.out(v);
  }

  std::deque<Vertex> work;
  std::vector<char> queued(n, 1);
  {
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    if (seed != 0) {
      std::uint64_t state = seed;
      for (std::size_t i = n; i > 1; --i) {
        std::swap(order[i - 1], order[mix(state) % i]);
      }
    }
    work.assign(order.begin(), order.end());
  }

  auto enqueue = [&](Vertex v) {
    if (!queued[v]) {
      queued[v] = 1;
      work.push_back(v);
    }
  };

  while (!work.empty()) {
    Vertex v = uf.root(work.front());
    work.pop_front();
    queued[v] = 0;

    bool rescan = true;
    while (rescan) {
      rescan = false;
      std::map<Letter, Vertex> first;
      for (const auto& a : adj[v]) {
        const Vertex t = uf.root(a.to);
        auto [it, inserted] = first.emplace(a.label, t);
        if (inserted || it->second == t) {
          continue;
        }
        const Vertex x = it->second;
        uf.merge(x, t);
        const Vertex winner = uf.root(x);
        const Vertex loser = winner == x ? t : x;
        adj[winner].insert(adj[winner].end(), adj[loser].begin(), adj[loser].end());
        adj[loser].clear();
        adj[loser].shrink_to_fit();
        enqueue(winner);
        v = uf.root(v);  // v itself may have been merged away
        rescan = true;
        break;
      }
    }
  }

  // Quotient onto class representatives, then renumber canonically.
  std::vector<bool> live(n, false);
  for (Vertex v = 0; v < n; ++v) {
    live[uf.root(v)] = true;
  }
  std::vector<std::vector<LabeledGraph::Arc>> quotient(n);
  for (Vertex v = 0; v < n; ++v) {
    for (const auto& a : g.out(v)) {
      quotient[uf.root(v)].push_back({a.label, uf.root(a.to)});
    }
  }
  std::optional<Vertex> base;
  if (g.basepoint()) {
    base = uf.root(*g.basepoint());
  }
  const auto number = bfs_numbering(n, quotient, live, base);

  std::size_t live_count = 0;
  for (Vertex v = 0; v < n; ++v) {
    live_count += live[v] ? 1 : 0;
  }
  LabeledGraph out(g.alphabet(), live_count);
  for (Vertex v = 0; v < n; ++v) {
    if (!live[v]) {
      continue;
    }
    for (const auto& a : quotient[v]) {
      if (a.label > 0) {
        out.add_edge(number[v], a.label, number[a.to]);
      }
    }
  }
  if (base) {
    out.set_basepoint(number[*base]);
  }

  FoldResult result{std::move(out), std::vector<Vertex>(n)};
  for (Vertex v = 0; v < n; ++v) {
    result.vertex_map[v] = number[uf.root(v)];
  }
  return result;
}

LabeledGraph fold(const LabeledGraph& g, std::uint64_t seed) {
  return fold_with_map(g, seed).graph;
}

FoldResult merge_pair(const LabeledGraph& g, Vertex a, Vertex b) {
  const std::size_t n = g.vertex_count();
  if (a >= n || b >= n) {
    throw DanglingVertex("merge_pair vertex outside the graph");
  }
  const Vertex winner = std::min(a, b);
  const Vertex loser = std::max(a, b);

  std::vector<Vertex> map(n);
  for (Vertex v = 0; v < n; ++v) {
    Vertex image = v == loser ? winner : v;
    if (a != b && image > loser) {
      --image;
    }
    map[v] = image;
  }

  LabeledGraph out(g.alphabet(), a == b ? n : n - 1);
  for (Vertex v = 0; v < n; ++v) {
    for (const auto& arc : g.out(v)) {
      if (arc.label > 0) {
        out.add_edge(map[v], arc.label, map[arc.to]);
      }
    }
  }
  if (g.basepoint()) {
    out.set_basepoint(map[*g.basepoint()]);
  }
  return {std::move(out), std::move(map)};
}

TraceOutcome trace(const LabeledGraph& g, Vertex start, const Word& w) {
  if (start >= g.vertex_count()) {
    throw DanglingVertex("trace start outside the graph");
  }
  Vertex v = start;
  std::size_t consumed = 0;
  for (Letter l : w) {
    const auto next = g.neighbor(v, l);
    if (!next) {
      return {v, consumed, false};
    }
    v = *next;
    ++consumed;
  }
  return {v, consumed, true};
}

Vertex trace_extend(LabeledGraph& g, Vertex start, const Word& w) {
  const auto partial = trace(g, start, w);
  Vertex v = partial.end;
  for (std::size_t i = partial.consumed; i < w.size(); ++i) {
    const Vertex fresh = g.add_vertex();
    g.add_edge(v, w[i], fresh);
    v = fresh;
  }
  return v;
}

bool is_saturated_at(const LabeledGraph& g, Vertex v, std::span<const Letter> subalphabet) {
  for (Letter l : subalphabet) {
    if (!g.has_outgoing(v, l) || !g.has_outgoing(v, inverse_letter(l))) {
      return false;
    }
  }
  return true;
}

ComponentSplit components(const LabeledGraph& g, std::span<const Letter> subalphabet) {
  const std::size_t n = g.vertex_count();
  std::vector<bool> in_sub(g.alphabet().size() + 1, false);
  for (Letter l : subalphabet) {
    in_sub[static_cast<std::size_t>(l < 0 ? -l : l)] = true;
  }
  auto sub_arc = [&](const LabeledGraph::Arc& a) {
    return in_sub[static_cast<std::size_t>(a.label < 0 ? -a.label : a.label)];
  };

  UnionFind uf(n);
  std::vector<bool> touched(n, false);
  for (Vertex v = 0; v < n; ++v) {
    for (const auto& a : g.out(v)) {
      if (sub_arc(a)) {
        touched[v] = true;
        uf.merge(v, a.to);
      }
    }
  }

  std::map<Vertex, std::vector<Vertex>> classes;
  ComponentSplit split;
  for (Vertex v = 0; v < n; ++v) {
    if (touched[v]) {
      classes[uf.root(v)].push_back(v);
    } else {
      split.singletons.push_back(v);
    }
  }

  for (auto& [root, vertices] : classes) {
    ComponentSplit::Component comp;
    comp.vertices = vertices;  // ascending by construction
    std::map<Vertex, Vertex> local;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      local[vertices[i]] = static_cast<Vertex>(i);
    }
    comp.graph = LabeledGraph(g.alphabet(), vertices.size());
    for (Vertex v : vertices) {
      for (const auto& a : g.out(v)) {
        if (sub_arc(a) && a.label > 0) {
          comp.graph.add_edge(local[v], a.label, local[a.to]);
        }
      }
    }
    if (g.basepoint() && local.count(*g.basepoint())) {
      comp.graph.set_basepoint(local[*g.basepoint()]);
    }
    split.components.push_back(std::move(comp));
  }
  return split;
}

bool lab_contains(const LabeledGraph& g, Vertex base, const Word& w) {
  const auto t = trace(g, base, w);
  return t.complete && t.end == base;
}

std::string canonical_string(const LabeledGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<LabeledGraph::Arc>> adj(n);
  for (Vertex v = 0; v < n; ++v) {
    adj[v] = g.out(v);
  }
  const std::vector<bool> live(n, true);
  const auto number = bfs_numbering(n, adj, live, g.basepoint());

  std::vector<EdgeSpec> edges;
  for (Vertex v = 0; v < n; ++v) {
    for (const auto& a : g.out(v)) {
      if (a.label > 0) {
        edges.push_back({number[v], a.label, number[a.to]});
      }
    }
  }
  std::sort(edges.begin(), edges.end(), [](const EdgeSpec& x, const EdgeSpec& y) {
    if (x.from != y.from) {
      return x.from < y.from;
    }
    const int rx = letter_rank(x.label);
    const int ry = letter_rank(y.label);
    if (rx != ry) {
      return rx < ry;
    }
    return x.to < y.to;
  });

  std::ostringstream out;
  out << "vertices " << n << "\n";
  if (g.basepoint()) {
    out << "basepoint " << number[*g.basepoint()] << "\n";
  }
  for (const auto& e : edges) {
    out << e.from << " " << g.alphabet().print(e.label) << " " << e.to << "\n";
  }
  return out.str();
}

std::string to_dot(const LabeledGraph& g, std::size_t x_letter_count) {
  std::ostringstream out;
  out << "digraph labeled_graph {\n";
  out << "  rankdir=LR;\n";
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const bool is_base = g.basepoint() && *g.basepoint() == v;
    out << "  v" << v << " [shape=" << (is_base ? "doublecircle" : "circle") << "];\n";
  }
  for (const auto& e : g.positive_edges()) {
    const bool x_colored =
        x_letter_count == 0 || static_cast<std::size_t>(e.label) <= x_letter_count;
    out << "  v" << e.from << " -> v" << e.to << " [label=\"" << g.alphabet().print(e.label)
        << "\", color=\"" << (x_colored ? "black" : "blue") << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace lerf
