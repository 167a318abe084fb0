#include "specrig/stallings.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "specrig/error.hpp"

namespace specrig {

namespace {

// Incremental folding over a union-find of vertices. Slots may hold stale
// ids; every read goes through find().
struct Folder {
  int rank;
  std::vector<int> parent;
  std::vector<std::vector<int>> out, in_;  // [letter-1][vertex], -1 empty
  std::vector<std::pair<int, int>> merges;

  Folder(int r, int nv)
      : rank(r),
        parent(static_cast<size_t>(nv)),
        out(static_cast<size_t>(r), std::vector<int>(static_cast<size_t>(nv), -1)),
        in_(static_cast<size_t>(r), std::vector<int>(static_cast<size_t>(nv), -1)) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  int find(int v) {
    while (parent[static_cast<size_t>(v)] != v)
      v = parent[static_cast<size_t>(v)] =
          parent[static_cast<size_t>(parent[static_cast<size_t>(v)])];
    return v;
  }

  // Record edge x+1: u -> v; conflicting slots queue vertex merges.
  void put(int x, int u, int v) {
    u = find(u);
    v = find(v);
    int& ou = out[static_cast<size_t>(x)][static_cast<size_t>(u)];
    if (ou == -1)
      ou = v;
    else if (find(ou) != v)
      merges.push_back({find(ou), v});
    int& iv = in_[static_cast<size_t>(x)][static_cast<size_t>(v)];
    if (iv == -1)
      iv = u;
    else if (find(iv) != u)
      merges.push_back({find(iv), u});
  }

  void add_edge(int x, int u, int v) {
    put(x, u, v);
    while (!merges.empty()) {
      auto [a, b] = merges.back();
      merges.pop_back();
      a = find(a);
      b = find(b);
      if (a == b) continue;
      parent[static_cast<size_t>(b)] = a;
      for (int y = 0; y < rank; ++y) {
        int& ob = out[static_cast<size_t>(y)][static_cast<size_t>(b)];
        if (ob != -1) {
          int t = ob;
          ob = -1;
          put(y, a, t);
        }
        int& ib = in_[static_cast<size_t>(y)][static_cast<size_t>(b)];
        if (ib != -1) {
          int s = ib;
          ib = -1;
          put(y, s, a);
        }
      }
    }
  }

  // Compacted edge list over surviving classes, plus the new id of `base`.
  std::pair<std::vector<std::array<int, 3>>, int> compact(int base) {
    int nv = static_cast<int>(parent.size());
    std::vector<int> id(static_cast<size_t>(nv), -1);
    int next = 0;
    for (int v = 0; v < nv; ++v)
      if (find(v) == v) id[static_cast<size_t>(v)] = next++;
    std::vector<std::array<int, 3>> es;
    for (int v = 0; v < nv; ++v) {
      if (find(v) != v) continue;
      for (int y = 0; y < rank; ++y) {
        int t = out[static_cast<size_t>(y)][static_cast<size_t>(v)];
        if (t != -1)
          es.push_back({y + 1, id[static_cast<size_t>(v)],
                        id[static_cast<size_t>(find(t))]});
      }
    }
    return {es, id[static_cast<size_t>(find(base))]};
  }
};

struct Tables {
  std::vector<std::vector<int>> out, in_;
};

Tables adjacency(int rank, int vertices, const std::vector<std::array<int, 3>>& edges) {
  Tables t;
  t.out.assign(static_cast<size_t>(rank), std::vector<int>(static_cast<size_t>(vertices), -1));
  t.in_.assign(static_cast<size_t>(rank), std::vector<int>(static_cast<size_t>(vertices), -1));
  for (const auto& [x, s, d] : edges) {
    if (x < 1 || x > rank) fail(errc::invalid, "edge letter out of range");
    if (s < 0 || s >= vertices || d < 0 || d >= vertices)
      fail(errc::invalid, "edge endpoint out of range");
    int& os = t.out[static_cast<size_t>(x - 1)][static_cast<size_t>(s)];
    int& id = t.in_[static_cast<size_t>(x - 1)][static_cast<size_t>(d)];
    if (os != -1 || id != -1) fail(errc::invalid, "graph is not folded");
    os = d;
    id = s;
  }
  return t;
}

int degree(const Tables& t, int rank, int v) {
  int d = 0;
  for (int y = 0; y < rank; ++y) {
    if (t.out[static_cast<size_t>(y)][static_cast<size_t>(v)] != -1) ++d;
    if (t.in_[static_cast<size_t>(y)][static_cast<size_t>(v)] != -1) ++d;
  }
  return d;
}

struct Pruned {
  std::vector<std::array<int, 3>> edges;
  int vertices;
  int base;
};

// Remove degree-1 non-base vertices left over from folding (none should
// survive a wedge fold, but the invariant is cheap to enforce).
Pruned prune_spurs(int rank, int vertices, int base,
                   std::vector<std::array<int, 3>> edges) {
  for (;;) {
    Tables t = adjacency(rank, vertices, edges);
    int victim = -1;
    for (int v = 0; v < vertices && victim < 0; ++v)
      if (v != base && degree(t, rank, v) <= 1) victim = v;
    if (victim < 0) return {std::move(edges), vertices, base};
    std::vector<std::array<int, 3>> kept;
    for (const auto& e : edges)
      if (e[1] != victim && e[2] != victim) kept.push_back(e);
    // renumber above the victim
    for (auto& e : kept) {
      if (e[1] > victim) --e[1];
      if (e[2] > victim) --e[2];
    }
    if (base > victim) --base;
    --vertices;
    edges = std::move(kept);
  }
}

enum class DegreeRule { core, based };

// Validates and renumbers breadth-first from the base (out-x then in-x for
// x = 1..rank), so the base becomes vertex 0.
Tables canonical_tables(int rank, int vertices, int base,
                        const std::vector<std::array<int, 3>>& edges,
                        DegreeRule rule) {
  if (rank < 1 || rank > kMaxRank) fail(errc::invalid, "rank out of range");
  if (vertices < 1) fail(errc::invalid, "graph needs at least one vertex");
  if (base < 0 || base >= vertices) fail(errc::invalid, "base vertex out of range");
  Tables t = adjacency(rank, vertices, edges);

  int weak = 0;  // degree-1 non-base vertices; a based graph may strand one
  for (int v = 0; v < vertices; ++v) {
    if (v == base) continue;
    int d = degree(t, rank, v);
    if (d <= 1) ++weak;
  }
  if ((rule == DegreeRule::core && weak > 0) || weak > 1)
    fail(errc::invalid, "graph has a hanging vertex");

  std::vector<int> id(static_cast<size_t>(vertices), -1);
  std::vector<int> order;
  id[static_cast<size_t>(base)] = 0;
  order.push_back(base);
  for (size_t head = 0; head < order.size(); ++head) {
    int v = order[head];
    for (int y = 0; y < rank; ++y) {
      for (int w : {t.out[static_cast<size_t>(y)][static_cast<size_t>(v)],
                    t.in_[static_cast<size_t>(y)][static_cast<size_t>(v)]}) {
        if (w == -1 || id[static_cast<size_t>(w)] != -1) continue;
        id[static_cast<size_t>(w)] = static_cast<int>(order.size());
        order.push_back(w);
      }
    }
  }
  if (static_cast<int>(order.size()) != vertices)
    fail(errc::invalid, "graph is not connected");

  Tables c;
  c.out.assign(static_cast<size_t>(rank), std::vector<int>(static_cast<size_t>(vertices), -1));
  c.in_.assign(static_cast<size_t>(rank), std::vector<int>(static_cast<size_t>(vertices), -1));
  for (int v = 0; v < vertices; ++v)
    for (int y = 0; y < rank; ++y) {
      int w = t.out[static_cast<size_t>(y)][static_cast<size_t>(v)];
      if (w != -1) {
        c.out[static_cast<size_t>(y)][static_cast<size_t>(id[static_cast<size_t>(v)])] =
            id[static_cast<size_t>(w)];
        c.in_[static_cast<size_t>(y)][static_cast<size_t>(id[static_cast<size_t>(w)])] =
            id[static_cast<size_t>(v)];
      }
    }
  return c;
}

// Longest readable prefix of p from v; returns (letters consumed, end vertex).
std::pair<int, int> walk(const CoreGraph& g, int v, const Word& p) {
  int i = 0;
  while (i < p.length()) {
    int n = g.step(v, p.at(i));
    if (n == -1) break;
    v = n;
    ++i;
  }
  return {i, v};
}

}  // namespace

CoreGraph::CoreGraph(int rank, std::vector<std::vector<int>> out,
                     std::vector<std::vector<int>> in)
    : rank_(rank), out_(std::move(out)), in_(std::move(in)) {}

long CoreGraph::edge_count() const {
  long n = 0;
  for (const auto& row : out_)
    for (int v : row)
      if (v != -1) ++n;
  return n;
}

std::vector<std::array<int, 3>> CoreGraph::edges() const {
  std::vector<std::array<int, 3>> es;
  for (int x = 1; x <= rank_; ++x)
    for (int v = 0; v < vertex_count(); ++v)
      if (out_edge(v, x) != -1) es.push_back({x, v, out_edge(v, x)});
  return es;
}

CoreGraph fold(const std::vector<Word>& generators, int rank) {
  if (rank < 1 || rank > kMaxRank) fail(errc::invalid, "rank out of range");
  long path = 0;
  for (const Word& g : generators) {
    if (g.rank() != rank) fail(errc::invalid, "generator rank mismatch");
    path += std::max(0, g.length() - 1);
  }
  Folder f(rank, 1 + static_cast<int>(path));
  int nv = 1;
  for (const Word& g : generators) {
    if (g.empty()) continue;
    int cur = 0;
    for (int i = 0; i < g.length(); ++i) {
      int nxt = i + 1 == g.length() ? 0 : nv++;
      Letter l = g.at(i);
      if (l > 0)
        f.add_edge(l - 1, cur, nxt);
      else
        f.add_edge(-l - 1, nxt, cur);
      cur = nxt;
    }
  }
  auto [edges, base] = f.compact(0);
  int vertices = 0;
  for (size_t v = 0; v < f.parent.size(); ++v)
    if (f.find(static_cast<int>(v)) == static_cast<int>(v)) ++vertices;
  Pruned p = prune_spurs(rank, vertices, base, std::move(edges));
  Tables t = canonical_tables(rank, p.vertices, p.base, p.edges, DegreeRule::core);
  return CoreGraph(rank, std::move(t.out), std::move(t.in_));
}

bool contains(const CoreGraph& g, const Word& w) {
  if (w.rank() != g.rank()) fail(errc::invalid, "word rank mismatch");
  auto [consumed, end] = walk(g, g.base(), w);
  return consumed == w.length() && end == g.base();
}

std::optional<long> index(const CoreGraph& g) {
  for (int v = 0; v < g.vertex_count(); ++v)
    for (int x = 1; x <= g.rank(); ++x)
      if (g.out_edge(v, x) == -1 || g.in_edge(v, x) == -1) return std::nullopt;
  return g.vertex_count();
}

bool reads(const CoreGraph& g, const Word& p) {
  if (p.rank() != g.rank()) fail(errc::invalid, "word rank mismatch");
  for (int v = 0; v < g.vertex_count(); ++v)
    if (walk(g, v, p).first == p.length()) return true;
  return false;
}

bool reads_based(const BasedGraph& bg, const Word& p) { return reads(bg.graph, p); }

BasedGraph with_basepoint(const CoreGraph& g, const Word& tail) {
  if (tail.rank() != g.rank()) fail(errc::invalid, "word rank mismatch");
  auto [consumed, attach] = walk(g, g.base(), tail);
  std::vector<std::array<int, 3>> edges = g.edges();
  int vertices = g.vertex_count();
  int cur = attach;
  for (int i = consumed; i < tail.length(); ++i) {
    int nxt = vertices++;
    Letter l = tail.at(i);
    if (l > 0)
      edges.push_back({l, cur, nxt});
    else
      edges.push_back({-l, nxt, cur});
    cur = nxt;
  }
  Word bridge(tail.rank(),
              std::vector<Letter>(tail.letters().begin() + consumed, tail.letters().end()));
  Tables t = canonical_tables(g.rank(), vertices, cur, edges, DegreeRule::based);
  return BasedGraph{CoreGraph(g.rank(), std::move(t.out), std::move(t.in_)), bridge};
}

CoreGraph core_graph_from_parts(int rank, int vertices, int base,
                                const std::vector<std::array<int, 3>>& edges) {
  Tables t = canonical_tables(rank, vertices, base, edges, DegreeRule::core);
  return CoreGraph(rank, std::move(t.out), std::move(t.in_));
}

BasedGraph based_graph_from_parts(int rank, int vertices, int base,
                                  const std::vector<std::array<int, 3>>& edges,
                                  const Word& bridge) {
  if (bridge.rank() != rank) fail(errc::invalid, "bridge rank mismatch");
  Tables t = canonical_tables(rank, vertices, base, edges, DegreeRule::based);
  CoreGraph g(rank, std::move(t.out), std::move(t.in_));
  if (walk(g, g.base(), inverse(bridge)).first != bridge.length())
    fail(errc::invalid, "bridge word is not readable from the base");
  return BasedGraph{std::move(g), bridge};
}

CoreGraph rebase(const std::vector<Word>& generators, const Automorphism& phi) {
  Automorphism inv = invert(phi);
  std::vector<Word> coords;
  coords.reserve(generators.size());
  for (const Word& h : generators) {
    if (h.rank() != phi.rank) fail(errc::invalid, "generator rank mismatch");
    coords.push_back(inv.apply(h));
  }
  return fold(coords, phi.rank);
}

std::optional<long> power_bound(const CoreGraph& g, const Word& z) {
  if (z.empty()) fail(errc::invalid, "power bound of the trivial word");
  if (z.rank() != g.rank()) fail(errc::invalid, "word rank mismatch");
  const int V = g.vertex_count();
  std::vector<int> t(static_cast<size_t>(V), -1);
  for (int v = 0; v < V; ++v) {
    auto [consumed, end] = walk(g, v, z);
    if (consumed == z.length()) t[static_cast<size_t>(v)] = end;
  }
  std::vector<long> depth(static_cast<size_t>(V), 0);
  std::vector<int> state(static_cast<size_t>(V), 0);  // 0 new, 1 on chain, 2 done
  long best = 0;
  for (int s = 0; s < V; ++s) {
    if (state[static_cast<size_t>(s)] != 0) continue;
    std::vector<int> chain;
    int v = s;
    long below = 0;
    for (;;) {
      if (v == -1) {
        below = -1;  // chain fell off; last vertex has depth 0
        break;
      }
      if (state[static_cast<size_t>(v)] == 1) return std::nullopt;  // z-cycle
      if (state[static_cast<size_t>(v)] == 2) {
        below = depth[static_cast<size_t>(v)];
        break;
      }
      state[static_cast<size_t>(v)] = 1;
      chain.push_back(v);
      v = t[static_cast<size_t>(v)];
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      ++below;
      depth[static_cast<size_t>(*it)] = below;
      state[static_cast<size_t>(*it)] = 2;
      best = std::max(best, below);
    }
  }
  return best;
}

std::optional<long> coset_power_bound(const CoreGraph& g, const Word& tail,
                                      const Word& z) {
  auto m = power_bound(with_basepoint(g, tail).graph, z);
  if (!m) return std::nullopt;
  return 2 * *m;
}

}  // namespace specrig
