#pragma once

#include <array>
#include <optional>
#include <vector>

#include "specrig/words.hpp"

namespace specrig {

class CoreGraph;
struct BasedGraph;

CoreGraph fold(const std::vector<Word>& generators, int rank);
CoreGraph core_graph_from_parts(int rank, int vertices, int base,
                                const std::vector<std::array<int, 3>>& edges);
BasedGraph with_basepoint(const CoreGraph& g, const Word& tail);
BasedGraph based_graph_from_parts(int rank, int vertices, int base,
                                  const std::vector<std::array<int, 3>>& edges,
                                  const Word& bridge);

// Folded graph of a finitely generated subgroup, base retained. Vertices are
// canonically numbered (breadth-first from the base, scanning out-x then in-x
// for x = 1..rank), so the base is always vertex 0 and operator== decides
// isomorphism of based labeled graphs. Invariants: folded, connected, every
// vertex of degree < 2 is the base (based graphs relax this, see below).
class CoreGraph {
 public:
  int rank() const { return rank_; }
  int vertex_count() const { return static_cast<int>(out_[0].size()); }
  int base() const { return 0; }

  // x in 1..rank; -1 when there is no such edge.
  int out_edge(int v, int x) const { return out_[static_cast<size_t>(x - 1)][static_cast<size_t>(v)]; }
  int in_edge(int v, int x) const { return in_[static_cast<size_t>(x - 1)][static_cast<size_t>(v)]; }

  // One step reading letter l from v (negative letters walk edges backwards);
  // -1 when impossible.
  int step(int v, Letter l) const {
    return l > 0 ? out_edge(v, l) : in_edge(v, -l);
  }

  long edge_count() const;
  // (letter, src, dst) sorted by letter then source; positive letters only.
  std::vector<std::array<int, 3>> edges() const;

  bool operator==(const CoreGraph& o) const {
    return rank_ == o.rank_ && out_ == o.out_ && in_ == o.in_;
  }
  bool operator!=(const CoreGraph& o) const { return !(*this == o); }

 private:
  CoreGraph(int rank, std::vector<std::vector<int>> out,
            std::vector<std::vector<int>> in);
  friend CoreGraph fold(const std::vector<Word>&, int);
  friend CoreGraph core_graph_from_parts(int, int, int,
                                         const std::vector<std::array<int, 3>>&);
  friend BasedGraph with_basepoint(const CoreGraph&, const Word&);
  friend BasedGraph based_graph_from_parts(int, int, int,
                                           const std::vector<std::array<int, 3>>&,
                                           const Word&);

  int rank_;
  std::vector<std::vector<int>> out_, in_;  // [letter-1][vertex]
};

// Subgroup graph with an external basepoint. graph is the core plus the
// bridge path, rebased at the far bridge end; bridge spells the path from its
// attachment vertex out to the base (empty when the basepoint landed inside
// the core). The attachment vertex is wherever the readable prefix of the
// tail stopped, so graph may keep one degree-1 vertex besides the base (the
// stranded original base).
struct BasedGraph {
  CoreGraph graph;
  Word bridge;

  bool operator==(const BasedGraph& o) const {
    return graph == o.graph && bridge == o.bridge;
  }
  bool operator!=(const BasedGraph& o) const { return !(*this == o); }
};

// Membership in the subgroup: w readable as a closed path at the base.
bool contains(const CoreGraph& g, const Word& w);

// Vertex count when the graph is regular (one in- and one out-edge per letter
// at every vertex), otherwise nullopt meaning infinite index.
std::optional<long> index(const CoreGraph& g);

// p readable as a path from some vertex.
bool reads(const CoreGraph& g, const Word& p);
bool reads_based(const BasedGraph& bg, const Word& p);

// Core graph of <generators> in the coordinates of the basis phi(x_1..x_N):
// folds the words phi^-1(h). Throws NotInvertible when phi is not an
// automorphism.
CoreGraph rebase(const std::vector<Word>& generators, const Automorphism& phi);

// Exact max k with z^k readable from some vertex, found by following the
// z-transition map on vertices; nullopt (unbounded) iff that map has a cycle.
std::optional<long> power_bound(const CoreGraph& g, const Word& z);

// 2 * power_bound over core plus tail bridge. For single-letter z this
// dominates every cyclic power run in reduced forms of tail^-1 h, h in the
// subgroup: a wrapping run splits into a suffix run plus a prefix run of a
// linear representative, each within the linear bound. nullopt = unbounded.
std::optional<long> coset_power_bound(const CoreGraph& g, const Word& tail,
                                      const Word& z);

}  // namespace specrig
