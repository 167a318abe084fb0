#pragma once

#include <string>
#include <vector>

#include "specrig/rat.hpp"
#include "specrig/words.hpp"

namespace specrig {

struct MetricEdge {
  std::string name;
  int src = 0;
  int dst = 0;
  Rat length;

  bool operator==(const MetricEdge& o) const {
    return name == o.name && src == o.src && dst == o.dst && length == o.length;
  }
};

class MarkedMetricGraph;

MarkedMetricGraph rose(const std::vector<Rat>& lengths);
MarkedMetricGraph marked_rose(const Automorphism& phi,
                              const std::vector<Rat>& lengths);
MarkedMetricGraph scale(const MarkedMetricGraph& t, const Rat& c);
MarkedMetricGraph metric_graph_from_parts(
    int rank, int vertices, int base, const std::vector<MetricEdge>& edges,
    const std::vector<std::vector<int>>& marking);

// A marked metric graph: finite connected graph, positive rational edge
// lengths, and a marking sending each basis letter to a closed edge loop at
// the base. Construction checks that the graph rank (chord count over a
// spanning tree) equals the basis rank and that the chord coordinates of the
// marking loops fold to the full rose (index one), so the marking is a
// surjection between free groups of equal rank, hence an isomorphism, and
// the translation lengths below belong to a genuine free group action.
class MarkedMetricGraph {
 public:
  int rank() const { return rank_; }
  int vertex_count() const { return vertices_; }
  int base() const { return base_; }
  const std::vector<MetricEdge>& edges() const { return edges_; }

  // Loop of basis letter x = 1..rank as signed edge indices: s > 0 traverses
  // edges()[s-1] forwards, s < 0 backwards.
  const std::vector<int>& marking(int x) const {
    return marking_[static_cast<size_t>(x - 1)];
  }

  bool operator==(const MarkedMetricGraph& o) const {
    return rank_ == o.rank_ && vertices_ == o.vertices_ && base_ == o.base_ &&
           edges_ == o.edges_ && marking_ == o.marking_;
  }
  bool operator!=(const MarkedMetricGraph& o) const { return !(*this == o); }

 private:
  MarkedMetricGraph(int rank, int vertices, int base,
                    std::vector<MetricEdge> edges,
                    std::vector<std::vector<int>> marking);
  friend MarkedMetricGraph metric_graph_from_parts(
      int, int, int, const std::vector<MetricEdge>&,
      const std::vector<std::vector<int>>&);

  int rank_, vertices_, base_;
  std::vector<MetricEdge> edges_;
  std::vector<std::vector<int>> marking_;  // [x-1], signed edge indices
};

// Length of the immersed loop of the conjugacy class of g: map g through the
// marking, freely and cyclically reduce the edgepath, sum edge lengths.
// Zero iff g is trivial.
Rat translation_length(const MarkedMetricGraph& t, const Word& g);

// True iff the two length functions differ by at most tol on every word of
// sigma. Both graphs must be marked by the same basis.
bool spectra_agree(const MarkedMetricGraph& t, const MarkedMetricGraph& u,
                   const std::vector<Word>& sigma, const Rat& tol);

}  // namespace specrig
