#include "specrig/metric.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "specrig/error.hpp"
#include "specrig/stallings.hpp"

namespace specrig {

namespace {

// Stack reduction of a signed edgepath; s and -s cancel.
std::vector<int> reduce_path(const std::vector<int>& path) {
  std::vector<int> out;
  for (int s : path) {
    if (!out.empty() && out.back() == -s)
      out.pop_back();
    else
      out.push_back(s);
  }
  return out;
}

int walk_end(const std::vector<MetricEdge>& edges, int s) {
  const MetricEdge& e = edges[static_cast<size_t>(std::abs(s) - 1)];
  return s > 0 ? e.dst : e.src;
}

int walk_start(const std::vector<MetricEdge>& edges, int s) {
  const MetricEdge& e = edges[static_cast<size_t>(std::abs(s) - 1)];
  return s > 0 ? e.src : e.dst;
}

}  // namespace

MarkedMetricGraph::MarkedMetricGraph(int rank, int vertices, int base,
                                     std::vector<MetricEdge> edges,
                                     std::vector<std::vector<int>> marking)
    : rank_(rank),
      vertices_(vertices),
      base_(base),
      edges_(std::move(edges)),
      marking_(std::move(marking)) {}

MarkedMetricGraph metric_graph_from_parts(
    int rank, int vertices, int base, const std::vector<MetricEdge>& edges,
    const std::vector<std::vector<int>>& marking) {
  if (rank < 1 || rank > kMaxRank) fail(errc::invalid, "rank out of range");
  if (vertices < 1) fail(errc::invalid, "need at least one vertex");
  if (base < 0 || base >= vertices) fail(errc::invalid, "base out of range");
  int ecount = static_cast<int>(edges.size());
  std::set<std::string> names;
  for (const MetricEdge& e : edges) {
    if (e.name.empty() || e.name[0] == '-' || e.name[0] == '#' ||
        e.name.find_first_of(" \t") != std::string::npos)
      fail(errc::invalid, "bad edge name");
    if (!names.insert(e.name).second) fail(errc::invalid, "duplicate edge name");
    if (e.src < 0 || e.src >= vertices || e.dst < 0 || e.dst >= vertices)
      fail(errc::invalid, "edge endpoint out of range");
    if (e.length <= 0) fail(errc::invalid, "edge length must be positive");
  }
  if (static_cast<int>(marking.size()) != rank)
    fail(errc::invalid, "marking must cover every basis letter");
  for (const std::vector<int>& loop : marking) {
    int cur = base;
    for (int s : loop) {
      if (s == 0 || std::abs(s) > ecount)
        fail(errc::invalid, "marking references a missing edge");
      if (walk_start(edges, s) != cur)
        fail(errc::invalid, "marking loop is not an edgepath");
      cur = walk_end(edges, s);
    }
    if (cur != base) fail(errc::invalid, "marking loop does not close up");
  }

  // Spanning tree by search from the base; leftover edges are the chords.
  std::vector<int> chord_letter(edges.size(), 0);
  std::vector<bool> seen(static_cast<size_t>(vertices), false);
  std::vector<bool> in_tree(edges.size(), false);
  seen[static_cast<size_t>(base)] = true;
  std::vector<int> frontier{base};
  while (!frontier.empty()) {
    int v = frontier.back();
    frontier.pop_back();
    for (size_t i = 0; i < edges.size(); ++i) {
      for (int other : {edges[i].dst, edges[i].src}) {
        int here = other == edges[i].dst ? edges[i].src : edges[i].dst;
        if (here != v || in_tree[i] || seen[static_cast<size_t>(other)]) continue;
        in_tree[i] = true;
        seen[static_cast<size_t>(other)] = true;
        frontier.push_back(other);
      }
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    fail(errc::invalid, "graph is not connected");
  int chords = 0;
  for (size_t i = 0; i < edges.size(); ++i)
    if (!in_tree[i]) chord_letter[i] = ++chords;
  if (chords != rank)
    fail(errc::invalid, "graph rank does not match the basis rank");

  // Chord coordinates of the marking loops must generate the whole
  // fundamental group: their folded graph has index one.
  std::vector<Word> coords;
  for (const std::vector<int>& loop : marking) {
    std::vector<Letter> ls;
    for (int s : loop) {
      int c = chord_letter[static_cast<size_t>(std::abs(s) - 1)];
      if (c != 0) ls.push_back(s > 0 ? c : -c);
    }
    coords.push_back(Word(rank, ls));
  }
  if (index(fold(coords, rank)) != 1)
    fail(errc::invalid, "marking does not generate the fundamental group");

  return MarkedMetricGraph(rank, vertices, base, edges, marking);
}

MarkedMetricGraph rose(const std::vector<Rat>& lengths) {
  int rank = static_cast<int>(lengths.size());
  std::vector<MetricEdge> edges;
  std::vector<std::vector<int>> marking;
  for (int i = 0; i < rank; ++i) {
    edges.push_back({"e" + std::to_string(i + 1), 0, 0, lengths[static_cast<size_t>(i)]});
    marking.push_back({i + 1});
  }
  return metric_graph_from_parts(rank, 1, 0, edges, marking);
}

MarkedMetricGraph marked_rose(const Automorphism& phi,
                              const std::vector<Rat>& lengths) {
  if (static_cast<int>(lengths.size()) != phi.rank)
    fail(errc::invalid, "one length per basis letter");
  invert(phi);  // throws NotInvertible unless phi is an automorphism
  std::vector<MetricEdge> edges;
  for (int i = 0; i < phi.rank; ++i)
    edges.push_back({"e" + std::to_string(i + 1), 0, 0, lengths[static_cast<size_t>(i)]});
  std::vector<std::vector<int>> marking;
  for (const Word& image : phi.images) {
    std::vector<int> loop;
    for (Letter l : image.letters()) loop.push_back(l);
    marking.push_back(loop);
  }
  return metric_graph_from_parts(phi.rank, 1, 0, edges, marking);
}

MarkedMetricGraph scale(const MarkedMetricGraph& t, const Rat& c) {
  if (c <= 0) fail(errc::invalid, "scale factor must be positive");
  std::vector<MetricEdge> edges = t.edges();
  for (MetricEdge& e : edges) e.length *= c;
  std::vector<std::vector<int>> marking;
  for (int x = 1; x <= t.rank(); ++x) marking.push_back(t.marking(x));
  return metric_graph_from_parts(t.rank(), t.vertex_count(), t.base(), edges,
                                 marking);
}

Rat translation_length(const MarkedMetricGraph& t, const Word& g) {
  if (g.rank() != t.rank()) fail(errc::invalid, "rank mismatch");
  std::vector<int> path;
  for (Letter l : g.letters()) {
    const std::vector<int>& loop = t.marking(std::abs(l));
    if (l > 0)
      path.insert(path.end(), loop.begin(), loop.end());
    else
      for (auto it = loop.rbegin(); it != loop.rend(); ++it) path.push_back(-*it);
  }
  path = reduce_path(path);
  size_t lo = 0, hi = path.size();
  while (hi - lo >= 2 && path[lo] == -path[hi - 1]) {
    ++lo;
    --hi;
  }
  // Count edge crossings first so the exact sum needs one multiply per edge
  // rather than one addition per path step.
  std::vector<long> crossings(t.edges().size(), 0);
  for (size_t i = lo; i < hi; ++i)
    ++crossings[static_cast<size_t>(std::abs(path[i]) - 1)];
  Rat total = 0;
  for (size_t e = 0; e < crossings.size(); ++e)
    if (crossings[e]) total += Rat(crossings[e]) * t.edges()[e].length;
  return total;
}

bool spectra_agree(const MarkedMetricGraph& t, const MarkedMetricGraph& u,
                   const std::vector<Word>& sigma, const Rat& tol) {
  if (t.rank() != u.rank()) fail(errc::invalid, "different bases");
  if (tol < 0) fail(errc::invalid, "tolerance must be nonnegative");
  for (const Word& g : sigma)
    if (rat_abs(translation_length(t, g) - translation_length(u, g)) > tol)
      return false;
  return true;
}

}  // namespace specrig
