#include "specrig/dynamics.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <vector>

#include "specrig/error.hpp"

namespace specrig {

namespace {

void check_map(const GraphMap& f) {
  if (f.rank < 1 || f.rank > kMaxRank) fail(errc::invalid, "rank out of range");
  if (static_cast<int>(f.images.size()) != f.rank)
    fail(errc::invalid, "one image per basis letter");
  for (const Word& w : f.images) {
    if (w.empty()) fail(errc::invalid, "edge image must be a nonempty path");
    if (w.rank() != f.rank) fail(errc::invalid, "image rank mismatch");
  }
}

void push_reduced(std::vector<Letter>& path, Letter x, bool& cancelled) {
  if (!path.empty() && path.back() == -x) {
    path.pop_back();
    cancelled = true;
  } else {
    path.push_back(x);
  }
}

// One substitution step on a reduced path.
std::vector<Letter> substitute(const GraphMap& f, const std::vector<Letter>& path,
                               bool& cancelled) {
  std::vector<Letter> next;
  for (Letter l : path) {
    const Word& img = f.images[static_cast<size_t>(std::abs(l) - 1)];
    const std::vector<Letter>& ls = img.letters();
    if (l > 0)
      for (Letter x : ls) push_reduced(next, x, cancelled);
    else
      for (auto it = ls.rbegin(); it != ls.rend(); ++it)
        push_reduced(next, -*it, cancelled);
  }
  return next;
}

// Hanging chains pruned away, then letter-regularity of what is left. A
// finite-index core is regular at every vertex, and nothing regular can
// carry the pruned chain, so this decides finiteness through the bridge.
bool represents_finite_index(const BasedGraph& bg) {
  const CoreGraph& g = bg.graph;
  int n = g.vertex_count();
  std::vector<int> deg(static_cast<size_t>(n), 0);
  auto edges = g.edges();
  for (const auto& e : edges) {
    deg[static_cast<size_t>(e[1])]++;
    deg[static_cast<size_t>(e[2])]++;
  }
  std::vector<bool> alive(static_cast<size_t>(n), true);
  std::vector<int> work;
  for (int v = 0; v < n; ++v)
    if (deg[static_cast<size_t>(v)] <= 1) work.push_back(v);
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    if (!alive[static_cast<size_t>(v)]) continue;
    alive[static_cast<size_t>(v)] = false;
    for (const auto& e : edges) {
      if (e[1] == v && alive[static_cast<size_t>(e[2])]) {
        if (--deg[static_cast<size_t>(e[2])] <= 1) work.push_back(e[2]);
      } else if (e[2] == v && alive[static_cast<size_t>(e[1])]) {
        if (--deg[static_cast<size_t>(e[1])] <= 1) work.push_back(e[1]);
      }
    }
  }
  bool any = false;
  for (int v = 0; v < n; ++v) {
    if (!alive[static_cast<size_t>(v)]) continue;
    any = true;
    for (int x = 1; x <= g.rank(); ++x) {
      int w = g.step(v, x);
      int u = g.step(v, -x);
      if (w < 0 || u < 0 || !alive[static_cast<size_t>(w)] ||
          !alive[static_cast<size_t>(u)])
        return false;
    }
  }
  return any;
}

}  // namespace

PathImage iterate_edge(const GraphMap& f, Letter e, int n) {
  check_map(f);
  if (e == 0 || std::abs(e) > f.rank) fail(errc::invalid, "no such edge");
  if (n < 0) fail(errc::invalid, "negative exponent");
  std::vector<Letter> path{e};
  bool cancelled = false;
  for (int step = 0; step < n; ++step) path = substitute(f, path, cancelled);
  return {Word(f.rank, path), cancelled};
}

bool is_train_track_up_to(const GraphMap& f, int n_max) {
  check_map(f);
  if (n_max < 1) fail(errc::invalid, "need a positive window");
  for (Letter e = 1; e <= f.rank; ++e)
    if (iterate_edge(f, e, n_max).cancelled) return false;
  return true;
}

bool is_automorphism(const GraphMap& f) {
  check_map(f);
  return index(fold(f.images, f.rank)) == 1;
}

int crossing_power(const GraphMap& f, int limit) {
  check_map(f);
  if (limit < 1) fail(errc::invalid, "need a positive limit");
  std::vector<std::vector<Letter>> paths;
  for (Letter e = 1; e <= f.rank; ++e) paths.push_back({e});
  bool cancelled = false;
  for (int p = 1; p <= limit; ++p) {
    bool all = true;
    for (auto& path : paths) {
      path = substitute(f, path, cancelled);
      if (path.size() > (1u << 20))
        fail(errc::search_exhausted, "image paths outgrew the search budget");
      std::vector<bool> hit(static_cast<size_t>(f.rank), false);
      for (Letter l : path) hit[static_cast<size_t>(std::abs(l) - 1)] = true;
      if (std::find(hit.begin(), hit.end(), false) != hit.end()) all = false;
    }
    if (all) return p;
  }
  fail(errc::search_exhausted, "no crossing power within the limit");
}

EscapeReport escape_power(const GraphMap& f, const std::vector<BasedGraph>& targets,
                          int window, long depth) {
  check_map(f);
  if (window < 1) fail(errc::invalid, "need a positive window");
  if (depth < 0) fail(errc::invalid, "negative depth");
  if (targets.empty()) fail(errc::invalid, "need at least one target");
  for (const BasedGraph& t : targets)
    if (represents_finite_index(t))
      fail(errc::finite_index, "finite-index target reads every path");

  EscapeReport report;
  report.window = window;
  for (Letter e = 1; e <= f.rank; ++e) {
    // paths[n] = f^n(e), grown on demand and shared across targets
    std::vector<Word> paths = {Word(f.rank, {e})};
    bool cancelled = false;
    auto path_at = [&](long n) -> const Word& {
      while (static_cast<long>(paths.size()) <= n) {
        std::vector<Letter> next =
            substitute(f, paths.back().letters(), cancelled);
        paths.push_back(Word(f.rank, next));
      }
      return paths[static_cast<size_t>(n)];
    };
    std::vector<long> row;
    for (const BasedGraph& t : targets) {
      long first_bad = -1, run_start = -1, found = -1;
      for (long n = 0; n <= depth + window; ++n) {
        if (reads_based(t, path_at(n))) {
          run_start = -1;
          continue;
        }
        if (first_bad < 0) first_bad = n;
        if (run_start < 0) run_start = n;
        if (n - run_start == window) {
          found = run_start;
          break;
        }
      }
      if (found < 0 || found > depth)
        fail(errc::depth_exhausted, "no confirmed escape within depth");
      if (found != first_bad) report.monotone = false;
      row.push_back(found);
      report.overall = std::max(report.overall, found);
    }
    report.m.push_back(row);
  }
  return report;
}

BuildZ build_z(const GraphMap& f, Letter seed, Letter e, long m, long limit) {
  check_map(f);
  if (seed == 0 || std::abs(seed) > f.rank) fail(errc::invalid, "no such seed");
  if (e == 0 || std::abs(e) > f.rank) fail(errc::invalid, "no such edge");
  if (m < 0) fail(errc::invalid, "negative exponent");
  if (limit < 0) fail(errc::invalid, "negative limit");
  if (!is_automorphism(f))
    fail(errc::not_invertible, "map is not an automorphism");
  Word needle = iterate_edge(f, e, static_cast<int>(m)).path;
  Word flipped = inverse(needle);
  std::vector<Letter> path{seed};
  bool cancelled = false;
  for (long n = 0; n <= limit; ++n) {
    if (n > 0) path = substitute(f, path, cancelled);
    bool hit = false;
    for (const Word* w : {&needle, &flipped}) {
      const auto& ns = w->letters();
      if (ns.empty() ||
          std::search(path.begin(), path.end(), ns.begin(), ns.end()) != path.end())
        hit = true;
    }
    if (hit) return {Word(f.rank, path), n};
  }
  fail(errc::search_exhausted, "segment not contained within the limit");
}

long quasiperiodicity_profile(const GraphMap& f, Letter e, int l, int depth) {
  check_map(f);
  if (e == 0 || std::abs(e) > f.rank) fail(errc::invalid, "no such edge");
  if (l < 0) fail(errc::invalid, "negative factor length");
  if (depth < 0) fail(errc::invalid, "negative depth");
  if (l == 0) return 0;
  std::vector<Letter> s = iterate_edge(f, e, depth).path.letters();
  long n = static_cast<long>(s.size());

  // For each factor, the minimal window length is forced by its first
  // occurrence, the largest gap between consecutive occurrences, and the
  // tail after its last occurrence.
  std::set<std::vector<Letter>> factors;
  for (long i = 0; i < n; ++i)
    for (long k = 1; k <= l && i + k <= n; ++k)
      factors.insert(std::vector<Letter>(s.begin() + i, s.begin() + i + k));
  long needed = 1;
  for (const std::vector<Letter>& fac : factors) {
    long flen = static_cast<long>(fac.size());
    std::vector<long> starts;
    for (long i = 0; i + flen <= n; ++i)
      if (std::equal(fac.begin(), fac.end(), s.begin() + i)) starts.push_back(i);
    needed = std::max(needed, starts.front() + flen);
    for (size_t j = 0; j + 1 < starts.size(); ++j)
      needed = std::max(needed, starts[j + 1] - starts[j] - 1 + flen);
    needed = std::max(needed, n - starts.back());
  }
  long answer = std::min(needed, n);
  if (n < 2 * answer)
    fail(errc::insufficient_depth, "segment too short to certify the window");
  return answer;
}

}  // namespace specrig
