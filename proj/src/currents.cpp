#include "specrig/currents.hpp"

#include <utility>

#include "specrig/error.hpp"

namespace specrig {

namespace {

constexpr int kMaxWindow = 8;  // table size grows like (2N-1)^L

std::vector<Letter> class_representative(const std::vector<Letter>& v) {
  std::vector<Letter> inv;
  for (auto it = v.rbegin(); it != v.rend(); ++it) inv.push_back(-*it);
  return ShortlexKeyLess{}(inv, v) ? inv : v;
}

}  // namespace

FrequencyVector::FrequencyVector(int rank, int window, long source_length,
                                 FrequencyTable table)
    : rank_(rank),
      window_(window),
      source_length_(source_length),
      table_(std::move(table)) {}

FrequencyVector frequency_vector(const CyclicWord& g, int window) {
  if (g.length() == 0) fail(errc::invalid, "empty cyclic word has no current");
  if (window < 1 || window > kMaxWindow) fail(errc::invalid, "window out of range");
  const std::vector<Letter>& ls = g.letters();
  long n = g.length();
  FrequencyTable counts;
  for (long p = 0; p < n; ++p)
    for (int len = 1; len <= window; ++len) {
      std::vector<Letter> w;
      for (int j = 0; j < len; ++j)
        w.push_back(ls[static_cast<size_t>((p + j) % n)]);
      counts[class_representative(w)] += 1;
    }
  for (auto& [key, value] : counts) value /= n;
  return FrequencyVector(g.rank(), window, n, std::move(counts));
}

Rat FrequencyVector::at(const Word& v) const {
  if (v.rank() != rank_) fail(errc::invalid, "basis mismatch");
  if (v.empty() || v.length() > window_)
    fail(errc::invalid, "cylinder length outside the window");
  auto it = table_.find(class_representative(v.letters()));
  return it == table_.end() ? Rat(0) : it->second;
}

Rat current_distance(const FrequencyVector& u, const FrequencyVector& w) {
  if (u.rank() != w.rank()) fail(errc::invalid, "basis mismatch");
  if (u.window() != w.window()) fail(errc::invalid, "window mismatch");
  Rat best = 0;
  auto consider = [&](const Rat& a, const Rat& b) {
    Rat d = rat_abs(a - b);
    if (d > best) best = d;
  };
  for (const auto& [key, value] : u.table()) {
    auto it = w.table().find(key);
    consider(value, it == w.table().end() ? Rat(0) : it->second);
  }
  for (const auto& [key, value] : w.table())
    if (u.table().find(key) == u.table().end()) consider(Rat(0), value);
  return best;
}

Rat pair_with_tree(const MarkedMetricGraph& t, const Word& g) {
  return translation_length(t, g);
}

}  // namespace specrig
