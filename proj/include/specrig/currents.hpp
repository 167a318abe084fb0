#pragma once

#include <map>
#include <vector>

#include "specrig/metric.hpp"
#include "specrig/rat.hpp"
#include "specrig/words.hpp"

namespace specrig {

class FrequencyVector;

FrequencyVector frequency_vector(const CyclicWord& g, int window);

struct ShortlexKeyLess {
  bool operator()(const std::vector<Letter>& a, const std::vector<Letter>& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return letter_order(a[i]) < letter_order(b[i]);
    return false;
  }
};

using FrequencyTable = std::map<std::vector<Letter>, Rat, ShortlexKeyLess>;

// Normalized cylinder frequencies of a nonempty cyclic word: for each
// reduced window v with 1 <= |v| <= window, the number of cyclic positions
// reading v or v^-1 forwards (wrapping as needed), divided by the word
// length. Keys are one representative per {v, v^-1} class, the shortlex
// smaller one; only nonzero entries are stored.
class FrequencyVector {
 public:
  int rank() const { return rank_; }
  int window() const { return window_; }
  long source_length() const { return source_length_; }
  const FrequencyTable& table() const { return table_; }

  // Entry of the class of v, zero when v never occurs. v must be reduced
  // with 1 <= |v| <= window.
  Rat at(const Word& v) const;

  bool operator==(const FrequencyVector& o) const {
    return rank_ == o.rank_ && window_ == o.window_ && table_ == o.table_;
  }
  bool operator!=(const FrequencyVector& o) const { return !(*this == o); }

 private:
  FrequencyVector(int rank, int window, long source_length, FrequencyTable table);
  friend FrequencyVector frequency_vector(const CyclicWord&, int);

  int rank_, window_;
  long source_length_;
  FrequencyTable table_;
};

// Sup over all cylinder classes of the entry difference. Demands equal rank
// and equal window; missing keys count as zero.
Rat current_distance(const FrequencyVector& u, const FrequencyVector& w);

// The length pairing of a tree with a counting current is the translation
// length of the underlying word; this is the only value of the intersection
// form the computations need.
Rat pair_with_tree(const MarkedMetricGraph& t, const Word& g);

}  // namespace specrig
