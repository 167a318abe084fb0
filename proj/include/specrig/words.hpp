#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace specrig {

// Letters are nonzero ints: +k is the k-th basis letter, -k its inverse.
// Text form: a..z for letters 1..26, A..Z for their inverses, "1" for the
// empty word.
using Letter = int;

inline constexpr int kMaxRank = 26;

inline Letter inverse_letter(Letter l) { return -l; }
char letter_char(Letter l);
Letter letter_from_char(char c, int rank);

// Total order a < a^-1 < b < b^-1 < ...; shortlex comparisons build on it.
inline int letter_order(Letter l) {
  return l > 0 ? 2 * (l - 1) : 2 * (-l - 1) + 1;
}

std::vector<Letter> free_reduce(std::vector<Letter> raw);

// Freely reduced word over a fixed-rank basis. Reduction is eager: whatever
// letter sequence is passed in gets reduced in the constructor, and all
// operations keep results reduced.
class Word {
 public:
  explicit Word(int rank);
  Word(int rank, std::vector<Letter> letters);

  int rank() const { return rank_; }
  int length() const { return static_cast<int>(ls_.size()); }
  bool empty() const { return ls_.empty(); }
  const std::vector<Letter>& letters() const { return ls_; }
  Letter at(int i) const { return ls_[static_cast<size_t>(i)]; }

  bool operator==(const Word& o) const {
    return rank_ == o.rank_ && ls_ == o.ls_;
  }
  bool operator!=(const Word& o) const { return !(*this == o); }

 private:
  int rank_;
  std::vector<Letter> ls_;
};

Word parse_word(const std::string& text, int rank);
std::string format_word(const Word& w);

Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
// h g h^-1
Word conjugate(const Word& g, const Word& h);
Word power(const Word& w, long k);
bool shortlex_less(const Word& a, const Word& b);
bool is_cyclically_reduced(const Word& w);

// Cyclically reduced word. The spelling it was constructed with is kept;
// equality is up to rotation.
class CyclicWord {
 public:
  explicit CyclicWord(int rank);
  // Cyclically reduces w (conjugator dropped; see cyclic_reduce).
  explicit CyclicWord(const Word& w);

  int rank() const { return rank_; }
  int length() const { return static_cast<int>(ls_.size()); }
  bool empty() const { return ls_.empty(); }
  const std::vector<Letter>& letters() const { return ls_; }
  Letter at_mod(long i) const;
  Word to_word() const { return Word(rank_, ls_); }
  CyclicWord inverse_cyclic() const;

  std::vector<Letter> canonical_rotation() const;
  bool operator==(const CyclicWord& o) const;
  bool operator!=(const CyclicWord& o) const { return !(*this == o); }

 private:
  friend std::pair<CyclicWord, Word> cyclic_reduce(const Word& w);
  int rank_;
  std::vector<Letter> ls_;
};

// w = conjugator * core * conjugator^-1 with core cyclically reduced.
std::pair<CyclicWord, Word> cyclic_reduce(const Word& w);
std::string format_cyclic(const CyclicWord& w);

// Number of positions of the cycle of g from which v or v^-1 can be read
// (reading wraps around the cycle as often as needed). Requires g, v
// nontrivial. For g = h^k this automatically equals k times the count for h.
long count_occurrences(const CyclicWord& g, const Word& v);

// Largest |k| such that z^k embeds in w read cyclically, where a run may wrap
// around the cycle but traverses it at most once (k*|z| <= |w|). All
// rotations of z (and of z^-1) are scanned, so the result depends only on the
// conjugacy classes.
long max_power_run(const CyclicWord& w, const CyclicWord& z);

// (root, k) with k maximal such that w = root^k; k == 1 iff w is not a
// proper power. Requires w nontrivial.
std::pair<CyclicWord, int> is_proper_power(const CyclicWord& w);

// Basis images of an endomorphism of the rank-N free group. Most call sites
// require the images to form a basis; invert() verifies that by search.
struct Automorphism {
  int rank = 0;
  std::vector<Word> images;  // images[k] = image of letter k+1

  Word apply(const Word& w) const;
};

Automorphism identity_automorphism(int rank);
// f after g: (f*g)(x) = f(g(x))
Automorphism compose(const Automorphism& f, const Automorphism& g);
Automorphism automorphism_power(const Automorphism& f, int n);

// Inverse via Nielsen-move descent to the standard basis. Throws
// NotInvertible if the images do not form a basis (or the search budget is
// exhausted, which does not happen for genuine automorphisms of the sizes
// this library targets).
Automorphism invert(const Automorphism& phi);

// All freely reduced words of length <= max_len in shortlex order,
// including the empty word.
std::vector<Word> reduced_words_up_to(int rank, int max_len);

}  // namespace specrig
