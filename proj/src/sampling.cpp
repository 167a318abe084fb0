#include "specrig/sampling.hpp"

#include <utility>

#include "specrig/error.hpp"

namespace specrig {

namespace {

// Letters in index order a, A, b, B, ...
Letter letter_at(int rank, unsigned long idx) {
  int k = static_cast<int>(idx / 2) + 1;
  (void)rank;
  return idx % 2 == 0 ? k : -k;
}

}  // namespace

Word random_reduced_word(Rng& rng, int rank, int len) {
  if (rank < 1) fail(errc::invalid, "rank must be positive");
  if (len < 0) fail(errc::invalid, "negative length");
  std::vector<Letter> ls;
  ls.reserve(static_cast<size_t>(len));
  unsigned long alphabet = 2ul * static_cast<unsigned long>(rank);
  while (static_cast<int>(ls.size()) < len) {
    Letter next = letter_at(rank, rng() % alphabet);
    if (!ls.empty() && next == -ls.back()) continue;
    ls.push_back(next);
  }
  return Word(rank, std::move(ls));
}

CyclicWord random_cyclic_word(Rng& rng, int rank, int len) {
  if (len < 1) fail(errc::invalid, "cyclic word needs positive length");
  for (;;) {
    Word w = random_reduced_word(rng, rank, len);
    if (is_cyclically_reduced(w)) return CyclicWord(std::move(w));
  }
}

std::vector<Word> random_generators(Rng& rng, int rank, int count, int max_len) {
  if (count < 0) fail(errc::invalid, "negative generator count");
  if (max_len < 1) fail(errc::invalid, "generator length cap must be positive");
  std::vector<Word> out;
  out.reserve(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k) {
    int len = 1 + static_cast<int>(rng() % static_cast<unsigned long>(max_len));
    out.push_back(random_reduced_word(rng, rank, len));
  }
  return out;
}

Automorphism random_automorphism(Rng& rng, int rank, int moves) {
  if (moves < 0) fail(errc::invalid, "negative move count");
  Automorphism phi = identity_automorphism(rank);
  auto pick = [&] { return static_cast<size_t>(rng() % static_cast<unsigned long>(rank)); };
  for (int t = 0; t < moves; ++t) {
    size_t i = pick();
    unsigned long kind = rank == 1 ? 0 : rng() % 4;
    if (kind == 0) {
      phi.images[i] = inverse(phi.images[i]);
      continue;
    }
    size_t j = pick();
    while (j == i) j = pick();
    // Injectivity keeps distinct basis images off each other's inverses, so
    // the products below never collapse to the trivial word.
    if (kind == 1) {
      std::swap(phi.images[i], phi.images[j]);
    } else {
      Word factor = rng() % 2 ? phi.images[j] : inverse(phi.images[j]);
      phi.images[i] = kind == 2 ? concat(phi.images[i], factor)
                                : concat(factor, phi.images[i]);
    }
  }
  return phi;
}

Rat random_length(Rng& rng) {
  long den = 1 + static_cast<long>(rng() % 10);
  long num = 1 + static_cast<long>(rng() % static_cast<unsigned long>(10 * den));
  return make_rat(num, den);
}

MarkedMetricGraph random_marked_rose(Rng& rng, int rank, int max_moves) {
  if (max_moves < 0) fail(errc::invalid, "negative move count");
  int moves = static_cast<int>(rng() % static_cast<unsigned long>(max_moves + 1));
  Automorphism phi = random_automorphism(rng, rank, moves);
  std::vector<Rat> lengths;
  lengths.reserve(static_cast<size_t>(rank));
  for (int k = 0; k < rank; ++k) lengths.push_back(random_length(rng));
  return marked_rose(phi, lengths);
}

}  // namespace specrig
