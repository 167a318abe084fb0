#pragma once

#include <random>
#include <vector>

#include "specrig/metric.hpp"
#include "specrig/rat.hpp"
#include "specrig/words.hpp"

namespace specrig {

// All randomness in the library flows through an explicitly seeded engine so
// every experiment is reproducible from its echoed seed.
using Rng = std::mt19937_64;

// Uniform over the 2N(2N-1)^(len-1) reduced words of exactly len letters.
Word random_reduced_word(Rng& rng, int rank, int len);

// Uniform over cyclically reduced words of exactly len letters.
CyclicWord random_cyclic_word(Rng& rng, int rank, int len);

// count generators, each of length uniform in 1..max_len.
std::vector<Word> random_generators(Rng& rng, int rank, int count, int max_len);

// Composition of exactly moves elementary Nielsen moves: inversions, swaps,
// and one-sided multiplications x_i by x_j, j != i.
Automorphism random_automorphism(Rng& rng, int rank, int moves);

// Uniform over the rational grid {p/q : q in 1..10, 1/10 <= p/q <= 10}.
Rat random_length(Rng& rng);

// Rose marked by a random automorphism of at most max_moves Nielsen moves,
// edge lengths drawn independently by random_length.
MarkedMetricGraph random_marked_rose(Rng& rng, int rank, int max_moves);

}  // namespace specrig
