#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "specrig/words.hpp"

namespace testutil {

// Both Nielsen conditions on the symmetrized set: no product of two drops
// below either factor, and no factor is swallowed whole by its neighbours.
// Together they cap cancellation at half of each factor, which is what the
// stripping oracle below relies on.
inline bool is_n_reduced(const std::vector<specrig::Word>& us) {
  using specrig::Word;
  std::vector<Word> s;
  for (const Word& u : us) {
    if (u.empty()) return false;
    s.push_back(u);
    s.push_back(inverse(u));
  }
  for (const Word& x : s)
    for (const Word& y : s) {
      Word xy = concat(x, y);
      if (xy.empty()) continue;
      if (xy.length() < x.length() || xy.length() < y.length()) return false;
    }
  for (const Word& x : s)
    for (const Word& y : s) {
      if (concat(x, y).empty()) continue;
      for (const Word& z : s) {
        if (concat(y, z).empty()) continue;
        if (concat(concat(x, y), z).length() <= x.length() - y.length() + z.length())
          return false;
      }
    }
  return true;
}

// Carry a generating tuple to a Nielsen-reduced one. Strict descent on
// (total length, tuple size) alone can stall where the triple condition
// still fails, so at each level we search the whole equal-length move
// plateau for either a verified tuple or a further drop.
inline std::vector<specrig::Word> nielsen_reduce(std::vector<specrig::Word> us) {
  using specrig::Word;
  auto norm = [](std::vector<Word> v) {
    std::vector<Word> out;
    for (Word& w : v) {
      if (w.empty()) continue;
      Word wi = inverse(w);
      out.push_back(shortlex_less(wi, w) ? wi : w);
    }
    std::sort(out.begin(), out.end(),
              [](const Word& a, const Word& b) { return shortlex_less(a, b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  auto key = [](const std::vector<Word>& v) {
    long t = 0;
    for (const Word& w : v) t += w.length();
    return std::pair<long, size_t>(t, v.size());
  };
  auto encode = [](const std::vector<Word>& v) {
    std::string k;
    for (const Word& w : v) {
      for (specrig::Letter l : w.letters()) k.push_back(static_cast<char>(l + 64));
      k.push_back('|');
    }
    return k;
  };
  us = norm(us);
  for (;;) {
    std::set<std::string> seen{encode(us)};
    std::vector<std::vector<Word>> queue{us};
    std::vector<Word> dropped;
    while (!queue.empty() && dropped.empty()) {
      std::vector<Word> cur = std::move(queue.back());
      queue.pop_back();
      if (is_n_reduced(cur)) return cur;
      for (size_t i = 0; i < cur.size() && dropped.empty(); ++i)
        for (size_t j = 0; j < cur.size() && dropped.empty(); ++j) {
          if (i == j) continue;
          for (int eps : {1, -1})
            for (int side : {0, 1}) {
              Word f = eps > 0 ? cur[j] : inverse(cur[j]);
              std::vector<Word> next = cur;
              next[i] = side == 0 ? concat(cur[i], f) : concat(f, cur[i]);
              next = norm(next);
              if (key(next) < key(us)) {
                dropped = std::move(next);
                break;
              }
              if (key(next) == key(us) && seen.size() < 20000 &&
                  seen.insert(encode(next)).second)
                queue.push_back(std::move(next));
            }
        }
    }
    if (dropped.empty()) return us;
    us = std::move(dropped);
  }
}

// Membership via stripping over a Nielsen-reduced tuple. The leading factor
// of a member never cancels more than half of itself, so the true
// factorization is reachable through non-increasing strips; a visited set
// makes the plateau search terminate.
inline bool strip_member(const std::vector<specrig::Word>& us, const specrig::Word& w) {
  if (w.empty()) return true;
  std::set<std::vector<specrig::Letter>> visited;
  std::vector<specrig::Word> stack{w};
  visited.insert(w.letters());
  while (!stack.empty()) {
    specrig::Word cur = stack.back();
    stack.pop_back();
    for (const specrig::Word& u : us)
      for (const specrig::Word& s : {u, inverse(u)}) {
        specrig::Word rest = concat(inverse(s), cur);
        if (rest.empty()) return true;
        if (rest.length() > cur.length()) continue;
        if (visited.insert(rest.letters()).second) stack.push_back(rest);
      }
  }
  return false;
}

inline std::vector<specrig::Letter> random_letters(std::mt19937_64& rng, int rank,
                                                   int len) {
  std::uniform_int_distribution<int> d(1, rank);
  std::bernoulli_distribution sign(0.5);
  std::vector<specrig::Letter> v;
  for (int i = 0; i < len; ++i) {
    int k = d(rng);
    v.push_back(sign(rng) ? k : -k);
  }
  return v;
}

inline specrig::Word random_reduced(std::mt19937_64& rng, int rank, int len) {
  std::uniform_int_distribution<int> d(1, 2 * rank);
  std::vector<specrig::Letter> v;
  while (static_cast<int>(v.size()) < len) {
    int raw = d(rng);
    specrig::Letter l = raw <= rank ? raw : -(raw - rank);
    if (!v.empty() && v.back() == -l) continue;
    v.push_back(l);
  }
  return specrig::Word(rank, v);
}

// Nonempty, cyclically reduced.
inline specrig::Word random_cyclic_core(std::mt19937_64& rng, int rank, int len) {
  for (;;) {
    specrig::Word w = random_reduced(rng, rank, len);
    if (!w.empty() && is_cyclically_reduced(w)) return w;
  }
}

inline std::vector<specrig::Word> random_generators(std::mt19937_64& rng, int rank,
                                                    int count, int max_len) {
  std::uniform_int_distribution<int> n(1, max_len);
  std::vector<specrig::Word> gens;
  for (int i = 0; i < count; ++i) gens.push_back(random_reduced(rng, rank, n(rng)));
  return gens;
}

// Identity tweaked by a few elementary moves: always an automorphism.
inline specrig::Automorphism random_nielsen_automorphism(std::mt19937_64& rng,
                                                         int rank, int moves) {
  using specrig::Word;
  specrig::Automorphism a = specrig::identity_automorphism(rank);
  std::uniform_int_distribution<int> pick(0, rank - 1);
  std::uniform_int_distribution<int> kind(0, 2);
  std::bernoulli_distribution flip(0.5);
  for (int m = 0; m < moves; ++m) {
    int i = pick(rng);
    switch (kind(rng)) {
      case 0:
        a.images[static_cast<size_t>(i)] = inverse(a.images[static_cast<size_t>(i)]);
        break;
      case 1: {
        int j = pick(rng);
        std::swap(a.images[static_cast<size_t>(i)], a.images[static_cast<size_t>(j)]);
        break;
      }
      default: {
        int j = pick(rng);
        if (j == i) break;
        Word f = a.images[static_cast<size_t>(j)];
        if (flip(rng)) f = inverse(f);
        a.images[static_cast<size_t>(i)] =
            concat(a.images[static_cast<size_t>(i)], f);
        break;
      }
    }
  }
  return a;
}

}  // namespace testutil
