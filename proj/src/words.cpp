#include "specrig/words.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <queue>
#include <set>
#include <unordered_set>

#include "specrig/error.hpp"

namespace specrig {

namespace {

void check_rank(int rank) {
  if (rank < 1 || rank > kMaxRank)
    fail(errc::invalid, "rank must be in [1, 26], got " + std::to_string(rank));
}

void check_letters(int rank, const std::vector<Letter>& ls) {
  for (Letter l : ls)
    if (l == 0 || l > rank || l < -rank)
      fail(errc::invalid, "letter out of range for rank " + std::to_string(rank));
}

void check_same_rank(const Word& a, const Word& b) {
  if (a.rank() != b.rank()) fail(errc::invalid, "rank mismatch between words");
}

bool lex_less(const std::vector<Letter>& a, const std::vector<Letter>& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    int oa = letter_order(a[i]), ob = letter_order(b[i]);
    if (oa != ob) return oa < ob;
  }
  return a.size() < b.size();
}

}  // namespace

char letter_char(Letter l) {
  if (l == 0 || l > kMaxRank || l < -kMaxRank)
    fail(errc::invalid, "letter out of range");
  return l > 0 ? static_cast<char>('a' + l - 1) : static_cast<char>('A' - l - 1);
}

Letter letter_from_char(char c, int rank) {
  if (c >= 'a' && c < 'a' + rank) return c - 'a' + 1;
  if (c >= 'A' && c < 'A' + rank) return -(c - 'A' + 1);
  fail(errc::parse, std::string("letter '") + c + "' is not valid at rank " +
                        std::to_string(rank));
}

std::vector<Letter> free_reduce(std::vector<Letter> raw) {
  std::vector<Letter> out;
  out.reserve(raw.size());
  for (Letter l : raw) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word::Word(int rank) : rank_(rank) { check_rank(rank); }

Word::Word(int rank, std::vector<Letter> letters) : rank_(rank) {
  check_rank(rank);
  check_letters(rank, letters);
  ls_ = free_reduce(std::move(letters));
}

Word parse_word(const std::string& text, int rank) {
  check_rank(rank);
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s.push_back(c);
  if (s == "1" || s.empty()) return Word(rank);
  std::vector<Letter> ls;
  ls.reserve(s.size());
  for (char c : s) ls.push_back(letter_from_char(c, rank));
  return Word(rank, std::move(ls));
}

std::string format_word(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  s.reserve(w.letters().size());
  for (Letter l : w.letters()) s.push_back(letter_char(l));
  return s;
}

Word inverse(const Word& w) {
  std::vector<Letter> ls(w.letters().rbegin(), w.letters().rend());
  for (Letter& l : ls) l = -l;
  return Word(w.rank(), std::move(ls));
}

Word concat(const Word& a, const Word& b) {
  check_same_rank(a, b);
  std::vector<Letter> ls = a.letters();
  ls.insert(ls.end(), b.letters().begin(), b.letters().end());
  return Word(a.rank(), std::move(ls));
}

Word conjugate(const Word& g, const Word& h) {
  return concat(concat(h, g), inverse(h));
}

Word power(const Word& w, long k) {
  Word base = k < 0 ? inverse(w) : w;
  long n = std::labs(k);
  std::vector<Letter> ls;
  ls.reserve(base.letters().size() * static_cast<size_t>(n));
  for (long i = 0; i < n; ++i)
    ls.insert(ls.end(), base.letters().begin(), base.letters().end());
  return Word(w.rank(), std::move(ls));
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return lex_less(a.letters(), b.letters());
}

bool is_cyclically_reduced(const Word& w) {
  return w.empty() || w.letters().front() != -w.letters().back();
}

CyclicWord::CyclicWord(int rank) : rank_(rank) { check_rank(rank); }

CyclicWord::CyclicWord(const Word& w) {
  auto [c, conj] = cyclic_reduce(w);
  rank_ = c.rank_;
  ls_ = std::move(c.ls_);
}

Letter CyclicWord::at_mod(long i) const {
  long n = static_cast<long>(ls_.size());
  long j = i % n;
  if (j < 0) j += n;
  return ls_[static_cast<size_t>(j)];
}

CyclicWord CyclicWord::inverse_cyclic() const {
  return CyclicWord(inverse(to_word()));
}

std::vector<Letter> CyclicWord::canonical_rotation() const {
  size_t n = ls_.size();
  if (n == 0) return {};
  std::vector<Letter> best = ls_, cur = ls_;
  for (size_t r = 1; r < n; ++r) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (lex_less(cur, best)) best = cur;
  }
  return best;
}

bool CyclicWord::operator==(const CyclicWord& o) const {
  return rank_ == o.rank_ && ls_.size() == o.ls_.size() &&
         canonical_rotation() == o.canonical_rotation();
}

std::pair<CyclicWord, Word> cyclic_reduce(const Word& w) {
  const auto& ls = w.letters();
  size_t lo = 0, hi = ls.size();
  while (hi - lo >= 2 && ls[lo] == -ls[hi - 1]) {
    ++lo;
    --hi;
  }
  CyclicWord core(w.rank());
  core.ls_.assign(ls.begin() + lo, ls.begin() + hi);
  Word conj(w.rank(), std::vector<Letter>(ls.begin(), ls.begin() + lo));
  return {core, conj};
}

std::string format_cyclic(const CyclicWord& w) { return format_word(w.to_word()); }

long count_occurrences(const CyclicWord& g, const Word& v) {
  if (g.empty()) fail(errc::invalid, "occurrence count over a trivial cyclic word");
  if (v.empty()) fail(errc::invalid, "occurrence count of the empty word");
  if (g.rank() != v.rank()) fail(errc::invalid, "rank mismatch between words");
  const long n = g.length(), m = v.length();
  Word vi = inverse(v);
  long count = 0;
  for (long p = 0; p < n; ++p) {
    bool fwd = true, bwd = true;
    for (long t = 0; t < m && (fwd || bwd); ++t) {
      Letter got = g.at_mod(p + t);
      if (fwd && got != v.at(static_cast<int>(t))) fwd = false;
      if (bwd && got != vi.at(static_cast<int>(t))) bwd = false;
    }
    if (fwd || bwd) ++count;
  }
  return count;
}

namespace {

// Longest stored-spelling run of z readable from position p of the doubled
// word, capped at n total letters.
long stored_run(const std::vector<Letter>& w2, long n, long p,
                const std::vector<Letter>& z) {
  const long m = static_cast<long>(z.size());
  long k = 0;
  while ((k + 1) * m <= n) {
    bool ok = true;
    for (long t = 0; t < m; ++t)
      if (w2[static_cast<size_t>(p + k * m + t)] != z[static_cast<size_t>(t)]) {
        ok = false;
        break;
      }
    if (!ok) break;
    ++k;
  }
  return k;
}

long best_run_over_rotations(const CyclicWord& w, const CyclicWord& z) {
  const long n = w.length(), m = z.length();
  if (m == 0 || m > n) return 0;
  std::vector<Letter> w2 = w.letters();
  w2.insert(w2.end(), w.letters().begin(), w.letters().end());
  std::vector<Letter> rot = z.letters();
  long best = 0;
  for (long r = 0; r < m; ++r) {
    if (r > 0) std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    for (long p = 0; p < n; ++p) best = std::max(best, stored_run(w2, n, p, rot));
  }
  return best;
}

}  // namespace

long max_power_run(const CyclicWord& w, const CyclicWord& z) {
  if (z.empty()) fail(errc::invalid, "power run of the trivial word");
  if (w.rank() != z.rank()) fail(errc::invalid, "rank mismatch between words");
  if (w.empty()) return 0;
  long fwd = best_run_over_rotations(w, z);
  long bwd = best_run_over_rotations(w, z.inverse_cyclic());
  return std::max(fwd, bwd);
}

std::pair<CyclicWord, int> is_proper_power(const CyclicWord& w) {
  if (w.empty()) fail(errc::invalid, "power decomposition of the trivial word");
  const int n = w.length();
  const auto& ls = w.letters();
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (int i = d; i < n && periodic; ++i)
      if (ls[static_cast<size_t>(i)] != ls[static_cast<size_t>(i - d)]) periodic = false;
    if (periodic) {
      Word root(w.rank(), std::vector<Letter>(ls.begin(), ls.begin() + d));
      return {CyclicWord(root), n / d};
    }
  }
  return {w, 1};  // unreachable: d == n always matches
}

Word Automorphism::apply(const Word& w) const {
  std::vector<Letter> out;
  for (Letter l : w.letters()) {
    const Word& img = images[static_cast<size_t>(std::abs(l) - 1)];
    if (l > 0)
      out.insert(out.end(), img.letters().begin(), img.letters().end());
    else {
      Word inv = inverse(img);
      out.insert(out.end(), inv.letters().begin(), inv.letters().end());
    }
  }
  return Word(rank, std::move(out));
}

Automorphism identity_automorphism(int rank) {
  check_rank(rank);
  Automorphism id;
  id.rank = rank;
  for (int k = 1; k <= rank; ++k) id.images.push_back(Word(rank, {k}));
  return id;
}

Automorphism compose(const Automorphism& f, const Automorphism& g) {
  if (f.rank != g.rank) fail(errc::invalid, "rank mismatch between maps");
  Automorphism h;
  h.rank = f.rank;
  for (const Word& img : g.images) h.images.push_back(f.apply(img));
  return h;
}

Automorphism automorphism_power(const Automorphism& f, int n) {
  if (n < 0) fail(errc::invalid, "negative power of a substitution");
  Automorphism acc = identity_automorphism(f.rank);
  for (int i = 0; i < n; ++i) acc = compose(f, acc);
  return acc;
}

namespace {

using Tuple = std::vector<std::vector<Letter>>;

std::string tuple_key(const Tuple& t) {
  std::string s;
  for (const auto& w : t) {
    for (Letter l : w) {
      s.push_back(static_cast<char>(l + 64));
    }
    s.push_back(0);
  }
  return s;
}

long tuple_len(const Tuple& t) {
  long n = 0;
  for (const auto& w : t) n += static_cast<long>(w.size());
  return n;
}

struct Move {
  int kind;  // 0: u_i <- u_i u_j^eps, 1: u_i <- u_j^eps u_i, 2: u_i <- u_i^-1
  int i, j, eps;
};

Automorphism move_automorphism(int rank, const Move& m) {
  Automorphism a = identity_automorphism(rank);
  Word xi(rank, {m.i + 1});
  if (m.kind == 2) {
    a.images[static_cast<size_t>(m.i)] = inverse(xi);
  } else {
    Word xj(rank, {m.eps * (m.j + 1)});
    a.images[static_cast<size_t>(m.i)] =
        m.kind == 0 ? concat(xi, xj) : concat(xj, xi);
  }
  return a;
}

}  // namespace

Automorphism invert(const Automorphism& phi) {
  const int rank = phi.rank;
  check_rank(rank);
  if (static_cast<int>(phi.images.size()) != rank)
    fail(errc::invalid, "map must provide one image per basis letter");
  for (const Word& w : phi.images)
    if (w.rank() != rank) fail(errc::invalid, "rank mismatch in basis images");

  Tuple start;
  for (const Word& w : phi.images) start.push_back(w.letters());

  // Best-first descent by total length over Nielsen moves; moves never
  // increase total length, which suffices to reach a signed permutation of
  // the standard basis when the images form one.
  struct Node {
    long len;
    long id;
  };
  auto cmp = [](const Node& a, const Node& b) { return a.len > b.len; };
  std::priority_queue<Node, std::vector<Node>, decltype(cmp)> pq(cmp);
  std::vector<Tuple> states;
  std::vector<long> parent;
  std::vector<Move> via;
  std::unordered_set<std::string> seen;

  states.push_back(start);
  parent.push_back(-1);
  via.push_back({});
  seen.insert(tuple_key(start));
  pq.push({tuple_len(start), 0});

  const size_t budget = 500000;
  long goal = -1;

  auto is_goal = [&](const Tuple& t) {
    std::vector<bool> hit(static_cast<size_t>(rank), false);
    for (const auto& w : t) {
      if (w.size() != 1) return false;
      int k = std::abs(w[0]) - 1;
      if (hit[static_cast<size_t>(k)]) return false;
      hit[static_cast<size_t>(k)] = true;
    }
    return true;
  };

  while (!pq.empty() && goal < 0 && states.size() < budget) {
    long cur = pq.top().id;
    pq.pop();
    const Tuple t = states[static_cast<size_t>(cur)];
    if (is_goal(t)) {
      goal = cur;
      break;
    }
    long cur_len = tuple_len(t);
    std::vector<Move> moves;
    for (int i = 0; i < rank; ++i) {
      moves.push_back({2, i, 0, 0});
      for (int j = 0; j < rank; ++j) {
        if (i == j) continue;
        for (int eps : {1, -1}) {
          moves.push_back({0, i, j, eps});
          moves.push_back({1, i, j, eps});
        }
      }
    }
    for (const Move& m : moves) {
      Tuple nt = t;
      const auto& ui = t[static_cast<size_t>(m.i)];
      std::vector<Letter> repl;
      if (m.kind == 2) {
        repl.assign(ui.rbegin(), ui.rend());
        for (Letter& l : repl) l = -l;
      } else {
        std::vector<Letter> uj = t[static_cast<size_t>(m.j)];
        if (m.eps < 0) {
          std::reverse(uj.begin(), uj.end());
          for (Letter& l : uj) l = -l;
        }
        if (m.kind == 0) {
          repl = ui;
          repl.insert(repl.end(), uj.begin(), uj.end());
        } else {
          repl = uj;
          repl.insert(repl.end(), ui.begin(), ui.end());
        }
        repl = free_reduce(std::move(repl));
        if (repl.empty()) continue;  // would degenerate the tuple
      }
      nt[static_cast<size_t>(m.i)] = std::move(repl);
      if (tuple_len(nt) > cur_len) continue;
      std::string key = tuple_key(nt);
      if (!seen.insert(key).second) continue;
      states.push_back(nt);
      parent.push_back(cur);
      via.push_back(m);
      pq.push({tuple_len(nt), static_cast<long>(states.size()) - 1});
    }
  }

  if (goal < 0)
    fail(errc::not_invertible, "basis images do not reduce to a free basis");

  // phi composed with the applied moves equals the signed permutation rho,
  // so phi^-1 = (moves, in application order) composed with rho^-1.
  std::vector<Move> chain;
  for (long cur = goal; parent[static_cast<size_t>(cur)] >= 0;
       cur = parent[static_cast<size_t>(cur)])
    chain.push_back(via[static_cast<size_t>(cur)]);
  std::reverse(chain.begin(), chain.end());

  const Tuple& final_tuple = states[static_cast<size_t>(goal)];
  Automorphism rho_inv;
  rho_inv.rank = rank;
  rho_inv.images.assign(static_cast<size_t>(rank), Word(rank));
  for (int i = 0; i < rank; ++i) {
    Letter l = final_tuple[static_cast<size_t>(i)][0];
    // rho: x_{i+1} -> l, hence rho^-1: |l| -> sign(l) * (i+1)
    int target = std::abs(l) - 1;
    rho_inv.images[static_cast<size_t>(target)] =
        Word(rank, {l > 0 ? i + 1 : -(i + 1)});
  }

  Automorphism result = rho_inv;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it)
    result = compose(move_automorphism(rank, *it), result);

  Automorphism check = compose(phi, result);
  for (int k = 0; k < rank; ++k)
    if (check.images[static_cast<size_t>(k)] != Word(rank, {k + 1}))
      fail(errc::not_invertible, "inversion self-check failed");
  return result;
}

std::vector<Word> reduced_words_up_to(int rank, int max_len) {
  check_rank(rank);
  std::vector<Word> out;
  out.push_back(Word(rank));
  std::vector<std::vector<Letter>> frontier = {{}};
  std::vector<Letter> alphabet;
  for (int k = 1; k <= rank; ++k) {
    alphabet.push_back(k);
    alphabet.push_back(-k);
  }
  std::sort(alphabet.begin(), alphabet.end(),
            [](Letter a, Letter b) { return letter_order(a) < letter_order(b); });
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::vector<Letter>> next;
    for (const auto& w : frontier)
      for (Letter l : alphabet) {
        if (!w.empty() && w.back() == -l) continue;
        auto e = w;
        e.push_back(l);
        out.push_back(Word(rank, e));
        next.push_back(std::move(e));
      }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace specrig
