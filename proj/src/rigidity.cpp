#include "specrig/rigidity.hpp"

#include <algorithm>
#include <random>
#include <utility>

#include "specrig/error.hpp"

namespace specrig {

namespace {

void validate_family(const WitnessFamily& family) {
  int rk = family.u.rank();
  if (family.u.empty() || family.r.empty())
    fail(errc::invalid, "witness family needs nonempty words");
  if (family.r.rank() != rk || family.alpha.rank() != rk ||
      family.beta.rank() != rk || family.gamma.rank() != rk ||
      family.delta.rank() != rk || family.tail.rank() != rk)
    fail(errc::invalid, "rank mismatch in witness family");
}

// Raw spelling of tail * w_i, no reduction. Junction safety is the caller's
// claim; cyclically_clean is the arbiter.
std::vector<Letter> witness_letters(const WitnessFamily& family, long i,
                                    bool with_tail) {
  const std::vector<Letter>&u = family.u.letters(), &r = family.r.letters();
  std::vector<Letter> ui;
  ui.reserve(static_cast<size_t>(i) * u.size());
  for (long k = 0; k < i; ++k) ui.insert(ui.end(), u.begin(), u.end());

  std::vector<Letter> out;
  auto fwd = [&out](const std::vector<Letter>& ls) {
    out.insert(out.end(), ls.begin(), ls.end());
  };
  auto bwd = [&out](const std::vector<Letter>& ls) {
    for (auto it = ls.rbegin(); it != ls.rend(); ++it) out.push_back(-*it);
  };
  if (with_tail) fwd(family.tail.letters());
  fwd(family.alpha.letters());
  fwd(ui);
  fwd(family.beta.letters());
  fwd(r);
  bwd(family.beta.letters());
  bwd(ui);
  bwd(family.alpha.letters());
  fwd(family.gamma.letters());
  fwd(ui);
  fwd(family.delta.letters());
  fwd(r);
  bwd(family.delta.letters());
  bwd(ui);
  bwd(family.gamma.letters());
  return out;
}

// Nonempty, freely reduced as spelled, and reduced across the wraparound.
bool cyclically_clean(const std::vector<Letter>& ls) {
  if (ls.empty()) return false;
  for (size_t j = 0; j + 1 < ls.size(); ++j)
    if (ls[j + 1] == -ls[j]) return false;
  return ls.back() != -ls.front();
}

WitnessFamily search_connectors(const CyclicWord& u, const CyclicWord& r,
                                const Word& tail) {
  if (u.empty() || r.empty())
    fail(errc::invalid, "witness family needs nonempty words");
  if (r.rank() != u.rank() || tail.rank() != u.rank())
    fail(errc::invalid, "rank mismatch in witness family");
  // The junction letters at i = 1 are the junction letters at every i, so
  // one clean concatenation certifies the whole family.
  std::vector<Word> cands = reduced_words_up_to(u.rank(), 2);
  WitnessFamily family{u, r, cands[0], cands[0], cands[0], cands[0], tail};
  for (const Word& a : cands) {
    family.alpha = a;
    for (const Word& b : cands) {
      family.beta = b;
      for (const Word& g : cands) {
        family.gamma = g;
        for (const Word& d : cands) {
          family.delta = d;
          if (cyclically_clean(witness_letters(family, 1, true))) return family;
        }
      }
    }
  }
  fail(errc::search_exhausted, "no connector tuple of length <= 2 works");
}

CyclicWord build_witness(const WitnessFamily& family, long i, bool with_tail) {
  validate_family(family);
  if (i < 1) fail(errc::invalid, "witness index must be positive");
  std::vector<Letter> ls = witness_letters(family, i, with_tail);
  if (!cyclically_clean(ls)) fail(errc::invalid, "invalid connectors");
  return CyclicWord(Word(family.u.rank(), std::move(ls)));
}

}  // namespace

WitnessFamily find_connectors(const CyclicWord& u, const CyclicWord& r) {
  return search_connectors(u, r, Word(u.rank()));
}

WitnessFamily find_connectors(const CyclicWord& u, const CyclicWord& r,
                              const Word& tail) {
  return search_connectors(u, r, tail);
}

CyclicWord make_witness(const WitnessFamily& family, long i) {
  return build_witness(family, i, false);
}

CyclicWord make_coset_witness(const WitnessFamily& family, long i) {
  return build_witness(family, i, true);
}

std::vector<ConvergenceRow> convergence_report(
    const WitnessFamily& family, int window, const std::vector<long>& indices,
    const std::vector<MarkedMetricGraph>& trees) {
  validate_family(family);
  if (window < 1) fail(errc::invalid, "window must be positive");
  if (trees.empty()) fail(errc::invalid, "need at least one tree");
  for (const MarkedMetricGraph& t : trees)
    if (t.rank() != family.u.rank()) fail(errc::invalid, "tree rank mismatch");

  FrequencyVector base = frequency_vector(family.u, window);
  Word u_word = family.u.to_word();
  bool coset = !family.tail.empty();
  std::vector<ConvergenceRow> rows;
  rows.reserve(indices.size());
  for (long i : indices) {
    CyclicWord w = coset ? make_coset_witness(family, i) : make_witness(family, i);
    ConvergenceRow row;
    row.i = i;
    row.distance = current_distance(frequency_vector(w, window), base);
    row.ratio = Rat(family.u.length()) / w.length();
    Word w_word = w.to_word();
    for (const MarkedMetricGraph& t : trees)
      row.gaps.push_back(rat_abs(row.ratio * translation_length(t, w_word) -
                                 translation_length(t, u_word)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Distinguisher rigidity_distinguisher(const MarkedMetricGraph& first,
                                     const MarkedMetricGraph& second,
                                     const CyclicWord& r, long index_limit,
                                     int search_length) {
  if (r.empty()) fail(errc::invalid, "normal generator must be nontrivial");
  if (first.rank() != second.rank() || first.rank() != r.rank())
    fail(errc::invalid, "rank mismatch between trees and word");
  if (index_limit < 1 || search_length < 1)
    fail(errc::invalid, "search limits must be positive");

  Distinguisher out{false,  Word(r.rank()), 0, CyclicWord(r.rank()),
                    Rat(0), Rat(0),         index_limit,
                    search_length};
  for (const Word& u : reduced_words_up_to(r.rank(), search_length)) {
    if (u.empty() || !is_cyclically_reduced(u)) continue;
    if (translation_length(first, u) == translation_length(second, u)) continue;
    // First separated base word is binding; its family almost always
    // separates at i = 1 since witness lengths are affine in i.
    out.u = u;
    WitnessFamily family = find_connectors(CyclicWord(u), r);
    for (long i = 1; i <= index_limit; ++i) {
      CyclicWord w = make_witness(family, i);
      Rat a = translation_length(first, w.to_word());
      Rat b = translation_length(second, w.to_word());
      if (a != b) {
        out.found = true;
        out.index = i;
        out.witness = w;
        out.length_first = a;
        out.length_second = b;
        return out;
      }
    }
    return out;
  }
  return out;
}

PropertyWCertificate propw_certificate(const std::vector<CosetSpec>& cosets,
                                       const GraphMap& f,
                                       const CertificateLimits& limits) {
  std::vector<BasedGraph> targets;
  targets.reserve(cosets.size());
  for (const CosetSpec& c : cosets) {
    if (c.tail.rank() != f.rank) fail(errc::invalid, "coset tail rank mismatch");
    CoreGraph core = fold(c.generators, f.rank);
    if (index(core)) fail(errc::finite_index, "coset subgroup has finite index");
    targets.push_back(with_basepoint(core, c.tail));
  }

  PropertyWCertificate cert{Word(f.rank), Automorphism{f.rank, {}}, 0, f, 0,
                            EscapeReport{}, 0, {}};
  cert.crossing = crossing_power(f, limits.crossing_limit);
  GraphMap big{f.rank, {}};
  for (int x = 1; x <= f.rank; ++x)
    big.images.push_back(iterate_edge(f, x, cert.crossing).path);

  if (targets.empty()) {
    cert.escape.window = limits.window;
    cert.escape.m.assign(static_cast<size_t>(f.rank), {});
  } else {
    cert.escape = escape_power(big, targets, limits.window, limits.depth);
  }

  // z grows until it contains the escaping image of every edge, so any long
  // z run would read a path every cover has already lost.
  for (int e = 1; e <= f.rank; ++e)
    cert.exponent = std::max(
        cert.exponent, build_z(big, 1, e, cert.escape.overall, limits.build_limit).n);
  for (int x = 1; x <= f.rank; ++x)
    cert.phi.images.push_back(
        iterate_edge(big, x, static_cast<int>(cert.exponent)).path);
  cert.z = cert.phi.images[0];

  // In the new basis z is the first letter, where the doubled linear
  // automaton bound covers every wrapping run.
  Automorphism inv = invert(cert.phi);
  Word z_base(f.rank, {1});
  for (const CosetSpec& c : cosets) {
    CoreGraph rebased = rebase(c.generators, cert.phi);
    std::optional<long> mi =
        coset_power_bound(rebased, inv.apply(c.tail), z_base);
    if (!mi) fail(errc::unbounded, "z power runs unbounded over a coset");
    cert.coset_bounds.push_back(*mi);
    cert.bound = std::max(cert.bound, *mi);
  }
  return cert;
}

WCheckReport check_property_w(const std::vector<CosetSpec>& cosets,
                              const PropertyWCertificate& certificate,
                              int samples, int max_len, unsigned long seed) {
  if (samples < 0 || max_len < 1) fail(errc::invalid, "bad sampling parameters");
  const Automorphism& phi = certificate.phi;
  if (phi.rank < 1 || certificate.z.empty() || certificate.bound < 0)
    fail(errc::invalid, "malformed certificate");
  if (std::find(phi.images.begin(), phi.images.end(), certificate.z) ==
      phi.images.end())
    fail(errc::invalid, "certificate z must be a basis image");

  Automorphism inv = invert(phi);
  CyclicWord z(inv.apply(certificate.z));
  WCheckReport report;
  std::mt19937_64 rng(seed);
  for (size_t ci = 0; ci < cosets.size(); ++ci) {
    const CosetSpec& c = cosets[ci];
    if (c.tail.rank() != phi.rank) fail(errc::invalid, "coset tail rank mismatch");
    std::vector<Word> gens;
    for (const Word& g : c.generators) {
      if (g.rank() != phi.rank) fail(errc::invalid, "generator rank mismatch");
      Word gb = inv.apply(g);
      if (!gb.empty()) gens.push_back(gb);
    }
    Word tail = inv.apply(c.tail);
    for (int s = 0; s < samples; ++s) {
      Word h(phi.rank);
      if (!gens.empty()) {
        long steps = 1 + static_cast<long>(rng() % (2ul * static_cast<unsigned long>(max_len)));
        for (long t = 0; t < steps; ++t) {
          const Word& g = gens[rng() % gens.size()];
          Word next = concat(h, rng() & 1 ? g : inverse(g));
          if (next.length() > max_len) break;
          h = std::move(next);
        }
      }
      CyclicWord rep(concat(tail, h));
      if (rep.empty()) continue;
      long run = max_power_run(rep, z);
      if (run > certificate.bound) {
        report.ok = false;
        report.violations.push_back({static_cast<int>(ci), h, run});
      }
    }
  }
  return report;
}

}  // namespace specrig
