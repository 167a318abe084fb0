#pragma once

#include <vector>

#include "specrig/currents.hpp"
#include "specrig/dynamics.hpp"
#include "specrig/metric.hpp"
#include "specrig/rat.hpp"
#include "specrig/stallings.hpp"
#include "specrig/words.hpp"

namespace specrig {

// One coset tail * <generators> of a finitely generated subgroup.
struct CosetSpec {
  Word tail;
  std::vector<Word> generators;
};

// Data for the witness words
//   w_i = alpha u^i beta r beta^-1 u^-i alpha^-1 gamma u^i delta r delta^-1 u^-i gamma^-1,
// products of two conjugates of r whose concatenation stays reduced at every
// junction, cyclically, for every i >= 1. A nonempty tail asks for
// tail * w_i to be cyclically reduced as spelled instead.
struct WitnessFamily {
  CyclicWord u, r;
  Word alpha, beta, gamma, delta;
  Word tail;
};

// First connector tuple, scanning each slot through the reduced words of
// length <= 2 in shortlex order with alpha slowest and delta fastest, whose
// w_1 has no cancellation at any junction including the wraparound. The
// junction letters do not depend on i, so the tuple serves every i >= 1.
// Throws SearchExhausted when no tuple works (never seen for rank >= 2).
WitnessFamily find_connectors(const CyclicWord& u, const CyclicWord& r);
// Same search with two extra junctions so tail * w_i is cyclically reduced.
WitnessFamily find_connectors(const CyclicWord& u, const CyclicWord& r,
                              const Word& tail);

// w_i of the family, verified reduced as concatenated; the coset form
// prepends the tail. Invalid connectors are rejected, not repaired.
CyclicWord make_witness(const WitnessFamily& family, long i);
CyclicWord make_coset_witness(const WitnessFamily& family, long i);

// One sampled index of the convergence experiment: distance between the
// cylinder frequencies of w_i and of u, the length ratio, and per tree the
// gap |ratio * length(w_i) - length(u)|.
struct ConvergenceRow {
  long i = 0;
  Rat distance;
  Rat ratio;
  std::vector<Rat> gaps;
};

std::vector<ConvergenceRow> convergence_report(
    const WitnessFamily& family, int window, const std::vector<long>& indices,
    const std::vector<MarkedMetricGraph>& trees);

// Outcome of the distinguisher search: a witness word in the normal closure
// of r whose translation lengths under the two trees differ, or the probed
// ranges when every probe agreed.
struct Distinguisher {
  bool found = false;
  Word u;
  long index = 0;
  CyclicWord witness;
  Rat length_first, length_second;
  long index_limit = 0;
  int search_length = 0;
};

// Scans cyclically reduced base words in shortlex order for one the trees
// measure differently, builds its witness family, and returns the least
// index whose witness separates the trees.
Distinguisher rigidity_distinguisher(const MarkedMetricGraph& first,
                                     const MarkedMetricGraph& second,
                                     const CyclicWord& r, long index_limit,
                                     int search_length);

struct CertificateLimits {
  int crossing_limit = 20;
  int window = 5;
  long depth = 25;
  long build_limit = 25;
};

// Uniform power bound certificate: in the basis phi(x_1..x_N) the word z is
// the image of the first basis letter, and every cyclic z-power run in a
// rebased coset representative is at most bound. The remaining fields record
// how the pipeline found z.
struct PropertyWCertificate {
  Word z;
  Automorphism phi;
  long bound = 0;
  GraphMap map;
  int crossing = 0;
  EscapeReport escape;
  long exponent = 0;
  std::vector<long> coset_bounds;
};

// Pipeline: raise the map to its crossing power, measure how fast iterated
// edge images escape every coset cover, grow z until it contains each
// escaping image, then read the exact run bound off the rebased coset
// automata. Refuses finite index subgroups; an unbounded automaton run is
// reported as Unbounded, never clamped.
PropertyWCertificate propw_certificate(const std::vector<CosetSpec>& cosets,
                                       const GraphMap& f,
                                       const CertificateLimits& limits = {});

struct WViolation {
  int coset = 0;
  Word word;  // sampled subgroup element, rebased coordinates
  long run = 0;
};

struct WCheckReport {
  bool ok = true;
  std::vector<WViolation> violations;
};

// Samples random generator products per coset, rebases, and checks every
// cyclic z-power run against the certified bound. Vacuously true on an
// empty coset list.
WCheckReport check_property_w(const std::vector<CosetSpec>& cosets,
                              const PropertyWCertificate& certificate,
                              int samples, int max_len, unsigned long seed);

}  // namespace specrig
