#pragma once

#include <vector>

#include "specrig/stallings.hpp"
#include "specrig/words.hpp"

namespace specrig {

// Self-map of the rose: each basis letter goes to a nonempty reduced
// edgepath, spelled as a word. Inverse edges map to inverse paths by
// construction, so only positive letters carry images.
struct GraphMap {
  int rank = 0;
  std::vector<Word> images;  // images[k] = image path of letter k+1
};

inline GraphMap as_graph_map(const Automorphism& phi) {
  return GraphMap{phi.rank, phi.images};
}

struct PathImage {
  Word path;
  bool cancelled = false;  // some substitution stage reduced at a junction
};

// f^n(e) by letterwise substitution, freely reducing as it goes. The flag
// records whether any stage cancelled anywhere, which witnesses a failure
// of the train track property. Negative e walks the image backwards.
PathImage iterate_edge(const GraphMap& f, Letter e, int n);

// No cancellation in f^n(e) for any edge and any n <= n_max.
bool is_train_track_up_to(const GraphMap& f, int n_max);

// The images generate all of F_N (fold them, demand index one). A
// surjective endomorphism of a free group is an automorphism.
bool is_automorphism(const GraphMap& f);

// Least p <= limit such that f^p(e) crosses every topological edge for
// every edge e. Throws SearchExhausted past the limit, or when the image
// paths outgrow the search budget first.
int crossing_power(const GraphMap& f, int limit = 20);

// Escape of iterated edge images from finite target covers. m[e-1][t] is
// the least m such that f^n(e) fails reads_based on target t for every
// n in [m, m + window]; overall is the max entry. monotone records whether
// each such m was also the first unreadable exponent (readability never
// flickered back inside the scanned range).
struct EscapeReport {
  int window = 0;
  std::vector<std::vector<long>> m;  // [letter-1][target]
  long overall = 0;
  bool monotone = true;
};

// Throws FiniteIndex when some target represents a finite-index subgroup
// (every path reads in such a cover, so escape is impossible), and
// DepthExhausted when no confirmed escape appears with m <= depth.
EscapeReport escape_power(const GraphMap& f, const std::vector<BasedGraph>& targets,
                          int window = 5, long depth = 25);

struct BuildZ {
  Word z;
  long n = 0;
};

// Least n <= limit with f^m(e) contained in f^n(seed) as a subpath (either
// orientation). z = f^n(seed) is primitive: it is the image of a basis
// letter under an automorphism, which is checked. Throws NotInvertible for
// non-automorphisms and SearchExhausted past the limit.
BuildZ build_z(const GraphMap& f, Letter seed, Letter e, long m, long limit = 25);

// Empirical quasiperiodicity constant of the segment S = f^depth(e): the
// least window length W such that every factor of S of length <= l occurs
// in every length-W window of S. Throws InsufficientDepth unless the
// segment is at least twice the answer, so the certificate is never
// vacuous. l = 0 returns 0.
long quasiperiodicity_profile(const GraphMap& f, Letter e, int l, int depth);

}  // namespace specrig
