// Acceptance gate: nine criteria, one [PASS] line each. Any failed
// requirement prints [FAIL] with its location and exits nonzero. Seeds are
// fixed so every run checks the same cases; tolerances and runtime budgets
// are pinned right here in the code.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "specrig/currents.hpp"
#include "specrig/dynamics.hpp"
#include "specrig/error.hpp"
#include "specrig/metric.hpp"
#include "specrig/rigidity.hpp"
#include "specrig/sampling.hpp"
#include "specrig/stallings.hpp"
#include "specrig/words.hpp"
#include "util.hpp"

namespace {

using namespace specrig;
using Clock = std::chrono::steady_clock;

// Always-on requirement: never compiled out in Release.
#define REQUIRE(cond, msg)                                                      \
    do {                                                                        \
        if (!(cond)) {                                                          \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << msg \
                      << "\n";                                                  \
            std::exit(1);                                                       \
        }                                                                       \
    } while (0)

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Word W(const std::string& text, int rank = 2) { return parse_word(text, rank); }
CyclicWord CW(const std::string& text, int rank = 2) {
    return CyclicWord(parse_word(text, rank));
}

// BFS over reduced products of the generators, keeping every product whose
// reduced length stays within cap. Cap 8 leaves two letters of slack over
// the longest membership query below.
std::set<std::vector<Letter>> product_ball(const std::vector<Word>& gens, int rank,
                                           int cap) {
    std::vector<Word> steps;
    for (const Word& g : gens) {
        steps.push_back(g);
        steps.push_back(inverse(g));
    }
    std::set<std::vector<Letter>> seen;
    seen.insert({});
    std::vector<Word> frontier{Word(rank)};
    while (!frontier.empty()) {
        std::vector<Word> next;
        for (const Word& w : frontier)
            for (const Word& s : steps) {
                Word p = concat(w, s);
                if (p.length() > cap) continue;
                if (seen.insert(p.letters()).second) next.push_back(p);
            }
        frontier = std::move(next);
    }
    return seen;
}

void criterion1() {
    auto t0 = Clock::now();
    Rng rng(0xACCE5501);
    std::map<int, std::vector<Word>> queries_by_rank;
    queries_by_rank[2] = reduced_words_up_to(2, 6);
    queries_by_rank[3] = reduced_words_up_to(3, 6);
    long queries = 0, ball_checks = 0;
    for (int t = 0; t < 1000; ++t) {
        int rank = (t % 2) ? 3 : 2;
        int count = 1 + static_cast<int>(rng() % 3);
        std::vector<Word> gens = random_generators(rng, rank, count, 5);
        CoreGraph core = fold(gens, rank);
        // Soundness direction: every product the ball reaches must be
        // accepted by the graph.
        for (const std::vector<Letter>& ls : product_ball(gens, rank, 8))
            if (ls.size() <= 6) {
                ++ball_checks;
                REQUIRE(contains(core, Word(rank, ls)),
                        "graph rejects the product " << format_word(Word(rank, ls))
                                                     << " at case " << t);
            }
        // Completeness direction: the BFS over generator products that
        // strips a symmetrized Nielsen basis off the front, never letting
        // the remainder grow, decides membership exactly; a fixed-radius
        // ball cannot (a short member may need a long intermediate).
        std::vector<Word> basis = testutil::nielsen_reduce(gens);
        for (const Word& v : queries_by_rank[rank]) {
            ++queries;
            bool graph_says = contains(core, v);
            bool oracle_says = testutil::strip_member(basis, v);
            REQUIRE(graph_says == oracle_says,
                    "membership mismatch at case " << t << " on " << format_word(v));
        }
    }
    double s = seconds_since(t0);
    REQUIRE(s < 60.0, "membership sweep took " << s << "s, budget 60s");
    std::cout << "[PASS] 1 membership matches the generator-product oracle: 1000 subgroups, "
              << queries << " queries, " << ball_checks << " ball products, " << s
              << "s\n";
}

// Coset enumeration against an exact stripping membership test: BFS the
// right action of the basis letters on coset representatives. Closing gives
// the index; a representative longer than depth means infinite. Depth 4 is
// sound for two-generator subgroups of the rank-two free group: a
// finite-index subgroup of rank two must be the whole group (subgroup rank
// grows linearly with the index), and that case closes at the very first
// representative.
std::optional<long> coset_index_oracle(const std::vector<Word>& gens, int rank,
                                       long depth) {
    std::vector<Word> basis = testutil::nielsen_reduce(gens);
    std::vector<Word> reps{Word(rank)};
    for (size_t at = 0; at < reps.size(); ++at)
        for (int k = 1; k <= rank; ++k)
            for (Letter l : {k, -k}) {
                Word v = concat(reps[at], Word(rank, {l}));
                bool known = false;
                for (const Word& r : reps)
                    if (testutil::strip_member(basis, concat(v, inverse(r)))) {
                        known = true;
                        break;
                    }
                if (known) continue;
                if (v.length() > depth) return std::nullopt;
                reps.push_back(v);
            }
    return static_cast<long>(reps.size());
}

void criterion2() {
    auto t0 = Clock::now();
    std::vector<Word> two{W("a"), W("bb"), W("baB")};
    REQUIRE(index(fold(two, 2)) == std::optional<long>(2), "expected index 2");
    REQUIRE(coset_index_oracle(two, 2, 4) == std::optional<long>(2),
            "oracle disagrees on the index-2 fixture");
    std::vector<Word> inf{W("a"), W("baB")};
    REQUIRE(!index(fold(inf, 2)), "expected infinite index");
    REQUIRE(!coset_index_oracle(inf, 2, 4), "oracle disagrees on the infinite fixture");
    Rng rng(0xACCE5502);
    long infinite = 0, finite = 0;
    for (int t = 0; t < 200; ++t) {
        std::vector<Word> gens = random_generators(rng, 2, 2, 5);
        std::optional<long> got = index(fold(gens, 2));
        std::optional<long> want = coset_index_oracle(gens, 2, 4);
        REQUIRE(got == want, "index mismatch at case "
                                 << t << ": graph "
                                 << (got ? std::to_string(*got) : std::string("infinite"))
                                 << ", oracle "
                                 << (want ? std::to_string(*want) : std::string("infinite")));
        (got ? finite : infinite) += 1;
    }
    double s = seconds_since(t0);
    std::cout << "[PASS] 2 index agrees with coset enumeration: fixtures plus 200 cases ("
              << infinite << " infinite, " << finite << " finite), " << s << "s\n";
}

void criterion3() {
    auto t0 = Clock::now();
    GraphMap f{2, {W("ab"), W("a")}};
    BasedGraph target = with_basepoint(fold({W("a"), W("baB")}, 2), Word(2));
    EscapeReport rep = escape_power(f, {target}, 5, 25);
    REQUIRE(rep.m[0][0] == 3, "m for the first letter is " << rep.m[0][0]);
    REQUIRE(rep.m[1][0] == 4, "m for the second letter is " << rep.m[1][0]);
    REQUIRE(rep.overall == 4, "overall escape power is " << rep.overall);
    REQUIRE(rep.monotone, "escape was not monotone in the window");
    REQUIRE(rep.window == 5, "window is " << rep.window);
    double s = seconds_since(t0);
    REQUIRE(s < 1.0, "escape took " << s << "s, budget 1s");
    std::cout << "[PASS] 3 escape powers m = (3, 4), overall 4, monotone, " << s << "s\n";
}

void criterion4() {
    auto t0 = Clock::now();
    GraphMap f{2, {W("ab"), W("a")}};
    std::vector<CosetSpec> cosets{CosetSpec{Word(2), {W("a"), W("baB")}},
                                  CosetSpec{W("b"), {W("a")}}};
    PropertyWCertificate cert = propw_certificate(cosets, f);
    REQUIRE(cert.bound >= 1, "certified bound is " << cert.bound);
    REQUIRE(cert.coset_bounds.size() == 2, "expected one bound per coset");
    WCheckReport check = check_property_w(cosets, cert, 10000, 40, 0xACCE5504);
    REQUIRE(check.ok && check.violations.empty(),
            "certificate check found " << check.violations.size() << " violations");
    bool refused = false;
    try {
        std::vector<CosetSpec> bad = cosets;
        bad.push_back(CosetSpec{Word(2), {W("a"), W("b")}});
        propw_certificate(bad, f);
    } catch (const DomainError& e) {
        refused = (e.code == errc::finite_index);
    }
    REQUIRE(refused, "full-group coset was not refused as finite index");
    double s = seconds_since(t0);
    REQUIRE(s < 120.0, "certificate work took " << s << "s, budget 120s");
    std::cout << "[PASS] 4 power bound " << cert.bound
              << " certified, 20000 samples clean, finite index refused, " << s << "s\n";
}

std::vector<long> all_indices(long lo, long hi) {
    std::vector<long> v;
    for (long i = lo; i <= hi; ++i) v.push_back(i);
    return v;
}

void criterion5() {
    auto t0 = Clock::now();
    WitnessFamily base = find_connectors(CW("a"), CW("b"));
    std::vector<ConvergenceRow> pinned =
        convergence_report(base, 1, {1, 9, 99}, {rose({Rat(1), Rat(2)})});
    for (const ConvergenceRow& row : pinned)
        REQUIRE(row.distance == make_rat(1, row.i + 1),
                "distance at i = " << row.i << " is " << format_rat(row.distance));

    // Random families. Windows of length <= L can only miss the u-periodic
    // statistics when they start on a connector letter (c0 starts), within
    // L-1 of one of the eight block junctions, or in the partial period at a
    // block end; everything else cancels exactly against the frequency of u,
    // so i * d_i <= (2 c0 + 8 (L - 1) + 4 |u|) / (4 |u|) for every i >= 1.
    Rng rng(0xACCE5505);
    std::vector<long> indices = all_indices(1, 200);
    for (int p = 0; p < 10; ++p) {
        int rank = (p % 2) ? 3 : 2;
        CyclicWord u = random_cyclic_word(rng, rank, 1 + static_cast<int>(rng() % 4));
        CyclicWord r = random_cyclic_word(rng, rank, 1 + static_cast<int>(rng() % 4));
        WitnessFamily fam = find_connectors(u, r);
        long ulen = u.length();
        long c0 = make_witness(fam, 1).length() - 4 * ulen;
        MarkedMetricGraph unit = rose(std::vector<Rat>(rank, Rat(1)));
        for (int L = 1; L <= 3; ++L) {
            Rat cap = make_rat(2 * c0 + 8 * (L - 1) + 4 * ulen, 4 * ulen);
            std::vector<ConvergenceRow> rows =
                convergence_report(fam, L, indices, {unit});
            for (const ConvergenceRow& row : rows)
                REQUIRE(Rat(row.i) * row.distance <= cap,
                        "i * d_i = " << format_rat(Rat(row.i) * row.distance)
                                     << " exceeds " << format_rat(cap) << " at i = "
                                     << row.i << ", pair " << p << ", window " << L);
            REQUIRE(rows.back().distance <= make_rat(1, 20),
                    "d_200 = " << format_rat(rows.back().distance) << " at pair " << p
                               << ", window " << L);
        }
    }
    double s = seconds_since(t0);
    REQUIRE(s < 120.0, "convergence sweep took " << s << "s, budget 120s");
    std::cout << "[PASS] 5 d_i = 1/(i+1) pinned; i*d_i bounded and d_200 <= 1/20 on 10 "
                 "families x 3 windows, "
              << s << "s\n";
}

void criterion6() {
    auto t0 = Clock::now();
    WitnessFamily fam = find_connectors(CW("a"), CW("b"));
    std::vector<ConvergenceRow> pinned =
        convergence_report(fam, 1, {1, 9, 99}, {rose({Rat(1), Rat(2)})});
    for (const ConvergenceRow& row : pinned)
        REQUIRE(row.gaps[0] == make_rat(1, row.i + 1),
                "gap at i = " << row.i << " is " << format_rat(row.gaps[0]));

    // Twenty random marked roses. Once the junction cancellation inside the
    // marking images saturates (well before i = 150 for five-move markings),
    // gap_i * (4i + 4) is a constant G, so i * gap_i climbs monotonically
    // toward G/4 and the largest late value 200 G / 804 cannot exceed
    // 604/603 times the value already reached at i = 150.
    Rng rng(0xACCE5506);
    std::vector<MarkedMetricGraph> trees;
    for (int t = 0; t < 20; ++t) trees.push_back(random_marked_rose(rng, 2, 5));
    std::vector<ConvergenceRow> rows =
        convergence_report(fam, 1, all_indices(1, 200), trees);
    Rat factor = make_rat(604, 603);
    for (size_t t = 0; t < trees.size(); ++t) {
        Rat early = 0, late = 0;
        for (const ConvergenceRow& row : rows) {
            Rat scaled = Rat(row.i) * row.gaps[t];
            (row.i <= 150 ? early : late) = std::max(row.i <= 150 ? early : late, scaled);
        }
        REQUIRE(late <= factor * early,
                "late i*gap_i " << format_rat(late) << " exceeds " << format_rat(factor)
                                << " x early " << format_rat(early) << " on tree " << t);
    }
    double s = seconds_since(t0);
    REQUIRE(s < 120.0, "length-pairing sweep took " << s << "s, budget 120s");
    std::cout << "[PASS] 6 gap_i = 1/(i+1) pinned; i*gap_i bounded on 20 marked roses, "
              << s << "s\n";
}

void criterion7() {
    auto t0 = Clock::now();
    MarkedMetricGraph one = rose({Rat(1), Rat(1)});
    MarkedMetricGraph two = rose({Rat(1), Rat(2)});
    Distinguisher d = rigidity_distinguisher(one, two, CW("a"), 50, 3);
    REQUIRE(d.found, "fixture distinguisher found nothing");
    REQUIRE(d.witness.to_word() == W("baBabaBA"),
            "fixture witness is " << format_cyclic(d.witness));
    REQUIRE(d.length_first == Rat(8) && d.length_second == Rat(12),
            "fixture lengths are " << format_rat(d.length_first) << " and "
                                   << format_rat(d.length_second));

    // Pairs are resampled until they differ on some cyclically reduced word
    // of length <= 3, the scale the distinguisher probes, so each pair is a
    // genuinely distinct point of the length-function space.
    std::vector<Word> probes;
    for (const Word& v : reduced_words_up_to(2, 3))
        if (!v.empty() && CyclicWord(v).length() == v.length()) probes.push_back(v);
    Rng rng(0xACCE5507);
    std::vector<CyclicWord> relators{CW("a"), CW("b"), CW("ab")};
    long searches = 0, resamples = 0;
    for (int t = 0; t < 50; ++t) {
        MarkedMetricGraph first = random_marked_rose(rng, 2, 5);
        MarkedMetricGraph second = random_marked_rose(rng, 2, 5);
        auto distinct = [&] {
            for (const Word& v : probes)
                if (translation_length(first, v) != translation_length(second, v))
                    return true;
            return false;
        };
        while (!distinct()) {
            ++resamples;
            REQUIRE(resamples < 1000, "resampling failed to produce distinct trees");
            second = random_marked_rose(rng, 2, 5);
        }
        for (const CyclicWord& r : relators) {
            Distinguisher got = rigidity_distinguisher(first, second, r, 50, 3);
            ++searches;
            REQUIRE(got.found, "no distinguisher at pair " << t << ", relator "
                                                           << format_cyclic(r));
            REQUIRE(got.index >= 1 && got.index <= 50,
                    "index " << got.index << " out of range at pair " << t);
            REQUIRE(got.length_first != got.length_second,
                    "witness lengths agree at pair " << t);
        }
    }
    double s = seconds_since(t0);
    REQUIRE(s < 120.0, "distinguisher sweep took " << s << "s, budget 120s");
    std::cout << "[PASS] 7 fixture witness baBabaBA (8 vs 12); " << searches
              << " searches on 50 distinct pairs all found, " << s << "s\n";
}

void criterion8() {
    auto t0 = Clock::now();
    Rng rng(0xACCE5508);
    for (int t = 0; t < 1000; ++t) {
        int rank = (t % 2) ? 3 : 2;
        MarkedMetricGraph tree = random_marked_rose(rng, rank, 5);
        Word g = random_reduced_word(rng, rank, 1 + static_cast<int>(rng() % 6));
        Word h = random_reduced_word(rng, rank, 1 + static_cast<int>(rng() % 6));
        long n = static_cast<long>(rng() % 6);
        REQUIRE(translation_length(tree, power(g, n)) ==
                    Rat(n) * translation_length(tree, g),
                "power homogeneity fails at case " << t);
        REQUIRE(translation_length(tree, concat(concat(h, g), inverse(h))) ==
                    translation_length(tree, g),
                "conjugation invariance fails at case " << t);
    }
    double s = seconds_since(t0);
    std::cout << "[PASS] 8 homogeneity and conjugation invariance on 1000 cases, " << s
              << "s\n";
}

void criterion9() {
    auto t0 = Clock::now();
    Rng rng(0xACCE5509);
    for (int t = 0; t < 1000; ++t) {
        int rank = (t % 2) ? 3 : 2;
        CyclicWord g = random_cyclic_word(rng, rank, 1 + static_cast<int>(rng() % 8));
        int L = 1 + static_cast<int>(rng() % 4);
        FrequencyVector v = frequency_vector(g, L);
        std::map<size_t, Rat> mass;
        for (const auto& [key, value] : v.table()) mass[key.size()] += value;
        for (int len = 1; len <= L; ++len)
            REQUIRE(mass[static_cast<size_t>(len)] == Rat(1),
                    "length " << len << " mass is "
                              << format_rat(mass[static_cast<size_t>(len)]) << " at case "
                              << t);
        long k = 2 + static_cast<long>(rng() % 2);
        REQUIRE(frequency_vector(CyclicWord(power(g.to_word(), k)), L) == v,
                "power invariance fails at case " << t << " with k = " << k);
    }
    double s = seconds_since(t0);
    std::cout << "[PASS] 9 frequency normalization and power invariance on 1000 cases, "
              << s << "s\n";
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::cout << "[PASS] acceptance complete: 9/9\n";
    return 0;
}
