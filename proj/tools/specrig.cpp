#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "specrig/currents.hpp"
#include "specrig/dynamics.hpp"
#include "specrig/error.hpp"
#include "specrig/io.hpp"
#include "specrig/metric.hpp"
#include "specrig/rigidity.hpp"
#include "specrig/sampling.hpp"
#include "specrig/stallings.hpp"
#include "specrig/words.hpp"

using namespace specrig;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

long to_long(const std::string& tok) {
  size_t used = 0;
  long value = 0;
  try {
    value = std::stol(tok, &used);
  } catch (const std::exception&) {
    fail(errc::parse, "bad integer: " + tok);
  }
  if (used != tok.size()) fail(errc::parse, "bad integer: " + tok);
  return value;
}

// Smallest rank accommodating every letter that appears; an explicit
// --rank overrides.
int infer_rank(std::initializer_list<const std::string*> words, int flag) {
  if (flag > 0) return flag;
  int rank = 1;
  for (const std::string* s : words)
    for (char c : *s) {
      if (c >= 'a' && c <= 'z') rank = std::max(rank, c - 'a' + 1);
      if (c >= 'A' && c <= 'Z') rank = std::max(rank, c - 'A' + 1);
    }
  return rank;
}

std::vector<Word> parse_words(const std::string& list, int rank) {
  std::vector<Word> out;
  for (const std::string& g : split(list, ','))
    if (!g.empty()) out.push_back(parse_word(g, rank));
  return out;
}

// "5" or "2..40", inclusive on both ends.
std::vector<long> parse_range(const std::string& s) {
  size_t p = s.find("..");
  if (p == std::string::npos) return {to_long(s)};
  long a = to_long(s.substr(0, p)), b = to_long(s.substr(p + 2));
  if (a > b) fail(errc::parse, "empty index range: " + s);
  std::vector<long> out;
  for (long i = a; i <= b; ++i) out.push_back(i);
  return out;
}

// "tail:g1,g2;g3" - semicolon-separated cosets, optional tail before ':'.
std::vector<CosetSpec> parse_cosets(const std::string& s, int rank) {
  std::vector<CosetSpec> out;
  if (s.empty()) return out;
  for (const std::string& part : split(s, ';')) {
    size_t c = part.find(':');
    std::string tail = c == std::string::npos ? "1" : part.substr(0, c);
    std::string gens = c == std::string::npos ? part : part.substr(c + 1);
    out.push_back(CosetSpec{parse_word(tail, rank), parse_words(gens, rank)});
  }
  return out;
}

MarkedMetricGraph load_tree(const std::string& spec) {
  if (spec.rfind("rose:", 0) == 0) {
    std::vector<Rat> lengths;
    for (const std::string& t : split(spec.substr(5), ','))
      lengths.push_back(parse_rat(t));
    return rose(lengths);
  }
  return parse_tree(read_text_file(spec));
}

GraphMap load_map(const std::string& path) {
  return parse_map(read_text_file(path));
}

Letter single_letter(const std::string& text, int rank) {
  Word w = parse_word(text, rank);
  if (w.length() != 1) fail(errc::invalid, "expected one letter: " + text);
  return w.letters()[0];
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

struct State {
  std::string word, gens, cosets, sigma, path, tol = "0";
  std::string u, r, w, z, tail, range = "1";
  std::string map_path, csv_path;
  std::vector<std::string> trees, graphs;
  int rank = 0, window = 1, esc_window = 5, jobs = 1;
  int crossing_limit = 20, search_length = 3, iters = 1;
  long power = 0, depth = 25, build_limit = 25;
  long samples = 1000, max_len = 40, index_limit = 50;
  unsigned long seed = 0;
};

void emit(const std::string& text, const std::string& csv_path) {
  std::cout << text;
  if (!csv_path.empty()) write_text_file(csv_path, text);
}

void run_witness(const State& st) {
  int rank = infer_rank({&st.u, &st.r, &st.tail}, st.rank);
  CyclicWord u(parse_word(st.u, rank)), r(parse_word(st.r, rank));
  Word tail = parse_word(st.tail, rank);
  WitnessFamily fam = tail.empty() ? find_connectors(u, r)
                                   : find_connectors(u, r, tail);
  std::cout << "# connectors alpha=" << format_word(fam.alpha)
            << " beta=" << format_word(fam.beta)
            << " gamma=" << format_word(fam.gamma)
            << " delta=" << format_word(fam.delta) << "\n";
  for (long i : parse_range(st.range)) {
    CyclicWord w = tail.empty() ? make_witness(fam, i) : make_coset_witness(fam, i);
    std::cout << format_cyclic(w) << "\n";
  }
}

void run_converge(const State& st) {
  int rank = infer_rank({&st.u, &st.r, &st.tail}, st.rank);
  CyclicWord u(parse_word(st.u, rank)), r(parse_word(st.r, rank));
  Word tail = parse_word(st.tail, rank);
  WitnessFamily fam = tail.empty() ? find_connectors(u, r)
                                   : find_connectors(u, r, tail);
  std::vector<MarkedMetricGraph> trees;
  for (const std::string& spec : st.trees) trees.push_back(load_tree(spec));
  std::vector<long> indices = parse_range(st.range);

  std::vector<ConvergenceRow> rows;
  size_t n = indices.size();
  size_t threads = std::min<size_t>(static_cast<size_t>(std::max(st.jobs, 1)), n);
  if (threads <= 1) {
    rows = convergence_report(fam, st.window, indices, trees);
  } else {
    // Rows are independent; shard the index list and stitch in order.
    rows.resize(n);
    std::vector<std::thread> pool;
    for (size_t t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (size_t k = t; k < n; k += threads)
          rows[k] = convergence_report(fam, st.window, {indices[k]}, trees)[0];
      });
    for (std::thread& th : pool) th.join();
  }
  emit("# seed " + std::to_string(st.seed) + "\n" + convergence_csv(rows),
       st.csv_path);
}

void run_certify(const State& st) {
  GraphMap f = load_map(st.map_path);
  CertificateLimits limits{st.crossing_limit, st.esc_window, st.depth,
                           st.build_limit};
  PropertyWCertificate cert =
      propw_certificate(parse_cosets(st.cosets, f.rank), f, limits);
  std::cout << "# seed " << st.seed << "\n" << write_certificate(cert);
}

void run_checkw(const State& st) {
  PropertyWCertificate cert = parse_certificate(read_text_file(st.path));
  WCheckReport rep =
      check_property_w(parse_cosets(st.cosets, cert.phi.rank), cert,
                       static_cast<int>(st.samples), static_cast<int>(st.max_len),
                       st.seed);
  std::cout << "# seed " << st.seed << "\n";
  if (rep.ok) {
    std::cout << "ok\n";
    return;
  }
  std::cout << "violations " << rep.violations.size() << "\n";
  for (const WViolation& v : rep.violations)
    std::cout << "violation coset " << v.coset << " word "
              << format_word(v.word) << " run " << v.run << "\n";
}

void run_distinguish(const State& st) {
  MarkedMetricGraph first = load_tree(st.trees[0]);
  MarkedMetricGraph second = load_tree(st.trees[1]);
  CyclicWord r(parse_word(st.r, first.rank()));
  Distinguisher d = rigidity_distinguisher(first, second, r, st.index_limit,
                                           st.search_length);
  std::cout << "found " << yesno(d.found) << "\n";
  if (!d.found) return;
  std::cout << "u " << format_word(d.u) << "\n";
  std::cout << "i " << d.index << "\n";
  std::cout << "witness " << format_cyclic(d.witness) << "\n";
  std::cout << "length_first " << format_rat(d.length_first) << "\n";
  std::cout << "length_second " << format_rat(d.length_second) << "\n";
}

int dispatch(int argc, char** argv) {
  CLI::App app{"exact free group computations: folding, length spectra, "
               "currents, and rigidity certificates"};
  app.require_subcommand(1);
  State st;

  auto* reduce = app.add_subcommand("reduce", "freely reduce a word");
  reduce->add_option("word", st.word)->required();
  reduce->add_option("-r,--rank", st.rank);
  reduce->callback([&] {
    std::cout << format_word(parse_word(st.word, infer_rank({&st.word}, st.rank)))
              << "\n";
  });

  auto* cyclic = app.add_subcommand("cyclic", "cyclically reduce a word");
  cyclic->add_option("word", st.word)->required();
  cyclic->add_option("-r,--rank", st.rank);
  cyclic->callback([&] {
    Word w = parse_word(st.word, infer_rank({&st.word}, st.rank));
    std::cout << format_cyclic(cyclic_reduce(w).first) << "\n";
  });

  auto* count = app.add_subcommand(
      "count", "occurrences of -u or its inverse around the cycle of -w");
  count->add_option("-w,--word", st.w)->required();
  count->add_option("-u,--base", st.u)->required();
  count->add_option("-r,--rank", st.rank);
  count->callback([&] {
    int rank = infer_rank({&st.w, &st.u}, st.rank);
    std::cout << count_occurrences(CyclicWord(parse_word(st.w, rank)),
                                   parse_word(st.u, rank))
              << "\n";
  });

  auto* fold_cmd = app.add_subcommand("fold", "fold the core graph of a subgroup");
  fold_cmd->add_option("generators", st.gens, "comma-separated words")->required();
  fold_cmd->add_option("-r,--rank", st.rank);
  fold_cmd->callback([&] {
    int rank = infer_rank({&st.gens}, st.rank);
    std::cout << write_graph(fold(parse_words(st.gens, rank), rank));
  });

  auto* index_cmd = app.add_subcommand("index", "subgroup index from a graph file");
  index_cmd->add_option("graph", st.path)->required();
  index_cmd->callback([&] {
    std::optional<long> idx = index(parse_graph(read_text_file(st.path)));
    if (idx)
      std::cout << *idx << "\n";
    else
      std::cout << "infinite\n";
  });

  auto* member = app.add_subcommand("member", "test subgroup membership");
  member->add_option("graph", st.path)->required();
  member->add_option("-w,--word", st.w)->required();
  member->callback([&] {
    CoreGraph g = parse_graph(read_text_file(st.path));
    std::cout << yesno(contains(g, parse_word(st.w, g.rank()))) << "\n";
  });

  auto* reads_cmd =
      app.add_subcommand("reads", "test path readability from any vertex");
  reads_cmd->add_option("graph", st.path)->required();
  reads_cmd->add_option("-w,--word", st.w)->required();
  reads_cmd->callback([&] {
    BasedGraph bg = parse_based_graph(read_text_file(st.path));
    std::cout << yesno(reads_based(bg, parse_word(st.w, bg.graph.rank()))) << "\n";
  });

  auto* rebase_cmd = app.add_subcommand(
      "rebase", "core graph of a subgroup in the basis of an automorphism");
  rebase_cmd->add_option("generators", st.gens)->required();
  rebase_cmd->add_option("--map", st.map_path, "automorphism as a map file")
      ->required();
  rebase_cmd->callback([&] {
    GraphMap f = load_map(st.map_path);
    std::cout << write_graph(rebase(parse_words(st.gens, f.rank),
                                    Automorphism{f.rank, f.images}));
  });

  auto* powbound = app.add_subcommand(
      "powbound", "bound on readable z powers, coset form with -u");
  powbound->add_option("graph", st.path)->required();
  powbound->add_option("-z,--power-word", st.z)->required();
  powbound->add_option("-u,--tail", st.tail);
  powbound->callback([&] {
    CoreGraph g = parse_graph(read_text_file(st.path));
    Word z = parse_word(st.z, g.rank());
    std::optional<long> b =
        st.tail.empty() ? power_bound(g, z)
                        : coset_power_bound(g, parse_word(st.tail, g.rank()), z);
    if (b)
      std::cout << *b << "\n";
    else
      std::cout << "unbounded\n";
  });

  auto* length = app.add_subcommand("length", "translation length on a tree");
  length->add_option("--tree", st.trees, "tree file or rose:l1,l2,...")
      ->required()
      ->expected(1);
  length->add_option("-w,--word", st.w)->required();
  length->callback([&] {
    MarkedMetricGraph t = load_tree(st.trees[0]);
    std::cout << format_rat(translation_length(t, parse_word(st.w, t.rank())))
              << "\n";
  });

  auto* spectra = app.add_subcommand(
      "spectra", "compare length spectra of two trees on a word list");
  spectra->add_option("words", st.sigma, "comma-separated words")->required();
  spectra->add_option("--tree", st.trees)->required()->expected(2);
  spectra->add_option("--tol", st.tol, "nonnegative rational tolerance");
  spectra->callback([&] {
    MarkedMetricGraph a = load_tree(st.trees[0]), b = load_tree(st.trees[1]);
    bool same = spectra_agree(a, b, parse_words(st.sigma, a.rank()),
                              parse_rat(st.tol));
    std::cout << (same ? "agree" : "differ") << "\n";
  });

  auto* iterate = app.add_subcommand("iterate", "iterated edge image f^n(e)");
  iterate->add_option("edge", st.word)->required();
  iterate->add_option("--map", st.map_path)->required();
  iterate->add_option("-i,--power", st.iters)->required();
  iterate->callback([&] {
    GraphMap f = load_map(st.map_path);
    PathImage pi = iterate_edge(f, single_letter(st.word, f.rank), st.iters);
    std::cout << format_word(pi.path) << "\n";
    if (pi.cancelled) std::cout << "# cancelled\n";
  });

  auto* escape = app.add_subcommand(
      "escape", "least powers escaping finite covers, with confirmation window");
  escape->add_option("targets", st.graphs, "based graph files")->required();
  escape->add_option("--map", st.map_path)->required();
  escape->add_option("--window", st.esc_window);
  escape->add_option("--depth", st.depth);
  escape->callback([&] {
    GraphMap f = load_map(st.map_path);
    std::vector<BasedGraph> targets;
    for (const std::string& p : st.graphs)
      targets.push_back(parse_based_graph(read_text_file(p)));
    EscapeReport rep = escape_power(f, targets, st.esc_window, st.depth);
    std::cout << "# window " << rep.window << "\n";
    std::cout << "overall " << rep.overall << "\n";
    std::cout << "monotone " << yesno(rep.monotone) << "\n";
    for (size_t x = 0; x < rep.m.size(); ++x)
      for (size_t t = 0; t < rep.m[x].size(); ++t)
        std::cout << "m x" << x + 1 << " t" << t << " = " << rep.m[x][t] << "\n";
  });

  auto* buildz = app.add_subcommand(
      "buildz", "primitive z = f^n(seed) containing f^m(edge)");
  buildz->add_option("seed_letter", st.word)->required();
  buildz->add_option("edge", st.u)->required();
  buildz->add_option("--map", st.map_path)->required();
  buildz->add_option("-m,--power", st.power)->required();
  buildz->add_option("--limit", st.build_limit);
  buildz->callback([&] {
    GraphMap f = load_map(st.map_path);
    BuildZ out = build_z(f, single_letter(st.word, f.rank),
                         single_letter(st.u, f.rank), st.power, st.build_limit);
    std::cout << "z " << format_word(out.z) << "\n";
    std::cout << "n " << out.n << "\n";
  });

  auto* certify = app.add_subcommand(
      "certify", "power bound certificate for a union of cosets");
  certify->add_option("cosets", st.cosets, "tail:g1,g2;... ('1' tail = subgroup)")
      ->required();
  certify->add_option("--map", st.map_path)->required();
  certify->add_option("--crossing-limit", st.crossing_limit);
  certify->add_option("--window", st.esc_window);
  certify->add_option("--depth", st.depth);
  certify->add_option("--build-limit", st.build_limit);
  certify->add_option("--seed", st.seed);
  certify->callback([&] { run_certify(st); });

  auto* checkw = app.add_subcommand(
      "checkw", "sample subgroup elements against a certificate");
  checkw->add_option("certificate", st.path)->required();
  checkw->add_option("cosets", st.cosets)->required();
  checkw->add_option("--samples", st.samples);
  checkw->add_option("--max-len", st.max_len);
  checkw->add_option("--seed", st.seed);
  checkw->callback([&] { run_checkw(st); });

  auto* witness = app.add_subcommand(
      "witness", "normal closure witnesses around a base word");
  witness->add_option("-u,--base", st.u)->required();
  witness->add_option("-r,--relator", st.r)->required();
  witness->add_option("--tail", st.tail);
  witness->add_option("-i,--index", st.range, "single index or a..b");
  witness->add_option("--rank", st.rank);
  witness->callback([&] { run_witness(st); });

  auto* converge = app.add_subcommand(
      "converge", "witness current convergence and tree pairing gaps");
  converge->add_option("-u,--base", st.u)->required();
  converge->add_option("-r,--relator", st.r)->required();
  converge->add_option("--tail", st.tail);
  converge->add_option("-L,--window", st.window);
  converge->add_option("-i,--index", st.range)->required();
  converge->add_option("--tree", st.trees)->required();
  converge->add_option("--csv", st.csv_path);
  converge->add_option("--seed", st.seed);
  converge->add_option("--jobs", st.jobs);
  converge->add_option("--rank", st.rank);
  converge->callback([&] { run_converge(st); });

  auto* distinguish = app.add_subcommand(
      "distinguish", "normal closure element separating two trees");
  distinguish->add_option("-r,--relator", st.r)->required();
  distinguish->add_option("--tree", st.trees)->required()->expected(2);
  distinguish->add_option("--index-limit", st.index_limit);
  distinguish->add_option("--search-length", st.search_length);
  distinguish->callback([&] { run_distinguish(st); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const DomainError& e) {
    std::cout << "error: " << e.code << "\n";
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cout << "error: Internal\n";
    std::cerr << e.what() << "\n";
    return 1;
  }
}
