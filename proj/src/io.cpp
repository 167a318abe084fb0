#include "specrig/io.hpp"

#include <array>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <utility>

#include "specrig/error.hpp"

namespace specrig {

namespace {

using Line = std::vector<std::string>;

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream stream(text);
  std::string raw;
  while (std::getline(stream, raw)) {
    Line line;
    std::istringstream ls(raw);
    std::string tok;
    while (ls >> tok) line.push_back(tok);
    if (line.empty() || line[0][0] == '#') continue;
    out.push_back(std::move(line));
  }
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

int to_int(const std::string& tok) { return static_cast<int>(to_long(tok)); }

// Fixed header rank/vertices/base shared by the graph and tree formats.
struct Header {
  int rank = 0, vertices = 0, base = 0;
};

Header take_header(const std::vector<Line>& lines, size_t& k) {
  const char* keys[3] = {"rank", "vertices", "base"};
  int values[3] = {0, 0, 0};
  for (int f = 0; f < 3; ++f, ++k) {
    if (k >= lines.size() || lines[k].size() != 2 || lines[k][0] != keys[f])
      fail(errc::parse, std::string("expected line: ") + keys[f] + " <int>");
    values[f] = to_int(lines[k][1]);
  }
  return Header{values[0], values[1], values[2]};
}

char letter_char(int k) { return static_cast<char>('a' + k - 1); }

int char_letter(const std::string& tok, int rank) {
  if (tok.size() != 1 || tok[0] < 'a' || tok[0] >= 'a' + rank)
    fail(errc::parse, "bad edge letter: " + tok);
  return tok[0] - 'a' + 1;
}

// "x3" -> 3
int marking_key(const std::string& tok, int rank) {
  if (tok.size() < 2 || tok[0] != 'x') fail(errc::parse, "expected x<k>: " + tok);
  int k = to_int(tok.substr(1));
  if (k < 1 || k > rank) fail(errc::parse, "basis letter out of range: " + tok);
  return k;
}

void expect_eq(const Line& line) {
  if (line.size() < 3 || line[2] != "=")
    fail(errc::parse, "expected '=' in: " + line[0] + " line");
}

// Collects `image x<k> = <word>` style assignments into a dense vector.
std::vector<Word> take_images(const std::vector<Line>& lines, size_t& k,
                              const char* keyword, int rank) {
  std::vector<Word> images(static_cast<size_t>(rank), Word(rank));
  std::vector<bool> seen(static_cast<size_t>(rank), false);
  for (; k < lines.size() && lines[k][0] == keyword; ++k) {
    const Line& line = lines[k];
    if (line.size() != 4) fail(errc::parse, std::string(keyword) + " line needs 4 tokens");
    expect_eq(line);
    int x = marking_key(line[1], rank);
    if (seen[static_cast<size_t>(x - 1)])
      fail(errc::parse, "duplicate image for " + line[1]);
    seen[static_cast<size_t>(x - 1)] = true;
    images[static_cast<size_t>(x - 1)] = parse_word(line[3], rank);
  }
  for (bool s : seen)
    if (!s) fail(errc::parse, std::string("missing ") + keyword + " line");
  return images;
}

std::string graph_body(const CoreGraph& g) {
  std::ostringstream out;
  out << "rank " << g.rank() << "\n";
  out << "vertices " << g.vertex_count() << "\n";
  out << "base " << g.base() << "\n";
  for (const std::array<int, 3>& e : g.edges())
    out << "edge " << letter_char(e[0]) << " " << e[1] << " " << e[2] << "\n";
  return out.str();
}

struct GraphParts {
  Header h;
  std::vector<std::array<int, 3>> edges;
  Word bridge;
  bool has_bridge = false;
};

GraphParts take_graph(const std::vector<Line>& lines) {
  size_t k = 0;
  GraphParts parts{Header{}, {}, Word(1), false};
  parts.h = take_header(lines, k);
  if (parts.h.rank < 1) fail(errc::parse, "rank must be positive");
  parts.bridge = Word(parts.h.rank);
  for (; k < lines.size(); ++k) {
    const Line& line = lines[k];
    if (line[0] == "edge") {
      if (line.size() != 4) fail(errc::parse, "edge line needs 4 tokens");
      parts.edges.push_back({char_letter(line[1], parts.h.rank),
                             to_int(line[2]), to_int(line[3])});
    } else if (line[0] == "bridge") {
      if (line.size() != 2 || parts.has_bridge)
        fail(errc::parse, "bad bridge line");
      parts.bridge = parse_word(line[1], parts.h.rank);
      parts.has_bridge = true;
    } else {
      fail(errc::parse, "unexpected line: " + line[0]);
    }
  }
  return parts;
}

}  // namespace

std::string write_graph(const CoreGraph& g) { return graph_body(g); }

std::string write_based_graph(const BasedGraph& bg) {
  return graph_body(bg.graph) + "bridge " + format_word(bg.bridge) + "\n";
}

CoreGraph parse_graph(const std::string& text) {
  GraphParts p = take_graph(tokenize(text));
  if (p.has_bridge) fail(errc::parse, "unexpected bridge line in a core graph");
  return core_graph_from_parts(p.h.rank, p.h.vertices, p.h.base, p.edges);
}

BasedGraph parse_based_graph(const std::string& text) {
  GraphParts p = take_graph(tokenize(text));
  return based_graph_from_parts(p.h.rank, p.h.vertices, p.h.base, p.edges,
                                p.bridge);
}

std::string write_tree(const MarkedMetricGraph& t) {
  std::ostringstream out;
  out << "rank " << t.rank() << "\n";
  out << "vertices " << t.vertex_count() << "\n";
  out << "base " << t.base() << "\n";
  for (const MetricEdge& e : t.edges())
    out << "edge " << e.name << " " << e.src << " " << e.dst << " "
        << format_rat(e.length) << "\n";
  for (int x = 1; x <= t.rank(); ++x) {
    out << "marking x" << x << " =";
    for (int s : t.marking(x)) {
      const MetricEdge& e = t.edges()[static_cast<size_t>(s > 0 ? s - 1 : -s - 1)];
      out << " " << (s > 0 ? "" : "-") << e.name;
    }
    out << "\n";
  }
  return out.str();
}

MarkedMetricGraph parse_tree(const std::string& text) {
  std::vector<Line> lines = tokenize(text);
  if (lines.empty()) fail(errc::parse, "empty tree description");
  if (lines[0][0] == "rose") {
    if (lines.size() != 1 || lines[0].size() < 2)
      fail(errc::parse, "rose line must stand alone with lengths");
    std::vector<Rat> lengths;
    for (size_t k = 1; k < lines[0].size(); ++k)
      lengths.push_back(parse_rat(lines[0][k]));
    return rose(lengths);
  }
  size_t k = 0;
  Header h = take_header(lines, k);
  if (h.rank < 1) fail(errc::parse, "rank must be positive");
  std::vector<MetricEdge> edges;
  for (; k < lines.size() && lines[k][0] == "edge"; ++k) {
    const Line& line = lines[k];
    if (line.size() != 5) fail(errc::parse, "edge line needs 5 tokens");
    edges.push_back(
        {line[1], to_int(line[2]), to_int(line[3]), parse_rat(line[4])});
  }
  auto edge_index = [&](const std::string& tok) -> int {
    bool rev = tok.size() > 1 && tok[0] == '-';
    std::string name = rev ? tok.substr(1) : tok;
    for (size_t e = 0; e < edges.size(); ++e)
      if (edges[e].name == name)
        return rev ? -static_cast<int>(e + 1) : static_cast<int>(e + 1);
    fail(errc::parse, "unknown edge name: " + name);
  };
  std::vector<std::vector<int>> marking(static_cast<size_t>(h.rank));
  std::vector<bool> seen(static_cast<size_t>(h.rank), false);
  for (; k < lines.size(); ++k) {
    const Line& line = lines[k];
    if (line[0] != "marking") fail(errc::parse, "unexpected line: " + line[0]);
    if (line.size() < 3) fail(errc::parse, "marking line needs x<k> = ...");
    expect_eq(line);
    int x = marking_key(line[1], h.rank);
    if (seen[static_cast<size_t>(x - 1)])
      fail(errc::parse, "duplicate marking for " + line[1]);
    seen[static_cast<size_t>(x - 1)] = true;
    for (size_t s = 3; s < line.size(); ++s)
      marking[static_cast<size_t>(x - 1)].push_back(edge_index(line[s]));
  }
  for (bool s : seen)
    if (!s) fail(errc::parse, "missing marking line");
  return metric_graph_from_parts(h.rank, h.vertices, h.base, edges, marking);
}

std::string write_map(const GraphMap& f) {
  std::ostringstream out;
  out << "rank " << f.rank << "\n";
  for (size_t k = 0; k < f.images.size(); ++k)
    out << "image x" << k + 1 << " = " << format_word(f.images[k]) << "\n";
  return out.str();
}

GraphMap parse_map(const std::string& text) {
  std::vector<Line> lines = tokenize(text);
  size_t k = 0;
  if (lines.empty() || lines[0].size() != 2 || lines[0][0] != "rank")
    fail(errc::parse, "expected line: rank <int>");
  int rank = to_int(lines[0][1]);
  if (rank < 1) fail(errc::parse, "rank must be positive");
  k = 1;
  std::vector<Word> images = take_images(lines, k, "image", rank);
  if (k != lines.size()) fail(errc::parse, "unexpected line: " + lines[k][0]);
  return GraphMap{rank, std::move(images)};
}

std::string write_certificate(const PropertyWCertificate& c) {
  std::ostringstream out;
  out << "# crossing " << c.crossing << "\n";
  out << "# escape overall " << c.escape.overall << "\n";
  out << "# exponent " << c.exponent << "\n";
  out << "# coset bounds";
  for (long b : c.coset_bounds) out << " " << b;
  out << "\n";
  out << "z " << format_word(c.z) << "\n";
  for (size_t k = 0; k < c.phi.images.size(); ++k)
    out << "phi x" << k + 1 << " = " << format_word(c.phi.images[k]) << "\n";
  out << "M " << c.bound << "\n";
  return out.str();
}

PropertyWCertificate parse_certificate(const std::string& text) {
  std::vector<Line> lines = tokenize(text);
  size_t k = 0;
  if (k >= lines.size() || lines[k][0] != "z" || lines[k].size() != 2)
    fail(errc::parse, "expected line: z <word>");
  std::string z_text = lines[k][1];
  ++k;
  size_t first_phi = k;
  int rank = 0;
  while (k < lines.size() && lines[k][0] == "phi") ++k, ++rank;
  if (rank < 1) fail(errc::parse, "expected phi image lines");
  size_t tail = first_phi;
  std::vector<Word> images = take_images(lines, tail, "phi", rank);
  if (tail >= lines.size() || lines[tail][0] != "M" || lines[tail].size() != 2)
    fail(errc::parse, "expected line: M <int>");
  long bound = to_long(lines[tail][1]);
  if (tail + 1 != lines.size())
    fail(errc::parse, "unexpected line after M");
  return PropertyWCertificate{parse_word(z_text, rank),
                              Automorphism{rank, std::move(images)},
                              bound,
                              GraphMap{rank, {}},
                              0,
                              EscapeReport{},
                              0,
                              {}};
}

std::string frequency_csv(const FrequencyVector& v) {
  std::ostringstream out;
  out << "cylinder, value_num, value_den, value_decimal\n";
  for (const auto& [key, value] : v.table()) {
    Word w(v.rank(), std::vector<Letter>(key));
    out << format_word(w) << ", " << value.get_num().get_str() << ", "
        << value.get_den().get_str() << ", " << format_decimal(value) << "\n";
  }
  return out.str();
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream out;
  out << "i, d_i_num, d_i_den, lambda_i, tree_id, gap_i\n";
  for (const ConvergenceRow& row : rows)
    for (size_t t = 0; t < row.gaps.size(); ++t)
      out << row.i << ", " << row.distance.get_num().get_str() << ", "
          << row.distance.get_den().get_str() << ", "
          << format_decimal(row.ratio) << ", " << t << ", "
          << format_decimal(row.gaps[t]) << "\n";
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::invalid, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::invalid, "cannot open " + path);
  out << text;
  if (!out.flush()) fail(errc::invalid, "write failed for " + path);
}

}  // namespace specrig
