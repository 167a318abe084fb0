#pragma once

#include <string>
#include <vector>

#include "specrig/currents.hpp"
#include "specrig/dynamics.hpp"
#include "specrig/metric.hpp"
#include "specrig/rigidity.hpp"
#include "specrig/stallings.hpp"

namespace specrig {

// Line-based text formats. Parsers skip blank lines and lines whose first
// non-space character is '#'; writers emit the canonical form, which every
// parser reproduces bit-exactly. Malformed input raises ParseError; value
// validation is delegated to the _from_parts constructors.

std::string write_graph(const CoreGraph& g);
std::string write_based_graph(const BasedGraph& bg);
CoreGraph parse_graph(const std::string& text);
// The bridge line is optional and defaults to the empty word.
BasedGraph parse_based_graph(const std::string& text);

// Accepts either the full vertex/edge/marking listing or the one-line
// identity-marked abbreviation "rose <l1> ... <lN>".
std::string write_tree(const MarkedMetricGraph& t);
MarkedMetricGraph parse_tree(const std::string& text);

std::string write_map(const GraphMap& f);
GraphMap parse_map(const std::string& text);

// Serializes z, the basis images of phi, and the bound M; the remaining
// pipeline provenance is written as comments and not reconstructed.
std::string write_certificate(const PropertyWCertificate& c);
PropertyWCertificate parse_certificate(const std::string& text);

// CSV reports. Exact values are split into numerator and denominator
// columns; decimal columns carry 12 significant digits.
std::string frequency_csv(const FrequencyVector& v);
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace specrig
