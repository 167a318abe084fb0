#pragma once

#include <gmpxx.h>

#include <string>

namespace specrig {

// Exact rational arithmetic for edge lengths, translation lengths and
// cylinder frequencies. GMP keeps sums over long edge paths exact no matter
// how denominators mix.
using Rat = mpq_class;

Rat make_rat(long num, long den);

// Accepts "3", "-7/2" and decimal forms like "1.5" or ".25"; everything is
// converted to an exact rational.
Rat parse_rat(const std::string& text);

// Canonical exact form: "p/q", or just "p" when q == 1.
std::string format_rat(const Rat& q);

// Decimal rendering with 12 significant digits.
std::string format_decimal(const Rat& q);

Rat rat_abs(const Rat& q);

}  // namespace specrig
