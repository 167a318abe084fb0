#include "specrig/rat.hpp"

#include <cctype>
#include <cstdio>

#include "specrig/error.hpp"

namespace specrig {

Rat make_rat(long num, long den) {
  if (den == 0) fail(errc::invalid, "rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Rat parse_rat(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) fail(errc::parse, "empty rational");

  bool neg = false;
  size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    neg = s[pos] == '-';
    ++pos;
  }
  std::string body = s.substr(pos);
  if (body.empty()) fail(errc::parse, "malformed rational '" + text + "'");

  auto digits_only = [](const std::string& t) {
    if (t.empty()) return false;
    for (char c : t)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };

  Rat q;
  auto slash = body.find('/');
  auto dot = body.find('.');
  if (slash != std::string::npos) {
    std::string num = body.substr(0, slash), den = body.substr(slash + 1);
    if (!digits_only(num) || !digits_only(den))
      fail(errc::parse, "malformed rational '" + text + "'");
    mpz_class n(num), d(den);
    if (d == 0) fail(errc::invalid, "rational with zero denominator");
    q = Rat(n, d);
    q.canonicalize();
  } else if (dot != std::string::npos) {
    std::string ip = body.substr(0, dot), fp = body.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (!digits_only(ip) || (!fp.empty() && !digits_only(fp)))
      fail(errc::parse, "malformed rational '" + text + "'");
    mpz_class num(ip);
    mpz_class den = 1;
    for (char c : fp) {
      num = num * 10 + (c - '0');
      den *= 10;
    }
    q = Rat(num, den);
    q.canonicalize();
  } else {
    if (!digits_only(body)) fail(errc::parse, "malformed rational '" + text + "'");
    q = Rat(mpz_class(body));
  }
  if (neg) q = -q;
  return q;
}

std::string format_rat(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string format_decimal(const Rat& q) {
  mpf_class f(q, 256);
  char buf[128];
  gmp_snprintf(buf, sizeof buf, "%.12Fg", f.get_mpf_t());
  return buf;
}

Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

}  // namespace specrig
