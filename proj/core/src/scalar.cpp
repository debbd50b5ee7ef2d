#include "orbitface/scalar.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace orbitface {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "indeterminate";
  }
}

int exact_sign(const Rat& x) { return x.sign(); }

double to_double(const Rat& x) { return x.convert_to<double>(); }

XQ xq_sqrt2() { return XQ(Q2::root()); }
XQ xq_sqrt3() { return XQ::root(); }
XQ xq_sqrt6() { return xq_sqrt2() * xq_sqrt3(); }
XQ xq_half() { return XQ(Q2(Rat(1) / 2)); }

XQ abs_val(const XQ& x) { return x.sign() < 0 ? -x : x; }

std::array<Rat, 4> xq_components(const XQ& x) {
  return {x.a().a(), x.a().b(), x.b().a(), x.b().b()};
}

XQ xq_from_components(const std::array<Rat, 4>& c) {
  return XQ(Q2(c[0], c[1]), Q2(c[2], c[3]));
}

bool is_rational(const XQ& x) {
  auto c = xq_components(x);
  return c[1] == 0 && c[2] == 0 && c[3] == 0;
}

Rat rational_part(const XQ& x) { return x.a().a(); }

std::string format_exact(const Rat& x) {
  const auto num = boost::multiprecision::numerator(x);
  const auto den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string format_exact(const XQ& x) {
  if (is_rational(x)) return format_exact(rational_part(x));
  auto c = xq_components(x);
  std::string out = format_exact(c[0]);
  for (int i = 1; i < 4; ++i) out += "|" + format_exact(c[i]);
  return out;
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (ch < '0' || ch > '9') return false;
  return true;
}

// GMP reads a leading 0 as an octal prefix; force base 10.
boost::multiprecision::mpz_int parse_integer(const std::string& s) {
  std::size_t i = 0;
  while (i + 1 < s.size() && s[i] == '0') ++i;
  return boost::multiprecision::mpz_int(s.substr(i));
}

// "p", "p/q", or a finite decimal literal; sign prefix allowed.
Rat parse_rational_token(const std::string& raw) {
  std::string s = raw;
  if (s.empty()) throw InputError("empty scalar token");
  int sgn = 1;
  if (s[0] == '+' || s[0] == '-') {
    if (s[0] == '-') sgn = -1;
    s = s.substr(1);
  }
  auto fail = [&] { throw InputError("bad scalar token '" + raw + "'"); };
  Rat value;
  auto slash = s.find('/');
  auto dot = s.find('.');
  if (slash != std::string::npos) {
    std::string p = s.substr(0, slash), q = s.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q) || q == "0") fail();
    value = Rat(parse_integer(p), parse_integer(q));
  } else if (dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (!all_digits(ip) || !all_digits(fp)) fail();
    boost::multiprecision::mpz_int den = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
    value = Rat(parse_integer(ip + fp), den);
  } else {
    if (!all_digits(s)) fail();
    value = Rat(parse_integer(s));
  }
  return sgn < 0 ? Rat(-value) : value;
}

} // namespace

Rat parse_rational(const std::string& text) {
  return parse_rational_token(text);
}

XQ parse_exact(const std::string& text) {
  std::array<Rat, 4> c = {Rat(0), Rat(0), Rat(0), Rat(0)};
  std::size_t part = 0, pos = 0;
  while (true) {
    auto bar = text.find('|', pos);
    std::string tok =
        bar == std::string::npos ? text.substr(pos) : text.substr(pos, bar - pos);
    if (part >= 4) throw InputError("bad scalar token '" + text + "'");
    c[part++] = parse_rational_token(tok);
    if (bar == std::string::npos) break;
    pos = bar + 1;
  }
  if (part != 1 && part != 4)
    throw InputError("bad scalar token '" + text + "'");
  return xq_from_components(c);
}

std::optional<Rat> snap_rational(double x, long max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  // Continued fraction convergents p_i/q_i of x.
  long p0 = 1, q0 = 0;  // p_{-1}/q_{-1}
  double v = x;
  long p1 = (long)std::llround(std::floor(v)), q1 = 1;
  for (int it = 0; it < 64; ++it) {
    double approx = double(p1) / double(q1);
    if (std::abs(approx - x) <= tol) return Rat(p1, q1);
    double frac = v - std::floor(v);
    if (frac < 1e-15) break;
    v = 1.0 / frac;
    long a = (long)std::llround(std::floor(v));
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den || q2 <= 0) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  if (q1 <= max_den && std::abs(double(p1) / double(q1) - x) <= tol)
    return Rat(p1, q1);
  return std::nullopt;
}

std::optional<Rat> rational_sqrt(const Rat& x) {
  const int s = exact_sign(x);
  if (s < 0) return std::nullopt;
  if (s == 0) return Rat(0);
  using boost::multiprecision::mpz_int;
  const mpz_int num = boost::multiprecision::numerator(x);
  const mpz_int den = boost::multiprecision::denominator(x);
  const mpz_int rn = boost::multiprecision::sqrt(num);
  const mpz_int rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rat(rn, rd);
}

namespace {

// Square root of a + b*sqrt(D) of the form p + q*sqrt(D), if any: eliminating
// q from p^2 + D q^2 = a, 2pq = b leaves a rational quadratic in p^2.
std::optional<std::pair<Rat, Rat>> sqrt_in_quad(const Rat& a, const Rat& b,
                                                int D) {
  auto disc = rational_sqrt(a * a - Rat(D) * b * b);
  if (!disc) return std::nullopt;
  for (int pick : {0, 1}) {
    Rat u = (a + (pick ? -*disc : *disc)) / 2;  // candidate p^2
    if (exact_sign(u) <= 0) continue;
    auto p = rational_sqrt(u);
    if (!p) continue;
    return std::make_pair(*p, b / (2 * *p));
  }
  return std::nullopt;
}

} // namespace

std::optional<XQ> xq_sqrt(const XQ& x) {
  const int s = exact_sign(x);
  if (s < 0) return std::nullopt;
  if (s == 0) return XQ(0);
  const auto c = xq_components(x);
  const bool have[4] = {exact_sign(c[0]) != 0, exact_sign(c[1]) != 0,
                        exact_sign(c[2]) != 0, exact_sign(c[3]) != 0};
  if (!have[1] && !have[2] && !have[3]) {
    // Rational value: q, q*sqrt2, q*sqrt3 or q*sqrt6.
    if (auto r = rational_sqrt(c[0])) return XQ(Q2(*r));
    if (auto r = rational_sqrt(c[0] / 2)) return XQ(Q2(*r)) * xq_sqrt2();
    if (auto r = rational_sqrt(c[0] / 3)) return XQ(Q2(*r)) * xq_sqrt3();
    if (auto r = rational_sqrt(c[0] / 6)) return XQ(Q2(*r)) * xq_sqrt6();
    return std::nullopt;
  }
  struct Slot {
    int idx;
    int d;
    XQ root;
  };
  const Slot slots[3] = {
      {1, 2, xq_sqrt2()}, {2, 3, xq_sqrt3()}, {3, 6, xq_sqrt6()}};
  for (const auto& slot : slots) {
    bool pure = have[slot.idx];
    for (int i = 1; i < 4 && pure; ++i)
      if (i != slot.idx && have[i]) pure = false;
    if (!pure) continue;
    if (auto pq = sqrt_in_quad(c[0], c[slot.idx], slot.d))
      return XQ(Q2(pq->first)) + XQ(Q2(pq->second)) * slot.root;
    return std::nullopt;
  }
  return std::nullopt;  // genuinely mixed over the basis
}

} // namespace orbitface
