#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/gmp.hpp>

#include "orbitface/common.hpp"

namespace orbitface {

/// Exact rational scalar.  GMP-backed, always in lowest terms.
using Rat = boost::multiprecision::mpq_rational;

int exact_sign(const Rat& x);
double to_double(const Rat& x);

/// Real quadratic extension Base[sqrt(D)].  A value is a + b*sqrt(D), ordered
/// as a real number.  Sign evaluation is exact and never leaves the field.
template <class Base, int D>
class QuadExt {
public:
  QuadExt() : a_(0), b_(0) {}
  QuadExt(int v) : a_(v), b_(0) {}
  QuadExt(long v) : a_(v), b_(0) {}
  QuadExt(const Base& a) : a_(a), b_(0) {}
  QuadExt(Base a, Base b) : a_(std::move(a)), b_(std::move(b)) {}

  /// The adjoined root: 0 + 1*sqrt(D).
  static QuadExt root() { return QuadExt(Base(0), Base(1)); }

  const Base& a() const { return a_; }
  const Base& b() const { return b_; }

  bool is_zero() const { return exact_sign(a_) == 0 && exact_sign(b_) == 0; }

  QuadExt operator-() const { return QuadExt(-a_, -b_); }

  QuadExt& operator+=(const QuadExt& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  QuadExt& operator-=(const QuadExt& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  QuadExt& operator*=(const QuadExt& o) {
    Base na = a_ * o.a_ + Base(D) * b_ * o.b_;
    Base nb = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
  }
  QuadExt& operator/=(const QuadExt& o) {
    // 1/(a+b r) = (a-b r)/(a^2 - D b^2); the norm is nonzero for o != 0
    // because sqrt(D) is irrational over Base.
    Base n = o.a_ * o.a_ - Base(D) * o.b_ * o.b_;
    if (exact_sign(n) == 0) throw ContractError("division by zero scalar");
    Base na = (a_ * o.a_ - Base(D) * b_ * o.b_) / n;
    Base nb = (b_ * o.a_ - a_ * o.b_) / n;
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
  }

  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }

  /// Exact sign of a + b*sqrt(D) as a real number.
  int sign() const {
    int sa = exact_sign(a_);
    int sb = exact_sign(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: |a| vs |b| sqrt(D) decides, so square both sides.
    int sq = exact_sign(a_ * a_ - Base(D) * b_ * b_);
    return sa * sq;
  }

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    return (x - y).is_zero();
  }
  friend bool operator!=(const QuadExt& x, const QuadExt& y) {
    return !(x == y);
  }
  friend bool operator<(const QuadExt& x, const QuadExt& y) {
    return (x - y).sign() < 0;
  }
  friend bool operator>(const QuadExt& x, const QuadExt& y) { return y < x; }
  friend bool operator<=(const QuadExt& x, const QuadExt& y) {
    return !(y < x);
  }
  friend bool operator>=(const QuadExt& x, const QuadExt& y) {
    return !(x < y);
  }

private:
  Base a_, b_;
};

template <class Base, int D>
int exact_sign(const QuadExt<Base, D>& x) {
  return x.sign();
}

template <class Base, int D>
double to_double(const QuadExt<Base, D>& x) {
  static const double r = std::sqrt(double(D));
  return to_double(x.a()) + r * to_double(x.b());
}

/// The exact scalar used by the engine: Q(sqrt(2), sqrt(3)), the smallest
/// field containing every coordinate appearing in the bundled group models
/// (dihedral vertex sets up to order 24 and the scaled symmetric-matrix
/// coordinates).
using Q2 = QuadExt<Rat, 2>;
using XQ = QuadExt<Q2, 3>;

XQ xq_sqrt2();
XQ xq_sqrt3();
XQ xq_sqrt6();
XQ xq_half();

XQ abs_val(const XQ& x);

/// Components over the basis (1, sqrt2, sqrt3, sqrt6).
std::array<Rat, 4> xq_components(const XQ& x);
XQ xq_from_components(const std::array<Rat, 4>& c);

bool is_rational(const XQ& x);
Rat rational_part(const XQ& x);

/// Canonical text form: "p/q" (or "p" when the denominator is 1) for rational
/// values, otherwise four rational components joined by '|' in the order
/// (1, sqrt2, sqrt3, sqrt6).
std::string format_exact(const XQ& x);
std::string format_exact(const Rat& x);

/// Parses the forms produced by format_exact plus plain integers and finite
/// decimal literals ("-3", "5/2", "0.25", "1/2|0|-1|0").  Throws InputError.
XQ parse_exact(const std::string& text);
Rat parse_rational(const std::string& text);

/// Best rational approximation with denominator at most max_den (continued
/// fractions).  Returns nothing when even the best candidate misses x by more
/// than tol.  Used to promote numerically recovered symmetry data to exact
/// arithmetic; promoted values are always re-validated exactly.
std::optional<Rat> snap_rational(double x, long max_den, double tol);

/// Exact square root of a nonnegative rational, when it is rational.
std::optional<Rat> rational_sqrt(const Rat& x);

/// Exact square root within the field, when one exists there.  Handles
/// rational multiples of 1, sqrt2, sqrt3, sqrt6 and values living in a single
/// quadratic subfield (e.g. 3+2*sqrt2 -> 1+sqrt2); returns nothing otherwise.
std::optional<XQ> xq_sqrt(const XQ& x);

/// Numeric tolerances shared across the floating-point backend.  Exact-mode
/// code never consults them.
struct ScalarPolicy {
  double abs_tol = 1e-9;     // rank / membership / residual threshold
  double dedupe_tol = 1e-8;  // point identification when deduplicating
};

} // namespace orbitface
