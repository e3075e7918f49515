#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace twogen {

using complexd = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Order of a group element on the extended scale: a finite integer n >= 2,
// plain infinity (written "inf", the parabolic case), or marked infinity
// (written "infbar", the hyperbolic case).
class ExtendedOrder {
 public:
  enum class Kind { Finite, Inf, InfBar };

  static ExtendedOrder finite(int n) {
    if (n < 2) throw std::invalid_argument("finite order must be >= 2");
    return ExtendedOrder(Kind::Finite, n);
  }
  static ExtendedOrder inf() { return ExtendedOrder(Kind::Inf, 0); }
  static ExtendedOrder inf_bar() { return ExtendedOrder(Kind::InfBar, 0); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  int value() const {
    if (!is_finite()) throw std::logic_error("infinite order has no value");
    return n_;
  }

  bool is_odd() const { return is_finite() && n_ % 2 == 1; }
  // True for even finite orders and for both infinities.
  bool is_even_or_infinite() const { return !is_odd(); }

  // Exact division: Finite(n)/d requires d | n and n/d >= 2; infinities
  // absorb division by any positive d.
  std::optional<ExtendedOrder> divided_by(int d) const {
    if (d <= 0) return std::nullopt;
    if (!is_finite()) return *this;
    if (n_ % d != 0 || n_ / d < 2) return std::nullopt;
    return finite(n_ / d);
  }
  ExtendedOrder halved() const {
    auto h = divided_by(2);
    if (!h) throw std::logic_error("order not divisible by two");
    return *h;
  }

  std::string str() const {
    switch (kind_) {
      case Kind::Inf: return "inf";
      case Kind::InfBar: return "infbar";
      default: return std::to_string(n_);
    }
  }

  friend bool operator==(const ExtendedOrder& a, const ExtendedOrder& b) {
    return a.kind_ == b.kind_ && a.n_ == b.n_;
  }

 private:
  ExtendedOrder(Kind k, int n) : kind_(k), n_(n) {}
  Kind kind_;
  int n_;
};

// Translation half-length parameter of an element axis: i*pi/p for a
// rotation of order p >= 2, zero for a parabolic, or a real d > 0 for a
// hyperbolic translation.
struct HalfLength {
  enum class Kind { Elliptic, Parabolic, Hyperbolic };
  Kind kind = Kind::Parabolic;
  int p = 0;
  double d = 0.0;

  static HalfLength elliptic(int p) {
    if (p < 2) throw std::invalid_argument("elliptic half-length needs p >= 2");
    HalfLength u;
    u.kind = Kind::Elliptic;
    u.p = p;
    return u;
  }
  static HalfLength parabolic() { return HalfLength{}; }
  static HalfLength hyperbolic(double d) {
    if (!(d > 0.0)) throw std::invalid_argument("hyperbolic half-length needs d > 0");
    HalfLength u;
    u.kind = Kind::Hyperbolic;
    u.d = d;
    return u;
  }

  double cosh_u() const {
    switch (kind) {
      case Kind::Elliptic: return std::cos(kPi / p);
      case Kind::Parabolic: return 1.0;
      default: return std::cosh(d);
    }
  }

  ExtendedOrder t() const {
    switch (kind) {
      case Kind::Elliptic: return ExtendedOrder::finite(p);
      case Kind::Parabolic: return ExtendedOrder::inf();
      default: return ExtendedOrder::inf_bar();
    }
  }

  std::string str() const;

  friend bool operator==(const HalfLength& a, const HalfLength& b) {
    return a.kind == b.kind && a.p == b.p && a.d == b.d;
  }
};

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string HalfLength::str() const {
  switch (kind) {
    case Kind::Elliptic: return "pi/" + std::to_string(p);
    case Kind::Parabolic: return "par";
    default: return "hyp:" + format_double(d);
  }
}

// Conjugacy parameters of a two-generator pair: beta = tr^2 f - 4,
// beta2 = tr^2 g - 4, gamma = tr[f,g] - 2.
struct ParameterPoint {
  complexd beta{0.0, 0.0};
  complexd beta2{0.0, 0.0};
  complexd gamma{0.0, 0.0};
};

// Coarse type of a Mobius transformation read off from beta = tr^2 - 4.
enum class ElementClass {
  Elliptic,
  Parabolic,
  Hyperbolic,
  PiLoxodromic,
  StrictlyLoxodromic,
};

inline std::string to_string(ElementClass c) {
  switch (c) {
    case ElementClass::Elliptic: return "elliptic";
    case ElementClass::Parabolic: return "parabolic";
    case ElementClass::Hyperbolic: return "hyperbolic";
    case ElementClass::PiLoxodromic: return "pi-loxodromic";
    default: return "strictly-loxodromic";
  }
}

inline ElementClass classify_element(complexd beta, double tol = 1e-9) {
  if (std::abs(beta.imag()) > tol) return ElementClass::StrictlyLoxodromic;
  double b = beta.real();
  if (std::abs(b) <= tol) return ElementClass::Parabolic;
  if (b > 0.0) return ElementClass::Hyperbolic;
  if (b >= -4.0 - tol) return ElementClass::Elliptic;
  return ElementClass::PiLoxodromic;
}

// Matches beta against -4 sin^2(q pi / n) over reduced fractions q/n in
// (0, 1/2], n <= n_max, returning the smallest matching n. A match means
// the element is elliptic of order n rotating by 2 pi q / n; q == 1 is the
// primitive rotation.
inline std::optional<std::pair<int, int>> recognize_elliptic_beta(
    complexd beta, int n_max = 200, double tol = 1e-9) {
  if (std::abs(beta.imag()) > tol) return std::nullopt;
  double b = beta.real();
  if (b > -tol || b < -4.0 - tol) return std::nullopt;
  for (int n = 2; n <= n_max; ++n) {
    for (int q = 1; 2 * q <= n; ++q) {
      if (std::gcd(q, n) != 1) continue;
      double s = std::sin(q * kPi / n);
      if (std::abs(b + 4.0 * s * s) <= tol) return std::make_pair(n, q);
    }
  }
  return std::nullopt;
}

// True when beta failed elliptic recognition but lies in the primitive
// accumulation gap (-4 sin^2(pi/n_max), 0), where an order n > n_max
// primitive rotation could still match.
inline bool elliptic_beta_near_frontier(complexd beta, int n_max = 200,
                                        double tol = 1e-9) {
  if (std::abs(beta.imag()) > tol) return false;
  double b = beta.real();
  double s = std::sin(kPi / n_max);
  return b > -4.0 * s * s + tol && b < -tol;
}

enum class CoshForm { Cosh, CoshSquared };

// Matches x against the admissible half-length values: cos(pi/p) (or its
// square) for p <= p_max, 1 for parabolic, anything beyond 1 hyperbolic.
inline std::optional<HalfLength> recognize_half_length(double x, CoshForm form,
                                                       int p_max = 200,
                                                       double tol = 1e-9) {
  if (!std::isfinite(x)) return std::nullopt;
  if (std::abs(x - 1.0) <= tol) return HalfLength::parabolic();
  if (x > 1.0) {
    double c = form == CoshForm::Cosh ? x : std::sqrt(x);
    return HalfLength::hyperbolic(std::acosh(c));
  }
  for (int p = 2; p <= p_max; ++p) {
    double c = std::cos(kPi / p);
    double target = form == CoshForm::Cosh ? c : c * c;
    if (std::abs(x - target) <= tol) return HalfLength::elliptic(p);
  }
  return std::nullopt;
}

// True when x failed half-length recognition but lies strictly between the
// largest p <= p_max elliptic value and the parabolic limit 1, where an
// elliptic match with p > p_max could still exist.
inline bool half_length_near_frontier(double x, CoshForm form, int p_max = 200,
                                      double tol = 1e-9) {
  double c = std::cos(kPi / p_max);
  double top = form == CoshForm::Cosh ? c : c * c;
  return x > top + tol && x < 1.0 - tol;
}

// Rescaling constant C(q, n) = sin^2(q pi / n) / sin^2(pi / n) between the
// primitive and non-primitive elliptic rows; extends to 1 at n = inf.
inline double c_constant(int q, const ExtendedOrder& n) {
  if (q < 1) throw std::invalid_argument("q must be >= 1");
  switch (n.kind()) {
    case ExtendedOrder::Kind::Inf:
      if (q != 1) throw std::invalid_argument("infinite order requires q = 1");
      return 1.0;
    case ExtendedOrder::Kind::InfBar:
      throw std::invalid_argument("no rescaling constant at marked infinity");
    default: {
      int nv = n.value();
      if (2 * q > nv) throw std::invalid_argument("q/n must be at most 1/2");
      double sq = std::sin(q * kPi / nv);
      double s1 = std::sin(kPi / nv);
      return (sq * sq) / (s1 * s1);
    }
  }
}

}  // namespace twogen
