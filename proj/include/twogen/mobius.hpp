#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twogen/classify.hpp"
#include "twogen/orders.hpp"
#include "twogen/traces.hpp"

namespace twogen {

// Value-type 2x2 complex matrix acting as a Mobius transformation.
struct Mobius {
  complexd a{1.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{1.0, 0.0};

  complexd det() const { return a * d - b * c; }
  complexd tr() const { return a + d; }

  Mobius operator*(const Mobius& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d,
            c * o.a + d * o.c, c * o.b + d * o.d};
  }

  Mobius inverse() const {
    complexd dt = det();
    return {d / dt, -b / dt, -c / dt, a / dt};
  }

  // Rescale onto the unit-determinant representative (principal branch).
  Mobius normalized() const {
    complexd s = std::sqrt(det());
    return {a / s, b / s, c / s, d / s};
  }

  double max_abs() const {
    return std::max(std::max(std::abs(a), std::abs(b)),
                    std::max(std::abs(c), std::abs(d)));
  }

  // Distance to the nearer of +o and -o, entrywise.
  double projective_distance(const Mobius& o) const {
    auto dist = [&](double sgn) {
      return std::max(std::max(std::abs(a - sgn * o.a), std::abs(b - sgn * o.b)),
                      std::max(std::abs(c - sgn * o.c), std::abs(d - sgn * o.d)));
    };
    return std::min(dist(1.0), dist(-1.0));
  }

  bool is_identity_projective(double tol = 1e-9) const {
    return projective_distance(Mobius{}) <= tol;
  }
};

struct MobiusPair {
  Mobius f, g;
};

inline ParameterPoint params_of(const MobiusPair& pair) {
  Mobius f = pair.f.normalized();
  Mobius g = pair.g.normalized();
  Mobius comm = (f * g * f.inverse() * g.inverse()).normalized();
  ParameterPoint p;
  p.beta = f.tr() * f.tr() - 4.0;
  p.beta2 = g.tr() * g.tr() - 4.0;
  p.gamma = comm.tr() - 2.0;
  return p;
}

// Elliptic strip pair: f a rotation with beta = -4 sin^2(q pi / n), g
// parabolic; gamma(tau) = c^2 tau^2 with c the lower-left entry of f, so
// c = -sin gives +sin^2 tau^2 and c = i sin gives -sin^2 tau^2. The
// negative branch keeps det f = cos^2 - (i sin)^2 = 1 by using i sin for
// both off-diagonal entries.
inline MobiusPair realize_strip(int n, int q, double tau,
                                bool negative_gamma = false) {
  if (n < 2 || q < 1 || 2 * q > n)
    throw std::invalid_argument("invalid rotation indices");
  double x = std::cos(q * kPi / n);
  double s = std::sin(q * kPi / n);
  complexd is(0.0, s);
  Mobius f = negative_gamma ? Mobius{-x, is, is, -x} : Mobius{-x, s, -s, -x};
  Mobius g{-1.0, tau, 0.0, -1.0};
  return {f, g};
}

// Strip pair hitting a requested gamma, solving for tau.
inline MobiusPair realize_strip_gamma(int n, int q, double gamma) {
  double s = std::sin(q * kPi / n);
  double tau = std::sqrt(std::abs(gamma)) / s;
  return realize_strip(n, q, tau, gamma < 0.0);
}

// Universal trace-normalized pair with g = [[1,1],[0,1]]: beta(f) = beta
// and gamma(f, g) = gamma exactly, for any gamma != 0.
inline MobiusPair realize_fricke(complexd beta, complexd gamma) {
  complexd t = std::sqrt(beta + 4.0);
  complexd c = std::sqrt(gamma);
  Mobius f{t / 2.0, (t * t / 4.0 - 1.0) / c, c, t / 2.0};
  Mobius g{1.0, 1.0, 0.0, 1.0};
  return {f, g};
}

// Parabolic row pair (beta = 0). Positive gamma uses the two-parabolic
// normalization with gamma = tau^2; negative gamma falls back to the
// trace-normalized pair.
inline MobiusPair realize_parabolic_pair(double gamma) {
  if (gamma > 0.0) {
    double tau = std::sqrt(gamma);
    Mobius f{-1.0, 0.0, -1.0, -1.0};
    Mobius g{-1.0, tau, 0.0, -1.0};
    return {f, g};
  }
  return realize_fricke(0.0, gamma);
}

// Hyperbolic f with parabolic g: tr(f g^k) = sqrt(beta+4) - k sqrt(gamma).
inline MobiusPair realize_hyp(double beta, double gamma) {
  if (!(beta > 0.0) || !(gamma > 0.0))
    throw std::invalid_argument("needs beta > 0 and gamma > 0");
  double a = std::sqrt(beta + 4.0) / 2.0;
  double b = -std::sqrt(a * a - 1.0);
  double tau = std::sqrt(gamma) / -b;
  Mobius f{a, b, b, a};
  Mobius g{1.0, tau, 0.0, 1.0};
  return {f, g};
}

// Pi-loxodromic f (imaginary trace) with parabolic g:
// tr(f g^k) = i (sqrt(-beta-4) - k sqrt(-gamma)).
inline MobiusPair realize_lox(double beta, double gamma) {
  if (!(beta < -4.0) || !(gamma < 0.0))
    throw std::invalid_argument("needs beta < -4 and gamma < 0");
  double a = std::sqrt(-beta - 4.0) / 2.0;
  double b = -std::sqrt(a * a + 1.0);
  double tau = std::sqrt(-gamma) / -b;
  const complexd i{0.0, 1.0};
  Mobius f{i * a, i * b, i * b, i * a};
  Mobius g{1.0, tau, 0.0, 1.0};
  return {f, g};
}

// Full classification of a single transformation, with elliptic rotation
// recognition bounded by n_max.
struct MobiusClass {
  enum class Kind {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
    PiLoxodromic,
    StrictlyLoxodromic,
  };
  Kind kind = Kind::Identity;
  std::optional<std::pair<int, int>> rotation;  // (n, q), reduced, q/n <= 1/2
  bool primitive = false;
  // Elliptic with no rotation match, but the angle sits in the gap where a
  // primitive order beyond n_max could hide.
  bool near_order_frontier = false;
  complexd trace{2.0, 0.0};

  std::string str() const {
    switch (kind) {
      case Kind::Identity: return "identity";
      case Kind::Parabolic: return "parabolic";
      case Kind::Hyperbolic: return "hyperbolic";
      case Kind::PiLoxodromic: return "pi-loxodromic";
      case Kind::StrictlyLoxodromic: return "strictly-loxodromic";
      case Kind::Elliptic:
        if (!rotation) return "elliptic(?)";
        if (primitive) return "elliptic(" + std::to_string(rotation->first) + ")";
        return "elliptic(" + std::to_string(rotation->first) + "," +
               std::to_string(rotation->second) + ")";
    }
    return "identity";
  }
};

inline MobiusClass classify_mobius(const Mobius& m, int n_max = 200,
                                   double tol = 1e-9) {
  Mobius mn = m.normalized();
  MobiusClass out;
  out.trace = mn.tr();
  if (mn.is_identity_projective(tol)) {
    out.kind = MobiusClass::Kind::Identity;
    return out;
  }
  complexd beta = mn.tr() * mn.tr() - 4.0;
  switch (classify_element(beta, tol)) {
    case ElementClass::Parabolic:
      out.kind = MobiusClass::Kind::Parabolic;
      break;
    case ElementClass::Hyperbolic:
      out.kind = MobiusClass::Kind::Hyperbolic;
      break;
    case ElementClass::PiLoxodromic:
      out.kind = MobiusClass::Kind::PiLoxodromic;
      break;
    case ElementClass::StrictlyLoxodromic:
      out.kind = MobiusClass::Kind::StrictlyLoxodromic;
      break;
    case ElementClass::Elliptic: {
      out.kind = MobiusClass::Kind::Elliptic;
      out.rotation = recognize_elliptic_beta(beta, n_max, tol);
      if (out.rotation) {
        out.primitive = out.rotation->second == 1;
      } else {
        out.near_order_frontier = elliptic_beta_near_frontier(beta, n_max, tol);
      }
      break;
    }
  }
  return out;
}

// Square roots in the projective group: a generic element has two (one
// squaring to +m, one to -m, which coincide projectively with roots of m);
// a parabolic has exactly one.
inline std::vector<Mobius> sqrt_in_psl(const Mobius& m, double tol = 1e-9) {
  Mobius mn = m.normalized();
  if (mn.is_identity_projective(tol))
    throw std::invalid_argument("identity has infinitely many square roots");
  complexd t = mn.tr();
  const Mobius id{};
  auto shifted = [&](double sgn, complexd denom) {
    return Mobius{(mn.a + sgn * id.a) / denom, mn.b / denom,
                  mn.c / denom, (mn.d + sgn * id.d) / denom};
  };
  std::vector<Mobius> roots;
  if (std::abs(t - 2.0) <= tol) {
    roots.push_back(shifted(1.0, std::sqrt(t + 2.0)));
    return roots;
  }
  if (std::abs(t + 2.0) <= tol) {
    roots.push_back(shifted(-1.0, std::sqrt(2.0 - t)));
    return roots;
  }
  roots.push_back(shifted(1.0, std::sqrt(t + 2.0)));
  roots.push_back(shifted(-1.0, std::sqrt(2.0 - t)));
  return roots;
}

namespace detail {

// Root of m whose product with sel is an involution (trace zero); the
// defining condition singles out exactly one root.
inline Mobius involution_selected_root(const Mobius& m, const Mobius& sel,
                                       const char* what) {
  Mobius best;
  double best_val = -1.0;
  for (const Mobius& h : sqrt_in_psl(m)) {
    double val = std::abs((h * sel).tr());
    if (best_val < 0.0 || val < best_val) {
      best_val = val;
      best = h;
    }
  }
  if (best_val < 0.0 || best_val > 1e-6)
    throw std::runtime_error(std::string("no involution-compatible root for ") + what);
  return best;
}

}  // namespace detail

// h1: the square root of f g^-1 f^-1 g^-1 with (h1 g)^2 = 1.
inline Mobius compute_h1(const MobiusPair& pair) {
  Mobius f = pair.f.normalized();
  Mobius g = pair.g.normalized();
  Mobius m1 = (f * g.inverse() * f.inverse() * g.inverse()).normalized();
  return detail::involution_selected_root(m1, g, "h1");
}

// h2: the square root of f^-1 g^-1 f^2 g f^-1 with (h2 f g^-1 f^-1)^2 = 1.
inline Mobius compute_h2(const MobiusPair& pair) {
  Mobius f = pair.f.normalized();
  Mobius g = pair.g.normalized();
  Mobius m2 = (f.inverse() * g.inverse() * f * f * g * f.inverse()).normalized();
  Mobius sel = (f * g.inverse() * f.inverse()).normalized();
  return detail::involution_selected_root(m2, sel, "h2");
}

// Discreteness decision for beta < -4, gamma > 0 taken on the matrices
// themselves: h1 must be hyperbolic, parabolic, or primitive elliptic of
// even order >= 4 (then h2 hyperbolic/parabolic/primitive of order >= 3),
// or primitive elliptic of odd order >= 3 (then the same requirement moves
// to h2 h1).
struct VerifyCriterionResult {
  Verdict verdict = Verdict::NotDiscrete;
  MobiusClass h1_class, h2_class, h2h1_class;
  int condition = 0;  // 1 = even/infinite branch, 2 = odd branch
};

inline VerifyCriterionResult verify_criterion_psl(const MobiusPair& pair,
                                                  const ClassifyConfig& cfg = {}) {
  VerifyCriterionResult out;
  Mobius h1 = compute_h1(pair);
  Mobius h2 = compute_h2(pair);
  out.h1_class = classify_mobius(h1, cfg.n_max, cfg.tol);
  out.h2_class = classify_mobius(h2, cfg.n_max, cfg.tol);
  out.h2h1_class = classify_mobius((h2 * h1).normalized(), cfg.n_max, cfg.tol);

  using K = MobiusClass::Kind;
  auto admissible_partner = [](const MobiusClass& c, int min_order) {
    if (c.kind == K::Hyperbolic || c.kind == K::Parabolic) return true;
    return c.kind == K::Elliptic && c.rotation && c.primitive &&
           c.rotation->first >= min_order;
  };
  auto partner_verdict = [&](const MobiusClass& c, int min_order) {
    if (admissible_partner(c, min_order)) return Verdict::Discrete;
    if (c.kind == K::Elliptic && !c.rotation && c.near_order_frontier)
      return Verdict::Indeterminate;
    return Verdict::NotDiscrete;
  };

  const MobiusClass& c1 = out.h1_class;
  if (c1.kind == K::Hyperbolic || c1.kind == K::Parabolic ||
      (c1.kind == K::Elliptic && c1.rotation && c1.primitive &&
       c1.rotation->first % 2 == 0 && c1.rotation->first >= 4)) {
    out.condition = 1;
    out.verdict = partner_verdict(out.h2_class, 3);
  } else if (c1.kind == K::Elliptic && c1.rotation && c1.primitive &&
             c1.rotation->first % 2 == 1 && c1.rotation->first >= 3) {
    out.condition = 2;
    out.verdict = partner_verdict(out.h2h1_class, 3);
  } else if (c1.kind == K::Elliptic && !c1.rotation && c1.near_order_frontier) {
    out.verdict = Verdict::Indeterminate;
  } else {
    out.verdict = Verdict::NotDiscrete;
  }
  return out;
}

// Left side of the two-generator discreteness inequality |beta| + |gamma|;
// discrete non-elementary groups satisfy value >= 1.
inline double jorgensen_check(complexd beta, complexd gamma) {
  return std::abs(beta) + std::abs(gamma);
}

}  // namespace twogen
