#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "twogen/orders.hpp"
#include "twogen/traces.hpp"

namespace twogen {

enum class Verdict { Discrete, NotDiscrete, Indeterminate, OutOfDomain };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Discrete: return "Discrete";
    case Verdict::NotDiscrete: return "NotDiscrete";
    case Verdict::Indeterminate: return "Indeterminate";
    default: return "OutOfDomain";
  }
}

// One tag per discrete family: quadrant plus the matching criterion item.
enum class CaseTag {
  EllStrip1,
  EllStrip2,
  EllStrip3,
  HypNegGamma,
  HypPos1,
  HypPos2,
  HypPos3,
  LoxNeg1,
  LoxNeg2,
  LoxNeg3,
  LoxPosEven,
  LoxPosOdd,
};

inline std::string to_string(CaseTag t) {
  switch (t) {
    case CaseTag::EllStrip1: return "EllStrip1";
    case CaseTag::EllStrip2: return "EllStrip2";
    case CaseTag::EllStrip3: return "EllStrip3";
    case CaseTag::HypNegGamma: return "HypNegGamma";
    case CaseTag::HypPos1: return "HypPos1";
    case CaseTag::HypPos2: return "HypPos2";
    case CaseTag::HypPos3: return "HypPos3";
    case CaseTag::LoxNeg1: return "LoxNeg1";
    case CaseTag::LoxNeg2: return "LoxNeg2";
    case CaseTag::LoxNeg3: return "LoxNeg3";
    case CaseTag::LoxPosEven: return "LoxPosEven";
    default: return "LoxPosOdd";
  }
}

inline std::optional<CaseTag> case_tag_from_string(const std::string& s) {
  static const std::pair<const char*, CaseTag> table[] = {
      {"EllStrip1", CaseTag::EllStrip1},   {"EllStrip2", CaseTag::EllStrip2},
      {"EllStrip3", CaseTag::EllStrip3},   {"HypNegGamma", CaseTag::HypNegGamma},
      {"HypPos1", CaseTag::HypPos1},       {"HypPos2", CaseTag::HypPos2},
      {"HypPos3", CaseTag::HypPos3},       {"LoxNeg1", CaseTag::LoxNeg1},
      {"LoxNeg2", CaseTag::LoxNeg2},       {"LoxNeg3", CaseTag::LoxNeg3},
      {"LoxPosEven", CaseTag::LoxPosEven}, {"LoxPosOdd", CaseTag::LoxPosOdd},
  };
  for (const auto& [name, tag] : table)
    if (s == name) return tag;
  return std::nullopt;
}

// Everything needed to reconstruct the matched discrete point exactly:
// half-lengths u (gamma side) and v (beta side), the elliptic row (n, q),
// the word index k, an isolated-point order p, and the parabola branch sign.
struct WitnessSet {
  std::optional<HalfLength> u;
  std::optional<HalfLength> v;
  std::optional<int> n;
  std::optional<int> q;
  std::optional<int> k;
  std::optional<int> p;
  std::optional<char> sign;
};

struct FreeRegionId {
  char tag = 'A';  // 'A', 'B', 'C', or 'D'
  int k = 0;       // band index for C and D

  std::string str() const {
    std::string s(1, tag);
    if (tag == 'C' || tag == 'D') s += std::to_string(k);
    return s;
  }
  friend bool operator==(const FreeRegionId&, const FreeRegionId&) = default;
};

// Free-region membership with priority A, B, then C_k and D_k by ascending k.
inline std::optional<FreeRegionId> free_region(double beta, double gamma) {
  if (gamma <= -4.0 && beta >= 0.0) return FreeRegionId{'A', 0};
  if (gamma >= 4.0 && beta + 4.0 <= -4.0 / gamma) return FreeRegionId{'B', 0};
  if (gamma >= 16.0) {
    double r = std::sqrt(gamma);
    int k_hi = static_cast<int>(std::floor((std::sqrt(std::max(0.0, beta + 4.0)) + 2.0) / r)) + 2;
    for (int k = 1; k <= k_hi; ++k) {
      double lo = (k - 1) * r + 2.0;
      double hi = k * r - 2.0;
      if (lo * lo <= beta + 4.0 && beta + 4.0 <= hi * hi) return FreeRegionId{'C', k};
    }
  }
  if (gamma <= -16.0) {
    double s = std::sqrt(-gamma);
    double w = std::sqrt(-gamma - 16.0);
    int k_hi = static_cast<int>(std::floor((2.0 * std::sqrt(std::max(0.0, -beta - 4.0)) / s + 1.0) / 2.0)) + 2;
    for (int k = 1; k <= k_hi; ++k) {
      double lo = (2 * k - 1) * s + w;
      double hi = (2 * k - 1) * s - w;
      if (-lo * lo / 4.0 <= beta + 4.0 && beta + 4.0 <= -hi * hi / 4.0)
        return FreeRegionId{'D', k};
    }
  }
  return std::nullopt;
}

struct ClassifyConfig {
  double tol = 1e-9;
  int n_max = 200;
  int p_max = 200;
  int k_max = 8;
};

struct ClassifyResult {
  Verdict verdict = Verdict::NotDiscrete;
  std::optional<CaseTag> tag;
  WitnessSet w;
  // Set when the input matched a curve through the tolerance rather than
  // reproducing the witness point to working precision.
  bool within_tol = false;
  std::optional<FreeRegionId> region;
  double beta_witness = 0.0;
  double gamma_witness = 0.0;
};

namespace detail {

inline double tol_scaled(double tol, double ref) {
  return tol * std::max(1.0, std::abs(ref));
}

inline ClassifyResult discrete_result(CaseTag tag, WitnessSet w, double beta_in,
                                      double gamma_in, double beta_wit,
                                      double gamma_wit) {
  ClassifyResult r;
  r.verdict = Verdict::Discrete;
  r.tag = tag;
  r.w = std::move(w);
  r.beta_witness = beta_wit;
  r.gamma_witness = gamma_wit;
  double drift = std::max(std::abs(beta_in - beta_wit), std::abs(gamma_in - gamma_wit));
  r.within_tol = drift > 1e-12 * std::max({1.0, std::abs(beta_wit), std::abs(gamma_wit)});
  return r;
}

inline ClassifyResult verdict_only(Verdict v) {
  ClassifyResult r;
  r.verdict = v;
  return r;
}

// Ceiling-index candidates around x, each at least 1, ascending, covering
// float noise at integer boundaries.
inline std::vector<int> ceiling_candidates(double x) {
  int k0 = static_cast<int>(std::ceil(x));
  std::vector<int> ks;
  for (int k : {k0 - 1, k0, k0 + 1})
    if (k >= 1 && (ks.empty() || ks.back() != k)) ks.push_back(k);
  if (ks.empty()) ks.push_back(1);
  return ks;
}

}  // namespace detail

// Minimal k with tr(f g^k) <= 2 on the beta > 0, gamma > 0 quadrant,
// as a closed formula.
inline int ceiling_index_hyp(double beta, double gamma) {
  double k = std::ceil((std::sqrt(beta + 4.0) - 2.0) / std::sqrt(gamma));
  return std::max(1, static_cast<int>(k));
}

// Index k with k - 1 < sqrt(-beta-4)/sqrt(-gamma) <= k on the beta < -4,
// gamma < 0 quadrant.
inline int ceiling_index_lox(double beta, double gamma) {
  double k = std::ceil(std::sqrt(-beta - 4.0) / std::sqrt(-gamma));
  return std::max(1, static_cast<int>(k));
}

/// gamma-axis structure of one elliptic strip row: the ray ends
// gamma1 = -4 C(q,n) and gamma2 = 4 C(q,n) (cos(pi/n) + 1)^2.
struct StripGammaStructure {
  double gamma1;
  double gamma2;
};

inline StripGammaStructure strip_gamma_structure(int n, int q) {
  double c = c_constant(q, ExtendedOrder::finite(n));
  double top = std::cos(kPi / n) + 1.0;
  return {-4.0 * c, 4.0 * c * top * top};
}

// Elliptic strip -4 <= beta <= 0 (beta = 0 is the parabolic row n = inf).
// Items: (1) gamma = -4 C cosh^2 u with t(u) >= 3; (2) gamma =
// 4 C (cos(pi/n) + cosh u)^2 with u unrestricted; (3) beta = 0 only,
// gamma = 4 (1 + cos(2 pi/j))^2 for odd j >= 3.
inline ClassifyResult check_ell_strip(double beta, double gamma,
                                      const ClassifyConfig& cfg = {}) {
  const double tol = cfg.tol;
  bool parabolic_row = std::abs(beta) <= tol;
  double C = 1.0, cos_n = 1.0, beta_row = 0.0;
  std::optional<std::pair<int, int>> row;
  if (!parabolic_row) {
    row = recognize_elliptic_beta(beta, cfg.n_max, tol);
    if (!row) return detail::verdict_only(Verdict::NotDiscrete);
    C = c_constant(row->second, ExtendedOrder::finite(row->first));
    cos_n = std::cos(kPi / row->first);
    double s = std::sin(row->second * kPi / row->first);
    beta_row = -4.0 * s * s;
  }

  bool frontier = false;
  auto fill_row = [&](WitnessSet& w) {
    if (row) {
      w.n = row->first;
      w.q = row->second;
    }
  };

  if (gamma < 0.0) {
    double x = -gamma / (4.0 * C);
    auto u = recognize_half_length(x, CoshForm::CoshSquared, cfg.p_max, detail::tol_scaled(tol, x));
    if (u && !(u->kind == HalfLength::Kind::Elliptic && u->p < 3)) {
      WitnessSet w;
      fill_row(w);
      w.u = *u;
      double cu = u->cosh_u();
      return detail::discrete_result(CaseTag::EllStrip1, w, beta, gamma, beta_row,
                                     -4.0 * C * cu * cu);
    }
    frontier = frontier || half_length_near_frontier(x, CoshForm::CoshSquared, cfg.p_max, tol);
  } else {
    double y = std::sqrt(gamma / (4.0 * C)) - cos_n;
    if (y > -detail::tol_scaled(tol, 1.0)) {
      auto u = recognize_half_length(std::max(y, 0.0), CoshForm::Cosh, cfg.p_max, detail::tol_scaled(tol, 1.0));
      if (u) {
        WitnessSet w;
        fill_row(w);
        w.u = *u;
        double top = cos_n + u->cosh_u();
        return detail::discrete_result(CaseTag::EllStrip2, w, beta, gamma, beta_row,
                                       4.0 * C * top * top);
      }
      frontier = frontier || half_length_near_frontier(y, CoshForm::Cosh, cfg.p_max, tol);
    }
    if (parabolic_row) {
      double biggest = -1.0;
      for (int j = 3; j <= cfg.p_max; j += 2) {
        double c2 = 1.0 + std::cos(2.0 * kPi / j);
        double target = 4.0 * c2 * c2;
        biggest = target;
        if (std::abs(gamma - target) <= detail::tol_scaled(tol, target)) {
          WitnessSet w;
          w.p = j;
          return detail::discrete_result(CaseTag::EllStrip3, w, beta, gamma, 0.0, target);
        }
      }
      if (gamma > biggest + tol && gamma < 16.0 - tol) frontier = true;
    }
  }
  return detail::verdict_only(frontier ? Verdict::Indeterminate : Verdict::NotDiscrete);
}

// Quadrant beta > 0, gamma < 0: discrete exactly when -gamma/4 is
// cos^2(pi/p) for some p >= 3 or at least 1; beta is unconstrained.
inline ClassifyResult check_hyp_neg(double beta, double gamma,
                                    const ClassifyConfig& cfg = {}) {
  const double tol = cfg.tol;
  double x = -gamma / 4.0;
  auto u = recognize_half_length(x, CoshForm::CoshSquared, cfg.p_max, detail::tol_scaled(tol, x));
  if (u && !(u->kind == HalfLength::Kind::Elliptic && u->p < 3)) {
    WitnessSet w;
    w.u = *u;
    double cu = u->cosh_u();
    return detail::discrete_result(CaseTag::HypNegGamma, w, beta, gamma, beta,
                                   -4.0 * cu * cu);
  }
  bool frontier = half_length_near_frontier(x, CoshForm::CoshSquared, cfg.p_max, tol);
  return detail::verdict_only(frontier ? Verdict::Indeterminate : Verdict::NotDiscrete);
}

// Quadrant beta > 0, gamma > 0, driven by t_k = tr(f g^k) =
// sqrt(beta+4) - k sqrt(gamma) at the minimal k with t_k <= 2.
// Items: (1) t_k = 2 and gamma = 16 cosh^4 u with t(u) >= 3;
// (2) |t_k| < 2 with t_k = +-2 cos(q pi / n) and
// gamma = 4 C (cos(pi/n) + cosh u)^2; (3) t_k <= -2 with
// u = parabolic/hyperbolic at cosh u = -t_k / 2.
inline ClassifyResult check_hyp_fuchsian(double beta, double gamma,
                                         const ClassifyConfig& cfg = {}) {
  const double tol = cfg.tol;
  double s = std::sqrt(beta + 4.0);
  double r = std::sqrt(gamma);
  bool frontier = false;

  for (int k : detail::ceiling_candidates((s - 2.0) / r)) {
    double tk = s - k * r;
    if (tk > 2.0 + tol) continue;
    if (k >= 2 && s - (k - 1) * r <= 2.0 + tol) continue;

    if (std::abs(tk - 2.0) <= tol) {
      double c = std::pow(gamma / 16.0, 0.25);
      auto u = recognize_half_length(c, CoshForm::Cosh, cfg.p_max, detail::tol_scaled(tol, 1.0));
      if (u && !(u->kind == HalfLength::Kind::Elliptic && u->p < 3)) {
        WitnessSet w;
        w.k = k;
        w.u = *u;
        double cu = u->cosh_u();
        double gw = 16.0 * cu * cu * cu * cu;
        double sw = k * std::sqrt(gw) + 2.0;
        return detail::discrete_result(CaseTag::HypPos1, w, beta, gamma, sw * sw - 4.0, gw);
      }
      frontier = frontier || half_length_near_frontier(c, CoshForm::Cosh, cfg.p_max, tol);
      continue;
    }

    if (tk > -2.0 + tol) {
      double beta_t = tk * tk - 4.0;
      auto rot = recognize_elliptic_beta(beta_t, cfg.n_max, detail::tol_scaled(tol, 1.0));
      if (!rot) {
        frontier = frontier || elliptic_beta_near_frontier(beta_t, cfg.n_max, tol);
        continue;
      }
      auto [n, q] = *rot;
      char sign = tk > tol ? '+' : (tk < -tol ? '-' : '+');
      if (n == 2) sign = '+';
      double C = c_constant(q, ExtendedOrder::finite(n));
      double cos_n = std::cos(kPi / n);
      double y = std::sqrt(gamma / (4.0 * C)) - cos_n;
      if (y <= -detail::tol_scaled(tol, 1.0)) continue;
      auto u = recognize_half_length(std::max(y, 0.0), CoshForm::Cosh, cfg.p_max, detail::tol_scaled(tol, 1.0));
      if (u) {
        WitnessSet w;
        w.k = k;
        w.n = n;
        w.q = q;
        w.sign = sign;
        w.u = *u;
        double top = cos_n + u->cosh_u();
        double gw = 4.0 * C * top * top;
        double tkw = (sign == '+' ? 2.0 : -2.0) * std::cos(q * kPi / n);
        double sw = k * std::sqrt(gw) + tkw;
        return detail::discrete_result(CaseTag::HypPos2, w, beta, gamma, sw * sw - 4.0, gw);
      }
      frontier = frontier || half_length_near_frontier(y, CoshForm::Cosh, cfg.p_max, tol);
      continue;
    }

    double c = -tk / 2.0;
    HalfLength u = std::abs(c - 1.0) <= tol ? HalfLength::parabolic()
                                            : HalfLength::hyperbolic(std::acosh(c));
    WitnessSet w;
    w.k = k;
    w.u = u;
    double sw = k * r - 2.0 * u.cosh_u();
    return detail::discrete_result(CaseTag::HypPos3, w, beta, gamma, sw * sw - 4.0, gamma);
  }
  return detail::verdict_only(frontier ? Verdict::Indeterminate : Verdict::NotDiscrete);
}

// Quadrant beta < -4, gamma < 0, driven by x = sqrt(-beta-4)/sqrt(-gamma)
// with k - 1 < x <= k. Items: (1) hyperbola branches
// -4(beta+4) = ((2k-1) sqrt(-gamma) +- R)^2, R^2 = -gamma - 8(1 + cosh u);
// (2) isolated points 4(beta+4) = (2k-1)^2 gamma with
// sqrt(-gamma)/4 = cos(pi/p), odd p >= 3; (3) lines beta = k^2 gamma - 4
// with sqrt(-gamma)/2 = cosh u, t(u) >= 3.
inline ClassifyResult check_lox_inv(double beta, double gamma,
                                    const ClassifyConfig& cfg = {}) {
  const double tol = cfg.tol;
  double ap = std::sqrt(-beta - 4.0);
  double gp = std::sqrt(-gamma);
  double x = ap / gp;
  bool frontier = false;

  for (int k : detail::ceiling_candidates(x)) {
    double R = std::abs(2.0 * ap - (2 * k - 1) * gp);
    double cu = (gp * gp - R * R) / 8.0 - 1.0;
    if (cu > -detail::tol_scaled(tol, 1.0)) {
      auto u = recognize_half_length(std::max(cu, 0.0), CoshForm::Cosh, cfg.p_max, detail::tol_scaled(tol, 1.0));
      if (u) {
        char sign = x >= k - 0.5 ? '+' : '-';
        double Rw2 = -gamma - 8.0 * (1.0 + u->cosh_u());
        if (Rw2 > -detail::tol_scaled(tol, 8.0)) {
          double Rw = std::sqrt(std::max(Rw2, 0.0));
          double tot = (2 * k - 1) * gp + (sign == '+' ? Rw : -Rw);
          WitnessSet w;
          w.k = k;
          w.u = *u;
          w.sign = sign;
          return detail::discrete_result(CaseTag::LoxNeg1, w, beta, gamma,
                                         -tot * tot / 4.0 - 4.0, gamma);
        }
      }
      frontier = frontier || half_length_near_frontier(cu, CoshForm::Cosh, cfg.p_max, tol);
    }

    for (int p = 3; p <= cfg.p_max; p += 2) {
      double cp = std::cos(kPi / p);
      double gw = -16.0 * cp * cp;
      if (std::abs(gamma - gw) > detail::tol_scaled(tol, gw)) continue;
      double bw = (2 * k - 1) * (2 * k - 1) * gw / 4.0 - 4.0;
      if (std::abs(beta - bw) <= detail::tol_scaled(tol, bw)) {
        WitnessSet w;
        w.k = k;
        w.p = p;
        return detail::discrete_result(CaseTag::LoxNeg2, w, beta, gamma, bw, gw);
      }
    }

    double bw_line = k * k * gamma - 4.0;
    if (std::abs(beta - bw_line) <= detail::tol_scaled(tol, bw_line)) {
      double c = gp / 2.0;
      auto u = recognize_half_length(c, CoshForm::Cosh, cfg.p_max, detail::tol_scaled(tol, 1.0));
      if (u && !(u->kind == HalfLength::Kind::Elliptic && u->p < 3)) {
        WitnessSet w;
        w.k = k;
        w.u = *u;
        double cuw = u->cosh_u();
        double gw = -4.0 * cuw * cuw;
        return detail::discrete_result(CaseTag::LoxNeg3, w, beta, gamma,
                                       k * k * gw - 4.0, gw);
      }
      frontier = frontier || half_length_near_frontier(c, CoshForm::Cosh, cfg.p_max, tol);
    }
  }
  return detail::verdict_only(frontier ? Verdict::Indeterminate : Verdict::NotDiscrete);
}

// Quadrant beta < -4, gamma > 0. Even item: sqrt(gamma)/2 in
// {cos(pi/p) : even p >= 4} or >= 1, and sqrt(-gamma(beta+4))/2 = cosh v
// with t(v) >= 3. Odd item: sqrt(gamma)/2 = cos(pi/m) for odd m >= 3, and
// sqrt(-beta-4)/2 = cosh v with t(v) >= 3.
inline ClassifyResult check_criterion_par(double beta, double gamma,
                                          const ClassifyConfig& cfg = {}) {
  const double tol = cfg.tol;
  double cu = std::sqrt(gamma) / 2.0;
  auto u = recognize_half_length(cu, CoshForm::Cosh, cfg.p_max, detail::tol_scaled(tol, 1.0));
  if (!u) {
    bool frontier = half_length_near_frontier(cu, CoshForm::Cosh, cfg.p_max, tol);
    return detail::verdict_only(frontier ? Verdict::Indeterminate : Verdict::NotDiscrete);
  }
  if (u->kind == HalfLength::Kind::Elliptic && u->p < 3)
    return detail::verdict_only(Verdict::NotDiscrete);

  bool odd = u->kind == HalfLength::Kind::Elliptic && u->p % 2 == 1;
  double cu_w = u->cosh_u();
  double gw = 4.0 * cu_w * cu_w;

  double y = odd ? -(beta + 4.0) / 4.0 : -gamma * (beta + 4.0) / 4.0;
  auto v = recognize_half_length(y, CoshForm::CoshSquared, cfg.p_max, detail::tol_scaled(tol, std::max(1.0, y)));
  if (v && !(v->kind == HalfLength::Kind::Elliptic && v->p < 3)) {
    WitnessSet w;
    w.u = *u;
    w.v = *v;
    double cv = v->cosh_u();
    double bw = odd ? -4.0 * cv * cv - 4.0 : -4.0 * cv * cv / gw - 4.0;
    return detail::discrete_result(odd ? CaseTag::LoxPosOdd : CaseTag::LoxPosEven,
                                   w, beta, gamma, bw, gw);
  }
  bool frontier = half_length_near_frontier(y, CoshForm::CoshSquared, cfg.p_max, tol);
  return detail::verdict_only(frontier ? Verdict::Indeterminate : Verdict::NotDiscrete);
}

// Full decision for a real parameter point (beta, 0, gamma): dispatch on
// the quadrant, attach the free region, and reject gamma = 0.
inline ClassifyResult classify_point(double beta, double gamma,
                                     const ClassifyConfig& cfg = {}) {
  if (!std::isfinite(beta) || !std::isfinite(gamma) || std::abs(gamma) <= cfg.tol)
    return detail::verdict_only(Verdict::OutOfDomain);

  ClassifyResult r;
  if (beta >= -4.0 - cfg.tol && beta <= cfg.tol) {
    r = check_ell_strip(beta, gamma, cfg);
  } else if (beta > 0.0 && gamma < 0.0) {
    r = check_hyp_neg(beta, gamma, cfg);
  } else if (beta > 0.0 && gamma > 0.0) {
    r = check_hyp_fuchsian(beta, gamma, cfg);
  } else if (beta < -4.0 && gamma < 0.0) {
    r = check_lox_inv(beta, gamma, cfg);
  } else {
    r = check_criterion_par(beta, gamma, cfg);
  }
  r.region = free_region(beta, gamma);
  return r;
}

}  // namespace twogen
