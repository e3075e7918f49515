#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "twogen/classify.hpp"
#include "twogen/orders.hpp"

namespace twogen {

struct Window {
  double gmin = -40.0, gmax = 40.0;
  double bmin = -40.0, bmax = 40.0;
  int samples = 512;
};

struct EnumLimits {
  int n_max = 12;
  int p_max = 12;
  int k_max = 8;
};

struct SamplePoint {
  double gamma = 0.0, beta = 0.0;
  std::optional<HalfLength> u, v;
};

// One-dimensional locus of discrete parameter points: the discrete indices
// are fixed per family, the continuous witness (if any) varies per sample.
struct CurveFamily {
  CaseTag tag = CaseTag::EllStrip1;
  WitnessSet indices;
  std::string geometry;  // ray | line | parabola | hyperbola | isolated-point
  std::string id;
  std::vector<SamplePoint> samples;
};

struct RegionOutline {
  std::string id;  // A, B, C1.., D1.., Sigma1..
  bool is_sigma = false;
  std::vector<std::pair<double, double>> polyline;  // closed (gamma, beta) loop
};

// Slant asymptotes of the constant-u hyperbola branches in the beta < -4,
// gamma < 0 quadrant: the minus branch approaches slope (k-1)^2 and the
// plus branch slope k^2.
struct AsymptotePair {
  double slope1, intercept1;
  double slope2, intercept2;
};

inline AsymptotePair asymptotes_of(int k, const HalfLength& u) {
  double c = u.cosh_u();
  return {static_cast<double>((k - 1) * (k - 1)),
          -4.0 * (k - 1) * (1.0 + c) - 4.0,
          static_cast<double>(k * k),
          4.0 * k * (1.0 + c) - 4.0};
}

namespace detail {

inline std::string id_token(const HalfLength& h) {
  switch (h.kind) {
    case HalfLength::Kind::Elliptic: return "e" + std::to_string(h.p);
    case HalfLength::Kind::Parabolic: return "par";
    default: {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "hyp%.6g", h.d);
      std::string s(buf);
      for (char& ch : s)
        if (ch == '.') ch = 'd';
      return s;
    }
  }
}

inline bool in_window(const Window& w, double g, double b) {
  return g >= w.gmin && g <= w.gmax && b >= w.bmin && b <= w.bmax;
}

// Keeps a sample only if the classifier would route it to the same
// quadrant branch the family belongs to.
inline bool quadrant_ok(CaseTag t, double b, double g) {
  const double m = 1e-6;
  switch (t) {
    case CaseTag::EllStrip1:
    case CaseTag::EllStrip2:
    case CaseTag::EllStrip3:
      return b >= -4.0 && b <= 0.0 && std::abs(g) > m;
    case CaseTag::HypNegGamma:
      return b > m && g < -m;
    case CaseTag::HypPos1:
    case CaseTag::HypPos2:
    case CaseTag::HypPos3:
      return b > m && g > m;
    case CaseTag::LoxNeg1:
    case CaseTag::LoxNeg2:
    case CaseTag::LoxNeg3:
      return b < -4.0 - m && g < -m;
    case CaseTag::LoxPosEven:
    case CaseTag::LoxPosOdd:
      return b < -4.0 - m && g > m;
  }
  return false;
}

inline void push_sample(CurveFamily& f, const Window& w, double g, double b,
                        std::optional<HalfLength> u = {},
                        std::optional<HalfLength> v = {}) {
  if (!std::isfinite(g) || !std::isfinite(b)) return;
  if (!in_window(w, g, b)) return;
  if (!quadrant_ok(f.tag, b, g)) return;
  f.samples.push_back({g, b, std::move(u), std::move(v)});
}

inline double lerp(double a, double b, int i, int count) {
  if (count <= 1) return a;
  return a + (b - a) * (static_cast<double>(i) / (count - 1));
}

// cosh u sweep from lo to hi; index 0 maps to the parabolic witness when
// lo is exactly 1.
inline HalfLength half_length_at(double c) {
  if (c <= 1.0) return HalfLength::parabolic();
  return HalfLength::hyperbolic(std::acosh(c));
}

inline std::string sort_key(const CurveFamily& f) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%02d|%03d|%03d|%03d|%03d|%c|%s|%s|%s",
                static_cast<int>(f.tag), f.indices.n.value_or(-1) + 1,
                f.indices.q.value_or(-1) + 1, f.indices.k.value_or(-1) + 1,
                f.indices.p.value_or(-1) + 1, f.indices.sign.value_or(' '),
                f.indices.u ? id_token(*f.indices.u).c_str() : "",
                f.indices.v ? id_token(*f.indices.v).c_str() : "", f.id.c_str());
  return buf;
}

inline bool same_point_set(const CurveFamily& a, const CurveFamily& b) {
  if (a.samples.size() != b.samples.size()) return false;
  for (size_t i = 0; i < a.samples.size(); ++i) {
    double dg = std::abs(a.samples[i].gamma - b.samples[i].gamma);
    double db = std::abs(a.samples[i].beta - b.samples[i].beta);
    double sg = std::max(1.0, std::abs(a.samples[i].gamma));
    double sb = std::max(1.0, std::abs(a.samples[i].beta));
    if (dg > 1e-9 * sg || db > 1e-9 * sb) return false;
  }
  return true;
}

}  // namespace detail

inline std::vector<CurveFamily> enumerate_families(const Window& w,
                                                   const EnumLimits& lim = {}) {
  std::vector<CurveFamily> out;
  const int S = std::max(w.samples, 2);

  auto add = [&](CurveFamily&& f) {
    if (!f.samples.empty()) out.push_back(std::move(f));
  };
  auto fam = [](CaseTag tag, std::string geometry, std::string id,
                WitnessSet idx) {
    CurveFamily f;
    f.tag = tag;
    f.geometry = std::move(geometry);
    f.id = std::move(id);
    f.indices = std::move(idx);
    return f;
  };

  // Elliptic strip rows: each coprime (q, n) with 2q <= n, plus the
  // parabolic row at beta = 0 (n absent).
  struct StripRow {
    std::optional<int> n, q;
    double C, cos_n, beta_row;
    std::string token;
  };
  std::vector<StripRow> rows;
  for (int n = 2; n <= lim.n_max; ++n)
    for (int q = 1; 2 * q <= n; ++q) {
      if (std::gcd(q, n) != 1) continue;
      double s = std::sin(q * kPi / n);
      rows.push_back({n, q, c_constant(q, ExtendedOrder::finite(n)),
                      std::cos(kPi / n), -4.0 * s * s,
                      "n" + std::to_string(n) + "q" + std::to_string(q)});
    }
  rows.push_back({{}, {}, 1.0, 1.0, 0.0, "ninf"});

  for (const StripRow& row : rows) {
    WitnessSet base;
    base.n = row.n;
    base.q = row.q;

    {
      CurveFamily f = fam(CaseTag::EllStrip1, "ray",
                          "ellstrip1-" + row.token + "-ray", base);
      double cmax = std::sqrt(std::max(-w.gmin, 0.0) / (4.0 * row.C));
      if (cmax >= 1.0)
        for (int i = 0; i < S; ++i) {
          double c = detail::lerp(1.0, cmax, i, S);
          detail::push_sample(f, w, -4.0 * row.C * c * c, row.beta_row,
                              detail::half_length_at(i == 0 ? 1.0 : c));
        }
      add(std::move(f));
    }
    for (int p = 3; p <= lim.p_max; ++p) {
      double cp = std::cos(kPi / p);
      WitnessSet idx = base;
      idx.u = HalfLength::elliptic(p);
      CurveFamily f = fam(CaseTag::EllStrip1, "isolated-point",
                          "ellstrip1-" + row.token + "-ue" + std::to_string(p), idx);
      detail::push_sample(f, w, -4.0 * row.C * cp * cp, row.beta_row);
      add(std::move(f));
    }

    {
      CurveFamily f = fam(CaseTag::EllStrip2, "ray",
                          "ellstrip2-" + row.token + "-ray", base);
      double cmax = std::sqrt(std::max(w.gmax, 0.0) / (4.0 * row.C)) - row.cos_n;
      if (cmax >= 1.0)
        for (int i = 0; i < S; ++i) {
          double c = detail::lerp(1.0, cmax, i, S);
          double top = row.cos_n + c;
          detail::push_sample(f, w, 4.0 * row.C * top * top, row.beta_row,
                              detail::half_length_at(i == 0 ? 1.0 : c));
        }
      add(std::move(f));
    }
    for (int p = 2; p <= lim.p_max; ++p) {
      double top = row.cos_n + std::cos(kPi / p);
      WitnessSet idx = base;
      idx.u = HalfLength::elliptic(p);
      CurveFamily f = fam(CaseTag::EllStrip2, "isolated-point",
                          "ellstrip2-" + row.token + "-ue" + std::to_string(p), idx);
      detail::push_sample(f, w, 4.0 * row.C * top * top, row.beta_row);
      add(std::move(f));
    }

    if (!row.n) {
      for (int j = 3; j <= lim.p_max; j += 2) {
        double c2 = 1.0 + std::cos(2.0 * kPi / j);
        WitnessSet idx;
        idx.p = j;
        CurveFamily f = fam(CaseTag::EllStrip3, "isolated-point",
                            "ellstrip3-p" + std::to_string(j), idx);
        detail::push_sample(f, w, 4.0 * c2 * c2, 0.0);
        add(std::move(f));
      }
    }
  }

  // beta > 0, gamma < 0: a vertical ray of unconstrained beta at every
  // admissible gamma value with an elliptic or parabolic witness.
  {
    double blo = std::max(w.bmin, 1e-6);
    auto vertical = [&](double g, const HalfLength& u, const std::string& tok) {
      WitnessSet idx;
      idx.u = u;
      CurveFamily f =
          fam(CaseTag::HypNegGamma, "ray", "hypneggamma-u" + tok, idx);
      if (blo <= w.bmax)
        for (int i = 0; i < S; ++i)
          detail::push_sample(f, w, g, detail::lerp(blo, w.bmax, i, S));
      add(std::move(f));
    };
    vertical(-4.0, HalfLength::parabolic(), "par");
    for (int p = 3; p <= lim.p_max; ++p) {
      double cp = std::cos(kPi / p);
      vertical(-4.0 * cp * cp, HalfLength::elliptic(p), "e" + std::to_string(p));
    }
  }

  for (int k = 1; k <= lim.k_max; ++k) {
    std::string kt = "k" + std::to_string(k);

    // tr(f g^k) = 2: beta = (k sqrt(gamma) + 2)^2 - 4, gamma = 16 cosh^4 u.
    {
      WitnessSet idx;
      idx.k = k;
      CurveFamily f = fam(CaseTag::HypPos1, "parabola", "hyppos1-" + kt + "-curve", idx);
      double cmax = std::pow(std::max(w.gmax, 0.0) / 16.0, 0.25);
      if (cmax >= 1.0)
        for (int i = 0; i < S; ++i) {
          double c = detail::lerp(1.0, cmax, i, S);
          double g = 16.0 * c * c * c * c;
          double sq = k * std::sqrt(g) + 2.0;
          detail::push_sample(f, w, g, sq * sq - 4.0,
                              detail::half_length_at(i == 0 ? 1.0 : c));
        }
      add(std::move(f));
    }
    for (int p = 3; p <= lim.p_max; ++p) {
      double cp = std::cos(kPi / p);
      double g = 16.0 * cp * cp * cp * cp;
      double sq = k * std::sqrt(g) + 2.0;
      WitnessSet idx;
      idx.k = k;
      idx.u = HalfLength::elliptic(p);
      CurveFamily f = fam(CaseTag::HypPos1, "isolated-point",
                          "hyppos1-" + kt + "-ue" + std::to_string(p), idx);
      detail::push_sample(f, w, g, sq * sq - 4.0);
      add(std::move(f));
    }

    // |tr(f g^k)| < 2: beta = (k sqrt(gamma) +- 2 cos(q pi/n))^2 - 4 over
    // the strip-row gamma structure.
    for (const StripRow& row : rows) {
      if (!row.n) continue;
      int n = *row.n, q = *row.q;
      double cqn = std::cos(q * kPi / n);
      for (int sgn = 0; sgn < 2; ++sgn) {
        bool plus = sgn == 0;
        if (n == 2 && !plus) continue;
        char sign = plus ? '+' : '-';
        std::string st = plus ? "sp" : "sm";
        WitnessSet base2;
        base2.k = k;
        base2.n = n;
        base2.q = q;
        base2.sign = sign;

        // At cosh u = 1 the word index drops by one for the minus branch
        // of a primitive row and for n = 2, so those sweeps start just
        // above the parabolic witness.
        double cstart = ((q == 1 && !plus) || n == 2) ? 1.0 + 1e-6 : 1.0;
        double cmax = std::sqrt(std::max(w.gmax, 0.0) / (4.0 * row.C)) - row.cos_n;
        CurveFamily f = fam(CaseTag::HypPos2, "parabola",
                            "hyppos2-" + kt + "-" + row.token + "-" + st + "-curve",
                            base2);
        if (cmax >= cstart)
          for (int i = 0; i < S; ++i) {
            double c = detail::lerp(cstart, cmax, i, S);
            double top = row.cos_n + c;
            double g = 4.0 * row.C * top * top;
            double sq = k * std::sqrt(g) + (plus ? 2.0 : -2.0) * cqn;
            detail::push_sample(f, w, g, sq * sq - 4.0,
                                detail::half_length_at(i == 0 && cstart == 1.0 ? 1.0 : c));
          }
        add(std::move(f));

        int pstart = n == 2 ? 3 : 2;
        for (int p = pstart; p <= lim.p_max; ++p) {
          if (!plus && q == 2 && p == 2) continue;  // coincides with a HypPos1 point
          double top = row.cos_n + std::cos(kPi / p);
          double g = 4.0 * row.C * top * top;
          double sq = k * std::sqrt(g) + (plus ? 2.0 : -2.0) * cqn;
          WitnessSet idx = base2;
          idx.u = HalfLength::elliptic(p);
          CurveFamily fp = fam(CaseTag::HypPos2, "isolated-point",
                               "hyppos2-" + kt + "-" + row.token + "-" + st +
                                   "-ue" + std::to_string(p),
                               idx);
          detail::push_sample(fp, w, g, sq * sq - 4.0);
          add(std::move(fp));
        }
      }
    }

    // tr(f g^k) = -2 boundary: beta = (k sqrt(gamma) - 2)^2 - 4 on
    // gamma > 16; at gamma = 16 the word index drops by one.
    {
      WitnessSet idx;
      idx.k = k;
      idx.u = HalfLength::parabolic();
      CurveFamily f = fam(CaseTag::HypPos3, "parabola", "hyppos3-" + kt, idx);
      double glo = std::max(w.gmin, 16.0 + 1e-6);
      if (glo <= w.gmax)
        for (int i = 0; i < S; ++i) {
          double g = detail::lerp(glo, w.gmax, i, S);
          double sq = k * std::sqrt(g) - 2.0;
          detail::push_sample(f, w, g, sq * sq - 4.0);
        }
      add(std::move(f));
    }

    // Constant-u hyperbola branches in beta < -4, gamma < 0.
    {
      std::vector<HalfLength> us;
      for (int p = 2; p <= lim.p_max; ++p) us.push_back(HalfLength::elliptic(p));
      us.push_back(HalfLength::parabolic());
      for (const HalfLength& u : us) {
        double nose = -8.0 * (1.0 + u.cosh_u());
        for (int sgn = 0; sgn < 2; ++sgn) {
          bool plus = sgn == 0;
          WitnessSet idx;
          idx.k = k;
          idx.u = u;
          idx.sign = plus ? '+' : '-';
          CurveFamily f = fam(CaseTag::LoxNeg1, "hyperbola",
                              "loxneg1-" + kt + "-u" + detail::id_token(u) +
                                  (plus ? "-sp" : "-sm"),
                              idx);
          double ghi = std::min(w.gmax, nose);
          if (w.gmin <= ghi)
            for (int i = 0; i < S; ++i) {
              double g = detail::lerp(w.gmin, ghi, i, S);
              double rw = std::sqrt(std::max(0.0, -g - 8.0 * (1.0 + u.cosh_u())));
              double tot = (2 * k - 1) * std::sqrt(-g) + (plus ? rw : -rw);
              detail::push_sample(f, w, g, -tot * tot / 4.0 - 4.0);
            }
          add(std::move(f));
        }
      }
    }

    // Isolated points 4(beta + 4) = (2k-1)^2 gamma at gamma = -16 cos^2(pi/p).
    for (int p = 3; p <= lim.p_max; p += 2) {
      double cp = std::cos(kPi / p);
      double g = -16.0 * cp * cp;
      WitnessSet idx;
      idx.k = k;
      idx.p = p;
      CurveFamily f = fam(CaseTag::LoxNeg2, "isolated-point",
                          "loxneg2-" + kt + "-p" + std::to_string(p), idx);
      detail::push_sample(f, w, g, (2 * k - 1) * (2 * k - 1) * g / 4.0 - 4.0);
      add(std::move(f));
    }

    // Lines beta = k^2 gamma - 4 at gamma = -4 cosh^2 u, t(u) >= 3.
    {
      WitnessSet idx;
      idx.k = k;
      CurveFamily f = fam(CaseTag::LoxNeg3, "line", "loxneg3-" + kt + "-line", idx);
      double cmax = std::sqrt(std::max(-w.gmin, 0.0)) / 2.0;
      if (cmax >= 1.0)
        for (int i = 0; i < S; ++i) {
          double c = detail::lerp(1.0, cmax, i, S);
          double g = -4.0 * c * c;
          detail::push_sample(f, w, g, k * k * g - 4.0,
                              detail::half_length_at(i == 0 ? 1.0 : c));
        }
      add(std::move(f));
    }
    for (int p = 3; p <= lim.p_max; ++p) {
      double cp = std::cos(kPi / p);
      double g = -4.0 * cp * cp;
      WitnessSet idx;
      idx.k = k;
      idx.u = HalfLength::elliptic(p);
      CurveFamily f = fam(CaseTag::LoxNeg3, "isolated-point",
                          "loxneg3-" + kt + "-ue" + std::to_string(p), idx);
      detail::push_sample(f, w, g, k * k * g - 4.0);
      add(std::move(f));
    }
  }

  // beta < -4, gamma > 0, even side: beta = -4 cosh^2 v / gamma - 4 with
  // gamma = 4 cosh^2 u free over the parabolic/hyperbolic u range.
  {
    std::vector<HalfLength> vs;
    for (int p = 3; p <= lim.p_max; ++p) vs.push_back(HalfLength::elliptic(p));
    vs.push_back(HalfLength::parabolic());
    for (const HalfLength& v : vs) {
      double cv2 = v.cosh_u() * v.cosh_u();
      WitnessSet idx;
      idx.v = v;
      CurveFamily f = fam(CaseTag::LoxPosEven, "hyperbola",
                          "loxposeven-v" + detail::id_token(v) + "-curve", idx);
      double glo = std::max(w.gmin, 4.0);
      if (glo <= w.gmax)
        for (int i = 0; i < S; ++i) {
          double g = detail::lerp(glo, w.gmax, i, S);
          HalfLength u = (i == 0 && glo == 4.0)
                             ? HalfLength::parabolic()
                             : detail::half_length_at(std::sqrt(g) / 2.0);
          detail::push_sample(f, w, g, -4.0 * cv2 / g - 4.0, u);
        }
      add(std::move(f));
    }
  }
  for (int m = 4; m <= lim.p_max; m += 2) {
    double gm = 4.0 * std::cos(kPi / m) * std::cos(kPi / m);
    WitnessSet base;
    base.u = HalfLength::elliptic(m);
    {
      CurveFamily f = fam(CaseTag::LoxPosEven, "ray",
                          "loxposeven-ue" + std::to_string(m) + "-ray", base);
      double vmax = std::sqrt(std::max(0.0, -gm * (w.bmin + 4.0) / 4.0));
      if (vmax >= 1.0)
        for (int i = 0; i < S; ++i) {
          double c = detail::lerp(1.0, vmax, i, S);
          detail::push_sample(f, w, gm, -4.0 * c * c / gm - 4.0, {},
                              detail::half_length_at(i == 0 ? 1.0 : c));
        }
      add(std::move(f));
    }
    for (int p = 3; p <= lim.p_max; ++p) {
      double cp = std::cos(kPi / p);
      WitnessSet idx = base;
      idx.v = HalfLength::elliptic(p);
      CurveFamily f = fam(CaseTag::LoxPosEven, "isolated-point",
                          "loxposeven-ue" + std::to_string(m) + "-ve" +
                              std::to_string(p),
                          idx);
      detail::push_sample(f, w, gm, -4.0 * cp * cp / gm - 4.0);
      add(std::move(f));
    }
  }

  // beta < -4, gamma > 0, odd side: beta = -4 cosh^2 v - 4 at
  // gamma = 4 cos^2(pi/m), odd m >= 3.
  for (int m = 3; m <= lim.p_max; m += 2) {
    double gm = 4.0 * std::cos(kPi / m) * std::cos(kPi / m);
    WitnessSet base;
    base.u = HalfLength::elliptic(m);
    {
      CurveFamily f = fam(CaseTag::LoxPosOdd, "ray",
                          "loxposodd-ue" + std::to_string(m) + "-ray", base);
      double vmax = std::sqrt(std::max(0.0, -(w.bmin + 4.0) / 4.0));
      if (vmax >= 1.0)
        for (int i = 0; i < S; ++i) {
          double c = detail::lerp(1.0, vmax, i, S);
          detail::push_sample(f, w, gm, -4.0 * c * c - 4.0, {},
                              detail::half_length_at(i == 0 ? 1.0 : c));
        }
      add(std::move(f));
    }
    for (int p = 3; p <= lim.p_max; ++p) {
      double cp = std::cos(kPi / p);
      WitnessSet idx = base;
      idx.v = HalfLength::elliptic(p);
      CurveFamily f = fam(CaseTag::LoxPosOdd, "isolated-point",
                          "loxposodd-ue" + std::to_string(m) + "-ve" +
                              std::to_string(p),
                          idx);
      detail::push_sample(f, w, gm, -4.0 * cp * cp - 4.0);
      add(std::move(f));
    }
  }

  std::sort(out.begin(), out.end(), [](const CurveFamily& a, const CurveFamily& b) {
    return detail::sort_key(a) < detail::sort_key(b);
  });

  // Distinct index tuples can land on the same locus (a word-index
  // reduction maps one family onto another); keep the first in sort order.
  std::vector<CurveFamily> dedup;
  for (auto& f : out) {
    bool dup = false;
    for (const auto& kept : dedup) {
      if (detail::same_point_set(kept, f)) {
        dup = true;
        break;
      }
    }
    if (!dup) dedup.push_back(std::move(f));
  }
  return dedup;
}

namespace detail {

template <class Lower, class Upper>
inline std::optional<RegionOutline> band_region(const Window& w, std::string id,
                                                bool sigma, double glo,
                                                double ghi, Lower&& lower,
                                                Upper&& upper) {
  glo = std::max(glo, w.gmin);
  ghi = std::min(ghi, w.gmax);
  if (glo > ghi) return std::nullopt;
  int S = std::max(w.samples, 2);
  std::vector<std::tuple<double, double, double>> kept;
  for (int i = 0; i < S; ++i) {
    double g = lerp(glo, ghi, i, S);
    double lo = std::max(lower(g), w.bmin);
    double hi = std::min(upper(g), w.bmax);
    if (std::isfinite(lo) && std::isfinite(hi) && lo <= hi)
      kept.emplace_back(g, lo, hi);
  }
  if (kept.empty()) return std::nullopt;
  RegionOutline r;
  r.id = std::move(id);
  r.is_sigma = sigma;
  for (const auto& [g, lo, hi] : kept) r.polyline.emplace_back(g, hi);
  for (auto it = kept.rbegin(); it != kept.rend(); ++it)
    r.polyline.emplace_back(std::get<0>(*it), std::get<1>(*it));
  r.polyline.push_back(r.polyline.front());
  return r;
}

}  // namespace detail

inline std::vector<RegionOutline> enumerate_regions(const Window& w,
                                                    int k_max = 8) {
  std::vector<RegionOutline> out;
  const double huge = 1e300;
  auto push = [&](std::optional<RegionOutline> r) {
    if (r) out.push_back(std::move(*r));
  };

  push(detail::band_region(
      w, "A", false, -huge, -4.0, [](double) { return 0.0; },
      [&](double) { return huge; }));
  push(detail::band_region(
      w, "B", false, 4.0, huge, [&](double) { return -huge; },
      [](double g) { return -4.0 / g - 4.0; }));
  for (int k = 1; k <= k_max; ++k) {
    push(detail::band_region(
        w, "C" + std::to_string(k), false, 16.0, huge,
        [k](double g) {
          double t = (k - 1) * std::sqrt(g) + 2.0;
          return t * t - 4.0;
        },
        [k](double g) {
          double t = k * std::sqrt(g) - 2.0;
          return t * t - 4.0;
        }));
  }
  for (int k = 1; k <= k_max; ++k) {
    push(detail::band_region(
        w, "D" + std::to_string(k), false, -huge, -16.0,
        [k](double g) {
          double t = (2 * k - 1) * std::sqrt(-g) + std::sqrt(-g - 16.0);
          return -t * t / 4.0 - 4.0;
        },
        [k](double g) {
          double t = (2 * k - 1) * std::sqrt(-g) - std::sqrt(-g - 16.0);
          return -t * t / 4.0 - 4.0;
        }));
  }
  for (int k = 1; k <= k_max; ++k) {
    push(detail::band_region(
        w, "Sigma" + std::to_string(k), true, 0.0, huge,
        [k](double g) {
          double t = k * std::sqrt(g) - 2.0;
          return t * t - 4.0;
        },
        [k](double g) {
          double t = k * std::sqrt(g) + 2.0;
          return t * t - 4.0;
        }));
  }
  return out;
}

enum class SvgStyle { Full, Figure6, Families };

inline std::optional<SvgStyle> svg_style_from_string(const std::string& s) {
  if (s == "full") return SvgStyle::Full;
  if (s == "figure6") return SvgStyle::Figure6;
  if (s == "families") return SvgStyle::Families;
  return std::nullopt;
}

namespace detail {

struct SvgMapper {
  Window w;
  double width, height, margin;
  double x(double g) const {
    return margin + (g - w.gmin) / (w.gmax - w.gmin) * (width - 2.0 * margin);
  }
  double y(double b) const {
    return height - margin -
           (b - w.bmin) / (w.bmax - w.bmin) * (height - 2.0 * margin);
  }
};

inline std::string fmt3(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

inline std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

inline const char* tag_color(CaseTag t) {
  switch (t) {
    case CaseTag::EllStrip1: return "#1f77b4";
    case CaseTag::EllStrip2: return "#2ca02c";
    case CaseTag::EllStrip3: return "#17becf";
    case CaseTag::HypNegGamma: return "#9467bd";
    case CaseTag::HypPos1: return "#d62728";
    case CaseTag::HypPos2: return "#ff7f0e";
    case CaseTag::HypPos3: return "#8c564b";
    case CaseTag::LoxNeg1: return "#e377c2";
    case CaseTag::LoxNeg2: return "#7f7f7f";
    case CaseTag::LoxNeg3: return "#bcbd22";
    case CaseTag::LoxPosEven: return "#0044cc";
    default: return "#cc0066";
  }
}

}  // namespace detail

inline std::string emit_svg(const std::vector<CurveFamily>& families,
                            const std::vector<RegionOutline>& regions,
                            const Window& w, SvgStyle style = SvgStyle::Full,
                            int k_max = 8) {
  detail::SvgMapper m{w, 800.0, 800.0, 50.0};
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
       "viewBox=\"0 0 800 800\">\n";

  auto path_from = [&](const std::vector<std::pair<double, double>>& pts) {
    std::string d;
    for (size_t i = 0; i < pts.size(); ++i) {
      d += i == 0 ? "M" : " L";
      d += detail::fmt3(m.x(pts[i].first)) + "," + detail::fmt3(m.y(pts[i].second));
    }
    return d;
  };

  // Frame and axes.
  s += "<path d=\"M" + detail::fmt3(m.margin) + "," + detail::fmt3(m.margin) +
       " L" + detail::fmt3(m.width - m.margin) + "," + detail::fmt3(m.margin) +
       " L" + detail::fmt3(m.width - m.margin) + "," +
       detail::fmt3(m.height - m.margin) + " L" + detail::fmt3(m.margin) + "," +
       detail::fmt3(m.height - m.margin) + " Z\" fill=\"none\" stroke=\"#888888\" "
       "stroke-width=\"1\"/>\n";
  if (w.gmin < 0.0 && w.gmax > 0.0) {
    double x0 = m.x(0.0);
    s += "<path d=\"M" + detail::fmt3(x0) + "," + detail::fmt3(m.margin) + " L" +
         detail::fmt3(x0) + "," + detail::fmt3(m.height - m.margin) +
         "\" stroke=\"#bbbbbb\" stroke-width=\"1\" fill=\"none\"/>\n";
  }
  if (w.bmin < 0.0 && w.bmax > 0.0) {
    double y0 = m.y(0.0);
    s += "<path d=\"M" + detail::fmt3(m.margin) + "," + detail::fmt3(y0) + " L" +
         detail::fmt3(m.width - m.margin) + "," + detail::fmt3(y0) +
         "\" stroke=\"#bbbbbb\" stroke-width=\"1\" fill=\"none\"/>\n";
  }
  s += "<text x=\"" + detail::fmt3(m.width - m.margin) + "\" y=\"" +
       detail::fmt3(m.height - m.margin + 28.0) +
       "\" font-size=\"13\" text-anchor=\"end\">gamma</text>\n";
  s += "<text x=\"" + detail::fmt3(m.margin - 36.0) + "\" y=\"" +
       detail::fmt3(m.margin) + "\" font-size=\"13\">beta</text>\n";
  s += "<text x=\"" + detail::fmt3(m.margin) + "\" y=\"" +
       detail::fmt3(m.height - m.margin + 28.0) + "\" font-size=\"11\">" +
       detail::fmt_g(w.gmin) + "</text>\n";
  s += "<text x=\"" + detail::fmt3(m.width - m.margin) + "\" y=\"" +
       detail::fmt3(m.margin - 8.0) + "\" font-size=\"11\" text-anchor=\"end\">" +
       detail::fmt_g(w.bmax) + "</text>\n";

  if (style != SvgStyle::Families) {
    for (const RegionOutline& r : regions) {
      if (style == SvgStyle::Figure6 && r.is_sigma) continue;
      const char* fill = r.is_sigma ? "#f6e8e8" : "#dce8f8";
      const char* stroke = r.is_sigma ? "#b06060" : "#5878a8";
      s += "<path id=\"region-" + r.id + "\" d=\"" + path_from(r.polyline) +
           " Z\" fill=\"" + fill + "\" stroke=\"" + stroke +
           "\" stroke-width=\"1\"/>\n";
    }
    for (int k = 1; k <= k_max; ++k) {
      double glo = std::max(w.gmin, (w.bmin + 4.0) / (k * k));
      double ghi = std::min(w.gmax, (w.bmax + 4.0) / (k * k));
      if (glo > ghi) continue;
      std::vector<std::pair<double, double>> pts = {
          {glo, k * k * glo - 4.0}, {ghi, k * k * ghi - 4.0}};
      s += "<path id=\"dashed-k" + std::to_string(k) + "\" d=\"" +
           path_from(pts) +
           "\" fill=\"none\" stroke=\"#404040\" stroke-width=\"1\" "
           "stroke-dasharray=\"6,4\"/>\n";
    }
  }

  if (style != SvgStyle::Figure6) {
    for (const CurveFamily& f : families) {
      s += "<g id=\"family-" + f.id + "\">\n";
      const char* color = detail::tag_color(f.tag);
      if (f.samples.size() >= 2 && f.geometry != "isolated-point") {
        std::string pts;
        for (const SamplePoint& sp : f.samples) {
          if (!pts.empty()) pts += " ";
          pts += detail::fmt3(m.x(sp.gamma)) + "," + detail::fmt3(m.y(sp.beta));
        }
        s += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
             "\" stroke-width=\"1.2\"/>\n";
      } else {
        for (const SamplePoint& sp : f.samples) {
          s += "<circle cx=\"" + detail::fmt3(m.x(sp.gamma)) + "\" cy=\"" +
               detail::fmt3(m.y(sp.beta)) + "\" r=\"2.2\" fill=\"" + color +
               "\"/>\n";
        }
      }
      s += "</g>\n";
    }
  }

  s += "</svg>\n";
  return s;
}

inline std::string emit_csv(const std::vector<CurveFamily>& families,
                            const Window&) {
  struct Row {
    std::string prefix;
    double gamma;
    std::string uv;
    std::string line;
  };
  std::vector<Row> rows;
  for (const CurveFamily& f : families) {
    for (const SamplePoint& sp : f.samples) {
      const std::optional<HalfLength>& u = sp.u ? sp.u : f.indices.u;
      const std::optional<HalfLength>& v = sp.v ? sp.v : f.indices.v;
      auto num = [](const std::optional<int>& x) {
        return x ? std::to_string(*x) : std::string();
      };
      char numbuf[64];
      std::snprintf(numbuf, sizeof(numbuf), "%.12g", sp.gamma);
      std::string gs = numbuf;
      std::snprintf(numbuf, sizeof(numbuf), "%.12g", sp.beta);
      std::string bs = numbuf;
      std::string line = to_string(f.tag) + "," + num(f.indices.n) + "," +
                         num(f.indices.q) + "," + num(f.indices.k) + "," +
                         num(f.indices.p) + "," +
                         (f.indices.sign ? std::string(1, *f.indices.sign)
                                         : std::string()) +
                         "," + (u ? u->str() : "") + "," + (v ? v->str() : "") +
                         "," + gs + "," + bs;
      char keybuf[64];
      std::snprintf(keybuf, sizeof(keybuf), "%02d|%03d|%03d|%03d|%03d|%c",
                    static_cast<int>(f.tag), f.indices.n.value_or(-1) + 1,
                    f.indices.q.value_or(-1) + 1, f.indices.k.value_or(-1) + 1,
                    f.indices.p.value_or(-1) + 1, f.indices.sign.value_or(' '));
      rows.push_back({keybuf, sp.gamma,
                      (u ? u->str() : "") + "|" + (v ? v->str() : ""),
                      std::move(line)});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.prefix != b.prefix) return a.prefix < b.prefix;
    if (a.gamma != b.gamma) return a.gamma < b.gamma;
    return a.uv < b.uv;
  });
  std::string out = "case,n,q,k,p,sign,u,v,gamma,beta\n";
  for (const Row& r : rows) {
    out += r.line;
    out += "\n";
  }
  return out;
}

}  // namespace twogen
