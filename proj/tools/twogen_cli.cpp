#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "twogen/classify.hpp"
#include "twogen/mobius.hpp"
#include "twogen/presentations.hpp"
#include "twogen/slice.hpp"
#include "twogen/traces.hpp"

using nlohmann::json;
using namespace twogen;

namespace {

std::optional<double> parse_real(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return std::nullopt;
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

// "ell:n/q" names the elliptic strip row beta = -4 sin^2(q pi / n).
std::optional<double> parse_beta_value(const std::string& s) {
  if (s.rfind("ell:", 0) == 0) {
    int n = 0, q = 0, used = 0;
    if (std::sscanf(s.c_str(), "ell:%d/%d%n", &n, &q, &used) != 2 ||
        used != static_cast<int>(s.size()))
      return std::nullopt;
    if (n < 2 || q < 1 || 2 * q > n || std::gcd(q, n) != 1) return std::nullopt;
    double sn = std::sin(q * kPi / n);
    return -4.0 * sn * sn;
  }
  return parse_real(s);
}

// "u=pi/p", "u=par", "u=hyp:d" name gamma = 4 cosh^2 u; a leading minus
// flips the sign of gamma.
std::optional<double> parse_gamma_value(const std::string& s0) {
  std::string s = s0;
  double sign = 1.0;
  if (s.rfind("-u=", 0) == 0) {
    sign = -1.0;
    s = s.substr(1);
  }
  if (s.rfind("u=", 0) == 0) {
    std::string body = s.substr(2);
    double cu = 0.0;
    if (body == "par") {
      cu = 1.0;
    } else if (body.rfind("pi/", 0) == 0) {
      int p = 0, used = 0;
      if (std::sscanf(body.c_str(), "pi/%d%n", &p, &used) != 1 ||
          used != static_cast<int>(body.size()) || p < 2)
        return std::nullopt;
      cu = std::cos(kPi / p);
    } else if (body.rfind("hyp:", 0) == 0) {
      auto d = parse_real(body.substr(4));
      if (!d || *d <= 0.0) return std::nullopt;
      cu = std::cosh(*d);
    } else {
      return std::nullopt;
    }
    return sign * 4.0 * cu * cu;
  }
  return parse_real(s0);
}

// Flat key=value option file. Unknown keys and bad values are errors;
// values given on the command line win over file values.
std::optional<std::string> apply_config_file(
    const std::string& path, CLI::App* sub,
    const std::map<std::string, std::function<bool(const std::string&)>>& setters) {
  std::ifstream in(path);
  if (!in) return "cannot open config file " + path;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    size_t e = s.find_last_not_of(" \t\r");
    s = s.substr(b, e - b + 1);
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\'')))
      s = s.substr(1, s.size() - 2);
    return s;
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string item = trim(line);
    if (item.empty() || item[0] == '#' || item[0] == ';') continue;
    size_t eq = item.find('=');
    if (eq == std::string::npos)
      return "config line " + std::to_string(lineno) + " is not key=value";
    std::string key = trim(item.substr(0, eq));
    std::string value = trim(item.substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end()) return "unknown config key '" + key + "'";
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt != nullptr && opt->count() > 0) continue;
    if (!it->second(value)) return "invalid config value for '" + key + "'";
  }
  return std::nullopt;
}

int exit_code_for(Verdict v) {
  switch (v) {
    case Verdict::Discrete: return 0;
    case Verdict::NotDiscrete: return 1;
    case Verdict::Indeterminate: return 2;
    default: return 3;
  }
}

json witnesses_json(const WitnessSet& w) {
  json j = json::object();
  if (w.u) j["u"] = w.u->str();
  if (w.v) j["v"] = w.v->str();
  if (w.n) j["n"] = *w.n;
  if (w.q) j["q"] = *w.q;
  if (w.k) j["k"] = *w.k;
  if (w.p) j["p"] = *w.p;
  if (w.sign) j["sign"] = std::string(1, *w.sign);
  return j;
}

json classify_json(const ClassifyResult& r) {
  json j;
  j["verdict"] = to_string(r.verdict);
  if (r.tag) j["case"] = to_string(*r.tag);
  j["witnesses"] = witnesses_json(r.w);
  j["free_region"] = r.region ? json(r.region->str()) : json(nullptr);
  j["within_tol"] = r.within_tol;
  if (r.tag && (*r.tag == CaseTag::LoxPosEven || *r.tag == CaseTag::LoxPosOdd) &&
      r.w.u && r.w.v) {
    try {
      Presentation p = presentation_for(*r.w.u, *r.w.v);
      j["presentation"] = {
          {"name", p.name()},
          {"kleinian", render_presentation(p, RenderMode::Kleinian)},
          {"abstract", render_presentation(p, RenderMode::Abstract)}};
    } catch (const std::exception&) {
    }
  }
  return j;
}

std::string classify_text(const json& j) {
  std::string s = "verdict: " + j["verdict"].get<std::string>() + "\n";
  if (j.contains("case")) s += "case: " + j["case"].get<std::string>() + "\n";
  const json& w = j["witnesses"];
  for (const char* key : {"u", "v", "sign"})
    if (w.contains(key)) s += std::string(key) + ": " + w[key].get<std::string>() + "\n";
  for (const char* key : {"n", "q", "k", "p"})
    if (w.contains(key))
      s += std::string(key) + ": " + std::to_string(w[key].get<int>()) + "\n";
  s += "free_region: ";
  s += j["free_region"].is_null() ? "(none)" : j["free_region"].get<std::string>();
  s += "\n";
  s += std::string("within_tol: ") + (j["within_tol"].get<bool>() ? "yes" : "no") + "\n";
  if (j.contains("presentation")) {
    const json& p = j["presentation"];
    s += "presentation: " + p["name"].get<std::string>() + "\n";
    s += "  kleinian: " + p["kleinian"].get<std::string>() + "\n";
    s += "  abstract: " + p["abstract"].get<std::string>() + "\n";
  }
  return s;
}

struct CheckList {
  json checks = json::array();

  void add(const std::string& name, bool pass, double residual) {
    checks.push_back({{"name", name}, {"pass", pass}, {"residual", residual}});
  }
};

json verify_report(double beta, double gamma, const ClassifyConfig& cfg) {
  json out;
  CheckList cl;
  bool have_pair = false;
  MobiusPair pair;
  try {
    if (beta > 0.0 && gamma > 0.0)
      pair = realize_hyp(beta, gamma);
    else if (beta < -4.0 && gamma < 0.0)
      pair = realize_lox(beta, gamma);
    else
      pair = realize_fricke(complexd(beta, 0.0), complexd(gamma, 0.0));
    have_pair = true;
  } catch (const std::exception&) {
    cl.add("realization", false, 0.0);
  }

  if (have_pair) {
    ParameterPoint p = params_of(pair);
    double scale = std::max({1.0, std::abs(beta), std::abs(gamma)});
    double rres = std::max({std::abs(p.beta - complexd(beta, 0.0)),
                            std::abs(p.beta2), std::abs(p.gamma - complexd(gamma, 0.0))});
    cl.add("round_trip", rres <= 1e-9 * scale, rres);

    Mobius f = pair.f.normalized(), g = pair.g.normalized();
    complexd tf = f.tr(), tg = g.tr(), tfg = (f * g).tr();
    double fres =
        std::abs(fricke_commutator_gamma({tf, tg, tfg}) - complexd(gamma, 0.0));
    cl.add("fricke_identity", fres <= 1e-9 * std::max(1.0, std::abs(gamma)), fres);

    if (beta > 0.0 && gamma > 0.0) {
      Mobius w = f;
      int brute = 0;
      for (int k = 1; k <= 1000; ++k) {
        w = w * g;
        if (w.tr().real() <= 2.0 + 1e-12) {
          brute = k;
          break;
        }
      }
      int kf = ceiling_index_hyp(beta, gamma);
      cl.add("k_formula", brute == kf, std::abs(brute - kf));
      out["k"] = kf;
    } else if (beta < -4.0 && gamma < 0.0) {
      double x = std::sqrt(-beta - 4.0) / std::sqrt(-gamma);
      int brute = 1;
      while (brute < 1000 && static_cast<double>(brute) < x) ++brute;
      int kf = ceiling_index_lox(beta, gamma);
      cl.add("k_formula", brute == kf, std::abs(brute - kf));
      out["k"] = kf;
    }
  }

  ClassifyResult cr = classify_point(beta, gamma, cfg);
  if (have_pair && beta < -4.0 && gamma > 0.0) {
    try {
      Mobius f = pair.f.normalized(), g = pair.g.normalized();
      Mobius m1 = (f * g.inverse() * f.inverse() * g.inverse()).normalized();
      Mobius m2 =
          (f.inverse() * g.inverse() * f * f * g * f.inverse()).normalized();
      Mobius h1 = compute_h1(pair);
      Mobius h2 = compute_h2(pair);
      double r1 = (h1 * h1).normalized().projective_distance(m1);
      double r2 = (h2 * h2).normalized().projective_distance(m2);
      cl.add("h1_square", r1 <= 1e-9, r1);
      cl.add("h2_square", r2 <= 1e-9, r2);
      double i1 = std::abs((h1 * g).tr());
      double i2 = std::abs((h2 * (f * g.inverse() * f.inverse()).normalized()).tr());
      cl.add("h1_involution", i1 <= 1e-6, i1);
      cl.add("h2_involution", i2 <= 1e-6, i2);

      VerifyCriterionResult vr = verify_criterion_psl(pair, cfg);
      out["verdict"] = to_string(vr.verdict);
      out["h1_class"] = vr.h1_class.str();
      out["h2_class"] = vr.h2_class.str();
      out["h2h1_class"] = vr.h2h1_class.str();
      bool agree = vr.verdict == cr.verdict ||
                   vr.verdict == Verdict::Indeterminate ||
                   cr.verdict == Verdict::Indeterminate;
      out["classify_agrees"] = agree;
      cl.add("criterion", vr.verdict == Verdict::Discrete, 0.0);
      cl.add("classify_consistency", agree, 0.0);
    } catch (const std::exception& e) {
      cl.add("h_path", false, 0.0);
      out["error"] = e.what();
    }
  } else {
    out["verdict"] = to_string(cr.verdict);
  }
  out["checks"] = cl.checks;
  return out;
}

std::string verify_text(const json& j) {
  std::string s;
  for (const auto& c : j["checks"]) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", c["residual"].get<double>());
    s += std::string(c["pass"].get<bool>() ? "[pass] " : "[FAIL] ") +
         c["name"].get<std::string>() + " residual=" + buf + "\n";
  }
  for (const char* key : {"verdict", "h1_class", "h2_class", "h2h1_class"})
    if (j.contains(key)) s += std::string(key) + ": " + j[key].get<std::string>() + "\n";
  if (j.contains("k")) s += "k: " + std::to_string(j["k"].get<int>()) + "\n";
  if (j.contains("classify_agrees"))
    s += std::string("classify_agrees: ") +
         (j["classify_agrees"].get<bool>() ? "yes" : "no") + "\n";
  return s;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

int run_classify_stdin(const ClassifyConfig& cfg, const std::string& format) {
  std::string line;
  int worst = 0;
  long rows = 0, discrete = 0;
  auto rank = [](Verdict v) {
    switch (v) {
      case Verdict::NotDiscrete: return 3;
      case Verdict::Indeterminate: return 2;
      case Verdict::OutOfDomain: return 1;
      default: return 0;
    }
  };
  int worst_rank = 0;
  while (std::getline(std::cin, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() < 2) continue;
    auto g = parse_real(fields[fields.size() - 2]);
    auto b = parse_real(fields[fields.size() - 1]);
    if (!g || !b) continue;  // header or malformed row
    ClassifyResult r = classify_point(*b, *g, cfg);
    ++rows;
    if (r.verdict == Verdict::Discrete) ++discrete;
    if (rank(r.verdict) > worst_rank) {
      worst_rank = rank(r.verdict);
      worst = exit_code_for(r.verdict);
    }
    if (format == "json") {
      json j = classify_json(r);
      j["gamma"] = *g;
      j["beta"] = *b;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << to_string(r.verdict) << ","
                << (r.tag ? to_string(*r.tag) : std::string()) << ","
                << format_double(*g) << "," << format_double(*b) << "\n";
    }
  }
  std::cerr << "classified " << rows << " rows, " << discrete << " discrete\n";
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discreteness, free-ness, and presentation queries for "
               "two-generator groups with real parameters (beta, 0, gamma)"};
  app.require_subcommand(1);

  std::string beta_arg, gamma_arg;
  std::string format = "json";
  bool from_stdin = false;
  ClassifyConfig cfg;
  std::string cfg_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "recognition tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--nmax", cfg.n_max, "rotation order scan bound");
    sub->add_option("--pmax", cfg.p_max, "half-length order scan bound");
    sub->add_option("--kmax", cfg.k_max, "word index scan bound");
    sub->add_option("--config", cfg_path, "flat key=value option file");
  };

  CLI::App* c = app.add_subcommand("classify", "decide discreteness of (beta, 0, gamma)");
  c->add_option("--beta", beta_arg, "beta value or ell:n/q");
  c->add_option("--gamma", gamma_arg, "gamma value or [-]u=pi/p | [-]u=par | [-]u=hyp:d");
  c->add_flag("--stdin", from_stdin, "classify gamma,beta rows from standard input");
  c->add_option("--format", format, "json | text")
      ->check(CLI::IsMember({"json", "text"}));
  add_common(c);

  Window win;
  EnumLimits lim;
  std::string enum_format = "csv", style = "full", out_path;
  CLI::App* e = app.add_subcommand("enumerate", "emit discrete curve families over a window");
  e->add_option("--gmin", win.gmin, "window gamma lower bound");
  e->add_option("--gmax", win.gmax, "window gamma upper bound");
  e->add_option("--bmin", win.bmin, "window beta lower bound");
  e->add_option("--bmax", win.bmax, "window beta upper bound");
  e->add_option("--samples", win.samples, "samples per curve")->check(CLI::PositiveNumber);
  e->add_option("--nmax", lim.n_max, "largest rotation order enumerated");
  e->add_option("--pmax", lim.p_max, "largest half-length order enumerated");
  e->add_option("--kmax", lim.k_max, "largest word index enumerated");
  e->add_option("--format", enum_format, "csv | svg")->check(CLI::IsMember({"csv", "svg"}));
  e->add_option("--style", style, "full | figure6 | families")
      ->check(CLI::IsMember({"full", "figure6", "families"}));
  e->add_option("--out", out_path, "output file (default standard output)");
  e->add_option("--config", cfg_path, "flat key=value option file");

  CLI::App* v = app.add_subcommand("verify", "matrix-oracle checks for (beta, 0, gamma)");
  v->add_option("--beta", beta_arg, "beta value or ell:n/q");
  v->add_option("--gamma", gamma_arg, "gamma value or [-]u=pi/p | [-]u=par | [-]u=hyp:d");
  v->add_option("--format", format, "json | text")
      ->check(CLI::IsMember({"json", "text"}));
  add_common(v);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& h) {
    return app.exit(h);
  } catch (const CLI::CallForAllHelp& h) {
    return app.exit(h);
  } catch (const CLI::ParseError& ex) {
    std::cerr << ex.what() << "\n";
    return 64;
  }

  if (!cfg_path.empty()) {
    auto set_double = [](double& dst) {
      return [&dst](const std::string& s) {
        auto d = parse_real(s);
        if (!d) return false;
        dst = *d;
        return true;
      };
    };
    auto set_pos_double = [](double& dst) {
      return [&dst](const std::string& s) {
        auto d = parse_real(s);
        if (!d || !(*d > 0.0)) return false;
        dst = *d;
        return true;
      };
    };
    auto set_pos_int = [](int& dst) {
      return [&dst](const std::string& s) {
        auto d = parse_real(s);
        if (!d || *d < 1.0 || *d != std::floor(*d) || *d > 1e9) return false;
        dst = static_cast<int>(*d);
        return true;
      };
    };
    auto set_string = [](std::string& dst) {
      return [&dst](const std::string& s) {
        dst = s;
        return true;
      };
    };
    auto set_member = [](std::string& dst, std::vector<std::string> allowed) {
      return [&dst, allowed](const std::string& s) {
        for (const auto& a : allowed)
          if (s == a) {
            dst = s;
            return true;
          }
        return false;
      };
    };

    std::map<std::string, std::function<bool(const std::string&)>> setters;
    CLI::App* active = v;
    if (e->parsed()) {
      active = e;
      setters = {{"gmin", set_double(win.gmin)},
                 {"gmax", set_double(win.gmax)},
                 {"bmin", set_double(win.bmin)},
                 {"bmax", set_double(win.bmax)},
                 {"samples", set_pos_int(win.samples)},
                 {"nmax", set_pos_int(lim.n_max)},
                 {"pmax", set_pos_int(lim.p_max)},
                 {"kmax", set_pos_int(lim.k_max)},
                 {"format", set_member(enum_format, {"csv", "svg"})},
                 {"style", set_member(style, {"full", "figure6", "families"})},
                 {"out", set_string(out_path)}};
    } else {
      if (c->parsed()) active = c;
      setters = {{"beta", set_string(beta_arg)},
                 {"gamma", set_string(gamma_arg)},
                 {"format", set_member(format, {"json", "text"})},
                 {"tol", set_pos_double(cfg.tol)},
                 {"nmax", set_pos_int(cfg.n_max)},
                 {"pmax", set_pos_int(cfg.p_max)},
                 {"kmax", set_pos_int(cfg.k_max)}};
    }
    if (auto err = apply_config_file(cfg_path, active, setters)) {
      std::cerr << *err << "\n";
      return 64;
    }
  }

  if (c->parsed()) {
    if (from_stdin) return run_classify_stdin(cfg, format);
    auto b = parse_beta_value(beta_arg);
    auto g = parse_gamma_value(gamma_arg);
    if (!b || !g) {
      std::cerr << "classify needs --beta and --gamma (real or symbolic)\n";
      return 64;
    }
    ClassifyResult r = classify_point(*b, *g, cfg);
    json j = classify_json(r);
    if (format == "json")
      std::cout << j.dump(2) << "\n";
    else
      std::cout << classify_text(j);
    return exit_code_for(r.verdict);
  }

  if (e->parsed()) {
    if (!(win.gmin <= win.gmax) || !(win.bmin <= win.bmax)) {
      std::cerr << "empty or inverted window\n";
      return 64;
    }
    auto families = enumerate_families(win, lim);
    std::string text;
    if (enum_format == "csv") {
      text = emit_csv(families, win);
    } else {
      auto regions = enumerate_regions(win, lim.k_max);
      text = emit_svg(families, regions, win, *svg_style_from_string(style), lim.k_max);
    }
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) {
        std::cerr << "cannot open " << out_path << "\n";
        return 64;
      }
      f << text;
    }
    return 0;
  }

  auto b = parse_beta_value(beta_arg);
  auto g = parse_gamma_value(gamma_arg);
  if (!b || !g) {
    std::cerr << "verify needs --beta and --gamma (real or symbolic)\n";
    return 64;
  }
  json j = verify_report(*b, *g, cfg);
  if (format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << verify_text(j);
  bool all = true;
  for (const auto& chk : j["checks"]) all = all && chk["pass"].get<bool>();
  return all ? 0 : 1;
}
