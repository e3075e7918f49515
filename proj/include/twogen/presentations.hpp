#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "twogen/orders.hpp"

namespace twogen {

enum class PresKind { PH, P, S2, GTet1 };

inline const char* to_string(PresKind k) {
  switch (k) {
    case PresKind::PH: return "PH";
    case PresKind::P: return "P";
    case PresKind::S2: return "S2";
    case PresKind::GTet1: return "GTet1";
  }
  return "?";
}

// Kleinian mode keeps parabolic relations spelled "w^inf"; abstract mode
// drops them. Relations whose exponent slot is the hyperbolic marker are
// dropped in both modes.
enum class RenderMode { Kleinian, Abstract };

struct Presentation {
  PresKind kind = PresKind::PH;
  ExtendedOrder slot_m = ExtendedOrder::finite(2);
  ExtendedOrder slot_q = ExtendedOrder::finite(3);

  bool operator==(const Presentation& o) const {
    return kind == o.kind && slot_m == o.slot_m && slot_q == o.slot_q;
  }

  std::string name() const {
    return std::string(to_string(kind)) + "[inf," + slot_m.str() + ";" +
           slot_q.str() + "]";
  }
};

// Four-way parity dispatch on (t(u), t(v)); infinite orders count as even.
inline Presentation presentation_for(const HalfLength& u, const HalfLength& v) {
  ExtendedOrder tu = u.t();
  ExtendedOrder tv = v.t();
  if (tu.is_finite() && tu.value() < 3)
    throw std::invalid_argument("first half-length must have order >= 3");
  if (tv.is_finite() && tv.value() < 3)
    throw std::invalid_argument("second half-length of order 2 names no presentation");

  Presentation p;
  if (tu.is_even_or_infinite()) {
    auto m = tu.divided_by(2);
    if (!m) throw std::invalid_argument("even order not divisible by 2");
    if (tv.is_odd()) {
      p.kind = PresKind::PH;
      p.slot_m = *m;
      p.slot_q = tv;
    } else {
      auto q = tv.divided_by(2);
      if (!q) throw std::invalid_argument("even order not divisible by 2");
      p.kind = PresKind::S2;
      p.slot_m = *m;
      p.slot_q = *q;
    }
  } else {
    if (tv.is_odd()) {
      p.kind = PresKind::P;
      p.slot_m = tu;
      p.slot_q = tv;
    } else {
      auto q = tv.divided_by(2);
      if (!q) throw std::invalid_argument("even order not divisible by 2");
      p.kind = PresKind::GTet1;
      p.slot_m = tu;
      p.slot_q = *q;
    }
  }
  return p;
}

namespace detail {

enum class RelExp { Fixed2, Omega, SlotM, SlotQ, Commutator };

struct RelTemplate {
  const char* word;
  RelExp exp;
};

struct PresTemplate {
  const char* generators;
  const char* mode_marker;  // generator whose ^inf relation flags kleinian mode
  std::vector<RelTemplate> relations;
};

inline const PresTemplate& pres_template(PresKind k) {
  static const PresTemplate ph{
      "x,y,s", "x",
      {{"x", RelExp::Omega},
       {"s", RelExp::Fixed2},
       {"(xs)", RelExp::Fixed2},
       {"(ys)", RelExp::Fixed2},
       {"(xyxy^-1)", RelExp::SlotM},
       {"(y^-1xys)", RelExp::SlotQ}}};
  static const PresTemplate p{
      "w,x,y,z", "w",
      {{"w", RelExp::Omega},
       {"x", RelExp::Fixed2},
       {"y", RelExp::Fixed2},
       {"z", RelExp::Fixed2},
       {"(wx)", RelExp::Fixed2},
       {"(wy)", RelExp::Fixed2},
       {"(yz)", RelExp::Fixed2},
       {"(zx)", RelExp::SlotQ},
       {"(zw)", RelExp::SlotM}}};
  static const PresTemplate s2{
      "x,L", "x",
      {{"x", RelExp::Omega},
       {"(xLxL^-1)", RelExp::SlotM},
       {"(xL^2x^-1L^-2)", RelExp::SlotQ}}};
  static const PresTemplate gtet1{
      "x,y,z", "x",
      {{"x", RelExp::Omega},
       {"y", RelExp::Fixed2},
       {"z", RelExp::Omega},
       {"(xy)", RelExp::SlotM},
       {"(yzy^-1z^-1)", RelExp::SlotQ},
       {"[x,z]", RelExp::Commutator}}};
  switch (k) {
    case PresKind::PH: return ph;
    case PresKind::P: return p;
    case PresKind::S2: return s2;
    case PresKind::GTet1: return gtet1;
  }
  return ph;
}

}  // namespace detail

inline std::string render_presentation(const Presentation& p, RenderMode mode) {
  const detail::PresTemplate& tpl = detail::pres_template(p.kind);
  std::vector<std::string> rendered;
  auto push_slot = [&](const std::string& word, const ExtendedOrder& slot) {
    switch (slot.kind()) {
      case ExtendedOrder::Kind::InfBar:
        return;
      case ExtendedOrder::Kind::Inf:
        if (mode == RenderMode::Kleinian) rendered.push_back(word + "^inf");
        return;
      case ExtendedOrder::Kind::Finite:
        rendered.push_back(word + "^" + std::to_string(slot.value()));
        return;
    }
  };
  for (const auto& rel : tpl.relations) {
    std::string word = rel.word;
    switch (rel.exp) {
      case detail::RelExp::Fixed2:
        rendered.push_back(word + "^2");
        break;
      case detail::RelExp::Omega:
        if (mode == RenderMode::Kleinian) rendered.push_back(word + "^inf");
        break;
      case detail::RelExp::SlotM:
        push_slot(word, p.slot_m);
        break;
      case detail::RelExp::SlotQ:
        push_slot(word, p.slot_q);
        break;
      case detail::RelExp::Commutator:
        rendered.push_back(word);
        break;
    }
  }
  std::string out = "⟨";
  out += tpl.generators;
  if (!rendered.empty()) {
    out += " | ";
    for (size_t i = 0; i < rendered.size(); ++i) {
      if (i) out += "=";
      out += rendered[i];
    }
    out += "=1";
  }
  out += "⟩";
  return out;
}

struct ParsedPresentation {
  Presentation pres;
  RenderMode mode = RenderMode::Kleinian;
};

// Inverse of render_presentation on its own output. In abstract mode a
// dropped parabolic slot is indistinguishable from a dropped hyperbolic
// slot; the parser reports the hyperbolic reading there.
inline ParsedPresentation parse_presentation(const std::string& text) {
  const std::string open = "⟨", close = "⟩";
  if (text.size() < open.size() + close.size() ||
      text.compare(0, open.size(), open) != 0 ||
      text.compare(text.size() - close.size(), close.size(), close) != 0)
    throw std::invalid_argument("presentation text must be angle-bracketed");
  std::string body =
      text.substr(open.size(), text.size() - open.size() - close.size());

  size_t bar = body.find(" | ");
  std::string gens = bar == std::string::npos ? body : body.substr(0, bar);
  std::string chain = bar == std::string::npos ? "" : body.substr(bar + 3);

  PresKind kind;
  if (gens == "x,y,s") kind = PresKind::PH;
  else if (gens == "w,x,y,z") kind = PresKind::P;
  else if (gens == "x,L") kind = PresKind::S2;
  else if (gens == "x,y,z") kind = PresKind::GTet1;
  else throw std::invalid_argument("unrecognized generator set: " + gens);

  std::vector<std::string> terms;
  size_t pos = 0;
  while (pos <= chain.size() && !chain.empty()) {
    size_t eq = chain.find('=', pos);
    if (eq == std::string::npos) {
      terms.push_back(chain.substr(pos));
      break;
    }
    terms.push_back(chain.substr(pos, eq - pos));
    pos = eq + 1;
  }
  if (!terms.empty()) {
    if (terms.back() != "1")
      throw std::invalid_argument("relation chain must end in =1");
    terms.pop_back();
  }

  const detail::PresTemplate& tpl = detail::pres_template(kind);
  auto find_term = [&](const std::string& word) -> const std::string* {
    for (const auto& t : terms) {
      if (t.size() >= word.size() && t.compare(0, word.size(), word) == 0 &&
          (t.size() == word.size() || t[word.size()] == '^'))
        return &t;
    }
    return nullptr;
  };
  auto slot_from = [&](const std::string& word) {
    const std::string* t = find_term(word);
    if (!t) return ExtendedOrder::inf_bar();
    std::string exp = t->substr(word.size());
    if (exp == "^inf") return ExtendedOrder::inf();
    if (exp.size() < 2 || exp[0] != '^')
      throw std::invalid_argument("malformed relation: " + *t);
    return ExtendedOrder::finite(std::stoi(exp.substr(1)));
  };

  ParsedPresentation out;
  out.pres.kind = kind;
  out.mode = find_term(tpl.mode_marker) ? RenderMode::Kleinian
                                        : RenderMode::Abstract;
  for (const auto& rel : tpl.relations) {
    if (rel.exp == detail::RelExp::SlotM) out.pres.slot_m = slot_from(rel.word);
    if (rel.exp == detail::RelExp::SlotQ) out.pres.slot_q = slot_from(rel.word);
  }
  if (render_presentation(out.pres, out.mode) != text)
    throw std::invalid_argument("text does not match the recognized template");
  return out;
}

}  // namespace twogen
