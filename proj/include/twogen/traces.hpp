#pragma once

#include "twogen/orders.hpp"

namespace twogen {

struct TraceTriple {
  complexd tf{0.0, 0.0};
  complexd tg{0.0, 0.0};
  complexd tfg{0.0, 0.0};
};

// gamma = tr[f,g] - 2 as a polynomial in the three traces.
inline complexd fricke_commutator_gamma(const TraceTriple& t) {
  return t.tf * t.tf + t.tg * t.tg + t.tfg * t.tfg - t.tf * t.tg * t.tfg - 4.0;
}

// Specialization of the commutator trace for tr g = +-2:
// gamma = (tr(fg) - (tr g / 2) tr f)^2.
inline complexd gamma_parabolic(const TraceTriple& t) {
  complexd diff = t.tfg - (t.tg / 2.0) * t.tf;
  return diff * diff;
}

// tr(f g^k) for parabolic g with tr g = +2: linear in k.
inline complexd tr_fg_pow(complexd tf, complexd tfg, long k) {
  return tf + static_cast<double>(k) * (tfg - tf);
}

// One step of the three-term trace recursion
// tr(X g) = tr(X) tr(g) - tr(X g^{-1}).
inline complexd trace_recursion_step(complexd tr_prev, complexd tr_g,
                                     complexd tr_prev2) {
  return tr_prev * tr_g - tr_prev2;
}

// gamma(f^r, g) from gamma(f, g): the commutator parameter scales by
// beta(f^r) / beta(f) when f is replaced by a power along the same axis.
inline complexd gamma_rescale_primitive(complexd beta_f, complexd beta_fr,
                                        complexd gamma) {
  return beta_fr / beta_f * gamma;
}

}  // namespace twogen
