#include "cavcoh/model_core.hpp"

#include <cmath>

namespace cavcoh {

namespace {

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::domain_error("time must be non-negative and finite");
}

} // namespace

double gamma_minus(const PhysicalParams& p, double t) {
    p.validate();
    require_time(t);
    return p.lambda0 * (1.0 - std::exp(-p.lambda * t));
}

double gamma_plus(const PhysicalParams& p, double t) {
    p.validate();
    require_time(t);
    const double denom = 4.0 * p.omega * p.omega + p.lambda * p.lambda;
    const double envelope = std::exp(-p.lambda * t);
    const double osc = (2.0 * p.omega / p.lambda) * std::sin(2.0 * p.omega * t) -
                       std::cos(2.0 * p.omega * t);
    return p.lambda0 * p.lambda * p.lambda / denom * (1.0 + osc * envelope);
}

MemoryIntegrals memory_integrals(const PhysicalParams& p, double t) {
    p.validate();
    require_time(t);
    const double lam = p.lambda;
    const double om = p.omega;
    const double denom = 4.0 * om * om + lam * lam;
    const double decay = std::exp(-lam * t);

    MemoryIntegrals out;
    out.i_minus = p.lambda0 * t + (p.lambda0 / lam) * (decay - 1.0);
    out.i_plus = p.lambda0 * lam * lam / denom *
                 (t - 4.0 * om * decay * std::sin(2.0 * om * t) / denom +
                  (lam * lam - 4.0 * om * om) * (decay * std::cos(2.0 * om * t) - 1.0) /
                      (lam * denom));
    return out;
}

DressedPropagator propagator(const PhysicalParams& p, double t) {
    const MemoryIntegrals mi = memory_integrals(p, t);
    const Complex i1{0.0, 1.0};

    DressedPropagator prop;
    prop.a11 = std::exp(-0.5 * mi.i_plus);
    prop.a22 = std::exp(-0.5 * mi.i_minus);
    prop.a33 = 1.0;
    prop.a12 = std::exp(-i1 * (2.0 * p.omega * t)) *
               std::exp(-0.25 * (mi.i_plus + mi.i_minus));
    prop.a13 = std::exp(-i1 * ((p.omega0 + p.omega) * t)) * std::exp(-0.25 * mi.i_plus);
    prop.a23 = std::exp(-i1 * ((p.omega0 - p.omega) * t)) * std::exp(-0.25 * mi.i_minus);
    return prop;
}

DressedState evolve_dressed(const DressedState& r0, const DressedPropagator& prop) {
    r0.require_hermitian();
    const Matrix3c& r = r0.r;

    DressedState out;
    out.r(0, 0) = prop.a11 * r(0, 0);
    out.r(1, 1) = prop.a22 * r(1, 1);
    out.r(0, 1) = prop.a12 * r(0, 1);
    out.r(0, 2) = prop.a13 * r(0, 2);
    out.r(1, 2) = prop.a23 * r(1, 2);
    // R33 picks up the population leaving the single-excitation sector.
    out.r(2, 2) = (1.0 - prop.a11) * r(0, 0) + (1.0 - prop.a22) * r(1, 1) + r(2, 2);
    out.r(1, 0) = std::conj(out.r(0, 1));
    out.r(2, 0) = std::conj(out.r(0, 2));
    out.r(2, 1) = std::conj(out.r(1, 2));
    return out;
}

DressedState embed_atom_with_vacuum(const AtomState& a) {
    a.require_hermitian();
    const Complex ee = a.m(0, 0);
    const Complex eg = a.m(0, 1);
    const Complex gg = a.m(1, 1);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    // |0e> = (|E1+> - |E1->)/sqrt(2), |0g> = |E0>.
    DressedState out;
    out.r(0, 0) = 0.5 * ee;
    out.r(1, 1) = 0.5 * ee;
    out.r(0, 1) = -0.5 * ee;
    out.r(1, 0) = -0.5 * std::conj(ee);
    out.r(0, 2) = inv_sqrt2 * eg;
    out.r(1, 2) = -inv_sqrt2 * eg;
    out.r(2, 0) = std::conj(out.r(0, 2));
    out.r(2, 1) = std::conj(out.r(1, 2));
    out.r(2, 2) = gg;
    return out;
}

AtomState reduce_to_atom(const DressedState& d) {
    d.require_hermitian();
    const Matrix3c& r = d.r;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    AtomState out;
    out.m(0, 0) = 0.5 * (r(0, 0) - r(0, 1) - r(1, 0) + r(1, 1));
    out.m(0, 1) = inv_sqrt2 * (r(0, 2) - r(1, 2));
    out.m(1, 0) = std::conj(out.m(0, 1));
    out.m(1, 1) = 0.5 * (r(0, 0) + r(0, 1) + r(1, 0) + r(1, 1)) + r(2, 2);
    return out;
}

} // namespace cavcoh
