#include "cavcoh/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cavcoh/model_core.hpp"

namespace cavcoh {

namespace {

void require_strength(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error(std::string(name) + " must lie in [0, 1]");
}

double entropy_bits(double p0, double p1) {
    auto h = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
    return h(p0) + h(p1);
}

} // namespace

AtomState prepare_initial(const InitialPreparation& prep) {
    const double two_pi = 2.0 * M_PI;
    double theta = std::fmod(prep.theta, two_pi);
    if (theta < 0.0) theta += two_pi;
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);

    AtomState a;
    a.m(0, 0) = c * c;
    a.m(0, 1) = s * c;
    a.m(1, 0) = s * c;
    a.m(1, 1) = s * s;
    return a;
}

AtomState apply_weak_measurement(const AtomState& a, double p1) {
    require_strength(p1, "p1");
    a.require_hermitian();
    const double k = std::sqrt(1.0 - p1);

    AtomState out;
    out.m(0, 0) = (1.0 - p1) * a.m(0, 0);
    out.m(0, 1) = k * a.m(0, 1);
    out.m(1, 0) = k * a.m(1, 0);
    out.m(1, 1) = a.m(1, 1);
    return out;
}

AtomState apply_reversal(const AtomState& a, double p2) {
    require_strength(p2, "p2");
    a.require_hermitian();
    const double k = std::sqrt(1.0 - p2);

    AtomState out;
    out.m(0, 0) = a.m(0, 0);
    out.m(0, 1) = k * a.m(0, 1);
    out.m(1, 0) = k * a.m(1, 0);
    out.m(1, 1) = (1.0 - p2) * a.m(1, 1);
    return out;
}

AtomState run_protocol(const ProtocolConfig& cfg, double t) {
    const AtomState prepared = prepare_initial(cfg.prep);
    const AtomState measured = apply_weak_measurement(prepared, cfg.strengths.p1);
    const DressedState embedded = embed_atom_with_vacuum(measured);
    const DressedState evolved = evolve_dressed(embedded, propagator(cfg.params, t));
    const AtomState reduced = reduce_to_atom(evolved);
    AtomState out = apply_reversal(reduced, cfg.strengths.p2);
    if (cfg.normalize) {
        const double tr = out.trace();
        if (!(tr > 0.0))
            throw std::domain_error("cannot normalize a zero-trace state");
        out.m /= tr;
    }
    return out;
}

double coherence_l1(const AtomState& a) {
    a.require_hermitian();
    return std::abs(a.m(0, 1)) + std::abs(a.m(1, 0));
}

double coherence_rel_entropy(const AtomState& a) {
    a.require_hermitian();
    const double tr = a.trace();
    if (!(tr > 0.0))
        throw std::domain_error("relative-entropy coherence needs a positive trace");

    const double pe = a.m(0, 0).real() / tr;
    const double pg = a.m(1, 1).real() / tr;
    // Eigenvalues of the normalized 2x2 Hermitian matrix.
    const double x = 0.5 * (pe - pg);
    const double disc = std::sqrt(x * x + std::norm(a.m(0, 1) / tr));
    const double l0 = std::clamp(0.5 + disc, 0.0, 1.0);
    const double l1 = std::clamp(0.5 - disc, 0.0, 1.0);

    const double c = entropy_bits(pe, pg) - entropy_bits(l0, l1);
    return c > 0.0 ? c : 0.0;
}

CoherenceSample sample_protocol(const ProtocolConfig& cfg, double t) {
    const AtomState a = run_protocol(cfg, t);
    CoherenceSample s;
    s.t = t;
    s.c_l1 = coherence_l1(a);
    // the p1 = p2 = 1 corner annihilates the state entirely
    s.c_rel = a.trace() > 0.0 ? coherence_rel_entropy(a) : 0.0;
    s.rho_ee = a.m(0, 0).real();
    s.trace = a.trace();
    return s;
}

} // namespace cavcoh
