#ifndef CAVCOH_MODEL_CORE_HPP
#define CAVCOH_MODEL_CORE_HPP

#include "cavcoh/types.hpp"

namespace cavcoh {

/// Decay rate of the |E1-> dressed state, lambda0*(1 - exp(-lambda*t)).
/// Non-negative and monotone non-decreasing in t.
double gamma_minus(const PhysicalParams& p, double t);

/// Decay rate of the |E1+> dressed state. Can be transiently negative
/// when 2*omega > lambda; its long-time asymptote is
/// lambda0*lambda^2 / (4*omega^2 + lambda^2).
double gamma_plus(const PhysicalParams& p, double t);

/// Closed-form memory integrals I+-(t) = integral of gamma+- over [0, t].
MemoryIntegrals memory_integrals(const PhysicalParams& p, double t);

/// Dressed-basis propagator coefficients at time t. Exponents are
/// accumulated first and exponentiated once.
DressedPropagator propagator(const PhysicalParams& p, double t);

/// Apply the element-wise propagator to a dressed state. Trace is
/// preserved exactly; the lower triangle follows by conjugation.
DressedState evolve_dressed(const DressedState& r0, const DressedPropagator& prop);

/// Lift an atomic state (cavity in vacuum) into the dressed basis.
DressedState embed_atom_with_vacuum(const AtomState& a);

/// Partial-trace a dressed state back to the 2x2 atomic matrix.
/// Trace of the output equals the trace of the input.
AtomState reduce_to_atom(const DressedState& r);

} // namespace cavcoh

#endif
