#ifndef CAVCOH_PROTOCOL_HPP
#define CAVCOH_PROTOCOL_HPP

#include "cavcoh/types.hpp"

namespace cavcoh {

/// Initial pure state cos(theta/2)|e> + sin(theta/2)|g>.
struct InitialPreparation {
    double theta = 0.0; ///< polar angle, reduced mod 2*pi
};

struct MeasurementStrengths {
    double p1 = 0.0; ///< weak-measurement strength, in [0, 1]
    double p2 = 0.0; ///< reversal strength, in [0, 1]
};

struct ProtocolConfig {
    PhysicalParams params;
    InitialPreparation prep;
    MeasurementStrengths strengths;
    /// Divide the final state by its trace. Off by default: the figure
    /// presets operate on the raw post-measurement state.
    bool normalize = false;
};

/// One tabulated output point of the protocol.
struct CoherenceSample {
    double t = 0.0;
    double c_l1 = 0.0;
    double c_rel = 0.0;
    double rho_ee = 0.0;
    double trace = 1.0;
};

AtomState prepare_initial(const InitialPreparation& prep);

/// K1 a K1^dag with K1 = diag(sqrt(1-p1), 1): damps the excited amplitude.
AtomState apply_weak_measurement(const AtomState& a, double p1);

/// K2 a K2^dag with K2 = diag(1, sqrt(1-p2)): damps the ground amplitude.
AtomState apply_reversal(const AtomState& a, double p2);

/// Full pipeline: prepare -> weak measurement -> cavity evolution for
/// time t -> reversal -> optional trace normalization.
AtomState run_protocol(const ProtocolConfig& cfg, double t);

/// l1 coherence |rho_eg| + |rho_ge|, evaluated on the state as given.
double coherence_l1(const AtomState& a);

/// Relative entropy of coherence S(rho_diag) - S(rho), base-2 entropies,
/// computed on the trace-normalized state.
double coherence_rel_entropy(const AtomState& a);

/// Evaluate the protocol at time t and tabulate all reported quantities.
CoherenceSample sample_protocol(const ProtocolConfig& cfg, double t);

} // namespace cavcoh

#endif
