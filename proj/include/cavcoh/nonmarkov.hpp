#ifndef CAVCOH_NONMARKOV_HPP
#define CAVCOH_NONMARKOV_HPP

#include <cstdint>
#include <vector>

#include "cavcoh/ode_oracle.hpp"
#include "cavcoh/types.hpp"

namespace cavcoh {

/// Pair of normalized initial atomic states.
struct StatePair {
    AtomState first;
    AtomState second;
};

/// Trace distance D(t_i) on a uniform grid plus its forward-difference
/// rate sigma_i = (D(t_{i+1}) - D(t_i)) / dt.
struct DistanceSeries {
    TimeGrid grid;
    std::vector<double> d;
    std::vector<double> sigma;
};

struct NonMarkovResult {
    double n_value = 0.0;
    StatePair pair;
    double horizon = 0.0;
};

/// Half the trace norm of a - b; both inputs must be normalized.
double trace_distance(const AtomState& a, const AtomState& b);

/// Evolve both states of the pair through the bare cavity channel
/// (embed -> propagate -> reduce, no measurements) and tabulate the
/// trace distance on the grid.
DistanceSeries evolve_pair(const PhysicalParams& p, const StatePair& pair, const TimeGrid& grid);

/// Total positive variation of the trace distance over the grid.
NonMarkovResult blp_measure(const PhysicalParams& p, const StatePair& pair, const TimeGrid& grid);

/// Random-pair maximization of the BLP measure. The canonical pair
/// (|e>, |g>) and the equatorial pair (|e>+-|g>)/sqrt(2) are always
/// evaluated in addition to `samples` Haar-random pure pairs; ties go
/// to the earlier candidate.
NonMarkovResult maximize_over_pairs(const PhysicalParams& p, const TimeGrid& grid,
                                    std::size_t samples, std::uint64_t seed);

/// Pure state at Bloch angles (theta, phi), in the {|e>, |g>} basis.
AtomState bloch_state(double theta, double phi);

} // namespace cavcoh

#endif
