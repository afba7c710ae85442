#ifndef CAVCOH_ODE_ORACLE_HPP
#define CAVCOH_ODE_ORACLE_HPP

#include <utility>
#include <vector>

#include "cavcoh/types.hpp"

namespace cavcoh {

struct TimeGrid {
    double t_start = 0.0;
    double t_end = 0.0;
    std::size_t steps = 1;

    double dt() const { return (t_end - t_start) / static_cast<double>(steps); }

    void validate() const {
        if (!(t_start >= 0.0) || !(t_end >= t_start))
            throw std::domain_error("time grid must satisfy 0 <= t_start <= t_end");
        if (steps < 1)
            throw std::domain_error("time grid needs at least one step");
    }
};

using Trajectory = std::vector<std::pair<double, DressedState>>;

/// Right-hand side of the time-local master equation in the dressed
/// basis: -i[H_JC, R] + gamma+(t) D+[R] + gamma-(t) D-[R].
DressedState master_rhs(const PhysicalParams& p, double t, const DressedState& r);

/// Classical fixed-step RK4 over the grid, with Hermitian
/// symmetrization after each step. Returns states at all grid points
/// including t_start.
Trajectory integrate(const PhysicalParams& p, const DressedState& r0, const TimeGrid& grid);

/// Max entrywise deviation between the RK4 trajectory and the
/// closed-form propagation of r0, over all grid points.
double compare_closed_form(const PhysicalParams& p, const DressedState& r0, const TimeGrid& grid);

} // namespace cavcoh

#endif
