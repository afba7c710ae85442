#include "cavcoh/ode_oracle.hpp"

#include <cmath>
#include <string>

#include "cavcoh/model_core.hpp"

namespace cavcoh {

namespace {

Matrix3c rhs_matrix(const PhysicalParams& p, double t, const Matrix3c& r) {
    const Complex i1{0.0, 1.0};
    const double gp = gamma_plus(p, t);
    const double gm = gamma_minus(p, t);

    // H_JC is diagonal in the dressed basis.
    const Eigen::Vector3d energies{0.5 * p.omega0 + p.omega,
                                   0.5 * p.omega0 - p.omega,
                                   -0.5 * p.omega0};
    Matrix3c out = Matrix3c::Zero();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            out(a, b) = -i1 * (energies(a) - energies(b)) * r(a, b);

    // Dissipator for dressed state k (0 = E1+, 1 = E1-):
    // gamma * (1/2 |E0><Ek| R |Ek><E0| - 1/4 {|Ek><Ek|, R}).
    const double gammas[2] = {gp, gm};
    for (int k = 0; k < 2; ++k) {
        const double g = gammas[k];
        out(2, 2) += 0.5 * g * r(k, k);
        for (int j = 0; j < 3; ++j) {
            out(k, j) -= 0.25 * g * r(k, j);
            out(j, k) -= 0.25 * g * r(j, k);
        }
    }
    return out;
}

} // namespace

DressedState master_rhs(const PhysicalParams& p, double t, const DressedState& r) {
    DressedState out;
    out.r = rhs_matrix(p, t, r.r);
    return out;
}

Trajectory integrate(const PhysicalParams& p, const DressedState& r0, const TimeGrid& grid) {
    grid.validate();
    r0.require_hermitian();

    const double dt = grid.dt();
    Trajectory traj;
    traj.reserve(grid.steps + 1);

    Matrix3c r = r0.r;
    traj.push_back({grid.t_start, DressedState{r}});
    for (std::size_t n = 0; n < grid.steps; ++n) {
        const double t = grid.t_start + static_cast<double>(n) * dt;
        const Matrix3c k1 = rhs_matrix(p, t, r);
        const Matrix3c k2 = rhs_matrix(p, t + 0.5 * dt, r + 0.5 * dt * k1);
        const Matrix3c k3 = rhs_matrix(p, t + 0.5 * dt, r + 0.5 * dt * k2);
        const Matrix3c k4 = rhs_matrix(p, t + dt, r + dt * k3);
        r += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        r = 0.5 * (r + r.adjoint().eval());
        if (!r.allFinite())
            throw std::runtime_error("master-equation integration diverged at t = " +
                                     std::to_string(t + dt));
        traj.push_back({t + dt, DressedState{r}});
    }
    return traj;
}

double compare_closed_form(const PhysicalParams& p, const DressedState& r0, const TimeGrid& grid) {
    if (grid.t_start != 0.0)
        throw std::domain_error("closed-form comparison requires t_start = 0");
    const Trajectory traj = integrate(p, r0, grid);
    double max_dev = 0.0;
    for (const auto& [t, state] : traj) {
        const DressedState closed = evolve_dressed(r0, propagator(p, t));
        max_dev = std::max(max_dev, (closed.r - state.r).cwiseAbs().maxCoeff());
    }
    return max_dev;
}

} // namespace cavcoh
