#ifndef CAVCOH_TYPES_HPP
#define CAVCOH_TYPES_HPP

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace cavcoh {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix3c = Eigen::Matrix3cd;

/// Rate constants of the atom-cavity-reservoir model. All rates are in
/// units of lambda0, which sets the global time scale (lambda0 = 1).
struct PhysicalParams {
    double lambda0 = 1.0;  ///< system-environment coupling strength
    double lambda = 5.0;   ///< spectral width of the Lorentzian reservoir
    double omega = 1.0;    ///< atom-cavity coupling
    double omega0 = 100.0; ///< atomic Bohr frequency (phase only, observable-irrelevant)

    /// Markovian regime predicate: lambda > 2*lambda0.
    bool is_weak_regime() const { return lambda > 2.0 * lambda0; }

    void validate() const {
        if (!(lambda0 > 0.0) || !std::isfinite(lambda0))
            throw std::domain_error("lambda0 must be positive and finite");
        if (!(lambda > 0.0) || !std::isfinite(lambda))
            throw std::domain_error("lambda must be positive and finite");
        if (!(omega >= 0.0) || !std::isfinite(omega))
            throw std::domain_error("omega must be non-negative and finite");
        if (!(omega0 >= 0.0) || !std::isfinite(omega0))
            throw std::domain_error("omega0 must be non-negative and finite");
    }
};

/// Accumulated decay exponents I+(t), I-(t); both vanish at t = 0.
struct MemoryIntegrals {
    double i_plus = 0.0;
    double i_minus = 0.0;
};

/// The six independent coefficients of the dressed-basis propagator.
/// Coefficients for transposed index pairs are the complex conjugates.
struct DressedPropagator {
    double a11 = 1.0;
    double a22 = 1.0;
    double a33 = 1.0;
    Complex a12{1.0, 0.0};
    Complex a13{1.0, 0.0};
    Complex a23{1.0, 0.0};
};

/// 3x3 density matrix in the dressed basis {|E1+>, |E1->, |E0>}.
struct DressedState {
    Matrix3c r = Matrix3c::Zero();

    double trace() const { return r.trace().real(); }

    double hermiticity_defect() const {
        return (r - r.adjoint()).cwiseAbs().maxCoeff();
    }

    void require_hermitian(double tol = 1e-10) const {
        if (hermiticity_defect() > tol)
            throw std::invalid_argument("dressed state is not Hermitian");
    }
};

/// 2x2 atomic density matrix in the basis {|e>, |g>}. May be
/// sub-normalized (trace < 1) after a measurement operation.
struct AtomState {
    Matrix2c m = Matrix2c::Zero();

    double trace() const { return m.trace().real(); }

    double hermiticity_defect() const {
        return (m - m.adjoint()).cwiseAbs().maxCoeff();
    }

    void require_hermitian(double tol = 1e-10) const {
        if (hermiticity_defect() > tol)
            throw std::invalid_argument("atom state is not Hermitian");
    }
};

} // namespace cavcoh

#endif
