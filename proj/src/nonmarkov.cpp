#include "cavcoh/nonmarkov.hpp"

#include <cmath>
#include <random>

#include "cavcoh/model_core.hpp"

namespace cavcoh {

namespace {

void require_normalized(const AtomState& a) {
    a.require_hermitian();
    if (std::abs(a.trace() - 1.0) > 1e-9)
        throw std::invalid_argument("state must have unit trace");
}

AtomState channel(const AtomState& a, const DressedPropagator& prop) {
    return reduce_to_atom(evolve_dressed(embed_atom_with_vacuum(a), prop));
}

} // namespace

double trace_distance(const AtomState& a, const AtomState& b) {
    require_normalized(a);
    require_normalized(b);
    // The difference is Hermitian and traceless: [[x, z], [conj(z), -x]]
    // with eigenvalues +-sqrt(x^2 + |z|^2).
    const Matrix2c diff = a.m - b.m;
    const double x = 0.5 * (diff(0, 0) - diff(1, 1)).real();
    return std::sqrt(x * x + std::norm(diff(0, 1)));
}

DistanceSeries evolve_pair(const PhysicalParams& p, const StatePair& pair, const TimeGrid& grid) {
    grid.validate();
    require_normalized(pair.first);
    require_normalized(pair.second);

    DistanceSeries series;
    series.grid = grid;
    series.d.reserve(grid.steps + 1);
    const double dt = grid.dt();
    for (std::size_t n = 0; n <= grid.steps; ++n) {
        const double t = grid.t_start + static_cast<double>(n) * dt;
        const DressedPropagator prop = propagator(p, t);
        const AtomState a = channel(pair.first, prop);
        const AtomState b = channel(pair.second, prop);
        series.d.push_back(trace_distance(a, b));
    }
    series.sigma.reserve(grid.steps);
    for (std::size_t n = 0; n < grid.steps; ++n)
        series.sigma.push_back((series.d[n + 1] - series.d[n]) / dt);
    return series;
}

NonMarkovResult blp_measure(const PhysicalParams& p, const StatePair& pair, const TimeGrid& grid) {
    const DistanceSeries series = evolve_pair(p, pair, grid);
    const double dt = grid.dt();
    double n_value = 0.0;
    for (double s : series.sigma)
        if (s > 0.0) n_value += s * dt;

    NonMarkovResult result;
    result.n_value = n_value;
    result.pair = pair;
    result.horizon = grid.t_end;
    return result;
}

AtomState bloch_state(double theta, double phi) {
    const Complex ce = std::cos(0.5 * theta);
    const Complex cg = std::exp(Complex{0.0, 1.0} * phi) * std::sin(0.5 * theta);

    AtomState a;
    a.m(0, 0) = std::norm(ce);
    a.m(0, 1) = ce * std::conj(cg);
    a.m(1, 0) = std::conj(a.m(0, 1));
    a.m(1, 1) = std::norm(cg);
    return a;
}

NonMarkovResult maximize_over_pairs(const PhysicalParams& p, const TimeGrid& grid,
                                    std::size_t samples, std::uint64_t seed) {
    if (samples < 1)
        throw std::domain_error("at least one random sample is required");

    std::vector<StatePair> candidates;
    candidates.reserve(samples + 2);
    candidates.push_back({bloch_state(0.0, 0.0), bloch_state(M_PI, 0.0)});
    candidates.push_back({bloch_state(0.5 * M_PI, 0.0), bloch_state(0.5 * M_PI, M_PI)});

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    auto random_state = [&] {
        // Haar on the Bloch sphere: cos(theta) uniform, phi uniform.
        const double theta = std::acos(1.0 - 2.0 * uni(rng));
        const double phi = 2.0 * M_PI * uni(rng);
        return bloch_state(theta, phi);
    };
    for (std::size_t i = 0; i < samples; ++i) {
        StatePair pair{random_state(), random_state()};
        candidates.push_back(pair);
    }

    NonMarkovResult best = blp_measure(p, candidates[0], grid);
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        const NonMarkovResult r = blp_measure(p, candidates[i], grid);
        if (r.n_value > best.n_value) best = r;
    }
    return best;
}

} // namespace cavcoh
