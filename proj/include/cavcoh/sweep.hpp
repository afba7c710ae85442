#ifndef CAVCOH_SWEEP_HPP
#define CAVCOH_SWEEP_HPP

#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cavcoh {

/// Malformed sweep configuration or preset request (usage error,
/// distinct from numerical/I-O failures).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Metric { CL1, CRel, RhoEE, NMeasure };

std::string metric_name(Metric m);
Metric metric_from_name(const std::string& name);

struct SweepAxis {
    std::string name;
    std::vector<double> values;
};

/// Parameter-grid description. Axis and fixed-parameter names are drawn
/// from {theta, p1, p2, omega, lambda, t, omega0}; unset parameters fall
/// back to the figure defaults (theta = pi/2, p1 = p2 = 0, omega = 1,
/// lambda = 5, t = 10, omega0 = 100). For the N metric, t is the BLP
/// integration horizon discretized with blp_steps grid steps.
struct SweepSpec {
    SweepAxis axis1;
    std::optional<SweepAxis> axis2;
    std::map<std::string, double> fixed;
    Metric metric = Metric::CL1;
    bool normalize = false;
    std::size_t blp_steps = 50000;

    void validate() const;
};

struct SeriesTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Evaluate the metric at every grid point (axis1 outer, axis2 inner).
/// Points are evaluated concurrently up to `jobs` threads; the output
/// ordering is deterministic regardless of jobs.
SeriesTable run_sweep(const SweepSpec& spec, unsigned jobs = 1);

/// Format with at least 9 significant digits; fixed-point where
/// practical so small round values print as e.g. "0.500000000".
std::string format_number(double v);

void write_csv(const SeriesTable& table, std::ostream& out);
void write_csv(const SeriesTable& table, const std::string& path);

SeriesTable read_csv(const std::string& path);

/// Parse a `key = value` sweep configuration file. Lists are
/// comma-separated; ranges are start:stop:count with an optional :log
/// suffix. Multi-valued keys become sweep axes (at most two).
SweepSpec parse_config(const std::string& path);

/// Canned sweeps for the seven reported parameter studies.
SweepSpec figure_preset(int figure);

std::vector<double> linspace(double start, double stop, std::size_t count);
std::vector<double> logspace(double start, double stop, std::size_t count);

} // namespace cavcoh

#endif
