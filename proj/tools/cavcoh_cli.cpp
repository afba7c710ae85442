#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cavcoh/model_core.hpp"
#include "cavcoh/nonmarkov.hpp"
#include "cavcoh/ode_oracle.hpp"
#include "cavcoh/protocol.hpp"
#include "cavcoh/sweep.hpp"

namespace {

struct CommonOptions {
    double omega = 1.0;
    double lambda = 5.0;
    double theta = 0.5 * M_PI;
    double p1 = 0.0;
    double p2 = 0.0;
    double t_max = 10.0;
    std::size_t steps = 1000;
    bool normalize = false;
    double omega0 = 100.0;
    std::uint64_t seed = 12345;
    unsigned jobs = 1;
    std::string out;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--omega", opt.omega, "atom-cavity coupling (units of lambda0)");
    cmd->add_option("--lambda", opt.lambda, "spectral width (units of lambda0)");
    cmd->add_option("--theta", opt.theta, "initial-state polar angle (radians)");
    cmd->add_option("--p1", opt.p1, "weak-measurement strength");
    cmd->add_option("--p2", opt.p2, "reversal strength");
    cmd->add_option("--t-max", opt.t_max, "time horizon (units of 1/lambda0)");
    cmd->add_option("--steps", opt.steps, "number of grid steps");
    cmd->add_flag("--normalize", opt.normalize, "renormalize the post-measurement state");
    cmd->add_option("--omega0", opt.omega0,
                    "atomic Bohr frequency (phase only; does not affect observables)");
    cmd->add_option("--seed", opt.seed, "RNG seed");
    cmd->add_option("--jobs", opt.jobs, "worker thread bound for sweeps");
    cmd->add_option("--out", opt.out, "output CSV path (default: stdout)");
}

cavcoh::ProtocolConfig make_config(const CommonOptions& opt) {
    cavcoh::ProtocolConfig cfg;
    cfg.params.omega = opt.omega;
    cfg.params.lambda = opt.lambda;
    cfg.params.omega0 = opt.omega0;
    cfg.prep.theta = opt.theta;
    cfg.strengths.p1 = opt.p1;
    cfg.strengths.p2 = opt.p2;
    cfg.normalize = opt.normalize;
    return cfg;
}

void emit(const cavcoh::SeriesTable& table, const std::string& out) {
    if (out.empty())
        cavcoh::write_csv(table, std::cout);
    else
        cavcoh::write_csv(table, out);
}

int run_simulate(const CommonOptions& opt) {
    const cavcoh::ProtocolConfig cfg = make_config(opt);
    cavcoh::SeriesTable table;
    table.columns = {"t",         "rho_ee", "rho_gg", "re_rho_eg",
                     "im_rho_eg", "c_l1",   "c_rel",  "trace"};
    const auto times = cavcoh::linspace(0.0, opt.t_max, opt.steps + 1);
    for (double t : times) {
        const cavcoh::AtomState a = cavcoh::run_protocol(cfg, t);
        table.rows.push_back({t, a.m(0, 0).real(), a.m(1, 1).real(), a.m(0, 1).real(),
                              a.m(0, 1).imag(), cavcoh::coherence_l1(a),
                              cavcoh::coherence_rel_entropy(a), a.trace()});
    }
    emit(table, opt.out);
    return 0;
}

int run_nonmarkov(const CommonOptions& opt, std::size_t samples) {
    cavcoh::PhysicalParams params;
    params.omega = opt.omega;
    params.lambda = opt.lambda;
    params.omega0 = opt.omega0;
    const cavcoh::TimeGrid grid{0.0, opt.t_max, opt.steps};

    const cavcoh::StatePair canonical{cavcoh::bloch_state(0.0, 0.0),
                                      cavcoh::bloch_state(M_PI, 0.0)};
    const cavcoh::StatePair equatorial{cavcoh::bloch_state(0.5 * M_PI, 0.0),
                                       cavcoh::bloch_state(0.5 * M_PI, M_PI)};
    const auto n_canonical = cavcoh::blp_measure(params, canonical, grid);
    const auto n_equatorial = cavcoh::blp_measure(params, equatorial, grid);
    const auto best = cavcoh::maximize_over_pairs(params, grid, samples, opt.seed);

    std::printf("canonical pair (|e>,|g>):      N = %s\n",
                cavcoh::format_number(n_canonical.n_value).c_str());
    std::printf("equatorial pair (|e>+-|g>)/s2: N = %s\n",
                cavcoh::format_number(n_equatorial.n_value).c_str());
    std::printf("best of %zu random pairs:      N = %s\n", samples,
                cavcoh::format_number(best.n_value).c_str());
    std::printf("horizon lambda0*t = %g, steps = %zu\n", opt.t_max, opt.steps);
    if (params.lambda <= 0.011)
        std::printf("note: lambda this small decays slower than the horizon; "
                    "N is horizon-limited\n");

    if (!opt.out.empty()) {
        const auto series = cavcoh::evolve_pair(params, best.pair, grid);
        cavcoh::SeriesTable table;
        table.columns = {"t", "D"};
        const double dt = grid.dt();
        for (std::size_t n = 0; n < series.d.size(); ++n)
            table.rows.push_back({grid.t_start + static_cast<double>(n) * dt, series.d[n]});
        cavcoh::write_csv(table, opt.out);
    }
    return 0;
}

int run_validate(const CommonOptions& opt, double dt, bool single_set) {
    std::vector<std::pair<double, double>> sets;
    if (single_set)
        sets.push_back({opt.omega, opt.lambda});
    else
        sets = {{1.0, 5.0}, {1.0, 3.0}, {10.0, 3.0}, {1.0, 0.1}};

    const auto steps = static_cast<std::size_t>(std::llround(opt.t_max / dt));
    const cavcoh::TimeGrid grid{0.0, opt.t_max, steps};

    cavcoh::ProtocolConfig cfg = make_config(opt);
    cfg.strengths = {};
    const cavcoh::AtomState initial = cavcoh::prepare_initial(cfg.prep);

    bool ok = true;
    for (const auto& [omega, lambda] : sets) {
        cavcoh::PhysicalParams params;
        params.omega = omega;
        params.lambda = lambda;
        params.omega0 = opt.omega0;
        const double dev = cavcoh::compare_closed_form(
            params, cavcoh::embed_atom_with_vacuum(initial), grid);
        const bool pass = dev <= 1e-6;
        ok = ok && pass;
        std::printf("omega=%g lambda=%g: max deviation %.3e  [%s]\n", omega, lambda, dev,
                    pass ? "ok" : "FAIL");
    }
    return ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coherence dynamics of an atom in a dissipative cavity "
                 "under weak measurement and reversal"};
    app.require_subcommand(1);

    CommonOptions opt;

    auto* simulate = app.add_subcommand("simulate", "tabulate one protocol trajectory");
    add_common_flags(simulate, opt);

    auto* figure = app.add_subcommand("figure", "run a canned parameter study (1..7)");
    int figure_no = 1;
    figure->add_option("number", figure_no, "figure number")->required();
    add_common_flags(figure, opt);

    auto* sweep = app.add_subcommand("sweep", "run a sweep from a config file");
    std::string config_path;
    sweep->add_option("--config", config_path, "sweep configuration file")->required();
    add_common_flags(sweep, opt);

    auto* nonmarkov = app.add_subcommand("nonmarkov", "BLP non-Markovianity measure");
    std::size_t samples = 200;
    nonmarkov->add_option("--samples", samples, "number of random state pairs");
    add_common_flags(nonmarkov, opt);
    opt.t_max = 10.0;

    auto* validate = app.add_subcommand("validate",
                                        "closed form vs master-equation integrator");
    double dt = 1e-4;
    validate->add_option("--dt", dt, "integrator step (units of 1/lambda0)");
    add_common_flags(validate, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(simulate)) return run_simulate(opt);
        if (app.got_subcommand(figure)) {
            auto spec = cavcoh::figure_preset(figure_no);
            emit(cavcoh::run_sweep(spec, opt.jobs), opt.out);
            return 0;
        }
        if (app.got_subcommand(sweep)) {
            auto spec = cavcoh::parse_config(config_path);
            emit(cavcoh::run_sweep(spec, opt.jobs), opt.out);
            return 0;
        }
        if (app.got_subcommand(nonmarkov)) {
            // nonmarkov defaults: horizon 50, 50000 steps
            if (!nonmarkov->count("--t-max")) opt.t_max = 50.0;
            if (!nonmarkov->count("--steps")) opt.steps = 50000;
            return run_nonmarkov(opt, samples);
        }
        if (app.got_subcommand(validate)) {
            const bool single = validate->count("--omega") || validate->count("--lambda");
            return run_validate(opt, dt, single);
        }
    } catch (const cavcoh::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
