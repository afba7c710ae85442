#include "cavcoh/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "cavcoh/nonmarkov.hpp"
#include "cavcoh/protocol.hpp"

namespace cavcoh {

namespace {

const std::set<std::string> kParamNames = {"theta", "p1", "p2", "omega",
                                           "lambda", "t", "omega0"};

std::map<std::string, double> default_params() {
    return {{"theta", 0.5 * M_PI}, {"p1", 0.0},    {"p2", 0.0},    {"omega", 1.0},
            {"lambda", 5.0},       {"t", 10.0},    {"omega0", 100.0}};
}

void check_domain(const std::string& name, double v) {
    if (!std::isfinite(v))
        throw std::domain_error(name + " must be finite");
    if ((name == "p1" || name == "p2") && !(v >= 0.0 && v <= 1.0))
        throw std::domain_error(name + " must lie in [0, 1]");
    if (name == "lambda" && !(v > 0.0))
        throw std::domain_error("lambda must be positive");
    if ((name == "omega" || name == "omega0" || name == "t") && !(v >= 0.0))
        throw std::domain_error(name + " must be non-negative");
}

double evaluate_point(const SweepSpec& spec, const std::map<std::string, double>& values) {
    PhysicalParams params;
    params.omega = values.at("omega");
    params.lambda = values.at("lambda");
    params.omega0 = values.at("omega0");

    if (spec.metric == Metric::NMeasure) {
        TimeGrid grid{0.0, values.at("t"), spec.blp_steps};
        StatePair canonical{bloch_state(0.0, 0.0), bloch_state(M_PI, 0.0)};
        return blp_measure(params, canonical, grid).n_value;
    }

    ProtocolConfig cfg;
    cfg.params = params;
    cfg.prep.theta = values.at("theta");
    cfg.strengths.p1 = values.at("p1");
    cfg.strengths.p2 = values.at("p2");
    cfg.normalize = spec.normalize;
    const CoherenceSample s = sample_protocol(cfg, values.at("t"));
    switch (spec.metric) {
        case Metric::CL1: return s.c_l1;
        case Metric::CRel: return s.c_rel;
        case Metric::RhoEE: return s.rho_ee;
        default: return s.c_l1;
    }
}

} // namespace

std::string metric_name(Metric m) {
    switch (m) {
        case Metric::CL1: return "c_l1";
        case Metric::CRel: return "c_rel";
        case Metric::RhoEE: return "rho_ee";
        case Metric::NMeasure: return "N";
    }
    return "c_l1";
}

Metric metric_from_name(const std::string& name) {
    if (name == "c_l1") return Metric::CL1;
    if (name == "c_rel") return Metric::CRel;
    if (name == "rho_ee") return Metric::RhoEE;
    if (name == "N") return Metric::NMeasure;
    throw ConfigError("unknown metric '" + name +
                             "' (expected c_l1, c_rel, rho_ee or N)");
}

void SweepSpec::validate() const {
    auto check_axis = [](const SweepAxis& axis) {
        if (!kParamNames.count(axis.name) || axis.name == "omega0")
            throw ConfigError("invalid sweep axis '" + axis.name + "'");
        if (axis.values.empty())
            throw ConfigError("sweep axis '" + axis.name + "' has no values");
        for (double v : axis.values) check_domain(axis.name, v);
    };
    check_axis(axis1);
    if (axis2) {
        check_axis(*axis2);
        if (axis2->name == axis1.name)
            throw ConfigError("sweep axes must be distinct");
    }
    for (const auto& [name, value] : fixed) {
        if (!kParamNames.count(name))
            throw ConfigError("unknown parameter '" + name + "'");
        if (name == axis1.name || (axis2 && name == axis2->name))
            throw ConfigError("parameter '" + name + "' is both fixed and an axis");
        check_domain(name, value);
    }
    if (blp_steps < 1)
        throw ConfigError("blp_steps must be at least 1");
}

SeriesTable run_sweep(const SweepSpec& spec, unsigned jobs) {
    spec.validate();

    std::map<std::string, double> base = default_params();
    for (const auto& [name, value] : spec.fixed) base[name] = value;

    const std::size_t n1 = spec.axis1.values.size();
    const std::size_t n2 = spec.axis2 ? spec.axis2->values.size() : 1;
    const std::size_t total = n1 * n2;

    std::vector<double> results(total);
    auto worker = [&](std::size_t begin, std::size_t stride) {
        std::map<std::string, double> values = base;
        for (std::size_t idx = begin; idx < total; idx += stride) {
            values[spec.axis1.name] = spec.axis1.values[idx / n2];
            if (spec.axis2) values[spec.axis2->name] = spec.axis2->values[idx % n2];
            results[idx] = evaluate_point(spec, values);
        }
    };

    const unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, total));
    if (n_threads == 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> threads;
        for (unsigned k = 0; k < n_threads; ++k)
            threads.emplace_back(worker, k, n_threads);
        for (auto& th : threads) th.join();
    }

    SeriesTable table;
    table.columns.push_back(spec.axis1.name);
    if (spec.axis2) table.columns.push_back(spec.axis2->name);
    table.columns.push_back(metric_name(spec.metric));
    table.rows.reserve(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::vector<double> row;
        row.push_back(spec.axis1.values[idx / n2]);
        if (spec.axis2) row.push_back(spec.axis2->values[idx % n2]);
        row.push_back(results[idx]);
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string format_number(double v) {
    if (v == 0.0) return "0.000000000";
    // Shortest representation that parses back to the same double,
    // padded to at least nine significant digits.
    char buf[48];
    for (int prec = 9; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    std::string s(buf);
    const auto epos = s.find_first_of("eE");
    std::string mantissa = epos == std::string::npos ? s : s.substr(0, epos);
    const std::string exponent = epos == std::string::npos ? "" : s.substr(epos);
    int sig = 0;
    bool started = false;
    for (char c : mantissa) {
        if (c < '0' || c > '9') continue;
        if (c != '0') started = true;
        if (started) ++sig;
    }
    if (sig < 9) {
        if (mantissa.find('.') == std::string::npos) mantissa += '.';
        mantissa.append(static_cast<std::size_t>(9 - sig), '0');
    }
    return mantissa + exponent;
}

void write_csv(const SeriesTable& table, std::ostream& out) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out << ',';
        out << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            out << format_number(row[c]);
        }
        out << '\n';
    }
}

void write_csv(const SeriesTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    write_csv(table, out);
    out.flush();
    if (!out)
        throw std::runtime_error("write failed for '" + path + "'");
}

SeriesTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "' for reading");

    SeriesTable table;
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty CSV file '" + path + "'");
    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) table.columns.push_back(cell);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        table.rows.push_back(std::move(row));
    }
    return table;
}

namespace {

std::vector<double> parse_value_list(const std::string& text, int line_no) {
    auto fail = [&](const std::string& why) {
        throw ConfigError("config line " + std::to_string(line_no) + ": " + why);
    };
    auto parse_double = [&](const std::string& s) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos != s.size()) fail("trailing characters in number '" + s + "'");
            return v;
        } catch (const std::invalid_argument&) {
            fail("malformed number '" + s + "'");
        } catch (const std::out_of_range&) {
            fail("number out of range '" + s + "'");
        }
        return 0.0;
    };
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string part;
        while (std::getline(ss, part, sep)) parts.push_back(part);
        return parts;
    };

    if (text.find(':') != std::string::npos) {
        auto parts = split(text, ':');
        bool log_scale = false;
        if (parts.size() == 4) {
            std::string tag = parts[3];
            tag.erase(std::remove_if(tag.begin(), tag.end(), ::isspace), tag.end());
            if (tag != "log" && tag != "lin")
                fail("range suffix must be 'log' or 'lin', got '" + tag + "'");
            log_scale = (tag == "log");
            parts.pop_back();
        }
        if (parts.size() != 3) fail("range must be start:stop:count[:log]");
        const double start = parse_double(parts[0]);
        const double stop = parse_double(parts[1]);
        const double count_d = parse_double(parts[2]);
        const auto count = static_cast<std::size_t>(count_d);
        if (count_d != static_cast<double>(count) || count < 1)
            fail("range count must be a positive integer");
        return log_scale ? logspace(start, stop, count) : linspace(start, stop, count);
    }
    std::vector<double> values;
    for (const auto& part : split(text, ',')) values.push_back(parse_double(part));
    if (values.empty()) fail("empty value");
    return values;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

SweepSpec parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");

    SweepSpec spec;
    std::vector<SweepAxis> axes;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                                     ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "metric") {
            spec.metric = metric_from_name(value);
        } else if (key == "normalize") {
            if (value == "true" || value == "1") spec.normalize = true;
            else if (value == "false" || value == "0") spec.normalize = false;
            else
                throw ConfigError("config line " + std::to_string(line_no) +
                                         ": normalize must be true or false");
        } else if (key == "steps") {
            const auto values = parse_value_list(value, line_no);
            if (values.size() != 1 || values[0] < 1 ||
                values[0] != std::floor(values[0]))
                throw ConfigError("config line " + std::to_string(line_no) +
                                         ": steps must be a positive integer");
            spec.blp_steps = static_cast<std::size_t>(values[0]);
        } else if (kParamNames.count(key)) {
            if (spec.fixed.count(key) ||
                std::any_of(axes.begin(), axes.end(),
                            [&](const SweepAxis& a) { return a.name == key; }))
                throw ConfigError("config line " + std::to_string(line_no) +
                                         ": duplicate key '" + key + "'");
            const auto values = parse_value_list(value, line_no);
            for (double v : values) check_domain(key, v);
            if (values.size() == 1) {
                spec.fixed[key] = values[0];
            } else {
                if (axes.size() == 2)
                    throw ConfigError("config line " + std::to_string(line_no) +
                                             ": at most two sweep axes are supported");
                axes.push_back({key, values});
            }
        } else {
            throw ConfigError("config line " + std::to_string(line_no) +
                                     ": unknown key '" + key + "'");
        }
    }
    if (axes.empty())
        throw ConfigError("config defines no sweep axis (every key is scalar)");
    spec.axis1 = axes[0];
    if (axes.size() > 1) spec.axis2 = axes[1];
    spec.validate();
    return spec;
}

SweepSpec figure_preset(int figure) {
    SweepSpec spec;
    switch (figure) {
        case 1:
            spec.axis1 = {"theta", linspace(0.0, 2.0 * M_PI, 201)};
            spec.fixed = {{"omega", 1.0}, {"lambda", 5.0}, {"t", 10.0},
                          {"p1", 0.5},   {"p2", 0.5}};
            break;
        case 2:
            spec.axis1 = {"p1", linspace(0.0, 1.0, 51)};
            spec.axis2 = SweepAxis{"p2", linspace(0.0, 1.0, 51)};
            spec.fixed = {{"theta", 0.5 * M_PI}, {"omega", 1.0}, {"lambda", 5.0},
                          {"t", 10.0}};
            break;
        case 3:
            spec.axis1 = {"omega", linspace(1.0, 40.0, 40)};
            spec.axis2 = SweepAxis{"t", linspace(0.0, 20.0, 201)};
            spec.fixed = {{"theta", 0.5 * M_PI}, {"lambda", 3.0}, {"p1", 0.0},
                          {"p2", 0.0}};
            break;
        case 4:
            spec.axis1 = {"omega", {1.0, 10.0, 40.0}};
            spec.axis2 = SweepAxis{"t", linspace(0.0, 1000.0, 2000)};
            spec.fixed = {{"theta", 0.5 * M_PI}, {"lambda", 3.0}, {"p1", 0.0},
                          {"p2", 0.0}};
            break;
        case 5:
            spec.axis1 = {"lambda", linspace(0.01, 3.0, 60)};
            spec.axis2 = SweepAxis{"t", linspace(0.0, 20.0, 201)};
            spec.fixed = {{"theta", 0.5 * M_PI}, {"omega", 1.0}, {"p1", 0.0},
                          {"p2", 0.0}};
            break;
        case 6:
            spec.axis1 = {"lambda", {0.01, 0.1, 1.0, 3.0}};
            spec.axis2 = SweepAxis{"t", linspace(0.0, 20.0, 401)};
            spec.fixed = {{"theta", 0.5 * M_PI}, {"omega", 1.0}, {"p1", 0.0},
                          {"p2", 0.0}};
            break;
        case 7:
            spec.axis1 = {"lambda", logspace(0.01, 3.0, 30)};
            spec.fixed = {{"omega", 1.0}, {"t", 50.0}};
            spec.metric = Metric::NMeasure;
            spec.blp_steps = 50000;
            break;
        default:
            throw ConfigError("figure number must be 1..7");
    }
    return spec;
}

std::vector<double> linspace(double start, double stop, std::size_t count) {
    std::vector<double> values(count);
    if (count == 1) {
        values[0] = start;
        return values;
    }
    const double step = (stop - start) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        values[i] = start + static_cast<double>(i) * step;
    values.back() = stop;
    return values;
}

std::vector<double> logspace(double start, double stop, std::size_t count) {
    if (!(start > 0.0) || !(stop > 0.0))
        throw ConfigError("log range endpoints must be positive");
    std::vector<double> values = linspace(std::log(start), std::log(stop), count);
    for (double& v : values) v = std::exp(v);
    return values;
}

} // namespace cavcoh
