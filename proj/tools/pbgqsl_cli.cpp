// pbgqsl command-line front end: traces, sweeps, pair sampling, validation, unit conversion

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pbgqsl/output.hpp"
#include "pbgqsl/pbgqsl.hpp"
#include "pbgqsl/sweep.hpp"
#include "pbgqsl/validation.hpp"

namespace {

using namespace pbgqsl;

enum ExitCode : int { kOk = 0, kConfig = 2, kValidation = 3, kIo = 4, kInternal = 1 };

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string model = "pbg";
    double delta = -10.0;
    double delta_min = -10.0;
    double delta_max = 10.0;
    int delta_steps = 201;
    std::vector<double> tau;
    double gamma0 = 1.0;
    double lambda = 1.0;
    double dt = kDefaultStep;
    std::uint64_t seed = 42;
    long long n_pairs = 2000;
    std::string out;
    unsigned workers = 0;
    std::string format = "csv";
    double omega0 = 2.9e15;
    double dipole = 4e-30;
};

SweepConfig to_config(const Options& o, std::vector<double> default_tau) {
    SweepConfig c;
    if (o.model == "pbg")
        c.model = ModelKind::pbg;
    else if (o.model == "jc")
        c.model = ModelKind::jc;
    else
        throw ConfigError("unknown model '" + o.model + "'");
    c.delta = o.delta;
    c.delta_min = o.delta_min;
    c.delta_max = o.delta_max;
    c.delta_steps = o.delta_steps;
    c.tau = o.tau.empty() ? std::move(default_tau) : o.tau;
    c.gamma0 = o.gamma0;
    c.lambda = o.lambda;
    c.step = o.dt;
    c.seed = o.seed;
    if (o.n_pairs < 1)
        throw ConfigError("n-pairs must be >= 1");
    c.n_pairs = static_cast<std::size_t>(o.n_pairs);
    c.workers = resolve_workers(o.workers);
    c.validate();
    return c;
}

std::string join(const std::vector<double>& values) {
    std::string s;
    for (std::size_t k = 0; k < values.size(); ++k)
        s += (k ? "," : "") + format_double(values[k]);
    return s;
}

std::vector<std::pair<std::string, std::string>> model_meta(const SweepConfig& c) {
    if (c.model == ModelKind::jc)
        return {{"model", "jc"}, {"gamma0", format_double(c.gamma0)}, {"lambda", format_double(c.lambda)}};
    return {{"model", "pbg"}};
}

void emit(const Options& o, const Table& table) {
    auto write = [&](std::ostream& os) {
        if (o.format == "json")
            write_json(os, table);
        else
            write_csv(os, table);
    };
    if (o.out.empty() || o.out == "-") {
        write(std::cout);
        std::cout.flush();
        if (!std::cout)
            throw IoError("cannot write to standard output");
        return;
    }
    std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
    if (!file)
        throw IoError("cannot open '" + o.out + "' for writing");
    write(file);
    file.close();
    if (!file)
        throw IoError("failed writing '" + o.out + "'");
}

int cmd_trace(const Options& o) {
    if (o.tau.size() > 1)
        throw ConfigError("trace takes a single tau");
    const SweepConfig c = to_config(o, {10.0});
    const ReservoirModel model = c.model_at(c.delta);
    const auto trace = sample_trace(model, c.tau.front(), c.step);

    Table table;
    table.meta = {{"command", "trace"}};
    for (auto& kv : model_meta(c))
        table.meta.push_back(kv);
    if (c.model == ModelKind::pbg)
        table.meta.emplace_back("delta", format_double(c.delta));
    table.meta.emplace_back("tau", format_double(c.tau.front()));
    table.meta.emplace_back("dt", format_double(c.step));
    table.meta.emplace_back("seed", std::to_string(c.seed));
    table.columns = {"t", "re_b", "im_b", "P", "dPdt", "epsilon", "gamma"};
    for (std::size_t k = 0; k < trace.size(); ++k) {
        std::vector<Cell> row{trace.grid[k], trace.b[k].real(), trace.b[k].imag(), trace.P[k], trace.dPdt[k]};
        try {
            const auto rates = rates_from_b(trace.b[k], trace.b_dot[k]);
            row.emplace_back(rates.epsilon);
            row.emplace_back(rates.gamma);
        } catch (const SingularRateError&) {
            row.emplace_back(std::monostate{});
            row.emplace_back(std::monostate{});
        }
        table.rows.push_back(std::move(row));
    }
    emit(o, table);
    return kOk;
}

std::vector<std::pair<std::string, std::string>> sweep_meta(const SweepConfig& c) {
    auto meta = model_meta(c);
    meta.emplace_back("delta_min", format_double(c.delta_min));
    meta.emplace_back("delta_max", format_double(c.delta_max));
    meta.emplace_back("delta_steps", std::to_string(c.delta_steps));
    meta.emplace_back("tau", join(c.tau));
    meta.emplace_back("dt", format_double(c.step));
    meta.emplace_back("seed", std::to_string(c.seed));
    return meta;
}

int report_flagged(const std::vector<SweepRow>& rows) {
    std::size_t flagged = 0;
    for (const auto& r : rows) {
        if (!r.flagged)
            continue;
        if (flagged++ < 10)
            std::cerr << "flagged row delta=" << format_double(r.delta) << " tau=" << format_double(r.tau) << ": "
                      << r.error << '\n';
    }
    if (flagged == 0)
        return kOk;
    std::cerr << flagged << " row(s) failed validation\n";
    return kValidation;
}

int cmd_qsl_sweep(const Options& o) {
    const SweepConfig c = to_config(o, {1.0, 3.0, 5.0, 10.0});
    const auto rows = run_sweep(c);
    Table table;
    table.meta = sweep_meta(c);
    table.meta.insert(table.meta.begin(), {"command", "qsl-sweep"});
    table.columns = {"delta", "tau", "tau_qsl", "n_value", "p_tau", "identity_residual"};
    for (const auto& r : rows)
        table.rows.push_back({r.delta, r.tau, r.tau_qsl, r.n_value, r.p_tau, r.identity_residual});
    emit(o, table);
    return report_flagged(rows);
}

int cmd_nonmarkov_sweep(const Options& o) {
    const SweepConfig c = to_config(o, {1.0, 3.0, 5.0, 10.0});
    const auto rows = run_sweep(c);
    Table table;
    table.meta = sweep_meta(c);
    table.meta.insert(table.meta.begin(), {"command", "nonmarkov-sweep"});
    table.columns = {"delta", "tau", "n_value", "p_tau"};
    for (const auto& r : rows)
        table.rows.push_back({r.delta, r.tau, r.n_value, r.p_tau});
    emit(o, table);
    return report_flagged(rows);
}

int cmd_pairs(const Options& o) {
    if (o.tau.size() > 1)
        throw ConfigError("pairs takes a single tau");
    const SweepConfig c = to_config(o, {20.0});
    const auto report = blp_measure_sampled(c.model_at(c.delta), c.tau.front(), c.n_pairs, c.seed, c.step, c.workers);
    Table table;
    table.meta = {{"command", "pairs"}};
    for (auto& kv : model_meta(c))
        table.meta.push_back(kv);
    if (c.model == ModelKind::pbg)
        table.meta.emplace_back("delta", format_double(c.delta));
    table.meta.emplace_back("tau", format_double(c.tau.front()));
    table.meta.emplace_back("dt", format_double(c.step));
    table.meta.emplace_back("n_pairs", std::to_string(c.n_pairs));
    table.meta.emplace_back("seed", std::to_string(c.seed));
    table.columns = {"pair_index", "integral"};
    for (std::size_t k = 0; k < report.integrals.size(); ++k)
        table.rows.push_back({static_cast<long long>(k), report.integrals[k]});
    table.rows.push_back({std::string("canonical"), report.optimal_value});
    emit(o, table);
    return kOk;
}

int cmd_validate(const Options& o) {
    ValidationOptions options;
    options.seed = o.seed;
    const auto report = run_validation(options);
    std::printf("%-24s %-6s %-12s %-12s %s\n", "suite", "result", "worst", "tolerance", "detail");
    for (const auto& s : report.suites)
        std::printf("%-24s %-6s %-12.3e %-12.3e %s\n", s.name.c_str(), s.passed ? "PASS" : "FAIL", s.worst,
                    s.tolerance, s.detail.c_str());
    if (const auto* failed = report.first_failure()) {
        std::fprintf(stderr, "validation failed: %s\n", failed->name.c_str());
        return kValidation;
    }
    return kOk;
}

int cmd_beta(const Options& o) {
    const double beta = physical_beta(o.omega0, o.dipole);
    std::printf("beta = %.6e Hz (%.4f GHz)\n", beta, beta * 1e-9);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Qubit decoherence in band-gap and cavity reservoirs: speed limits and non-Markovianity"};
    app.require_subcommand(1, 1);
    app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");

    Options o;
    app.add_option("--model", o.model, "Reservoir: pbg or jc")->check(CLI::IsMember({"pbg", "jc"}));
    app.add_option("--delta", o.delta, "Detuning from the band edge (trace, pairs)");
    app.add_option("--delta-min", o.delta_min, "Sweep start");
    app.add_option("--delta-max", o.delta_max, "Sweep end");
    app.add_option("--delta-steps", o.delta_steps, "Number of detunings in the sweep");
    app.add_option("--tau", o.tau, "Driving time(s), comma separated")->delimiter(',');
    app.add_option("--gamma0", o.gamma0, "Cavity model decay scale");
    app.add_option("--lambda", o.lambda, "Cavity model spectral width");
    app.add_option("--dt", o.dt, "Time-grid step");
    app.add_option("--seed", o.seed, "Seed of the pair sampler");
    app.add_option("--n-pairs", o.n_pairs, "Number of random state pairs");
    app.add_option("--out", o.out, "Output file (default: standard output)");
    app.add_option("--workers", o.workers, "Worker threads (default: $PBGQSL_WORKERS, else all cores)");
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--omega0", o.omega0, "Transition frequency in Hz (beta)");
    app.add_option("--dipole", o.dipole, "Dipole moment in C m (beta)");

    struct Command {
        const char* name;
        const char* help;
        int (*run)(const Options&);
    };
    const Command commands[] = {
        {"trace", "Sample b_t, P_t and the generator rates on a time grid", cmd_trace},
        {"qsl-sweep", "Speed-limit time over a detuning/driving-time grid", cmd_qsl_sweep},
        {"nonmarkov-sweep", "Non-Markovianity and final population over the grid", cmd_nonmarkov_sweep},
        {"pairs", "Information backflow of random state pairs", cmd_pairs},
        {"validate", "Run the oracle suites", cmd_validate},
        {"beta", "Band-edge coupling in physical units", cmd_beta},
    };
    for (const auto& c : commands)
        app.add_subcommand(c.name, c.help)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfig;
    }

    try {
        for (const auto& c : commands)
            if (app.got_subcommand(c.name))
                return c.run(o);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kConfig;
    } catch (const DomainError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kConfig;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInternal;
    }
    return kInternal;
}
