#include "clusterkit/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "clusterkit/serialization.hpp"

namespace clusterkit::cli {

namespace {

using nlohmann::json;

struct Options {
    std::string input;
    std::string output;  // empty = stdout
    std::string format = "json";
    int order = -1;  // -1 = command default (6 for exact sums, 4 for MC series)
    std::uint64_t samples = 65536;
    std::uint64_t seed = 0;
    double tolerance = 1e-9;

    int order_or(int fallback) const { return order < 0 ? fallback : order; }
};

json load_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
}

void write_output(const Options& opt, const std::string& text) {
    if (opt.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.output, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + opt.output);
    out << text;
}

void emit_json(const Options& opt, const json& doc) { write_output(opt, doc.dump(2) + "\n"); }

struct SystemConfig {
    DiscretePolymerSpace space;
    InteractionKernel kernel;
    WeightFunctions weights;
    std::vector<int> fixed;
    bool has_weights = false;
};

SystemConfig load_system(const json& doc, bool need_fixed) {
    require_keys(doc, {"space", "kernel", "weights", "fixed"}, "config");
    if (!doc.contains("space")) throw std::invalid_argument("config: missing \"space\"");
    if (!doc.contains("kernel")) throw std::invalid_argument("config: missing \"kernel\"");
    SystemConfig cfg;
    cfg.space = space_from_json(doc["space"]);
    cfg.kernel = kernel_from_json(doc["kernel"], cfg.space.size());
    if (doc.contains("weights")) {
        cfg.weights = weights_from_json(doc["weights"], cfg.space, cfg.kernel);
        cfg.has_weights = true;
    }
    if (doc.contains("fixed")) {
        for (const auto& idj : doc["fixed"]) {
            const std::string id = idj.get<std::string>();
            const auto it = std::find(cfg.space.ids.begin(), cfg.space.ids.end(), id);
            if (it == cfg.space.ids.end())
                throw std::invalid_argument("config.fixed: unknown polymer id \"" + id + "\"");
            cfg.fixed.push_back(static_cast<int>(it - cfg.space.ids.begin()));
        }
    }
    if (need_fixed && cfg.fixed.empty())
        throw std::invalid_argument("config: this command needs a nonempty \"fixed\" tuple");
    return cfg;
}

int cmd_check_kp(const Options& opt) {
    const SystemConfig cfg = load_system(load_input(opt.input), false);
    if (!cfg.has_weights)
        throw std::invalid_argument("check-kp: config needs \"weights\" (a may be \"auto\")");
    const CriterionReport rep = kp_check(cfg.space, cfg.kernel, cfg.weights, opt.tolerance);
    emit_json(opt, to_json(rep));
    return rep.passed ? 0 : 2;
}

int cmd_logz(const Options& opt) {
    const SystemConfig cfg = load_system(load_input(opt.input), false);
    DiscreteEngine<Cplx> eng(cfg.space, cfg.kernel);
    const SeriesReport rep =
        log_partition_series(eng, opt.order_or(6), cfg.has_weights ? &cfg.weights : nullptr);
    if (opt.format == "csv")
        write_output(opt, to_csv(rep));
    else
        emit_json(opt, to_json(rep));
    return 0;
}

int cmd_correlate(const Options& opt) {
    const SystemConfig cfg = load_system(load_input(opt.input), true);
    DiscreteEngine<Cplx> eng(cfg.space, cfg.kernel);
    const CorrelationReport rep = correlation_ratio(eng, cfg.fixed, opt.order_or(6));
    emit_json(opt, to_json(rep));
    return 0;
}

int cmd_decay(const Options& opt) {
    const SystemConfig cfg = load_system(load_input(opt.input), true);
    if (!cfg.has_weights)
        throw std::invalid_argument("decay: config needs \"weights\" (a may be \"auto\")");
    DiscreteEngine<Cplx> eng(cfg.space, cfg.kernel);
    const DecayCheckResult r = decay_check(eng, cfg.fixed, cfg.weights, opt.order_or(6), opt.seed);
    json fixed_ids = json::array();
    for (int i : cfg.fixed) fixed_ids.push_back(cfg.space.ids[i]);
    emit_json(opt, json{{"schema", kSchemaVersion},
                        {"kind", "decay_check"},
                        {"fixed", fixed_ids},
                        {"truncation_order", opt.order_or(6)},
                        {"lhs", r.lhs},
                        {"rhs", r.rhs},
                        {"gamma", to_json(r.gamma)},
                        {"passed", r.holds}});
    return r.holds ? 0 : 2;
}

int cmd_model_classical(const Options& opt) {
    const models::ClassicalGasParams p = classical_gas_from_json(load_input(opt.input));
    const models::CondconvReport cc = models::check_condconv(p);
    const SeriesReport series = models::pressure_series(p, opt.order_or(4), opt.samples, opt.seed);
    if (opt.format == "csv") {
        write_output(opt, to_csv(series));
    } else {
        emit_json(opt, json{{"schema", kSchemaVersion},
                            {"kind", "classical_gas"},
                            {"condconv", to_json(cc)},
                            {"order1_analytic", models::pressure_order1_analytic(p)},
                            {"pressure_series", to_json(series)}});
    }
    return cc.passed ? 0 : 2;
}

int cmd_model_lattice(const Options& opt) {
    const models::LatticePolymerParams p = lattice_polymer_from_json(load_input(opt.input));
    const models::LatticePolymerSystem sys = models::enumerate_lattice_polymers(p);
    std::vector<std::uint64_t> by_size(p.max_polymer_size, 0);
    for (int s : sys.sizes) ++by_size[s - 1];
    json out{{"schema", kSchemaVersion},
             {"kind", "lattice_polymer"},
             {"n_polymers", sys.space.size()},
             {"counts_by_size", by_size}};
    bool passed = true;
    if (p.weight_rule == models::LatticePolymerParams::WeightRule::paper_default) {
        const models::GoldenRatioReport rep = models::golden_ratio_criterion(p);
        out["golden_ratio"] = to_json(rep);
        passed = rep.passed;
    }
    emit_json(opt, out);
    return passed ? 0 : 2;
}

int cmd_model_quantum(const Options& opt) {
    const models::QuantumGasParams p = quantum_gas_from_json(load_input(opt.input));
    const models::QuantumCriterionReport rep = models::check_condconvquant(p);
    emit_json(opt, to_json(rep));
    return rep.passed ? 0 : 2;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"cluster expansion toolkit: criterion checks, log Z series, correlations"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool with_format = true) {
        cmd->add_option("--input", opt.input, "input config (JSON)")->required();
        cmd->add_option("--output", opt.output, "output path (default: stdout)");
        if (with_format)
            cmd->add_option("--format", opt.format, "json or csv")
                ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--order", opt.order,
                        "series truncation order (default 6, or 4 for MC series)");
        cmd->add_option("--samples", opt.samples, "Monte Carlo samples per term");
        cmd->add_option("--seed", opt.seed, "random seed (default 0)");
        cmd->add_option("--tolerance", opt.tolerance, "slack tolerance for checks");
    };

    CLI::App* check = app.add_subcommand("check-kp", "convergence criterion on a discrete system");
    add_common(check, false);
    CLI::App* logz = app.add_subcommand("logz", "log partition function series");
    add_common(logz);
    CLI::App* corr = app.add_subcommand("correlate", "correlation ratio for a fixed tuple");
    add_common(corr, false);
    CLI::App* decay = app.add_subcommand("decay", "decay estimate check for a fixed tuple");
    add_common(decay, false);
    CLI::App* model = app.add_subcommand("model", "bundled models");
    model->require_subcommand(1);
    CLI::App* gas = model->add_subcommand("classical-gas", "Mayer gas: criterion and pressure");
    add_common(gas);
    CLI::App* lattice = model->add_subcommand("lattice-polymer", "lattice polymers");
    add_common(lattice, false);
    CLI::App* quantum = model->add_subcommand("quantum-criterion", "quantum gas criterion");
    add_common(quantum, false);

    // csv is only defined for series output
    opt.format = "json";

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (check->parsed()) return cmd_check_kp(opt);
        if (logz->parsed()) return cmd_logz(opt);
        if (corr->parsed()) return cmd_correlate(opt);
        if (decay->parsed()) return cmd_decay(opt);
        if (model->parsed()) {
            if (gas->parsed()) return cmd_model_classical(opt);
            if (lattice->parsed()) return cmd_model_lattice(opt);
            if (quantum->parsed()) return cmd_model_quantum(opt);
        }
        throw std::invalid_argument("no command selected");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace clusterkit::cli
