#include "clusterkit/serialization.hpp"

#include <sstream>

namespace clusterkit {

using nlohmann::json;

namespace {

json cplx_to_json(const Cplx& z) {
    if (z.imag() == 0.0) return z.real();
    return json::array({z.real(), z.imag()});
}

Cplx cplx_from_json(const json& v, const std::string& where) {
    if (v.is_number()) return Cplx(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return Cplx(v[0].get<double>(), v[1].get<double>());
    throw std::invalid_argument(where + ": expected a number or [re, im]");
}

std::string csv_number(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string csv_value(const Cplx& z) {
    if (z.imag() == 0.0) return csv_number(z.real());
    return csv_number(z.real()) + (z.imag() < 0 ? "-" : "+") + csv_number(std::abs(z.imag())) +
           "i";
}

}  // namespace

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const std::string& where) {
    if (!obj.is_object()) throw std::invalid_argument(where + ": expected an object");
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* k : allowed) ok = ok || key == k;
        if (!ok) throw std::invalid_argument(where + ": unknown key \"" + key + "\"");
    }
}

json to_json(const SeriesReport& rep) {
    json orders = json::array();
    for (const auto& t : rep.orders) {
        json o{{"order", t.order},
               {"term", cplx_to_json(t.term)},
               {"partial_sum", cplx_to_json(t.partial_sum)}};
        if (t.stat_error != 0.0) o["stderr"] = t.stat_error;
        orders.push_back(std::move(o));
    }
    json out{{"schema", kSchemaVersion},
             {"kind", "series"},
             {"truncation_order", rep.truncation_order},
             {"orders", std::move(orders)},
             {"total", cplx_to_json(rep.total())}};
    if (rep.tail_bound) {
        out["tail_bound"] = *rep.tail_bound;
        out["tail_bound_is_heuristic"] = rep.tail_is_heuristic;
    }
    return out;
}

std::string to_csv(const SeriesReport& rep) {
    std::ostringstream os;
    os << "order,term,partial_sum,stderr,tail_bound\n";
    for (std::size_t i = 0; i < rep.orders.size(); ++i) {
        const auto& t = rep.orders[i];
        os << t.order << ',' << csv_value(t.term) << ',' << csv_value(t.partial_sum) << ','
           << csv_number(t.stat_error) << ',';
        if (i + 1 == rep.orders.size() && rep.tail_bound) os << csv_number(*rep.tail_bound);
        os << '\n';
    }
    return os.str();
}

json to_json(const CorrelationReport& rep) {
    json blocks = json::object();
    for (const auto& [block, value] : rep.zhat_values) {
        std::ostringstream key;
        for (std::size_t i = 0; i < block.size(); ++i) key << (i ? "|" : "") << block[i] + 1;
        blocks[key.str()] = cplx_to_json(value);
    }
    return json{{"schema", kSchemaVersion},
                {"kind", "correlation"},
                {"fixed", rep.fixed_ids},
                {"truncation_order", rep.truncation_order},
                {"zhat", std::move(blocks)},
                {"ratio", cplx_to_json(rep.ratio)}};
}

json to_json(const CriterionReport& rep) {
    json per = json::array();
    for (const auto& e : rep.per_polymer) {
        json entry{{"id", e.id}, {"lhs", e.lhs}, {"a", e.a}, {"slack", e.slack}};
        if (e.stat_error != 0.0) entry["stderr"] = e.stat_error;
        per.push_back(std::move(entry));
    }
    json out{{"schema", kSchemaVersion},
             {"kind", "criterion"},
             {"mode", rep.mode == CriterionReport::Mode::plain ? "plain" : "tilted"},
             {"passed", rep.passed},
             {"worst_slack", rep.worst_slack},
             {"tolerance", rep.tolerance},
             {"integrability", rep.integrability},
             {"per_polymer", std::move(per)}};
    if (rep.statistical_error) out["statistical_error"] = *rep.statistical_error;
    return out;
}

json to_json(const GammaEstimate& g) {
    const char* method = "sampled";
    if (g.method == GammaEstimate::Method::analytic_hard_core) method = "analytic_hard_core";
    if (g.method == GammaEstimate::Method::user_supplied) method = "user_supplied";
    return json{{"value", g.value}, {"method", method}, {"n_probe", g.n_probe}};
}

json to_json(const models::CondconvReport& rep) {
    json out{{"schema", kSchemaVersion},
             {"kind", "condconv"},
             {"integral", rep.integral},
             {"z", rep.z},
             {"lhs", rep.lhs},
             {"threshold", rep.threshold},
             {"z_max", rep.z_max},
             {"passed", rep.passed},
             {"certificate", rep.certificate}};
    if (rep.c_rate > 0) {
        out["c_rate"] = rep.c_rate;
        out["decay_constant"] = rep.decay_constant;
    }
    return out;
}

json to_json(const models::GoldenRatioReport& rep) {
    return json{{"schema", kSchemaVersion},
                {"kind", "golden_ratio_criterion"},
                {"eta", rep.eta},
                {"geometric_ratio", rep.geometric_ratio},
                {"dominating_sum", rep.dominating_sum},
                {"phi_inverse", rep.phi_inverse},
                {"identity_error", rep.identity_error},
                {"kp", to_json(rep.kp)},
                {"passed", rep.passed}};
}

json to_json(const models::QuantumCriterionReport& rep) {
    return json{{"schema", kSchemaVersion},
                {"kind", "quantum_criterion"},
                {"zeta_bracket", json::array({rep.zeta_lower, rep.zeta_upper})},
                {"lhs_bracket", json::array({rep.lhs_lower, rep.lhs_upper})},
                {"minus_log_z", rep.minus_log_z},
                {"passed", rep.passed},
                {"z_max", rep.z_max}};
}

DiscretePolymerSpace space_from_json(const json& doc) {
    require_keys(doc, {"label", "polymers"}, "space");
    if (!doc.contains("polymers") || !doc["polymers"].is_array())
        throw std::invalid_argument("space: missing \"polymers\" array");
    DiscretePolymerSpace s;
    if (doc.contains("label")) s.label = doc["label"].get<std::string>();
    for (const auto& p : doc["polymers"]) {
        require_keys(p, {"id", "weight"}, "space.polymers[]");
        if (!p.contains("id") || !p.contains("weight"))
            throw std::invalid_argument("space.polymers[]: need \"id\" and \"weight\"");
        s.ids.push_back(p["id"].get<std::string>());
        s.weights.push_back(cplx_from_json(p["weight"], "space.polymers[].weight"));
    }
    s.validate();
    return s;
}

InteractionKernel kernel_from_json(const json& doc, std::size_t n_polymers) {
    require_keys(doc, {"kind", "overlap", "zeta"}, "kernel");
    if (!doc.contains("kind")) throw std::invalid_argument("kernel: missing \"kind\"");
    const std::string kind = doc["kind"].get<std::string>();
    if (kind == "zero") return zero_kernel();
    if (kind == "hard_core") {
        if (!doc.contains("overlap"))
            throw std::invalid_argument("kernel: hard_core needs \"overlap\"");
        auto rows = doc["overlap"].get<std::vector<std::vector<bool>>>();
        if (rows.size() != n_polymers)
            throw std::invalid_argument("kernel: overlap size does not match the space");
        return hard_core_kernel(std::move(rows));
    }
    if (kind == "matrix") {
        if (!doc.contains("zeta")) throw std::invalid_argument("kernel: matrix needs \"zeta\"");
        const auto& zj = doc["zeta"];
        if (!zj.is_array() || zj.size() != n_polymers)
            throw std::invalid_argument("kernel: zeta size does not match the space");
        std::vector<std::vector<Cplx>> rows(n_polymers, std::vector<Cplx>(n_polymers));
        for (std::size_t i = 0; i < n_polymers; ++i) {
            if (!zj[i].is_array() || zj[i].size() != n_polymers)
                throw std::invalid_argument("kernel: zeta must be square");
            for (std::size_t j = 0; j < n_polymers; ++j)
                rows[i][j] = cplx_from_json(zj[i][j], "kernel.zeta");
        }
        return matrix_kernel(std::move(rows));
    }
    throw std::invalid_argument("kernel: unknown kind \"" + kind + "\"");
}

WeightFunctions weights_from_json(const json& doc, const DiscretePolymerSpace& space,
                                  const InteractionKernel& kernel) {
    require_keys(doc, {"a", "b", "c"}, "weights");
    const std::size_t p = space.size();
    WeightFunctions w;
    auto parse_vec = [&](const json& v, const char* name) {
        std::vector<double> out;
        if (v.is_number()) {
            out.assign(p, v.get<double>());
        } else if (v.is_array()) {
            out = v.get<std::vector<double>>();
            if (out.size() != p)
                throw std::invalid_argument(std::string("weights.") + name +
                                            ": length does not match the space");
        } else if (v.is_object()) {
            out.assign(p, 0.0);
            for (const auto& [id, value] : v.items()) {
                const auto it = std::find(space.ids.begin(), space.ids.end(), id);
                if (it == space.ids.end())
                    throw std::invalid_argument(std::string("weights.") + name +
                                                ": unknown polymer id \"" + id + "\"");
                out[it - space.ids.begin()] = value.get<double>();
            }
        } else {
            throw std::invalid_argument(std::string("weights.") + name +
                                        ": expected number, array, or id map");
        }
        return out;
    };
    if (doc.contains("a")) {
        if (doc["a"].is_string() && doc["a"].get<std::string>() == "auto") {
            TuneOutcome tuned = auto_tune_a(space, kernel);
            if (!tuned.success)
                throw std::invalid_argument("weights.a: auto tuning failed (" + tuned.message +
                                            ")");
            w.a = tuned.weights.a;
        } else {
            w.a = parse_vec(doc["a"], "a");
        }
    }
    if (doc.contains("b")) w.b = parse_vec(doc["b"], "b");
    if (doc.contains("c")) {
        const auto& cj = doc["c"];
        if (!cj.is_array() || cj.size() != p)
            throw std::invalid_argument("weights.c: expected a square matrix over the space");
        w.c.assign(p, std::vector<double>(p, 0.0));
        for (std::size_t i = 0; i < p; ++i) {
            if (!cj[i].is_array() || cj[i].size() != p)
                throw std::invalid_argument("weights.c: expected a square matrix over the space");
            for (std::size_t j = 0; j < p; ++j) w.c[i][j] = cj[i][j].get<double>();
        }
    }
    w.validate(p);
    return w;
}

models::ClassicalGasParams classical_gas_from_json(const json& doc) {
    require_keys(doc, {"d", "beta", "z", "potential", "cutoff", "box"}, "classical gas config");
    models::ClassicalGasParams p;
    if (doc.contains("d")) p.dimension = doc["d"].get<int>();
    if (doc.contains("beta")) p.beta = doc["beta"].get<double>();
    if (doc.contains("z")) p.z = doc["z"].get<double>();
    if (doc.contains("cutoff")) p.cutoff_radius = doc["cutoff"].get<double>();
    if (doc.contains("box")) {
        for (const auto& axis : doc["box"]) {
            if (!axis.is_array() || axis.size() != 2)
                throw std::invalid_argument("classical gas config: box axes are [lo, hi] pairs");
            p.box.emplace_back(axis[0].get<double>(), axis[1].get<double>());
        }
    }
    if (doc.contains("potential")) {
        const auto& pj = doc["potential"];
        require_keys(pj, {"kind", "radius", "height", "r", "u"}, "potential");
        const std::string kind = pj.value("kind", "hard_sphere");
        if (kind == "hard_sphere") {
            p.potential.kind = models::Potential::Kind::hard_sphere;
            p.potential.radius = pj.value("radius", 1.0);
        } else if (kind == "square_well") {
            p.potential.kind = models::Potential::Kind::square_well;
            p.potential.radius = pj.value("radius", 1.0);
            p.potential.height = pj.value("height", 0.0);
        } else if (kind == "tabulated") {
            p.potential.kind = models::Potential::Kind::tabulated;
            if (!pj.contains("r") || !pj.contains("u"))
                throw std::invalid_argument("potential: tabulated needs \"r\" and \"u\"");
            p.potential.r_grid = pj["r"].get<std::vector<double>>();
            p.potential.u_values = pj["u"].get<std::vector<double>>();
        } else {
            throw std::invalid_argument("potential: unknown kind \"" + kind + "\"");
        }
    }
    p.validate();
    return p;
}

models::LatticePolymerParams lattice_polymer_from_json(const json& doc) {
    require_keys(doc, {"d", "box", "max_size", "weight_rule", "user_weights"},
                 "lattice polymer config");
    models::LatticePolymerParams p;
    if (doc.contains("d")) p.dimension = doc["d"].get<int>();
    if (doc.contains("box")) p.box = doc["box"].get<std::vector<int>>();
    if (doc.contains("max_size")) p.max_polymer_size = doc["max_size"].get<int>();
    if (doc.contains("weight_rule")) {
        const std::string rule = doc["weight_rule"].get<std::string>();
        if (rule == "paper_default") {
            p.weight_rule = models::LatticePolymerParams::WeightRule::paper_default;
        } else if (rule == "user") {
            p.weight_rule = models::LatticePolymerParams::WeightRule::user;
            if (!doc.contains("user_weights"))
                throw std::invalid_argument(
                    "lattice polymer config: user rule needs \"user_weights\"");
            for (const auto& [size, value] : doc["user_weights"].items())
                p.user_weights[std::stoi(size)] = value.get<double>();
        } else {
            throw std::invalid_argument("lattice polymer config: unknown weight rule \"" + rule +
                                        "\"");
        }
    }
    p.validate();
    return p;
}

models::QuantumGasParams quantum_gas_from_json(const json& doc) {
    require_keys(doc, {"d", "beta", "z", "potential_integral", "statistics"},
                 "quantum gas config");
    models::QuantumGasParams p;
    if (doc.contains("d")) p.dimension = doc["d"].get<int>();
    if (doc.contains("beta")) p.beta = doc["beta"].get<double>();
    if (doc.contains("z")) p.z = doc["z"].get<double>();
    if (doc.contains("potential_integral"))
        p.potential_integral = doc["potential_integral"].get<double>();
    if (doc.contains("statistics")) p.statistics = doc["statistics"].get<std::string>();
    p.validate();
    return p;
}

}  // namespace clusterkit
