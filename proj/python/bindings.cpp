#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "clusterkit/convergence.hpp"
#include "clusterkit/expansion.hpp"
#include "clusterkit/graphs.hpp"
#include "clusterkit/serialization.hpp"
#include "clusterkit/ursell.hpp"

namespace py = pybind11;
using namespace clusterkit;

namespace {

using CMatrix = std::vector<std::vector<Cplx>>;
using CVector = std::vector<Cplx>;

py::object json_to_py(const nlohmann::json& j) {
    switch (j.type()) {
        case nlohmann::json::value_t::null:
            return py::none();
        case nlohmann::json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case nlohmann::json::value_t::number_integer:
            return py::int_(j.get<std::int64_t>());
        case nlohmann::json::value_t::number_unsigned:
            return py::int_(j.get<std::uint64_t>());
        case nlohmann::json::value_t::number_float:
            return py::float_(j.get<double>());
        case nlohmann::json::value_t::string:
            return py::str(j.get<std::string>());
        case nlohmann::json::value_t::array: {
            py::list out;
            for (const auto& v : j) out.append(json_to_py(v));
            return out;
        }
        case nlohmann::json::value_t::object: {
            py::dict out;
            for (const auto& [k, v] : j.items()) out[py::str(k)] = json_to_py(v);
            return out;
        }
        default:
            return py::none();
    }
}

EdgeWeightMatrix<Cplx> to_matrix(const CMatrix& rows) {
    const int n = static_cast<int>(rows.size());
    EdgeWeightMatrix<Cplx> m(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw std::invalid_argument("zeta matrix must be square");
        for (int j = i + 1; j < n; ++j) {
            if (rows[i][j] != rows[j][i])
                throw std::invalid_argument("zeta matrix must be symmetric");
            m.set(i, j, rows[i][j]);
        }
    }
    return m;
}

DiscretePolymerSpace make_space(const CVector& weights) {
    DiscretePolymerSpace s;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        s.ids.push_back("p" + std::to_string(i));
        s.weights.push_back(weights[i]);
    }
    return s;
}

py::object simplify(const Cplx& z) {
    if (z.imag() == 0.0) return py::float_(z.real());
    return py::cast(z);
}

WeightFunctions make_weights(const std::vector<double>& a) {
    WeightFunctions w;
    w.a = a;
    return w;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Cluster expansions for abstract polymer systems: Ursell weights, "
              "convergence criteria, log-partition series, correlations, and the "
              "bundled classical/lattice/quantum models.";

    m.def("connected_graph_count", [](int n) { return connected_graph_count(n); }, py::arg("n"));
    m.def("set_partition_count", [](int m_) { return set_partition_count(m_); }, py::arg("m"));

    m.def(
        "ursell", [](const CMatrix& zeta) { return simplify(ursell(to_matrix(zeta))); },
        py::arg("zeta"), "Ursell weight of a tuple from its pairwise zeta matrix.");
    m.def(
        "is_cluster", [](const CMatrix& zeta) { return is_cluster(to_matrix(zeta)); },
        py::arg("zeta"));
    m.def(
        "min_connectivity_cost",
        [](const std::vector<std::vector<double>>& costs) {
            const int n = static_cast<int>(costs.size());
            EdgeWeightMatrix<double> m_(n);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) m_.set(i, j, costs[i][j]);
            return min_connectivity_cost(m_);
        },
        py::arg("costs"));

    m.def(
        "log_partition_series",
        [](const CVector& weights, const CMatrix& zeta, int order) {
            const DiscretePolymerSpace sp = make_space(weights);
            const InteractionKernel k = matrix_kernel(zeta);
            DiscreteEngine<Cplx> eng(sp, k);
            return json_to_py(to_json(log_partition_series(eng, order)));
        },
        py::arg("weights"), py::arg("zeta"), py::arg("order") = 6);

    m.def(
        "partition_direct",
        [](const CVector& weights, const CMatrix& zeta, int n_cap) {
            const DiscretePolymerSpace sp = make_space(weights);
            const InteractionKernel k = matrix_kernel(zeta);
            DiscreteEngine<Cplx> eng(sp, k);
            return simplify(partition_direct(eng, n_cap));
        },
        py::arg("weights"), py::arg("zeta"), py::arg("n_cap"));

    m.def(
        "correlation_ratio",
        [](const CVector& weights, const CMatrix& zeta, const std::vector<int>& fixed,
           int order) {
            const DiscretePolymerSpace sp = make_space(weights);
            const InteractionKernel k = matrix_kernel(zeta);
            DiscreteEngine<Cplx> eng(sp, k);
            return json_to_py(to_json(correlation_ratio(eng, fixed, order)));
        },
        py::arg("weights"), py::arg("zeta"), py::arg("fixed"), py::arg("order") = 6);

    m.def(
        "kp_check",
        [](const CVector& weights, const CMatrix& zeta, const std::vector<double>& a,
           double tolerance) {
            const DiscretePolymerSpace sp = make_space(weights);
            const InteractionKernel k = matrix_kernel(zeta);
            return json_to_py(to_json(kp_check(sp, k, make_weights(a), tolerance)));
        },
        py::arg("weights"), py::arg("zeta"), py::arg("a"), py::arg("tolerance") = 1e-9);

    m.def(
        "auto_tune_a",
        [](const CVector& weights, const CMatrix& zeta) -> py::object {
            const DiscretePolymerSpace sp = make_space(weights);
            const InteractionKernel k = matrix_kernel(zeta);
            const TuneOutcome out = auto_tune_a(sp, k);
            if (!out.success) return py::none();
            return py::cast(out.weights.a);
        },
        py::arg("weights"), py::arg("zeta"),
        "Fixed-point tuning of the criterion weight a; None on failure.");

    m.def(
        "gamma_estimate",
        [](const CVector& weights, const CMatrix& zeta, int n_probe, std::uint64_t seed) {
            const DiscretePolymerSpace sp = make_space(weights);
            const InteractionKernel k = matrix_kernel(zeta);
            return json_to_py(to_json(gamma_estimate(sp, k, n_probe, seed)));
        },
        py::arg("weights"), py::arg("zeta"), py::arg("n_probe") = 16, py::arg("seed") = 0);

    m.def(
        "decay_check",
        [](const CVector& weights, const CMatrix& zeta, const std::vector<int>& fixed,
           const std::vector<double>& a, int order) {
            const DiscretePolymerSpace sp = make_space(weights);
            const InteractionKernel k = matrix_kernel(zeta);
            DiscreteEngine<Cplx> eng(sp, k);
            const DecayCheckResult r = decay_check(eng, fixed, make_weights(a), order);
            py::dict out;
            out["lhs"] = r.lhs;
            out["rhs"] = r.rhs;
            out["passed"] = r.holds;
            out["gamma"] = json_to_py(to_json(r.gamma));
            return out;
        },
        py::arg("weights"), py::arg("zeta"), py::arg("fixed"), py::arg("a"),
        py::arg("order") = 6);

    // bundled models
    m.def(
        "quantum_criterion",
        [](int d, double beta, double z, double potential_integral) {
            models::QuantumGasParams p;
            p.dimension = d;
            p.beta = beta;
            p.z = z;
            p.potential_integral = potential_integral;
            return json_to_py(to_json(models::check_condconvquant(p)));
        },
        py::arg("d") = 3, py::arg("beta") = 1.0, py::arg("z") = 0.5,
        py::arg("potential_integral") = 1.0);

    m.def(
        "lattice_polymers",
        [](int d, const std::vector<int>& box, int max_size) {
            models::LatticePolymerParams p;
            p.dimension = d;
            p.box = box;
            p.max_polymer_size = max_size;
            const models::LatticePolymerSystem sys = models::enumerate_lattice_polymers(p);
            py::dict out;
            out["n_polymers"] = sys.space.size();
            std::vector<int> by_size(max_size, 0);
            for (int s : sys.sizes) ++by_size[s - 1];
            out["counts_by_size"] = py::cast(by_size);
            out["golden_ratio"] = json_to_py(to_json(models::golden_ratio_criterion(p)));
            return out;
        },
        py::arg("d"), py::arg("box"), py::arg("max_size"));

    m.def(
        "origin_polymer_counts",
        [](int d, int max_n) { return models::origin_polymer_counts(d, max_n); }, py::arg("d"),
        py::arg("max_n"));

    auto make_gas = [](int d, double beta, double z, const std::string& kind, double radius,
                       double height, double cutoff) {
        models::ClassicalGasParams p;
        p.dimension = d;
        p.beta = beta;
        p.z = z;
        p.cutoff_radius = cutoff;
        if (kind == "hard_sphere") {
            p.potential.kind = models::Potential::Kind::hard_sphere;
        } else if (kind == "square_well") {
            p.potential.kind = models::Potential::Kind::square_well;
        } else {
            throw std::invalid_argument("potential kind must be hard_sphere or square_well here");
        }
        p.potential.radius = radius;
        p.potential.height = height;
        return p;
    };

    m.def(
        "gas_condconv",
        [make_gas](int d, double beta, double z, const std::string& kind, double radius,
                   double height, double c_rate) {
            return json_to_py(to_json(models::check_decay_condition(
                make_gas(d, beta, z, kind, radius, height, 0.0), c_rate)));
        },
        py::arg("d"), py::arg("beta"), py::arg("z"), py::arg("kind") = "hard_sphere",
        py::arg("radius") = 1.0, py::arg("height") = 0.0, py::arg("c_rate") = 0.0);

    m.def(
        "gas_pressure_series",
        [make_gas](int d, double beta, double z, const std::string& kind, double radius,
                   double height, double cutoff, int order, std::uint64_t samples,
                   std::uint64_t seed) {
            return json_to_py(to_json(models::pressure_series(
                make_gas(d, beta, z, kind, radius, height, cutoff), order, samples, seed)));
        },
        py::arg("d"), py::arg("beta"), py::arg("z"), py::arg("kind") = "hard_sphere",
        py::arg("radius") = 1.0, py::arg("height") = 0.0, py::arg("cutoff") = 0.0,
        py::arg("order") = 2, py::arg("samples") = 20000, py::arg("seed") = 0);

    m.attr("__version__") = "0.1.0";
}
