#include "clusterkit/models/quantum_gas.hpp"

#include <cmath>
#include <stdexcept>

namespace clusterkit::models {

void QuantumGasParams::validate() const {
    if (dimension <= 2)
        throw std::domain_error(
            "quantum criterion: unsupported dimension (sum_l l^{-d/2} diverges for d <= 2)");
    if (beta <= 0) throw std::invalid_argument("quantum criterion: beta must be > 0");
    if (!(z > 0.0) || z > 1.0)
        throw std::invalid_argument("quantum criterion: fugacity must lie in (0, 1]");
    if (potential_integral < 0)
        throw std::invalid_argument("quantum criterion: potential integral must be >= 0");
    if (statistics != "bosons" && statistics != "fermions")
        throw std::invalid_argument("quantum criterion: statistics must be bosons or fermions");
}

QuantumCriterionReport check_condconvquant(const QuantumGasParams& params,
                                           std::uint64_t partial_terms) {
    params.validate();
    if (partial_terms < 2)
        throw std::invalid_argument("quantum criterion: need at least two partial terms");
    const double s = params.dimension / 2.0;
    // descending sum keeps the tiny tail terms from washing out
    double partial = 0.0;
    for (std::uint64_t l = partial_terms; l >= 1; --l)
        partial += std::pow(static_cast<double>(l), -s);
    const double n = static_cast<double>(partial_terms);
    // integral comparison: tail in [ (N+1)^{1-s}, N^{1-s} ] / (s-1)
    const double tail_lo = std::pow(n + 1.0, 1.0 - s) / (s - 1.0);
    const double tail_hi = std::pow(n, 1.0 - s) / (s - 1.0);

    QuantumCriterionReport rep;
    rep.zeta_lower = partial + tail_lo;
    rep.zeta_upper = partial + tail_hi;
    const double two_pi_beta = 2.0 * 3.14159265358979323846264338327950288 * params.beta;
    const double prefactor =
        params.beta / std::pow(two_pi_beta, params.dimension / 2.0) * params.potential_integral;
    rep.lhs_lower = prefactor * rep.zeta_lower;
    rep.lhs_upper = prefactor * rep.zeta_upper;
    rep.minus_log_z = -std::log(params.z);
    rep.passed = rep.lhs_upper <= rep.minus_log_z;
    rep.z_max = std::exp(-rep.lhs_upper);
    return rep;
}

}  // namespace clusterkit::models
