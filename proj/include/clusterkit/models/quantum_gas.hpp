#pragma once

#include <cstdint>
#include <string>

namespace clusterkit::models {

struct QuantumGasParams {
    int dimension = 3;  // >= 3, else sum_l l^{-d/2} diverges
    double beta = 1.0;
    double z = 0.5;  // in (0, 1]
    double potential_integral = 1.0;  // int U(x) dx >= 0
    std::string statistics = "bosons";  // informational; the criterion is statistics-blind

    void validate() const;
};

struct QuantumCriterionReport {
    // two-sided bracket of sum_{l>=1} l^{-d/2}: partial sum plus integral
    // comparison tails (rigorous on both sides)
    double zeta_lower = 0.0;
    double zeta_upper = 0.0;
    double lhs_lower = 0.0;  // beta/(2 pi beta)^{d/2} * int U * zeta bracket
    double lhs_upper = 0.0;
    double minus_log_z = 0.0;
    bool passed = false;   // rigorous: lhs_upper <= -log z
    double z_max = 0.0;    // exp(-lhs_upper), the fugacity at equality
};

QuantumCriterionReport check_condconvquant(const QuantumGasParams& params,
                                           std::uint64_t partial_terms = 1'000'000);

}  // namespace clusterkit::models
