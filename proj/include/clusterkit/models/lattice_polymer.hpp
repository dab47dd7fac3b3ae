#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "clusterkit/convergence.hpp"
#include "clusterkit/polymer_space.hpp"

namespace clusterkit::models {

double golden_ratio();      // (sqrt(5) + 1) / 2
double polymer_eta(int d);  // 2 log(2 d phi) + 1/phi

struct LatticePolymerParams {
    int dimension = 2;
    std::vector<int> box;  // per-axis extents, all >= 1
    int max_polymer_size = 8;
    enum class WeightRule { paper_default, user } weight_rule = WeightRule::paper_default;
    std::map<int, double> user_weights;  // size -> weight

    void validate() const;
};

struct LatticePolymerSystem {
    DiscretePolymerSpace space;
    InteractionKernel kernel;                 // zeta = -1 iff the site sets intersect
    std::vector<std::vector<int>> site_sets;  // sorted flat site indices per polymer
    std::vector<int> sizes;
};

// All connected subsets of the box with at most max_polymer_size sites,
// grown by breadth-first site addition with canonical-form deduplication.
LatticePolymerSystem enumerate_lattice_polymers(const LatticePolymerParams& params);

// Exact counts of connected subsets of Z^d containing the origin, per size
// 1..max_n (each is bounded by the closed-walk count (2d)^{2n}).
std::vector<std::uint64_t> origin_polymer_counts(int d, int max_n);

struct GoldenRatioReport {
    double eta = 0.0;
    double geometric_ratio = 0.0;   // (2d)^2 e^{-(eta - 1/phi)} = 1/phi^2
    double dominating_sum = 0.0;    // closed form of sum_n (2d)^{2n} e^{-(eta - 1/phi) n}
    double phi_inverse = 0.0;
    double identity_error = 0.0;    // |dominating_sum - 1/phi|
    CriterionReport kp;             // finite box, a(A) = |A| / phi
    bool passed = false;
};

// The dominating geometric sum equals 1/phi exactly (phi^2 = phi + 1); the
// finite-box check then holds with slack to spare.
GoldenRatioReport golden_ratio_criterion(const LatticePolymerParams& params);

}  // namespace clusterkit::models
