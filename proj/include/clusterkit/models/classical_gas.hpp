#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clusterkit/convergence.hpp"
#include "clusterkit/expansion.hpp"
#include "clusterkit/polymer_space.hpp"

namespace clusterkit::models {

// Repulsive pair potential U >= 0. The hard sphere is represented by
// zeta = -1 inside the radius rather than a numeric infinity.
struct Potential {
    enum class Kind { hard_sphere, square_well, tabulated };
    Kind kind = Kind::hard_sphere;
    double radius = 1.0;      // hard_sphere / square_well
    double height = 0.0;      // square_well: U = height (>= 0) for r < radius
    std::vector<double> r_grid;    // tabulated: strictly increasing, r_grid[0] >= 0
    std::vector<double> u_values;  // tabulated: U(r_grid[i]) >= 0, linear in between

    void validate() const;
    double range() const;  // U == 0 beyond this radius
    // U(r) for soft kinds; hard-sphere interiors are handled by the Mayer
    // function directly and never evaluated here.
    double value(double r) const;
    bool hard_inside(double r) const { return kind == Kind::hard_sphere && r < radius; }
};

struct ClassicalGasParams {
    int dimension = 1;
    double beta = 1.0;
    double z = 0.1;  // fugacity
    Potential potential;
    std::vector<std::pair<double, double>> box;  // finite-volume region (optional)
    double cutoff_radius = 0.0;  // zeta treated as 0 beyond; defaults to potential range

    void validate() const;
    double cutoff() const { return cutoff_radius > 0 ? cutoff_radius : potential.range(); }
};

// zeta(x, y) = e^{-beta U(x-y)} - 1, truncated to 0 beyond the cutoff.
double mayer_zeta(const ClassicalGasParams& p, const Point& x, const Point& y);

struct CondconvReport {
    double integral = 0.0;   // I_c = int (1 - e^{-beta U(x)}) e^{c|x|} dx
    double z = 0.0;
    double lhs = 0.0;        // z * I_c
    double threshold = 0.0;  // e^{-1}
    double z_max = 0.0;      // e^{-1} / I_c (huge when I_c = 0)
    bool passed = false;
    double c_rate = 0.0;
    double decay_constant = 0.0;  // e^3 (1 + sup tilt); only meaningful when c_rate > 0
    std::string certificate = "a(x) = 1";
};

// z * int (1 - e^{-beta U}) dx <= e^{-1}; hard spheres use the exact d-ball
// volume, soft potentials radial quadrature.
CondconvReport check_condconv(const ClassicalGasParams& p);

// Tilted version with c(x) = c_rate |x|; on pass the truncated two-point
// correlation decays like e^{-c_rate |x1 - x2|} with the reported constant.
CondconvReport check_decay_condition(const ClassicalGasParams& p, double c_rate);

// beta p = z + sum_{n>=1} z^{n+1} int dx_1..dx_n phi(0, x_1, ..., x_n).
// Order 0 is the exact ideal-gas term; orders n >= 1 are Monte Carlo within
// the ball of radius n * cutoff (phi vanishes outside by the cluster property).
SeriesReport pressure_series(const ClassicalGasParams& p, int max_order,
                             std::uint64_t n_samples, std::uint64_t seed, int threads = -1);

// Closed form of the order-1 correction: -z^2 I / 2.
double pressure_order1_analytic(const ClassicalGasParams& p);

struct Rho2Report {
    double value = 0.0;
    SeriesReport series;  // orders n = 2 .. max_order of the rho_2^t series
};

// rho_2^t(x1, x2) = sum_{n>=2} n(n-1) z^n int dx_3..dx_n phi(x_1, ..., x_n),
// truncated; the n = 2 term z^2 zeta(x1, x2) is exact.
Rho2Report rho2_truncated(const ClassicalGasParams& p, const Point& x1, const Point& x2,
                          int max_order, std::uint64_t n_samples = 65536,
                          std::uint64_t seed = 0, int threads = -1);

// Space/kernel realizations for the generic machinery.
ContinuousPolymerSpace gas_space(const ClassicalGasParams& p);
ContinuousKernel gas_kernel(const ClassicalGasParams& p);
GammaEstimate gas_gamma(const ClassicalGasParams& p);

}  // namespace clusterkit::models
