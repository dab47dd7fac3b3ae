#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "clusterkit/errors.hpp"
#include "clusterkit/rng.hpp"

namespace clusterkit {

using Cplx = std::complex<double>;

// Finite weighted polymer list; weights are mu({A}) and may be negative or
// complex. Total-variation quantities always use |weight|.
struct DiscretePolymerSpace {
    std::vector<std::string> ids;
    std::vector<Cplx> weights;
    std::string label;

    std::size_t size() const { return weights.size(); }
    double total_variation() const;
    bool real_valued() const;
    void validate() const;  // ids unique and sized like weights
};

// Symmetric pair interaction over polymer indices of one discrete space.
// stability_certified declares |1 + zeta| <= 1; evaluations are spot-checked
// against it (a certificate, not a proof).
struct InteractionKernel {
    std::function<Cplx(std::size_t, std::size_t)> zeta;
    bool stability_certified = false;
    bool hard_core = false;  // zeta in {0, -1}
};

InteractionKernel hard_core_kernel(std::vector<std::vector<bool>> overlap);
// Flags (hard_core, stability_certified) are derived from the matrix entries.
InteractionKernel matrix_kernel(std::vector<std::vector<Cplx>> zeta);
InteractionKernel zero_kernel();

// Evaluate zeta with the runtime stability spot-check (tolerance 1e-12).
Cplx checked_zeta(const InteractionKernel& k, std::size_t i, std::size_t j);

// Nonnegative weight functions a, b (per polymer) and c (per pair) from the
// convergence criteria. Empty vectors mean identically zero; note that the
// plain criterion is exactly the tilted one with b = c = 0.
struct WeightFunctions {
    std::vector<double> a;
    std::vector<double> b;
    std::vector<std::vector<double>> c;

    static WeightFunctions plain(std::size_t n, double a_value);

    double a_at(std::size_t i) const { return a.empty() ? 0.0 : a[i]; }
    double b_at(std::size_t i) const { return b.empty() ? 0.0 : b[i]; }
    double c_at(std::size_t i, std::size_t j) const { return c.empty() ? 0.0 : c[i][j]; }
    bool has_b() const { return !b.empty(); }
    bool has_c() const { return !c.empty(); }
    void validate(std::size_t n) const;
};

// zeta_c(A, A') = zeta(A, A') * exp(c(A, A')).
Cplx zeta_c(const InteractionKernel& k, const WeightFunctions& w, std::size_t i, std::size_t j);

// Exact sum over the space of f(A) * mu({A}), or f(A) * |mu({A})| when absolute.
Cplx integrate(const DiscretePolymerSpace& space,
               const std::function<Cplx(std::size_t)>& f,
               bool absolute = false);

// ---------------------------------------------------------------------------
// Continuous side
// ---------------------------------------------------------------------------

using Point = std::vector<double>;

struct ContinuousSample {
    Point x;
    double weight;  // d|mu| / d(proposal) at x; nonnegative
};

// Sampler-backed measure space. The proposal density is folded into the
// per-sample importance weight; signs or phases of a non-positive measure
// belong in the integrand, not here.
struct ContinuousPolymerSpace {
    int dimension = 1;
    std::function<ContinuousSample(RngStream&)> draw;
    double total_mass = 0.0;  // upper bound on |mu|(A)
    std::vector<std::pair<double, double>> domain;  // per-axis bounding box
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n_samples = 0;
};

// Importance-sampled estimate of integral f d|mu|. Sample i draws from
// RngStream(seed, i), so results are reproducible for any worker count.
McEstimate mc_integrate(const ContinuousPolymerSpace& space,
                        const std::function<double(const Point&)>& f,
                        std::uint64_t n_samples, std::uint64_t seed, int threads = -1);

struct ContinuousKernel {
    std::function<double(const Point&, const Point&)> zeta;
    bool stability_certified = false;
    bool hard_core = false;
};

// Uniform proposal over an axis-aligned box carrying measure density
// mass_density (so weight = mass_density * volume per draw).
ContinuousPolymerSpace uniform_box_space(std::vector<std::pair<double, double>> box,
                                         double mass_density);

// Uniform point in the d-ball of given radius around center (radius-direction
// construction; fixed draw count per sample).
Point uniform_ball_point(RngStream& rng, const Point& center, double radius);

double ball_volume(int d, double radius);

}  // namespace clusterkit
