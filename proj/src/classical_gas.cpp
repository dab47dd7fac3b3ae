#include "clusterkit/models/classical_gas.hpp"

#include <algorithm>
#include <cmath>

namespace clusterkit::models {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double sphere_surface(int d) {  // |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2)
    return 2.0 * std::pow(kPi, d / 2.0) / std::tgamma(d / 2.0);
}

// Composite Simpson of f on [lo, hi] with an even panel count.
double simpson(const std::function<double(double)>& f, double lo, double hi, int panels) {
    if (hi <= lo) return 0.0;
    const double h = (hi - lo) / panels;
    double acc = f(lo) + f(hi);
    for (int i = 1; i < panels; ++i) acc += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    const double v = acc * h / 3.0;
    if (!std::isfinite(v)) throw NumericalError("radial quadrature produced a non-finite value");
    return v;
}

double distance(const Point& x, const Point& y) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double d = x[k] - y[k];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace

void Potential::validate() const {
    switch (kind) {
        case Kind::hard_sphere:
            if (radius <= 0) throw std::invalid_argument("hard sphere: radius must be > 0");
            break;
        case Kind::square_well:
            if (radius <= 0) throw std::invalid_argument("square well: radius must be > 0");
            if (height < 0)
                throw std::invalid_argument(
                    "square well: attractive wells are not supported; height must be >= 0");
            break;
        case Kind::tabulated: {
            if (r_grid.size() != u_values.size() || r_grid.size() < 2)
                throw std::invalid_argument("tabulated potential: need matching grids (>= 2 points)");
            for (std::size_t i = 0; i + 1 < r_grid.size(); ++i)
                if (r_grid[i + 1] <= r_grid[i])
                    throw std::invalid_argument("tabulated potential: r grid must increase");
            if (r_grid.front() < 0)
                throw std::invalid_argument("tabulated potential: r must be nonnegative");
            for (double u : u_values)
                if (!(u >= 0) || !std::isfinite(u))
                    throw std::invalid_argument("tabulated potential: U must be finite and >= 0");
            break;
        }
    }
}

double Potential::range() const {
    switch (kind) {
        case Kind::hard_sphere:
        case Kind::square_well:
            return radius;
        case Kind::tabulated:
            return r_grid.back();
    }
    return 0.0;
}

double Potential::value(double r) const {
    switch (kind) {
        case Kind::hard_sphere:
            return r < radius ? std::numeric_limits<double>::infinity() : 0.0;
        case Kind::square_well:
            return r < radius ? height : 0.0;
        case Kind::tabulated: {
            if (r <= r_grid.front()) return u_values.front();
            if (r > r_grid.back()) return 0.0;
            if (r == r_grid.back()) return u_values.back();
            const auto it = std::upper_bound(r_grid.begin(), r_grid.end(), r);
            const std::size_t hi = static_cast<std::size_t>(it - r_grid.begin());
            const double t = (r - r_grid[hi - 1]) / (r_grid[hi] - r_grid[hi - 1]);
            return u_values[hi - 1] * (1.0 - t) + u_values[hi] * t;
        }
    }
    return 0.0;
}

void ClassicalGasParams::validate() const {
    if (dimension < 1) throw std::invalid_argument("classical gas: dimension must be >= 1");
    if (beta <= 0) throw std::invalid_argument("classical gas: beta must be > 0");
    if (z <= 0) throw std::invalid_argument("classical gas: fugacity must be > 0");
    potential.validate();
    for (const auto& [lo, hi] : box)
        if (hi <= lo) throw std::invalid_argument("classical gas: degenerate box axis");
}

double mayer_zeta(const ClassicalGasParams& p, const Point& x, const Point& y) {
    const double r = distance(x, y);
    if (r >= p.cutoff()) return 0.0;
    if (p.potential.hard_inside(r)) return -1.0;
    const double u = p.potential.value(r);
    return u == 0.0 ? 0.0 : std::expm1(-p.beta * u);
}

CondconvReport check_condconv(const ClassicalGasParams& p) { return check_decay_condition(p, 0.0); }

CondconvReport check_decay_condition(const ClassicalGasParams& p, double c_rate) {
    p.validate();
    if (c_rate < 0) throw std::invalid_argument("check_decay_condition: c_rate must be >= 0");
    const int d = p.dimension;
    const Potential& pot = p.potential;

    double integral = 0.0;
    double sup_tilt = 0.0;  // sup_r (1 - e^{-beta U(r)}) e^{c r}
    switch (pot.kind) {
        case Potential::Kind::hard_sphere:
            if (c_rate == 0.0) {
                integral = ball_volume(d, pot.radius);
            } else {
                integral = sphere_surface(d) *
                           simpson([&](double r) { return std::exp(c_rate * r) *
                                                          std::pow(r, d - 1); },
                                   0.0, pot.radius, 4096);
            }
            sup_tilt = std::exp(c_rate * pot.radius);
            break;
        case Potential::Kind::square_well: {
            const double mayer_mass = -std::expm1(-p.beta * pot.height);
            if (c_rate == 0.0) {
                integral = mayer_mass * ball_volume(d, pot.radius);
            } else {
                integral = mayer_mass * sphere_surface(d) *
                           simpson([&](double r) { return std::exp(c_rate * r) *
                                                          std::pow(r, d - 1); },
                                   0.0, pot.radius, 4096);
            }
            sup_tilt = mayer_mass * std::exp(c_rate * pot.radius);
            break;
        }
        case Potential::Kind::tabulated: {
            auto integrand = [&](double r) {
                return -std::expm1(-p.beta * pot.value(r)) * std::exp(c_rate * r) *
                       std::pow(r, d - 1);
            };
            double acc = 0.0;
            if (pot.r_grid.front() > 0.0)
                acc += simpson(integrand, 0.0, pot.r_grid.front(), 256);
            for (std::size_t i = 0; i + 1 < pot.r_grid.size(); ++i)
                acc += simpson(integrand, pot.r_grid[i], pot.r_grid[i + 1], 256);
            integral = sphere_surface(d) * acc;
            for (std::size_t i = 0; i < pot.r_grid.size(); ++i) {
                const double v =
                    -std::expm1(-p.beta * pot.u_values[i]) * std::exp(c_rate * pot.r_grid[i]);
                sup_tilt = std::max(sup_tilt, v);
            }
            break;
        }
    }

    CondconvReport rep;
    rep.integral = integral;
    rep.z = p.z;
    rep.lhs = p.z * integral;
    rep.threshold = std::exp(-1.0);
    rep.z_max = integral > 0 ? rep.threshold / integral : std::numeric_limits<double>::max();
    rep.passed = rep.lhs <= rep.threshold;
    rep.c_rate = c_rate;
    rep.decay_constant = std::exp(3.0) * (1.0 + sup_tilt);
    return rep;
}

namespace {

// MC estimate of int dx_1..dx_k phi(anchors..., x_1, ..., x_k) with each x_i
// uniform in the ball of given radius around center. Returns (mean, stderr)
// of the plain integral (no fugacity powers).
std::pair<double, double> cluster_integral_mc(const ClassicalGasParams& p,
                                              const std::vector<Point>& anchors, int k,
                                              const Point& center, double radius,
                                              std::uint64_t n_samples, std::uint64_t seed,
                                              std::uint64_t stream_base, int threads) {
    const double vol = ball_volume(p.dimension, radius);
    const int m = static_cast<int>(anchors.size());
    const int n = m + k;
    constexpr std::uint64_t kChunk = 1024;
    const std::uint64_t n_chunks = (n_samples + kChunk - 1) / kChunk;
    struct Sums {
        double s = 0.0, s2 = 0.0;
    };
    std::function<Sums(std::size_t)> chunk_fn = [&](std::size_t c) {
        Sums out;
        const std::uint64_t lo = c * kChunk;
        const std::uint64_t hi = std::min(n_samples, lo + kChunk);
        std::vector<Point> pts(n);
        for (int i = 0; i < m; ++i) pts[i] = anchors[i];
        for (std::uint64_t i = lo; i < hi; ++i) {
            RngStream rng(seed, stream_base + i);
            for (int j = 0; j < k; ++j) pts[m + j] = uniform_ball_point(rng, center, radius);
            EdgeWeightMatrix<double> zm(n);
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) zm.set(a, b, mayer_zeta(p, pts[a], pts[b]));
            const double v = ursell(zm) * std::pow(vol, k);
            if (!std::isfinite(v))
                throw NumericalError("pressure/correlation MC: non-finite term");
            out.s += v;
            out.s2 += v * v;
        }
        return out;
    };
    const auto chunks = parallel_map_chunks<Sums>(n_chunks, chunk_fn, threads);
    double s = 0.0, s2 = 0.0;
    for (const auto& ch : chunks) {
        s += ch.s;
        s2 += ch.s2;
    }
    const double nn = static_cast<double>(n_samples);
    const double mean = s / nn;
    const double var = std::max(0.0, s2 / nn - mean * mean);
    return {mean, std::sqrt(var / nn)};
}

}  // namespace

SeriesReport pressure_series(const ClassicalGasParams& p, int max_order, std::uint64_t n_samples,
                             std::uint64_t seed, int threads) {
    p.validate();
    if (max_order < 0 || max_order + 1 > kDefaultNMax)
        throw CapacityError("pressure_series: order out of range");
    if (n_samples < 2) throw std::invalid_argument("pressure_series: need samples");
    SeriesReport rep;
    rep.truncation_order = max_order;
    rep.orders.push_back({0, Cplx(p.z), Cplx(p.z), 0.0});
    const Point origin(p.dimension, 0.0);
    Cplx partial(p.z);
    for (int n = 1; n <= max_order; ++n) {
        const auto [mean, err] = cluster_integral_mc(
            p, {origin}, n, origin, n * p.cutoff(), n_samples, seed,
            static_cast<std::uint64_t>(n) << 32, threads);
        const double zpow = std::pow(p.z, n + 1);
        partial += zpow * mean;
        rep.orders.push_back({n, Cplx(zpow * mean), partial, zpow * err});
    }
    return rep;
}

double pressure_order1_analytic(const ClassicalGasParams& p) {
    const CondconvReport c = check_condconv(p);
    return -p.z * p.z * c.integral / 2.0;
}

Rho2Report rho2_truncated(const ClassicalGasParams& p, const Point& x1, const Point& x2,
                          int max_order, std::uint64_t n_samples, std::uint64_t seed,
                          int threads) {
    p.validate();
    if (max_order < 2 || max_order > kDefaultNMax)
        throw CapacityError("rho2_truncated: max_order must be in [2, n_max]");
    if (static_cast<int>(x1.size()) != p.dimension || static_cast<int>(x2.size()) != p.dimension)
        throw std::invalid_argument("rho2_truncated: point dimension mismatch");
    Rho2Report rep;
    rep.series.truncation_order = max_order;
    // n = 2 needs no integration: 2 z^2 phi(x1,x2) = z^2 zeta(x1,x2)
    const double lead = p.z * p.z * mayer_zeta(p, x1, x2);
    rep.series.orders.push_back({2, Cplx(lead), Cplx(lead), 0.0});
    Cplx partial(lead);
    Point center(p.dimension);
    for (int k = 0; k < p.dimension; ++k) center[k] = 0.5 * (x1[k] + x2[k]);
    const double half_sep = 0.5 * distance(x1, x2);
    for (int n = 3; n <= max_order; ++n) {
        const double radius = half_sep + (n - 1) * p.cutoff();
        const auto [mean, err] = cluster_integral_mc(
            p, {x1, x2}, n - 2, center, radius, n_samples, seed,
            static_cast<std::uint64_t>(n) << 32, threads);
        const double coeff = n * (n - 1.0) * std::pow(p.z, n);
        partial += coeff * mean;
        rep.series.orders.push_back({n, Cplx(coeff * mean), partial, std::abs(coeff) * err});
    }
    rep.value = partial.real();
    return rep;
}

ContinuousPolymerSpace gas_space(const ClassicalGasParams& p) {
    p.validate();
    if (p.box.empty())
        throw std::invalid_argument("gas_space: a finite box is required for the sampled space");
    if (static_cast<int>(p.box.size()) != p.dimension)
        throw std::invalid_argument("gas_space: box dimension mismatch");
    return uniform_box_space(p.box, p.z);
}

ContinuousKernel gas_kernel(const ClassicalGasParams& p) {
    ContinuousKernel k;
    k.zeta = [p](const Point& x, const Point& y) { return mayer_zeta(p, x, y); };
    k.stability_certified = true;  // zeta in [-1, 0] for U >= 0
    k.hard_core = p.potential.kind == Potential::Kind::hard_sphere;
    return k;
}

GammaEstimate gas_gamma(const ClassicalGasParams& p) {
    GammaEstimate g;
    g.method = GammaEstimate::Method::analytic_hard_core;
    // zeta in [-1,0]: products of (1+zeta) factors fill [0,1], so the sup is
    // 1 exactly when the potential is felt anywhere, 0 otherwise
    bool interacting = false;
    switch (p.potential.kind) {
        case Potential::Kind::hard_sphere:
            interacting = true;
            break;
        case Potential::Kind::square_well:
            interacting = p.potential.height > 0;
            break;
        case Potential::Kind::tabulated:
            for (double u : p.potential.u_values) interacting = interacting || u > 0;
            break;
    }
    g.value = interacting ? 1.0 : 0.0;
    return g;
}

}  // namespace clusterkit::models
