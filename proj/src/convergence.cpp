#include "clusterkit/convergence.hpp"

#include <cmath>
#include <sstream>

namespace clusterkit {

namespace {

// |zeta| table with the stability spot-check applied once.
std::vector<double> abs_zeta_table(const DiscretePolymerSpace& space,
                                   const InteractionKernel& kernel) {
    const std::size_t p = space.size();
    std::vector<double> t(p * p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i; j < p; ++j) {
            const double v = std::abs(checked_zeta(kernel, i, j));
            t[i * p + j] = v;
            t[j * p + i] = v;
        }
    return t;
}

}  // namespace

CriterionReport kp_check(const DiscretePolymerSpace& space, const InteractionKernel& kernel,
                         const WeightFunctions& weights, double tolerance) {
    space.validate();
    weights.validate(space.size());
    const std::size_t p = space.size();
    const auto absz = abs_zeta_table(space, kernel);

    CriterionReport rep;
    rep.mode = (weights.has_b() || weights.has_c()) ? CriterionReport::Mode::tilted
                                                    : CriterionReport::Mode::plain;
    rep.tolerance = tolerance;
    rep.per_polymer.reserve(p);
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p; ++i) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            lhs += std::abs(space.weights[j]) * std::exp(weights.b_at(j)) *
                   absz[i * p + j] * std::exp(weights.c_at(i, j)) * std::exp(weights.a_at(j));
        }
        CriterionReport::Entry e;
        e.id = space.ids[i];
        e.lhs = lhs;
        e.a = weights.a_at(i);
        e.slack = e.a - lhs;
        rep.per_polymer.push_back(e);
        worst = std::min(worst, e.slack);
    }
    rep.worst_slack = p == 0 ? 0.0 : worst;
    rep.passed = rep.worst_slack >= -tolerance;
    double mass = 0.0;
    for (std::size_t i = 0; i < p; ++i)
        mass += std::abs(space.weights[i]) * std::exp(weights.a_at(i));
    rep.integrability = mass;
    return rep;
}

TuneOutcome auto_tune_a(const DiscretePolymerSpace& space, const InteractionKernel& kernel,
                        int max_iter, TuneMode mode, const std::vector<double>* size_functional,
                        double divergence_cap, double stabilize_tol) {
    space.validate();
    const std::size_t p = space.size();
    const auto absz = abs_zeta_table(space, kernel);
    std::vector<double> absw(p);
    for (std::size_t i = 0; i < p; ++i) absw[i] = std::abs(space.weights[i]);

    std::vector<double> sizes;
    if (mode == TuneMode::proportional) {
        if (!size_functional || size_functional->size() != p)
            throw std::invalid_argument("auto_tune_a: proportional mode needs a size functional");
        sizes = *size_functional;
        for (double s : sizes)
            if (s <= 0) throw std::invalid_argument("auto_tune_a: size functional must be > 0");
    }

    TuneOutcome out;
    if (p == 0) {
        out.success = true;
        out.message = "empty space";
        return out;
    }

    // a is represented by the per-polymer vector in every mode; scalar and
    // proportional modes collapse the update with a sup.
    std::vector<double> a(p, 0.0), next(p, 0.0);
    for (int iter = 1; iter <= max_iter; ++iter) {
        for (std::size_t i = 0; i < p; ++i) {
            double lhs = 0.0;
            for (std::size_t j = 0; j < p; ++j) lhs += absw[j] * absz[i * p + j] * std::exp(a[j]);
            next[i] = lhs;
        }
        if (mode == TuneMode::scalar) {
            const double sup = *std::max_element(next.begin(), next.end());
            std::fill(next.begin(), next.end(), sup);
        } else if (mode == TuneMode::proportional) {
            double alpha = 0.0;
            for (std::size_t i = 0; i < p; ++i) alpha = std::max(alpha, next[i] / sizes[i]);
            for (std::size_t i = 0; i < p; ++i) next[i] = alpha * sizes[i];
        }
        double change = 0.0, amax = 0.0;
        for (std::size_t i = 0; i < p; ++i) {
            change = std::max(change, std::abs(next[i] - a[i]));
            amax = std::max(amax, next[i]);
        }
        a = next;
        out.iterations = iter;
        out.final_change = change;
        if (amax > divergence_cap) {
            out.message = "tuning-failed: iterate exceeded the divergence cap";
            return out;
        }
        if (change <= stabilize_tol * (1.0 + amax)) {
            out.success = true;
            out.weights.a = a;
            out.message = "stabilized";
            return out;
        }
    }
    out.message = "tuning-failed: no stabilization within the iteration cap";
    return out;
}

GammaEstimate gamma_estimate(const DiscretePolymerSpace& space, const InteractionKernel& kernel,
                             int n_probe, std::uint64_t seed) {
    space.validate();
    const std::size_t p = space.size();
    GammaEstimate g;
    g.n_probe = std::min(n_probe, 16);
    if (p == 0) {
        g.method = GammaEstimate::Method::analytic_hard_core;
        return g;
    }
    bool sign_definite = true;  // real with zeta in [-1, 0]
    bool any_nonzero = false;
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i; j < p; ++j) {
            const Cplx z = checked_zeta(kernel, i, j);
            if (z != Cplx(0.0)) any_nonzero = true;
            if (z.imag() != 0.0 || z.real() < -1.0 || z.real() > 0.0) sign_definite = false;
        }
    if (kernel.hard_core || sign_definite) {
        // factors 1 + zeta lie in [0,1]; repeated worst pairs drive the
        // product to 0, so the sup is exactly 1 once any pair interacts
        g.method = GammaEstimate::Method::analytic_hard_core;
        g.value = any_nonzero ? 1.0 : 0.0;
        return g;
    }
    g.method = GammaEstimate::Method::sampled;
    g.value = gamma_sampled(space, kernel, g.n_probe, seed);
    return g;
}

double gamma_sampled(const DiscretePolymerSpace& space, const InteractionKernel& kernel,
                     int n_probe, std::uint64_t seed, int n_draws) {
    const std::size_t p = space.size();
    if (p == 0) return 0.0;
    n_probe = std::min(n_probe, 16);
    double best = 0.0;
    for (int t = 0; t < n_draws; ++t) {
        RngStream rng(seed, static_cast<std::uint64_t>(t));
        const std::size_t a0 = rng.below(p);
        Cplx prod(1.0);
        for (int k = 1; k <= 16; ++k) {
            const std::size_t ak = rng.below(p);
            prod *= Cplx(1.0) + checked_zeta(kernel, a0, ak);
            if (k <= n_probe) best = std::max(best, std::abs(prod - Cplx(1.0)));
        }
    }
    return std::min(best, 2.0);
}

CriterionReport kp_check_mc(const ContinuousPolymerSpace& space, const ContinuousKernel& kernel,
                            const ContinuousWeights& weights, std::span<const Point> probes,
                            std::uint64_t n_samples, std::uint64_t seed, double tolerance,
                            int threads) {
    if (!weights.a) throw std::invalid_argument("kp_check_mc: weight function a is required");
    CriterionReport rep;
    rep.mode = (weights.b || weights.c) ? CriterionReport::Mode::tilted
                                        : CriterionReport::Mode::plain;
    rep.tolerance = tolerance;
    double worst = std::numeric_limits<double>::infinity();
    double max_err = 0.0;
    for (std::size_t pi = 0; pi < probes.size(); ++pi) {
        const Point& x = probes[pi];
        auto f = [&](const Point& y) {
            double v = std::abs(kernel.zeta(x, y)) * std::exp(weights.a(y));
            if (weights.b) v *= std::exp(weights.b(y));
            if (weights.c) v *= std::exp(weights.c(x, y));
            return v;
        };
        const McEstimate est = mc_integrate(space, f, n_samples, seed + pi, threads);
        CriterionReport::Entry e;
        std::ostringstream id;
        id << "probe(";
        for (std::size_t k = 0; k < x.size(); ++k) id << (k ? "," : "") << x[k];
        id << ")";
        e.id = id.str();
        e.lhs = est.mean;
        e.a = weights.a(x);
        e.slack = e.a - est.mean;
        e.stat_error = est.std_error;
        rep.per_polymer.push_back(e);
        worst = std::min(worst, e.slack + 3.0 * est.std_error);
        max_err = std::max(max_err, est.std_error);
    }
    rep.worst_slack = probes.empty() ? 0.0 : worst;
    rep.statistical_error = max_err;
    // pass at confidence: slack + 3 sigma must clear the tolerance
    rep.passed = rep.worst_slack >= -tolerance;
    rep.integrability = space.total_mass * std::exp(weights.a_sup + weights.b_sup);
    return rep;
}

}  // namespace clusterkit
