#pragma once

#include <cmath>
#include <limits>
#include <span>

#include "clusterkit/expansion.hpp"

namespace clusterkit {

// Outcome of the convergence-criterion check. The plain criterion is the
// tilted one with b = c = 0; both run the same arithmetic path, so their
// reports are bit-identical when the tilts vanish.
struct CriterionReport {
    enum class Mode { plain, tilted };
    struct Entry {
        std::string id;
        double lhs = 0.0;
        double a = 0.0;
        double slack = 0.0;       // a - lhs
        double stat_error = 0.0;  // continuous probes only
    };
    Mode mode = Mode::plain;
    std::vector<Entry> per_polymer;
    double worst_slack = 0.0;
    bool passed = false;
    double tolerance = 1e-9;
    double integrability = 0.0;  // sum |mu| e^a (declared bound for continuous spaces)
    std::optional<double> statistical_error;
};

// For every polymer A: integral d|mu_b|(A') |zeta_c(A,A')| e^{a(A')} <= a(A),
// plus finiteness of integral d|mu| e^a.
CriterionReport kp_check(const DiscretePolymerSpace& space, const InteractionKernel& kernel,
                         const WeightFunctions& weights, double tolerance = 1e-9);

enum class TuneMode {
    per_polymer,   // pointwise fixed-point map
    scalar,        // constant a, sup-reduced map
    proportional,  // a = alpha * size(A), sup-reduced in alpha
};

struct TuneOutcome {
    bool success = false;  // soft failure: does not prove the criterion unsatisfiable
    WeightFunctions weights;
    int iterations = 0;
    double final_change = 0.0;
    std::string message;
};

// Monotone iteration a_{k+1}(A) = integral d|mu|(A') |zeta(A,A')| e^{a_k(A')}
// from a_0 = 0, stopped by stabilization or by the divergence cap.
TuneOutcome auto_tune_a(const DiscretePolymerSpace& space, const InteractionKernel& kernel,
                        int max_iter = 200, TuneMode mode = TuneMode::per_polymer,
                        const std::vector<double>* size_functional = nullptr,
                        double divergence_cap = 50.0, double stabilize_tol = 1e-13);

struct GammaEstimate {
    double value = 0.0;
    enum class Method { analytic_hard_core, sampled, user_supplied } method = Method::sampled;
    int n_probe = 0;
};

// sup over tuples of |prod (1 + zeta(A_0, A_i)) - 1|. Hard-core and real
// sign-definite kernels admit the exact value (1 if any pair interacts, else
// 0); other kernels are sampled, which yields a lower bound.
GammaEstimate gamma_estimate(const DiscretePolymerSpace& space, const InteractionKernel& kernel,
                             int n_probe = 16, std::uint64_t seed = 0);

// Forced sampling path (lower bound on the sup); monotone in n_probe for a
// fixed seed because draw t evaluates every prefix of one length-16 tuple.
double gamma_sampled(const DiscretePolymerSpace& space, const InteractionKernel& kernel,
                     int n_probe, std::uint64_t seed, int n_draws = 2048);

struct BoundCheck {
    bool holds = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;                // rhs - lhs
    std::vector<double> lhs_by_order;   // prefix values, nondecreasing
};

// 1 + sum_{n=2}^{N} n int d|mu_b|(A_2)...d|mu_b|(A_n) |phi_c(A_1,...,A_n)|
// against e^{a(A_1)}.
template <class S>
BoundCheck verify_b1(DiscreteEngine<S>& eng, const WeightFunctions& wf, int max_order,
                     int fixed_polymer) {
    if (max_order < 1 || max_order > eng.n_max())
        throw CapacityError("verify_b1: order out of range");
    wf.validate(eng.space().size());
    BoundCheck out;
    out.rhs = std::exp(wf.a_at(fixed_polymer));
    std::vector<double> by_order(max_order + 1, 0.0);
    by_order[1] = 1.0;
    std::vector<int> tuple;
    eng.template for_each_multiset<double>(
        max_order - 1,
        [&](int j) { return eng.abs_weight(j) * std::exp(wf.b_at(j)); },
        [&](std::span<const int> idx, double prod, double ordered_count) {
            const int n = static_cast<int>(idx.size()) + 1;
            tuple.assign(1, fixed_polymer);
            tuple.insert(tuple.end(), idx.begin(), idx.end());
            by_order[n] += n * ordered_count * prod * eng.phi_abs_c(tuple, wf);
        });
    double acc = 0.0;
    for (int n = 1; n <= max_order; ++n) {
        acc += by_order[n];
        out.lhs_by_order.push_back(acc);
    }
    out.lhs = acc;
    out.margin = out.rhs - out.lhs;
    out.holds = out.lhs <= out.rhs;
    return out;
}

// sum_{n>=1} int d|mu_b|(A_1)...d|mu_b|(A_n) (sum_i |zeta_c(A,A_i)|)
// |phi_c(A_1,...,A_n)| against a(A).
template <class S>
BoundCheck verify_b2(DiscreteEngine<S>& eng, const WeightFunctions& wf, int max_order,
                     int probe_polymer) {
    if (max_order < 1 || max_order > eng.n_max())
        throw CapacityError("verify_b2: order out of range");
    wf.validate(eng.space().size());
    BoundCheck out;
    out.rhs = wf.a_at(probe_polymer);
    std::vector<double> by_order(max_order + 1, 0.0);
    eng.template for_each_multiset<double>(
        max_order,
        [&](int j) { return eng.abs_weight(j) * std::exp(wf.b_at(j)); },
        [&](std::span<const int> idx, double prod, double ordered_count) {
            double zsum = 0.0;
            for (int i : idx)
                zsum += ScalarOps<S>::abs_value(eng.zeta(probe_polymer, i)) *
                        std::exp(wf.c_at(probe_polymer, i));
            if (zsum == 0.0) return;
            by_order[idx.size()] += ordered_count * prod * zsum * eng.phi_abs_c(idx, wf);
        });
    double acc = 0.0;
    for (int n = 1; n <= max_order; ++n) {
        acc += by_order[n];
        out.lhs_by_order.push_back(acc);
    }
    out.lhs = acc;
    out.margin = out.rhs - out.lhs;
    out.holds = out.lhs <= out.rhs;
    return out;
}

// ((1+gamma)^m - 1) / (m*gamma), with the gamma -> 0 limit equal to 1.
inline double decay_prefactor_multiplier(int m, double gamma) {
    if (gamma < 0.0) throw std::invalid_argument("decay bound: gamma must be nonnegative");
    if (gamma < 1e-14) return 1.0;
    return std::expm1(m * std::log1p(gamma)) / (m * gamma);
}

// exp{ (1/(m gamma)) [(1+gamma)^m - 1] sum_i a(A_i) } prod_{i<j} (1 + |zeta_c|).
template <class S>
double decay_bound_rhs(DiscreteEngine<S>& eng, std::span<const int> fixed,
                       const WeightFunctions& wf, double gamma) {
    const int m = static_cast<int>(fixed.size());
    if (m < 1) throw std::invalid_argument("decay bound: empty tuple");
    double sum_a = 0.0;
    for (int i : fixed) sum_a += wf.a_at(i);
    double pairs = 1.0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            pairs *= 1.0 + ScalarOps<S>::abs_value(eng.zeta(fixed[i], fixed[j])) *
                               std::exp(wf.c_at(fixed[i], fixed[j]));
    return std::exp(decay_prefactor_multiplier(m, gamma) * sum_a) * pairs;
}

// LHS of the decay estimate: sum_{n>=m} n!/(n-m)! int d|mu_b| ... |phi_c|.
template <class S>
double decay_lhs(DiscreteEngine<S>& eng, std::span<const int> fixed, const WeightFunctions& wf,
                 int max_order) {
    const int m = static_cast<int>(fixed.size());
    if (m < 1) throw std::invalid_argument("decay_lhs: empty tuple");
    if (max_order < m || max_order > eng.n_max())
        throw CapacityError("decay_lhs: order out of range");
    auto rising = [&](int n) {
        double v = 1.0;
        for (int t = n - m + 1; t <= n; ++t) v *= t;
        return v;
    };
    std::vector<int> tuple(fixed.begin(), fixed.end());
    double total = kFactorial[m] * eng.phi_abs_c(tuple, wf);
    eng.template for_each_multiset<double>(
        max_order - m,
        [&](int j) { return eng.abs_weight(j) * std::exp(wf.b_at(j)); },
        [&](std::span<const int> idx, double prod, double ordered_count) {
            const int n = m + static_cast<int>(idx.size());
            tuple.resize(fixed.size());
            tuple.insert(tuple.end(), idx.begin(), idx.end());
            total += rising(n) * ordered_count * prod * eng.phi_abs_c(tuple, wf);
        });
    return total;
}

struct DecayCheckResult {
    bool holds = false;
    double lhs = 0.0;
    double rhs = 0.0;
    GammaEstimate gamma;
};

template <class S>
DecayCheckResult decay_check(DiscreteEngine<S>& eng, std::span<const int> fixed,
                             const WeightFunctions& wf, int max_order,
                             std::uint64_t gamma_seed = 0) {
    DecayCheckResult r;
    r.gamma = gamma_estimate(eng.space(), eng.kernel(), 16, gamma_seed);
    r.lhs = decay_lhs(eng, fixed, wf, max_order);
    r.rhs = decay_bound_rhs(eng, fixed, wf, r.gamma.value);
    r.holds = r.lhs <= r.rhs;
    return r;
}

// ---------------------------------------------------------------------------
// Continuous criterion checking on a probe set; a pass is "pass at confidence"
// (3 sigma), never a proof.
// ---------------------------------------------------------------------------
struct ContinuousWeights {
    std::function<double(const Point&)> a;
    std::function<double(const Point&)> b;                 // may be null (0)
    std::function<double(const Point&, const Point&)> c;   // may be null (0)
    double a_sup = 0.0;
    double b_sup = 0.0;
};

CriterionReport kp_check_mc(const ContinuousPolymerSpace& space, const ContinuousKernel& kernel,
                            const ContinuousWeights& weights, std::span<const Point> probes,
                            std::uint64_t n_samples, std::uint64_t seed,
                            double tolerance = 1e-9, int threads = -1);

}  // namespace clusterkit
