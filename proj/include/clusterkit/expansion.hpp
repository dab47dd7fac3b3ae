#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "clusterkit/graphs.hpp"
#include "clusterkit/parallel.hpp"
#include "clusterkit/polymer_space.hpp"
#include "clusterkit/ursell.hpp"

namespace clusterkit {

inline constexpr std::uint64_t kDefaultTupleBudget = 10'000'000;

inline constexpr std::array<double, 13> kFactorial = {
    1., 1., 2., 6., 24., 120., 720., 5040., 40320., 362880., 3628800., 39916800., 479001600.};

struct OrderTerm {
    int order = 0;
    Cplx term{0.0};
    Cplx partial_sum{0.0};
    double stat_error = 0.0;  // 0 for exact paths
};

struct SeriesReport {
    std::vector<OrderTerm> orders;
    int truncation_order = 0;
    std::optional<double> tail_bound;  // heuristic; present only with a criterion certificate
    bool tail_is_heuristic = true;

    Cplx total() const { return orders.empty() ? Cplx(0.0) : orders.back().partial_sum; }
    bool real_valued() const {
        for (const auto& t : orders)
            if (t.term.imag() != 0.0) return false;
        return true;
    }
};

struct CorrelationReport {
    std::vector<std::string> fixed_ids;
    // zhat per distinct block of fixed positions (0-based, sorted)
    std::map<std::vector<int>, Cplx> zhat_values;
    Cplx ratio{0.0};
    int truncation_order = 0;
};

template <class S>
struct ScalarOps {
    static S from_cplx(const Cplx& z) { return z; }
    static Cplx to_cplx(const S& v) { return v; }
    static double abs_value(const S& v) { return std::abs(v); }
};
template <>
struct ScalarOps<double> {
    static double from_cplx(const Cplx& z) {
        if (z.imag() != 0.0)
            throw std::invalid_argument("real engine given a complex value; use the complex engine");
        return z.real();
    }
    static Cplx to_cplx(double v) { return {v, 0.0}; }
    static double abs_value(double v) { return std::abs(v); }
};

// Shared evaluation context for one (space, kernel) pair: the pairwise zeta
// table (diagonal included: it is the self-interaction used when a tuple
// repeats a polymer) and a memo of Ursell values keyed by polymer multiset.
// S is double (real systems) or Cplx.
template <class S>
class DiscreteEngine {
public:
    DiscreteEngine(const DiscretePolymerSpace& space, const InteractionKernel& kernel,
                   int n_max = kDefaultNMax)
        : space_(space), kernel_(kernel), n_max_(n_max), p_(space.size()) {
        space.validate();
        zeta_.resize(p_ * p_);
        for (std::size_t i = 0; i < p_; ++i)
            for (std::size_t j = i; j < p_; ++j) {
                const S z = ScalarOps<S>::from_cplx(checked_zeta(kernel, i, j));
                zeta_[i * p_ + j] = z;
                zeta_[j * p_ + i] = z;
            }
        w_.resize(p_);
        abs_w_.resize(p_);
        for (std::size_t i = 0; i < p_; ++i) {
            w_[i] = ScalarOps<S>::from_cplx(space.weights[i]);
            abs_w_[i] = std::abs(space.weights[i]);
        }
    }

    const DiscretePolymerSpace& space() const { return space_; }
    const InteractionKernel& kernel() const { return kernel_; }
    int n_polymers() const { return static_cast<int>(p_); }
    int n_max() const { return n_max_; }
    S weight(int i) const { return w_[i]; }
    double abs_weight(int i) const { return abs_w_[i]; }
    S zeta(int i, int j) const { return zeta_[static_cast<std::size_t>(i) * p_ + j]; }

    // Ursell value of the tuple (order of indices irrelevant); memoized.
    S phi(std::span<const int> tuple) {
        const int n = static_cast<int>(tuple.size());
        if (n == 1) return S(1);
        std::array<int, 16> buf{};
        std::copy(tuple.begin(), tuple.end(), buf.begin());
        std::sort(buf.begin(), buf.begin() + n);
        std::string key(reinterpret_cast<const char*>(buf.data()),
                        static_cast<std::size_t>(n) * sizeof(int));
        auto it = phi_memo_.find(key);
        if (it != phi_memo_.end()) return it->second;
        EdgeWeightMatrix<S> m(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) m.set(i, j, zeta(buf[i], buf[j]));
        const S value = ursell(m, n_max_);
        phi_memo_.emplace(std::move(key), value);
        return value;
    }

    // |phi| * exp(min connectivity cost under wf.c); the plain case has cost 0.
    double phi_abs_c(std::span<const int> tuple, const WeightFunctions& wf) {
        const double base = ScalarOps<S>::abs_value(phi(tuple));
        if (!wf.has_c() || tuple.size() < 2) return base;
        const int n = static_cast<int>(tuple.size());
        EdgeWeightMatrix<double> cost(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) cost.set(i, j, wf.c_at(tuple[i], tuple[j]));
        return base * std::exp(min_connectivity_cost(cost));
    }

    // Streams sorted multisets (i_1 <= ... <= i_k) of sizes 1..max_size in DFS
    // order. fn(indices, weight_product, ordered_count) where weight_product
    // multiplies weight_of over slots and ordered_count = k!/prod(mult!).
    // weight_of returning exact zero prunes the subtree.
    template <class A, class WFn, class Fn>
    void for_each_multiset(int max_size, const WFn& weight_of, const Fn& fn) const {
        if (p_ == 0 || max_size < 1) return;
        std::vector<int> idx;
        idx.reserve(max_size);
        rec_multiset<A>(max_size, weight_of, fn, idx, A(1), 1.0);
    }

    std::size_t memo_size() const { return phi_memo_.size(); }

private:
    template <class A, class WFn, class Fn>
    void rec_multiset(int max_size, const WFn& weight_of, const Fn& fn, std::vector<int>& idx,
                      A running, double denom) const {
        const int start = idx.empty() ? 0 : idx.back();
        for (int j = start; j < static_cast<int>(p_); ++j) {
            const A wj = weight_of(j);
            if (wj == A(0)) continue;
            const A running2 = running * wj;
            const int mult = (!idx.empty() && idx.back() == j)
                                 ? static_cast<int>(std::count(idx.rbegin(), idx.rend(), j))
                                 : 0;
            const double denom2 = denom * (mult + 1);
            idx.push_back(j);
            fn(std::span<const int>(idx.data(), idx.size()), running2,
               kFactorial[idx.size()] / denom2);
            if (static_cast<int>(idx.size()) < max_size)
                rec_multiset<A>(max_size, weight_of, fn, idx, running2, denom2);
            idx.pop_back();
        }
    }

    const DiscretePolymerSpace& space_;
    const InteractionKernel& kernel_;
    int n_max_;
    std::size_t p_;
    std::vector<S> zeta_;
    std::vector<S> w_;
    std::vector<double> abs_w_;
    std::unordered_map<std::string, S> phi_memo_;
};

// ---------------------------------------------------------------------------
// log Z series: t_n = sum over n-tuples of prod mu * phi (no extra 1/n!; phi
// carries it). Exact nested sums, grouped by multiset with multinomial counts.
// ---------------------------------------------------------------------------
template <class S>
SeriesReport log_partition_series(DiscreteEngine<S>& eng, int max_order,
                                  const WeightFunctions* certificate = nullptr) {
    if (max_order < 1 || max_order > eng.n_max())
        throw CapacityError("log_partition_series: max_order must be in [1, n_max]");
    if (!eng.kernel().stability_certified)
        throw std::invalid_argument("log_partition_series: kernel is not stability certified");
    std::vector<S> terms(max_order + 1, S(0));
    eng.template for_each_multiset<S>(
        max_order, [&](int j) { return eng.weight(j); },
        [&](std::span<const int> idx, const S& prod, double ordered_count) {
            terms[idx.size()] += prod * S(ordered_count) * eng.phi(idx);
        });
    SeriesReport rep;
    rep.truncation_order = max_order;
    Cplx partial(0.0);
    for (int n = 1; n <= max_order; ++n) {
        const Cplx t = ScalarOps<S>::to_cplx(terms[n]);
        partial += t;
        rep.orders.push_back({n, t, partial, 0.0});
    }
    if (certificate && !certificate->a.empty() && max_order >= 2) {
        certificate->validate(eng.space().size());
        double mass = 0.0;
        for (int i = 0; i < eng.n_polymers(); ++i)
            mass += eng.abs_weight(i) * std::exp(certificate->a_at(i));
        const double tN = std::abs(rep.orders[max_order - 1].term);
        const double tN1 = std::abs(rep.orders[max_order - 2].term);
        if (tN1 > 0.0) rep.tail_bound = mass * (tN / tN1);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Direct truncated partition sum (engine-side evaluator of the defining
// series). DFS over multisets with running prod (1 + zeta) * prod mu / mult!;
// tuples acquiring a zero pair factor are pruned (their extensions all vanish),
// which makes hard-core systems terminate at n = |A|.
// ---------------------------------------------------------------------------
template <class S>
S partition_direct(DiscreteEngine<S>& eng, int n_cap,
                   std::uint64_t tuple_budget = kDefaultTupleBudget) {
    if (n_cap < 0) throw std::invalid_argument("partition_direct: negative order cap");
    const int p = eng.n_polymers();
    std::vector<S> orders(n_cap + 1, S(0));
    orders[0] = S(1);
    std::uint64_t visited = 0;
    std::vector<int> idx;
    idx.reserve(n_cap);
    // running = prod_{i<j} (1+zeta) * prod mu / prod mult!
    auto rec = [&](auto&& self, int start, S running) -> void {
        if (static_cast<int>(idx.size()) == n_cap) return;
        for (int j = start; j < p; ++j) {
            if (++visited > tuple_budget)
                throw CapacityError("partition_direct: tuple budget exceeded");
            S value = running * eng.weight(j);
            for (int i : idx) value = value * (S(1) + eng.zeta(i, j));
            int mult = 1;
            for (auto it = idx.rbegin(); it != idx.rend() && *it == j; ++it) ++mult;
            value = value / S(mult);
            if (value == S(0)) continue;
            idx.push_back(j);
            orders[idx.size()] += value;
            self(self, j, value);
            idx.pop_back();
        }
    };
    rec(rec, 0, S(1));
    S total(0);
    for (int n = 0; n <= n_cap; ++n) total += orders[n];
    return total;
}

// ---------------------------------------------------------------------------
// zhat: sum_{n>=m} n!/(n-m)! int dmu(A_{m+1})..dmu(A_n) phi(A_1..A_n); the
// n = m term is m! phi(fixed) with no integration.
// ---------------------------------------------------------------------------
template <class S>
S zhat(DiscreteEngine<S>& eng, std::span<const int> fixed, int max_order) {
    const int m = static_cast<int>(fixed.size());
    if (m < 1) throw std::invalid_argument("zhat: need at least one fixed polymer");
    if (max_order < m || max_order > eng.n_max())
        throw CapacityError("zhat: max_order must be in [m, n_max]");
    if (!eng.kernel().stability_certified)
        throw std::invalid_argument("zhat: kernel is not stability certified");
    auto rising = [&](int n) {  // n!/(n-m)!
        double v = 1.0;
        for (int t = n - m + 1; t <= n; ++t) v *= t;
        return v;
    };
    std::vector<int> tuple(fixed.begin(), fixed.end());
    S total = S(kFactorial[m]) * eng.phi(tuple);
    eng.template for_each_multiset<S>(
        max_order - m, [&](int j) { return eng.weight(j); },
        [&](std::span<const int> idx, const S& prod, double ordered_count) {
            const int n = m + static_cast<int>(idx.size());
            tuple.resize(fixed.size());
            tuple.insert(tuple.end(), idx.begin(), idx.end());
            total += S(rising(n) * ordered_count) * prod * eng.phi(tuple);
        });
    return total;
}

// ---------------------------------------------------------------------------
// Direct constrained partition sum Z(A_1,...,A_m), truncated at n_cap total
// polymers; the n = m term is prod_{i<j<=m} (1+zeta(A_i,A_j)).
// ---------------------------------------------------------------------------
template <class S>
S constrained_partition_direct(DiscreteEngine<S>& eng, std::span<const int> fixed, int n_cap,
                               std::uint64_t tuple_budget = kDefaultTupleBudget) {
    const int m = static_cast<int>(fixed.size());
    if (m == 0) return partition_direct(eng, n_cap, tuple_budget);
    if (n_cap < m) throw std::invalid_argument("constrained_partition_direct: n_cap < m");
    S base(1);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) base = base * (S(1) + eng.zeta(fixed[i], fixed[j]));
    std::vector<S> orders(n_cap + 1, S(0));
    orders[m] = base;
    if (base != S(0)) {
        const int p = eng.n_polymers();
        std::uint64_t visited = 0;
        std::vector<int> idx;
        auto rec = [&](auto&& self, int start, S running) -> void {
            if (static_cast<int>(idx.size()) == n_cap - m) return;
            for (int j = start; j < p; ++j) {
                if (++visited > tuple_budget)
                    throw CapacityError("constrained_partition_direct: tuple budget exceeded");
                S value = running * eng.weight(j);
                for (int i : fixed) value = value * (S(1) + eng.zeta(i, j));
                for (int i : idx) value = value * (S(1) + eng.zeta(i, j));
                int mult = 1;
                for (auto it = idx.rbegin(); it != idx.rend() && *it == j; ++it) ++mult;
                value = value / S(mult);
                if (value == S(0)) continue;
                idx.push_back(j);
                orders[m + idx.size()] += value;
                self(self, j, value);
                idx.pop_back();
            }
        };
        rec(rec, 0, base);
    }
    S total(0);
    for (int n = m; n <= n_cap; ++n) total += orders[n];
    return total;
}

// ---------------------------------------------------------------------------
// Theorem-2 style ratio: sum over set partitions of the fixed positions of
// products of zhat over blocks. The ratio is assembled from the reported
// block values, by construction.
// ---------------------------------------------------------------------------
template <class S>
CorrelationReport correlation_ratio(DiscreteEngine<S>& eng, std::span<const int> fixed,
                                    int max_order) {
    const int m = static_cast<int>(fixed.size());
    if (m < 1 || m > kMaxPartitionSize)
        throw std::invalid_argument("correlation_ratio: need 1 <= m <= 12 fixed polymers");
    if (max_order < m) throw CapacityError("correlation_ratio: max_order below tuple size");
    CorrelationReport rep;
    rep.truncation_order = max_order;
    for (int i : fixed) rep.fixed_ids.push_back(eng.space().ids[i]);
    std::map<std::vector<int>, S> block_memo;
    auto block_zhat = [&](const std::vector<int>& positions) -> S {
        auto it = block_memo.find(positions);
        if (it != block_memo.end()) return it->second;
        std::vector<int> sub;
        sub.reserve(positions.size());
        for (int pos : positions) sub.push_back(fixed[pos]);
        const S v = zhat(eng, sub, max_order);
        block_memo.emplace(positions, v);
        return v;
    };
    S ratio(0);
    enumerate_set_partitions(m, [&](const SetPartition& part) {
        S prod(1);
        for (const auto& block : part.blocks) prod = prod * block_zhat(block);
        ratio += prod;
        return true;
    });
    for (const auto& [block, v] : block_memo)
        rep.zhat_values.emplace(block, ScalarOps<S>::to_cplx(v));
    rep.ratio = ScalarOps<S>::to_cplx(ratio);
    return rep;
}

// ---------------------------------------------------------------------------
// Continuous-space series by Monte Carlo: order-n term sampled with one joint
// draw of the n-tuple per sample (product proposal).
// ---------------------------------------------------------------------------
struct McSeriesOptions {
    std::uint64_t n_samples = 65536;
    std::uint64_t seed = 0;
    int threads = -1;
};

SeriesReport log_partition_series_mc(const ContinuousPolymerSpace& space,
                                     const ContinuousKernel& kernel, int max_order,
                                     const McSeriesOptions& opt);

}  // namespace clusterkit
