#include "clusterkit/oracle.hpp"

#include <numeric>
#include <stdexcept>

namespace clusterkit::oracle {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
    bool one_component(int n) {
        const int root = find(0);
        for (int i = 1; i < n; ++i)
            if (find(i) != root) return false;
        return true;
    }
};

template <class T>
bool value_is_zero(const T& v) {
    return v == T(0);
}
bool value_is_zero(const RationalComplex& v) { return v.is_zero(); }

}  // namespace

template <class T>
T ursell_bruteforce(const SquareMatrix<T>& zeta) {
    const int n = zeta.n;
    if (n < 1) throw std::invalid_argument("ursell_bruteforce: empty tuple");
    if (n > 6) throw CapacityError("ursell_bruteforce: n > 6");
    if (n == 1) return T(1);
    const int pairs = n * (n - 1) / 2;
    // fixed pair order (i, j), i < j
    std::vector<std::pair<int, int>> edge(pairs);
    int e = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edge[e++] = {i, j};
    T sum(0);
    for (std::int64_t mask = (1ll << pairs) - 1; mask >= 0; --mask) {
        UnionFind uf(n);
        for (int k = 0; k < pairs; ++k)
            if (mask >> k & 1) uf.unite(edge[k].first, edge[k].second);
        if (!uf.one_component(n)) continue;
        T prod(1);
        for (int k = 0; k < pairs; ++k)
            if (mask >> k & 1) prod *= zeta.at(edge[k].first, edge[k].second);
        sum += prod;
    }
    T fact(1);
    for (int k = 2; k <= n; ++k) fact *= T(k);
    return sum / fact;
}

namespace {

// Sum over ordered suffix tuples (A_1, ..., A_q), q = 1..q_cap, of
// prod_i weight(A_i) * prod over all pairs (prefix x suffix and within the
// suffix) of (1 + zeta), each level divided by q!. Ordered recursion with an
// exact-zero subtree skip: once a pair factor vanishes, every extension keeps
// it, so nothing is lost.
template <class T>
void ordered_suffix_sum(const OracleSystem<T>& sys, const std::vector<int>& prefix, int q_cap,
                        std::uint64_t tuple_budget, std::vector<T>& per_level) {
    const int p = sys.size();
    per_level.assign(static_cast<std::size_t>(q_cap) + 1, T(0));
    if (p == 0 || q_cap == 0) return;
    std::vector<T> inv_fact(static_cast<std::size_t>(q_cap) + 1, T(1));
    {
        T fact(1);
        for (int q = 1; q <= q_cap; ++q) {
            fact *= T(q);
            inv_fact[q] = T(1) / fact;
        }
    }
    std::vector<int> tuple;
    std::uint64_t visited = 0;
    auto rec = [&](auto&& self, const T& running) -> void {
        if (static_cast<int>(tuple.size()) == q_cap) return;
        for (int j = 0; j < p; ++j) {
            if (++visited > tuple_budget)
                throw CapacityError("oracle: tuple budget exceeded");
            T value = running * sys.weights[j];
            for (int i : prefix)
                if (!value_is_zero(value)) value *= T(1) + sys.zeta.at(i, j);
            for (int i : tuple)
                if (!value_is_zero(value)) value *= T(1) + sys.zeta.at(i, j);
            if (value_is_zero(value)) continue;
            tuple.push_back(j);
            per_level[tuple.size()] += value * inv_fact[tuple.size()];
            self(self, value);
            tuple.pop_back();
        }
    };
    rec(rec, T(1));
}

}  // namespace

template <class T>
T partition_bruteforce(const OracleSystem<T>& sys, int n_cap, std::uint64_t tuple_budget) {
    if (n_cap < 0) throw std::invalid_argument("partition_bruteforce: negative order cap");
    std::vector<T> per_level;
    ordered_suffix_sum(sys, {}, n_cap, tuple_budget, per_level);
    T total(1);  // n = 0 term
    for (int n = 1; n <= n_cap; ++n) total += per_level[n];
    return total;
}

template <class T>
T theorem2_bruteforce(const OracleSystem<T>& sys, std::span<const int> fixed, const T& z) {
    const int p = sys.size();
    for (int i = 0; i < p; ++i)
        for (int j = i; j < p; ++j)
            if (!value_is_zero(sys.zeta.at(i, j)) && !(sys.zeta.at(i, j) == T(-1)))
                throw std::invalid_argument("theorem2_bruteforce: system must be hard-core");
    const int m = static_cast<int>(fixed.size());
    if (m < 1) throw std::invalid_argument("theorem2_bruteforce: empty fixed tuple");
    T base(1);  // the q = 0 term: pair factors within the fixed tuple
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) base *= T(1) + sys.zeta.at(fixed[i], fixed[j]);
    T numerator = base;
    if (!value_is_zero(base)) {
        std::vector<int> prefix(fixed.begin(), fixed.end());
        std::vector<T> per_level;
        ordered_suffix_sum(sys, prefix, p, 20'000'000, per_level);
        for (int q = 1; q <= p; ++q) numerator += base * per_level[q];
    }
    return numerator / z;
}

template <class T>
T theorem2_bruteforce(const OracleSystem<T>& sys, std::span<const int> fixed) {
    return theorem2_bruteforce(sys, fixed, partition_bruteforce(sys, sys.size() + 1));
}

template Rational ursell_bruteforce<Rational>(const SquareMatrix<Rational>&);
template RationalComplex ursell_bruteforce<RationalComplex>(const SquareMatrix<RationalComplex>&);
template Rational partition_bruteforce<Rational>(const OracleSystem<Rational>&, int,
                                                 std::uint64_t);
template RationalComplex partition_bruteforce<RationalComplex>(
    const OracleSystem<RationalComplex>&, int, std::uint64_t);
template Rational theorem2_bruteforce<Rational>(const OracleSystem<Rational>&,
                                                std::span<const int>);
template RationalComplex theorem2_bruteforce<RationalComplex>(const OracleSystem<RationalComplex>&,
                                                              std::span<const int>);
template Rational theorem2_bruteforce<Rational>(const OracleSystem<Rational>&,
                                                std::span<const int>, const Rational&);
template RationalComplex theorem2_bruteforce<RationalComplex>(const OracleSystem<RationalComplex>&,
                                                              std::span<const int>,
                                                              const RationalComplex&);

}  // namespace clusterkit::oracle
