#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "clusterkit/errors.hpp"
#include "clusterkit/graphs.hpp"

namespace clusterkit {

// Symmetric pair weights zeta(A_i, A_j) for an n-slot tuple. The diagonal is
// not consumed by ursell/is_cluster; callers may stash self-interactions there.
template <class T>
class EdgeWeightMatrix {
public:
    explicit EdgeWeightMatrix(int n) : n_(n), v_(static_cast<std::size_t>(n) * n, T(0)) {
        if (n < 1) throw std::invalid_argument("EdgeWeightMatrix: n must be positive");
    }

    int size() const { return n_; }

    const T& at(int i, int j) const { return v_[static_cast<std::size_t>(i) * n_ + j]; }

    void set(int i, int j, const T& value) {
        v_[static_cast<std::size_t>(i) * n_ + j] = value;
        v_[static_cast<std::size_t>(j) * n_ + i] = value;
    }

private:
    int n_;
    std::vector<T> v_;
};

template <class T>
bool is_zero(const T& v) {
    return v == T(0);
}
inline bool is_zero(const std::complex<double>& v) { return v.real() == 0.0 && v.imag() == 0.0; }

// True iff the graph with an edge wherever zeta(A_i, A_j) != 0 is connected.
template <class T>
bool is_cluster(const EdgeWeightMatrix<T>& w) {
    const int n = w.size();
    if (n == 1) return true;
    std::uint32_t seen = 1u, stack = 1u;
    while (stack) {
        const int v = __builtin_ctz(stack);
        stack &= stack - 1;
        for (int u = 0; u < n; ++u) {
            if (u != v && !(seen >> u & 1u) && !is_zero(w.at(v, u))) {
                seen |= 1u << u;
                stack |= 1u << u;
            }
        }
    }
    return seen == (1u << n) - 1u;
}

// (1/n!) sum over connected graphs G on n vertices of prod_{(i,j) in G} w(i,j);
// 1 for n = 1. Evaluated with the anchored-component recursion over vertex
// subsets (O(3^n)): every graph on V splits into the connected component of
// the lowest vertex and an arbitrary graph on the rest, and the sum over all
// graphs on V factorizes as prod_{i<j in V} (1 + w(i,j)). Non-clusters return
// an exact zero.
template <class T>
T ursell(const EdgeWeightMatrix<T>& w, int n_max = kDefaultNMax) {
    const int n = w.size();
    if (n > n_max)
        throw CapacityError("ursell: tuple size " + std::to_string(n) + " exceeds n_max " +
                            std::to_string(n_max));
    if (n == 1) return T(1);
    if (!is_cluster(w)) return T(0);

    const std::uint32_t full = (1u << n) - 1u;
    std::vector<T> all(full + 1, T(1)), conn(full + 1, T(0));
    // all[V] = prod over pairs in V of (1 + w); grown one vertex at a time.
    for (std::uint32_t v = 1; v <= full; ++v) {
        const int low = __builtin_ctz(v);
        const std::uint32_t rest = v & (v - 1);
        T acc = all[rest];
        for (std::uint32_t r = rest; r;) {
            const int u = __builtin_ctz(r);
            r &= r - 1;
            acc = acc * (T(1) + w.at(low, u));
        }
        all[v] = acc;
    }
    for (std::uint32_t v = 1; v <= full; ++v) {
        const std::uint32_t anchor = v & -v;
        const std::uint32_t rest = v ^ anchor;
        T proper(0);
        for (std::uint32_t s = rest; s > 0; s = (s - 1) & rest) {
            const std::uint32_t sub = (s ^ rest) | anchor;
            proper = proper + conn[sub] * all[v ^ sub];
        }
        conn[v] = all[v] - proper;
    }
    T fact(1);
    for (int k = 2; k <= n; ++k) fact = fact * T(k);
    return conn[full] / fact;
}

// Minimum over connected graphs of the total edge cost; equals the MST weight
// of the complete graph since costs are nonnegative. 0 for n = 1, the single
// edge cost for n = 2.
double min_connectivity_cost(const EdgeWeightMatrix<double>& c);

}  // namespace clusterkit
