#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "clusterkit/errors.hpp"
#include "clusterkit/rational.hpp"

// Brute-force reference implementations for tests and derived expected
// values. No combinatorial code is shared with the engine: connectivity is
// union-find (the engine walks), graphs iterate mask-descending (the engine
// recurses over anchored components), and partition sums run over ordered
// tuples (the engine groups multisets).
namespace clusterkit::oracle {

template <class T>
struct SquareMatrix {
    int n = 0;
    std::vector<T> v;

    explicit SquareMatrix(int size) : n(size), v(static_cast<std::size_t>(size) * size, T(0)) {}
    const T& at(int i, int j) const { return v[static_cast<std::size_t>(i) * n + j]; }
    void set(int i, int j, const T& value) {
        v[static_cast<std::size_t>(i) * n + j] = value;
        v[static_cast<std::size_t>(j) * n + i] = value;
    }
};

template <class T>
struct OracleSystem {
    std::vector<T> weights;
    SquareMatrix<T> zeta;  // diagonal = self-interaction

    explicit OracleSystem(int p) : zeta(p) { weights.resize(p, T(0)); }
    int size() const { return static_cast<int>(weights.size()); }
};

// (1/n!) sum over connected graphs of edge products, by filtering all
// 2^(n(n-1)/2) edge masks. n <= 6.
template <class T>
T ursell_bruteforce(const SquareMatrix<T>& zeta);

// Truncated partition sum over ordered tuples (exact for hard-core systems
// once n_cap reaches the polymer count).
template <class T>
T partition_bruteforce(const OracleSystem<T>& sys, int n_cap,
                       std::uint64_t tuple_budget = 20'000'000);

// Exact Z(A_1,...,A_m)/Z for hard-core systems (both sums terminate). The
// second form reuses a previously computed exact Z.
template <class T>
T theorem2_bruteforce(const OracleSystem<T>& sys, std::span<const int> fixed);
template <class T>
T theorem2_bruteforce(const OracleSystem<T>& sys, std::span<const int> fixed, const T& z);

extern template Rational ursell_bruteforce<Rational>(const SquareMatrix<Rational>&);
extern template RationalComplex ursell_bruteforce<RationalComplex>(
    const SquareMatrix<RationalComplex>&);
extern template Rational partition_bruteforce<Rational>(const OracleSystem<Rational>&, int,
                                                        std::uint64_t);
extern template RationalComplex partition_bruteforce<RationalComplex>(
    const OracleSystem<RationalComplex>&, int, std::uint64_t);
extern template Rational theorem2_bruteforce<Rational>(const OracleSystem<Rational>&,
                                                       std::span<const int>);
extern template RationalComplex theorem2_bruteforce<RationalComplex>(
    const OracleSystem<RationalComplex>&, std::span<const int>);
extern template Rational theorem2_bruteforce<Rational>(const OracleSystem<Rational>&,
                                                       std::span<const int>, const Rational&);
extern template RationalComplex theorem2_bruteforce<RationalComplex>(
    const OracleSystem<RationalComplex>&, std::span<const int>, const RationalComplex&);

}  // namespace clusterkit::oracle
