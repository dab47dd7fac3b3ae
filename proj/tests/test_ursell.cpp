#include <doctest.h>

#include <algorithm>
#include <vector>

#include "clusterkit/graphs.hpp"
#include "clusterkit/oracle.hpp"
#include "clusterkit/rational.hpp"
#include "clusterkit/rng.hpp"
#include "clusterkit/ursell.hpp"

using namespace clusterkit;

namespace {

EdgeWeightMatrix<double> constant_matrix(int n, double v) {
    EdgeWeightMatrix<double> m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) m.set(i, j, v);
    return m;
}

// Test-side brute force for the minimum connectivity cost: minimize the edge
// sum over every connected graph.
double min_cost_bruteforce(const EdgeWeightMatrix<double>& c) {
    double best = std::numeric_limits<double>::infinity();
    enumerate_connected_graphs(c.size(), [&](const LabeledGraph& g) {
        double total = 0.0;
        for (int i = 0; i < c.size(); ++i)
            for (int j = i + 1; j < c.size(); ++j)
                if (g.has_edge(i, j)) total += c.at(i, j);
        best = std::min(best, total);
        return true;
    });
    return best;
}

}  // namespace

TEST_CASE("ursell: spec examples") {
    CHECK(ursell(constant_matrix(1, 0.0)) == 1.0);
    CHECK(ursell(constant_matrix(2, -1.0)) == -0.5);
    CHECK(ursell(constant_matrix(3, -1.0)) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(ursell(constant_matrix(4, -1.0)) == doctest::Approx(-0.25).epsilon(1e-14));
}

TEST_CASE("ursell: all-(-1) closed form up to n_max") {
    for (int n = 2; n <= 9; ++n) {
        const double expected = (n % 2 ? 1.0 : -1.0) / n;
        CHECK(ursell(constant_matrix(n, -1.0)) == doctest::Approx(expected).epsilon(1e-12));
    }
    // exact in rational mode
    for (int n = 2; n <= 6; ++n) {
        EdgeWeightMatrix<Rational> m(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) m.set(i, j, Rational(-1));
        CHECK(ursell(m) == Rational(n % 2 ? 1 : -1, n));
    }
    CHECK_THROWS_AS(ursell(constant_matrix(10, -1.0)), CapacityError);
}

TEST_CASE("ursell agrees exactly with the graph-filter oracle on random rationals") {
    RngStream rng(7, 0);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(4));  // 2..5
        EdgeWeightMatrix<Rational> engine_m(n);
        oracle::SquareMatrix<Rational> oracle_m(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                // numerators in [-8, 8], denominator 16; occasional exact zero
                const long num = static_cast<long>(rng.below(17)) - 8;
                const Rational v = rng.below(5) == 0 ? Rational(0) : Rational(num, 16);
                engine_m.set(i, j, v);
                oracle_m.set(i, j, v);
            }
        CHECK(ursell(engine_m) == oracle::ursell_bruteforce(oracle_m));
    }
}

TEST_CASE("ursell is invariant under vertex permutations (exact)") {
    RngStream rng(11, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + static_cast<int>(rng.below(3));  // 3..5
        EdgeWeightMatrix<Rational> m(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                m.set(i, j, Rational(static_cast<long>(rng.below(9)) - 4, 8));
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
        EdgeWeightMatrix<Rational> pm(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) pm.set(i, j, m.at(perm[i], perm[j]));
        CHECK(ursell(m) == ursell(pm));
    }
}

TEST_CASE("is_cluster and the exact-zero property") {
    EdgeWeightMatrix<double> one(1);
    CHECK(is_cluster(one));

    EdgeWeightMatrix<double> isolated(3);
    isolated.set(0, 1, -1.0);
    CHECK_FALSE(is_cluster(isolated));
    CHECK(ursell(isolated) == 0.0);  // exactly

    EdgeWeightMatrix<double> path(3);
    path.set(0, 1, -1.0);
    path.set(1, 2, -1.0);
    CHECK(is_cluster(path));
    CHECK(ursell(path) == doctest::Approx(1.0 / 6.0));  // single connected graph: the path

    // non-clusters with awkward float weights still give exactly zero
    EdgeWeightMatrix<double> offgrid(3);
    offgrid.set(0, 1, -0.3);
    CHECK(ursell(offgrid) == 0.0);
}

TEST_CASE("min_connectivity_cost: examples and brute force") {
    EdgeWeightMatrix<double> single(1);
    CHECK(min_connectivity_cost(single) == 0.0);

    EdgeWeightMatrix<double> pair(2);
    pair.set(0, 1, 0.7);
    CHECK(min_connectivity_cost(pair) == doctest::Approx(0.7));

    CHECK(min_connectivity_cost(constant_matrix(3, 1.0)) == doctest::Approx(2.0));

    EdgeWeightMatrix<double> tri(3);
    tri.set(0, 1, 1.0);
    tri.set(0, 2, 1.0);
    tri.set(1, 2, 5.0);
    CHECK(min_connectivity_cost(tri) == doctest::Approx(2.0));

    EdgeWeightMatrix<double> neg(2);
    neg.set(0, 1, -0.1);
    CHECK_THROWS_AS(min_connectivity_cost(neg), std::invalid_argument);

    RngStream rng(13, 0);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(5));  // 2..6
        EdgeWeightMatrix<double> m(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) m.set(i, j, rng.uniform(0.0, 2.0));
        CHECK(min_connectivity_cost(m) == doctest::Approx(min_cost_bruteforce(m)).epsilon(1e-12));
    }
}
