#include <doctest.h>

#include <cmath>

#include "clusterkit/expansion.hpp"
#include "clusterkit/oracle.hpp"
#include "test_support.hpp"

using namespace clusterkit;
using testsupport::make_random_hard_core;

namespace {

DiscretePolymerSpace single_space(double w) { return {{"A"}, {Cplx(w)}, "single"}; }

InteractionKernel self_hard_core() { return hard_core_kernel({{true}}); }

}  // namespace

TEST_CASE("log_partition_series: single hard-core polymer reproduces ln(1+w)") {
    DiscretePolymerSpace sp = single_space(0.5);
    InteractionKernel k = self_hard_core();
    DiscreteEngine<double> eng(sp, k);
    const SeriesReport rep = log_partition_series(eng, 8);
    REQUIRE(rep.orders.size() == 8);
    for (int n = 1; n <= 8; ++n) {
        const double expected = (n % 2 ? 1.0 : -1.0) * std::pow(0.5, n) / n;
        CHECK(rep.orders[n - 1].term.real() == doctest::Approx(expected).epsilon(1e-14));
        CHECK(rep.orders[n - 1].stat_error == 0.0);
    }
    CHECK(rep.total().real() == doctest::Approx(std::log(1.5)).epsilon(1e-3));
    // the truncation error shrinks monotonically toward Z = 1.5
    double prev = 1e9;
    for (const auto& t : rep.orders) {
        const double err = std::abs(std::exp(t.partial_sum.real()) - 1.5);
        CHECK(err < prev);
        prev = err;
    }
    // partial sums are prefix sums of the terms
    Cplx acc(0.0);
    for (const auto& t : rep.orders) {
        acc += t.term;
        CHECK(t.partial_sum == acc);
    }
}

TEST_CASE("series factorizes over non-interacting polymers; empty space is trivial") {
    DiscretePolymerSpace two{{"a", "b"}, {Cplx(0.3), Cplx(0.2)}, ""};
    InteractionKernel k = hard_core_kernel({{true, false}, {false, true}});
    DiscreteEngine<double> eng(two, k);
    const SeriesReport joint = log_partition_series(eng, 8);

    DiscretePolymerSpace a = single_space(0.3), b = single_space(0.2);
    InteractionKernel ka = self_hard_core(), kb = self_hard_core();
    DiscreteEngine<double> ea(a, ka), eb(b, kb);
    const SeriesReport sa = log_partition_series(ea, 8), sb = log_partition_series(eb, 8);
    for (int n = 0; n < 8; ++n)
        CHECK(joint.orders[n].term.real() ==
              doctest::Approx(sa.orders[n].term.real() + sb.orders[n].term.real())
                  .epsilon(1e-14));

    CHECK(partition_direct(eng, 6) == doctest::Approx(1.56).epsilon(1e-14));

    DiscretePolymerSpace empty;
    InteractionKernel kz = zero_kernel();
    DiscreteEngine<double> ee(empty, kz);
    const SeriesReport se = log_partition_series(ee, 5);
    for (const auto& t : se.orders) CHECK(t.term == Cplx(0.0));
    CHECK(partition_direct(ee, 5) == 1.0);
}

TEST_CASE("partition_direct: single polymer and budget") {
    DiscretePolymerSpace sp = single_space(0.5);
    InteractionKernel k = self_hard_core();
    DiscreteEngine<double> eng(sp, k);
    CHECK(partition_direct(eng, 8) == doctest::Approx(1.5).epsilon(1e-15));

    auto sys = make_random_hard_core(99, 0);
    DiscreteEngine<double> big(sys.space, sys.kernel);
    CHECK_THROWS_AS(partition_direct(big, 8, /*tuple_budget=*/1), CapacityError);
}

TEST_CASE("zhat: geometric single-polymer value and degenerate tuples") {
    DiscretePolymerSpace sp = single_space(0.5);
    InteractionKernel k = self_hard_core();
    DiscreteEngine<double> eng(sp, k);
    const std::vector<int> fixed{0};
    const double z = zhat(eng, fixed, 8);
    CHECK(z == doctest::Approx(1.0 / 1.5).epsilon(1e-2));
    // truncation error is the geometric tail
    CHECK(std::abs(z - 2.0 / 3.0) < std::pow(0.5, 8));

    // with zeta == 0 only n = m survives
    InteractionKernel kz = zero_kernel();
    DiscreteEngine<double> ez(sp, kz);
    CHECK(zhat(ez, fixed, 8) == 1.0);

    // a non-cluster pair gives exactly zero
    DiscretePolymerSpace two{{"a", "b"}, {Cplx(0.3), Cplx(0.2)}, ""};
    InteractionKernel kd = hard_core_kernel({{true, false}, {false, true}});
    DiscreteEngine<double> ed(two, kd);
    const std::vector<int> pair{0, 1};
    CHECK(zhat(ed, pair, 8) == 0.0);
}

TEST_CASE("constrained_partition_direct: hand values") {
    DiscretePolymerSpace sp = single_space(0.5);
    InteractionKernel k = self_hard_core();
    DiscreteEngine<double> eng(sp, k);
    const std::vector<int> fixed{0};
    CHECK(constrained_partition_direct(eng, fixed, 6) == 1.0);
    const std::vector<int> twice{0, 0};
    CHECK(constrained_partition_direct(eng, twice, 6) == 0.0);
    const std::vector<int> none;
    CHECK(constrained_partition_direct(eng, none, 6) ==
          doctest::Approx(partition_direct(eng, 6)).epsilon(1e-15));
}

TEST_CASE("correlation_ratio: structure and the single-polymer oracle") {
    DiscretePolymerSpace sp = single_space(0.5);
    InteractionKernel k = self_hard_core();
    DiscreteEngine<double> eng(sp, k);
    const std::vector<int> fixed{0};
    const CorrelationReport rep = correlation_ratio(eng, fixed, 8);
    CHECK(rep.ratio.real() == doctest::Approx(zhat(eng, fixed, 8)).epsilon(1e-15));
    const double direct = constrained_partition_direct(eng, fixed, 8) / partition_direct(eng, 8);
    CHECK(rep.ratio.real() == doctest::Approx(direct).epsilon(1e-2));

    // m = 2: ratio = zhat(A1,A2) + zhat(A1) zhat(A2), reconstructed from blocks
    const std::vector<int> pair{0, 0};
    const CorrelationReport r2 = correlation_ratio(eng, pair, 8);
    REQUIRE(r2.zhat_values.size() == 3);  // {0}, {1}, {0,1}
    const Cplx joint = r2.zhat_values.at({0, 1});
    const Cplx single0 = r2.zhat_values.at({0});
    const Cplx single1 = r2.zhat_values.at({1});
    CHECK(r2.ratio == joint + single0 * single1);
    // the exact ratio vanishes for a repeated hard-core polymer; the
    // truncation dust sits at the geometric-tail scale n w^{n-1} and decays
    // with the order
    CHECK(std::abs(r2.ratio) < 10.0 * std::pow(0.5, 7));
    const CorrelationReport r2short = correlation_ratio(eng, pair, 5);
    CHECK(std::abs(r2.ratio) < std::abs(r2short.ratio));
}

TEST_CASE("random hard-core systems: engine matches the exact oracle") {
    int checked = 0;
    for (std::uint64_t idx = 0; checked < 25; ++idx) {
        auto sys = make_random_hard_core(2024, idx);
        const int p = static_cast<int>(sys.space.size());
        DiscreteEngine<double> eng(sys.space, sys.kernel);

        const Rational z_exact = oracle::partition_bruteforce(sys.exact, p + 1);
        const double z = to_double(z_exact);
        CHECK(partition_direct(eng, p) == doctest::Approx(z).epsilon(1e-13));

        const SeriesReport rep = log_partition_series(eng, 8);
        CHECK(std::abs(std::exp(rep.total().real()) - z) <= 1e-7 * std::abs(z));

        // Theorem 2 for singletons and all distinct pairs
        for (int i = 0; i < p; ++i) {
            const std::vector<int> fixed{i};
            const CorrelationReport cr = correlation_ratio(eng, fixed, 8);
            const double exact = to_double(oracle::theorem2_bruteforce(sys.exact, fixed));
            CHECK(std::abs(cr.ratio.real() - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
        }
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j) {
                const std::vector<int> fixed{i, j};
                const CorrelationReport cr = correlation_ratio(eng, fixed, 8);
                const double exact = to_double(oracle::theorem2_bruteforce(sys.exact, fixed));
                CHECK(std::abs(cr.ratio.real() - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
            }
        ++checked;
    }
}

TEST_CASE("weight-derivative consistency: dZ/dw_A equals the constrained sum") {
    auto sys = make_random_hard_core(77, 3);
    const int p = static_cast<int>(sys.space.size());
    DiscreteEngine<double> eng(sys.space, sys.kernel);
    const std::vector<int> fixed{0};
    const double za = constrained_partition_direct(eng, fixed, p + 1);
    const double h = 1e-6;
    DiscretePolymerSpace plus = sys.space, minus = sys.space;
    plus.weights[0] += h;
    minus.weights[0] -= h;
    DiscreteEngine<double> ep(plus, sys.kernel), em(minus, sys.kernel);
    const double fd =
        (partition_direct(ep, p + 1) - partition_direct(em, p + 1)) / (2.0 * h);
    CHECK(fd == doctest::Approx(za).epsilon(1e-6));
}

TEST_CASE("term symmetry under polymer-list permutation") {
    auto sys = make_random_hard_core(55, 1);
    const int p = static_cast<int>(sys.space.size());
    DiscreteEngine<Cplx> eng(sys.space, sys.kernel);
    const SeriesReport base = log_partition_series(eng, 6);

    // reverse the polymer list
    DiscretePolymerSpace rev;
    rev.label = sys.space.label;
    for (int i = p - 1; i >= 0; --i) {
        rev.ids.push_back(sys.space.ids[i]);
        rev.weights.push_back(sys.space.weights[i]);
    }
    InteractionKernel krev;
    krev.hard_core = sys.kernel.hard_core;
    krev.stability_certified = sys.kernel.stability_certified;
    krev.zeta = [inner = sys.kernel.zeta, p](std::size_t i, std::size_t j) {
        return inner(p - 1 - i, p - 1 - j);
    };
    DiscreteEngine<Cplx> engr(rev, krev);
    const SeriesReport perm = log_partition_series(engr, 6);
    for (int n = 0; n < 6; ++n)
        CHECK(std::abs(base.orders[n].term - perm.orders[n].term) <=
              1e-12 * (1.0 + std::abs(base.orders[n].term)));
}

TEST_CASE("real and complex engines agree on real systems") {
    auto sys = make_random_hard_core(31, 2);
    DiscreteEngine<double> ed(sys.space, sys.kernel);
    DiscreteEngine<Cplx> ec(sys.space, sys.kernel);
    const SeriesReport rd = log_partition_series(ed, 7);
    const SeriesReport rc = log_partition_series(ec, 7);
    for (int n = 0; n < 7; ++n) {
        CHECK(rd.orders[n].term.real() == rc.orders[n].term.real());
        CHECK(rc.orders[n].term.imag() == 0.0);
    }
}

TEST_CASE("complex weights flow through the complex engine") {
    DiscretePolymerSpace sp{{"a"}, {Cplx(0.2, 0.1)}, ""};
    InteractionKernel k = self_hard_core();
    CHECK_THROWS_AS(DiscreteEngine<double>(sp, k), std::invalid_argument);
    DiscreteEngine<Cplx> eng(sp, k);
    const SeriesReport rep = log_partition_series(eng, 8);
    const Cplx z = std::exp(rep.total());
    const Cplx expected = Cplx(1.2, 0.1);  // Z = 1 + w
    CHECK(std::abs(z - expected) < 1e-3);

    // exact complex oracle at low order
    oracle::OracleSystem<RationalComplex> exact(1);
    exact.weights[0] = RationalComplex(Rational(1, 5), Rational(1, 10));
    exact.zeta.set(0, 0, RationalComplex(Rational(-1)));
    const RationalComplex zo = oracle::partition_bruteforce(exact, 3);
    CHECK(to_double(zo.re) == doctest::Approx(expected.real()));
    CHECK(to_double(zo.im) == doctest::Approx(expected.imag()));
}

TEST_CASE("tail bound appears only with a certificate and is labeled heuristic") {
    DiscretePolymerSpace sp = single_space(0.3);
    InteractionKernel k = self_hard_core();
    DiscreteEngine<double> eng(sp, k);
    const SeriesReport plain = log_partition_series(eng, 6);
    CHECK_FALSE(plain.tail_bound.has_value());
    WeightFunctions wf = WeightFunctions::plain(1, 1.0);
    const SeriesReport with = log_partition_series(eng, 6, &wf);
    REQUIRE(with.tail_bound.has_value());
    CHECK(with.tail_is_heuristic);
    CHECK(*with.tail_bound > 0.0);
    // the heuristic bound dominates the actual remainder here
    const double remainder = std::abs(std::log(1.3) - with.total().real());
    CHECK(remainder <= *with.tail_bound);
}

TEST_CASE("series preconditions") {
    DiscretePolymerSpace sp = single_space(0.5);
    InteractionKernel uncertified;
    uncertified.zeta = [](std::size_t, std::size_t) { return Cplx(-1.0); };
    uncertified.stability_certified = false;
    DiscreteEngine<double> eng(sp, uncertified);
    CHECK_THROWS_AS(log_partition_series(eng, 4), std::invalid_argument);

    InteractionKernel k = self_hard_core();
    DiscreteEngine<double> ok(sp, k);
    CHECK_THROWS_AS(log_partition_series(ok, 10), CapacityError);
    CHECK_THROWS_AS(log_partition_series(ok, 0), CapacityError);
}
