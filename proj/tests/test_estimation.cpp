#include <doctest.h>

#include "qsd/errors.hpp"
#include "qsd/estimation.hpp"
#include "qsd/rng.hpp"
#include "qsd/strategy.hpp"

#include <cmath>
#include <sstream>

using namespace qsd;

namespace {
TransactionSample parse(const std::string& text) {
    std::istringstream in(text);
    return parse_transactions(in, "inline");
}

TransactionSample from_values(const std::vector<double>& v) {
    TransactionSample s;
    for (double x : v) s.records.push_back({x, Side::buy});
    return s;
}
}  // namespace

TEST_CASE("transaction parsing") {
    const auto s = parse("log_price,side\n0.1,buy\n-0.2,sell");
    REQUIRE(s.records.size() == 2);
    CHECK(s.records[0].log_price == 0.1);
    CHECK(s.records[0].side == Side::buy);
    CHECK(s.records[1].side == Side::sell);
    CHECK(s.source == "inline");
    CHECK(s.filter(Side::sell).records.size() == 1);

    CHECK_THROWS_AS(parse("log_price,side\n"), EmptyInput);
    CHECK_THROWS_AS(parse(""), EmptyInput);
    CHECK_THROWS_AS(parse("price,kind\n1,buy\n"), InvalidArgument);

    try {
        parse("log_price,side\nabc,buy");
        FAIL("expected MalformedRow");
    } catch (const MalformedRow& e) {
        REQUIRE(e.issues().size() == 1);
        CHECK(e.issues()[0].row == 1);
    }
    try {
        parse("log_price,side\n0.1,buy\n\nnan,sell\n0.3,hold\n0.4\n0.5,buy\n");
        FAIL("expected MalformedRow");
    } catch (const MalformedRow& e) {
        // every bad row is reported, not just the first
        REQUIRE(e.issues().size() == 3);
        CHECK(e.issues()[0].row == 2);
        CHECK(e.issues()[1].row == 3);
        CHECK(e.issues()[2].row == 4);
    }
}

TEST_CASE("moment estimation") {
    const auto a = estimate_moments(from_values({0, 2}));
    CHECK(a.mean == 1.0);
    CHECK(a.risk == 2.0);
    CHECK(a.n == 2);
    CHECK(a.se_mean == doctest::Approx(1.0));

    const auto b = estimate_moments(from_values({1, 1, 1, 1}));
    CHECK(b.mean == 1.0);
    CHECK(b.risk == 0.0);

    CHECK_THROWS_AS(estimate_moments(from_values({1.0})), TooFewRecords);

    Rng rng(42);
    std::vector<double> draws(100000);
    for (double& x : draws) x = 0.3 + std::sqrt(0.7) * rng.normal();
    const auto c = estimate_moments(from_values(draws));
    CHECK(std::abs(c.mean - 0.3) <= 3 * c.se_mean);
    CHECK(c.risk == doctest::Approx(0.7).epsilon(0.05));
}

TEST_CASE("fitting a minimal strategy") {
    CHECK(fit_minimal_strategy(0, 0.5).mu() == doctest::Approx(1.0));
    const auto s2 = fit_minimal_strategy(1.2, 2.5, 2);
    CHECK(s2.mu() == doctest::Approx(1.0));
    CHECK(s2.m() == 1.2);
    CHECK(s2.pure_index() == 2u);
    CHECK(fit_minimal_strategy(0, 0.5, 1).mu() == doctest::Approx(3.0));

    for (unsigned n : {0u, 1u, 4u}) {
        const auto mom = strategy_moments(fit_minimal_strategy(-0.7, 0.35, n));
        CHECK(mom.mean == doctest::Approx(-0.7).epsilon(1e-8));
        CHECK(mom.risk == doctest::Approx(0.35).epsilon(1e-8));
    }
    CHECK_THROWS_AS(fit_minimal_strategy(0, 0.0), DegenerateRisk);
    CHECK_THROWS_AS(fit_minimal_strategy(0, -1.0), DegenerateRisk);
}

TEST_CASE("inverse-cdf sampling") {
    const auto s0 = Strategy::pure(0, 1, 0);
    const auto a = sample_strategy(s0, 100000, 7);
    const auto e = estimate_moments(a);
    CHECK(std::abs(e.mean) <= 0.006);
    CHECK(e.risk == doctest::Approx(0.5).epsilon(0.03));
    CHECK(a.source.find("mt19937_64") != std::string::npos);
    CHECK(a.source.find("seed=7") != std::string::npos);

    const auto b = sample_strategy(s0, 100000, 7);
    REQUIRE(a.records.size() == b.records.size());
    bool same = true;
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        same = same && a.records[i].log_price == b.records[i].log_price && a.records[i].side == b.records[i].side;
    }
    CHECK(same);
    CHECK(sample_strategy(s0, 10, 8).records[0].log_price != a.records[0].log_price);

    // ψ_1² vanishes at m: the central histogram bin is a dip
    const auto c = sample_strategy(Strategy::pure(1, 1, 0), 100000, 3);
    int center = 0, shoulder = 0;
    for (const auto& r : c.records) {
        if (std::abs(r.log_price) < 0.1) ++center;
        if (std::abs(r.log_price - 1.0) < 0.1) ++shoulder;
    }
    CHECK(center * 10 < shoulder);

    const InverseCdfSampler q(s0);
    CHECK(std::abs(q.quantile(0.5)) < 1e-9);
    CHECK(q.quantile(0.75) == doctest::Approx(0.476936).epsilon(1e-4));

    CHECK_THROWS_AS(sample_strategy(s0, 0, 1), InvalidArgument);
}

TEST_CASE("round trip through sampling") {
    const auto truth = fit_minimal_strategy(0.4, 0.8);
    const auto fitted = [&] {
        const auto e = estimate_moments(sample_strategy(truth, 1000000, 11));
        return fit_minimal_strategy(e.mean, e.risk);
    }();
    CHECK(fitted.mu() == doctest::Approx(truth.mu()).epsilon(0.02));
    CHECK(std::abs(fitted.m() - truth.m()) <= 0.01);
}

TEST_CASE("cramer-rao monte carlo") {
    const auto g = cramer_rao_monte_carlo(Strategy::pure(0, 1, 0), 100, 10000, 0);
    CHECK(g.bound == doctest::Approx(0.005));
    CHECK(g.ratio == doctest::Approx(1.0).epsilon(0.05));
    CHECK(g.respects_bound());
    CHECK(g.fisher == doctest::Approx(2.0));

    const auto e1 = cramer_rao_monte_carlo(Strategy::pure(1, 1, 0), 100, 10000, 0);
    CHECK(e1.bound == doctest::Approx(1.0 / 600));
    CHECK(e1.empirical == doctest::Approx(0.015).epsilon(0.05));
    CHECK(e1.ratio >= 1.0);
    CHECK(e1.respects_bound());

    CHECK_THROWS_AS(cramer_rao_monte_carlo(Strategy::pure(0, 1, 0), 100, 50, 0), InvalidArgument);

    const auto again = cramer_rao_monte_carlo(Strategy::pure(0, 1, 0), 100, 10000, 0);
    CHECK(cramer_rao_to_json(again).dump() == cramer_rao_to_json(g).dump());

    const auto j = cramer_rao_to_json(g);
    CHECK(j.size() == 5);
    for (const char* key : {"bound", "empirical", "ratio", "trials", "seed"}) CHECK(j.contains(key));
}
