#include <doctest.h>

#include "oracles.hpp"
#include "qsd/errors.hpp"
#include "qsd/strategy.hpp"

#include <cmath>
#include <numbers>

using namespace qsd;

namespace {
const double kPsi0At0 = std::pow(std::numbers::pi, -0.25);
}

TEST_CASE("hermite polynomials") {
    CHECK(hermite_eval(0, 3.7) == 1.0);
    CHECK(hermite_eval(1, 2.0) == 4.0);
    CHECK(hermite_eval(2, 1.0) == 2.0);
    for (unsigned n = 0; n <= 20; ++n) {
        for (double u : {-2.5, -0.3, 0.0, 0.7, 1.9}) {
            const double ref = static_cast<double>(oracle::hermite(n, u));
            CHECK(hermite_eval(n, u) == doctest::Approx(ref).epsilon(1e-10).scale(std::abs(ref) + 1.0));
        }
    }
}

TEST_CASE("pure amplitudes") {
    CHECK(psi_pure_eval(0, 1, 0, 0) == doctest::Approx(kPsi0At0).epsilon(1e-15));
    CHECK(kPsi0At0 == doctest::Approx(0.751126).epsilon(1e-6));
    CHECK(psi_pure_eval(1, 1, 0, 0) == 0.0);
    CHECK(psi_pure_eval(0, 1, 2, 2) == doctest::Approx(kPsi0At0).epsilon(1e-15));

    const double norm = oracle::simpson([](double x) { return std::pow(psi_pure_eval(0, 1, 0, x), 2); }, -12, 12);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));

    for (unsigned n : {0u, 3u, 7u, 12u, 20u, 30u, 31u, 35u}) {
        for (double x : {-3.1, -0.4, 0.2, 1.7, 4.4}) {
            const double ref = oracle::psi(n, 1.7, 0.3, x);
            CHECK(psi_pure_eval(n, 1.7, 0.3, x) == doctest::Approx(ref).epsilon(1e-9).scale(1.0));
        }
    }
}

TEST_CASE("high levels stay normalized and orthogonal through the recurrence") {
    for (unsigned n : {40u, 80u, 150u, 200u}) {
        const double top = std::sqrt(2.0 * n + 1.0) + 10.0;
        const double nn = oracle::simpson([n](double x) { return std::pow(psi_pure_eval(n, 1, 0, x), 2); }, -top, top, 200000);
        const double cross = oracle::simpson(
            [n](double x) { return psi_pure_eval(n, 1, 0, x) * psi_pure_eval(n + 2, 1, 0, x); }, -top, top, 200000);
        CHECK(nn == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(std::abs(cross) < 1e-9);
    }
}

TEST_CASE("strategy construction") {
    CHECK_THROWS_AS(Strategy(0.0, 0.0, {1.0}), InvalidArgument);
    CHECK_THROWS_AS(Strategy(-1.0, 0.0, {1.0}), InvalidArgument);
    CHECK_THROWS_AS(Strategy(1.0, 0.0, {}), InvalidArgument);
    CHECK_THROWS_AS(Strategy(1.0, 0.0, {std::nan("")}), InvalidArgument);
    CHECK_THROWS_AS(Strategy(1.0, 0.0, {0.9, 0.1}), NotNormalized);

    const Strategy near(1.0, 0.0, {1.0 + 2e-7});
    CHECK(near.rescaled());
    CHECK(near.coeffs()[0] == doctest::Approx(1.0).epsilon(1e-15));

    const Strategy mixed(1.0, 0.0, {0.6, 0.8});
    CHECK_FALSE(mixed.rescaled());
    CHECK_FALSE(mixed.pure_index().has_value());
    CHECK(Strategy(1.0, 0.0, {0.0, 0.0, 1.0}).pure_index() == 2u);
    CHECK(Strategy::pure(3, 2.0, 0.0).sigma() == doctest::Approx(std::sqrt(3.5 / 2.0)));
}

TEST_CASE("strategy evaluation") {
    CHECK(strategy_eval(Strategy::pure(0, 1, 0), 0.0) == doctest::Approx(0.751126).epsilon(1e-6));
    const Strategy half(1, 0, {1 / std::sqrt(2.0), 1 / std::sqrt(2.0)});
    CHECK(strategy_eval(half, 0.0) == doctest::Approx(kPsi0At0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(strategy_eval(half, 0.0) == doctest::Approx(0.531126).epsilon(1e-6));
    for (double mu : {0.5, 1.0, 4.0}) {
        const auto s = Strategy::pure(0, mu, 1.5);
        const double far = 12.0 / std::sqrt(mu) + 1e-9;
        CHECK(std::abs(strategy_eval(s, 1.5 + far)) < 1e-12);
        CHECK(std::abs(strategy_eval(s, 1.5 - far)) < 1e-12);
    }
}

TEST_CASE("strategy densities") {
    const auto pdf0 = strategy_pdf(Strategy::pure(0, 1, 0));
    double peak = 0.0;
    for (double v : pdf0.values()) peak = std::max(peak, v);
    CHECK(peak == doctest::Approx(1 / std::sqrt(std::numbers::pi)).epsilon(1e-4));
    CHECK(trapezoid(pdf0) == doctest::Approx(1.0).epsilon(1e-6));

    const auto s1 = Strategy::pure(1, 1, 0);
    const auto pdf1 = strategy_pdf(s1, default_grid(s1, 1025));  // odd count puts a node on x = 0
    CHECK(std::abs(pdf1[512]) < 1e-30);

    CHECK(moments_of(strategy_pdf(Strategy::pure(0, 2, 5))).mean == doctest::Approx(5.0).epsilon(1e-9));

    const auto s = Strategy::pure(0, 1, 0);
    CHECK_THROWS_AS(strategy_pdf(s, GridSpec(-1.0, 1.0, 256)), DomainTooNarrow);
}

TEST_CASE("moments match the variance ladder") {
    auto check = [](const Strategy& s, double mean, double risk) {
        const auto mom = strategy_moments(s);
        CHECK(mom.mean == doctest::Approx(mean).epsilon(1e-8).scale(1.0));
        CHECK(mom.risk == doctest::Approx(risk).epsilon(1e-8).scale(1.0));
    };
    check(Strategy::pure(0, 1, 0), 0.0, 0.5);
    check(Strategy::pure(2, 1, 0), 0.0, 2.5);
    check(Strategy::pure(0, 4, 1.3), 1.3, 0.125);
    for (unsigned n = 0; n <= 12; ++n) check(Strategy::pure(n, 1.7, -0.4), -0.4, (n + 0.5) / 1.7);

    // covariance: mean shifts by m, variance scales by 1/mu
    const Strategy base(1.0, 0.0, {0.6, 0.0, 0.8});
    const Strategy moved(3.0, 2.0, {0.6, 0.0, 0.8});
    const auto a = strategy_moments(base), b = strategy_moments(moved);
    CHECK(b.mean == doctest::Approx(a.mean + 2.0).epsilon(1e-9));
    CHECK(b.risk == doctest::Approx(a.risk / 3.0).epsilon(1e-9));
}

TEST_CASE("orthonormality on the default grid") {
    const double mu = 1.3, m = 0.2;
    const auto grid = default_grid(Strategy::pure(12, mu, m));
    std::vector<GridFunction> psi;
    for (unsigned k = 0; k <= 12; ++k) psi.push_back(strategy_amplitude(Strategy::pure(k, mu, m), grid));
    double worst = 0.0;
    for (unsigned j = 0; j <= 12; ++j) {
        for (unsigned k = 0; k <= 12; ++k) {
            std::vector<double> prod(grid.points());
            for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = psi[j][i] * psi[k][i];
            worst = std::max(worst, std::abs(trapezoid(prod, grid.step()) - (j == k ? 1.0 : 0.0)));
        }
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("projection onto the basis") {
    const auto s3 = Strategy::pure(3, 1.4, -0.5);
    const auto p3 = project_onto_basis(strategy_amplitude(s3, default_grid(Strategy::pure(5, 1.4, -0.5))), 1.4, -0.5, 5);
    REQUIRE(p3.coeffs.size() == 6);
    for (unsigned k = 0; k <= 5; ++k) CHECK(p3.coeffs[k] == doctest::Approx(k == 3 ? 1.0 : 0.0).scale(1.0).epsilon(1e-8));

    const Strategy half(1, 0, {1 / std::sqrt(2.0), 1 / std::sqrt(2.0)});
    const auto ph = project_onto_basis(strategy_amplitude(half, default_grid(Strategy::pure(3, 1, 0))), 1, 0, 3);
    CHECK(ph.coeffs[0] == doctest::Approx(0.70710678).epsilon(1e-8));
    CHECK(ph.coeffs[1] == doctest::Approx(0.70710678).epsilon(1e-8));
    CHECK(std::abs(ph.coeffs[2]) < 1e-8);
    CHECK(std::abs(ph.coeffs[3]) < 1e-8);

    const auto g = default_grid(Strategy::pure(0, 1, 0));
    const auto pm = project_onto_basis(strategy_amplitude(Strategy::pure(0, 1, 0), g), 2.0, 0.0, 0);
    CHECK(pm.coeffs[0] == doctest::Approx(oracle::gaussian_overlap(1.0, 2.0)).epsilon(1e-10));
    CHECK(pm.coeffs[0] == doctest::Approx(std::sqrt(2 * std::sqrt(2.0) / 3)).epsilon(1e-10));

    const auto zero = GridFunction::sample(g, [](double) { return 0.0; });
    CHECK_THROWS_AS(project_onto_basis(zero, 1, 0, 2), NotNormalized);
}

TEST_CASE("projection inverts synthesis") {
    std::vector<double> c = {0.3, -0.2, 0.1, 0.5, 0.0, -0.4, 0.2, 0.1, -0.3, 0.25, 0.15, -0.1, 0.2};
    double sq = 0.0;
    for (double v : c) sq += v * v;
    for (double& v : c) v /= std::sqrt(sq);
    const Strategy s(0.8, 1.0, c);
    const auto p = project_onto_basis(strategy_amplitude(s, default_grid(s)), 0.8, 1.0, 12);
    double err = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) err += (p.coeffs[k] - c[k]) * (p.coeffs[k] - c[k]);
    CHECK(std::sqrt(err) < 1e-8);
    CHECK(p.residual < 1e-8);
}

TEST_CASE("mixture entropy") {
    CHECK(mixture_entropy(std::vector<double>{1.0}) == 0.0);
    CHECK(mixture_entropy(std::vector<double>{0.5, 0.5}) == doctest::Approx(std::log(2.0)));
    CHECK(mixture_entropy(std::vector<double>{0.25, 0.25, 0.25, 0.25}) == doctest::Approx(1.386294).epsilon(1e-6));
    CHECK(mixture_entropy(std::vector<double>{0.0, 1.0}) == 0.0);
    CHECK_THROWS_AS(mixture_entropy(std::vector<double>{0.5, 0.6}), BadWeights);
    CHECK_THROWS_AS(mixture_entropy(std::vector<double>{1.5, -0.5}), BadWeights);
}

TEST_CASE("strategy descriptor round trip") {
    const Strategy s(2.5, -1.0, {0.6, 0.0, 0.8});
    const auto j = strategy_to_json(s);
    CHECK(j.at("mu") == 2.5);
    const auto back = strategy_from_json(j);
    CHECK(back.mu() == 2.5);
    CHECK(back.m() == -1.0);
    CHECK(back.coeffs().size() == 3);
    CHECK_THROWS_AS(strategy_from_json(nlohmann::json{{"mu", 1.0}}), InvalidArgument);
    CHECK_THROWS_AS(strategy_from_json(nlohmann::json{{"mu", 1.0}, {"m", 0.0}, {"coeffs", {0.5}}}), NotNormalized);
}
