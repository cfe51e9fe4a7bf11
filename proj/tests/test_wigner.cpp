#include <doctest.h>

#include "oracles.hpp"
#include "qsd/errors.hpp"
#include "qsd/strategy.hpp"
#include "qsd/wigner.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace qsd;

namespace {
const double kInvPi = 1.0 / std::numbers::pi;

// Odd point counts put a node on the center of each axis.
PhaseFunction centered(unsigned n, double mu = 1.0, double m = 0.0) {
    const auto s = Strategy::pure(n, mu, m);
    return wigner_numeric(s, default_phase_grid(s, 257));
}
}  // namespace

TEST_CASE("numeric wigner function at the origin") {
    CHECK(centered(0).at(128, 128) == doctest::Approx(kInvPi).epsilon(1e-9));
    CHECK(centered(1).at(128, 128) == doctest::Approx(-kInvPi).epsilon(1e-9));
    CHECK(centered(0).at(128, 128) == doctest::Approx(0.318310).epsilon(1e-6));
    CHECK(centered(0).min() >= -1e-9);
}

TEST_CASE("closed form") {
    CHECK(wigner_closed(0, 1, 0, 0, 0) == doctest::Approx(kInvPi));
    CHECK(std::abs(wigner_closed(1, 1, 0, std::sqrt(0.5), 0)) < 1e-15);
    CHECK(std::abs(wigner_closed(1, 1, 0, 0.5, 0.5)) < 1e-15);
    CHECK(wigner_closed(2, 1, 0, 0, 0) == doctest::Approx(kInvPi));
    for (unsigned n = 0; n <= 12; ++n) {
        for (double u : {0.0, 0.3, 1.7, 4.2, 9.0}) CHECK(laguerre_eval(n, u) == doctest::Approx(oracle::laguerre(n, u)).epsilon(1e-10).scale(1.0));
        CHECK(wigner_closed(n, 2.0, 0.5, 0.9, -0.7) == doctest::Approx(oracle::wigner(n, 2.0, 0.5, 0.9, -0.7)).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("numeric and closed forms agree") {
    for (unsigned n = 0; n <= 8; ++n) {
        const auto s = Strategy::pure(n, 1.0, 0.0);
        const auto spec = default_phase_grid(s);
        const auto num = wigner_numeric(s, spec);
        const auto ref = wigner_closed_grid(n, 1.0, 0.0, spec);
        double worst = 0.0;
        for (std::size_t i = 0; i < num.values().size(); ++i) worst = std::max(worst, std::abs(num.values()[i] - ref.values()[i]));
        CHECK(worst <= 1e-5);
        CHECK(num.integral() == doctest::Approx(1.0).epsilon(1e-4));

        double bound = 0.0;
        for (double v : num.values()) bound = std::max(bound, std::abs(v));
        CHECK(bound <= kInvPi + 1e-9);
    }
    // other scale and center
    const auto s = Strategy::pure(3, 2.5, -1.0);
    const auto spec = default_phase_grid(s);
    const auto num = wigner_numeric(s, spec);
    const auto ref = wigner_closed_grid(3, 2.5, -1.0, spec);
    double worst = 0.0;
    for (std::size_t i = 0; i < num.values().size(); ++i) worst = std::max(worst, std::abs(num.values()[i] - ref.values()[i]));
    CHECK(worst <= 1e-5);
}

TEST_CASE("pure wigner functions are rotationally symmetric") {
    const auto s = Strategy::pure(3, 1, 0);
    const auto f = wigner_numeric(s, default_phase_grid(s));
    // compare each node with the closed form along its own circle
    double worst = 0.0;
    for (std::size_t ix = 0; ix < f.nx(); ix += 7) {
        for (std::size_t iy = 0; iy < f.ny(); iy += 7) {
            const double x = f.spec().x.node(ix), y = f.spec().y.node(iy);
            const double r = std::hypot(x, y);
            worst = std::max(worst, std::abs(f.at(ix, iy) - oracle::wigner(3, 1, 0, r, 0.0)));
        }
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("negative regions") {
    CHECK(negative_regions(0).empty());

    const auto r1 = negative_regions(1);
    REQUIRE(r1.size() == 1);
    CHECK(r1[0].rho_lo == 0.0);
    CHECK(r1[0].rho_hi == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-10));

    const auto r2 = negative_regions(2);
    REQUIRE(r2.size() == 1);
    CHECK(r2[0].rho_lo == doctest::Approx(std::sqrt((2 - std::sqrt(2.0)) / 2)).epsilon(1e-10));
    CHECK(r2[0].rho_hi == doctest::Approx(std::sqrt((2 + std::sqrt(2.0)) / 2)).epsilon(1e-10));
    CHECK(std::abs(r2[0].rho_lo - 0.541196) < 1e-6);
    CHECK(std::abs(r2[0].rho_hi - 1.306563) < 1e-6);

    for (unsigned n = 0; n <= 8; ++n) {
        const auto regions = negative_regions(n);
        CHECK(static_cast<int>(regions.size()) == oracle::negative_interval_count(n));
        CHECK(regions.size() == (n % 2 ? (n + 1) / 2 : n / 2));
        const auto radii = negative_region_boundaries(n);
        const auto ref = oracle::laguerre_radii(n);
        REQUIRE(radii.size() == ref.size());
        for (std::size_t i = 0; i < radii.size(); ++i) CHECK(radii[i] == doctest::Approx(ref[i]).epsilon(1e-10));
        for (const auto& r : regions) {
            CHECK(r.rho_lo < r.rho_hi);
            CHECK(wigner_closed(n, 1, 0, 0.5 * (r.rho_lo + r.rho_hi), 0) < 0.0);
        }
    }
}

TEST_CASE("marginals") {
    for (unsigned n = 0; n <= 6; ++n) {
        const auto s = Strategy::pure(n, 1.3, 0.2);
        const auto [dx, dy] = wigner_marginal_defect(wigner_numeric(s, default_phase_grid(s)), s);
        CHECK(dx <= (n == 0 ? 1e-6 : 1e-4));
        CHECK(dy <= (n == 0 ? 1e-6 : 1e-4));
    }
    const Strategy mixed(1, 0, {1 / std::sqrt(2.0), 1 / std::sqrt(2.0)});
    const auto f = wigner_numeric(mixed, default_phase_grid(mixed));
    const auto [dx, dy] = wigner_marginal_defect(f, mixed);
    CHECK(dx <= 1e-4);
    CHECK(dy <= 1e-4);
    CHECK(f.integral() == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("phase grid guards and output") {
    const auto s = Strategy::pure(2, 1, 0);
    const PhaseGridSpec narrow{GridSpec(-1, 1, 64), GridSpec(-6, 6, 64)};
    CHECK_THROWS_AS(wigner_numeric(s, narrow), DomainTooNarrow);
    CHECK_THROWS_AS(PhaseFunction(narrow, std::vector<double>(10)), InvalidArgument);

    const auto f = wigner_numeric(s, default_phase_grid(s, 16));
    std::ostringstream os;
    write_phase_csv(os, f);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "x,y,f");
    std::size_t rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 16 * 16);
}
