#include "qsd/fisher.hpp"

#include "qsd/defaults.hpp"
#include "qsd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qsd {

namespace {

void require_density(const GridFunction& pdf) {
    const auto v = pdf.values();
    const double peak = *std::max_element(v.begin(), v.end());
    if (!(peak > 0.0)) throw NotADensity("density is identically zero");
    for (double x : v) {
        if (x < -1e-12 * peak) throw NotADensity("density has negative values");
    }
    const double mass = trapezoid(pdf);
    if (std::abs(mass - 1.0) > defaults::domain_mass_tolerance) {
        throw NotADensity("density integrates to " + std::to_string(mass));
    }
}

}  // namespace

FisherReport fisher_information_grid(const GridFunction& pdf) {
    require_density(pdf);
    const auto f = pdf.values();
    const double h = pdf.spec().step();
    const auto d1 = spectral_derivative(f, h, 1);
    const auto d2 = spectral_derivative(f, h, 2);
    const double cutoff = defaults::fisher_relative_support * *std::max_element(f.begin(), f.end());

    std::vector<double> integrand(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        integrand[i] = f[i] >= cutoff ? d1[i] * d1[i] / f[i] : std::max(0.0, 2.0 * d2[i]);
    }
    return {trapezoid(integrand, h), FisherMethod::quadrature, pdf.spec()};
}

FisherReport fisher_information_closed(const Strategy& s) {
    const auto n = s.pure_index();
    if (!n) throw NotPure("closed-form Fisher information needs a pure strategy");
    return {4.0 * s.mu() * (*n + 0.5), FisherMethod::closed_form, std::nullopt};
}

SurprisalDerivative surprisal_derivative(const GridFunction& pdf) {
    require_density(pdf);
    const auto f = pdf.values();
    const auto d1 = spectral_derivative(f, pdf.spec().step(), 1);
    SurprisalDerivative out{pdf.spec(), std::vector<double>(f.size(), 0.0),
                            std::vector<bool>(f.size(), false)};
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] >= defaults::surprisal_support) {
            out.values[i] = -d1[i] / f[i];
            out.supported[i] = true;
        }
    }
    return out;
}

double cramer_rao_product(const GridFunction& pdf) {
    const double fisher = fisher_information_grid(pdf).value;
    // E[S'] = -∫f' is a boundary term; keep it so the product is a true
    // standard deviation on truncated grids.
    const auto d1 = spectral_derivative(pdf.values(), pdf.spec().step(), 1);
    const double mean_score = -trapezoid(d1, pdf.spec().step());
    const double score_var = std::max(0.0, fisher - mean_score * mean_score);
    return std::sqrt(score_var) * std::sqrt(moments_of(pdf).risk);
}

}  // namespace qsd
