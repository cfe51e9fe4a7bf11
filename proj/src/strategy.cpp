#include "qsd/strategy.hpp"

#include "qsd/errors.hpp"
#include "qsd/format.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <string>

namespace qsd {

double hermite_eval(unsigned n, double u) {
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 2.0 * u;
    for (unsigned k = 1; k < n; ++k) {
        const double next = 2.0 * u * cur - 2.0 * static_cast<double>(k) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

void hermite_functions(double u, std::span<double> out) {
    if (out.empty()) return;
    out[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * u * u);
    if (out.size() == 1) return;
    out[1] = std::numbers::sqrt2 * u * out[0];
    for (std::size_t k = 1; k + 1 < out.size(); ++k) {
        const double kk = static_cast<double>(k);
        out[k + 1] = std::sqrt(2.0 / (kk + 1.0)) * u * out[k] - std::sqrt(kk / (kk + 1.0)) * out[k - 1];
    }
}

double psi_pure_eval(unsigned n, double mu, double m, double x) {
    if (!(mu > 0.0)) throw InvalidArgument("mu must be positive");
    const double u = std::sqrt(mu) * (x - m);
    if (n > 30) {
        // 2^n n! loses precision long before it overflows near n = 150.
        std::vector<double> phi(n + 1);
        hermite_functions(u, phi);
        return std::pow(mu, 0.25) * phi[n];
    }
    const double norm =
        std::sqrt(std::sqrt(mu) / (std::ldexp(1.0, static_cast<int>(n)) * std::tgamma(n + 1.0) *
                                   std::sqrt(std::numbers::pi)));
    return norm * std::exp(-0.5 * u * u) * hermite_eval(n, u);
}

Strategy::Strategy(double mu, double m, std::vector<double> coeffs)
    : mu_(mu), m_(m), coeffs_(std::move(coeffs)) {
    if (!std::isfinite(mu) || !(mu > 0.0)) throw InvalidArgument("strategy mu must be positive and finite");
    if (!std::isfinite(m)) throw InvalidArgument("strategy m must be finite");
    if (coeffs_.empty()) throw InvalidArgument("strategy needs at least one coefficient");
    double sq = 0.0;
    for (double c : coeffs_) {
        if (!std::isfinite(c)) throw InvalidArgument("strategy coefficients must be finite");
        sq += c * c;
    }
    const double defect = std::abs(sq - 1.0);
    if (defect > defaults::normalization_rescale_limit) {
        throw NotNormalized("strategy coefficients have squared norm " + std::to_string(sq) +
                            ", expected 1");
    }
    if (defect > defaults::normalization_tolerance) {
        const double scale = 1.0 / std::sqrt(sq);
        for (double& c : coeffs_) c *= scale;
        rescaled_ = true;
        std::clog << "warning: strategy coefficients rescaled (squared norm was " << format_number(sq) << ")\n";
    }
}

Strategy Strategy::pure(unsigned n, double mu, double m) {
    std::vector<double> c(n + 1, 0.0);
    c[n] = 1.0;
    return Strategy(mu, m, std::move(c));
}

std::optional<unsigned> Strategy::pure_index() const {
    std::optional<unsigned> index;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k] == 0.0) continue;
        if (index || std::abs(std::abs(coeffs_[k]) - 1.0) > defaults::normalization_tolerance) {
            return std::nullopt;
        }
        index = static_cast<unsigned>(k);
    }
    return index;
}

double Strategy::sigma() const { return std::sqrt((max_index() + 0.5) / mu_); }

double strategy_eval(const Strategy& s, double x) {
    const auto c = s.coeffs();
    std::vector<double> phi(c.size());
    hermite_functions(std::sqrt(s.mu()) * (x - s.m()), phi);
    double sum = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) sum += c[k] * phi[k];
    return std::pow(s.mu(), 0.25) * sum;
}

GridSpec default_grid(const Strategy& s, std::size_t points, double span_sigmas) {
    const double half = span_sigmas * s.sigma();
    return GridSpec(s.m() - half, s.m() + half, points);
}

GridFunction strategy_amplitude(const Strategy& s, const GridSpec& grid) {
    return GridFunction::sample(grid, [&](double x) { return strategy_eval(s, x); });
}

GridFunction strategy_pdf(const Strategy& s, const GridSpec& grid) {
    auto pdf = GridFunction::sample(grid, [&](double x) {
        const double a = strategy_eval(s, x);
        return a * a;
    });
    const double mass = trapezoid(pdf);
    if (mass < 1.0 - defaults::domain_mass_tolerance) {
        throw DomainTooNarrow("grid [" + std::to_string(grid.lo()) + ", " + std::to_string(grid.hi()) +
                              "] holds only " + std::to_string(mass) + " of the strategy mass");
    }
    return pdf;
}

GridFunction strategy_pdf(const Strategy& s) { return strategy_pdf(s, default_grid(s)); }

Moments strategy_moments(const Strategy& s) { return moments_of(strategy_pdf(s)); }

Projection project_onto_basis(const GridFunction& amplitude, double mu, double m, unsigned n_max) {
    if (!(mu > 0.0)) throw InvalidArgument("mu must be positive");
    const auto& grid = amplitude.spec();
    const double h = grid.step();
    const auto f = amplitude.values();
    const double norm_sq = grid_norm(f, h);
    if (std::abs(norm_sq * norm_sq - 1.0) > defaults::domain_mass_tolerance) {
        throw NotNormalized("amplitude squares to " + std::to_string(norm_sq * norm_sq) + ", expected 1");
    }

    // basis[k][i] = ψ_k(x_i)
    std::vector<std::vector<double>> basis(n_max + 1, std::vector<double>(grid.points()));
    std::vector<double> phi(n_max + 1);
    const double scale = std::pow(mu, 0.25);
    for (std::size_t i = 0; i < grid.points(); ++i) {
        hermite_functions(std::sqrt(mu) * (grid.node(i) - m), phi);
        for (unsigned k = 0; k <= n_max; ++k) basis[k][i] = scale * phi[k];
    }

    Projection out{std::vector<double>(n_max + 1), 0.0};
    std::vector<double> product(grid.points());
    std::vector<double> remainder(f.begin(), f.end());
    for (unsigned k = 0; k <= n_max; ++k) {
        for (std::size_t i = 0; i < product.size(); ++i) product[i] = f[i] * basis[k][i];
        out.coeffs[k] = trapezoid(product, h);
        for (std::size_t i = 0; i < remainder.size(); ++i) remainder[i] -= out.coeffs[k] * basis[k][i];
    }
    out.residual = grid_norm(remainder, h);
    return out;
}

double mixture_entropy(std::span<const double> weights) {
    if (weights.empty()) throw BadWeights("mixture needs at least one weight");
    double total = 0.0;
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0) throw BadWeights("mixture weights must be non-negative");
        total += w;
    }
    if (std::abs(total - 1.0) > defaults::normalization_tolerance) {
        throw BadWeights("mixture weights sum to " + std::to_string(total) + ", expected 1");
    }
    double h = 0.0;
    for (double w : weights) {
        if (w > 0.0) h -= w * std::log(w);
    }
    return h;
}

nlohmann::json strategy_to_json(const Strategy& s) {
    return {{"mu", s.mu()}, {"m", s.m()},
            {"coeffs", std::vector<double>(s.coeffs().begin(), s.coeffs().end())}};
}

Strategy strategy_from_json(const nlohmann::json& j) {
    try {
        return Strategy(j.at("mu").get<double>(), j.at("m").get<double>(),
                        j.at("coeffs").get<std::vector<double>>());
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("bad strategy descriptor: ") + e.what());
    }
}

}  // namespace qsd
