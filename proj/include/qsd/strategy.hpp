#pragma once

#include "qsd/defaults.hpp"
#include "qsd/grid.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace qsd {

/// Physicists' Hermite polynomial H_n(u) by the three-term recurrence.
double hermite_eval(unsigned n, double u);

/// Orthonormal Hermite functions φ_0..φ_{out.size()-1} at u (unit scale,
/// zero center), with the normalization carried through the recurrence.
void hermite_functions(double u, std::span<double> out);

/// Minimal-information amplitude ψ_n for scale mu and center m.
double psi_pure_eval(unsigned n, double mu, double m, double x);

/// Amplitude expanded over the ψ_k basis at a shared (mu, m).
///
/// Coefficients must have unit Euclidean norm. A norm off by at most 1e-6 is
/// rescaled (and `rescaled()` reports it); anything further is rejected.
class Strategy {
public:
    Strategy(double mu, double m, std::vector<double> coeffs);

    static Strategy pure(unsigned n, double mu, double m);

    double mu() const noexcept { return mu_; }
    double m() const noexcept { return m_; }
    std::span<const double> coeffs() const noexcept { return coeffs_; }
    unsigned max_index() const noexcept { return static_cast<unsigned>(coeffs_.size() - 1); }
    bool rescaled() const noexcept { return rescaled_; }

    /// Basis index when the coefficients are a unit vector e_n.
    std::optional<unsigned> pure_index() const;

    /// σ_N = sqrt((N + 1/2)/mu) for the highest basis index N.
    double sigma() const;

private:
    double mu_;
    double m_;
    std::vector<double> coeffs_;
    bool rescaled_ = false;
};

double strategy_eval(const Strategy& s, double x);

/// [m - span·σ_N, m + span·σ_N]
GridSpec default_grid(const Strategy& s, std::size_t points = defaults::grid_points,
                      double span_sigmas = defaults::grid_span_sigmas);

GridFunction strategy_amplitude(const Strategy& s, const GridSpec& grid);

/// ψ² on the grid. Throws DomainTooNarrow if the grid misses more than 1e-4 of
/// the mass.
GridFunction strategy_pdf(const Strategy& s, const GridSpec& grid);
GridFunction strategy_pdf(const Strategy& s);

Moments strategy_moments(const Strategy& s);

struct Projection {
    std::vector<double> coeffs;
    double residual;  // ||f - Σ c_k ψ_k|| in the grid norm
};

Projection project_onto_basis(const GridFunction& amplitude, double mu, double m, unsigned n_max);

/// Boltzmann-Shannon entropy -Σ w ln w of mixture weights.
double mixture_entropy(std::span<const double> weights);

// Descriptor: {"mu": real, "m": real, "coeffs": [real...]}
nlohmann::json strategy_to_json(const Strategy& s);
Strategy strategy_from_json(const nlohmann::json& j);

}  // namespace qsd
