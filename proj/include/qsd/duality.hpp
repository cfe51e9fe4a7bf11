#pragma once

#include "qsd/grid.hpp"
#include "qsd/strategy.hpp"

#include <complex>
#include <utility>
#include <vector>

namespace qsd {

/// Transforms use ψ̂(y) = (2π)^{-1/2} ∫ ψ(x) e^{-ixy} dx. In this convention
/// ψ_n at mu = 1 is an eigenfunction with eigenvalue (-i)^n and the ground
/// state has Δx·Δy = 1/2.
inline constexpr const char* fourier_convention = "unitary angular: (2*pi)^(-1/2) * int psi(x) exp(-i x y) dx";

/// Complex samples over the dual grid y_j = -π/h + j·2π/(N h).
struct DualGridFunction {
    GridSpec spec;
    std::vector<double> re;
    std::vector<double> im;
    double parseval_defect;  // |Σ|ψ̂|²h_y - Σ|ψ|²h_x|

    std::complex<double> at(std::size_t i) const { return {re[i], im[i]}; }
    GridFunction modulus() const;
    GridFunction modulus_squared() const;
};

/// DFT-conjugate grid of `x`: N points from -π/h with spacing 2π/(N h).
GridSpec dual_grid(const GridSpec& x);

/// Grid wide enough for the transform's boundary-decay requirement (±12σ).
GridSpec transform_grid(const Strategy& s, std::size_t points = defaults::grid_points);

/// Throws LeakyDomain unless |f| < 1e-10 at both ends.
DualGridFunction fourier_transform_grid(const GridFunction& amplitude);
DualGridFunction fourier_transform_grid(const DualGridFunction& f);

struct DualSample {
    std::complex<double> value;
    bool interpolated;  // false only when y hits a node exactly
};

/// Linear interpolation between dual nodes. Throws InvalidArgument outside the grid.
DualSample dual_value_at(const DualGridFunction& f, double y);

/// Exact transform of a strategy: Σ c_k (-i)^k e^{-imy} ψ_k^{(1/mu)}(y).
std::complex<double> dual_amplitude(const Strategy& s, double y);

/// max_j | |ψ̂_n(y_j)| - |ψ_n(y_j)| | at mu = 1, m = 0.
double ft_eigen_defect(unsigned n, const GridSpec& grid);

/// Δx·Δy with Δx from ψ² and Δy from |ψ̂|², both on the transform grid.
double uncertainty_product(const Strategy& s);

/// (I_F of ψ_n², I_F of |ψ̂_n|²) at mu = 1, m = 0.
std::pair<double, double> fisher_ft_invariance(unsigned n);

}  // namespace qsd
