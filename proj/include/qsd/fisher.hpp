#pragma once

#include "qsd/grid.hpp"
#include "qsd/strategy.hpp"

#include <optional>
#include <vector>

namespace qsd {

enum class FisherMethod { closed_form, quadrature };

struct FisherReport {
    double value;
    FisherMethod method;
    std::optional<GridSpec> grid;
};

/// I_F = 4∫ψ'^2 with ψ = sqrt(f), evaluated as ∫f'^2/f. Where f drops below
/// 1e-10 of its peak the integrand takes its amplitude-zero limit 2f'' (clamped
/// at zero), which keeps nodes of ψ from dropping mass or amplifying noise.
FisherReport fisher_information_grid(const GridFunction& pdf);

/// 4·mu·(n + 1/2) for a pure e_n strategy; NotPure otherwise.
FisherReport fisher_information_closed(const Strategy& s);

struct SurprisalDerivative {
    GridSpec spec;
    std::vector<double> values;   // dS/dx = -f'/f, 0 where unsupported
    std::vector<bool> supported;  // f >= 1e-12
};

SurprisalDerivative surprisal_derivative(const GridFunction& pdf);

/// std(dS/dx)·std(x) under f. Bounded below by 1.
double cramer_rao_product(const GridFunction& pdf);

}  // namespace qsd
