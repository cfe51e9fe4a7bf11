#pragma once

#include "qsd/grid.hpp"
#include "qsd/strategy.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qsd {

/// Dirichlet central-difference discretization of
/// -(1/2mu) d²/dx² + (mu/2)(x - m)².
struct TridiagonalOperator {
    std::vector<double> diag;
    std::vector<double> off;  // off[i] couples nodes i and i+1
    GridSpec spec;
    double mu;
    double m;

    std::vector<double> apply(std::span<const double> v) const;
};

/// Throws DomainTooNarrow unless the grid covers m ± 8σ_K for K = max_index.
TridiagonalOperator build_hamiltonian(const GridSpec& grid, double mu, double m,
                                      unsigned max_index = 0);

struct EigenSolution {
    double eigenvalue;
    GridFunction eigenvector;  // trapezoid ∫v² = 1, last significant entry > 0
    unsigned index;
};

/// k smallest eigenpairs by Sturm-count bisection and inverse iteration.
std::vector<EigenSolution> lowest_eigenpairs(const TridiagonalOperator& op, unsigned k);

/// Eigenpairs extrapolated from the grid and its bisection (2N-1 points),
/// cancelling the h² stencil error. Vectors live on the coarse grid.
std::vector<EigenSolution> richardson_eigenpairs(const GridSpec& grid, double mu, double m,
                                                 unsigned k);

struct ResidualReport {
    double residual;  // ||Hψ - εψ|| in the grid norm
    double step;
    double constant;  // residual / h²
};

ResidualReport el_residual(const GridFunction& psi, double eps, double mu, double m);

struct PerturbationOptions {
    unsigned trials = 100;
    std::uint64_t seed = 0;
    double delta = defaults::perturbation_delta;
    double stationarity_factor = defaults::stationarity_factor;
};

struct PerturbationReport {
    unsigned level;
    unsigned trials;
    unsigned failures;
    double delta;
    double reference_fisher;
    double min_change;      // smallest I_F(perturbed) - I_F(ψ_n)
    double max_abs_change;
    double max_constraint_defect;  // worst |mean - m| or |risk - r| after re-imposition
    bool passed() const { return failures == 0; }
};

/// Random smooth perturbations of a pure strategy with mean and risk restored.
/// Level 0 must never lower I_F (beyond 1e-9); higher levels must change it by
/// at most stationarity_factor·δ².
PerturbationReport perturbation_check(const Strategy& s, const PerturbationOptions& options = {});

}  // namespace qsd
