#include "qsd/variational.hpp"

#include "qsd/errors.hpp"
#include "qsd/fisher.hpp"
#include "qsd/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qsd {

namespace {

TridiagonalOperator assemble(const GridSpec& grid, double mu, double m) {
    if (!std::isfinite(mu) || !(mu > 0.0)) throw InvalidArgument("mu must be positive");
    if (!std::isfinite(m)) throw InvalidArgument("m must be finite");
    const double h = grid.step();
    const double kinetic = 1.0 / (mu * h * h);
    TridiagonalOperator op{std::vector<double>(grid.points()),
                           std::vector<double>(grid.points() - 1, -0.5 * kinetic), grid, mu, m};
    for (std::size_t i = 0; i < grid.points(); ++i) {
        const double d = grid.node(i) - m;
        op.diag[i] = kinetic + 0.5 * mu * d * d;
    }
    return op;
}

// Eigenvalues of op strictly below x.
std::size_t sturm_count(const TridiagonalOperator& op, double x) {
    const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    std::size_t count = 0;
    double q = op.diag[0] - x;
    for (std::size_t i = 0;; ++i) {
        if (q == 0.0) q = -tiny;
        if (q < 0.0) ++count;
        if (i + 1 == op.diag.size()) break;
        q = op.diag[i + 1] - x - op.off[i] * op.off[i] / q;
    }
    return count;
}

double bisect_eigenvalue(const TridiagonalOperator& op, std::size_t index, double lo, double hi) {
    for (int iter = 0; iter < 400; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= defaults::eigen_relative_tolerance * std::max({std::abs(lo), std::abs(hi), 1e-300}) ||
            mid == lo || mid == hi) {
            return mid;
        }
        if (sturm_count(op, mid) >= index + 1) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    throw ConvergenceFailure(index, "bisection did not converge for eigenvalue " + std::to_string(index));
}

// Solves (T - shift·I) x = b with partial pivoting, as in LAPACK's gttrf/gttrs.
std::vector<double> shifted_solve(const TridiagonalOperator& op, double shift, std::vector<double> b) {
    const std::size_t n = op.diag.size();
    std::vector<double> dl(op.off), du(op.off), d(n), du2(n > 2 ? n - 2 : 0, 0.0);
    std::vector<bool> swapped(n, false);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = op.diag[i] - shift;
        scale = std::max(scale, std::abs(d[i]));
    }
    const double floor_pivot = std::numeric_limits<double>::epsilon() * std::max(scale, 1.0);

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            if (d[i] == 0.0) d[i] = floor_pivot;
            const double fact = dl[i] / d[i];
            dl[i] = fact;
            d[i + 1] -= fact * du[i];
        } else {
            const double fact = d[i] / dl[i];
            d[i] = dl[i];
            dl[i] = fact;
            const double temp = d[i + 1];
            d[i + 1] = du[i] - fact * temp;
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du[i + 1];
            }
            du[i] = temp;
            swapped[i] = true;
        }
    }
    if (d[n - 1] == 0.0) d[n - 1] = floor_pivot;

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (swapped[i]) std::swap(b[i], b[i + 1]);
        b[i + 1] -= dl[i] * b[i];
    }
    std::vector<double> x(n);
    x[n - 1] = b[n - 1] / d[n - 1];
    if (n >= 2) x[n - 2] = (b[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
    for (std::size_t i = n - 2; i-- > 0;) {
        x[i] = (b[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
    }
    return x;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void scale_to_unit(std::vector<double>& v) {
    const double norm = std::sqrt(dot(v, v));
    for (double& x : v) x /= norm;
}

void fix_sign(std::vector<double>& v) {
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, std::abs(x));
    for (std::size_t i = v.size(); i-- > 0;) {
        if (std::abs(v[i]) >= 1e-3 * peak) {
            if (v[i] < 0.0) {
                for (double& x : v) x = -x;
            }
            return;
        }
    }
}

GridFunction to_grid_function(const GridSpec& spec, std::vector<double> v) {
    // Unit trapezoid norm; end nodes carry half weight.
    const double norm = grid_norm(v, spec.step());
    for (double& x : v) x /= norm;
    return GridFunction(spec, std::move(v));
}

}  // namespace

std::vector<double> TridiagonalOperator::apply(std::span<const double> v) const {
    const std::size_t n = diag.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = diag[i] * v[i];
        if (i > 0) s += off[i - 1] * v[i - 1];
        if (i + 1 < n) s += off[i] * v[i + 1];
        out[i] = s;
    }
    return out;
}

TridiagonalOperator build_hamiltonian(const GridSpec& grid, double mu, double m, unsigned max_index) {
    if (!(mu > 0.0)) throw InvalidArgument("mu must be positive");
    const double half = defaults::grid_span_sigmas * std::sqrt((max_index + 0.5) / mu);
    const double slack = 1e-9 * half;
    if (grid.lo() > m - half + slack || grid.hi() < m + half - slack) {
        throw DomainTooNarrow("operator grid must cover m ± 8σ = [" + std::to_string(m - half) + ", " +
                              std::to_string(m + half) + "]");
    }
    return assemble(grid, mu, m);
}

std::vector<EigenSolution> lowest_eigenpairs(const TridiagonalOperator& op, unsigned k) {
    if (k < 1 || k > defaults::eigen_max_count) {
        throw InvalidArgument("eigenpair count must be in [1, 20], got " + std::to_string(k));
    }
    if (op.diag.size() != op.spec.points() || op.off.size() + 1 != op.diag.size()) {
        throw InvalidArgument("operator shape does not match its grid");
    }
    for (double v : op.diag) {
        if (!std::isfinite(v)) throw InvalidArgument("operator diagonal has non-finite entries");
    }

    const std::size_t n = op.diag.size();
    double lo = std::numeric_limits<double>::max();
    double hi = std::numeric_limits<double>::lowest();
    for (std::size_t i = 0; i < n; ++i) {
        const double radius = (i > 0 ? std::abs(op.off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(op.off[i]) : 0.0);
        lo = std::min(lo, op.diag[i] - radius);
        hi = std::max(hi, op.diag[i] + radius);
    }

    std::vector<EigenSolution> out;
    std::vector<std::vector<double>> found;
    for (unsigned j = 0; j < k; ++j) {
        const double lambda = bisect_eigenvalue(op, j, lo, hi);

        Rng rng(0x9e3779b97f4a7c15ULL + j);
        std::vector<double> v(n);
        for (double& x : v) x = rng.uniform() - 0.5;
        scale_to_unit(v);

        bool converged = false;
        for (int iter = 0; iter < 12 && !converged; ++iter) {
            auto next = shifted_solve(op, lambda, v);
            for (const auto& prev : found) {
                const double c = dot(next, prev);
                for (std::size_t i = 0; i < n; ++i) next[i] -= c * prev[i];
            }
            scale_to_unit(next);
            const double overlap = std::abs(dot(next, v));
            converged = 1.0 - overlap < 1e-14;
            v = std::move(next);
        }
        if (!converged) {
            throw ConvergenceFailure(j, "inverse iteration did not converge for eigenvector " + std::to_string(j));
        }
        fix_sign(v);
        found.push_back(v);
        out.push_back({lambda, to_grid_function(op.spec, std::move(v)), j});
    }
    return out;
}

std::vector<EigenSolution> richardson_eigenpairs(const GridSpec& grid, double mu, double m, unsigned k) {
    const auto coarse = lowest_eigenpairs(build_hamiltonian(grid, mu, m, k - 1), k);
    const GridSpec fine_grid(grid.lo(), grid.hi(), 2 * grid.points() - 1);
    const auto fine = lowest_eigenpairs(build_hamiltonian(fine_grid, mu, m, k - 1), k);

    std::vector<EigenSolution> out;
    for (unsigned j = 0; j < k; ++j) {
        std::vector<double> v(grid.points());
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = (4.0 * fine[j].eigenvector[2 * i] - coarse[j].eigenvector[i]) / 3.0;
        }
        out.push_back({(4.0 * fine[j].eigenvalue - coarse[j].eigenvalue) / 3.0,
                       to_grid_function(grid, std::move(v)), j});
    }
    return out;
}

ResidualReport el_residual(const GridFunction& psi, double eps, double mu, double m) {
    const auto op = assemble(psi.spec(), mu, m);
    auto r = op.apply(psi.values());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= eps * psi[i];
    const double h = psi.spec().step();
    const double residual = grid_norm(r, h);
    return {residual, h, residual / (h * h)};
}

PerturbationReport perturbation_check(const Strategy& s, const PerturbationOptions& options) {
    const auto level = s.pure_index();
    if (!level) throw NotPure("perturbation check needs a pure strategy");
    if (options.trials < 10) throw InvalidArgument("perturbation check needs at least 10 trials");
    if (!(options.delta > 0.0)) throw InvalidArgument("perturbation size must be positive");

    const unsigned n = *level;
    const unsigned modes = n + defaults::perturbation_extra_modes;
    const double mu = s.mu();
    const double m = s.m();
    const double risk = (n + 0.5) / mu;
    const GridSpec grid = default_grid(Strategy::pure(modes, mu, m));

    const double reference = fisher_information_grid(strategy_pdf(s, grid)).value;
    PerturbationReport report{n, options.trials, 0, options.delta, reference,
                              std::numeric_limits<double>::max(), 0.0, 0.0};

    Rng rng(options.seed);
    for (unsigned t = 0; t < options.trials; ++t) {
        std::vector<double> direction(modes + 1);
        double norm = 0.0;
        for (double& a : direction) {
            a = rng.normal();
            norm += a * a;
        }
        std::vector<double> coeffs(modes + 1, 0.0);
        coeffs[n] = 1.0;
        double total = 0.0;
        for (std::size_t k = 0; k <= modes; ++k) {
            coeffs[k] += options.delta * direction[k] / std::sqrt(norm);
            total += coeffs[k] * coeffs[k];
        }
        for (double& c : coeffs) c /= std::sqrt(total);
        const Strategy perturbed(mu, m, std::move(coeffs));

        // Shift restores the mean, an affine rescale restores the risk.
        const Moments raw = moments_of(strategy_pdf(perturbed, grid));
        const double a = std::sqrt(raw.risk / risk);
        const auto restored = GridFunction::sample(grid, [&](double x) {
            const double amp = strategy_eval(perturbed, raw.mean + a * (x - m));
            return a * amp * amp;
        });
        const Moments fixed = moments_of(restored);
        report.max_constraint_defect =
            std::max({report.max_constraint_defect, std::abs(fixed.mean - m), std::abs(fixed.risk - risk)});

        const double change = fisher_information_grid(restored).value - reference;
        report.min_change = std::min(report.min_change, change);
        report.max_abs_change = std::max(report.max_abs_change, std::abs(change));
        const bool ok = n == 0 ? change >= -1e-9
                               : std::abs(change) <= options.stationarity_factor * options.delta * options.delta;
        if (!ok) ++report.failures;
    }
    return report;
}

}  // namespace qsd
