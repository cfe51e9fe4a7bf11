#pragma once

#include "qsd/defaults.hpp"
#include "qsd/strategy.hpp"

#include <cstddef>
#include <ostream>
#include <utility>
#include <vector>

namespace qsd {

struct PhaseGridSpec {
    GridSpec x;
    GridSpec y;
};

/// Phase grid over m ± span·σ_x and ±span·σ_y with σ_x = sqrt((N+1/2)/mu),
/// σ_y = sqrt((N+1/2)·mu).
PhaseGridSpec default_phase_grid(const Strategy& s, std::size_t points = defaults::phase_points,
                                 double span_sigmas = defaults::phase_span_sigmas);

/// Row-major values: at(ix, iy) = values[ix·ny + iy].
class PhaseFunction {
public:
    PhaseFunction(PhaseGridSpec spec, std::vector<double> values);

    const PhaseGridSpec& spec() const noexcept { return spec_; }
    const std::vector<double>& values() const noexcept { return values_; }
    double at(std::size_t ix, std::size_t iy) const { return values_[ix * spec_.y.points() + iy]; }
    std::size_t nx() const noexcept { return spec_.x.points(); }
    std::size_t ny() const noexcept { return spec_.y.points(); }

    /// 2-D trapezoid integral.
    double integral() const;
    double min() const;

private:
    PhaseGridSpec spec_;
    std::vector<double> values_;
};

/// f(x,y) = (1/2π)∫ψ(x+s/2)ψ(x-s/2)cos(sy) ds by trapezoid over |s| ≤ 2·(x range).
/// Throws DomainTooNarrow if either axis misses more than 1e-4 of its marginal mass.
PhaseFunction wigner_numeric(const Strategy& s, const PhaseGridSpec& spec);

/// ((-1)^n/π)·e^{-ρ²}·L_n(2ρ²), ρ² = mu(x-m)² + y²/mu.
double wigner_closed(unsigned n, double mu, double m, double x, double y);

PhaseFunction wigner_closed_grid(unsigned n, double mu, double m, const PhaseGridSpec& spec);

/// Laguerre polynomial L_n(u) by recurrence.
double laguerre_eval(unsigned n, double u);

enum class RegionSign { negative };

/// Annulus rho_lo < ρ < rho_hi in the mu-scaled metric; rho_lo = 0 is a disk.
struct RadialRegion {
    double rho_lo;
    double rho_hi;
    RegionSign sign = RegionSign::negative;
};

/// Maximal ρ-intervals where f_n < 0.
std::vector<RadialRegion> negative_regions(unsigned n);

/// Sign-change radii of f_n (the circles bounding the regions).
std::vector<double> negative_region_boundaries(unsigned n);

/// (max_x |∫f dy - ψ²(x)|, max_y |∫f dx - |ψ̂(y)|²|)
std::pair<double, double> wigner_marginal_defect(const PhaseFunction& f, const Strategy& s);

/// CSV with header `x,y,f`, one row per node, x-major.
void write_phase_csv(std::ostream& os, const PhaseFunction& f);

}  // namespace qsd
