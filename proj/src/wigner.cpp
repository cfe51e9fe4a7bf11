#include "qsd/wigner.hpp"

#include "qsd/duality.hpp"
#include "qsd/errors.hpp"
#include "qsd/format.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace qsd {

namespace {

// Dense trapezoid over the axis; the densities are smooth and analytic.
double mass_inside(const GridSpec& axis, auto&& density) {
    const GridSpec fine(axis.lo(), axis.hi(), std::max<std::size_t>(4 * axis.points(), 2048));
    std::vector<double> v(fine.points());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = density(fine.node(i));
    return trapezoid(v, fine.step());
}

}  // namespace

PhaseGridSpec default_phase_grid(const Strategy& s, std::size_t points, double span_sigmas) {
    const double level = s.max_index() + 0.5;
    const double hx = span_sigmas * std::sqrt(level / s.mu());
    const double hy = span_sigmas * std::sqrt(level * s.mu());
    return {GridSpec(s.m() - hx, s.m() + hx, points), GridSpec(-hy, hy, points)};
}

PhaseFunction::PhaseFunction(PhaseGridSpec spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
    if (values_.size() != spec_.x.points() * spec_.y.points()) {
        throw InvalidArgument("phase function size does not match its grid");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw InvalidArgument("phase function has non-finite values");
    }
}

double PhaseFunction::integral() const {
    std::vector<double> rows(nx());
    for (std::size_t ix = 0; ix < nx(); ++ix) {
        rows[ix] = trapezoid(std::span<const double>(values_).subspan(ix * ny(), ny()), spec_.y.step());
    }
    return trapezoid(rows, spec_.x.step());
}

double PhaseFunction::min() const { return *std::min_element(values_.begin(), values_.end()); }

PhaseFunction wigner_numeric(const Strategy& s, const PhaseGridSpec& spec) {
    const double x_mass = mass_inside(spec.x, [&](double x) {
        const double a = strategy_eval(s, x);
        return a * a;
    });
    const double y_mass = mass_inside(spec.y, [&](double y) { return std::norm(dual_amplitude(s, y)); });
    if (x_mass < 1.0 - defaults::domain_mass_tolerance || y_mass < 1.0 - defaults::domain_mass_tolerance) {
        throw DomainTooNarrow("phase grid holds x-mass " + std::to_string(x_mass) + ", y-mass " +
                              std::to_string(y_mass));
    }

    // The s-integrand is even, so integrate over [0, S] and double. Its
    // frequency content is bounded by |y| plus the amplitude's momentum
    // spread, which fixes the step for spectral trapezoid accuracy.
    const double span = 2.0 * (spec.x.hi() - spec.x.lo());
    const double y_reach = std::max(std::abs(spec.y.lo()), std::abs(spec.y.hi()));
    const double momentum = 10.0 * std::sqrt((s.max_index() + 0.5) * s.mu());
    const double target = std::numbers::pi / (y_reach + momentum);
    const auto steps = static_cast<std::size_t>(std::ceil(span / target));
    const double ds = span / static_cast<double>(steps);

    const std::size_t nx = spec.x.points();
    const std::size_t ny = spec.y.points();
    std::vector<double> values(nx * ny);
    std::vector<double> kernel(steps + 1);
    for (std::size_t ix = 0; ix < nx; ++ix) {
        const double x = spec.x.node(ix);
        for (std::size_t j = 0; j <= steps; ++j) {
            const double half = 0.5 * ds * static_cast<double>(j);
            const double w = (j == 0 || j == steps) ? 0.5 : 1.0;
            kernel[j] = w * strategy_eval(s, x + half) * strategy_eval(s, x - half);
        }
        for (std::size_t iy = 0; iy < ny; ++iy) {
            const double y = spec.y.node(iy);
            const std::complex<double> turn = std::polar(1.0, ds * y);
            std::complex<double> z{1.0, 0.0};
            double sum = 0.0;
            for (std::size_t j = 0; j <= steps; ++j) {
                if (j % 128 == 0) z = std::polar(1.0, ds * static_cast<double>(j) * y);
                sum += kernel[j] * z.real();
                z *= turn;
            }
            values[ix * ny + iy] = sum * ds / std::numbers::pi;
        }
    }
    return PhaseFunction(spec, std::move(values));
}

double laguerre_eval(unsigned n, double u) {
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 1.0 - u;
    for (unsigned k = 1; k < n; ++k) {
        const double kk = static_cast<double>(k);
        const double next = ((2.0 * kk + 1.0 - u) * cur - kk * prev) / (kk + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double wigner_closed(unsigned n, double mu, double m, double x, double y) {
    if (!(mu > 0.0)) throw InvalidArgument("mu must be positive");
    const double rho2 = mu * (x - m) * (x - m) + y * y / mu;
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    return sign / std::numbers::pi * std::exp(-rho2) * laguerre_eval(n, 2.0 * rho2);
}

PhaseFunction wigner_closed_grid(unsigned n, double mu, double m, const PhaseGridSpec& spec) {
    std::vector<double> values(spec.x.points() * spec.y.points());
    for (std::size_t ix = 0; ix < spec.x.points(); ++ix) {
        for (std::size_t iy = 0; iy < spec.y.points(); ++iy) {
            values[ix * spec.y.points() + iy] = wigner_closed(n, mu, m, spec.x.node(ix), spec.y.node(iy));
        }
    }
    return PhaseFunction(spec, std::move(values));
}

std::vector<double> negative_region_boundaries(unsigned n) {
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    auto profile = [&](double rho) { return sign * laguerre_eval(n, 2.0 * rho * rho); };
    const double reach = std::sqrt(2.0 * n + 3.0) + 2.0;
    // Laguerre roots in ρ are spaced no closer than ~1/(4·sqrt(n+1)) near the
    // origin; 400 samples per unit radius resolves them comfortably.
    const auto samples = static_cast<std::size_t>(std::ceil(reach * 400.0 * std::sqrt(n + 1.0)));
    std::vector<double> roots;
    double prev_rho = 0.0;
    double prev_val = profile(0.0);
    for (std::size_t i = 1; i <= samples; ++i) {
        const double rho = reach * static_cast<double>(i) / static_cast<double>(samples);
        const double val = profile(rho);
        if ((prev_val < 0.0) != (val < 0.0)) {
            double lo = prev_rho;
            double hi = rho;
            const bool lo_negative = prev_val < 0.0;
            while (hi - lo > 1e-12) {
                const double mid = 0.5 * (lo + hi);
                if ((profile(mid) < 0.0) == lo_negative) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev_rho = rho;
        prev_val = val;
    }
    return roots;
}

std::vector<RadialRegion> negative_regions(unsigned n) {
    const auto roots = negative_region_boundaries(n);
    std::vector<RadialRegion> out;
    // (-1)^n L_n(0) = (-1)^n, so odd levels start negative at the origin.
    bool negative = n % 2 == 1;
    double start = 0.0;
    for (double r : roots) {
        if (negative) out.push_back({start, r});
        negative = !negative;
        start = r;
    }
    return out;
}

std::pair<double, double> wigner_marginal_defect(const PhaseFunction& f, const Strategy& s) {
    const auto& gx = f.spec().x;
    const auto& gy = f.spec().y;
    double worst_x = 0.0;
    for (std::size_t ix = 0; ix < f.nx(); ++ix) {
        const double row = trapezoid(std::span<const double>(f.values()).subspan(ix * f.ny(), f.ny()), gy.step());
        const double a = strategy_eval(s, gx.node(ix));
        worst_x = std::max(worst_x, std::abs(row - a * a));
    }
    double worst_y = 0.0;
    std::vector<double> column(f.nx());
    for (std::size_t iy = 0; iy < f.ny(); ++iy) {
        for (std::size_t ix = 0; ix < f.nx(); ++ix) column[ix] = f.at(ix, iy);
        const double col = trapezoid(column, gx.step());
        worst_y = std::max(worst_y, std::abs(col - std::norm(dual_amplitude(s, gy.node(iy)))));
    }
    return {worst_x, worst_y};
}

void write_phase_csv(std::ostream& os, const PhaseFunction& f) {
    os << "x,y,f\n";
    for (std::size_t ix = 0; ix < f.nx(); ++ix) {
        const std::string x = format_number(f.spec().x.node(ix));
        for (std::size_t iy = 0; iy < f.ny(); ++iy) {
            os << x << ',' << format_number(f.spec().y.node(iy)) << ',' << format_number(f.at(ix, iy)) << '\n';
        }
    }
}

}  // namespace qsd
