#include "qsd/market_curves.hpp"

#include "qsd/defaults.hpp"
#include "qsd/errors.hpp"
#include "qsd/format.hpp"

#include <algorithm>
#include <cmath>

namespace qsd {

namespace {

void require_pdf(const GridFunction& f) {
    for (double v : f.values()) {
        if (v < 0.0) throw NotADensity("curve density has negative values");
    }
    const double mass = trapezoid(f);
    if (std::abs(mass - 1.0) > defaults::domain_mass_tolerance) {
        throw NotADensity("curve density integrates to " + std::to_string(mass));
    }
}

// Linear interpolation between the two grid lines bracketing `at`.
std::vector<double> slice(const PhaseFunction& f, const GridSpec& across, double at, bool fixed_x) {
    if (!(at >= across.lo() && at <= across.hi())) {
        throw InvalidArgument("slice position " + std::to_string(at) + " outside the phase grid");
    }
    const double pos = (at - across.lo()) / across.step();
    const auto i = std::min(static_cast<std::size_t>(pos), across.points() - 2);
    const double t = pos - static_cast<double>(i);
    const std::size_t len = fixed_x ? f.ny() : f.nx();
    std::vector<double> out(len);
    for (std::size_t j = 0; j < len; ++j) {
        const double a = fixed_x ? f.at(i, j) : f.at(j, i);
        const double b = fixed_x ? f.at(i + 1, j) : f.at(j, i + 1);
        out[j] = (1.0 - t) * a + t * b;
    }
    return out;
}

std::vector<double> normalized_cumulative(const std::vector<double>& values, double step) {
    auto cum = cumulative_trapezoid(values, step);
    const double total = cum.back();
    if (std::abs(total) < defaults::slice_degenerate) {
        throw SliceDegenerate("slice integrates to " + std::to_string(total));
    }
    for (double& v : cum) v /= total;
    return cum;
}

}  // namespace

std::string to_string(CurveKind kind) {
    switch (kind) {
        case CurveKind::supply: return "supply";
        case CurveKind::demand: return "demand";
        case CurveKind::conditional_supply: return "conditional_supply";
        case CurveKind::conditional_demand: return "conditional_demand";
    }
    return "unknown";
}

bool expected_nondecreasing(CurveKind kind) {
    return kind == CurveKind::supply || kind == CurveKind::conditional_demand;
}

Curve cdf_supply(const GridFunction& pdf) {
    require_pdf(pdf);
    auto cum = cumulative_trapezoid(pdf.values(), pdf.spec().step());
    const double mass = cum.back();
    for (double& v : cum) v /= mass;
    return {pdf.spec().nodes(), std::move(cum), CurveKind::supply};
}

Curve cdf_demand(const GridFunction& pdf) {
    require_pdf(pdf);
    const auto v = pdf.values();
    const double h = pdf.spec().step();
    std::vector<double> tail(v.size(), 0.0);
    for (std::size_t i = v.size() - 1; i-- > 0;) tail[i] = tail[i + 1] + 0.5 * h * (v[i] + v[i + 1]);
    const double mass = tail.front();
    for (double& t : tail) t /= mass;
    return {pdf.spec().nodes(), std::move(tail), CurveKind::demand};
}

std::pair<Curve, Curve> supply_demand_curves(const GridFunction& f1, const std::optional<GridFunction>& f2) {
    return {cdf_supply(f1), cdf_demand(f2 ? *f2 : f1)};
}

Curve conditional_demand_curve(const PhaseFunction& f, double x_fixed) {
    const auto& gy = f.spec().y;
    return {gy.nodes(), normalized_cumulative(slice(f, f.spec().x, x_fixed, true), gy.step()),
            CurveKind::conditional_demand};
}

Curve conditional_supply_curve(const PhaseFunction& f, double y_fixed) {
    const auto& gx = f.spec().x;
    const auto cum = normalized_cumulative(slice(f, f.spec().y, y_fixed, false), gx.step());
    // Upper limit x = ln(1/c) = -ln c; walk x downward so ln c ascends.
    Curve c{std::vector<double>(cum.size()), std::vector<double>(cum.size()), CurveKind::conditional_supply};
    for (std::size_t i = 0; i < cum.size(); ++i) {
        const std::size_t src = cum.size() - 1 - i;
        c.abscissa[i] = -gx.node(src);
        c.ordinate[i] = cum[src];
    }
    return c;
}

GiffenReport monotonicity_report(const Curve& c) {
    GiffenReport r{true, {}, 0.0};
    const double direction = expected_nondecreasing(c.kind) ? 1.0 : -1.0;
    for (std::size_t i = 0; i + 1 < c.ordinate.size(); ++i) {
        const double dip = -direction * (c.ordinate[i + 1] - c.ordinate[i]);
        r.max_dip = std::max(r.max_dip, dip);
        if (dip > defaults::violation_threshold) {
            const Interval span{c.abscissa[i], c.abscissa[i + 1]};
            if (!r.violations.empty() && r.violations.back().second == span.first) {
                r.violations.back().second = span.second;
            } else {
                r.violations.push_back(span);
            }
        }
    }
    r.monotone = r.violations.empty();
    return r;
}

std::vector<Interval> region_projection(const std::vector<RadialRegion>& regions, double mu, double m,
                                        CurveKind kind, double fixed) {
    std::vector<Interval> out;
    for (const auto& region : regions) {
        const double lo2 = region.rho_lo * region.rho_lo;
        const double hi2 = region.rho_hi * region.rho_hi;
        double inner2 = 0.0;
        double outer2 = 0.0;
        // Solve lo² < mu(x-m)² + y²/mu < hi² for the free coordinate.
        if (kind == CurveKind::conditional_demand) {
            const double fixed_part = mu * (fixed - m) * (fixed - m);
            inner2 = mu * (lo2 - fixed_part);
            outer2 = mu * (hi2 - fixed_part);
        } else if (kind == CurveKind::conditional_supply) {
            const double fixed_part = fixed * fixed / mu;
            inner2 = (lo2 - fixed_part) / mu;
            outer2 = (hi2 - fixed_part) / mu;
        } else {
            throw InvalidArgument("region projection applies to conditional curves only");
        }
        if (outer2 <= 0.0) continue;
        const double outer = std::sqrt(outer2);
        const double inner = inner2 > 0.0 ? std::sqrt(inner2) : 0.0;
        // Offsets are measured from the slice centre: y = 0 for demand, x = m for supply.
        const double centre = kind == CurveKind::conditional_demand ? 0.0 : -m;
        if (inner == 0.0) {
            out.push_back({centre - outer, centre + outer});
        } else {
            out.push_back({centre - outer, centre - inner});
            out.push_back({centre + inner, centre + outer});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool violations_within(const GiffenReport& report, const std::vector<Interval>& regions) {
    return std::all_of(report.violations.begin(), report.violations.end(), [&](const Interval& v) {
        return std::any_of(regions.begin(), regions.end(),
                           [&](const Interval& r) { return v.first < r.second && r.first < v.second; });
    });
}

void write_curve_csv(std::ostream& os, const Curve& c) {
    os << "lnc,value\n";
    for (std::size_t i = 0; i < c.abscissa.size(); ++i) {
        os << format_number(c.abscissa[i]) << ',' << format_number(c.ordinate[i]) << '\n';
    }
}

nlohmann::json curve_sidecar(const Curve& c) {
    return {{"kind", to_string(c.kind)},
            {"points", c.abscissa.size()},
            {"expected_direction", expected_nondecreasing(c.kind) ? "nondecreasing" : "nonincreasing"}};
}

nlohmann::json giffen_to_json(const GiffenReport& r) {
    nlohmann::json intervals = nlohmann::json::array();
    for (const auto& [lo, hi] : r.violations) intervals.push_back({lo, hi});
    return {{"monotone", r.monotone}, {"violations", intervals}, {"max_dip", r.max_dip}};
}

}  // namespace qsd
