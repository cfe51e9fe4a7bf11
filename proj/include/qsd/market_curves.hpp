#pragma once

#include "qsd/grid.hpp"
#include "qsd/wigner.hpp"

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace qsd {

enum class CurveKind { supply, demand, conditional_supply, conditional_demand };

std::string to_string(CurveKind kind);

/// Direction the classical law of supply and demand requires of each kind.
/// The conditional supply curve integrates up to ln(1/c), so it falls as ln c
/// grows.
bool expected_nondecreasing(CurveKind kind);

struct Curve {
    std::vector<double> abscissa;  // ln c, strictly increasing
    std::vector<double> ordinate;
    CurveKind kind;
};

using Interval = std::pair<double, double>;

struct GiffenReport {
    bool monotone;
    std::vector<Interval> violations;
    double max_dip;
};

Curve cdf_supply(const GridFunction& pdf);
Curve cdf_demand(const GridFunction& pdf);

/// Supply from f1 and demand from f2, with f2 defaulting to f1.
std::pair<Curve, Curve> supply_demand_curves(const GridFunction& f1,
                                             const std::optional<GridFunction>& f2 = std::nullopt);

/// Cumulative in y of the slice f(x_fixed, ·), normalized by the slice integral.
Curve conditional_demand_curve(const PhaseFunction& f, double x_fixed);

/// Cumulative in x of f(·, y_fixed) up to ln(1/c), reported against ln c.
Curve conditional_supply_curve(const PhaseFunction& f, double y_fixed);

GiffenReport monotonicity_report(const Curve& c);

/// Abscissa intervals where a conditional slice crosses the given negative
/// regions of a (mu, m) Wigner function.
std::vector<Interval> region_projection(const std::vector<RadialRegion>& regions, double mu, double m,
                                        CurveKind kind, double fixed);

/// True when every violation interval overlaps one of `regions`.
bool violations_within(const GiffenReport& report, const std::vector<Interval>& regions);

/// CSV with header `lnc,value`.
void write_curve_csv(std::ostream& os, const Curve& c);
nlohmann::json curve_sidecar(const Curve& c);

nlohmann::json giffen_to_json(const GiffenReport& r);

}  // namespace qsd
