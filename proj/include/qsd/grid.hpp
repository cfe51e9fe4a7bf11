#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qsd {

/// Uniform 1-D grid over [lo, hi] with `points` nodes, both ends included.
class GridSpec {
public:
    GridSpec(double lo, double hi, std::size_t points);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    std::size_t points() const noexcept { return points_; }
    double step() const noexcept { return (hi_ - lo_) / static_cast<double>(points_ - 1); }
    double node(std::size_t i) const noexcept { return lo_ + static_cast<double>(i) * step(); }
    std::vector<double> nodes() const;

    bool operator==(const GridSpec&) const = default;

private:
    double lo_;
    double hi_;
    std::size_t points_;
};

/// Real samples on a GridSpec. Values are finite and match the grid length.
class GridFunction {
public:
    GridFunction(GridSpec spec, std::vector<double> values);

    template <class Fn>
    static GridFunction sample(const GridSpec& spec, Fn&& fn) {
        std::vector<double> v(spec.points());
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = fn(spec.node(i));
        }
        return GridFunction(spec, std::move(v));
    }

    const GridSpec& spec() const noexcept { return spec_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    std::size_t size() const noexcept { return values_.size(); }

private:
    GridSpec spec_;
    std::vector<double> values_;
};

struct Moments {
    double mean;
    double risk;  // variance
};

double trapezoid(std::span<const double> values, double step);
double trapezoid(const GridFunction& f);

/// Running trapezoid integral from the left; out[0] == 0.
std::vector<double> cumulative_trapezoid(std::span<const double> values, double step);

/// Mean and variance of a non-negative density, normalized by its own integral.
Moments moments_of(const GridFunction& pdf);

/// Derivative of `order` 1 or 2 by FFT differentiation. The samples are
/// treated as one period, so they must decay at both edges.
std::vector<double> spectral_derivative(std::span<const double> values, double step, int order);

/// sqrt(trapezoid of squares)
double grid_norm(std::span<const double> values, double step);

}  // namespace qsd
