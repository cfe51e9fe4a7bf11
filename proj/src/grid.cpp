#include "qsd/grid.hpp"

#include "fft.hpp"
#include "qsd/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qsd {

GridSpec::GridSpec(double lo, double hi, std::size_t points) : lo_(lo), hi_(hi), points_(points) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw InvalidArgument("grid bounds must be finite with lo < hi");
    }
    if (points < 16) {
        throw InvalidArgument("grid needs at least 16 points, got " + std::to_string(points));
    }
}

std::vector<double> GridSpec::nodes() const {
    std::vector<double> out(points_);
    for (std::size_t i = 0; i < points_; ++i) out[i] = node(i);
    return out;
}

GridFunction::GridFunction(GridSpec spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
    if (values_.size() != spec_.points()) {
        throw InvalidArgument("grid function length " + std::to_string(values_.size()) +
                              " does not match grid points " + std::to_string(spec_.points()));
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw InvalidArgument("grid function has non-finite values");
    }
}

double trapezoid(std::span<const double> values, double step) {
    if (values.size() < 2) return 0.0;
    double sum = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
    return sum * step;
}

double trapezoid(const GridFunction& f) { return trapezoid(f.values(), f.spec().step()); }

std::vector<double> cumulative_trapezoid(std::span<const double> values, double step) {
    std::vector<double> out(values.size(), 0.0);
    for (std::size_t i = 1; i < values.size(); ++i) {
        out[i] = out[i - 1] + 0.5 * step * (values[i - 1] + values[i]);
    }
    return out;
}

Moments moments_of(const GridFunction& pdf) {
    const auto v = pdf.values();
    const double h = pdf.spec().step();
    std::vector<double> weighted(v.size());
    const double mass = trapezoid(v, h);
    for (std::size_t i = 0; i < v.size(); ++i) weighted[i] = pdf.spec().node(i) * v[i];
    const double mean = trapezoid(weighted, h) / mass;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double d = pdf.spec().node(i) - mean;
        weighted[i] = d * d * v[i];
    }
    return {mean, trapezoid(weighted, h) / mass};
}

std::vector<double> spectral_derivative(std::span<const double> values, double step, int order) {
    if (order != 1 && order != 2) throw InvalidArgument("spectral derivative order must be 1 or 2");
    const std::size_t n = values.size();
    std::vector<std::complex<double>> buf(values.begin(), values.end());
    auto spectrum = detail::dft(buf, -1);
    const double base = 2.0 * std::numbers::pi / (static_cast<double>(n) * step);
    for (std::size_t k = 0; k < n; ++k) {
        const long signed_k = k <= n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
        const double w = base * static_cast<double>(signed_k);
        if (order == 1) {
            // The Nyquist mode has no odd counterpart; drop it for first derivatives.
            spectrum[k] *= (n % 2 == 0 && k == n / 2) ? std::complex<double>{} : std::complex<double>{0.0, w};
        } else {
            spectrum[k] *= -w * w;
        }
    }
    auto back = detail::dft(spectrum, +1);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = back[i].real() / static_cast<double>(n);
    return out;
}

double grid_norm(std::span<const double> values, double step) {
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) sq[i] = values[i] * values[i];
    return std::sqrt(trapezoid(sq, step));
}

}  // namespace qsd
