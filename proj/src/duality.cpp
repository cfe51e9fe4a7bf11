#include "qsd/duality.hpp"

#include "fft.hpp"
#include "qsd/errors.hpp"
#include "qsd/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qsd {

namespace {

using cplx = std::complex<double>;

DualGridFunction transform(const GridSpec& x, std::vector<cplx> samples) {
    const std::size_t n = x.points();
    const double h = x.step();
    const GridSpec y = dual_grid(x);

    double norm_in = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        norm_in += std::norm(samples[j]);
        // y_k = (k - N/2)·Δy turns the kernel into (-1)^j times the plain DFT
        // when N is even; the general shift is e^{-iπ j·2⌊N/2⌋/N}.
        const double phase = -2.0 * std::numbers::pi * static_cast<double>(j) *
                              static_cast<double>(-(static_cast<long>(n) / 2)) / static_cast<double>(n);
        samples[j] *= std::polar(1.0, phase);
    }
    norm_in *= h;

    const auto spectrum = detail::dft(samples, -1);
    DualGridFunction out{y, std::vector<double>(n), std::vector<double>(n), 0.0};
    const double scale = h / std::sqrt(2.0 * std::numbers::pi);
    double norm_out = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const cplx v = spectrum[k] * scale * std::polar(1.0, -x.lo() * y.node(k));
        out.re[k] = v.real();
        out.im[k] = v.imag();
        norm_out += std::norm(v);
    }
    out.parseval_defect = std::abs(norm_out * y.step() - norm_in);
    return out;
}

void require_decay(double first, double last) {
    const double edge = std::max(std::abs(first), std::abs(last));
    if (edge >= defaults::leak_threshold) {
        throw LeakyDomain("amplitude is " + std::to_string(edge) + " at the grid edge; widen the grid");
    }
}

}  // namespace

GridFunction DualGridFunction::modulus() const {
    std::vector<double> v(re.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::hypot(re[i], im[i]);
    return GridFunction(spec, std::move(v));
}

GridFunction DualGridFunction::modulus_squared() const {
    std::vector<double> v(re.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = re[i] * re[i] + im[i] * im[i];
    return GridFunction(spec, std::move(v));
}

GridSpec dual_grid(const GridSpec& x) {
    const std::size_t n = x.points();
    const double dy = 2.0 * std::numbers::pi / (static_cast<double>(n) * x.step());
    const double lo = -dy * static_cast<double>(n / 2);
    return GridSpec(lo, lo + dy * static_cast<double>(n - 1), n);
}

GridSpec transform_grid(const Strategy& s, std::size_t points) {
    return default_grid(s, points, defaults::transform_span_sigmas);
}

DualGridFunction fourier_transform_grid(const GridFunction& amplitude) {
    const auto v = amplitude.values();
    require_decay(v.front(), v.back());
    return transform(amplitude.spec(), std::vector<cplx>(v.begin(), v.end()));
}

DualGridFunction fourier_transform_grid(const DualGridFunction& f) {
    require_decay(std::abs(f.at(0)), std::abs(f.at(f.re.size() - 1)));
    std::vector<cplx> samples(f.re.size());
    for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = f.at(i);
    return transform(f.spec, std::move(samples));
}

DualSample dual_value_at(const DualGridFunction& f, double y) {
    const auto& g = f.spec;
    if (!(y >= g.lo() && y <= g.hi())) throw InvalidArgument("y outside the dual grid");
    const double pos = (y - g.lo()) / g.step();
    // positions within rounding of a node count as exact hits
    const double nearest = std::round(pos);
    if (std::abs(pos - nearest) < 1e-9) return {f.at(static_cast<std::size_t>(nearest)), false};
    const auto i = std::min(static_cast<std::size_t>(pos), g.points() - 2);
    const double t = pos - static_cast<double>(i);
    return {(1.0 - t) * f.at(i) + t * f.at(i + 1), true};
}

cplx dual_amplitude(const Strategy& s, double y) {
    const auto c = s.coeffs();
    std::vector<double> phi(c.size());
    // ψ_k^{(mu)} transforms to (-i)^k ψ_k^{(1/mu)}.
    const double inv_mu = 1.0 / s.mu();
    hermite_functions(std::sqrt(inv_mu) * y, phi);
    cplx sum{};
    cplx rot{1.0, 0.0};
    for (std::size_t k = 0; k < c.size(); ++k) {
        sum += c[k] * rot * phi[k];
        rot *= cplx{0.0, -1.0};
    }
    return std::pow(inv_mu, 0.25) * sum * std::polar(1.0, -s.m() * y);
}

double ft_eigen_defect(unsigned n, const GridSpec& grid) {
    const auto s = Strategy::pure(n, 1.0, 0.0);
    const auto dual = fourier_transform_grid(strategy_amplitude(s, grid));
    double worst = 0.0;
    for (std::size_t j = 0; j < dual.spec.points(); ++j) {
        const double expected = std::abs(psi_pure_eval(n, 1.0, 0.0, dual.spec.node(j)));
        worst = std::max(worst, std::abs(std::abs(dual.at(j)) - expected));
    }
    return worst;
}

double uncertainty_product(const Strategy& s) {
    const GridSpec grid = transform_grid(s);
    const auto amplitude = strategy_amplitude(s, grid);
    const auto dual = fourier_transform_grid(amplitude);
    const double dx = std::sqrt(moments_of(strategy_pdf(s, grid)).risk);
    const double dy = std::sqrt(moments_of(dual.modulus_squared()).risk);
    return dx * dy;
}

std::pair<double, double> fisher_ft_invariance(unsigned n) {
    const auto s = Strategy::pure(n, 1.0, 0.0);
    const GridSpec grid = transform_grid(s);
    const auto dual = fourier_transform_grid(strategy_amplitude(s, grid));
    return {fisher_information_grid(strategy_pdf(s, grid)).value,
            fisher_information_grid(dual.modulus_squared()).value};
}

}  // namespace qsd
