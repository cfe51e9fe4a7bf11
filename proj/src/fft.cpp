#include "fft.hpp"

#include <fftw3.h>

#include <memory>
#include <mutex>

namespace qsd::detail {

namespace {

// Planner calls are not thread-safe in FFTW; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(p);
    }
};

}  // namespace

std::vector<std::complex<double>> dft(std::span<const std::complex<double>> in, int sign) {
    const int n = static_cast<int>(in.size());
    std::vector<std::complex<double>> src(in.begin(), in.end());
    std::vector<std::complex<double>> out(in.size());
    auto* src_ptr = reinterpret_cast<fftw_complex*>(src.data());
    auto* out_ptr = reinterpret_cast<fftw_complex*>(out.data());

    std::unique_ptr<fftw_plan_s, PlanDeleter> plan;
    {
        // FFTW_ESTIMATE keeps the algorithm choice, and so the bits, reproducible.
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_1d(n, src_ptr, out_ptr, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                    FFTW_ESTIMATE));
    }
    fftw_execute(plan.get());
    return out;
}

}  // namespace qsd::detail
