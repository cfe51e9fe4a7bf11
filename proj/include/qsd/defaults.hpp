#pragma once

#include <cstddef>

// Every numerical default lives here; the CLI echoes this table into each
// run manifest.
namespace qsd::defaults {

inline constexpr std::size_t grid_points = 1024;
inline constexpr double grid_span_sigmas = 8.0;

// Transforms need the amplitude itself (not just the density) below 1e-10 at
// the grid edges, which ±8σ does not give for the ground state.
inline constexpr double transform_span_sigmas = 12.0;

inline constexpr std::size_t phase_points = 256;
inline constexpr double phase_span_sigmas = 6.0;

inline constexpr double normalization_tolerance = 1e-12;
inline constexpr double normalization_rescale_limit = 1e-6;
inline constexpr double domain_mass_tolerance = 1e-4;

// Fisher integrand switches from f'^2/f to its zero-limit 2 f'' below this
// fraction of the peak density.
inline constexpr double fisher_relative_support = 1e-10;
inline constexpr double surprisal_support = 1e-12;

inline constexpr double leak_threshold = 1e-10;
inline constexpr double violation_threshold = 1e-9;
inline constexpr double slice_degenerate = 1e-12;

inline constexpr double eigen_relative_tolerance = 1e-13;
inline constexpr unsigned eigen_max_count = 20;

inline constexpr double perturbation_delta = 1e-2;
inline constexpr double stationarity_factor = 100.0;
inline constexpr unsigned perturbation_extra_modes = 8;

// CLI run defaults
inline constexpr unsigned eigen_count = 4;
inline constexpr std::size_t montecarlo_trials = 10000;
inline constexpr std::size_t montecarlo_samples = 100;
inline constexpr unsigned long long seed = 0;

}  // namespace qsd::defaults
