#pragma once

#include "qsd/strategy.hpp"

#include <json.hpp>

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace qsd {

enum class Side { buy, sell };

struct Transaction {
    double log_price;
    Side side;
};

struct TransactionSample {
    std::vector<Transaction> records;
    std::string source;

    std::vector<double> log_prices() const;
    TransactionSample filter(Side side) const;
};

/// CSV with header `log_price,side`. Every malformed row is reported in one
/// MalformedRow error; blank lines are skipped.
TransactionSample parse_transactions(std::istream& in, const std::string& source = "stream");

struct MomentEstimate {
    double mean;
    double risk;  // unbiased sample variance
    std::size_t n;
    double se_mean;
};

MomentEstimate estimate_moments(const TransactionSample& s);

/// Pure e_n strategy with the given mean and risk: mu = (n + 1/2)/r_hat.
Strategy fit_minimal_strategy(double m_hat, double r_hat, unsigned n = 0);

/// Inverse-CDF sampler over the cumulative trapezoid of a strategy density.
class InverseCdfSampler {
public:
    explicit InverseCdfSampler(const Strategy& s);

    /// Quantile for u in (0, 1), linear between grid nodes.
    double quantile(double u) const;
    const GridSpec& grid() const noexcept { return grid_; }

private:
    GridSpec grid_;
    std::vector<double> cdf_;
};

TransactionSample sample_strategy(const Strategy& s, std::size_t count, std::uint64_t seed);

struct CramerRaoReport {
    double bound;      // 1/(n·I_F)
    double empirical;  // variance of the sample-mean estimator across trials
    double ratio;
    std::size_t trials;
    std::uint64_t seed;
    std::size_t n_per_trial;
    double fisher;

    /// empirical ≥ bound·(1 - 3/sqrt(trials))
    bool respects_bound() const;
};

/// Trial t draws from a generator seeded with seed + t.
CramerRaoReport cramer_rao_monte_carlo(const Strategy& s, std::size_t n_per_trial, std::size_t trials,
                                       std::uint64_t seed);

// {"bound", "empirical", "ratio", "trials", "seed"}
nlohmann::json cramer_rao_to_json(const CramerRaoReport& r);

}  // namespace qsd
