#include "qsd/estimation.hpp"

#include "qsd/errors.hpp"
#include "qsd/fisher.hpp"
#include "qsd/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string_view>

namespace qsd {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

std::vector<double> TransactionSample::log_prices() const {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(r.log_price);
    return out;
}

TransactionSample TransactionSample::filter(Side side) const {
    TransactionSample out{{}, source + (side == Side::buy ? "[buy]" : "[sell]")};
    for (const auto& r : records) {
        if (r.side == side) out.records.push_back(r);
    }
    return out;
}

TransactionSample parse_transactions(std::istream& in, const std::string& source) {
    std::string line;
    if (!std::getline(in, line)) throw EmptyInput("transaction input is empty");
    if (trim(line) != "log_price,side") {
        throw InvalidArgument("expected header 'log_price,side', got '" + std::string(trim(line)) + "'");
    }

    TransactionSample sample{{}, source};
    std::vector<RowIssue> issues;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        const auto text = trim(line);
        if (text.empty()) continue;
        ++row;
        const auto comma = text.find(',');
        if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
            issues.push_back({row, "expected 2 fields"});
            continue;
        }
        const auto price_text = trim(text.substr(0, comma));
        const auto side_text = trim(text.substr(comma + 1));
        double price = 0.0;
        const auto [ptr, ec] = std::from_chars(price_text.data(), price_text.data() + price_text.size(), price);
        if (ec != std::errc{} || ptr != price_text.data() + price_text.size() || !std::isfinite(price)) {
            issues.push_back({row, "log_price '" + std::string(price_text) + "' is not a finite number"});
            continue;
        }
        Side side;
        if (side_text == "buy") {
            side = Side::buy;
        } else if (side_text == "sell") {
            side = Side::sell;
        } else {
            issues.push_back({row, "side '" + std::string(side_text) + "' is not buy or sell"});
            continue;
        }
        sample.records.push_back({price, side});
    }
    if (!issues.empty()) throw MalformedRow(std::move(issues));
    if (sample.records.empty()) throw EmptyInput("transaction input has a header but no records");
    return sample;
}

MomentEstimate estimate_moments(const TransactionSample& s) {
    const std::size_t n = s.records.size();
    if (n < 2) throw TooFewRecords("moment estimation needs at least 2 records, got " + std::to_string(n));
    double mean = 0.0;
    for (const auto& r : s.records) mean += r.log_price;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (const auto& r : s.records) ss += (r.log_price - mean) * (r.log_price - mean);
    const double risk = ss / static_cast<double>(n - 1);
    return {mean, risk, n, std::sqrt(risk / static_cast<double>(n))};
}

Strategy fit_minimal_strategy(double m_hat, double r_hat, unsigned n) {
    if (!std::isfinite(r_hat) || !(r_hat > 0.0)) {
        throw DegenerateRisk("risk estimate must be positive, got " + std::to_string(r_hat));
    }
    if (!std::isfinite(m_hat)) throw InvalidArgument("mean estimate must be finite");
    return Strategy::pure(n, (n + 0.5) / r_hat, m_hat);
}

InverseCdfSampler::InverseCdfSampler(const Strategy& s) : grid_(default_grid(s)) {
    const auto pdf = strategy_pdf(s, grid_);
    cdf_ = cumulative_trapezoid(pdf.values(), grid_.step());
    const double total = cdf_.back();
    for (double& c : cdf_) c /= total;
    cdf_.back() = 1.0;
}

double InverseCdfSampler::quantile(double u) const {
    const auto it = std::upper_bound(cdf_.begin() + 1, cdf_.end() - 1, u);
    const auto j = static_cast<std::size_t>(it - cdf_.begin());
    const std::size_t i = j - 1;
    const double t = (u - cdf_[i]) / (cdf_[j] - cdf_[i]);
    return grid_.node(i) + std::clamp(t, 0.0, 1.0) * grid_.step();
}

TransactionSample sample_strategy(const Strategy& s, std::size_t count, std::uint64_t seed) {
    if (count < 1) throw InvalidArgument("sample count must be at least 1");
    const InverseCdfSampler sampler(s);
    Rng rng(seed);
    TransactionSample out;
    out.source = std::string("inverse-cdf(cumulative trapezoid, linear) ") + Rng::algorithm() +
                 " seed=" + std::to_string(seed) + " points=" + std::to_string(sampler.grid().points());
    out.records.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double x = sampler.quantile(rng.uniform());
        out.records.push_back({x, rng.coin() ? Side::buy : Side::sell});
    }
    return out;
}

bool CramerRaoReport::respects_bound() const {
    return empirical >= bound * (1.0 - 3.0 / std::sqrt(static_cast<double>(trials)));
}

CramerRaoReport cramer_rao_monte_carlo(const Strategy& s, std::size_t n_per_trial, std::size_t trials,
                                       std::uint64_t seed) {
    if (trials < 100) throw InvalidArgument("Cramer-Rao check needs at least 100 trials");
    if (n_per_trial < 1) throw InvalidArgument("samples per trial must be at least 1");

    const double fisher = s.pure_index() ? fisher_information_closed(s).value
                                         : fisher_information_grid(strategy_pdf(s)).value;
    const InverseCdfSampler sampler(s);

    std::vector<double> estimates(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(seed + t);
        double sum = 0.0;
        for (std::size_t i = 0; i < n_per_trial; ++i) sum += sampler.quantile(rng.uniform());
        estimates[t] = sum / static_cast<double>(n_per_trial);
    }
    double mean = 0.0;
    for (double e : estimates) mean += e;
    mean /= static_cast<double>(trials);
    double ss = 0.0;
    for (double e : estimates) ss += (e - mean) * (e - mean);
    const double empirical = ss / static_cast<double>(trials - 1);
    const double bound = 1.0 / (static_cast<double>(n_per_trial) * fisher);
    return {bound, empirical, empirical / bound, trials, seed, n_per_trial, fisher};
}

nlohmann::json cramer_rao_to_json(const CramerRaoReport& r) {
    return {{"bound", r.bound}, {"empirical", r.empirical}, {"ratio", r.ratio}, {"trials", r.trials},
            {"seed", r.seed}};
}

}  // namespace qsd
