#pragma once

// Data-driven edge-weight search: keep the topology fixed and look for
// weights under which a corpus of signals is more low-pass compressible.

#include "errors.hpp"
#include "graph_model.hpp"
#include "rng.hpp"
#include "signal_metrics.hpp"
#include "spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <thread>
#include <vector>

namespace infragsp {

enum class SearchObjective {
    mean_lp_ratio,       ///< minimize mean mean-removed low-pass ratio at the threshold
    mean_lowband_energy, ///< maximize mean energy share in the first K non-DC harmonics
};

inline std::string_view to_string(SearchObjective o) {
    return o == SearchObjective::mean_lp_ratio ? "mean_lp_ratio" : "mean_lowband_energy";
}

struct SearchConfig {
    std::size_t iterations = 500;
    std::uint64_t rng_seed = 0;
    double weight_lo = 1e-2;
    double weight_hi = 1e2;
    double objective_threshold = 0.9;
    SearchObjective objective = SearchObjective::mean_lp_ratio;
    /// K for mean_lowband_energy; defaults to ceil(0.1 N).
    std::optional<std::size_t> lowband_count;
    /// One eigendecomposition per iteration; larger graphs need an explicit raise.
    std::size_t max_vertices = 512;
    /// Parallel candidate evaluation; 0 = hardware concurrency. Does not change results.
    unsigned threads = 1;

    bool minimizes() const noexcept { return objective == SearchObjective::mean_lp_ratio; }

    void validate() const {
        if (iterations < 1) throw std::invalid_argument("SearchConfig: iterations must be >= 1");
        if (!(weight_lo > 0.0) || !(weight_hi > weight_lo))
            throw std::invalid_argument("SearchConfig: need 0 < weight_lo < weight_hi");
        if (!(objective_threshold > 0.0 && objective_threshold < 1.0))
            throw std::invalid_argument("SearchConfig: objective_threshold must lie in (0, 1)");
        if (lowband_count && *lowband_count == 0) throw std::invalid_argument("SearchConfig: lowband_count must be positive");
    }
};

struct SearchResult {
    std::vector<double> best_weights;
    double best_objective = 0.0;
    double initial_objective = 0.0;
    /// Best-so-far objective after the baseline (index 0) and each iteration.
    std::vector<double> trajectory;
    std::size_t accepted = 0;
    bool connected = true;
};

/// Real and imaginary parts of a signal corpus, one column per signal.
class SignalCorpus {
public:
    SignalCorpus(std::span<const GraphSignal> signals, std::size_t vertex_count) {
        if (signals.empty()) throw DegenerateSignalError("signal corpus is empty");
        const auto n = static_cast<Eigen::Index>(vertex_count);
        re_.resize(n, static_cast<Eigen::Index>(signals.size()));
        im_.resize(n, static_cast<Eigen::Index>(signals.size()));
        for (std::size_t j = 0; j < signals.size(); ++j) {
            if (signals[j].values.size() != n) throw std::invalid_argument("SignalCorpus: signal length mismatch");
            re_.col(static_cast<Eigen::Index>(j)) = signals[j].values.real();
            im_.col(static_cast<Eigen::Index>(j)) = signals[j].values.imag();
        }
    }

    const Eigen::MatrixXd& real() const noexcept { return re_; }
    const Eigen::MatrixXd& imag() const noexcept { return im_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(re_.cols()); }

    /// Per-harmonic power, one column per signal.
    Eigen::MatrixXd power(const GftBasis& b) const {
        const Eigen::MatrixXd ur = b.vectors().transpose() * re_;
        const Eigen::MatrixXd ui = b.vectors().transpose() * im_;
        return ur.cwiseAbs2() + ui.cwiseAbs2();
    }

private:
    Eigen::MatrixXd re_;
    Eigen::MatrixXd im_;
};

/// Mean over signals of the configured objective, computed on the harmonics
/// above the zero-eigenvalue ones. Pure-DC signals are skipped; a corpus with
/// no usable signal throws DegenerateSignalError.
inline double objective_value(const GftBasis& b, const SignalCorpus& corpus, const SearchConfig& cfg) {
    const Eigen::MatrixXd power = corpus.power(b);
    const auto n = static_cast<Eigen::Index>(b.size());
    const auto skip = static_cast<Eigen::Index>(b.zero_count());
    const Eigen::Index rest = n - skip;
    const std::size_t band = cfg.lowband_count.value_or(static_cast<std::size_t>(std::ceil(0.1 * static_cast<double>(n))));

    double sum = 0.0;
    std::size_t used = 0;
    for (Eigen::Index j = 0; j < power.cols(); ++j) {
        const double energy = power.col(j).sum();
        if (rest == 0) break;
        const Eigen::VectorXd residual = power.col(j).tail(rest);
        const double res_energy = residual.sum();
        if (!(res_energy > 1e-14 * energy)) continue;
        if (cfg.objective == SearchObjective::mean_lp_ratio) {
            sum += static_cast<double>(lowpass_compressibility(residual, cfg.objective_threshold)) /
                   static_cast<double>(n);
        } else {
            const auto k = std::min<Eigen::Index>(static_cast<Eigen::Index>(band), rest);
            sum += residual.head(k).sum() / res_energy;
        }
        ++used;
    }
    if (used == 0) throw DegenerateSignalError("objective_value: every signal is pure DC on this graph");
    return sum / static_cast<double>(used);
}

/// Objective for `weights` on `topology` (weights replace the stored ones).
inline double objective_value(std::span<const double> weights, const InfraGraph& topology, const SignalCorpus& corpus,
                              const SearchConfig& cfg) {
    for (double w : weights)
        if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("objective_value: weights must be positive");
    const InfraGraph g = topology.with_weights(weights);
    return objective_value(compute_gft_basis(underlying_laplacian(g), g.name()), corpus, cfg);
}

/// Pure random search. The baseline is a constant weighting (the unweighted
/// graph up to scale, which leaves every basis unchanged); iteration i draws
/// each edge weight log-uniformly in [lo, hi] from substream i of the seed and
/// replaces the incumbent only on strict improvement.
inline SearchResult random_search(const InfraGraph& topology, std::span<const GraphSignal> signals,
                                  const SearchConfig& cfg) {
    cfg.validate();
    if (topology.vertex_count() > cfg.max_vertices)
        throw std::invalid_argument("random_search: graph has " + std::to_string(topology.vertex_count()) +
                                    " vertices, above the configured cap of " + std::to_string(cfg.max_vertices));
    if (topology.edge_count() == 0) throw std::invalid_argument("random_search: graph has no edges");
    const SignalCorpus corpus(signals, topology.vertex_count());
    const std::size_t m = topology.edge_count();

    SearchResult res;
    res.connected = connected_components(topology).size() == 1;

    const double base_w = std::clamp(1.0, cfg.weight_lo, cfg.weight_hi);
    res.best_weights.assign(m, base_w);
    res.initial_objective = objective_value(res.best_weights, topology, corpus, cfg);
    res.best_objective = res.initial_objective;
    res.trajectory.reserve(cfg.iterations + 1);
    res.trajectory.push_back(res.best_objective);

    auto draw = [&](std::size_t iteration) {
        Rng rng = Rng::substream(cfg.rng_seed, iteration);
        std::vector<double> w(m);
        for (auto& x : w) x = std::clamp(rng.log_uniform(cfg.weight_lo, cfg.weight_hi), cfg.weight_lo, cfg.weight_hi);
        return w;
    };

    unsigned workers = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
    const std::size_t batch = std::max<std::size_t>(1, workers) * 4;

    std::vector<std::vector<double>> candidates;
    std::vector<double> values;
    for (std::size_t start = 0; start < cfg.iterations; start += batch) {
        const std::size_t count = std::min(batch, cfg.iterations - start);
        candidates.assign(count, {});
        values.assign(count, 0.0);
        auto evaluate = [&](std::size_t i) {
            candidates[i] = draw(start + i);
            values[i] = objective_value(candidates[i], topology, corpus, cfg);
        };
        if (workers <= 1) {
            for (std::size_t i = 0; i < count; ++i) evaluate(i);
        } else {
            std::vector<std::future<void>> jobs;
            for (unsigned w = 0; w < workers; ++w)
                jobs.push_back(std::async(std::launch::async, [&, w] {
                    for (std::size_t i = w; i < count; i += workers) evaluate(i);
                }));
            for (auto& j : jobs) j.get();
        }
        // Sequential acceptance in iteration order.
        for (std::size_t i = 0; i < count; ++i) {
            const bool better = cfg.minimizes() ? values[i] < res.best_objective : values[i] > res.best_objective;
            if (better) {
                res.best_objective = values[i];
                res.best_weights = std::move(candidates[i]);
                ++res.accepted;
            }
            res.trajectory.push_back(res.best_objective);
        }
    }
    return res;
}

} // namespace infragsp
