#pragma once

// Experiment harnesses: Monte Carlo denoising over an alpha sweep, FDI
// detectability of single-vertex injections, and Spearman rank correlation.

#include "errors.hpp"
#include "graph_filters.hpp"
#include "graph_model.hpp"
#include "rng.hpp"
#include "signal_metrics.hpp"
#include "spectral.hpp"

#include <Eigen/Dense>
#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace infragsp {

// ---------------------------------------------------------------------------
// SNR and noise

/// 10 log10(||f||^2 / ||corrupted - f||^2). Returns +infinity when the two
/// signals are identical.
inline double snr_db(const GraphSignal& reference, const GraphSignal& corrupted) {
    if (reference.values.size() != corrupted.values.size())
        throw std::invalid_argument("snr_db: dimension mismatch");
    const double signal = reference.values.squaredNorm();
    if (!(signal > 0.0)) throw DegenerateSignalError("snr_db: zero reference signal");
    const double error = (corrupted.values - reference.values).squaredNorm();
    if (error == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(signal / error);
}

enum class NoiseKind {
    complex_circular, ///< re and im each N(0, sigma^2 / 2)
    real,             ///< real part N(0, sigma^2), imaginary part untouched
};

/// Per-vertex noise variance sigma^2 = ||f||^2 / (N 10^(snr/10)).
inline double noise_variance(const GraphSignal& f, double target_snr_db) {
    const double energy = f.values.squaredNorm();
    if (!(energy > 0.0)) throw DegenerateSignalError("add_white_noise: zero signal");
    return energy / (static_cast<double>(f.values.size()) * std::pow(10.0, target_snr_db / 10.0));
}

inline Eigen::VectorXcd white_noise(Eigen::Index n, double variance, Rng& rng, NoiseKind kind) {
    Eigen::VectorXcd noise(n);
    if (kind == NoiseKind::complex_circular) {
        const double s = std::sqrt(variance / 2.0);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            noise(i) = Complex(s * re, s * im);
        }
    } else {
        const double s = std::sqrt(variance);
        for (Eigen::Index i = 0; i < n; ++i) noise(i) = Complex(s * rng.normal(), 0.0);
    }
    return noise;
}

/// f + n with white Gaussian n scaled so the expected SNR equals target_snr_db.
inline GraphSignal add_white_noise(const GraphSignal& f, double target_snr_db, Rng& rng,
                                   NoiseKind kind = NoiseKind::complex_circular) {
    const double variance = noise_variance(f, target_snr_db);
    if (variance == 0.0) return f;
    return {f.values + white_noise(f.values.size(), variance, rng, kind), f.graph_name};
}

// ---------------------------------------------------------------------------
// Denoising

/// `count` logarithmically spaced values in [lo, hi]; count == 1 gives {lo}.
inline std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi >= lo) || count == 0) throw std::invalid_argument("log_spaced: need 0 < lo <= hi, count >= 1");
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    const double a = std::log10(lo), b = std::log10(hi);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

struct DenoiseConfig {
    double snr_db = 20.0;
    std::size_t trials = 25;
    std::vector<double> alpha_grid = log_spaced(0.01, 10.0, 50);
    std::uint64_t rng_seed = 0;
    double lowpass_threshold = 0.999;
    NoiseKind noise = NoiseKind::complex_circular;
    /// Worker threads for the trial loop; 0 = hardware concurrency. Results do
    /// not depend on this value.
    unsigned threads = 1;

    void validate() const {
        if (trials < 1) throw std::invalid_argument("DenoiseConfig: trials must be >= 1");
        if (alpha_grid.empty()) throw std::invalid_argument("DenoiseConfig: empty alpha grid");
        for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
            if (!(alpha_grid[i] > 0.0)) throw std::invalid_argument("DenoiseConfig: alpha values must be positive");
            if (i && !(alpha_grid[i] > alpha_grid[i - 1]))
                throw std::invalid_argument("DenoiseConfig: alpha grid must be strictly ascending");
        }
    }
};

struct DenoiseResult {
    std::vector<double> alphas;
    std::vector<double> mean_gain_db; ///< per alpha, averaged over trials
    double best_alpha = 0.0;
    double best_gain_db = 0.0;
    double lp_gain_db = 0.0;          ///< h_LP at the configured low-pass threshold
    std::size_t lp_cutoff = 0;
    double mean_input_snr_db = 0.0;
    double tv_normalized = 0.0;       ///< of the clean signal
};

namespace detail {

struct TrialGains {
    std::vector<double> alpha_gain;
    double lp_gain = 0.0;
    double input_snr = 0.0;
};

/// One paired trial: a single noise draw shared by every filter. Errors are
/// measured in the spectral domain, which equals the vertex-domain error
/// because U is orthogonal.
inline TrialGains denoise_trial(const GftBasis& b, const Spectrum& clean, double signal_energy,
                                const std::vector<Eigen::VectorXd>& alpha_gains, const Eigen::VectorXd& lp_gains,
                                double variance, const DenoiseConfig& cfg, std::uint64_t trial) {
    Rng rng = Rng::substream(cfg.rng_seed, trial);
    const Eigen::VectorXcd noise = white_noise(clean.coefficients.size(), variance, rng, cfg.noise);
    // The noise is drawn in the vertex domain and transformed like the signal.
    const Eigen::VectorXcd noise_spec = real_transpose_times(b.vectors(), noise);
    const Eigen::VectorXcd noisy = clean.coefficients + noise_spec;

    TrialGains out;
    out.input_snr = 10.0 * std::log10(signal_energy / noise.squaredNorm());
    auto gain_of = [&](const Eigen::VectorXd& h) {
        const double err = (noisy.cwiseProduct(h.cast<Complex>()) - clean.coefficients).squaredNorm();
        const double out_snr = err == 0.0 ? std::numeric_limits<double>::infinity()
                                          : 10.0 * std::log10(signal_energy / err);
        return out_snr - out.input_snr;
    };
    out.alpha_gain.reserve(alpha_gains.size());
    for (const auto& h : alpha_gains) out.alpha_gain.push_back(gain_of(h));
    out.lp_gain = gain_of(lp_gains);
    return out;
}

} // namespace detail

/// Paired-design Monte Carlo: each trial draws one noise realization (from the
/// trial's own substream) and evaluates every h_alpha and h_LP on it. Output is
/// bit-identical for a given seed regardless of cfg.threads.
inline DenoiseResult denoise_experiment(const GftBasis& b, const UnderlyingLaplacian& l, const GraphSignal& f,
                                        const DenoiseConfig& cfg) {
    cfg.validate();
    detail::require_size(b, f.values.size(), "denoise_experiment");
    const Spectrum clean = forward_gft(b, f);
    const double energy = f.values.squaredNorm();
    const double variance = noise_variance(f, cfg.snr_db);

    DenoiseResult res;
    res.alphas = cfg.alpha_grid;
    res.lp_cutoff = lowpass_compressibility(clean, cfg.lowpass_threshold);
    res.tv_normalized = total_variation(l, f) / energy;

    std::vector<Eigen::VectorXd> alpha_gains;
    alpha_gains.reserve(cfg.alpha_grid.size());
    for (double a : cfg.alpha_grid) alpha_gains.push_back(tv_regularization_filter(b, a).gains());
    const Eigen::VectorXd lp = lowpass_filter(b, res.lp_cutoff).gains();

    std::vector<detail::TrialGains> trials(cfg.trials);
    unsigned workers = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, cfg.trials));
    if (workers <= 1) {
        for (std::size_t t = 0; t < cfg.trials; ++t)
            trials[t] = detail::denoise_trial(b, clean, energy, alpha_gains, lp, variance, cfg, t);
    } else {
        std::vector<std::future<void>> jobs;
        for (unsigned w = 0; w < workers; ++w) {
            jobs.push_back(std::async(std::launch::async, [&, w] {
                for (std::size_t t = w; t < cfg.trials; t += workers)
                    trials[t] = detail::denoise_trial(b, clean, energy, alpha_gains, lp, variance, cfg, t);
            }));
        }
        for (auto& j : jobs) j.get();
    }

    // Reduce in trial order so the sums do not depend on scheduling.
    res.mean_gain_db.assign(cfg.alpha_grid.size(), 0.0);
    for (const auto& t : trials) {
        for (std::size_t i = 0; i < t.alpha_gain.size(); ++i) res.mean_gain_db[i] += t.alpha_gain[i];
        res.lp_gain_db += t.lp_gain;
        res.mean_input_snr_db += t.input_snr;
    }
    const double n = static_cast<double>(cfg.trials);
    for (auto& g : res.mean_gain_db) g /= n;
    res.lp_gain_db /= n;
    res.mean_input_snr_db /= n;

    auto best = std::max_element(res.mean_gain_db.begin(), res.mean_gain_db.end());
    res.best_gain_db = *best;
    res.best_alpha = res.alphas[static_cast<std::size_t>(best - res.mean_gain_db.begin())];
    return res;
}

// ---------------------------------------------------------------------------
// FDI detectability

/// Linear-interpolation quantile of sorted data (position p (n - 1)).
inline double quantile_sorted(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) throw std::invalid_argument("quantile_sorted: empty input");
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

struct FdiDetectability {
    Eigen::VectorXd norms; ///< ||U diag(h) U^T delta_k|| per vertex k
    double median = 0.0;
    double q25 = 0.0;
    double q75 = 0.0;
    double min = 0.0;
    double max = 0.0;
};

/// Filtered energy of each unit injection delta_k under a binary high-pass
/// filter. ||U diag(h) U^T delta_k||^2 = sum_j h_j U_kj^2 since h_j^2 = h_j.
inline FdiDetectability fdi_detectability(const GftBasis& b, const FilterResponse& highpass) {
    detail::require_size(b, highpass.gains().size(), "fdi_detectability");
    for (Eigen::Index k = 0; k < highpass.gains().size(); ++k) {
        const double g = highpass.gains()(k);
        if (g != 0.0 && g != 1.0) throw std::invalid_argument("fdi_detectability: gains must be 0 or 1");
    }
    FdiDetectability out;
    const Eigen::MatrixXd& u = b.vectors();
    out.norms = (u.array().square().matrix() * highpass.gains()).cwiseMax(0.0).cwiseSqrt();

    std::vector<double> sorted(out.norms.begin(), out.norms.end());
    std::sort(sorted.begin(), sorted.end());
    out.min = sorted.front();
    out.max = sorted.back();
    const std::size_t n = sorted.size();
    out.median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    out.q25 = quantile_sorted(sorted, 0.25);
    out.q75 = quantile_sorted(sorted, 0.75);
    return out;
}

// ---------------------------------------------------------------------------
// Spearman rank correlation

/// 1-based ranks with ties replaced by their average rank.
inline std::vector<double> average_ranks(const std::vector<double>& x) {
    std::vector<std::size_t> idx(x.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(x.size());
    std::size_t i = 0;
    while (i < idx.size()) {
        std::size_t j = i;
        while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
        i = j + 1;
    }
    return ranks;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) throw InputError("correlation undefined for a constant input vector");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

enum class PValueMethod {
    t_approximation,    ///< Student t with n - 2 degrees of freedom
    exact_permutation,  ///< all n! rank permutations; n <= 10 only
};

struct CorrelationResult {
    double r_s = 0.0;
    double p_value = 1.0;
    std::size_t n = 0;
};

/// Two-sided p from t = r sqrt((n - 2) / (1 - r^2)). A perfect correlation
/// has t = infinity; its p is reported as the smallest positive normal double
/// rather than 0.
inline double spearman_t_pvalue(double r, std::size_t n) {
    const double df = static_cast<double>(n - 2);
    const double denom = 1.0 - r * r;
    if (denom <= 0.0) return std::numeric_limits<double>::min();
    const double t = r * std::sqrt(df / denom);
    boost::math::students_t dist(df);
    const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
    return std::clamp(p, std::numeric_limits<double>::min(), 1.0);
}

/// Fraction of the n! permutations of y's ranks with |r| >= |r_observed|.
inline double spearman_exact_pvalue(const std::vector<double>& rx, const std::vector<double>& ry, double r_observed) {
    const std::size_t n = rx.size();
    if (n > 10) throw std::invalid_argument("exact permutation p-value is limited to n <= 10");
    const double nd = static_cast<double>(n);
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / nd;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / nd;
    std::vector<double> cx(n), cy(n);
    double sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cx[i] = rx[i] - mx;
        cy[i] = ry[i] - my;
        sxx += cx[i] * cx[i];
        syy += cy[i] * cy[i];
    }
    const double scale = std::sqrt(sxx * syy);
    const double bound = std::abs(r_observed) - 1e-12;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::uint64_t hits = 0, total = 0;
    do {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += cx[i] * cy[perm[i]];
        if (std::abs(s / scale) >= bound) ++hits;
        ++total;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return static_cast<double>(hits) / static_cast<double>(total);
}

/// Spearman r_s = Pearson correlation of average ranks.
inline CorrelationResult spearman(const std::vector<double>& x, const std::vector<double>& y,
                                  PValueMethod method = PValueMethod::t_approximation) {
    if (x.size() != y.size()) throw std::invalid_argument("spearman: inputs differ in length");
    if (x.size() < 3) throw std::invalid_argument("spearman: need at least 3 samples");
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    CorrelationResult out;
    out.n = x.size();
    out.r_s = pearson(rx, ry);
    out.p_value = method == PValueMethod::exact_permutation ? spearman_exact_pvalue(rx, ry, out.r_s)
                                                            : spearman_t_pvalue(out.r_s, out.n);
    return out;
}

} // namespace infragsp
