#pragma once

// Suitability metrics for graph signals: total variation, low-pass and
// general compressibility, and their mean-removed variants.

#include "csv.hpp"
#include "errors.hpp"
#include "graph_model.hpp"
#include "spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace infragsp {

inline const std::vector<double> default_thresholds{0.9, 0.999};

/// Counts at one energy threshold. Ratios divide by the full vertex count N.
struct ThresholdCounts {
    double threshold = 0.0;
    std::size_t lp_count = 0;
    double lp_ratio = 0.0;
    std::size_t gen_count = 0;
    double gen_ratio = 0.0;
};

struct SpectralMetrics {
    double tv = 0.0;
    double tv_normalized = 0.0;
    std::vector<ThresholdCounts> full;
    /// Present when requested and the signal has energy outside the DC harmonics.
    std::optional<std::vector<ThresholdCounts>> mean_removed;
    /// Set when mean-removed metrics were requested but the signal is pure DC.
    bool mean_removed_degenerate = false;
};

/// f^H L f = sum over edges A_kl |f_k - f_l|^2, evaluated as the edge sum
/// (from the off-diagonal of L) so that constants give exactly 0.
inline double total_variation(const UnderlyingLaplacian& l, const GraphSignal& f) {
    if (f.values.size() != static_cast<Eigen::Index>(l.size()))
        throw std::invalid_argument("total_variation: dimension mismatch");
    const Eigen::MatrixXd& m = l.matrix();
    double tv = 0.0;
    for (Eigen::Index c = 1; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < c; ++r)
            if (m(r, c) != 0.0) tv -= m(r, c) * std::norm(f.values(r) - f.values(c));
    return tv;
}

namespace detail {

inline void check_threshold(double t) {
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("compressibility threshold must lie in (0, 1)");
}

/// Smallest prefix of `energies` (in the given order) reaching threshold * total.
/// Relative slack of 1e-12 absorbs summation round-off at exact thresholds.
template <class Seq>
std::size_t prefix_count(const Seq& energies, double total, double threshold) {
    const double target = threshold * total - 1e-12 * total;
    double acc = 0.0;
    std::size_t k = 0;
    for (double e : energies) {
        acc += e;
        ++k;
        if (acc >= target) return k;
    }
    return k;
}

inline double checked_total(const Eigen::VectorXd& power, const char* op) {
    const double total = power.sum();
    if (!(total > 0.0)) throw DegenerateSignalError(std::string(op) + ": zero signal");
    return total;
}

} // namespace detail

/// Smallest K with sum_{k<K} power_k >= threshold * total (ascending frequency).
inline std::size_t lowpass_compressibility(const Eigen::VectorXd& power, double threshold) {
    detail::check_threshold(threshold);
    const double total = detail::checked_total(power, "lowpass_compressibility");
    return detail::prefix_count(std::vector<double>(power.begin(), power.end()), total, threshold);
}

inline std::size_t lowpass_compressibility(const Spectrum& s, double threshold) {
    return lowpass_compressibility(power_spectrum(s), threshold);
}

/// Fewest harmonics of any frequency capturing threshold * total energy.
/// Harmonics are taken by descending energy, ties by ascending index.
inline std::size_t general_compressibility(const Eigen::VectorXd& power, double threshold) {
    detail::check_threshold(threshold);
    const double total = detail::checked_total(power, "general_compressibility");
    std::vector<double> sorted(power.begin(), power.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](double a, double b) { return a > b; });
    return detail::prefix_count(sorted, total, threshold);
}

inline std::size_t general_compressibility(const Spectrum& s, double threshold) {
    return general_compressibility(power_spectrum(s), threshold);
}

/// Counts for several thresholds; `ratio_denominator` is normally N.
inline std::vector<ThresholdCounts> compressibility_counts(const Eigen::VectorXd& power,
                                                           const std::vector<double>& thresholds,
                                                           std::size_t ratio_denominator) {
    std::vector<ThresholdCounts> out;
    out.reserve(thresholds.size());
    const double n = static_cast<double>(ratio_denominator);
    for (double t : thresholds) {
        ThresholdCounts c;
        c.threshold = t;
        c.lp_count = lowpass_compressibility(power, t);
        c.gen_count = general_compressibility(power, t);
        c.lp_ratio = static_cast<double>(c.lp_count) / n;
        c.gen_ratio = static_cast<double>(c.gen_count) / n;
        out.push_back(c);
    }
    return out;
}

/// Power of the harmonics above the zero-eigenvalue ones, in ascending order.
inline Eigen::VectorXd residual_power(const GftBasis& b, const Spectrum& s) {
    detail::require_size(b, s.coefficients.size(), "residual_power");
    const auto skip = static_cast<Eigen::Index>(b.zero_count());
    return power_spectrum(s).tail(s.coefficients.size() - skip);
}

/// Compressibility of the perturbation from the component means: the DC
/// harmonics leave both the candidate set and the energy total. Ratios still
/// divide by N. Throws DegenerateSignalError for a pure-DC signal.
inline std::vector<ThresholdCounts> mean_removed_metrics(const GftBasis& b, const Spectrum& s,
                                                         const std::vector<double>& thresholds = default_thresholds) {
    const Eigen::VectorXd residual = residual_power(b, s);
    const double energy = s.coefficients.squaredNorm();
    if (residual.size() == 0 || !(residual.sum() > 1e-14 * energy))
        throw DegenerateSignalError("mean_removed_metrics: signal has no energy outside the DC harmonics");
    return compressibility_counts(residual, thresholds, b.size());
}

inline SpectralMetrics metrics_report(const UnderlyingLaplacian& l, const GftBasis& b, const GraphSignal& f,
                                      const std::vector<double>& thresholds = default_thresholds,
                                      bool with_mean_removed = true) {
    SpectralMetrics m;
    const Spectrum s = forward_gft(b, f);
    const Eigen::VectorXd power = power_spectrum(s);
    m.full = compressibility_counts(power, thresholds, b.size());
    m.tv = total_variation(l, f);
    m.tv_normalized = m.tv / f.values.squaredNorm();
    if (with_mean_removed) {
        try {
            m.mean_removed = mean_removed_metrics(b, s, thresholds);
        } catch (const DegenerateSignalError&) {
            m.mean_removed_degenerate = true;
        }
    }
    return m;
}

/// Column label for a threshold: 0.9 -> "90", 0.999 -> "999".
inline std::string threshold_label(double t) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", t * 100.0);
    std::string s(buf);
    s.erase(std::remove(s.begin(), s.end(), '.'), s.end());
    return s;
}

/// Per-network facts that accompany a metrics row.
struct NetworkSummary {
    std::string name;
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;
    double generation_fraction = 0.0;
};

inline std::vector<std::string> metrics_csv_header(const std::vector<double>& thresholds, bool with_mean_removed) {
    std::vector<std::string> h{"name", "N", "M", "gen_fraction", "tv", "tv_norm"};
    auto add = [&](const std::string& prefix) {
        for (double t : thresholds) {
            const auto lbl = threshold_label(t);
            h.push_back(prefix + "lp" + lbl);
            h.push_back(prefix + "lp" + lbl + "_ratio");
            h.push_back(prefix + "gen" + lbl);
            h.push_back(prefix + "gen" + lbl + "_ratio");
        }
    };
    add("");
    if (with_mean_removed) {
        h.push_back("mr_degenerate");
        add("mr_");
    }
    return h;
}

inline std::vector<std::string> metrics_csv_row(const NetworkSummary& net, const SpectralMetrics& m,
                                                bool with_mean_removed) {
    using csv::format_double;
    std::vector<std::string> r{net.name, std::to_string(net.vertex_count), std::to_string(net.edge_count),
                               format_double(net.generation_fraction), format_double(m.tv),
                               format_double(m.tv_normalized)};
    auto add = [&](const std::vector<ThresholdCounts>& counts) {
        for (const auto& c : counts) {
            r.push_back(std::to_string(c.lp_count));
            r.push_back(format_double(c.lp_ratio));
            r.push_back(std::to_string(c.gen_count));
            r.push_back(format_double(c.gen_ratio));
        }
    };
    add(m.full);
    if (with_mean_removed) {
        r.push_back(m.mean_removed_degenerate ? "1" : "0");
        if (m.mean_removed) {
            add(*m.mean_removed);
        } else {
            for (std::size_t i = 0; i < 4 * m.full.size(); ++i) r.push_back("");
        }
    }
    return r;
}

} // namespace infragsp
