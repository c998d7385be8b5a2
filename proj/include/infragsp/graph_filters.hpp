#pragma once

// Spectral-domain graph filters f^ = U diag(h) U^T f.

#include "spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace infragsp {

/// Real per-harmonic gains, stored in the spectral domain only.
class FilterResponse {
public:
    explicit FilterResponse(Eigen::VectorXd gains) : gains_(std::move(gains)) {
        for (Eigen::Index k = 0; k < gains_.size(); ++k)
            if (!std::isfinite(gains_(k)) || gains_(k) < 0.0)
                throw std::invalid_argument("FilterResponse: gains must be finite and nonnegative");
    }

    const Eigen::VectorXd& gains() const noexcept { return gains_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(gains_.size()); }

private:
    Eigen::VectorXd gains_;
};

inline GraphSignal apply_filter(const GftBasis& b, const FilterResponse& h, const GraphSignal& f) {
    detail::require_size(b, f.values.size(), "apply_filter");
    detail::require_size(b, h.gains().size(), "apply_filter");
    Spectrum s = forward_gft(b, f);
    s.coefficients = s.coefficients.cwiseProduct(h.gains().cast<Complex>());
    return inverse_gft(b, s);
}

/// Gains 1 on the lowest `cutoff_count` harmonics, 0 above.
inline FilterResponse lowpass_filter(const GftBasis& b, std::size_t cutoff_count) {
    if (cutoff_count < 1 || cutoff_count > b.size())
        throw std::invalid_argument("lowpass_filter: cutoff " + std::to_string(cutoff_count) + " outside [1, " +
                                    std::to_string(b.size()) + "]");
    Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(b.size()));
    g.head(static_cast<Eigen::Index>(cutoff_count)).setOnes();
    return FilterResponse(std::move(g));
}

/// 1 - h entrywise; requires gains in [0, 1].
inline FilterResponse highpass_complement(const FilterResponse& lowpass) {
    if (lowpass.gains().size() > 0 && lowpass.gains().maxCoeff() > 1.0)
        throw std::invalid_argument("highpass_complement: gains must lie in [0, 1]");
    return FilterResponse(Eigen::VectorXd::Ones(lowpass.gains().size()) - lowpass.gains());
}

/// Tikhonov/TV-regularization gains (1 + 2 alpha lambda_k)^-1.
inline FilterResponse tv_regularization_filter(const GftBasis& b, double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("tv_regularization_filter: alpha must be finite and >= 0");
    Eigen::VectorXd g = (1.0 + 2.0 * alpha * b.eigenvalues().array()).inverse().matrix();
    return FilterResponse(std::move(g));
}

} // namespace infragsp
