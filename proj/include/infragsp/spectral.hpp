#pragma once

// Graph Fourier transform built from the eigendecomposition L = U diag(lambda) U^T
// of an underlying Laplacian.

#include "csv.hpp"
#include "errors.hpp"
#include "graph_model.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace infragsp {

/// Complex-valued vector aligned to vertex order.
struct GraphSignal {
    Eigen::VectorXcd values;
    std::string graph_name;

    std::size_t size() const noexcept { return static_cast<std::size_t>(values.size()); }
};

/// GFT coefficients f~ = U^T f, indexed by harmonic in ascending-eigenvalue order.
struct Spectrum {
    Eigen::VectorXcd coefficients;
    std::string graph_name;

    std::size_t size() const noexcept { return static_cast<std::size_t>(coefficients.size()); }
};

/// Flips the sign of each column so that its entry of largest modulus is
/// positive. Ties (within 1e-10 relative) go to the lowest row index.
inline void normalize_signs(Eigen::MatrixXd& vectors) {
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
        auto col = vectors.col(c);
        const double peak = col.cwiseAbs().maxCoeff();
        if (peak == 0.0) continue;
        Eigen::Index pivot = 0;
        for (Eigen::Index r = 0; r < col.size(); ++r) {
            if (std::abs(col(r)) >= peak * (1.0 - 1e-10)) {
                pivot = r;
                break;
            }
        }
        if (col(pivot) < 0.0) col = -col;
    }
}

/// Orthonormal harmonics (columns) and ascending nonnegative eigenvalues.
class GftBasis {
public:
    GftBasis(Eigen::MatrixXd vectors, Eigen::VectorXd eigenvalues, std::size_t zero_count, std::string graph_name)
        : vectors_(std::move(vectors)), eigenvalues_(std::move(eigenvalues)), zero_count_(zero_count),
          graph_name_(std::move(graph_name)) {
        if (vectors_.rows() != vectors_.cols() || vectors_.cols() != eigenvalues_.size())
            throw std::invalid_argument("GftBasis: shape mismatch");
    }

    const Eigen::MatrixXd& vectors() const noexcept { return vectors_; }
    const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
    /// Harmonics whose eigenvalue was clamped to zero (one per connected component).
    std::size_t zero_count() const noexcept { return zero_count_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(eigenvalues_.size()); }
    const std::string& graph_name() const noexcept { return graph_name_; }

private:
    Eigen::MatrixXd vectors_;
    Eigen::VectorXd eigenvalues_;
    std::size_t zero_count_;
    std::string graph_name_;
};

/// Full dense symmetric eigendecomposition.
///
/// Eigenvalues within zero_tolerance * lambda_max of zero are clamped to 0.
/// When the number of such eigenvalues equals the number of connected
/// components, the null-space columns are replaced by the normalized component
/// indicator vectors (ordered by smallest vertex), so the DC harmonic of a
/// connected graph is exactly 1/sqrt(N). Remaining columns follow the sign
/// convention of normalize_signs().
inline GftBasis compute_gft_basis(const UnderlyingLaplacian& l, std::string graph_name = {}) {
    const Eigen::MatrixXd& m = l.matrix();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw NumericalError("eigendecomposition failed for graph '" + graph_name + "'");

    Eigen::VectorXd lambda = solver.eigenvalues();
    Eigen::MatrixXd u = solver.eigenvectors();
    const Eigen::Index n = lambda.size();
    const double lmax = std::max(lambda(n - 1), 0.0);
    const double tol = l.zero_tolerance() * lmax;

    if (lambda(0) < -tol)
        throw NumericalError("Laplacian of graph '" + graph_name + "' is not positive semidefinite (lambda_min = " +
                             csv::format_double(lambda(0)) + ")");

    std::size_t zeros = 0;
    for (Eigen::Index k = 0; k < n; ++k) {
        if (std::abs(lambda(k)) <= tol) {
            lambda(k) = 0.0;
            ++zeros;
        }
    }
    // Eigen returns ascending eigenvalues; clamping keeps the order.

    normalize_signs(u);

    const auto blocks = connected_components(l);
    if (blocks.size() == zeros) {
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            auto col = u.col(static_cast<Eigen::Index>(b));
            col.setZero();
            const double v = 1.0 / std::sqrt(static_cast<double>(blocks[b].size()));
            for (auto vertex : blocks[b]) col(static_cast<Eigen::Index>(vertex)) = v;
        }
    }

    return GftBasis(std::move(u), std::move(lambda), zeros, std::move(graph_name));
}

namespace detail {

inline void require_size(const GftBasis& b, Eigen::Index n, std::string_view op) {
    if (n != static_cast<Eigen::Index>(b.size()))
        throw std::invalid_argument(std::string(op) + ": dimension mismatch (basis " + std::to_string(b.size()) +
                                    ", signal " + std::to_string(n) + ")");
}

/// M^T z for real M and complex z, applied to real and imaginary parts.
inline Eigen::VectorXcd real_transpose_times(const Eigen::MatrixXd& m, const Eigen::VectorXcd& z) {
    Eigen::VectorXd re = m.transpose() * z.real();
    Eigen::VectorXd im = m.transpose() * z.imag();
    Eigen::VectorXcd out(re.size());
    out.real() = re;
    out.imag() = im;
    return out;
}

inline Eigen::VectorXcd real_times(const Eigen::MatrixXd& m, const Eigen::VectorXcd& z) {
    Eigen::VectorXd re = m * z.real();
    Eigen::VectorXd im = m * z.imag();
    Eigen::VectorXcd out(re.size());
    out.real() = re;
    out.imag() = im;
    return out;
}

} // namespace detail

inline Spectrum forward_gft(const GftBasis& b, const GraphSignal& f) {
    detail::require_size(b, f.values.size(), "forward_gft");
    return {detail::real_transpose_times(b.vectors(), f.values), f.graph_name};
}

inline GraphSignal inverse_gft(const GftBasis& b, const Spectrum& s) {
    detail::require_size(b, s.coefficients.size(), "inverse_gft");
    return {detail::real_times(b.vectors(), s.coefficients), s.graph_name};
}

/// |f~_k|^2 per harmonic.
inline Eigen::VectorXd power_spectrum(const Spectrum& s) { return s.coefficients.cwiseAbs2(); }

/// CSV export with columns harmonic_index,eigenvalue,power.
inline void write_spectrum_csv(std::ostream& os, const GftBasis& b, const Eigen::VectorXd& power) {
    detail::require_size(b, power.size(), "write_spectrum_csv");
    csv::write_row(os, {"harmonic_index", "eigenvalue", "power"});
    for (Eigen::Index k = 0; k < power.size(); ++k)
        csv::write_row(os, {std::to_string(k), csv::format_double(b.eigenvalues()(k)), csv::format_double(power(k))});
}

} // namespace infragsp
