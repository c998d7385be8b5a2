#pragma once

// Weighted infrastructure graphs and the matrices derived from them:
// adjacency, weighted incidence, underlying (max-modulus) adjacency and the
// real symmetric Laplacian built from it.

#include "errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace infragsp {

using Complex = std::complex<double>;

/// One stored edge. Direction (tail -> head) is an arbitrary fixed orientation.
struct Edge {
    std::size_t tail = 0;
    std::size_t head = 0;
    Complex weight{1.0, 0.0};
};

/// Vertex-indexed topology with complex edge weights. Immutable once built.
///
/// Construction enforces: vertex indices in [0, N), no self-loops, at most
/// one edge per unordered vertex pair, and finite nonzero weights.
class InfraGraph {
public:
    InfraGraph(std::size_t vertex_count, std::vector<Edge> edges, std::string name = {})
        : vertex_count_(vertex_count), edges_(std::move(edges)), name_(std::move(name)) {
        validate();
    }

    std::size_t vertex_count() const noexcept { return vertex_count_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::string& name() const noexcept { return name_; }

    /// Same topology and orientation, new real positive weights (one per edge).
    InfraGraph with_weights(std::span<const double> weights) const {
        if (weights.size() != edges_.size())
            throw std::invalid_argument("with_weights: expected one weight per edge");
        std::vector<Edge> e = edges_;
        for (std::size_t i = 0; i < e.size(); ++i) e[i].weight = Complex(weights[i], 0.0);
        return InfraGraph(vertex_count_, std::move(e), name_);
    }

private:
    void validate() const {
        if (vertex_count_ == 0) throw std::invalid_argument("InfraGraph: vertex_count must be positive");
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        pairs.reserve(edges_.size());
        for (const auto& e : edges_) {
            if (e.tail >= vertex_count_ || e.head >= vertex_count_)
                throw std::invalid_argument("InfraGraph '" + name_ + "': edge endpoint out of range");
            if (e.tail == e.head)
                throw std::invalid_argument("InfraGraph '" + name_ + "': self-loop at vertex " +
                                            std::to_string(e.tail));
            double m = std::abs(e.weight);
            if (!(m > 0.0) || !std::isfinite(m))
                throw std::invalid_argument("InfraGraph '" + name_ + "': edge weight must be finite and nonzero");
            pairs.emplace_back(std::min(e.tail, e.head), std::max(e.tail, e.head));
        }
        std::sort(pairs.begin(), pairs.end());
        if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end())
            throw std::invalid_argument("InfraGraph '" + name_ + "': duplicate edge between a vertex pair");
    }

    std::size_t vertex_count_;
    std::vector<Edge> edges_;
    std::string name_;
};

/// Real symmetric PSD Laplacian L = D - A^(|u|).
class UnderlyingLaplacian {
public:
    static constexpr double default_zero_tolerance = 1e-9;

    /// Wraps an existing matrix after checking the Laplacian invariants
    /// (square, symmetric, nonpositive off-diagonals, zero row sums).
    static UnderlyingLaplacian from_matrix(Eigen::MatrixXd m, double zero_tolerance = default_zero_tolerance) {
        if (m.rows() != m.cols() || m.rows() == 0)
            throw std::invalid_argument("UnderlyingLaplacian: matrix must be square and nonempty");
        if (zero_tolerance < 0.0) throw std::invalid_argument("UnderlyingLaplacian: negative zero_tolerance");
        const double dmax = std::max(m.diagonal().maxCoeff(), 0.0);
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (m(i, i) < 0.0) throw std::invalid_argument("UnderlyingLaplacian: negative diagonal entry");
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                if (i != j && m(i, j) > 0.0)
                    throw std::invalid_argument("UnderlyingLaplacian: positive off-diagonal entry");
                if (m(i, j) != m(j, i)) throw std::invalid_argument("UnderlyingLaplacian: matrix not symmetric");
            }
            if (std::abs(m.row(i).sum()) > 1e-9 * dmax)
                throw std::invalid_argument("UnderlyingLaplacian: row " + std::to_string(i) + " does not sum to zero");
        }
        return UnderlyingLaplacian(std::move(m), zero_tolerance);
    }

    const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
    double zero_tolerance() const noexcept { return zero_tolerance_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

private:
    UnderlyingLaplacian(Eigen::MatrixXd m, double tol) : matrix_(std::move(m)), zero_tolerance_(tol) {}
    friend UnderlyingLaplacian underlying_laplacian(const InfraGraph& g);

    Eigen::MatrixXd matrix_;
    double zero_tolerance_;
};

/// A(k,l) = A(l,k) = stored weight of edge {k,l}, zero elsewhere.
inline Eigen::MatrixXcd adjacency_matrix(const InfraGraph& g) {
    const auto n = static_cast<Eigen::Index>(g.vertex_count());
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& e : g.edges()) {
        a(e.tail, e.head) = e.weight;
        a(e.head, e.tail) = e.weight;
    }
    return a;
}

/// N x M weighted incidence: column l holds +w_l at the head row and -w_l at
/// the tail row.
inline Eigen::MatrixXcd incidence_matrix(const InfraGraph& g) {
    const auto n = static_cast<Eigen::Index>(g.vertex_count());
    const auto m = static_cast<Eigen::Index>(g.edge_count());
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(n, m);
    for (Eigen::Index l = 0; l < m; ++l) {
        const auto& e = g.edges()[static_cast<std::size_t>(l)];
        b(e.head, l) = e.weight;
        b(e.tail, l) = -e.weight;
    }
    return b;
}

/// Edge currents i = B^H V with i_l = y_l (V_head - V_tail). The adjoint
/// conjugates the weights, so B here carries conj(y); for real weights this is
/// exactly incidence_matrix(g).
inline Eigen::VectorXcd edge_currents(const InfraGraph& g, const Eigen::VectorXcd& voltages) {
    if (voltages.size() != static_cast<Eigen::Index>(g.vertex_count()))
        throw std::invalid_argument("edge_currents: dimension mismatch");
    const Eigen::MatrixXcd b = incidence_matrix(g).conjugate();
    return b.adjoint() * voltages;
}

/// A^(|u|)(k,l) = max(|A(k,l)|, |A(l,k)|); equals |w| for the symmetric storage.
inline Eigen::MatrixXd underlying_adjacency(const InfraGraph& g) {
    const auto n = static_cast<Eigen::Index>(g.vertex_count());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : g.edges()) {
        double w = std::abs(e.weight);
        a(e.tail, e.head) = std::max(a(e.tail, e.head), w);
        a(e.head, e.tail) = a(e.tail, e.head);
    }
    return a;
}

inline UnderlyingLaplacian underlying_laplacian(const InfraGraph& g) {
    Eigen::MatrixXd a = underlying_adjacency(g);
    Eigen::MatrixXd l = -a;
    l.diagonal() = a.rowwise().sum();
    return UnderlyingLaplacian(std::move(l), UnderlyingLaplacian::default_zero_tolerance);
}

namespace detail {

struct DisjointSets {
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }

    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

    std::vector<std::size_t> parent;
};

inline std::vector<std::vector<std::size_t>> blocks_from(DisjointSets& ds, std::size_t n) {
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::size_t> block_of(n, n);
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t r = ds.find(v);
        if (block_of[r] == n) {
            block_of[r] = blocks.size();
            blocks.emplace_back();
        }
        blocks[block_of[r]].push_back(v);
    }
    return blocks;
}

} // namespace detail

/// Vertex partition into connected components, blocks ordered by their
/// smallest vertex, vertices ascending within each block.
inline std::vector<std::vector<std::size_t>> connected_components(const InfraGraph& g) {
    detail::DisjointSets ds(g.vertex_count());
    for (const auto& e : g.edges()) ds.unite(e.tail, e.head);
    return detail::blocks_from(ds, g.vertex_count());
}

/// Same partition, read from the off-diagonal sparsity of a Laplacian.
inline std::vector<std::vector<std::size_t>> connected_components(const UnderlyingLaplacian& l) {
    const auto& m = l.matrix();
    const auto n = l.size();
    detail::DisjointSets ds(n);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = i + 1; j < m.cols(); ++j)
            if (m(i, j) != 0.0) ds.unite(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    return detail::blocks_from(ds, n);
}

} // namespace infragsp
