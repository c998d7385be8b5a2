#include "test_graphs.hpp"

#include <infragsp/graph_filters.hpp>

#include <gtest/gtest.h>

using namespace infragsp;
using infragsp::testing::random_graph;
using infragsp::testing::random_signal;

namespace {

struct Fixture {
    GftBasis basis;
    std::size_t n;
};

Fixture make(std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    return {compute_gft_basis(underlying_laplacian(random_graph(n, n, rng, true))), n};
}

double max_abs(const Eigen::VectorXcd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

} // namespace

TEST(Filters, LowpassWithFullCutoffIsIdentity) {
    auto [b, n] = make(31, 12);
    Rng rng(1);
    GraphSignal f = random_signal(n, rng);
    GraphSignal out = apply_filter(b, lowpass_filter(b, n), f);
    EXPECT_LE(max_abs(out.values - f.values), 1e-12 * f.values.norm());
}

TEST(Filters, LowpassOfOneProjectsOntoMean) {
    auto [b, n] = make(32, 15);
    Rng rng(2);
    GraphSignal f = random_signal(n, rng);
    GraphSignal out = apply_filter(b, lowpass_filter(b, 1), f);
    const Complex mean = f.values.mean();
    EXPECT_LE(max_abs(out.values - Eigen::VectorXcd::Constant(static_cast<Eigen::Index>(n), mean)), 1e-12);
}

TEST(Filters, AllZeroGainsGiveZero) {
    auto [b, n] = make(33, 8);
    Rng rng(3);
    GraphSignal out = apply_filter(b, FilterResponse(Eigen::VectorXd::Zero(8)), random_signal(n, rng));
    EXPECT_EQ(max_abs(out.values), 0.0);
}

TEST(Filters, CutoffOutOfRange) {
    auto [b, n] = make(34, 6);
    EXPECT_THROW(lowpass_filter(b, 0), std::invalid_argument);
    EXPECT_THROW(lowpass_filter(b, n + 1), std::invalid_argument);
    EXPECT_THROW(tv_regularization_filter(b, -1.0), std::invalid_argument);
    EXPECT_THROW(FilterResponse((Eigen::VectorXd(2) << 1.0, -0.5).finished()), std::invalid_argument);
    EXPECT_THROW(highpass_complement(FilterResponse(Eigen::VectorXd::Constant(3, 2.0))), std::invalid_argument);
}

TEST(Filters, BinaryFiltersAreProjectors) {
    auto [b, n] = make(35, 20);
    Rng rng(4);
    for (std::size_t k = 1; k <= n; k += 3) {
        FilterResponse lp = lowpass_filter(b, k);
        FilterResponse hp = highpass_complement(lp);
        GraphSignal f = random_signal(n, rng);
        GraphSignal once = apply_filter(b, lp, f);
        GraphSignal twice = apply_filter(b, lp, once);
        EXPECT_LE(max_abs(once.values - twice.values), 1e-12 * f.values.norm());

        // Partition of unity and orthogonal split.
        GraphSignal high = apply_filter(b, hp, f);
        EXPECT_LE(max_abs(once.values + high.values - f.values), 1e-12 * f.values.norm());
        EXPECT_LE(std::abs(once.values.dot(high.values)), 1e-12 * f.values.squaredNorm());
        EXPECT_EQ((lp.gains() + hp.gains()).minCoeff(), 1.0);
        EXPECT_EQ((lp.gains() + hp.gains()).maxCoeff(), 1.0);
    }
}

TEST(Filters, BoundedGainsDoNotExpand) {
    auto [b, n] = make(36, 25);
    Rng rng(5);
    for (int t = 0; t < 40; ++t) {
        Eigen::VectorXd g(static_cast<Eigen::Index>(n));
        for (auto& x : g) x = rng.uniform();
        GraphSignal f = random_signal(n, rng);
        EXPECT_LE(apply_filter(b, FilterResponse(g), f).values.norm(), f.values.norm() * (1 + 1e-12));
    }
}

TEST(Filters, TvRegularizationGains) {
    auto [b, n] = make(37, 18);
    FilterResponse h0 = tv_regularization_filter(b, 0.0);
    EXPECT_EQ(h0.gains(), Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n)));
    for (double alpha : {0.01, 0.3, 4.0}) {
        FilterResponse h = tv_regularization_filter(b, alpha);
        EXPECT_DOUBLE_EQ(h.gains()(0), 1.0);
        for (Eigen::Index k = 1; k < h.gains().size(); ++k) {
            EXPECT_LE(h.gains()(k), h.gains()(k - 1));
            EXPECT_GT(h.gains()(k), 0.0);
        }
    }
}

TEST(Filters, TvRegularizationSingleEigenvalueExample) {
    // One edge of weight 5: eigenvalues {0, 10}; alpha = 1 gives 1/21 on the second.
    GftBasis b = compute_gft_basis(underlying_laplacian(InfraGraph(2, {{0, 1, 5.0}})));
    FilterResponse h = tv_regularization_filter(b, 1.0);
    EXPECT_DOUBLE_EQ(h.gains()(0), 1.0);
    EXPECT_NEAR(h.gains()(1), 1.0 / 21.0, 1e-15);
}

TEST(Filters, TvRegularizationMatchesDirectSolve) {
    // (I + 2 alpha L)^-1 f computed by a dense linear solve.
    Rng rng(38);
    UnderlyingLaplacian l = underlying_laplacian(random_graph(14, 10, rng, true));
    GftBasis b = compute_gft_basis(l);
    GraphSignal f = random_signal(14, rng);
    const double alpha = 0.7;
    Eigen::MatrixXcd sys = (Eigen::MatrixXd::Identity(14, 14) + 2.0 * alpha * l.matrix()).cast<Complex>();
    Eigen::VectorXcd direct = sys.ldlt().solve(f.values);
    GraphSignal out = apply_filter(b, tv_regularization_filter(b, alpha), f);
    EXPECT_LE((out.values - direct).norm(), 1e-10 * f.values.norm());
}

TEST(Filters, FiltersCommute) {
    auto [b, n] = make(39, 16);
    Rng rng(6);
    FilterResponse a = tv_regularization_filter(b, 0.5);
    FilterResponse c = lowpass_filter(b, 5);
    GraphSignal f = random_signal(n, rng);
    GraphSignal ac = apply_filter(b, a, apply_filter(b, c, f));
    GraphSignal ca = apply_filter(b, c, apply_filter(b, a, f));
    EXPECT_LE(max_abs(ac.values - ca.values), 1e-12 * f.values.norm());
}

TEST(Filters, SizeMismatch) {
    auto [b, n] = make(40, 5);
    Rng rng(7);
    EXPECT_THROW(apply_filter(b, FilterResponse(Eigen::VectorXd::Ones(4)), random_signal(n, rng)),
                 std::invalid_argument);
}
