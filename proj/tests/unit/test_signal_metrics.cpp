#include "test_graphs.hpp"

#include <infragsp/ingestion.hpp>
#include <infragsp/signal_metrics.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>

using namespace infragsp;
using infragsp::testing::band_signal;
using infragsp::testing::load_case;
using infragsp::testing::random_graph;
using infragsp::testing::random_signal;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

/// Sum over edges of |A_kl| |f_k - f_l|^2, the vertex-domain TV.
double edge_sum_tv(const InfraGraph& g, const GraphSignal& f) {
    double tv = 0.0;
    for (const auto& e : g.edges()) tv += std::abs(e.weight) * std::norm(f.values(e.tail) - f.values(e.head));
    return tv;
}

} // namespace

TEST(TotalVariation, Examples) {
    UnderlyingLaplacian l = underlying_laplacian(InfraGraph(2, {{0, 1, 1.0}}));
    EXPECT_EQ(total_variation(l, {Eigen::VectorXcd::Constant(2, Complex(3.0, 1.0)), ""}), 0.0);
    GraphSignal f{Eigen::VectorXcd(2), ""};
    f.values << 0.0, 1.0;
    EXPECT_DOUBLE_EQ(total_variation(l, f), 1.0);
}

TEST(TotalVariation, QuadraticFormMatchesEdgeSum) {
    Rng rng(21);
    for (int t = 0; t < 20; ++t) {
        InfraGraph g = random_graph(6, 5, rng, true);
        GraphSignal f = random_signal(6, rng);
        const double tv = total_variation(underlying_laplacian(g), f);
        EXPECT_LE(std::abs(tv - edge_sum_tv(g, f)), 1e-12 * edge_sum_tv(g, f));
    }
}

TEST(TotalVariation, DimensionMismatch) {
    UnderlyingLaplacian l = underlying_laplacian(InfraGraph(2, {{0, 1, 1.0}}));
    EXPECT_THROW(total_variation(l, {Eigen::VectorXcd::Zero(3), ""}), std::invalid_argument);
}

TEST(Compressibility, SingleHarmonic) {
    Eigen::VectorXd p = vec({4.0, 0, 0, 0});
    for (double t : {0.1, 0.9, 0.999}) {
        EXPECT_EQ(lowpass_compressibility(p, t), 1u);
        EXPECT_EQ(general_compressibility(p, t), 1u);
    }
}

TEST(Compressibility, FlatSpectrum) {
    Eigen::VectorXd p = Eigen::VectorXd::Ones(10);
    EXPECT_EQ(lowpass_compressibility(p, 0.9), 9u);
    EXPECT_EQ(general_compressibility(p, 0.9), 9u);
}

TEST(Compressibility, GeneralSortsByEnergy) {
    EXPECT_EQ(general_compressibility(vec({0.5, 0.3, 0.1, 0.1}), 0.9), 3u);
    EXPECT_EQ(general_compressibility(vec({0.1, 0.1, 0.3, 0.5}), 0.9), 3u);
    EXPECT_EQ(lowpass_compressibility(vec({0.1, 0.1, 0.3, 0.5}), 0.9), 4u);
}

TEST(Compressibility, ZeroSignalAndBadThreshold) {
    EXPECT_THROW(lowpass_compressibility(Eigen::VectorXd::Zero(3), 0.9), DegenerateSignalError);
    EXPECT_THROW(general_compressibility(Eigen::VectorXd::Zero(3), 0.9), DegenerateSignalError);
    EXPECT_THROW(lowpass_compressibility(vec({1.0}), 1.0), std::invalid_argument);
    EXPECT_THROW(lowpass_compressibility(vec({1.0}), 0.0), std::invalid_argument);
}

TEST(Compressibility, PropertiesOnRandomSignals) {
    Rng rng(22);
    const std::vector<double> ts{0.5, 0.8, 0.9, 0.95, 0.999};
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 10 + static_cast<std::size_t>(t);
        InfraGraph g = random_graph(n, n / 2, rng, true);
        UnderlyingLaplacian l = underlying_laplacian(g);
        GftBasis b = compute_gft_basis(l);
        GraphSignal f = t % 2 ? random_signal(n, rng) : band_signal(b, 0, 3, rng);
        SpectralMetrics m = metrics_report(l, b, f, ts);
        for (std::size_t i = 0; i < ts.size(); ++i) {
            EXPECT_LE(m.full[i].gen_count, m.full[i].lp_count);
            EXPECT_GE(m.full[i].lp_count, 1u);
            EXPECT_LE(m.full[i].lp_count, n);
            EXPECT_DOUBLE_EQ(m.full[i].lp_ratio, static_cast<double>(m.full[i].lp_count) / static_cast<double>(n));
            if (i) {
                EXPECT_GE(m.full[i].lp_count, m.full[i - 1].lp_count);
                EXPECT_GE(m.full[i].gen_count, m.full[i - 1].gen_count);
            }
        }
        // TV as spectral average and Rayleigh bounds.
        Eigen::VectorXd power = power_spectrum(forward_gft(b, f));
        EXPECT_LE(std::abs(m.tv - b.eigenvalues().dot(power)), 1e-9 * m.tv);
        EXPECT_DOUBLE_EQ(m.tv_normalized, m.tv / f.values.squaredNorm());
        EXPECT_GE(m.tv_normalized, b.eigenvalues()(0) - 1e-12);
        EXPECT_LE(m.tv_normalized, b.eigenvalues()(static_cast<Eigen::Index>(n) - 1) * (1 + 1e-12));
    }
}

TEST(MeanRemoved, ConstantPlusOneHarmonic) {
    Rng rng(23);
    InfraGraph g = random_graph(12, 6, rng);
    GftBasis b = compute_gft_basis(underlying_laplacian(g));
    GraphSignal f{Eigen::VectorXcd::Constant(12, Complex(1.0)) + 1e-3 * b.vectors().col(1).cast<Complex>(), ""};
    auto mr = mean_removed_metrics(b, forward_gft(b, f), {0.9});
    EXPECT_EQ(mr[0].gen_count, 1u);
    EXPECT_EQ(mr[0].lp_count, 1u);
}

TEST(MeanRemoved, PureConstantIsDegenerate) {
    Rng rng(24);
    UnderlyingLaplacian l = underlying_laplacian(random_graph(8, 3, rng));
    GftBasis b = compute_gft_basis(l);
    GraphSignal f{Eigen::VectorXcd::Constant(8, Complex(2.0, 1.0)), ""};
    EXPECT_THROW(mean_removed_metrics(b, forward_gft(b, f)), DegenerateSignalError);

    SpectralMetrics m = metrics_report(l, b, f);
    EXPECT_EQ(m.tv, 0.0);
    EXPECT_EQ(m.full[0].lp_count, 1u);
    EXPECT_EQ(m.full[1].lp_count, 1u);
    EXPECT_TRUE(m.mean_removed_degenerate);
    EXPECT_FALSE(m.mean_removed.has_value());
}

TEST(Metrics, SingleHarmonicTvEqualsEigenvalue) {
    Rng rng(25);
    UnderlyingLaplacian l = underlying_laplacian(random_graph(10, 8, rng));
    GftBasis b = compute_gft_basis(l);
    for (Eigen::Index k = 0; k < 10; ++k) {
        GraphSignal f{b.vectors().col(k).cast<Complex>(), ""};
        EXPECT_NEAR(metrics_report(l, b, f).tv_normalized, b.eigenvalues()(k), 1e-9 * b.eigenvalues()(9));
    }
}

TEST(Metrics, WhiteSignalRatios) {
    // Oracle for general compressibility of a flat expected spectrum: sort
    // i.i.d. exponential harmonic powers (|complex Gaussian|^2) and scan.
    auto oracle_gen_ratio = [](std::size_t n, Rng& rng) {
        std::vector<double> e(n);
        for (auto& x : e) x = -std::log(rng.uniform_open_low());
        std::sort(e.begin(), e.end(), std::greater<>());
        double total = 0.0;
        for (double x : e) total += x;
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            acc += e[k];
            if (acc >= 0.9 * total) return static_cast<double>(k + 1) / static_cast<double>(n);
        }
        return 1.0;
    };
    Rng oracle_rng(999);
    double oracle = 0.0;
    for (int i = 0; i < 200; ++i) oracle += oracle_gen_ratio(100, oracle_rng);
    oracle /= 200.0;

    Rng graph_rng(26);
    UnderlyingLaplacian l = underlying_laplacian(random_graph(100, 120, graph_rng));
    GftBasis b = compute_gft_basis(l);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        SpectralMetrics m = metrics_report(l, b, random_signal(100, rng), {0.9});
        EXPECT_NEAR(m.full[0].lp_ratio, 0.9, 0.1) << "seed " << seed;
        EXPECT_NEAR(m.full[0].gen_ratio, oracle, 0.1) << "seed " << seed;
    }
}

TEST(Metrics, Ieee14MatchesCumulativeScan) {
    // Counts frozen from an independent numpy cumulative-energy scan over the
    // exported spectrum of the bundled case14 fixture.
    PowerCase c = load_case("case14");
    InfraGraph g = power_graph(c);
    UnderlyingLaplacian l = underlying_laplacian(g);
    GftBasis b = compute_gft_basis(l);
    SpectralMetrics m = metrics_report(l, b, bus_voltage_signal(c));
    ASSERT_EQ(m.full.size(), 2u);
    EXPECT_EQ(m.full[0].lp_count, 1u);
    EXPECT_EQ(m.full[1].lp_count, 7u);
    EXPECT_EQ(m.full[0].gen_count, 1u);
    EXPECT_EQ(m.full[1].gen_count, 4u);
    ASSERT_TRUE(m.mean_removed);
    const auto& mr = *m.mean_removed;
    EXPECT_EQ(mr[0].lp_count, 6u);
    EXPECT_EQ(mr[1].lp_count, 12u);
    EXPECT_EQ(mr[0].gen_count, 3u);
    EXPECT_EQ(mr[1].gen_count, 11u);
    EXPECT_GE(mr[0].lp_count + 1, m.full[0].lp_count);
    EXPECT_GT(mr[0].lp_ratio, m.full[0].lp_ratio);
    EXPECT_NEAR(m.tv, 0.579085871358658, 1e-9);
    EXPECT_NEAR(m.tv_normalized, 0.037612088646342384, 1e-11);
}

TEST(Metrics, CsvRowLayout) {
    auto header = metrics_csv_header({0.9, 0.999}, true);
    EXPECT_EQ(header[6], "lp90");
    EXPECT_EQ(header[7], "lp90_ratio");
    EXPECT_EQ(header[10], "lp999");
    EXPECT_EQ(threshold_label(0.95), "95");

    SpectralMetrics m;
    m.full = {{0.9, 1, 0.1, 1, 0.1}, {0.999, 2, 0.2, 2, 0.2}};
    m.mean_removed_degenerate = true;
    auto row = metrics_csv_row({"net", 10, 9, 0.5}, m, true);
    EXPECT_EQ(row.size(), header.size());
    EXPECT_EQ(row[0], "net");
    EXPECT_EQ(row[3], "0.5");
}
