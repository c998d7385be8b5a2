#include "test_graphs.hpp"

#include <infragsp/ingestion.hpp>

#include <gtest/gtest.h>

using namespace infragsp;
using infragsp::testing::data_path;
using infragsp::testing::fixture_cases;
using infragsp::testing::load_case;
using infragsp::testing::read_file;

namespace {

// Two buses, one branch (r = 0.01, x = 0.05) and a generator on bus 1.
const char* two_bus = R"(function mpc = twobus
mpc.baseMVA = 100;
mpc.bus = [
	1	3	0	0	0	0	1	1.06	0	0	1	1.1	0.9;
	2	1	10	5	0	0	1	1.0	-13.37	0	1	1.1	0.9;
];
mpc.gen = [
	1	10	0	0	0	1	100	1	100	0;
];
mpc.branch = [
	1	2	0.01	0.05	0	0	0	0	0	0	1	-360	360;
];
)";

std::string with_branches(const std::string& rows) {
    std::string s = two_bus;
    const auto at = s.find("mpc.branch = [\n") + std::string("mpc.branch = [\n").size();
    const auto end = s.find("];", at);
    return s.substr(0, at) + rows + s.substr(end);
}

template <typename F>
std::size_t parse_error_line(F&& f) {
    try {
        f();
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

} // namespace

TEST(PowerCase, MinimalTwoBus) {
    PowerCase c = parse_power_case(two_bus, "twobus.m");
    EXPECT_EQ(c.name, "twobus");
    ASSERT_EQ(c.buses.size(), 2u);
    ASSERT_EQ(c.branches.size(), 1u);
    InfraGraph g = power_graph(c);
    ASSERT_EQ(g.edge_count(), 1u);
    EXPECT_NEAR(g.edges()[0].weight.real(), 3.84615384615384581716609460332, 1e-12);
    EXPECT_NEAR(g.edges()[0].weight.imag(), -19.2307692307692297530318099307, 1e-12);
}

TEST(PowerCase, VoltageSignal) {
    GraphSignal v = bus_voltage_signal(parse_power_case(two_bus));
    EXPECT_EQ(v.values(0), Complex(1.06, 0.0));
    // 1.06 at -13.37 degrees, evaluated with 30-digit arithmetic.
    PowerCase c = parse_power_case(two_bus);
    c.buses[1].vm = 1.06;
    GraphSignal u = bus_voltage_signal(c);
    EXPECT_NEAR(u.values(1).real(), 1.03127091304293850530653064128, 1e-14);
    EXPECT_NEAR(u.values(1).imag(), -0.24511283914063759388391307242, 1e-14);
}

TEST(PowerCase, ParallelBranchesAreSummed) {
    const std::string row = "\t1\t2\t0.01\t0.05\t0\t0\t0\t0\t0\t0\t1\t-360\t360;\n";
    InfraGraph g = power_graph(parse_power_case(with_branches(row + row)));
    ASSERT_EQ(g.edge_count(), 1u);
    const Complex y = 1.0 / Complex(0.01, 0.05);
    EXPECT_LE(std::abs(g.edges()[0].weight - 2.0 * y), 1e-12);
}

TEST(PowerCase, PureReactance) {
    InfraGraph g = power_graph(parse_power_case(with_branches("\t1\t2\t0\t0.1\t0\t0\t0\t0\t0\t0\t1\t-360\t360;\n")));
    EXPECT_LE(std::abs(g.edges()[0].weight - Complex(0.0, -10.0)), 1e-12);
}

TEST(PowerCase, OutOfServiceBranchDropped) {
    PowerCase c = parse_power_case(with_branches("\t1\t2\t0.01\t0.05\t0\t0\t0\t0\t0\t0\t0\t-360\t360;\n"));
    EXPECT_FALSE(c.branches[0].in_service);
    EXPECT_EQ(power_graph(c).edge_count(), 0u);
}

TEST(PowerCase, ZeroImpedanceRejected) {
    PowerCase c = parse_power_case(with_branches("\t1\t2\t0\t0\t0\t0\t0\t0\t0\t0\t1\t-360\t360;\n"));
    EXPECT_THROW(power_graph(c), InputError);
}

TEST(PowerCase, ParseErrorsCarryLineNumbers) {
    // The branch row sits on line 11 of the two-bus text.
    EXPECT_EQ(parse_error_line([] { parse_power_case(with_branches("\t1\t7\t0.01\t0.05\t0\t0\t0\t0\t0\t0\t1\t0\t0;\n")); }),
              11u);
    EXPECT_EQ(parse_error_line([] { parse_power_case(with_branches("\t1\t2\t0.01;\n")); }), 11u);
    std::string dup = two_bus;
    dup.replace(dup.find("\t2\t1\t10"), 3, "\t1\t");
    EXPECT_EQ(parse_error_line([&] { parse_power_case(dup); }), 5u);

    std::string no_gen = two_bus;
    no_gen.replace(no_gen.find("mpc.gen"), 7, "mpc.xyz");
    EXPECT_THROW(parse_power_case(no_gen), InputError);
}

TEST(PowerCase, Ieee14Counts) {
    PowerCase c = load_case("case14");
    EXPECT_EQ(c.buses.size(), 14u);
    InfraGraph g = power_graph(c);
    EXPECT_EQ(g.vertex_count(), 14u);
    EXPECT_EQ(g.edge_count(), 20u);
    EXPECT_NEAR(generation_fraction(c), 5.0 / 14.0, 1e-15);
}

TEST(PowerCase, GenerationFraction) {
    EXPECT_DOUBLE_EQ(generation_fraction(parse_power_case(two_bus)), 0.5);
    PowerCase c = parse_power_case(two_bus);
    c.generators.push_back({1, 5.0, true});
    EXPECT_DOUBLE_EQ(generation_fraction(c), 0.5);
    c.generators = {{2, 0.0, true}, {1, 5.0, false}};
    EXPECT_DOUBLE_EQ(generation_fraction(c, GenerationRule::status), 0.5);
    EXPECT_DOUBLE_EQ(generation_fraction(c, GenerationRule::dispatch), 0.0);
    EXPECT_GT(generation_fraction(load_case("case145")), 1.0 / 3.0);
}

TEST(PowerCase, AllFixturesParseConnected) {
    for (const auto& name : fixture_cases()) {
        SCOPED_TRACE(name);
        PowerCase c = load_case(name);
        InfraGraph g = power_graph(c);
        EXPECT_EQ(g.vertex_count(), c.buses.size());
        EXPECT_EQ(connected_components(g).size(), 1u);
        GraphSignal v = bus_voltage_signal(c);
        EXPECT_GT(v.values.cwiseAbs().minCoeff(), 0.5);
        EXPECT_LT(v.values.cwiseAbs().maxCoeff(), 1.5);
    }
}

// ---------------------------------------------------------------------------
// Water

TEST(Water, HazenWilliamsOracle) {
    // 10.667 * 100^-1.852 * 0.5^-4.871 * 1000 with 30-digit arithmetic.
    const double k = hazen_williams_coefficient(100.0, 0.5, 1000.0);
    EXPECT_LE(std::abs(k - 61.7105481322562865898501683007) / k, 1e-12);
    EXPECT_LE(std::abs(hazen_williams_headloss(100.0, 0.5, 1000.0, 0.1) - 0.867679634140588334223891341079), 1e-12);
    EXPECT_DOUBLE_EQ(hazen_williams_headloss(100.0, 0.5, 1000.0, -0.1), -hazen_williams_headloss(100.0, 0.5, 1000.0, 0.1));
    EXPECT_EQ(hazen_williams_headloss(100.0, 0.5, 1000.0, 0.0), 0.0);
    EXPECT_THROW(hazen_williams_coefficient(0.0, 0.5, 1.0), std::invalid_argument);
}

TEST(Water, PipeTableAndWeights) {
    PipeTable t = parse_pipe_table(read_file(data_path("water/triangle_pipes.csv")), "triangle");
    ASSERT_EQ(t.pipes.size(), 3u);
    InfraGraph hw = hydraulic_graph(t, HydraulicModel::hazen_williams);
    EXPECT_NEAR(hw.edges()[0].weight.real(), 0.0162046851027287672596138433543, 1e-15);
    InfraGraph hp = hydraulic_graph(t, HydraulicModel::hagen_poiseuille);
    EXPECT_DOUBLE_EQ(hp.edges()[0].weight.real(), std::pow(0.5, 4) / 1000.0);
    InfraGraph uw = hydraulic_graph(t, HydraulicModel::unweighted);
    EXPECT_EQ(uw.edges()[1].weight, Complex(1.0));
    EXPECT_EQ(t.topology().vertices, (std::vector<std::string>{"J1", "J2", "J3"}));
}

TEST(Water, PipeTableErrors) {
    const std::string h = "from,to,roughness,diameter_m,length_m\n";
    EXPECT_EQ(parse_error_line([&] { parse_pipe_table(h + "a,b,100,0.5,10\nb,c,100,-1,10\n"); }), 3u);
    EXPECT_EQ(parse_error_line([&] { parse_pipe_table(h + "a,b,100,0.5,10\nb,a,100,0.5,10\n"); }), 3u);
    EXPECT_EQ(parse_error_line([&] { parse_pipe_table(h + "a,a,100,0.5,10\n"); }), 2u);
    EXPECT_EQ(parse_error_line([&] { parse_pipe_table(h + "# note\na,b,100,x,10\n"); }), 3u);
    EXPECT_EQ(parse_error_line([&] { parse_pipe_table("from,to\na,b\n"); }), 1u);
    EXPECT_THROW(parse_pipe_table(""), InputError);
}

TEST(Water, EdgeList) {
    EdgeList e = parse_edge_list("from,to\nx,y\ny,z\n");
    EXPECT_EQ(e.vertices, (std::vector<std::string>{"x", "y", "z"}));
    InfraGraph g = unweighted_graph(e);
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_THROW(parse_edge_list("a,b\nx,y\n"), ParseError);
}

// ---------------------------------------------------------------------------
// Signal tables

TEST(SignalTable, RealRows) {
    auto s = parse_signal_table("1,2,3\n4,5,6\n", 3);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s[1].values(2), Complex(6.0));
}

TEST(SignalTable, ComplexDirective) {
    auto s = parse_signal_table("# format: complex\n1,2,3,4\n", 2);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].values(0), Complex(1.0, 2.0));
    EXPECT_EQ(s[0].values(1), Complex(3.0, 4.0));
    EXPECT_THROW(parse_signal_table("# format: quaternion\n1\n", 1), InputError);
}

TEST(SignalTable, HeaderReordersColumns) {
    std::vector<std::string> names{"a", "b", "c"};
    SignalTableOptions opts;
    opts.vertex_names = &names;
    auto s = parse_signal_table("c,a,b\n3,1,2\n", 3, opts);
    EXPECT_EQ(s[0].values(0), Complex(1.0));
    EXPECT_EQ(s[0].values(2), Complex(3.0));
    EXPECT_EQ(parse_error_line([&] { parse_signal_table("c,a,d\n3,1,2\n", 3, opts); }), 1u);
}

TEST(SignalTable, WidthAndNumberErrors) {
    EXPECT_EQ(parse_error_line([] { parse_signal_table("1,2,3\n1,2\n", 3); }), 2u);
    EXPECT_EQ(parse_error_line([] { parse_signal_table("1,2,3\n1,2,zz\n", 3); }), 2u);
    EXPECT_EQ(parse_error_line([] { parse_signal_table("# format: complex\n1,2,3\n", 2); }), 2u);
}
