// infragsp command-line front end.

#include "run_output.hpp"

#include <infragsp/infragsp.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <thread>

#ifndef INFRAGSP_VERSION
#define INFRAGSP_VERSION "0.0.0"
#endif

namespace {

using namespace infragsp;
using namespace infragsp::cli;

constexpr int exit_input = 2;
constexpr int exit_numerical = 3;

struct Common {
    std::string output_dir = ".";
    OutputFormat format = OutputFormat::csv;
    unsigned jobs = 0;
};

/// Maps f over items on up to `jobs` threads; results keep input order and
/// the first failing item (in input order) rethrows.
template <typename T, typename F>
auto parallel_map(const std::vector<T>& items, unsigned jobs, F f) {
    using R = decltype(f(items.front()));
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<R>> futures;
    std::vector<R> out;
    std::size_t next = 0;
    while (next < items.size() || !futures.empty()) {
        while (next < items.size() && futures.size() < jobs) {
            futures.push_back(std::async(std::launch::async, f, std::cref(items[next])));
            ++next;
        }
        out.push_back(futures.front().get());
        futures.erase(futures.begin());
    }
    return out;
}

std::vector<InputFile> read_inputs(const std::vector<std::string>& paths) {
    std::vector<InputFile> out;
    for (const auto& p : paths) out.push_back(read_input(p));
    return out;
}

std::string file_stem(const std::string& path) { return fs::path(path).stem().string(); }

/// Output stems per input, made unique by suffixing repeats.
std::vector<std::string> unique_stems(const std::vector<InputFile>& files) {
    std::map<std::string, int> seen;
    std::vector<std::string> out;
    for (const auto& f : files) {
        std::string s = file_stem(f.path);
        if (int n = ++seen[s]; n > 1) s += "_" + std::to_string(n);
        out.push_back(s);
    }
    return out;
}

std::string fmt(double v) { return csv::format_double(v); }

std::vector<std::string> commit(Run& run) {
    std::vector<std::string> paths;
    for (const auto& p : run.commit(INFRAGSP_VERSION, Rng::algorithm)) paths.push_back(p.string());
    for (const auto& p : paths) std::cout << p << '\n';
    return paths;
}

struct LoadedCase {
    PowerCase power;
    InfraGraph graph;
    UnderlyingLaplacian laplacian;
    GftBasis basis;
    GraphSignal voltage;
};

LoadedCase load_case(const InputFile& f) {
    PowerCase c = parse_power_case(f.content, f.path);
    InfraGraph g = power_graph(c);
    UnderlyingLaplacian l = underlying_laplacian(g);
    GftBasis b = compute_gft_basis(l, c.name);
    GraphSignal v = bus_voltage_signal(c);
    return {std::move(c), std::move(g), std::move(l), std::move(b), std::move(v)};
}

void warn_if_disconnected(const InfraGraph& g, const std::string& what) {
    const auto parts = connected_components(g).size();
    if (parts > 1)
        std::cerr << "warning: " << what << " has " << parts
                  << " connected components; the DC harmonic is not unique\n";
}

// ---------------------------------------------------------------------------

struct AnalyzeOptions {
    std::vector<std::string> cases;
    std::vector<double> thresholds = default_thresholds;
    bool mean_removed = true;
    std::string generation = "status";
    bool spectra = false;
};

void cmd_analyze(const AnalyzeOptions& o, const Common& common) {
    for (double t : o.thresholds)
        if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("--thresholds values must lie in (0, 1)");
    const auto files = read_inputs(o.cases);
    const auto stems = unique_stems(files);
    const GenerationRule rule = o.generation == "dispatch" ? GenerationRule::dispatch : GenerationRule::status;

    struct Out {
        std::vector<std::string> row;
        Table spectrum;
    };
    auto results = parallel_map(files, common.jobs, [&](const InputFile& f) {
        LoadedCase c = load_case(f);
        warn_if_disconnected(c.graph, f.path);
        SpectralMetrics m = metrics_report(c.laplacian, c.basis, c.voltage, o.thresholds, o.mean_removed);
        NetworkSummary net{c.power.name, c.graph.vertex_count(), c.graph.edge_count(),
                           generation_fraction(c.power, rule)};
        Out out{metrics_csv_row(net, m, o.mean_removed), {}};
        if (o.spectra) {
            const Eigen::VectorXd p = power_spectrum(forward_gft(c.basis, c.voltage));
            out.spectrum.header = {"harmonic_index", "eigenvalue", "power"};
            out.spectrum.text_columns.clear();
            for (Eigen::Index k = 0; k < p.size(); ++k)
                out.spectrum.rows.push_back({std::to_string(k), fmt(c.basis.eigenvalues()(k)), fmt(p(k))});
        }
        return out;
    });

    Run run("analyze", common.output_dir, common.format);
    for (const auto& f : files) run.add_input(f);
    run.config() = {{"thresholds", o.thresholds},
                    {"mean_removed", o.mean_removed},
                    {"active_generation", o.generation},
                    {"signal", "bus voltage phasor Vm*exp(j*pi*Va/180)"},
                    {"edge_weight", "branch admittance 1/(r+jx), parallel branches summed"}};
    Table metrics{metrics_csv_header(o.thresholds, o.mean_removed), {}, {0}};
    for (std::size_t i = 0; i < results.size(); ++i) {
        metrics.rows.push_back(results[i].row);
        if (o.spectra) run.add_table("spectrum_" + stems[i], results[i].spectrum);
    }
    run.add_table("metrics", metrics);
    commit(run);
}

// ---------------------------------------------------------------------------

struct DenoiseOptions {
    std::vector<std::string> cases;
    double snr_db = 20.0;
    std::size_t trials = 25;
    double alpha_lo = 0.01;
    double alpha_hi = 10.0;
    std::size_t alpha_count = 50;
    std::uint64_t seed = 0;
    double lp_threshold = 0.999;
    bool real_noise = false;
    unsigned threads = 1;
};

void cmd_denoise(const DenoiseOptions& o, const Common& common) {
    DenoiseConfig cfg;
    cfg.snr_db = o.snr_db;
    cfg.trials = o.trials;
    cfg.alpha_grid = log_spaced(o.alpha_lo, o.alpha_hi, o.alpha_count);
    cfg.rng_seed = o.seed;
    cfg.lowpass_threshold = o.lp_threshold;
    cfg.noise = o.real_noise ? NoiseKind::real : NoiseKind::complex_circular;
    cfg.threads = o.threads;
    cfg.validate();
    if (!(o.lp_threshold > 0.0 && o.lp_threshold < 1.0))
        throw std::invalid_argument("--lp-threshold must lie in (0, 1)");

    const auto files = read_inputs(o.cases);
    const auto stems = unique_stems(files);
    struct Out {
        std::string name;
        std::size_t n;
        DenoiseResult r;
    };
    auto results = parallel_map(files, common.jobs, [&](const InputFile& f) {
        LoadedCase c = load_case(f);
        warn_if_disconnected(c.graph, f.path);
        return Out{c.power.name, c.graph.vertex_count(), denoise_experiment(c.basis, c.laplacian, c.voltage, cfg)};
    });

    Run run("denoise", common.output_dir, common.format);
    for (const auto& f : files) run.add_input(f);
    run.config() = {{"snr_db", o.snr_db},
                    {"trials", o.trials},
                    {"alpha_lo", o.alpha_lo},
                    {"alpha_hi", o.alpha_hi},
                    {"alpha_count", o.alpha_count},
                    {"alpha_spacing", "log"},
                    {"lowpass_threshold", o.lp_threshold},
                    {"noise", o.real_noise ? "real" : "complex_circular"},
                    {"trial_design", "paired: one noise draw per trial shared by every filter"}};
    run.seeds() = {{"rng_seed", o.seed}, {"trial_substreams", "Rng::substream(rng_seed, trial)"}};

    Table summary{{"name", "N", "tv_normalized", "best_alpha", "best_gain_db", "lp_cutoff", "lp_gain_db",
                   "best_minus_lp_db", "mean_input_snr_db"},
                  {},
                  {0}};
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& [name, n, r] = results[i];
        Table per{{"alpha", "mean_gain_db"}, {}, {}};
        for (std::size_t a = 0; a < r.alphas.size(); ++a) per.rows.push_back({fmt(r.alphas[a]), fmt(r.mean_gain_db[a])});
        run.add_table("denoise_" + stems[i], per);
        summary.rows.push_back({name, std::to_string(n), fmt(r.tv_normalized), fmt(r.best_alpha), fmt(r.best_gain_db),
                                std::to_string(r.lp_cutoff), fmt(r.lp_gain_db), fmt(r.best_gain_db - r.lp_gain_db),
                                fmt(r.mean_input_snr_db)});
    }
    run.add_table("denoise_summary", summary);
    commit(run);
}

// ---------------------------------------------------------------------------

struct FdiOptions {
    std::vector<std::string> cases;
    double threshold = 0.999;
};

void cmd_fdi(const FdiOptions& o, const Common& common) {
    if (!(o.threshold > 0.0 && o.threshold < 1.0)) throw std::invalid_argument("--threshold must lie in (0, 1)");
    const auto files = read_inputs(o.cases);
    const auto stems = unique_stems(files);
    struct Out {
        std::string name;
        std::size_t k;
        std::vector<long> bus_ids;
        FdiDetectability d;
    };
    auto results = parallel_map(files, common.jobs, [&](const InputFile& f) {
        LoadedCase c = load_case(f);
        warn_if_disconnected(c.graph, f.path);
        const std::size_t k = lowpass_compressibility(forward_gft(c.basis, c.voltage), o.threshold);
        FdiDetectability d = fdi_detectability(c.basis, highpass_complement(lowpass_filter(c.basis, k)));
        std::vector<long> ids;
        for (const auto& b : c.power.buses) ids.push_back(b.id);
        return Out{c.power.name, k, std::move(ids), std::move(d)};
    });

    Run run("fdi", common.output_dir, common.format);
    for (const auto& f : files) run.add_input(f);
    run.config() = {{"lowpass_threshold", o.threshold},
                    {"quantiles", "linear interpolation at p*(N-1)"},
                    {"filter", "h_HP = 1 - h_LP, K = low-pass compressibility of the voltage signal"}};
    Table summary{{"name", "N", "K", "median", "q25", "q75", "min", "max"}, {}, {0}};
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        Table per{{"vertex", "bus_id", "norm"}, {}, {}};
        for (Eigen::Index v = 0; v < r.d.norms.size(); ++v)
            per.rows.push_back({std::to_string(v), std::to_string(r.bus_ids[static_cast<std::size_t>(v)]),
                                fmt(r.d.norms(v))});
        run.add_table("fdi_" + stems[i], per);
        summary.rows.push_back({r.name, std::to_string(r.d.norms.size()), std::to_string(r.k), fmt(r.d.median),
                                fmt(r.d.q25), fmt(r.d.q75), fmt(r.d.min), fmt(r.d.max)});
    }
    run.add_table("fdi_summary", summary);
    commit(run);
}

// ---------------------------------------------------------------------------

struct CorrelateOptions {
    std::string table;
    std::string x;
    std::string y;
    bool exact_p = false;
};

std::vector<double> numeric_column(const std::vector<csv::Line>& lines, std::size_t col, const std::string& name,
                                   const std::string& source) {
    std::vector<double> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = csv::split_record(lines[i].text);
        double v = 0.0;
        if (col >= cells.size() || !csv::parse_double(cells[col], v))
            throw ParseError(source, lines[i].number, "column '" + name + "' is not numeric");
        out.push_back(v);
    }
    return out;
}

void cmd_correlate(const CorrelateOptions& o, const Common& common) {
    const InputFile f = read_input(o.table);
    const auto lines = csv::content_lines(f.content);
    if (lines.empty()) throw InputError(o.table + ": empty table");
    const auto header = csv::split_record(lines[0].text);
    auto column = [&](const std::string& name) {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (csv::trim(header[i]) == name) return i;
        throw InputError(o.table + ": no column named '" + name + "'");
    };
    const auto x = numeric_column(lines, column(o.x), o.x, o.table);
    const auto y = numeric_column(lines, column(o.y), o.y, o.table);
    if (x.size() < 3) throw InputError(o.table + ": need at least 3 rows, found " + std::to_string(x.size()));
    if (o.exact_p && x.size() > 10) throw InputError("--exact-p supports at most 10 rows");
    const auto method = o.exact_p ? PValueMethod::exact_permutation : PValueMethod::t_approximation;
    const CorrelationResult r = spearman(x, y, method);

    Run run("correlate", common.output_dir, common.format);
    run.add_input(f);
    run.config() = {{"x", o.x},
                    {"y", o.y},
                    {"ranks", "average ranks for ties"},
                    {"p_method", o.exact_p ? "exact_permutation" : "t_approximation"}};
    run.add_json("correlation", {{"x", o.x},
                                 {"y", o.y},
                                 {"n", r.n},
                                 {"r_s", r.r_s},
                                 {"p_value", r.p_value},
                                 {"p_method", o.exact_p ? "exact_permutation" : "t_approximation"}});
    commit(run);
}

// ---------------------------------------------------------------------------

struct SignalInput {
    std::string path;
    bool complex_signals = false;
};

std::vector<GraphSignal> load_signals(const InputFile& f, const std::vector<std::string>& vertex_names,
                                      bool complex_signals) {
    SignalTableOptions opts;
    opts.format = complex_signals ? SignalFormat::complex : SignalFormat::detect;
    opts.vertex_names = &vertex_names;
    opts.source = f.path;
    auto s = parse_signal_table(f.content, vertex_names.size(), opts);
    if (s.empty()) throw InputError(f.path + ": signal table has no rows");
    return s;
}

struct WaterOptions {
    std::string pipes;
    SignalInput signals;
    std::string model = "hazen-williams";
};

HydraulicModel parse_model(const std::string& m) {
    if (m == "unweighted") return HydraulicModel::unweighted;
    if (m == "hagen-poiseuille") return HydraulicModel::hagen_poiseuille;
    return HydraulicModel::hazen_williams;
}

void cmd_water(const WaterOptions& o, const Common& common) {
    const InputFile pf = read_input(o.pipes);
    const InputFile sf = read_input(o.signals.path);
    const PipeTable pipes = parse_pipe_table(pf.content, pf.path);
    const EdgeList topo = pipes.topology();
    const InfraGraph g = hydraulic_graph(pipes, parse_model(o.model), file_stem(o.pipes));
    warn_if_disconnected(g, o.pipes);
    const GftBasis b = compute_gft_basis(underlying_laplacian(g), g.name());
    const auto signals = load_signals(sf, topo.vertices, o.signals.complex_signals);

    Eigen::VectorXd total = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(b.size()));
    for (const auto& s : signals) total += power_spectrum(forward_gft(b, s));

    Run run("water", common.output_dir, common.format);
    run.add_input(pf);
    run.add_input(sf);
    run.config() = {{"model", o.model},
                    {"signals", signals.size()},
                    {"vertices", b.size()},
                    {"power", "summed over signals"},
                    {"dc_flag", "1 on zero-eigenvalue harmonics"}};
    Table t{{"harmonic_index", "eigenvalue", "power", "dc"}, {}, {}};
    for (Eigen::Index k = 0; k < total.size(); ++k)
        t.rows.push_back({std::to_string(k), fmt(b.eigenvalues()(k)), fmt(total(k)),
                          static_cast<std::size_t>(k) < b.zero_count() ? "1" : "0"});
    run.add_table("water_spectrum", t);
    commit(run);
}

// ---------------------------------------------------------------------------

struct SearchOptions {
    std::string topology;
    SignalInput signals;
    std::size_t iterations = 500;
    std::uint64_t seed = 0;
    double weight_lo = 1e-2;
    double weight_hi = 1e2;
    std::string objective = "mean_lp_ratio";
    double threshold = 0.9;
    std::optional<std::size_t> lowband_count;
    std::size_t max_vertices = 512;
    unsigned threads = 1;
};

void cmd_weight_search(const SearchOptions& o, const Common& common) {
    const InputFile tf = read_input(o.topology);
    const InputFile sf = read_input(o.signals.path);
    const auto first = csv::content_lines(tf.content);
    const bool pipe_table = !first.empty() && detail::header_of(first[0]) == pipe_table_header;
    const EdgeList topo = pipe_table ? parse_pipe_table(tf.content, tf.path).topology()
                                     : parse_edge_list(tf.content, tf.path);
    const InfraGraph g = unweighted_graph(topo, file_stem(o.topology));
    warn_if_disconnected(g, o.topology);
    const auto signals = load_signals(sf, topo.vertices, o.signals.complex_signals);

    SearchConfig cfg;
    cfg.iterations = o.iterations;
    cfg.rng_seed = o.seed;
    cfg.weight_lo = o.weight_lo;
    cfg.weight_hi = o.weight_hi;
    cfg.objective_threshold = o.threshold;
    cfg.objective = o.objective == "mean_lowband_energy" ? SearchObjective::mean_lowband_energy
                                                         : SearchObjective::mean_lp_ratio;
    cfg.lowband_count = o.lowband_count;
    cfg.max_vertices = o.max_vertices;
    cfg.threads = o.threads;
    const SearchResult r = random_search(g, signals, cfg);

    Run run("weight-search", common.output_dir, common.format);
    run.add_input(tf);
    run.add_input(sf);
    run.config() = {{"iterations", o.iterations},
                    {"weight_lo", o.weight_lo},
                    {"weight_hi", o.weight_hi},
                    {"objective", std::string(to_string(cfg.objective))},
                    {"objective_threshold", o.threshold},
                    {"lowband_count", o.lowband_count ? json(*o.lowband_count) : json("ceil(0.1 N)")},
                    {"proposal", "independent log-uniform per-edge draw each iteration"},
                    {"baseline", "constant weight clamp(1, lo, hi)"},
                    {"signals", signals.size()}};
    run.seeds() = {{"rng_seed", o.seed}, {"iteration_substreams", "Rng::substream(rng_seed, iteration)"}};

    json weights = json::object();
    for (std::size_t e = 0; e < topo.edges.size(); ++e)
        weights[topo.vertices[topo.edges[e].first] + "-" + topo.vertices[topo.edges[e].second]] = r.best_weights[e];
    run.add_json("weight_search", {{"objective", std::string(to_string(cfg.objective))},
                                   {"initial_objective", r.initial_objective},
                                   {"best_objective", r.best_objective},
                                   {"accepted", r.accepted},
                                   {"connected", r.connected},
                                   {"iterations", o.iterations},
                                   {"weights", weights}});
    Table traj{{"iteration", "best_objective"}, {}, {}};
    for (std::size_t i = 0; i < r.trajectory.size(); ++i)
        traj.rows.push_back({std::to_string(i), fmt(r.trajectory[i])});
    run.add_table("weight_search_trajectory", traj);
    commit(run);
}

int run_main(int argc, char** argv) {
    CLI::App app{"Graph Fourier analysis of infrastructure networks"};
    app.set_version_flag("--version", std::string(INFRAGSP_VERSION));
    app.require_subcommand(1);

    Common common;
    std::string format = "csv";
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--output-dir,-o", common.output_dir, "Directory for result files")->capture_default_str();
        sub->add_option("--format", format, "Table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
        sub->add_option("--jobs,-j", common.jobs, "Input files processed in parallel (0 = all cores)")
            ->capture_default_str();
    };

    AnalyzeOptions ao;
    auto* analyze = app.add_subcommand("analyze", "Spectral metrics of bus-voltage signals on power cases");
    analyze->add_option("cases", ao.cases, "MATPOWER-format case files")->required()->check(CLI::ExistingFile);
    analyze->add_option("--thresholds", ao.thresholds, "Energy thresholds in (0, 1)")->delimiter(',')->allow_extra_args(false)
        ->capture_default_str();
    analyze->add_flag("--mean-removed,!--no-mean-removed", ao.mean_removed, "Also report mean-removed metrics")
        ->capture_default_str();
    analyze->add_option("--active-generation", ao.generation, "Rule for an active generator bus")
        ->check(CLI::IsMember({"status", "dispatch"}))
        ->capture_default_str();
    analyze->add_flag("--spectra", ao.spectra, "Also write the per-case power spectrum");
    add_common(analyze);

    DenoiseOptions dn;
    auto* denoise = app.add_subcommand("denoise", "Monte Carlo denoising with h_alpha and h_LP filters");
    denoise->add_option("cases", dn.cases, "MATPOWER-format case files")->required()->check(CLI::ExistingFile);
    denoise->add_option("--snr-db", dn.snr_db)->capture_default_str();
    denoise->add_option("--trials", dn.trials)->capture_default_str();
    denoise->add_option("--alpha-lo", dn.alpha_lo)->capture_default_str();
    denoise->add_option("--alpha-hi", dn.alpha_hi)->capture_default_str();
    denoise->add_option("--alpha-count", dn.alpha_count)->capture_default_str();
    denoise->add_option("--seed", dn.seed)->capture_default_str();
    denoise->add_option("--lp-threshold", dn.lp_threshold, "Energy threshold that sets the h_LP cutoff")
        ->capture_default_str();
    denoise->add_flag("--real-noise", dn.real_noise, "Real Gaussian noise instead of circular complex");
    denoise->add_option("--threads", dn.threads, "Trial threads per case (0 = all cores)")->capture_default_str();
    add_common(denoise);

    FdiOptions fo;
    auto* fdi = app.add_subcommand("fdi", "Detectability of unit injections under the high-pass filter");
    fdi->add_option("cases", fo.cases, "MATPOWER-format case files")->required()->check(CLI::ExistingFile);
    fdi->add_option("--threshold", fo.threshold, "Energy threshold that sets K")->capture_default_str();
    add_common(fdi);

    CorrelateOptions co;
    auto* correlate = app.add_subcommand("correlate", "Spearman correlation of two metrics-table columns");
    correlate->add_option("table", co.table, "Metrics CSV")->required()->check(CLI::ExistingFile);
    correlate->add_option("--x", co.x)->required();
    correlate->add_option("--y", co.y)->required();
    correlate->add_flag("--exact-p", co.exact_p, "Exact permutation p-value (n <= 10)");
    add_common(correlate);

    WaterOptions wo;
    auto* water = app.add_subcommand("water", "Summed graph-Fourier power of water-network signals");
    water->add_option("pipes", wo.pipes, "Pipe table CSV")->required()->check(CLI::ExistingFile);
    water->add_option("--signals", wo.signals.path, "Signal table CSV")->required()->check(CLI::ExistingFile);
    water->add_flag("--complex-signals", wo.signals.complex_signals, "Rows hold re,im pairs");
    water->add_option("--model", wo.model)
        ->check(CLI::IsMember({"unweighted", "hazen-williams", "hagen-poiseuille"}))
        ->capture_default_str();
    add_common(water);

    SearchOptions so;
    auto* search = app.add_subcommand("weight-search", "Random search for low-pass edge weights");
    search->add_option("topology", so.topology, "Pipe table or from,to edge list CSV")->required()->check(CLI::ExistingFile);
    search->add_option("--signals", so.signals.path, "Signal table CSV")->required()->check(CLI::ExistingFile);
    search->add_flag("--complex-signals", so.signals.complex_signals, "Rows hold re,im pairs");
    search->add_option("--iterations", so.iterations)->capture_default_str();
    search->add_option("--seed", so.seed)->capture_default_str();
    search->add_option("--weight-lo", so.weight_lo)->capture_default_str();
    search->add_option("--weight-hi", so.weight_hi)->capture_default_str();
    search->add_option("--objective", so.objective)
        ->check(CLI::IsMember({"mean_lp_ratio", "mean_lowband_energy"}))
        ->capture_default_str();
    search->add_option("--threshold", so.threshold)->capture_default_str();
    search->add_option("--lowband-count", so.lowband_count);
    search->add_option("--max-vertices", so.max_vertices)->capture_default_str();
    search->add_option("--threads", so.threads, "Candidate evaluation threads (0 = all cores)")->capture_default_str();
    add_common(search);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_input;
    }
    common.format = format == "json" ? OutputFormat::json : OutputFormat::csv;

    if (analyze->parsed()) cmd_analyze(ao, common);
    else if (denoise->parsed()) cmd_denoise(dn, common);
    else if (fdi->parsed()) cmd_fdi(fo, common);
    else if (correlate->parsed()) cmd_correlate(co, common);
    else if (water->parsed()) cmd_water(wo, common);
    else if (search->parsed()) cmd_weight_search(so, common);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_main(argc, argv);
    } catch (const infragsp::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return exit_numerical;
    } catch (const infragsp::InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return exit_input;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return exit_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
