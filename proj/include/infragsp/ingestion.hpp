#pragma once

// Case-file and table ingestion: MATPOWER-format power cases, pipe tables,
// edge lists and signal tables, plus the admittance and hydraulic edge
// weightings that turn them into InfraGraphs.

#include "csv.hpp"
#include "errors.hpp"
#include "graph_model.hpp"
#include "spectral.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace infragsp {

// ---------------------------------------------------------------------------
// Power cases

struct Bus {
    long id = 0;
    double vm = 1.0; ///< per-unit
    double va = 0.0; ///< degrees
};

struct Branch {
    long from_bus = 0;
    long to_bus = 0;
    double r = 0.0; ///< per-unit
    double x = 0.0; ///< per-unit
    bool in_service = true;
    std::size_t line = 0; ///< source line, for diagnostics
};

struct Generator {
    long bus = 0;
    double pg = 0.0; ///< MW
    bool in_service = true;
};

struct PowerCase {
    std::string name;
    std::vector<Bus> buses;
    std::vector<Branch> branches;
    std::vector<Generator> generators;

    /// Dense vertex index of a bus id (file order).
    std::size_t index_of(long bus_id) const {
        auto it = index_.find(bus_id);
        if (it == index_.end()) throw InputError("unknown bus id " + std::to_string(bus_id));
        return it->second;
    }

    bool has_bus(long bus_id) const { return index_.count(bus_id) != 0; }

    void rebuild_index() {
        index_.clear();
        for (std::size_t i = 0; i < buses.size(); ++i) index_.emplace(buses[i].id, i);
    }

private:
    std::unordered_map<long, std::size_t> index_;
};

namespace detail {

struct MatrixBlock {
    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> lines;
};

inline std::string_view strip_matlab_comment(std::string_view line) {
    auto p = line.find('%');
    return p == std::string_view::npos ? line : line.substr(0, p);
}

/// If `line` opens a matrix block, returns its name and the text after '['.
inline std::optional<std::pair<std::string, std::string_view>> block_start(std::string_view line) {
    auto t = csv::trim(line);
    if (t.rfind("mpc.", 0) == 0) t.remove_prefix(4);
    std::size_t i = 0;
    while (i < t.size() && (std::isalnum(static_cast<unsigned char>(t[i])) || t[i] == '_')) ++i;
    if (i == 0) return std::nullopt;
    std::string name(t.substr(0, i));
    auto rest = csv::trim(t.substr(i));
    if (rest.empty() || rest.front() != '=') return std::nullopt;
    rest = csv::trim(rest.substr(1));
    if (rest.empty() || rest.front() != '[') return std::nullopt;
    return std::make_pair(name, rest.substr(1));
}

inline bool parse_number_token(std::string_view tok, double& out) {
    if (tok == "Inf" || tok == "inf") {
        out = std::numeric_limits<double>::infinity();
        return true;
    }
    if (tok == "-Inf" || tok == "-inf") {
        out = -std::numeric_limits<double>::infinity();
        return true;
    }
    return csv::parse_double(tok, out);
}

/// Adds the rows found in `text` (one source line) to `block`. Rows end at ';'
/// or at end of line; fields are separated by whitespace or commas.
inline void append_rows(MatrixBlock& block, std::string_view text, std::size_t line, const std::string& source) {
    std::vector<double> row;
    auto flush = [&] {
        if (!row.empty()) {
            block.rows.push_back(std::move(row));
            block.lines.push_back(line);
            row.clear();
        }
    };
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == ';') {
            flush();
            ++i;
        } else if (c == ' ' || c == '\t' || c == ',' || c == '\r') {
            ++i;
        } else {
            std::size_t j = i;
            while (j < text.size() && text[j] != ';' && text[j] != ' ' && text[j] != '\t' && text[j] != ',' &&
                   text[j] != '\r')
                ++j;
            double v = 0.0;
            if (!parse_number_token(text.substr(i, j - i), v))
                throw ParseError(source, line, "malformed matrix entry '" + std::string(text.substr(i, j - i)) + "'");
            row.push_back(v);
            i = j;
        }
    }
    flush();
}

/// Collects the `wanted` matrix blocks; other `name = [ ... ]` blocks are
/// skipped without interpreting their contents.
inline std::map<std::string, MatrixBlock> read_matrix_blocks(std::string_view text, const std::string& source,
                                                             const std::set<std::string>& wanted,
                                                             std::string& function_name) {
    std::map<std::string, MatrixBlock> blocks;
    std::string current;
    bool inside = false;
    auto target = [&]() -> MatrixBlock& { return blocks[current]; };
    std::size_t number = 0, pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        ++number;
        auto line = strip_matlab_comment(raw);
        if (!inside) {
            auto t = csv::trim(line);
            if (t.rfind("function", 0) == 0) {
                auto eq = t.find('=');
                if (eq != std::string_view::npos) function_name = std::string(csv::trim(t.substr(eq + 1)));
            } else if (auto start = block_start(line)) {
                current = start->first;
                auto body = start->second;
                auto close = body.find(']');
                if (wanted.count(current)) {
                    auto& block = target();
                    block = {};
                    append_rows(block, close == std::string_view::npos ? body : body.substr(0, close), number, source);
                }
                inside = close == std::string_view::npos;
            }
        } else {
            auto close = line.find(']');
            if (wanted.count(current))
                append_rows(target(), close == std::string_view::npos ? line : line.substr(0, close), number, source);
            if (close != std::string_view::npos) inside = false;
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    if (inside) throw ParseError(source, number, "unterminated matrix block '" + current + "'");
    return blocks;
}

inline long integral_id(double v, std::size_t line, const std::string& source, const char* what) {
    if (!std::isfinite(v) || v != std::floor(v)) throw ParseError(source, line, std::string(what) + " is not an integer");
    return static_cast<long>(v);
}

} // namespace detail

/// Parses the bus, branch and gen matrices of a MATPOWER-format case.
///
/// Columns used (1-based): bus 1=id, 8=Vm, 9=Va; branch 1,2=endpoints, 3=r,
/// 4=x, 11=status; gen 1=bus, 2=Pg, 8=status. This is a line-oriented reader
/// of `name = [ ... ];` blocks, not a general matrix-language interpreter.
inline PowerCase parse_power_case(std::string_view text, const std::string& source = "case") {
    std::string function_name;
    auto blocks = detail::read_matrix_blocks(text, source, {"bus", "branch", "gen"}, function_name);
    for (const char* required : {"bus", "branch", "gen"})
        if (!blocks.count(required)) throw InputError(source + ": missing '" + required + "' matrix block");

    PowerCase c;
    c.name = function_name.empty() ? source : function_name;

    const auto& bus = blocks["bus"];
    for (std::size_t i = 0; i < bus.rows.size(); ++i) {
        const auto& r = bus.rows[i];
        if (r.size() < 9)
            throw ParseError(source, bus.lines[i], "bus row has " + std::to_string(r.size()) + " columns, need >= 9");
        c.buses.push_back({detail::integral_id(r[0], bus.lines[i], source, "bus id"), r[7], r[8]});
    }
    c.rebuild_index();
    if (c.buses.empty()) throw InputError(source + ": no buses");
    {
        std::set<long> seen;
        for (std::size_t i = 0; i < c.buses.size(); ++i)
            if (!seen.insert(c.buses[i].id).second)
                throw ParseError(source, bus.lines[i], "duplicate bus id " + std::to_string(c.buses[i].id));
    }

    const auto& br = blocks["branch"];
    for (std::size_t i = 0; i < br.rows.size(); ++i) {
        const auto& r = br.rows[i];
        const auto line = br.lines[i];
        if (r.size() < 11)
            throw ParseError(source, line, "branch row has " + std::to_string(r.size()) + " columns, need >= 11");
        Branch b;
        b.from_bus = detail::integral_id(r[0], line, source, "branch from-bus");
        b.to_bus = detail::integral_id(r[1], line, source, "branch to-bus");
        b.r = r[2];
        b.x = r[3];
        b.in_service = r[10] > 0.0;
        b.line = line;
        for (long id : {b.from_bus, b.to_bus})
            if (!c.has_bus(id)) throw ParseError(source, line, "branch references unknown bus " + std::to_string(id));
        c.branches.push_back(b);
    }

    const auto& gen = blocks["gen"];
    for (std::size_t i = 0; i < gen.rows.size(); ++i) {
        const auto& r = gen.rows[i];
        const auto line = gen.lines[i];
        if (r.size() < 8)
            throw ParseError(source, line, "gen row has " + std::to_string(r.size()) + " columns, need >= 8");
        Generator g;
        g.bus = detail::integral_id(r[0], line, source, "gen bus");
        g.pg = r[1];
        g.in_service = r[7] > 0.0;
        if (!c.has_bus(g.bus)) throw ParseError(source, line, "generator references unknown bus " + std::to_string(g.bus));
        c.generators.push_back(g);
    }
    return c;
}

/// One vertex per bus in file order; one edge per in-service bus pair with
/// weight y = 1/(r + jx), parallel branches summed. Shunt-like branches with
/// equal endpoints are dropped.
inline InfraGraph power_graph(const PowerCase& c) {
    std::vector<Edge> edges;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> slot;
    for (const auto& b : c.branches) {
        if (!b.in_service) continue;
        if (b.r == 0.0 && b.x == 0.0)
            throw InputError(c.name + ":" + std::to_string(b.line) + ": in-service branch " +
                             std::to_string(b.from_bus) + "-" + std::to_string(b.to_bus) +
                             " has zero impedance (infinite admittance)");
        const std::size_t tail = c.index_of(b.from_bus);
        const std::size_t head = c.index_of(b.to_bus);
        if (tail == head) continue;
        const Complex y = 1.0 / Complex(b.r, b.x);
        const auto key = std::minmax(tail, head);
        auto it = slot.find(key);
        if (it == slot.end()) {
            slot.emplace(key, edges.size());
            edges.push_back({tail, head, y});
        } else {
            edges[it->second].weight += y;
        }
    }
    edges.erase(std::remove_if(edges.begin(), edges.end(), [](const Edge& e) { return std::abs(e.weight) == 0.0; }),
                edges.end());
    return InfraGraph(c.buses.size(), std::move(edges), c.name);
}

/// V_k = Vm_k exp(j pi Va_k / 180).
inline GraphSignal bus_voltage_signal(const PowerCase& c) {
    GraphSignal s;
    s.graph_name = c.name;
    s.values.resize(static_cast<Eigen::Index>(c.buses.size()));
    for (std::size_t i = 0; i < c.buses.size(); ++i)
        s.values(static_cast<Eigen::Index>(i)) = std::polar(c.buses[i].vm, std::numbers::pi * c.buses[i].va / 180.0);
    return s;
}

enum class GenerationRule {
    status,   ///< generator status > 0
    dispatch, ///< status > 0 and nonzero real-power output
};

/// Share of buses hosting at least one active generator.
inline double generation_fraction(const PowerCase& c, GenerationRule rule = GenerationRule::status) {
    std::set<long> active;
    for (const auto& g : c.generators) {
        if (!g.in_service) continue;
        if (rule == GenerationRule::dispatch && g.pg == 0.0) continue;
        active.insert(g.bus);
    }
    return static_cast<double>(active.size()) / static_cast<double>(c.buses.size());
}

// ---------------------------------------------------------------------------
// Water networks

struct Pipe {
    std::string from;
    std::string to;
    double roughness = 0.0; ///< Hazen-Williams C, unitless
    double diameter = 0.0;  ///< m
    double length = 0.0;    ///< m
};

struct EdgeList {
    /// Vertex names in order of first appearance; index = vertex index.
    std::vector<std::string> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

struct PipeTable {
    std::vector<Pipe> pipes;

    EdgeList topology() const {
        EdgeList out;
        std::unordered_map<std::string, std::size_t> idx;
        auto vertex = [&](const std::string& name) {
            auto [it, fresh] = idx.emplace(name, out.vertices.size());
            if (fresh) out.vertices.push_back(name);
            return it->second;
        };
        for (const auto& p : pipes) {
            const auto a = vertex(p.from);
            const auto b = vertex(p.to);
            out.edges.emplace_back(a, b);
        }
        return out;
    }
};

inline constexpr std::string_view pipe_table_header = "from,to,roughness,diameter_m,length_m";

namespace detail {

inline std::string header_of(const csv::Line& line) {
    auto cells = csv::split_record(line.text);
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += std::string(csv::trim(cells[i]));
    }
    return out;
}

inline void check_unique_pairs(const std::vector<std::pair<std::string, std::string>>& pairs,
                               const std::vector<std::size_t>& lines, const std::string& source) {
    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [a, b] = pairs[i];
        if (a == b) throw ParseError(source, lines[i], "edge joins junction '" + a + "' to itself");
        if (!seen.insert(std::minmax(a, b)).second)
            throw ParseError(source, lines[i], "duplicate pipe between '" + a + "' and '" + b + "'");
    }
}

} // namespace detail

/// CSV with header `from,to,roughness,diameter_m,length_m`; `#` comments allowed.
inline PipeTable parse_pipe_table(std::string_view text, const std::string& source = "pipes") {
    const auto lines = csv::content_lines(text);
    if (lines.empty()) throw InputError(source + ": empty pipe table");
    if (detail::header_of(lines[0]) != pipe_table_header)
        throw ParseError(source, lines[0].number, "expected header '" + std::string(pipe_table_header) + "'");
    PipeTable t;
    std::vector<std::pair<std::string, std::string>> pairs;
    std::vector<std::size_t> numbers;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = csv::split_record(lines[i].text);
        if (cells.size() != 5)
            throw ParseError(source, lines[i].number, "expected 5 fields, found " + std::to_string(cells.size()));
        Pipe p;
        p.from = std::string(csv::trim(cells[0]));
        p.to = std::string(csv::trim(cells[1]));
        if (p.from.empty() || p.to.empty()) throw ParseError(source, lines[i].number, "empty junction id");
        double* dst[3] = {&p.roughness, &p.diameter, &p.length};
        const char* names[3] = {"roughness", "diameter_m", "length_m"};
        for (int k = 0; k < 3; ++k) {
            if (!csv::parse_double(cells[2 + k], *dst[k]))
                throw ParseError(source, lines[i].number, std::string("malformed ") + names[k]);
            if (!(*dst[k] > 0.0) || !std::isfinite(*dst[k]))
                throw ParseError(source, lines[i].number, std::string(names[k]) + " must be positive");
        }
        pairs.emplace_back(p.from, p.to);
        numbers.push_back(lines[i].number);
        t.pipes.push_back(std::move(p));
    }
    if (t.pipes.empty()) throw InputError(source + ": pipe table has no rows");
    detail::check_unique_pairs(pairs, numbers, source);
    return t;
}

/// Plain topology CSV: header starting `from,to` (further columns ignored).
/// A full pipe-table header is accepted too.
inline EdgeList parse_edge_list(std::string_view text, const std::string& source = "edges") {
    const auto lines = csv::content_lines(text);
    if (lines.empty()) throw InputError(source + ": empty edge list");
    const auto header = csv::split_record(lines[0].text);
    if (header.size() < 2 || csv::trim(header[0]) != "from" || csv::trim(header[1]) != "to")
        throw ParseError(source, lines[0].number, "expected header beginning 'from,to'");
    EdgeList out;
    std::unordered_map<std::string, std::size_t> idx;
    std::vector<std::pair<std::string, std::string>> pairs;
    std::vector<std::size_t> numbers;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = csv::split_record(lines[i].text);
        if (cells.size() != header.size())
            throw ParseError(source, lines[i].number, "expected " + std::to_string(header.size()) + " fields");
        std::string a(csv::trim(cells[0])), b(csv::trim(cells[1]));
        if (a.empty() || b.empty()) throw ParseError(source, lines[i].number, "empty vertex id");
        pairs.emplace_back(a, b);
        numbers.push_back(lines[i].number);
    }
    detail::check_unique_pairs(pairs, numbers, source);
    auto vertex = [&](const std::string& name) {
        auto [it, fresh] = idx.emplace(name, out.vertices.size());
        if (fresh) out.vertices.push_back(name);
        return it->second;
    };
    for (const auto& [a, b] : pairs) {
        const auto ia = vertex(a);
        const auto ib = vertex(b);
        out.edges.emplace_back(ia, ib);
    }
    if (out.edges.empty()) throw InputError(source + ": edge list has no rows");
    return out;
}

inline InfraGraph unweighted_graph(const EdgeList& topo, std::string name = {}) {
    std::vector<Edge> edges;
    edges.reserve(topo.edges.size());
    for (auto [a, b] : topo.edges) edges.push_back({a, b, Complex(1.0, 0.0)});
    return InfraGraph(topo.vertices.size(), std::move(edges), std::move(name));
}

enum class HydraulicModel { unweighted, hazen_williams, hagen_poiseuille };

/// Resistance coefficient of the Hazen-Williams headloss, 10.667 C^-1.852 d^-4.871 L.
inline double hazen_williams_coefficient(double roughness, double diameter, double length) {
    if (!(roughness > 0.0) || !(diameter > 0.0) || !(length > 0.0))
        throw std::invalid_argument("hazen_williams: C, d and L must be positive");
    return 10.667 * std::pow(roughness, -1.852) * std::pow(diameter, -4.871) * length;
}

/// Head loss in metres for flow q (m^3/s): sgn(q) k |q|^1.852.
inline double hazen_williams_headloss(double roughness, double diameter, double length, double flow) {
    const double k = hazen_williams_coefficient(roughness, diameter, length);
    if (flow == 0.0) return 0.0;
    return std::copysign(k * std::pow(std::abs(flow), 1.852), flow);
}

/// Edge weights: 1, the inverse Hazen-Williams coefficient, or the inverse
/// Hagen-Poiseuille coefficient d^4 / L (global constants dropped).
inline InfraGraph hydraulic_graph(const PipeTable& p, HydraulicModel model, std::string name = {}) {
    const EdgeList topo = p.topology();
    std::vector<Edge> edges;
    edges.reserve(p.pipes.size());
    for (std::size_t i = 0; i < p.pipes.size(); ++i) {
        const auto& pipe = p.pipes[i];
        double w = 1.0;
        switch (model) {
        case HydraulicModel::unweighted: break;
        case HydraulicModel::hazen_williams:
            w = 1.0 / hazen_williams_coefficient(pipe.roughness, pipe.diameter, pipe.length);
            break;
        case HydraulicModel::hagen_poiseuille:
            w = std::pow(pipe.diameter, 4) / pipe.length;
            break;
        }
        edges.push_back({topo.edges[i].first, topo.edges[i].second, Complex(w, 0.0)});
    }
    return InfraGraph(topo.vertices.size(), std::move(edges), std::move(name));
}

// ---------------------------------------------------------------------------
// Signal tables

enum class SignalFormat {
    detect,  ///< `# format: complex` directive selects complex, otherwise real
    real,    ///< N real fields per row
    complex, ///< 2N fields per row: re_0, im_0, re_1, im_1, ...
};

struct SignalTableOptions {
    SignalFormat format = SignalFormat::detect;
    /// When set and the table has a header row of vertex names, columns are
    /// reordered to this vertex order.
    const std::vector<std::string>* vertex_names = nullptr;
    std::string source = "signals";
};

/// One GraphSignal per data row, in file order. An optional first row of
/// non-numeric names labels the N vertex columns.
inline std::vector<GraphSignal> parse_signal_table(std::string_view text, std::size_t expected_n,
                                                   const SignalTableOptions& opts = {}) {
    if (expected_n == 0) throw std::invalid_argument("parse_signal_table: expected_n must be positive");
    SignalFormat format = opts.format;
    if (format == SignalFormat::detect) {
        format = SignalFormat::real;
        std::size_t pos = 0;
        while (pos < text.size()) {
            auto nl = text.find('\n', pos);
            auto t = csv::trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
            if (!t.empty() && t.front() == '#') {
                auto body = csv::trim(t.substr(1));
                if (body.rfind("format:", 0) == 0) {
                    auto v = csv::trim(body.substr(7));
                    if (v == "complex") format = SignalFormat::complex;
                    else if (v == "real") format = SignalFormat::real;
                    else throw InputError(opts.source + ": unknown format directive '" + std::string(v) + "'");
                }
            }
            if (nl == std::string_view::npos) break;
            pos = nl + 1;
        }
    }
    const std::size_t width = format == SignalFormat::complex ? 2 * expected_n : expected_n;

    const auto lines = csv::content_lines(text);
    std::size_t first = 0;
    std::vector<std::size_t> column_of(expected_n);
    for (std::size_t k = 0; k < expected_n; ++k) column_of[k] = k;

    if (!lines.empty()) {
        const auto cells = csv::split_record(lines[0].text);
        double probe = 0.0;
        if (!cells.empty() && !csv::parse_double(cells[0], probe)) {
            first = 1;
            if (cells.size() != expected_n)
                throw ParseError(opts.source, lines[0].number,
                                 "header names " + std::to_string(cells.size()) + " columns, expected " +
                                     std::to_string(expected_n));
            if (opts.vertex_names) {
                std::unordered_map<std::string, std::size_t> col;
                for (std::size_t i = 0; i < cells.size(); ++i) col.emplace(std::string(csv::trim(cells[i])), i);
                if (opts.vertex_names->size() != expected_n)
                    throw std::invalid_argument("parse_signal_table: vertex_names size mismatch");
                for (std::size_t k = 0; k < expected_n; ++k) {
                    auto it = col.find((*opts.vertex_names)[k]);
                    if (it == col.end())
                        throw ParseError(opts.source, lines[0].number,
                                         "header lacks vertex '" + (*opts.vertex_names)[k] + "'");
                    column_of[k] = it->second;
                }
            }
        }
    }

    std::vector<GraphSignal> out;
    for (std::size_t i = first; i < lines.size(); ++i) {
        const auto cells = csv::split_record(lines[i].text);
        if (cells.size() != width)
            throw ParseError(opts.source, lines[i].number,
                             "row " + std::to_string(i - first + 1) + " has " + std::to_string(cells.size()) +
                                 " fields, expected " + std::to_string(width));
        std::vector<double> v(width);
        for (std::size_t j = 0; j < width; ++j)
            if (!csv::parse_double(cells[j], v[j]))
                throw ParseError(opts.source, lines[i].number, "malformed number in column " + std::to_string(j + 1));
        GraphSignal s;
        s.values.resize(static_cast<Eigen::Index>(expected_n));
        for (std::size_t k = 0; k < expected_n; ++k) {
            const std::size_t c = column_of[k];
            s.values(static_cast<Eigen::Index>(k)) =
                format == SignalFormat::complex ? Complex(v[2 * c], v[2 * c + 1]) : Complex(v[c], 0.0);
        }
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace infragsp
