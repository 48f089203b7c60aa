#include "actdate/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string_view>
#include <system_error>
#include <utility>

namespace actdate {

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return fields;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

std::size_t parse_id(std::string_view field, std::size_t line_no, const char* name) {
    std::size_t value = 0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || res.ec != std::errc{} || res.ptr != field.data() + field.size())
        fail(line_no, std::string(name) + " '" + std::string(field) + "' is not a nonnegative integer");
    return value;
}

double parse_date(std::string_view field, std::size_t line_no) {
    double value = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || res.ec != std::errc{} || res.ptr != field.data() + field.size() || !std::isfinite(value))
        fail(line_no, "date '" + std::string(field) + "' is not a finite number");
    return value;
}

}  // namespace

ParsedEdgeList parse_edge_list(std::istream& in, bool compact) {
    std::string line;
    std::size_t line_no = 0;

    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        const auto fields = split(line);
        if (fields.size() != 3 || fields[0] != "src" || fields[1] != "dst" || fields[2] != "date")
            fail(line_no, "expected header 'src,dst,date'");
        have_header = true;
        break;
    }
    if (!have_header)
        throw ParseError("missing header 'src,dst,date'");

    struct Row {
        std::size_t src, dst;
        double date;
    };
    std::vector<Row> rows;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> first_seen;
    std::size_t max_id = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        const auto fields = split(line);
        if (fields.size() != 3)
            fail(line_no, "expected 3 fields, found " + std::to_string(fields.size()));
        const std::size_t src = parse_id(fields[0], line_no, "src");
        const std::size_t dst = parse_id(fields[1], line_no, "dst");
        const double date = parse_date(fields[2], line_no);
        if (src == dst)
            fail(line_no, "self-loop on vertex " + std::to_string(src));
        const auto key = std::minmax(src, dst);
        const auto [it, fresh] = first_seen.emplace(key, line_no);
        if (!fresh)
            fail(line_no, "duplicate pair {" + std::to_string(key.first) + ", " + std::to_string(key.second) +
                              "} (first seen on line " + std::to_string(it->second) + ")");
        max_id = std::max({max_id, src, dst});
        rows.push_back({src, dst, date});
    }

    ParsedEdgeList out;
    std::size_t n = rows.empty() ? 0 : max_id + 1;
    std::vector<Edge> edges;
    edges.reserve(rows.size());
    if (compact) {
        std::map<std::size_t, std::size_t> ids;
        for (const Row& r : rows) {
            ids.emplace(r.src, 0);
            ids.emplace(r.dst, 0);
        }
        for (auto& [file_id, v] : ids) {
            v = out.file_ids.size();
            out.file_ids.push_back(file_id);
        }
        n = ids.size();
        for (const Row& r : rows)
            edges.push_back({ids[r.src], ids[r.dst], r.date});
    } else {
        out.file_ids.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            out.file_ids[i] = i;
        for (const Row& r : rows)
            edges.push_back({r.src, r.dst, r.date});
    }
    out.graph = TimestampedGraph(n, std::move(edges));
    return out;
}

ParsedEdgeList read_edge_list(const std::string& path, bool compact) {
    std::ifstream in(path);
    if (!in)
        throw std::system_error(errno, std::generic_category(), "cannot open '" + path + "'");
    try {
        return parse_edge_list(in, compact);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_edge_list(std::ostream& out, const TimestampedGraph& graph) {
    out << "src,dst,date\n";
    for (const Edge& e : graph.edges())
        out << e.u << ',' << e.v << ',' << format_double(e.date) << '\n';
}

void write_node_estimates(std::ostream& out, const LatentDates& local, const LatentDates& model,
                          std::span<const std::size_t> ids) {
    if (local.size() != model.size())
        throw InvalidInput("local and model estimates differ in length");
    if (!ids.empty() && ids.size() != local.size())
        throw InvalidInput("node ids do not match the estimates");
    out << "node,z_local,z_model\n";
    for (std::size_t i = 0; i < local.size(); ++i)
        out << (ids.empty() ? i : ids[i]) << ',' << format_double(local[i]) << ',' << format_double(model[i]) << '\n';
}

void write_truth(std::ostream& out, const LatentDates& truth) {
    out << "node,z_true\n";
    for (std::size_t i = 0; i < truth.size(); ++i)
        out << i << ',' << format_double(truth[i]) << '\n';
}

void write_trace(std::ostream& out, std::span<const double> trace) {
    out << "iteration,log_likelihood\n";
    for (std::size_t i = 0; i < trace.size(); ++i)
        out << i << ',' << format_double(trace[i]) << '\n';
}

void write_records(std::ostream& out, std::span<const ExperimentRecord> records) {
    out << "scenario,rewire_fraction,target_density,seed,n_lcc,edges,edges_per_vertex,"
           "mse_local,mse_model,improvement,converged,accepted\n";
    for (const ExperimentRecord& r : records) {
        out << to_string(r.scenario) << ',' << format_double(r.rewire_fraction) << ','
            << format_double(r.target_density) << ',' << r.seed << ',' << r.n_lcc << ',' << r.edges << ','
            << format_double(r.edges_per_vertex) << ',' << format_double(r.mse_local) << ','
            << format_double(r.mse_model) << ',' << format_double(r.improvement) << ',' << (r.converged ? 1 : 0)
            << ',' << (r.accepted ? 1 : 0) << '\n';
    }
}

void write_curve(std::ostream& out, const SmoothedCurve& curve) {
    out << "edges_per_vertex,smoothed_improvement\n";
    for (std::size_t k = 0; k < curve.grid_x.size(); ++k) {
        out << format_double(curve.grid_x[k]) << ',';
        if (curve.values[k])
            out << format_double(*curve.values[k]);
        else
            out << "NA";
        out << '\n';
    }
}

}  // namespace actdate
