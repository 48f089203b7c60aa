#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "actdate/evaluation.hpp"
#include "actdate/graph.hpp"

namespace actdate {

/// Malformed input file; the message carries the offending line number(s).
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Shortest decimal text that parses back to the same double ('.' separator).
std::string format_double(double value);

struct ParsedEdgeList {
    TimestampedGraph graph;
    /// File id of each vertex; identity unless ids were compacted.
    std::vector<std::size_t> file_ids;
};

/// Reads "src,dst,date" CSV. Without `compact`, n = 1 + max id and id gaps
/// become isolated vertices; with it, ids are renumbered 0..n-1 in increasing
/// order. Throws ParseError with line numbers on bad input.
ParsedEdgeList parse_edge_list(std::istream& in, bool compact = false);
ParsedEdgeList read_edge_list(const std::string& path, bool compact = false);

void write_edge_list(std::ostream& out, const TimestampedGraph& graph);
/// `ids` labels the rows; empty means 0..n-1.
void write_node_estimates(std::ostream& out, const LatentDates& local, const LatentDates& model,
                          std::span<const std::size_t> ids = {});
void write_truth(std::ostream& out, const LatentDates& truth);
void write_trace(std::ostream& out, std::span<const double> trace);

/// Column order matches ExperimentRecord.
void write_records(std::ostream& out, std::span<const ExperimentRecord> records);
/// Missing smoothed values are written as "NA".
void write_curve(std::ostream& out, const SmoothedCurve& curve);

}  // namespace actdate
