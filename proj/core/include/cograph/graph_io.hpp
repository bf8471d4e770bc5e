#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "cograph/graph.hpp"

namespace cograph {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_number, const std::string& message)
        : std::runtime_error("line " + std::to_string(line_number) + ": " + message),
          line(line_number) {}
};

/// Graph file: header "n m", then m lines "u v" with 0 <= u < v < n.
/// '#' starts a comment anywhere on a line. Duplicate edges, out-of-range
/// endpoints and a wrong m are rejected with a ParseError carrying the line
/// number.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);

/// Normalized form: header, then edges ascending, one per line.
void write_graph(std::ostream& out, const Graph& g);

/// Certificate file: lines "u v" with an optional trailing '+' or '-'
/// marker (ignored on input).
PairSet read_pairs(std::istream& in);
PairSet read_pairs_file(const std::string& path);

/// Deletion certificates print "u v"; editing certificates append " +" for
/// added pairs and " -" for deleted ones.
void write_certificate(std::ostream& out, const Graph& g, const PairSet& f, Mode mode);

}  // namespace cograph
