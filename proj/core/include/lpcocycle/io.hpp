#pragma once

#include <iosfwd>
#include <string>

#include "lpcocycle/group_ball.hpp"
#include "lpcocycle/metric.hpp"

namespace lpcocycle {

// Three on-disk forms, all byte-deterministic on output:
//
//   edge list        one "u v" pair per line, '#' starts a comment
//   graph document   {"format": "lpcocycle.graph", "version": 1, "vertices": [...],
//                     "edges": [[u, v], ...], "labels"?: [...],
//                     "automorphisms"?: [{"name": ..., "image": [id | null, ...]}],
//                     "center"?: id, "radius"?: r, "inner_radius"?: N, "boundary"?: [...]}
//   metric document  {"format": "lpcocycle.metric", "version": 1, "n": n,
//                     "distances": [d(0,1), d(0,2), ..., d(n-2,n-1)]}
//
// Graph documents name vertices by their original ids; automorphism images are
// aligned with "vertices".

FiniteGraph parse_edge_list(std::istream& in);
std::string format_edge_list(const FiniteGraph& g);

Space parse_graph_document(const std::string& text, std::string name = {});
std::string format_graph_document(const Space& space);

MetricTable parse_metric_document(const std::string& text);
std::string format_metric_document(const MetricTable& m);

/// Graph document or edge list, detected from the first non-blank character.
Space load_space(const std::string& path);

/// Metric document, or the graph metric of anything load_space accepts.
MetricTable load_metric(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

/// v rounded to `digits` significant digits, so the shortest round-trip
/// rendering never shows more than that.
double round_significant(double v, int digits = 12);

}  // namespace lpcocycle
