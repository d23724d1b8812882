#pragma once

#include "wstab/degeneration.hpp"
#include "wstab/reduction.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace wstab {

using Json = nlohmann::ordered_json;

/// A parsed input file: either a degeneration graph or a Weierstrass
/// configuration, plus the weights stored with it.
struct InputDocument {
    std::optional<DegenerationGraph> graph;
    std::optional<WeierstrassConfig> weierstrass;
    WeightVector weights;
};

/// Throws ParseError with line and column for malformed JSON, and with the
/// offending path for schema errors.
InputDocument parse_input(const std::string& text);
DegenerationGraph parse_graph(const std::string& text);
DegenerationGraph graph_from_json(const Json& j);

Json weights_to_json(const WeightVector& I);
Json graph_to_json(const DegenerationGraph& G);
Json weierstrass_to_json(const WeierstrassConfig& W, const WeightVector& I);
Json input_to_json(const InputDocument& doc);
std::string graph_to_string(const DegenerationGraph& G);

Json rnd_to_json(const RefinedNumericalData& rnd);
/// Canonical text of the refined numerical data; equal keys mean equal data.
std::string rnd_key(const DegenerationGraph& G);

Json move_to_json(const Move& m);
Json trace_to_json(const ReductionTrace& trace, const Json& header);

/// One DOT graph per frame: the start graph, then the graph after each move.
std::string dot_filmstrip(const DegenerationGraph& start, const ReductionTrace& trace);
std::string dot_graph(const DegenerationGraph& G, const std::string& name);

std::string sha256_hex(const std::string& data);
/// Digest of the canonicalized input.
std::string input_digest(const InputDocument& doc);

}  // namespace wstab
