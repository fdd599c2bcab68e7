#pragma once

#include <string>
#include <utility>
#include <vector>

#include "packrigid/graph.hpp"
#include "packrigid/moebius.hpp"
#include "packrigid/montecarlo.hpp"
#include "packrigid/packing.hpp"
#include "packrigid/planar_lift.hpp"
#include "packrigid/rigidity.hpp"

namespace packrigid {

// Deterministic rendering: fixed key order, numbers with 17 significant
// digits (value-preserving round trips), independent of locale. All report
// output flows through these helpers so identical runs emit identical bytes.
std::string json_number(double value);
std::string json_escape(const std::string& text);
std::string json_array(const std::vector<std::string>& rendered_items);
std::string json_object(const std::vector<std::pair<std::string, std::string>>& fields);

std::string to_json(const Graph& g);
std::string to_json(const Packing& pk);
std::string to_json(const PennyRealization& r);
std::string to_json(const ChainResult& chain);
std::string to_json(const MoebiusTransform& t);
std::string to_json(const TransformPipeline& pipeline);
std::string to_json(const ValidationReport& report);
std::string to_json(const StressReport& report);
std::string to_json(const StressExperimentReport& report);
std::string to_json(const ChainExperimentReport& report);

Graph graph_from_json(const std::string& text);
Packing packing_from_json(const std::string& text);
PennyRealization penny_from_json(const std::string& text);
ChainResult chain_from_json(const std::string& text);

}  // namespace packrigid
