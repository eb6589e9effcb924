#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "hsge/graph.hpp"

namespace hsge {

struct SamplerParams {
  std::size_t restarts = 10000;  // M
  std::size_t max_edges = 5;     // T
  std::uint64_t seed = 0;

  void validate() const;
};

enum class SampleStatus { kOk, kEdgeless };

struct GraphletSample {
  std::vector<Graphlet> graphlets;
  SampleStatus status = SampleStatus::kOk;
};

/// Random walk with restarts over connected graphlets.
///
/// Each of the M restarts starts from a uniformly drawn node and performs up
/// to T growth steps. A step draws a visited node uniformly among those that
/// still have an unused incident edge, then one of its unused incident edges
/// uniformly, and emits the accumulated edge set. A restart with no eligible
/// node ends early. Output order is fully determined by the seed.
GraphletSample sample_graphlets(const AttributedGraph& g, const SamplerParams& params);

/// Streaming form of sample_graphlets; the view is only valid during the call.
/// Returns the number of graphlets emitted.
std::size_t for_each_graphlet(const AttributedGraph& g, const SamplerParams& params,
                              const std::function<void(const GraphletView&)>& visit);

}  // namespace hsge
