#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "evograph/event.hpp"
#include "evograph/graph.hpp"
#include "evograph/provider.hpp"

namespace evograph {

struct EvolveConfig {
    int steps_l = 3;      // BFS iterations per direction
    int rel_sample = 2;   // relations sampled per node, out of the 3 per class
    int event_sample = 2; // candidates kept per node
    uint64_t rng_seed = 0;
};

std::vector<std::string> validate_evolve_config(const EvolveConfig& cfg);

struct EvolveStats {
    int provider_calls = 0;
    // Candidates discarded because their text already occurred in the graph.
    int duplicates_dropped = 0;
    // Expansions that kept fewer than event_sample candidates. Zero means the
    // graph branched fully: node count is exactly 1 + 2 * sum(event_sample^i).
    int shortfalls = 0;
};

// Observer invoked once per provider call, in canonical expansion order.
struct EvolveTraceEntry {
    std::string graph_id;
    std::string parent_id;
    int depth = 0;
    EvolveRequest request;
    EvolveResponse response;
};
using EvolveTraceFn = std::function<void(const EvolveTraceEntry&)>;

// One direction of the BFS expansion. The frontier starts at the seed; each
// step samples rel_sample relations of the direction's class per frontier
// node, asks the provider for event_sample + 1 candidates per relation,
// drops candidates whose case-folded text already occurs in the graph, keeps
// event_sample of the remainder by seeded sampling, and inserts them in
// (relation label, text) order. The caption is attached to the request only
// on the first step, when the parent is the seed itself.
// Requires seed.caption to be present.
EvolvingGraph evolve_direction(const Event& seed, NodeDirection direction,
                               const EvolveConfig& cfg, EventProvider& provider,
                               EvolveStats* stats = nullptr,
                               const EvolveTraceFn& trace = nullptr);

// Both directions merged on the shared seed node: forward first, then
// backward. graph_id is the seed event's id.
EvolvingGraph evolve_graph(const Event& seed, const EvolveConfig& cfg,
                           EventProvider& provider, EvolveStats* stats = nullptr,
                           const EvolveTraceFn& trace = nullptr);

// Content-addressed node id: stable hash of (graph_id, parent_id, relation,
// text). The seed uses empty parent and relation fields.
std::string node_id_for(const std::string& graph_id, const std::string& parent_id,
                        const std::string& relation_label, const std::string& text);

} // namespace evograph
