#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evograph/relation.hpp"

namespace evograph {

enum class NodeDirection { Seed, Forward, Backward };

std::string_view to_string(NodeDirection d);
NodeDirection node_direction_from_string(std::string_view label);

struct GraphNode {
    std::string id;
    std::string text;
    NodeDirection direction = NodeDirection::Seed;
    int depth = 0;

    bool operator==(const GraphNode&) const = default;
};

// Edge (src, rel, dst): dst stands in relation `rel` to src. For a forward
// expansion the child is e.g. the Result of its parent.
struct GraphEdge {
    std::string src;
    Relation rel = Relation::Result;
    std::string dst;

    bool operator==(const GraphEdge&) const = default;
};

// Two relation-labeled trees sharing one seed node: a forward tree and a
// backward tree grown from the same event. Nodes and edges are kept in
// construction order, which doubles as the canonical serialization order.
struct EvolvingGraph {
    std::string graph_id;
    std::string seed_id;
    std::vector<GraphNode> nodes;
    std::vector<GraphEdge> edges;

    bool operator==(const EvolvingGraph&) const = default;

    const GraphNode* find_node(const std::string& id) const;

    // The unique incoming edge of a node, or nullptr for the seed.
    const GraphEdge* parent_edge(const std::string& node_id) const;
};

// Structural validation. Returns one description per violated invariant,
// naming the offending node/edge ids; an empty list means the graph is valid.
// Checked invariants:
//   - exactly one seed-direction node, which is `seed_id` and has depth 0
//   - depth == 0 exactly for the seed
//   - every non-seed node has exactly one incoming edge; the seed has none
//   - edges connect existing nodes, never into the seed, and never across
//     the forward/backward trees
//   - an edge into a forward node carries a forward label, into a backward
//     node a backward label
//   - depth(dst) == depth(src) + 1 on every edge
//   - node ids are unique
std::vector<std::string> validate_graph(const EvolvingGraph& graph);

} // namespace evograph
