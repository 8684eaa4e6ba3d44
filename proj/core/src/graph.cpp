#include "evograph/graph.hpp"

#include <unordered_map>
#include <unordered_set>

#include "evograph/errors.hpp"

namespace evograph {

std::string_view to_string(NodeDirection d) {
    switch (d) {
        case NodeDirection::Seed: return "seed";
        case NodeDirection::Forward: return "forward";
        case NodeDirection::Backward: return "backward";
    }
    throw Error("internal", "invalid node direction");
}

NodeDirection node_direction_from_string(std::string_view label) {
    if (label == "seed") return NodeDirection::Seed;
    if (label == "forward") return NodeDirection::Forward;
    if (label == "backward") return NodeDirection::Backward;
    throw InputError("unknown node direction: '" + std::string(label) + "'");
}

const GraphNode* EvolvingGraph::find_node(const std::string& id) const {
    for (const auto& n : nodes) {
        if (n.id == id) return &n;
    }
    return nullptr;
}

const GraphEdge* EvolvingGraph::parent_edge(const std::string& node_id) const {
    for (const auto& e : edges) {
        if (e.dst == node_id) return &e;
    }
    return nullptr;
}

std::vector<std::string> validate_graph(const EvolvingGraph& graph) {
    std::vector<std::string> v;

    std::unordered_map<std::string, const GraphNode*> by_id;
    for (const auto& n : graph.nodes) {
        if (!by_id.emplace(n.id, &n).second) {
            v.push_back("duplicate node id '" + n.id + "'");
        }
    }

    int seed_count = 0;
    for (const auto& n : graph.nodes) {
        if (n.direction == NodeDirection::Seed) {
            ++seed_count;
            if (n.depth != 0) {
                v.push_back("seed node '" + n.id + "' has depth " + std::to_string(n.depth));
            }
            if (n.id != graph.seed_id) {
                v.push_back("seed-direction node '" + n.id + "' is not seed_id '" +
                            graph.seed_id + "'");
            }
        } else if (n.depth == 0) {
            v.push_back("non-seed node '" + n.id + "' has depth 0");
        }
    }
    if (seed_count != 1) {
        v.push_back("expected exactly one seed node, found " + std::to_string(seed_count));
    }
    if (by_id.find(graph.seed_id) == by_id.end()) {
        v.push_back("seed_id '" + graph.seed_id + "' is not a node of the graph");
    }

    std::unordered_map<std::string, int> incoming;
    for (const auto& e : graph.edges) {
        auto src_it = by_id.find(e.src);
        auto dst_it = by_id.find(e.dst);
        if (src_it == by_id.end()) {
            v.push_back("edge source '" + e.src + "' is not a node");
            continue;
        }
        if (dst_it == by_id.end()) {
            v.push_back("edge target '" + e.dst + "' is not a node");
            continue;
        }
        const GraphNode& src = *src_it->second;
        const GraphNode& dst = *dst_it->second;
        ++incoming[e.dst];

        if (dst.direction == NodeDirection::Seed) {
            v.push_back("edge '" + e.src + "' -> '" + e.dst + "' points into the seed");
            continue;
        }
        bool forward_dst = dst.direction == NodeDirection::Forward;
        bool forward_label = direction_class(e.rel) == DirectionClass::Forward;
        if (forward_dst != forward_label) {
            v.push_back("edge '" + e.src + "' -[" + std::string(to_string(e.rel)) + "]-> '" +
                        e.dst + "' label direction does not match node direction");
        }
        if (src.direction != NodeDirection::Seed && src.direction != dst.direction) {
            v.push_back("edge '" + e.src + "' -> '" + e.dst +
                        "' crosses between the forward and backward trees");
        }
        if (dst.depth != src.depth + 1) {
            v.push_back("edge '" + e.src + "' -> '" + e.dst + "' depth " +
                        std::to_string(dst.depth) + " != parent depth + 1");
        }
    }

    for (const auto& n : graph.nodes) {
        int in = incoming.count(n.id) ? incoming.at(n.id) : 0;
        if (n.direction == NodeDirection::Seed) {
            if (in != 0) {
                v.push_back("seed node '" + n.id + "' has " + std::to_string(in) +
                            " incoming edges");
            }
        } else if (in != 1) {
            v.push_back("node '" + n.id + "' has " + std::to_string(in) +
                        " incoming edges, expected 1");
        }
    }

    // Parent chains must terminate at the seed; with unique incoming edges
    // this rules out cycles among non-seed nodes. Nodes with a missing
    // incoming edge were already reported above.
    std::unordered_map<std::string, std::string> parent;
    for (const auto& e : graph.edges) {
        if (parent.count(e.dst) == 0) parent[e.dst] = e.src;
    }
    for (const auto& n : graph.nodes) {
        if (n.direction == NodeDirection::Seed || parent.count(n.id) == 0) continue;
        std::unordered_set<std::string> seen;
        std::string cur = n.id;
        while (cur != graph.seed_id && parent.count(cur) && seen.insert(cur).second) {
            cur = parent.at(cur);
        }
        if (cur != graph.seed_id && seen.count(cur)) {
            v.push_back("node '" + n.id + "' is part of a parent cycle");
        }
    }

    return v;
}

} // namespace evograph
