#include "evograph/evolve.hpp"

#include <algorithm>
#include <set>

#include "evograph/errors.hpp"
#include "evograph/rng.hpp"
#include "evograph/text.hpp"

namespace evograph {

std::vector<std::string> validate_evolve_config(const EvolveConfig& cfg) {
    std::vector<std::string> v;
    if (cfg.steps_l < 1) v.push_back("steps_l must be >= 1");
    if (cfg.rel_sample < 1 || cfg.rel_sample > 3) v.push_back("rel_sample must be in [1, 3]");
    if (cfg.event_sample < 1) v.push_back("event_sample must be >= 1");
    return v;
}

std::string node_id_for(const std::string& graph_id, const std::string& parent_id,
                        const std::string& relation_label, const std::string& text) {
    return hex64(hash_fields({graph_id, parent_id, relation_label, text}));
}

namespace {

std::vector<Relation> relation_class_of(NodeDirection direction) {
    if (direction == NodeDirection::Forward) {
        return {kForwardRelations.begin(), kForwardRelations.end()};
    }
    return {kBackwardRelations.begin(), kBackwardRelations.end()};
}

// Expands `graph` in-place along one direction. `seen_texts` carries the
// case-folded text of every node already in the graph, shared across both
// direction passes so the whole graph stays text-unique.
void expand(EvolvingGraph& graph, const Event& seed, NodeDirection direction,
            const EvolveConfig& cfg, EventProvider& provider,
            std::set<std::string>* seen_texts, EvolveStats* stats,
            const EvolveTraceFn& trace) {
    if (direction == NodeDirection::Seed) {
        throw InputError("expansion direction must be forward or backward");
    }
    const std::string dir_label(to_string(direction));
    const std::vector<Relation> relation_class = relation_class_of(direction);

    std::vector<std::string> frontier = {graph.seed_id};
    for (int step = 1; step <= cfg.steps_l; ++step) {
        std::vector<std::string> next_frontier;
        for (const std::string& parent_id : frontier) {
            const GraphNode* parent = graph.find_node(parent_id);

            SplitMix64 rng(derive_seed(cfg.rng_seed,
                                       {"evolve", graph.graph_id, dir_label, parent_id}));
            auto relations = rng.sample(relation_class, static_cast<size_t>(cfg.rel_sample));

            EvolveRequest req;
            req.parent_text = parent->text;
            if (step == 1) req.caption = seed.caption;
            req.relations = std::move(relations);
            // Over-generate so the keep step has something to sample from.
            req.n_per_relation = cfg.event_sample + 1;

            EvolveResponse resp = provider.evolve(req);
            if (stats) ++stats->provider_calls;
            if (trace) trace({graph.graph_id, parent_id, parent->depth, req, resp});

            // Graph-wide text dedupe, applied before sampling. Also collapses
            // duplicates inside the batch itself.
            std::vector<EvolveCandidate> usable;
            std::set<std::string> batch_texts;
            for (auto& cand : resp.candidates) {
                if (std::find(req.relations.begin(), req.relations.end(), cand.relation) ==
                    req.relations.end()) {
                    continue;
                }
                std::string folded = casefold(trim(cand.text));
                if (folded.empty()) continue;
                if (seen_texts->count(folded) || batch_texts.count(folded)) {
                    if (stats) ++stats->duplicates_dropped;
                    continue;
                }
                batch_texts.insert(std::move(folded));
                usable.push_back({trim(cand.text), cand.relation});
            }

            auto kept = rng.sample(usable, static_cast<size_t>(cfg.event_sample));
            if (stats && kept.size() < static_cast<size_t>(cfg.event_sample)) {
                ++stats->shortfalls;
            }
            std::sort(kept.begin(), kept.end(),
                      [](const EvolveCandidate& a, const EvolveCandidate& b) {
                          std::string_view la = to_string(a.relation);
                          std::string_view lb = to_string(b.relation);
                          return la != lb ? la < lb : a.text < b.text;
                      });

            for (auto& cand : kept) {
                const std::string label(to_string(cand.relation));
                std::string child_id = node_id_for(graph.graph_id, parent_id, label, cand.text);
                if (graph.find_node(child_id) != nullptr) {
                    // id collision: unreachable after text dedupe short of a
                    // 64-bit hash collision; counts as a shortfall
                    if (stats) ++stats->shortfalls;
                    continue;
                }
                GraphNode child;
                child.id = child_id;
                child.text = cand.text;
                child.direction = direction;
                child.depth = graph.find_node(parent_id)->depth + 1;
                seen_texts->insert(casefold(child.text));
                graph.nodes.push_back(std::move(child));
                graph.edges.push_back({parent_id, cand.relation, child_id});
                next_frontier.push_back(child_id);
            }
        }
        frontier = std::move(next_frontier);
        if (frontier.empty()) break;
    }
}

EvolvingGraph init_graph(const Event& seed) {
    require_valid(seed);
    if (!seed.caption.has_value()) {
        throw InputError("seed event '" + seed.id + "' has no caption");
    }
    EvolvingGraph graph;
    graph.graph_id = seed.id;
    GraphNode root;
    root.id = node_id_for(graph.graph_id, "", "", seed.text);
    root.text = trim(seed.text);
    root.direction = NodeDirection::Seed;
    root.depth = 0;
    graph.seed_id = root.id;
    graph.nodes.push_back(std::move(root));
    return graph;
}

} // namespace

EvolvingGraph evolve_direction(const Event& seed, NodeDirection direction,
                               const EvolveConfig& cfg, EventProvider& provider,
                               EvolveStats* stats, const EvolveTraceFn& trace) {
    auto violations = validate_evolve_config(cfg);
    if (!violations.empty()) throw InputError("evolve config: " + violations.front());

    EvolvingGraph graph = init_graph(seed);
    std::set<std::string> seen_texts = {casefold(graph.nodes.front().text)};
    expand(graph, seed, direction, cfg, provider, &seen_texts, stats, trace);
    return graph;
}

EvolvingGraph evolve_graph(const Event& seed, const EvolveConfig& cfg,
                           EventProvider& provider, EvolveStats* stats,
                           const EvolveTraceFn& trace) {
    auto violations = validate_evolve_config(cfg);
    if (!violations.empty()) throw InputError("evolve config: " + violations.front());

    EvolvingGraph graph = init_graph(seed);
    std::set<std::string> seen_texts = {casefold(graph.nodes.front().text)};
    expand(graph, seed, NodeDirection::Forward, cfg, provider, &seen_texts, stats, trace);
    expand(graph, seed, NodeDirection::Backward, cfg, provider, &seen_texts, stats, trace);
    return graph;
}

} // namespace evograph
