#include "evograph/induce.hpp"

#include <algorithm>

#include "evograph/errors.hpp"
#include "evograph/serde.hpp"

namespace evograph {

std::string_view to_string(Quant q) {
    switch (q) {
        case Quant::One: return "one";
        case Quant::Star: return "star";
        case Quant::Plus: return "plus";
    }
    throw Error("internal", "invalid quantifier");
}

Quant quant_from_string(std::string_view label) {
    if (label == "one") return Quant::One;
    if (label == "star") return Quant::Star;
    if (label == "plus") return Quant::Plus;
    throw InputError("unknown quantifier: '" + std::string(label) + "'");
}

std::vector<std::string> validate_rule(const InductionRule& rule) {
    std::vector<std::string> v;
    if (rule.pattern.empty()) {
        v.push_back("rule pattern is empty");
        return v;
    }
    bool has_non_star = false;
    for (const auto& [rel, quant] : rule.pattern) {
        (void)rel;
        if (quant != Quant::Star) has_non_star = true;
    }
    if (!has_non_star) v.push_back("rule pattern has no non-star element");
    return v;
}

std::vector<InductionRule> default_rules(bool symmetric_trailing) {
    Quant trailing = symmetric_trailing ? Quant::Star : Quant::One;
    return {
        {{{Relation::After, Quant::Star},
          {Relation::Result, Quant::Plus},
          {Relation::After, Quant::Star}},
         Relation::Result},
        {{{Relation::After, Quant::Star},
          {Relation::HasIntention, Quant::Plus},
          {Relation::After, Quant::Star}},
         Relation::HasIntention},
        {{{Relation::After, Quant::Plus}}, Relation::After},
        {{{Relation::Before, Quant::Star},
          {Relation::Cause, Quant::Plus},
          {Relation::Before, trailing}},
         Relation::Cause},
        {{{Relation::Before, Quant::Star},
          {Relation::IsIntention, Quant::Plus},
          {Relation::Before, trailing}},
         Relation::IsIntention},
        {{{Relation::Before, Quant::Plus}}, Relation::Before},
    };
}

namespace {

bool match_from(const std::vector<Relation>& path, size_t pos,
                const std::vector<std::pair<Relation, Quant>>& pattern, size_t elem) {
    if (elem == pattern.size()) return pos == path.size();
    const auto& [rel, quant] = pattern[elem];

    // Longest run of `rel` available at pos.
    size_t run = 0;
    while (pos + run < path.size() && path[pos + run] == rel) ++run;

    size_t min_take = quant == Quant::Plus ? 1 : quant == Quant::One ? 1 : 0;
    size_t max_take = quant == Quant::One ? 1 : run;
    if (min_take > run) return false;

    for (size_t take = min_take; take <= max_take; ++take) {
        if (match_from(path, pos + take, pattern, elem + 1)) return true;
    }
    return false;
}

} // namespace

bool match_rule(const std::vector<Relation>& path, const InductionRule& rule) {
    return match_from(path, 0, rule.pattern, 0);
}

std::optional<Relation> induce_relation(const std::vector<Relation>& path,
                                        const std::vector<InductionRule>& rules) {
    if (path.empty()) throw InputError("relation path is empty");
    DirectionClass cls = direction_class(path.front());
    for (Relation r : path) {
        if (direction_class(r) != cls) {
            throw MixedDirectionError("path mixes forward and backward relations");
        }
    }
    for (const auto& rule : rules) {
        if (match_rule(path, rule)) return rule.conclusion;
    }
    return std::nullopt;
}

std::optional<Relation> induce_relation(const std::vector<Relation>& path) {
    static const std::vector<InductionRule> rules = default_rules();
    return induce_relation(path, rules);
}

std::vector<Relation> seed_path(const EvolvingGraph& graph, const std::string& node_id) {
    if (graph.find_node(node_id) == nullptr) {
        throw NodeNotFoundError("node '" + node_id + "' not in graph '" + graph.graph_id + "'");
    }
    if (node_id == graph.seed_id) {
        throw IsSeedError("node '" + node_id + "' is the seed of graph '" + graph.graph_id + "'");
    }
    std::vector<Relation> path;
    std::string cur = node_id;
    while (cur != graph.seed_id) {
        const GraphEdge* edge = graph.parent_edge(cur);
        if (edge == nullptr) {
            throw InputError("node '" + node_id + "' does not reach the seed");
        }
        path.push_back(edge->rel);
        cur = edge->src;
        if (path.size() > graph.nodes.size()) {
            throw InputError("cycle while walking parents of '" + node_id + "'");
        }
    }
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<InductionRule> load_rules(const std::filesystem::path& path) {
    json j = read_json_file(path);
    std::vector<InductionRule> rules;
    for (const auto& jr : j) {
        InductionRule rule;
        for (const auto& je : jr.at("pattern")) {
            rule.pattern.emplace_back(relation_from_string(je.at("rel").get<std::string>()),
                                      quant_from_string(je.at("quant").get<std::string>()));
        }
        rule.conclusion = relation_from_string(jr.at("conclusion").get<std::string>());
        auto v = validate_rule(rule);
        if (!v.empty()) throw InputError(path.string() + ": " + v.front());
        rules.push_back(std::move(rule));
    }
    return rules;
}

void save_rules(const std::filesystem::path& path, const std::vector<InductionRule>& rules) {
    json j = json::array();
    for (const auto& rule : rules) {
        json pattern = json::array();
        for (const auto& [rel, quant] : rule.pattern) {
            pattern.push_back({{"rel", std::string(to_string(rel))},
                               {"quant", std::string(to_string(quant))}});
        }
        j.push_back({{"pattern", pattern},
                     {"conclusion", std::string(to_string(rule.conclusion))}});
    }
    write_json_file(path, j);
}

} // namespace evograph
