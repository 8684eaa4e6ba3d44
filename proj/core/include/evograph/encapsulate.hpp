#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evograph/datum.hpp"
#include "evograph/event.hpp"
#include "evograph/graph.hpp"
#include "evograph/induce.hpp"
#include "evograph/provider.hpp"
#include "evograph/templates.hpp"

namespace evograph {

struct EncapsulateConfig {
    double include_text_prob = 0.5; // coin for adding the seed text to the question
    uint64_t rng_seed = 0;
    std::optional<int> max_per_graph; // cap on data per graph, unset = unlimited
};

std::vector<std::string> validate_encapsulate_config(const EncapsulateConfig& cfg);

// One trainable tuple: the graph's seed event, the relation induced over the
// seed-to-node path, and the node whose text becomes the answer.
struct DatumSource {
    Event seed;
    std::string graph_id;
    std::string node_id;
    Relation relation = Relation::Result;
    std::string target_text;
    std::vector<Relation> path;
};

struct EnumerateReport {
    int no_rule_paths = 0;
};

// One source per non-seed node whose path induces a relation; nodes whose
// path matches no rule are skipped and counted.
std::vector<DatumSource> enumerate_data(const EvolvingGraph& graph, const Event& seed,
                                        const std::vector<InductionRule>& rules,
                                        EnumerateReport* report = nullptr);

// Renders one open-generation datum. The include-text coin and template pick
// come from an RNG derived from (rng_seed, graph_id, node_id), so output is
// independent of processing order.
InstructionDatum encapsulate_open(const DatumSource& src, const TemplateStore& store,
                                  const EncapsulateConfig& cfg);

// Asks the provider for n_per_bucket template paraphrases per
// (relation, with_text, format) bucket, keeps the ones whose placeholders
// validate, and merges them into the bundled fallback store. No bucket can
// end up empty because the fallback store covers all of them.
TemplateStore generate_template_store(EventProvider& provider, int n_per_bucket,
                                      int* rejected = nullptr);

} // namespace evograph
