#include "evograph/encapsulate.hpp"

#include "evograph/errors.hpp"
#include "evograph/rng.hpp"
#include "evograph/text.hpp"

namespace evograph {

std::vector<std::string> validate_encapsulate_config(const EncapsulateConfig& cfg) {
    std::vector<std::string> v;
    if (cfg.include_text_prob < 0.0 || cfg.include_text_prob > 1.0) {
        v.push_back("include_text_prob must be in [0, 1]");
    }
    if (cfg.max_per_graph.has_value() && *cfg.max_per_graph < 1) {
        v.push_back("max_per_graph must be >= 1 when set");
    }
    return v;
}

std::vector<DatumSource> enumerate_data(const EvolvingGraph& graph, const Event& seed,
                                        const std::vector<InductionRule>& rules,
                                        EnumerateReport* report) {
    std::vector<DatumSource> out;
    for (const auto& node : graph.nodes) {
        if (node.id == graph.seed_id) continue;
        auto path = seed_path(graph, node.id);
        auto induced = induce_relation(path, rules);
        if (!induced.has_value()) {
            if (report) ++report->no_rule_paths;
            continue;
        }
        DatumSource src;
        src.seed = seed;
        src.graph_id = graph.graph_id;
        src.node_id = node.id;
        src.relation = *induced;
        src.target_text = node.text;
        src.path = std::move(path);
        out.push_back(std::move(src));
    }
    return out;
}

InstructionDatum encapsulate_open(const DatumSource& src, const TemplateStore& store,
                                  const EncapsulateConfig& cfg) {
    auto violations = validate_encapsulate_config(cfg);
    if (!violations.empty()) throw InputError("encapsulate config: " + violations.front());
    if (!src.seed.caption.has_value()) {
        throw InputError("seed event '" + src.seed.id + "' has no caption");
    }

    SplitMix64 rng(derive_seed(cfg.rng_seed, {"encap", src.graph_id, src.node_id}));
    const bool with_text = rng.next_double() < cfg.include_text_prob;
    const Template& tpl = store.select(src.relation, with_text, TaskFormat::Open, rng);

    InstructionDatum d;
    d.id = hex64(hash_fields({src.graph_id, src.node_id, "open"}));
    d.image = src.seed.image.value_or("");
    d.question = render_template(
        tpl, *src.seed.caption,
        with_text ? std::optional<std::string_view>(src.seed.text) : std::nullopt);
    d.answer = src.target_text;
    d.relation = src.relation;
    d.task = TaskFormat::Open;
    d.provenance = {src.graph_id, src.node_id, src.path};
    return d;
}

TemplateStore generate_template_store(EventProvider& provider, int n_per_bucket,
                                      int* rejected) {
    if (n_per_bucket < 1) throw InputError("n_per_bucket must be >= 1");
    TemplateStore store = builtin_template_store();
    for (Relation r : kAllRelations) {
        for (bool with_text : {false, true}) {
            for (TaskFormat f : {TaskFormat::Open, TaskFormat::Choice}) {
                TemplateRequest req{r, with_text, f, n_per_bucket};
                for (auto& body : provider.generate_templates(req)) {
                    Template t{r, with_text, f, std::move(body)};
                    if (!store.add(t) && rejected) ++*rejected;
                }
            }
        }
    }
    return store;
}

} // namespace evograph
