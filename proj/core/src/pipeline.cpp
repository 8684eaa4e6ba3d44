#include "evograph/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "evograph/errors.hpp"
#include "evograph/induce.hpp"
#include "evograph/rng.hpp"
#include "evograph/text.hpp"

namespace evograph {

namespace {

uint64_t section_seed(const json& section, uint64_t global, const char* name) {
    if (section.contains("rng_seed") && !section.at("rng_seed").is_null()) {
        return section.at("rng_seed").get<uint64_t>();
    }
    return derive_seed(global, {name});
}

} // namespace

PipelineConfig PipelineConfig::from_json(const json& j) {
    PipelineConfig cfg;
    cfg.rng_seed = j.value("rng_seed", uint64_t{0});
    cfg.jobs = j.value("jobs", 1);
    if (j.contains("paths")) {
        for (const auto& [key, value] : j.at("paths").items()) {
            cfg.paths[key] = value.get<std::string>();
        }
    }

    json empty = json::object();
    const json& jd = j.contains("diversify") ? j.at("diversify") : empty;
    cfg.diversify.cap_k = jd.value("cap_k", 20);
    cfg.diversify.rng_seed = section_seed(jd, cfg.rng_seed, "diversify");
    cfg.diversify.tagger = tagger_from_string(jd.value("tagger", "heuristic"));

    const json& jp = j.contains("provider") ? j.at("provider") : empty;
    cfg.provider.kind = provider_kind_from_string(jp.value("kind", "mock"));
    cfg.provider.endpoint = jp.value("endpoint", "");
    cfg.provider.model_name = jp.value("model_name", "");
    cfg.provider.api_key_env = jp.value("api_key_env", "");
    cfg.provider.max_retries = jp.value("max_retries", 3);
    cfg.provider.timeout_ms = jp.value("timeout_ms", 30000);
    cfg.provider.max_parallel = jp.value("max_parallel", 4);
    cfg.provider.backoff_base_ms = jp.value("backoff_base_ms", 200);
    if (jp.contains("ontology") && !jp.at("ontology").is_null()) {
        cfg.provider.ontology_path = jp.at("ontology").get<std::string>();
    }

    const json& je = j.contains("evolve") ? j.at("evolve") : empty;
    cfg.evolve.steps_l = je.value("steps_l", 3);
    cfg.evolve.rel_sample = je.value("rel_sample", 2);
    cfg.evolve.event_sample = je.value("event_sample", 2);
    cfg.evolve.rng_seed = section_seed(je, cfg.rng_seed, "evolve");

    const json& jc = j.contains("encapsulate") ? j.at("encapsulate") : empty;
    cfg.encapsulate.include_text_prob = jc.value("include_text_prob", 0.5);
    cfg.encapsulate.rng_seed = section_seed(jc, cfg.rng_seed, "encapsulate");
    if (jc.contains("max_per_graph") && !jc.at("max_per_graph").is_null()) {
        cfg.encapsulate.max_per_graph = jc.at("max_per_graph").get<int>();
    }

    const json& jm = j.contains("mining") ? j.at("mining") : empty;
    cfg.mining.ted_max = jm.value("ted_max", 0.6);
    cfg.mining.overlap_min = jm.value("overlap_min", 0.2);
    cfg.mining.overlap_max = jm.value("overlap_max", 0.8);
    cfg.mining.n_semantic = jm.value("n_semantic", 2);
    cfg.mining.n_evolving = jm.value("n_evolving", 2);
    cfg.mining.n_keep = jm.value("n_keep", 2);
    cfg.mining.rng_seed = section_seed(jm, cfg.rng_seed, "mining");

    return cfg;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
    return from_json(read_json_file(path));
}

namespace {

struct GraphBatch {
    std::vector<DatumSource> sources;
    std::vector<InstructionDatum> open_rows;
    int no_rule_paths = 0;
};

} // namespace

BuildDatasetResult build_dataset(const std::vector<EvolvingGraph>& graphs,
                                 const std::map<std::string, Event>& seeds,
                                 const TemplateStore& store, const EncapsulateConfig& encap_cfg,
                                 const MiningConfig& mining_cfg,
                                 const BuildDatasetOptions& options, int jobs) {
    std::vector<InductionRule> rules = options.rules_path.has_value()
                                           ? load_rules(*options.rules_path)
                                           : default_rules(options.symmetric_rules);

    std::map<std::string, DepTree> parses;
    if (options.parses_path.has_value()) parses = load_parse_sidecar(*options.parses_path);

    // Phase 1: per-graph enumeration and open data.
    auto batches = parallel_map<GraphBatch>(
        graphs.size(), jobs, [&](size_t gi) {
            const EvolvingGraph& graph = graphs[gi];
            auto seed_it = seeds.find(graph.graph_id);
            if (seed_it == seeds.end()) {
                throw InputError("no seed event with id '" + graph.graph_id + "'");
            }
            GraphBatch batch;
            EnumerateReport report;
            batch.sources = enumerate_data(graph, seed_it->second, rules, &report);
            batch.no_rule_paths = report.no_rule_paths;

            if (encap_cfg.max_per_graph.has_value() &&
                batch.sources.size() > static_cast<size_t>(*encap_cfg.max_per_graph)) {
                SplitMix64 rng(derive_seed(encap_cfg.rng_seed, {"cap", graph.graph_id}));
                batch.sources =
                    rng.sample(batch.sources, static_cast<size_t>(*encap_cfg.max_per_graph));
            }

            for (const auto& src : batch.sources) {
                batch.open_rows.push_back(encapsulate_open(src, store, encap_cfg));
            }
            return batch;
        });

    BuildDatasetResult result;
    for (const auto& b : batches) result.no_rule_paths += b.no_rule_paths;

    if (!options.with_choice) {
        for (auto& b : batches) {
            for (auto& row : b.open_rows) result.rows.push_back(std::move(row));
        }
        return result;
    }

    // Phase 2: choice data against the cross-graph pool.
    SemanticPool pool = SemanticPool::from_graphs(
        graphs, options.parses_path.has_value() ? &parses : nullptr);

    struct ChoiceBatch {
        std::vector<std::optional<InstructionDatum>> rows;
        int insufficient = 0;
        std::vector<std::string> empty_buckets;
    };
    auto choice_batches = parallel_map<ChoiceBatch>(
        graphs.size(), jobs, [&](size_t gi) {
            const EvolvingGraph& graph = graphs[gi];
            const GraphBatch& batch = batches[gi];
            ChoiceBatch out;
            for (size_t si = 0; si < batch.sources.size(); ++si) {
                const DatumSource& src = batch.sources[si];
                const InstructionDatum& open_row = batch.open_rows[si];

                SplitMix64 rng(
                    derive_seed(mining_cfg.rng_seed, {"choice", src.graph_id, src.node_id}));

                Event probe;
                probe.id = src.node_id;
                probe.text = src.target_text;
                DepTree positive_tree;
                auto parse_it = parses.find(src.node_id);
                if (parse_it != parses.end()) {
                    positive_tree = parse_it->second;
                } else {
                    positive_tree = build_dep_tree(src.target_text, extract_trigger(probe));
                }

                std::vector<std::string> negatives = mine_semantic(
                    src.target_text, positive_tree, src.graph_id, pool, mining_cfg);
                for (auto& neg : mine_evolving(src.node_id, graph, mining_cfg, rng)) {
                    negatives.push_back(std::move(neg));
                }

                try {
                    out.rows.push_back(build_choice_datum(src, open_row, negatives, store,
                                                          mining_cfg,
                                                          encap_cfg.include_text_prob, rng));
                } catch (const InsufficientNegativesError&) {
                    out.rows.push_back(std::nullopt);
                    ++out.insufficient;
                } catch (const NoTemplateError& e) {
                    out.rows.push_back(std::nullopt);
                    out.empty_buckets.push_back(e.what());
                }
            }
            return out;
        });

    for (size_t gi = 0; gi < graphs.size(); ++gi) {
        auto& open_rows = batches[gi].open_rows;
        auto& choice_rows = choice_batches[gi].rows;
        result.insufficient_negatives += choice_batches[gi].insufficient;
        for (const auto& bucket : choice_batches[gi].empty_buckets) {
            if (std::find(result.empty_buckets.begin(), result.empty_buckets.end(), bucket) ==
                result.empty_buckets.end()) {
                result.empty_buckets.push_back(bucket);
            }
        }
        for (size_t si = 0; si < open_rows.size(); ++si) {
            result.rows.push_back(std::move(open_rows[si]));
            if (choice_rows[si].has_value()) {
                result.rows.push_back(std::move(*choice_rows[si]));
            }
        }
    }
    return result;
}

namespace {

double round2(double x) { return std::round(x * 100.0) / 100.0; }

} // namespace

json evaluate_predictions(const std::vector<InstructionDatum>& gold,
                          const std::vector<json>& predictions, const EvalOptions& options) {
    std::map<std::string, std::string> pred_by_id;
    for (const auto& row : predictions) {
        pred_by_id[row.at("id").get<std::string>()] = row.at("prediction").get<std::string>();
    }

    std::vector<std::string> missing;
    std::set<std::string> gold_ids;
    for (const auto& g : gold) {
        gold_ids.insert(g.id);
        if (!pred_by_id.count(g.id)) missing.push_back(g.id);
    }
    std::vector<std::string> extra;
    for (const auto& [id, p] : pred_by_id) {
        (void)p;
        if (!gold_ids.count(id)) extra.push_back(id);
    }
    if (!missing.empty() || !extra.empty()) {
        std::string msg = "prediction ids do not match gold ids";
        if (!missing.empty()) msg += "; missing: " + join(missing, ", ");
        if (!extra.empty()) msg += "; extra: " + join(extra, ", ");
        throw IdMismatchError(msg);
    }

    std::vector<EvalRecord> records;
    std::map<std::string, int> branch_histogram = {{"prefix", 0}, {"regex", 0}, {"overlap", 0}};
    std::vector<std::pair<int, int>> acc_pairs;
    std::vector<std::pair<std::string, std::string>> open_pairs;

    for (const auto& g : gold) {
        EvalRecord rec;
        rec.id = g.id;
        rec.prediction = pred_by_id.at(g.id);
        rec.gold_answer = g.answer;
        rec.relation = g.relation;
        if (g.task == TaskFormat::Choice) {
            rec.options = g.options;
            auto decoded = decode_close_ex(rec.prediction, *rec.options);
            rec.decoded = std::string(1, static_cast<char>('A' + decoded.index));
            ++branch_histogram[std::string(to_string(decoded.branch))];
            if (!g.answer_index.has_value()) {
                throw InputError("gold row '" + g.id + "' has no answer_index");
            }
            acc_pairs.emplace_back(decoded.index, *g.answer_index);
        } else {
            open_pairs.emplace_back(rec.prediction, rec.gold_answer);
        }
        records.push_back(std::move(rec));
    }

    for (const auto& [name, path] : options.external_scores) {
        load_external_scores(records, path, name);
    }

    auto wants = [&](const std::string& m) {
        return std::find(options.metrics.begin(), options.metrics.end(), m) !=
               options.metrics.end();
    };

    json metrics = json::object();
    if (wants("acc")) {
        metrics["accuracy"] = acc_pairs.empty() ? json(nullptr) : json(round2(accuracy(acc_pairs)));
    }
    if (wants("bleu1")) {
        metrics["bleu1"] = open_pairs.empty() ? json(nullptr) : json(round2(corpus_bleu(open_pairs, 1)));
    }
    if (wants("bleu2")) {
        metrics["bleu2"] = open_pairs.empty() ? json(nullptr) : json(round2(corpus_bleu(open_pairs, 2)));
    }
    for (const auto& [name, path] : options.external_scores) {
        (void)path;
        double sum = 0.0;
        for (const auto& rec : records) sum += rec.scores.at(name);
        metrics[name] =
            records.empty() ? json(nullptr) : json(round2(sum / static_cast<double>(records.size())));
    }

    // Per-relation breakdown over the same metric definitions.
    json per_relation = json::object();
    for (Relation r : kAllRelations) {
        std::vector<std::pair<int, int>> rel_acc;
        std::vector<std::pair<std::string, std::string>> rel_open;
        size_t idx = 0;
        for (const auto& g : gold) {
            const EvalRecord& rec = records[idx++];
            if (g.relation != r) continue;
            if (g.task == TaskFormat::Choice) {
                rel_acc.emplace_back(rec.decoded->front() - 'A', *g.answer_index);
            } else {
                rel_open.emplace_back(rec.prediction, rec.gold_answer);
            }
        }
        if (rel_acc.empty() && rel_open.empty()) continue;
        json entry = {{"n", rel_acc.size() + rel_open.size()}};
        if (!rel_acc.empty()) entry["accuracy"] = round2(accuracy(rel_acc));
        if (!rel_open.empty()) {
            entry["bleu1"] = round2(corpus_bleu(rel_open, 1));
            entry["bleu2"] = round2(corpus_bleu(rel_open, 2));
        }
        per_relation[std::string(to_string(r))] = entry;
    }

    return json{
        {"n", gold.size()},
        {"n_choice", acc_pairs.size()},
        {"n_open", open_pairs.size()},
        {"metrics", metrics},
        {"per_relation", per_relation},
        {"decode_branches", branch_histogram},
        {"notes",
         {{"bleu_variant",
           "sentence-level, case-folded alphanumeric tokens, zero higher-order "
           "precisions smoothed to 1/(2c), arithmetic mean scaled to 0-100"}}},
    };
}

json compute_stats(const std::vector<EvolvingGraph>* graphs,
                   const std::vector<InstructionDatum>* dataset) {
    json out = {{"graphs", nullptr},
                {"avg_nodes", nullptr},
                {"rows", nullptr},
                {"avg_input_tokens", nullptr}};
    if (graphs != nullptr) {
        out["graphs"] = graphs->size();
        if (!graphs->empty()) {
            size_t total_nodes = 0;
            for (const auto& g : *graphs) total_nodes += g.nodes.size();
            out["avg_nodes"] =
                static_cast<double>(total_nodes) / static_cast<double>(graphs->size());
        }
    }
    if (dataset != nullptr) {
        out["rows"] = dataset->size();
        if (!dataset->empty()) {
            size_t total_tokens = 0;
            for (const auto& d : *dataset) total_tokens += whitespace_tokens(d.question).size();
            out["avg_input_tokens"] =
                static_cast<double>(total_tokens) / static_cast<double>(dataset->size());
        }
    }
    return out;
}

} // namespace evograph
