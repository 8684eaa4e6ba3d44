// evograph: dataset synthesis and evaluation for event-evolution instruction
// tuning. Subcommands cover the full pipeline: diversify -> evolve ->
// build-dataset -> evaluate, plus stats and template generation.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "evograph/errors.hpp"
#include "evograph/pipeline.hpp"

using namespace evograph;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitProvider = 3;

struct GlobalArgs {
    std::string config_path;
    std::optional<uint64_t> seed;
    std::optional<int> jobs;
    bool json_stdout = false;
};

// Defaults <- config file <- command-line flags, merged as json so section
// seeds re-derive from an overridden global seed.
json effective_config_json(const GlobalArgs& g) {
    json j = json::object();
    if (!g.config_path.empty()) j = read_json_file(g.config_path);
    if (g.seed.has_value()) {
        j["rng_seed"] = *g.seed;
        // A fresh global seed invalidates any file-pinned section seeds.
        for (const char* section : {"diversify", "evolve", "encapsulate", "mining"}) {
            if (j.contains(section)) j[section].erase("rng_seed");
        }
    }
    if (g.jobs.has_value()) j["jobs"] = *g.jobs;
    return j;
}

void summary(const GlobalArgs& g, const json& machine, const std::string& human) {
    if (g.json_stdout) {
        std::cout << machine.dump() << "\n";
    }
    std::cerr << human << "\n";
}

// Flag value if given, else the config's paths section, else an error (or
// empty when the path is optional).
std::string resolve_path(const std::string& flag_value, const PipelineConfig& cfg,
                         const std::string& key, bool required) {
    if (!flag_value.empty()) return flag_value;
    auto it = cfg.paths.find(key);
    if (it != cfg.paths.end()) return it->second;
    if (required) {
        throw InputError("missing path for '" + key +
                         "': pass the flag or set paths." + key + " in the config");
    }
    return "";
}

// ---------------------------------------------------------------------------

int cmd_diversify(const GlobalArgs& g, const std::string& input, std::string out,
                  std::optional<int> cap, std::optional<std::string> tagger,
                  std::string report_path) {
    json cfg_json = effective_config_json(g);
    if (cap.has_value()) cfg_json["diversify"]["cap_k"] = *cap;
    if (tagger.has_value()) cfg_json["diversify"]["tagger"] = *tagger;
    PipelineConfig cfg = PipelineConfig::from_json(cfg_json);

    auto events = read_jsonl<Event>(resolve_path(input, cfg, "events", true));
    out = resolve_path(out, cfg, "seeds", true);
    require_unique_ids(events);
    auto before = trigger_histogram(events);
    auto seeds = diversify(events, cfg.diversify);
    auto after = trigger_histogram(seeds);
    write_jsonl(out, seeds);

    if (report_path.empty()) report_path = out + ".report.json";
    json report = {
        {"input_events", events.size()},
        {"output_events", seeds.size()},
        {"cap_k", cfg.diversify.cap_k},
        {"before", before.counts},
        {"after", after.counts},
        {"max_share_before", before.max_share()},
        {"max_share_after", after.max_share()},
    };
    write_json_file(report_path, report);

    summary(g, {{"seeds", seeds.size()}, {"report", report_path}},
            "diversify: " + std::to_string(events.size()) + " events -> " +
                std::to_string(seeds.size()) + " seeds (cap " +
                std::to_string(cfg.diversify.cap_k) + "), report at " + report_path);
    return kExitOk;
}

int cmd_evolve(const GlobalArgs& g, const std::string& seeds_path, std::string out,
               std::optional<int> steps, std::optional<int> branch,
               std::optional<int> rel_sample, std::optional<std::string> provider_kind,
               const std::string& trace_path, std::string failures_path) {
    json cfg_json = effective_config_json(g);
    if (steps.has_value()) cfg_json["evolve"]["steps_l"] = *steps;
    if (branch.has_value()) cfg_json["evolve"]["event_sample"] = *branch;
    if (rel_sample.has_value()) cfg_json["evolve"]["rel_sample"] = *rel_sample;
    if (provider_kind.has_value()) cfg_json["provider"]["kind"] = *provider_kind;
    PipelineConfig cfg = PipelineConfig::from_json(cfg_json);

    auto violations = validate_evolve_config(cfg.evolve);
    if (!violations.empty()) throw InputError("evolve config: " + violations.front());

    if (cfg.provider.kind == ProviderKind::Http && !cfg.provider.api_key_env.empty() &&
        std::getenv(cfg.provider.api_key_env.c_str()) == nullptr) {
        throw InputError("environment variable '" + cfg.provider.api_key_env +
                         "' is not set but the http provider requires it");
    }

    auto seeds = read_jsonl<Event>(resolve_path(seeds_path, cfg, "seeds", true));
    out = resolve_path(out, cfg, "graphs", true);
    require_unique_ids(seeds);
    auto provider = make_provider(cfg.provider);

    struct GraphOutcome {
        std::optional<EvolvingGraph> graph;
        std::string error;
        std::vector<EvolveTraceEntry> trace;
    };
    const bool want_trace = !trace_path.empty();
    auto outcomes = parallel_map<GraphOutcome>(seeds.size(), cfg.jobs, [&](size_t i) {
        GraphOutcome outcome;
        EvolveTraceFn trace_fn = nullptr;
        if (want_trace) {
            trace_fn = [&outcome](const EvolveTraceEntry& e) { outcome.trace.push_back(e); };
        }
        try {
            outcome.graph = evolve_graph(seeds[i], cfg.evolve, *provider, nullptr, trace_fn);
        } catch (const Error& e) {
            outcome.error = e.what();
        }
        return outcome;
    });

    std::vector<EvolvingGraph> graphs;
    json failures = json::array();
    bool provider_failed = false;
    for (size_t i = 0; i < seeds.size(); ++i) {
        if (outcomes[i].graph.has_value()) {
            std::cerr << "evolve: graph " << seeds[i].id << " has "
                      << outcomes[i].graph->nodes.size() << " nodes\n";
            graphs.push_back(std::move(*outcomes[i].graph));
        } else {
            std::cerr << "evolve: graph " << seeds[i].id << " failed: " << outcomes[i].error
                      << "\n";
            failures.push_back({{"id", seeds[i].id}, {"error", outcomes[i].error}});
            provider_failed = true;
        }
    }
    write_jsonl(out, graphs);

    if (failures_path.empty()) failures_path = out + ".failures.json";
    write_json_file(failures_path,
                    json{{"succeeded", graphs.size()}, {"failed", failures}});

    if (want_trace) {
        std::ofstream trace_out(trace_path);
        if (!trace_out) throw InputError("cannot write '" + trace_path + "'");
        for (const auto& outcome : outcomes) {
            for (const auto& e : outcome.trace) {
                json response = json::array();
                for (const auto& c : e.response.candidates) {
                    response.push_back({{"rel", std::string(to_string(c.relation))},
                                        {"text", c.text}});
                }
                trace_out << json{{"graph_id", e.graph_id},
                                  {"node_id", e.parent_id},
                                  {"depth", e.depth},
                                  {"prompt", render_evolve_prompt(e.request)},
                                  {"response", response}}
                                 .dump()
                          << "\n";
            }
        }
    }

    summary(g, {{"graphs", graphs.size()}, {"failed", failures.size()}},
            "evolve: " + std::to_string(graphs.size()) + "/" + std::to_string(seeds.size()) +
                " graphs built");
    return provider_failed ? kExitProvider : kExitOk;
}

int cmd_gen_templates(const GlobalArgs& g, std::string out,
                      std::optional<std::string> provider_kind, int n_per_bucket) {
    json cfg_json = effective_config_json(g);
    if (provider_kind.has_value()) cfg_json["provider"]["kind"] = *provider_kind;
    PipelineConfig cfg = PipelineConfig::from_json(cfg_json);
    out = resolve_path(out, cfg, "templates", true);

    auto provider = make_provider(cfg.provider);
    int rejected = 0;
    TemplateStore store = generate_template_store(*provider, n_per_bucket, &rejected);
    write_json_file(out, json(store.all()));

    summary(g, {{"templates", store.size()}, {"rejected", rejected}},
            "gen-templates: " + std::to_string(store.size()) + " templates (" +
                std::to_string(rejected) + " rejected) -> " + out);
    return kExitOk;
}

int cmd_build_dataset(const GlobalArgs& g, const std::string& graphs_path,
                      const std::string& seeds_path, const std::string& templates_path,
                      std::string out, bool no_choice, bool strict_rules,
                      const std::string& rules_path, const std::string& parses_path,
                      std::string report_path, std::optional<double> include_text_prob,
                      std::optional<int> max_per_graph) {
    json cfg_json = effective_config_json(g);
    if (include_text_prob.has_value()) {
        cfg_json["encapsulate"]["include_text_prob"] = *include_text_prob;
    }
    if (max_per_graph.has_value()) cfg_json["encapsulate"]["max_per_graph"] = *max_per_graph;
    PipelineConfig cfg = PipelineConfig::from_json(cfg_json);

    auto graphs = read_jsonl<EvolvingGraph>(resolve_path(graphs_path, cfg, "graphs", true));
    out = resolve_path(out, cfg, "dataset", true);
    for (const auto& graph : graphs) {
        auto violations = validate_graph(graph);
        if (!violations.empty()) {
            throw InputError("graph '" + graph.graph_id + "': " + violations.front());
        }
    }

    auto seed_events = read_jsonl<Event>(resolve_path(seeds_path, cfg, "seeds", true));
    require_unique_ids(seed_events);
    std::map<std::string, Event> seeds;
    for (auto& e : seed_events) seeds.emplace(e.id, std::move(e));

    const std::string templates_file = resolve_path(templates_path, cfg, "templates", false);
    TemplateStore store = templates_file.empty()
                              ? builtin_template_store()
                              : TemplateStore(read_json_file(templates_file)
                                                  .get<std::vector<Template>>());

    BuildDatasetOptions options;
    options.with_choice = !no_choice;
    options.symmetric_rules = !strict_rules;
    if (!rules_path.empty()) options.rules_path = rules_path;
    if (!parses_path.empty()) options.parses_path = parses_path;

    auto result = build_dataset(graphs, seeds, store, cfg.encapsulate, cfg.mining, options,
                                cfg.jobs);
    write_jsonl(out, result.rows);

    if (report_path.empty()) report_path = out + ".skip.json";
    write_json_file(report_path, json{{"no_rule_paths", result.no_rule_paths},
                                      {"empty_buckets", result.empty_buckets},
                                      {"insufficient_negatives",
                                       result.insufficient_negatives}});

    summary(g,
            {{"rows", result.rows.size()},
             {"no_rule_paths", result.no_rule_paths},
             {"insufficient_negatives", result.insufficient_negatives}},
            "build-dataset: " + std::to_string(result.rows.size()) + " rows -> " + out);
    return kExitOk;
}

int cmd_stats(const GlobalArgs& g, std::string graphs_path, std::string dataset_path,
              const std::string& out) {
    PipelineConfig cfg = PipelineConfig::from_json(effective_config_json(g));
    graphs_path = resolve_path(graphs_path, cfg, "graphs", false);
    dataset_path = resolve_path(dataset_path, cfg, "dataset", false);
    if (graphs_path.empty() && dataset_path.empty()) {
        throw InputError("stats needs --graphs and/or --dataset");
    }
    std::optional<std::vector<EvolvingGraph>> graphs;
    if (!graphs_path.empty()) graphs = read_jsonl<EvolvingGraph>(graphs_path);
    std::optional<std::vector<InstructionDatum>> dataset;
    if (!dataset_path.empty()) dataset = read_jsonl<InstructionDatum>(dataset_path);

    json stats = compute_stats(graphs.has_value() ? &*graphs : nullptr,
                               dataset.has_value() ? &*dataset : nullptr);
    std::cout << stats.dump() << "\n";
    if (!out.empty()) write_json_file(out, stats);
    return kExitOk;
}

int cmd_evaluate(const GlobalArgs& g, std::string pred_path, std::string gold_path,
                 const std::string& metrics_csv, const std::vector<std::string>& externals,
                 const std::string& out) {
    PipelineConfig cfg = PipelineConfig::from_json(effective_config_json(g));
    pred_path = resolve_path(pred_path, cfg, "predictions", true);
    gold_path = resolve_path(gold_path, cfg, "dataset", true);

    EvalOptions options;
    options.metrics.clear();
    std::string token;
    std::istringstream metrics_in(metrics_csv);
    while (std::getline(metrics_in, token, ',')) {
        if (token != "acc" && token != "bleu1" && token != "bleu2") {
            throw InputError("unknown metric '" + token + "' (expected acc, bleu1, bleu2)");
        }
        options.metrics.push_back(token);
    }
    for (const auto& entry : externals) {
        auto eq = entry.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == entry.size()) {
            throw InputError("--external expects name=path, got '" + entry + "'");
        }
        options.external_scores[entry.substr(0, eq)] = entry.substr(eq + 1);
    }

    auto gold = read_jsonl<InstructionDatum>(gold_path);
    auto predictions = read_jsonl<json>(pred_path);
    json report = evaluate_predictions(gold, predictions, options);

    std::cout << report.dump() << "\n";
    if (!out.empty()) write_json_file(out, report);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"event-evolution dataset synthesis and evaluation"};
    app.require_subcommand(1);

    GlobalArgs g;
    app.add_option("--config", g.config_path, "pipeline config JSON")
        ->check(CLI::ExistingFile);
    uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "global rng seed");
    int jobs_value = 1;
    auto* jobs_opt = app.add_option("--jobs", jobs_value, "worker threads");
    app.add_flag("--json", g.json_stdout, "machine-readable summary on stdout");

    // diversify
    auto* div = app.add_subcommand("diversify", "cap per-trigger event counts");
    std::string div_input, div_out, div_report;
    std::optional<int> div_cap;
    std::optional<std::string> div_tagger;
    div->add_option("--input", div_input, "events.jsonl");
    div->add_option("--out", div_out, "seeds.jsonl");
    div->add_option("--cap", div_cap, "max events per trigger");
    div->add_option("--tagger", div_tagger, "heuristic|external");
    div->add_option("--report", div_report, "histogram report path");

    // evolve
    auto* evo = app.add_subcommand("evolve", "grow event-evolving graphs from seeds");
    std::string evo_seeds, evo_out, evo_trace, evo_failures;
    std::optional<int> evo_steps, evo_branch, evo_rel;
    std::optional<std::string> evo_provider;
    evo->add_option("--seeds", evo_seeds, "seeds.jsonl");
    evo->add_option("--out", evo_out, "graphs.jsonl");
    evo->add_option("--steps", evo_steps, "evolution steps per direction");
    evo->add_option("--branch", evo_branch, "events kept per expansion");
    evo->add_option("--rel-sample", evo_rel, "relations sampled per expansion");
    evo->add_option("--provider", evo_provider, "mock|http");
    evo->add_option("--trace", evo_trace, "request/response sidecar JSONL");
    evo->add_option("--failures", evo_failures, "failures report path");

    // gen-templates
    auto* gen = app.add_subcommand("gen-templates", "build a question template store");
    std::string gen_out;
    std::optional<std::string> gen_provider;
    int gen_n = 4;
    gen->add_option("--out", gen_out, "templates.json");
    gen->add_option("--provider", gen_provider, "mock|http");
    gen->add_option("--n-per-bucket", gen_n, "paraphrases requested per bucket");

    // build-dataset
    auto* bld = app.add_subcommand("build-dataset",
                                   "induce relations and render instruction data");
    std::string bld_graphs, bld_seeds, bld_templates, bld_out, bld_rules, bld_parses,
        bld_report;
    bool bld_no_choice = false;
    bool bld_strict = false;
    std::optional<double> bld_itp;
    std::optional<int> bld_mpg;
    bld->add_option("--graphs", bld_graphs, "graphs.jsonl");
    bld->add_option("--seeds", bld_seeds, "seeds.jsonl (images and captions)");
    bld->add_option("--templates", bld_templates, "templates.json (default: built-in)");
    bld->add_option("--out", bld_out, "dataset.jsonl");
    bld->add_flag("--no-choice", bld_no_choice, "open-generation rows only");
    bld->add_flag("--strict-rules", bld_strict,
                  "read the trailing backward quantifier as exactly-one");
    bld->add_option("--rules", bld_rules, "induction rules JSON override");
    bld->add_option("--parses", bld_parses, "dependency parse sidecar JSONL");
    bld->add_option("--report", bld_report, "skip report path");
    bld->add_option("--include-text-prob", bld_itp, "probability of textual event input");
    bld->add_option("--max-per-graph", bld_mpg, "cap data per graph");

    // stats
    auto* sts = app.add_subcommand("stats", "corpus construction statistics");
    std::string sts_graphs, sts_dataset, sts_out;
    sts->add_option("--graphs", sts_graphs, "graphs.jsonl");
    sts->add_option("--dataset", sts_dataset, "dataset.jsonl");
    sts->add_option("--out", sts_out, "stats.json");

    // evaluate
    auto* evl = app.add_subcommand("evaluate", "score predictions against gold rows");
    std::string evl_pred, evl_gold, evl_out;
    std::string evl_metrics = "acc,bleu1,bleu2";
    std::vector<std::string> evl_external;
    evl->add_option("--pred", evl_pred, "predictions.jsonl");
    evl->add_option("--gold", evl_gold, "gold dataset.jsonl");
    evl->add_option("--metrics", evl_metrics, "comma list: acc,bleu1,bleu2");
    evl->add_option("--external", evl_external, "name=path of per-id score JSONL");
    evl->add_option("--out", evl_out, "report.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    if (seed_opt->count() > 0) g.seed = seed_value;
    if (jobs_opt->count() > 0) g.jobs = jobs_value;

    try {
        if (div->parsed()) {
            return cmd_diversify(g, div_input, div_out, div_cap, div_tagger, div_report);
        }
        if (evo->parsed()) {
            return cmd_evolve(g, evo_seeds, evo_out, evo_steps, evo_branch, evo_rel,
                              evo_provider, evo_trace, evo_failures);
        }
        if (gen->parsed()) {
            return cmd_gen_templates(g, gen_out, gen_provider, gen_n);
        }
        if (bld->parsed()) {
            return cmd_build_dataset(g, bld_graphs, bld_seeds, bld_templates, bld_out,
                                     bld_no_choice, bld_strict, bld_rules, bld_parses,
                                     bld_report, bld_itp, bld_mpg);
        }
        if (sts->parsed()) {
            return cmd_stats(g, sts_graphs, sts_dataset, sts_out);
        }
        if (evl->parsed()) {
            return cmd_evaluate(g, evl_pred, evl_gold, evl_metrics, evl_external, evl_out);
        }
    } catch (const ProviderUnavailableError& e) {
        std::cerr << "provider error: " << e.what() << "\n";
        return kExitProvider;
    } catch (const ParseFailureError& e) {
        std::cerr << "provider error: " << e.what() << "\n";
        return kExitProvider;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
