// Acceptance suite: one check per release criterion, each printed as a
// [PASS]/[FAIL] line. Exits nonzero if any criterion fails.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "evograph/discriminate.hpp"
#include "evograph/diversify.hpp"
#include "evograph/errors.hpp"
#include "evograph/evolve.hpp"
#include "evograph/metrics.hpp"
#include "evograph/pipeline.hpp"
#include "evograph/serde.hpp"
#include "evograph/ted.hpp"
#include "evograph/text.hpp"
#include "support/oracles.hpp"

using namespace evograph;
namespace fs = std::filesystem;

namespace {

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& message) {
    if (!cond) throw CheckFailure(message);
}

template <typename T>
std::string str(const T& v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

// --------------------------------------------------------------------------
// Shared fixtures

Event fixture_seed(int i) {
    Event e;
    e.id = "seed-" + str(1000 + i);
    e.text = "Scenario " + str(i) + " unfolded near the waterfront district.";
    e.image = "img/seed-" + str(i) + ".png";
    e.caption = "scene " + str(i) + " beside the waterfront at midday";
    return e;
}

EvolveConfig fixture_evolve_config() {
    EvolveConfig cfg;
    cfg.steps_l = 3;
    cfg.rel_sample = 2;
    cfg.event_sample = 2;
    cfg.rng_seed = 20240501;
    return cfg;
}

struct MockCorpus {
    std::vector<Event> seeds;
    std::vector<EvolvingGraph> graphs;
    std::vector<EvolveStats> stats;
};

MockCorpus build_mock_corpus(int n_graphs) {
    MockCorpus corpus;
    MockProvider provider;
    EvolveConfig cfg = fixture_evolve_config();
    for (int i = 0; i < n_graphs; ++i) {
        corpus.seeds.push_back(fixture_seed(i));
        EvolveStats stats;
        corpus.graphs.push_back(evolve_graph(corpus.seeds.back(), cfg, provider, &stats));
        corpus.stats.push_back(stats);
    }
    return corpus;
}

// --------------------------------------------------------------------------
// Criteria

void criterion_1_induction_oracle() {
    int checked = 0;
    for (bool symmetric : {true, false}) {
        auto rules = default_rules(symmetric);
        for (auto cls : {DirectionClass::Forward, DirectionClass::Backward}) {
            for (const auto& path : oracle::one_class_sequences(cls, 4)) {
                auto impl = induce_relation(path, rules);
                auto want = oracle::induce_with(path, rules, oracle::regex_match_rule);
                require(impl == want,
                        "disagreement on path " + oracle::path_string(path) +
                            (symmetric ? " (symmetric)" : " (strict)"));
                ++checked;
            }
        }
    }
    require(checked == 2 * 240, "expected 2 x 240 sequences, saw " + str(checked));
}

void criterion_2_worked_examples() {
    require(induce_relation({Relation::After, Relation::Result}) == Relation::Result,
            "[After, Result] must induce Result");
    require(induce_relation({Relation::After, Relation::After}) == Relation::After,
            "[After, After] must induce After");
    require(induce_relation({Relation::Before, Relation::Cause, Relation::Before}) ==
                Relation::Cause,
            "[Before, Cause, Before] must induce Cause");
}

void criterion_3_zhang_shasha() {
    const std::vector<std::string> alphabet = {"a", "b", "c"};
    SplitMix64 rng(424242);
    std::vector<DepTree> sample;
    for (int i = 0; i < 500; ++i) {
        DepTree a = oracle::random_tree(rng, 6, alphabet);
        DepTree b = oracle::random_tree(rng, 6, alphabet);
        int fast = tree_edit_distance(a, b);
        int brute = oracle::ted_exhaustive(a, b);
        require(fast == brute, "pair " + str(i) + ": fast " + str(fast) + " != brute " +
                                   str(brute));
        require(tree_edit_distance(a, b) == tree_edit_distance(b, a),
                "symmetry violated on pair " + str(i));
        if (sample.size() < 30) sample.push_back(a);
    }
    for (const auto& t : sample) {
        require(tree_edit_distance(t, t) == 0, "identity violated");
    }
    for (int k = 0; k < 200; ++k) {
        const DepTree& a = sample[static_cast<size_t>(rng.below(sample.size()))];
        const DepTree& b = sample[static_cast<size_t>(rng.below(sample.size()))];
        const DepTree& c = sample[static_cast<size_t>(rng.below(sample.size()))];
        require(tree_edit_distance(a, c) <=
                    tree_edit_distance(a, b) + tree_edit_distance(b, c),
                "triangle inequality violated");
    }
}

void criterion_4_algorithm_shape() {
    MockProvider inner;
    EvolveConfig cfg = fixture_evolve_config();
    int clean = 0;
    const int n_graphs = 25;
    for (int i = 0; i < n_graphs; ++i) {
        auto recording = std::make_shared<RecordingProvider>(std::make_shared<MockProvider>());
        Event seed = fixture_seed(i);
        EvolveStats stats;
        auto graph = evolve_graph(seed, cfg, *recording, &stats);

        require(validate_graph(graph).empty(), "graph " + graph.graph_id + " invalid");

        int max_depth = 0;
        for (const auto& n : graph.nodes) max_depth = std::max(max_depth, n.depth);
        require(max_depth <= 3, "depth bound exceeded");

        for (const auto& e : graph.edges) {
            const GraphNode* dst = graph.find_node(e.dst);
            bool forward_node = dst->direction == NodeDirection::Forward;
            bool forward_label = direction_class(e.rel) == DirectionClass::Forward;
            require(forward_node == forward_label,
                    "direction purity violated in " + graph.graph_id);
        }

        int with_caption = 0;
        for (const auto& [req, resp] : recording->evolve_calls()) {
            (void)resp;
            if (req.caption.has_value()) {
                ++with_caption;
                require(req.parent_text == trim(seed.text),
                        "caption attached to a non-seed expansion");
            }
        }
        require(with_caption == 2, "expected 2 caption-bearing requests, saw " +
                                       str(with_caption));

        if (stats.shortfalls == 0) {
            ++clean;
            require(graph.nodes.size() == 29,
                    "collision-free graph " + graph.graph_id + " has " +
                        str(graph.nodes.size()) + " nodes, expected 29");
            require(max_depth == 3, "collision-free graph shallower than L");
        }
    }
    require(clean >= n_graphs * 9 / 10,
            "too many graphs with sampling shortfalls: " + str(n_graphs - clean));
}

void criterion_5_end_to_end_determinism() {
    fs::path dir = fs::temp_directory_path() /
                   ("evograph_acceptance_" + str(::getpid()));
    fs::create_directories(dir);
    const std::string cli = EVOGRAPH_CLI_PATH;

    {
        std::ofstream out(dir / "events.jsonl");
        SplitMix64 rng(99);
        for (int i = 0; i < 50; ++i) {
            Event e;
            e.id = "fx" + str(100 + i);
            e.text = "Event " + str(i) + " took place in district " + str(rng.below(7)) + ".";
            e.image = "img/fx" + str(i) + ".png";
            e.caption = "district scene number " + str(i);
            // Long-tail triggers: a third share one hot trigger.
            e.trigger = (i % 3 == 0) ? "hot" : ("t" + str(i % 11));
            out << json(e).dump() << "\n";
        }
    }

    auto run_pipeline = [&](const std::string& tag, int jobs) {
        auto p = [&](const std::string& name) { return (dir / (tag + "_" + name)).string(); };
        std::string base = cli + " --seed 77 --jobs " + str(jobs) + " ";
        std::string quiet = " 2> /dev/null > /dev/null";
        require(std::system((base + "diversify --input " + (dir / "events.jsonl").string() +
                             " --out " + p("seeds.jsonl") + " --cap 5" + quiet)
                                .c_str()) == 0,
                "diversify failed (" + tag + ")");
        require(std::system((base + "evolve --seeds " + p("seeds.jsonl") + " --out " +
                             p("graphs.jsonl") + " --steps 3 --branch 2 --provider mock" +
                             quiet)
                                .c_str()) == 0,
                "evolve failed (" + tag + ")");
        require(std::system((base + "build-dataset --graphs " + p("graphs.jsonl") +
                             " --seeds " + p("seeds.jsonl") + " --out " + p("dataset.jsonl") +
                             quiet)
                                .c_str()) == 0,
                "build-dataset failed (" + tag + ")");
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };

    run_pipeline("a", 1);
    run_pipeline("b", 1);
    run_pipeline("c", 8);
    for (const char* name : {"seeds.jsonl", "graphs.jsonl", "dataset.jsonl"}) {
        std::string a = slurp(dir / ("a_" + std::string(name)));
        require(!a.empty(), std::string(name) + " is empty");
        require(a == slurp(dir / ("b_" + std::string(name))),
                std::string(name) + " differs between identical runs");
        require(a == slurp(dir / ("c_" + std::string(name))),
                std::string(name) + " differs between --jobs 1 and --jobs 8");
    }
    fs::remove_all(dir);
}

void criterion_6_discrimination_validity() {
    MockCorpus corpus = build_mock_corpus(80);

    std::map<std::string, Event> seeds;
    for (const auto& s : corpus.seeds) seeds.emplace(s.id, s);

    PipelineConfig cfg = PipelineConfig::from_json(json{{"rng_seed", 31337}});
    TemplateStore store = builtin_template_store();
    BuildDatasetOptions options;
    auto result = build_dataset(corpus.graphs, seeds, store, cfg.encapsulate, cfg.mining,
                                options, 4);

    std::map<std::string, const EvolvingGraph*> graph_by_id;
    for (const auto& g : corpus.graphs) graph_by_id[g.graph_id] = &g;

    SemanticPool pool = SemanticPool::from_graphs(corpus.graphs);

    int choice_rows = 0;
    std::vector<int> slot_counts(3, 0);
    for (const auto& row : result.rows) {
        if (row.task != TaskFormat::Choice) continue;
        ++choice_rows;

        require(row.options.has_value() && row.options->size() == 3,
                "choice row without 3 options");
        std::set<std::string> distinct(row.options->begin(), row.options->end());
        require(distinct.size() == 3, "options not pairwise distinct");
        require(row.answer_index.has_value() &&
                    (*row.options)[static_cast<size_t>(*row.answer_index)] == row.answer,
                "answer_index does not point at the answer");
        ++slot_counts[static_cast<size_t>(*row.answer_index)];

        // Reproduce the mining decisions from the row's provenance and check
        // each negative against its strategy's contract.
        const EvolvingGraph& graph = *graph_by_id.at(row.provenance.graph_id);
        const GraphNode* positive = graph.find_node(row.provenance.node_id);
        require(positive != nullptr, "provenance node missing");
        require(row.answer == positive->text, "answer differs from its provenance node text");

        Event probe;
        probe.id = positive->id;
        probe.text = positive->text;
        DepTree positive_tree = build_dep_tree(positive->text, extract_trigger(probe));
        auto semantic = mine_semantic(positive->text, positive_tree,
                                      row.provenance.graph_id, pool, cfg.mining);

        SplitMix64 rng(derive_seed(cfg.mining.rng_seed,
                                   {"choice", row.provenance.graph_id,
                                    row.provenance.node_id}));
        auto evolving = mine_evolving(row.provenance.node_id, graph, cfg.mining, rng);

        NodeDirection opposite = positive->direction == NodeDirection::Forward
                                     ? NodeDirection::Backward
                                     : NodeDirection::Forward;
        std::set<std::string> opposite_texts;
        for (const auto& n : graph.nodes) {
            if (n.direction == opposite) opposite_texts.insert(n.text);
        }
        for (const auto& neg : evolving) {
            require(opposite_texts.count(neg) == 1,
                    "evolving negative not from the opposite subtree");
        }
        for (const auto& neg : semantic) {
            double ov = word_overlap(positive->text, neg);
            require(ov >= cfg.mining.overlap_min && ov < cfg.mining.overlap_max,
                    "semantic negative outside the overlap band");
            Event nprobe;
            nprobe.id = neg;
            nprobe.text = neg;
            DepTree ntree = build_dep_tree(neg, extract_trigger(nprobe));
            require(normalized_tree_edit_distance(positive_tree, ntree) <=
                        cfg.mining.ted_max,
                    "semantic negative above the distance ceiling");
        }

        std::set<std::string> mined(semantic.begin(), semantic.end());
        mined.insert(evolving.begin(), evolving.end());
        for (size_t i = 0; i < row.options->size(); ++i) {
            if (static_cast<int>(i) == *row.answer_index) continue;
            require(mined.count((*row.options)[i]) == 1,
                    "option is not one of the mined negatives");
        }
    }

    require(choice_rows >= 1000,
            "expected >= 1000 choice rows, got " + str(choice_rows));
    for (int slot = 0; slot < 3; ++slot) {
        double share = static_cast<double>(slot_counts[static_cast<size_t>(slot)]) /
                       static_cast<double>(choice_rows);
        require(std::abs(share - 1.0 / 3.0) <= 0.03,
                "answer slot " + str(slot) + " share " + str(share) +
                    " deviates more than 3% from uniform");
    }
}

void criterion_7_decoding_suite() {
    const std::vector<std::string> options = {
        "The storm hit the coast overnight.",
        "The harbor reopened to traffic.",
        "Crews rebuilt the damaged pier.",
    };
    struct Fixture {
        std::string prediction;
        int index;
        DecodeBranch branch;
    };
    const std::vector<Fixture> fixtures = {
        // branch 1: bare labels
        {"A", 0, DecodeBranch::Prefix},
        {"B", 1, DecodeBranch::Prefix},
        {"C", 2, DecodeBranch::Prefix},
        {"A) first", 0, DecodeBranch::Prefix},
        {"B. The storm hit the coast", 1, DecodeBranch::Prefix},
        {"C: since the pier was rebuilt", 2, DecodeBranch::Prefix},
        {"A\nnext line", 0, DecodeBranch::Prefix},
        {"  B  trailing", 1, DecodeBranch::Prefix},
        {"C theorem", 2, DecodeBranch::Prefix},
        {"B. the answer is C", 1, DecodeBranch::Prefix},       // precedence over regex
        {"A) crews rebuilt the damaged pier", 0, DecodeBranch::Prefix}, // over overlap
        // branch 2: stated-answer pattern
        {"the correct option is: B", 1, DecodeBranch::Regex},
        {"The answer is C.", 2, DecodeBranch::Regex},
        {"I believe the correct answer is: C", 2, DecodeBranch::Regex},
        {"after consideration, the option is A", 0, DecodeBranch::Regex},
        {"THE CORRECT ANSWER IS B", 1, DecodeBranch::Regex},
        {"clearly the answer is:C", 2, DecodeBranch::Regex},
        {"i think the correct option is  B here", 1, DecodeBranch::Regex},
        {"storm coast harbor pier, but the answer is B", 1, DecodeBranch::Regex},
        {"the Answer Is A", 0, DecodeBranch::Regex},
        // branch 3: overlap argmax
        {"the storm reached the coast overnight", 0, DecodeBranch::Overlap},
        {"traffic returned as the harbor reopened", 1, DecodeBranch::Overlap},
        {"they rebuilt the pier after the damage", 2, DecodeBranch::Overlap},
        {"an unrelated comment", 0, DecodeBranch::Overlap}, // tie -> lowest index
        {"pier pier pier rebuilt crews damaged", 2, DecodeBranch::Overlap},
        {"answer: it was the storm on the coast", 0, DecodeBranch::Overlap},
        {"the best option would be the harbor one", 1, DecodeBranch::Overlap},
        {"damaged pier crews", 2, DecodeBranch::Overlap},
        {"overnight the coast was hit by the storm", 0, DecodeBranch::Overlap},
        {"the harbor is open to traffic again", 1, DecodeBranch::Overlap},
    };
    require(fixtures.size() == 30, "fixture count drifted");
    for (const auto& fx : fixtures) {
        auto got = decode_close_ex(fx.prediction, options);
        require(got.index == fx.index && got.branch == fx.branch,
                "decode('" + fx.prediction + "') -> index " + str(got.index) + "/" +
                    std::string(to_string(got.branch)) + ", expected " + str(fx.index) +
                    "/" + std::string(to_string(fx.branch)));
    }
}

void criterion_8_bleu_sanity() {
    double exact = corpus_bleu({{"the cat sat", "the cat sat"}}, 2);
    require(std::abs(exact - 100.0) < 1e-9, "exact match must score 100");

    double disjoint = corpus_bleu({{"alpha beta", "gamma delta"}}, 1);
    require(disjoint == 0.0, "token-disjoint must score 0 on BLEU-1");

    double hand = corpus_bleu({{"the cat sat", "the cat sat down"}}, 1);
    require(std::abs(hand - 71.65) <= 0.01,
            "hand case expected 71.65 +- 0.01, got " + str(hand));
}

void criterion_9_stats_parity() {
    MockCorpus corpus = build_mock_corpus(25);
    for (const auto& s : corpus.stats) {
        require(s.shortfalls == 0, "fixture corpus hit a sampling shortfall");
    }
    json stats = compute_stats(&corpus.graphs, nullptr);
    for (const char* field : {"graphs", "avg_nodes", "rows", "avg_input_tokens"}) {
        require(stats.contains(field), std::string("missing stats field ") + field);
    }
    require(stats.at("graphs") == 25, "graph count mismatch");
    require(stats.at("avg_nodes").get<double>() == 29.0,
            "avg_nodes expected exactly 29.0, got " + stats.at("avg_nodes").dump());
    // The reference construction run reports 3600 graphs / 38.36 avg nodes /
    // 7470 rows / 104.17 avg input tokens; its branching arithmetic is not
    // pinned down, so those numbers are documentation, not assertions.
}

void criterion_10_diversification() {
    std::vector<Event> events;
    for (int i = 0; i < 60; ++i) {
        Event e;
        e.id = "hot" + str(i);
        e.text = "hot scenario " + str(i);
        e.trigger = "surge";
        events.push_back(e);
    }
    for (int i = 0; i < 60; ++i) {
        Event e;
        e.id = "tail" + str(i);
        e.text = "tail scenario " + str(i);
        e.trigger = "t" + str(i % 30);
        events.push_back(e);
    }
    auto before = trigger_histogram(events);
    require(std::abs(before.max_share() - 0.5) < 1e-9, "fixture must start at 50% share");

    DiversifyConfig cfg;
    cfg.cap_k = 5;
    cfg.rng_seed = 8;
    auto out = diversify(events, cfg);
    auto after = trigger_histogram(out);

    for (const auto& [trigger, count] : after.counts) {
        (void)trigger;
        require(count <= cfg.cap_k, "per-trigger cap violated");
    }
    require(after.max_share() <=
                static_cast<double>(cfg.cap_k) / static_cast<double>(out.size()) + 1e-12,
            "max share bound violated");
    require(after.max_share() < before.max_share(), "histogram did not flatten");
}

} // namespace

int main() {
    struct Criterion {
        std::string name;
        std::function<void()> fn;
    };
    const std::vector<Criterion> criteria = {
        {"1: induction rules agree with the regex-membership oracle (2x240 paths)",
         criterion_1_induction_oracle},
        {"2: worked induction examples", criterion_2_worked_examples},
        {"3: tree edit distance matches the exhaustive oracle and is a metric",
         criterion_3_zhang_shasha},
        {"4: mock evolution shape (29 nodes, depth 3, pure subtrees, seed-only captions)",
         criterion_4_algorithm_shape},
        {"5: end-to-end byte determinism across runs and --jobs 1 vs 8",
         criterion_5_end_to_end_determinism},
        {"6: choice-data validity over a >=1000-row mock corpus",
         criterion_6_discrimination_validity},
        {"7: close-answer decoding suite (30 adversarial fixtures)",
         criterion_7_decoding_suite},
        {"8: BLEU sanity (exact, disjoint, hand-computed case)", criterion_8_bleu_sanity},
        {"9: stats fields and exact mock avg_nodes", criterion_9_stats_parity},
        {"10: diversification cap and histogram flattening", criterion_10_diversification},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        try {
            c.fn();
            std::cout << "[PASS] criterion " << c.name << "\n";
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "[FAIL] criterion " << c.name << ": " << e.what() << "\n";
        }
    }
    std::cout << "acceptance: " << (criteria.size() - static_cast<size_t>(failures)) << "/"
              << criteria.size() << " criteria passed\n";
    return failures == 0 ? 0 : 1;
}
