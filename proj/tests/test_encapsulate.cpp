#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "evograph/encapsulate.hpp"
#include "evograph/errors.hpp"
#include "evograph/evolve.hpp"
#include "evograph/lexicon.hpp"

using namespace evograph;

namespace {

Event hurricane_seed() {
    Event e;
    e.id = "hurricane-1";
    e.text = "The buildings and facilities were damaged.";
    e.image = "img/hurricane.png";
    e.caption = "collapsed buildings after a storm";
    return e;
}

EvolvingGraph two_node_graph(Relation rel, const std::string& child_text) {
    EvolvingGraph g;
    g.graph_id = "hurricane-1";
    g.seed_id = "n0";
    NodeDirection dir = direction_class(rel) == DirectionClass::Forward
                            ? NodeDirection::Forward
                            : NodeDirection::Backward;
    g.nodes = {{"n0", "The buildings and facilities were damaged.", NodeDirection::Seed, 0},
               {"n1", child_text, dir, 1}};
    g.edges = {{"n0", rel, "n1"}};
    return g;
}

} // namespace

TEST_CASE("enumerate_data on degenerate and simple graphs") {
    auto rules = default_rules();
    EvolvingGraph single;
    single.graph_id = "hurricane-1";
    single.seed_id = "n0";
    single.nodes = {{"n0", "seed", NodeDirection::Seed, 0}};
    CHECK(enumerate_data(single, hurricane_seed(), rules).empty());

    auto g = two_node_graph(Relation::After, "People returned home.");
    auto sources = enumerate_data(g, hurricane_seed(), rules);
    REQUIRE(sources.size() == 1);
    CHECK(sources[0].relation == Relation::After);
    CHECK(sources[0].target_text == "People returned home.");
    CHECK(sources[0].path == std::vector<Relation>{Relation::After});
}

TEST_CASE("no-rule paths are skipped and counted") {
    EvolvingGraph g;
    g.graph_id = "hurricane-1";
    g.seed_id = "n0";
    g.nodes = {{"n0", "seed text", NodeDirection::Seed, 0},
               {"n1", "intended", NodeDirection::Forward, 1},
               {"n2", "followup", NodeDirection::Forward, 2}};
    // [HasIntention, Result] matches no rule.
    g.edges = {{"n0", Relation::HasIntention, "n1"}, {"n1", Relation::Result, "n2"}};

    EnumerateReport report;
    auto sources = enumerate_data(g, hurricane_seed(), default_rules(), &report);
    CHECK(sources.size() == 1); // n1 via single-edge identity
    CHECK(report.no_rule_paths == 1);
}

TEST_CASE("enumerate count matches the per-path induction on a mock graph") {
    Event seed = hurricane_seed();
    MockProvider provider;
    EvolveConfig cfg;
    cfg.steps_l = 3;
    cfg.rng_seed = 4;
    auto g = evolve_graph(seed, cfg, provider);

    auto rules = default_rules();
    int inducible = 0;
    for (const auto& n : g.nodes) {
        if (n.id == g.seed_id) continue;
        if (induce_relation(seed_path(g, n.id), rules).has_value()) ++inducible;
    }
    EnumerateReport report;
    auto sources = enumerate_data(g, seed, rules, &report);
    CHECK(static_cast<int>(sources.size()) == inducible);
    CHECK(report.no_rule_paths ==
          static_cast<int>(g.nodes.size()) - 1 - inducible);
}

TEST_CASE("select_template honors the bucket and the seed") {
    TemplateStore store = builtin_template_store();
    SplitMix64 rng(1);
    const Template& t =
        store.select(Relation::Cause, false, TaskFormat::Open, rng);
    CHECK(t.relation == Relation::Cause);
    CHECK_FALSE(t.with_text);
    CHECK(t.format == TaskFormat::Open);

    SplitMix64 rng_a(42);
    SplitMix64 rng_b(42);
    CHECK(store.select(Relation::After, true, TaskFormat::Choice, rng_a) ==
          store.select(Relation::After, true, TaskFormat::Choice, rng_b));

    TemplateStore empty;
    SplitMix64 rng_c(0);
    CHECK_THROWS_AS(empty.select(Relation::After, true, TaskFormat::Open, rng_c),
                    NoTemplateError);
}

TEST_CASE("include-text coin forced both ways") {
    auto g = two_node_graph(Relation::Cause,
                            "A hurricane or severe weather event caused significant damage "
                            "to the buildings.");
    auto sources = enumerate_data(g, hurricane_seed(), default_rules());
    REQUIRE(sources.size() == 1);
    TemplateStore store = builtin_template_store();

    EncapsulateConfig cfg;
    cfg.include_text_prob = 1.0;
    cfg.rng_seed = 5;
    auto with = encapsulate_open(sources[0], store, cfg);
    CHECK(with.question.find(hurricane_seed().text) != std::string::npos);

    cfg.include_text_prob = 0.0;
    auto without = encapsulate_open(sources[0], store, cfg);
    CHECK(without.question.find(hurricane_seed().text) == std::string::npos);
}

TEST_CASE("the hurricane example produces a cause datum answered by the hurricane event") {
    const std::string hurricane_event =
        "A hurricane or severe weather event caused significant damage to the buildings.";
    auto g = two_node_graph(Relation::Cause, hurricane_event);
    auto sources = enumerate_data(g, hurricane_seed(), default_rules());
    REQUIRE(sources.size() == 1);

    EncapsulateConfig cfg;
    cfg.rng_seed = 9;
    auto datum = encapsulate_open(sources[0], builtin_template_store(), cfg);
    CHECK(datum.answer == hurricane_event);
    CHECK(datum.relation == Relation::Cause);
    CHECK(datum.task == TaskFormat::Open);
    CHECK(datum.image == "img/hurricane.png");
    CHECK(datum.question.find("collapsed buildings after a storm") != std::string::npos);
    CHECK(datum.provenance.graph_id == "hurricane-1");
    CHECK(datum.provenance.node_id == "n1");
    CHECK(validate_datum(datum).empty());
}

TEST_CASE("rendered questions never leak placeholders") {
    Event seed = hurricane_seed();
    MockProvider provider;
    EvolveConfig ecfg;
    ecfg.steps_l = 2;
    ecfg.rng_seed = 12;
    auto g = evolve_graph(seed, ecfg, provider);

    EncapsulateConfig cfg;
    cfg.rng_seed = 13;
    TemplateStore store = builtin_template_store();
    for (const auto& src : enumerate_data(g, seed, default_rules())) {
        auto datum = encapsulate_open(src, store, cfg);
        CHECK(datum.question.find('{') == std::string::npos);
        CHECK(datum.answer == src.target_text);
    }
}

TEST_CASE("with-text fraction tracks the configured probability") {
    Event seed = hurricane_seed();
    auto g = two_node_graph(Relation::After, "Crews cleared the roads.");
    auto sources = enumerate_data(g, seed, default_rules());
    REQUIRE(sources.size() == 1);

    TemplateStore store = builtin_template_store();
    EncapsulateConfig cfg;
    cfg.include_text_prob = 0.5;

    int with_text = 0;
    const int n = 6000;
    for (int i = 0; i < n; ++i) {
        // Vary the derivation scope the same way distinct data would.
        auto src = sources[0];
        src.node_id = "n" + std::to_string(i);
        auto datum = encapsulate_open(src, store, cfg);
        if (datum.question.find(seed.text) != std::string::npos) ++with_text;
    }
    double fraction = static_cast<double>(with_text) / n;
    CHECK(fraction > 0.47);
    CHECK(fraction < 0.53);
}

TEST_CASE("template store generation fills every bucket and rejects bad bodies") {
    MockProvider provider;
    int rejected = 0;
    TemplateStore store = generate_template_store(provider, 3, &rejected);
    CHECK(rejected == 0);
    CHECK(store.empty_buckets().empty());
    for (Relation r : kAllRelations) {
        for (bool with_text : {false, true}) {
            for (TaskFormat f : {TaskFormat::Open, TaskFormat::Choice}) {
                CHECK(store.bucket(r, with_text, f).size() >= 2);
            }
        }
    }

    class BadTemplateProvider : public EventProvider {
    public:
        EvolveResponse evolve(const EvolveRequest&) override { return {}; }
        std::vector<std::string> generate_templates(const TemplateRequest&) override {
            return {"this body has no placeholders at all"};
        }
    };
    BadTemplateProvider bad;
    int bad_rejected = 0;
    TemplateStore fallback_only = generate_template_store(bad, 1, &bad_rejected);
    CHECK(bad_rejected == 24); // one rejection per bucket
    CHECK(fallback_only.empty_buckets().empty());
    CHECK(fallback_only.size() == builtin_template_store().size());
}

TEST_CASE("bucket count arithmetic") {
    int buckets = 0;
    for (Relation r : kAllRelations) {
        (void)r;
        for (bool with_text : {false, true}) {
            (void)with_text;
            for (TaskFormat f : {TaskFormat::Open, TaskFormat::Choice}) {
                (void)f;
                ++buckets;
            }
        }
    }
    CHECK(buckets == 24);
}
