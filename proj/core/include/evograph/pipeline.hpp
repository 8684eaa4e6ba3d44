#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "evograph/discriminate.hpp"
#include "evograph/diversify.hpp"
#include "evograph/encapsulate.hpp"
#include "evograph/evolve.hpp"
#include "evograph/metrics.hpp"
#include "evograph/provider.hpp"
#include "evograph/serde.hpp"

namespace evograph {

// Whole-pipeline configuration. Each section seed defaults to a value derived
// from the global seed and the section name, so one root seed reproduces
// every random decision in the run.
struct PipelineConfig {
    uint64_t rng_seed = 0;
    int jobs = 1;
    std::map<std::string, std::string> paths;

    DiversifyConfig diversify;
    ProviderConfig provider;
    EvolveConfig evolve;
    EncapsulateConfig encapsulate;
    MiningConfig mining;

    static PipelineConfig from_json(const json& j);
    static PipelineConfig load(const std::filesystem::path& path);
};

// Applies items[i] -> f(i) with a bounded worker pool; results land in input
// order no matter which worker finishes first. jobs <= 1 runs inline.
template <typename Out>
std::vector<Out> parallel_map(size_t count, int jobs,
                              const std::function<Out(size_t)>& f) {
    std::vector<Out> results(count);
    if (count == 0) return results;
    if (jobs <= 1) {
        for (size_t i = 0; i < count; ++i) results[i] = f(i);
        return results;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                results[i] = f(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    int n_threads = std::min<int>(jobs, static_cast<int>(count));
    for (int t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return results;
}

struct BuildDatasetOptions {
    bool with_choice = true;
    bool symmetric_rules = true;
    std::optional<std::filesystem::path> rules_path;   // overrides the built-ins
    std::optional<std::filesystem::path> parses_path;  // external dep trees
};

struct BuildDatasetResult {
    std::vector<InstructionDatum> rows;
    int no_rule_paths = 0;
    int insufficient_negatives = 0;
    std::vector<std::string> empty_buckets;
};

// induce + encapsulate + discriminate over a graph corpus. Seeds are looked
// up by graph_id, which equals the seed event id.
BuildDatasetResult build_dataset(const std::vector<EvolvingGraph>& graphs,
                                 const std::map<std::string, Event>& seeds,
                                 const TemplateStore& store, const EncapsulateConfig& encap_cfg,
                                 const MiningConfig& mining_cfg,
                                 const BuildDatasetOptions& options, int jobs);

struct EvalOptions {
    std::vector<std::string> metrics = {"acc", "bleu1", "bleu2"};
    std::map<std::string, std::filesystem::path> external_scores;
};

// Joins predictions to gold rows by id, decodes choice rows, scores
// the requested metrics and assembles the report document.
json evaluate_predictions(const std::vector<InstructionDatum>& gold,
                          const std::vector<json>& predictions, const EvalOptions& options);

// The four construction statistics: graph count, mean nodes per graph,
// dataset row count, mean whitespace token count of the question field.
json compute_stats(const std::vector<EvolvingGraph>* graphs,
                   const std::vector<InstructionDatum>* dataset);

} // namespace evograph
