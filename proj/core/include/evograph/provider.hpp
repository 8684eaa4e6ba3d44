#pragma once

#include <condition_variable>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evograph/lexicon.hpp"
#include "evograph/relation.hpp"
#include "evograph/templates.hpp"

namespace evograph {

// One expansion request: generate n_per_relation candidate events per listed
// relation for a parent event. The caption rides along only when the parent
// is the seed of its graph.
struct EvolveRequest {
    std::string parent_text;
    std::optional<std::string> caption;
    std::vector<Relation> relations;
    int n_per_relation = 1;

    bool operator==(const EvolveRequest&) const = default;
};

// Empty iff valid: relations non-empty and all of one direction class,
// n_per_relation >= 1, parent text non-empty.
std::vector<std::string> validate_request(const EvolveRequest& req);

struct EvolveCandidate {
    std::string text;
    Relation relation = Relation::Result;

    bool operator==(const EvolveCandidate&) const = default;
};

struct EvolveResponse {
    std::vector<EvolveCandidate> candidates;

    bool operator==(const EvolveResponse&) const = default;
};

// Request for question-template paraphrases of one store bucket.
struct TemplateRequest {
    Relation relation = Relation::Result;
    bool with_text = false;
    TaskFormat format = TaskFormat::Open;
    int n = 1;

    bool operator==(const TemplateRequest&) const = default;
};

enum class ProviderKind { Http, Mock };

ProviderKind provider_kind_from_string(std::string_view label);

struct ProviderConfig {
    ProviderKind kind = ProviderKind::Mock;
    std::string endpoint;       // full URL of a chat-completions style API
    std::string model_name;
    std::string api_key_env;    // name of the env var holding the key
    int max_retries = 3;
    int timeout_ms = 30000;
    int max_parallel = 4;
    int backoff_base_ms = 200;  // exponential backoff starting point
    std::optional<std::string> ontology_path; // mock word banks override
};

std::vector<std::string> validate_provider_config(const ProviderConfig& cfg);

// The generation prompt. Lists the requested relations with one-line glosses,
// includes the caption sentence exactly when present, and pins the output
// shape to "RELATION: event text" lines so responses parse mechanically.
std::string render_evolve_prompt(const EvolveRequest& req);

// The template-paraphrase meta-prompt for one bucket.
std::string render_template_prompt(const TemplateRequest& req);

// Extracts "RELATION: text" lines (optionally numbered). Lines that do not
// parse, name an unknown relation, name a relation outside the request, or
// carry empty text are dropped.
EvolveResponse parse_evolve_response(const std::string& body, const EvolveRequest& req);

// Extracts template bodies from numbered lines.
std::vector<std::string> parse_template_response(const std::string& body);

// Generator abstraction. Implementations must be safe for concurrent calls.
class EventProvider {
public:
    virtual ~EventProvider() = default;

    virtual EvolveResponse evolve(const EvolveRequest& req) = 0;

    // Candidate template bodies; validation happens at the store layer.
    virtual std::vector<std::string> generate_templates(const TemplateRequest& req) = 0;
};

// Deterministic offline generator: every candidate is a sentence assembled
// from the ontology word banks, addressed by a stable hash of
// (parent_text, relation, index). Same request, same response, always.
class MockProvider : public EventProvider {
public:
    MockProvider();
    explicit MockProvider(Ontology ontology);

    EvolveResponse evolve(const EvolveRequest& req) override;
    std::vector<std::string> generate_templates(const TemplateRequest& req) override;

private:
    Ontology ontology_;
};

// Counting gate bounding in-flight calls; tracks the high-water mark so tests
// can observe that the bound held.
class ParallelGate {
public:
    explicit ParallelGate(int limit);

    void acquire();
    void release();

    int peak() const;

    class Scope {
    public:
        explicit Scope(ParallelGate& gate) : gate_(gate) { gate_.acquire(); }
        ~Scope() { gate_.release(); }
        Scope(const Scope&) = delete;
        Scope& operator=(const Scope&) = delete;

    private:
        ParallelGate& gate_;
    };

private:
    mutable std::mutex mutex_;
    std::condition_variable cv_;
    int limit_;
    int in_flight_ = 0;
    int peak_ = 0;
};

// Bounds any provider to cfg.max_parallel concurrent calls.
class GatedProvider : public EventProvider {
public:
    GatedProvider(std::shared_ptr<EventProvider> inner, int max_parallel);

    EvolveResponse evolve(const EvolveRequest& req) override;
    std::vector<std::string> generate_templates(const TemplateRequest& req) override;

    const ParallelGate& gate() const { return gate_; }

private:
    std::shared_ptr<EventProvider> inner_;
    ParallelGate gate_;
};

// Records every call and its outcome; used by --trace and by tests that
// assert on request shapes (e.g. caption only at seed depth).
class RecordingProvider : public EventProvider {
public:
    explicit RecordingProvider(std::shared_ptr<EventProvider> inner);

    EvolveResponse evolve(const EvolveRequest& req) override;
    std::vector<std::string> generate_templates(const TemplateRequest& req) override;

    std::vector<std::pair<EvolveRequest, EvolveResponse>> evolve_calls() const;

private:
    std::shared_ptr<EventProvider> inner_;
    mutable std::mutex mutex_;
    std::vector<std::pair<EvolveRequest, EvolveResponse>> evolve_calls_;
};

// Chat-completions client. Sends the rendered prompt as a single user
// message, retries transport errors and 5xx with exponential backoff, and
// fails with ParseFailureError when a 2xx body yields zero candidates.
class HttpProvider : public EventProvider {
public:
    explicit HttpProvider(ProviderConfig cfg);

    EvolveResponse evolve(const EvolveRequest& req) override;
    std::vector<std::string> generate_templates(const TemplateRequest& req) override;

private:
    std::string complete(const std::string& prompt);

    ProviderConfig cfg_;
};

// Provider assembly per config: mock or http, wrapped in a parallelism gate.
std::shared_ptr<EventProvider> make_provider(const ProviderConfig& cfg);

} // namespace evograph
