#include "evograph/provider.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "evograph/errors.hpp"
#include "evograph/rng.hpp"
#include "evograph/text.hpp"

namespace evograph {

ProviderKind provider_kind_from_string(std::string_view label) {
    if (label == "http") return ProviderKind::Http;
    if (label == "mock") return ProviderKind::Mock;
    throw InputError("unknown provider kind: '" + std::string(label) + "'");
}

std::vector<std::string> validate_request(const EvolveRequest& req) {
    std::vector<std::string> v;
    if (trim(req.parent_text).empty()) v.push_back("parent_text is empty");
    if (req.relations.empty()) {
        v.push_back("relations is empty");
    } else {
        DirectionClass cls = direction_class(req.relations.front());
        for (Relation r : req.relations) {
            if (direction_class(r) != cls) {
                v.push_back("relations mix direction classes");
                break;
            }
        }
    }
    if (req.n_per_relation < 1) v.push_back("n_per_relation must be >= 1");
    return v;
}

std::vector<std::string> validate_provider_config(const ProviderConfig& cfg) {
    std::vector<std::string> v;
    if (cfg.max_retries < 0) v.push_back("max_retries must be >= 0");
    if (cfg.max_parallel < 1) v.push_back("max_parallel must be >= 1");
    if (cfg.timeout_ms < 1) v.push_back("timeout_ms must be >= 1");
    if (cfg.kind == ProviderKind::Http && cfg.endpoint.empty()) {
        v.push_back("http provider needs an endpoint");
    }
    return v;
}

std::string render_evolve_prompt(const EvolveRequest& req) {
    auto violations = validate_request(req);
    if (!violations.empty()) throw InputError("invalid evolve request: " + violations.front());

    const int total = req.n_per_relation * static_cast<int>(req.relations.size());
    std::ostringstream out;
    out << "You are given an event. Generate new, plausible events that stand in the"
           " requested relations to it.\n";
    out << "Event: \"" << req.parent_text << "\"\n";
    if (req.caption.has_value()) {
        out << "The event is depicted in an image described by this caption: \""
            << *req.caption << "\"\n";
    }
    out << "For each relation below, generate exactly " << req.n_per_relation
        << " distinct events:\n";
    for (Relation r : req.relations) {
        out << "- " << to_string(r) << ": " << relation_gloss(r) << ".\n";
    }
    out << "Output exactly " << total << " lines and nothing else, one event per line,"
        << " each formatted as \"RELATION: event text\".\n";
    return out.str();
}

std::string render_template_prompt(const TemplateRequest& req) {
    std::ostringstream out;
    out << "You are writing question templates for a visual event reasoning dataset.\n";
    out << "Write " << req.n << " diverse question templates that ask for "
        << relation_gloss(req.relation) << ".\n";
    out << "Every template must contain the placeholder {caption} for the image caption.\n";
    if (req.with_text) {
        out << "Every template must contain the placeholder {event} for the textual event.\n";
    } else {
        out << "The textual event is not available; do not use an {event} placeholder.\n";
    }
    if (req.format == TaskFormat::Choice) {
        out << "Every template must contain the placeholder {options} for the candidate"
               " options and must instruct answering with the letter of the correct"
               " option.\n";
    }
    out << "Output exactly " << req.n << " lines, one template per line, numbered like"
        << " \"1. template text\".\n";
    return out.str();
}

namespace {

// "12. rest", "3) rest" and "2: rest" prefixes all strip to "rest".
std::string strip_line_number(const std::string& line) {
    size_t i = 0;
    while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
    if (i == 0 || i >= line.size()) return line;
    if (line[i] != '.' && line[i] != ')' && line[i] != ':') return line;
    return trim(line.substr(i + 1));
}

std::optional<Relation> relation_from_label_ci(const std::string& label) {
    std::string folded = casefold(trim(label));
    for (Relation r : kAllRelations) {
        if (casefold(std::string(to_string(r))) == folded) return r;
    }
    return std::nullopt;
}

} // namespace

EvolveResponse parse_evolve_response(const std::string& body, const EvolveRequest& req) {
    EvolveResponse resp;
    std::istringstream in(body);
    std::string raw;
    while (std::getline(in, raw)) {
        std::string line = strip_line_number(trim(raw));
        size_t colon = line.find(':');
        if (colon == std::string::npos) continue;
        auto rel = relation_from_label_ci(line.substr(0, colon));
        if (!rel.has_value()) continue;
        if (std::find(req.relations.begin(), req.relations.end(), *rel) ==
            req.relations.end()) {
            continue;
        }
        std::string text = trim(line.substr(colon + 1));
        if (text.empty()) continue;
        resp.candidates.push_back({std::move(text), *rel});
    }
    return resp;
}

std::vector<std::string> parse_template_response(const std::string& body) {
    std::vector<std::string> out;
    std::istringstream in(body);
    std::string raw;
    while (std::getline(in, raw)) {
        std::string line = strip_line_number(trim(raw));
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Mock provider

MockProvider::MockProvider() : ontology_(builtin_ontology()) {}

MockProvider::MockProvider(Ontology ontology) : ontology_(std::move(ontology)) {}

EvolveResponse MockProvider::evolve(const EvolveRequest& req) {
    auto violations = validate_request(req);
    if (!violations.empty()) throw InputError("invalid evolve request: " + violations.front());

    EvolveResponse resp;
    for (Relation r : req.relations) {
        for (int i = 0; i < req.n_per_relation; ++i) {
            SplitMix64 rng(hash_fields(
                {req.parent_text, to_string(r), std::to_string(i), "mock-evolve"}));
            const auto& subject =
                ontology_.subjects[static_cast<size_t>(rng.below(ontology_.subjects.size()))];
            const auto& verb =
                ontology_.verbs[static_cast<size_t>(rng.below(ontology_.verbs.size()))];
            const auto& object =
                ontology_.objects[static_cast<size_t>(rng.below(ontology_.objects.size()))];
            std::string text = subject + " " + verb + " " + object + ".";
            text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
            resp.candidates.push_back({std::move(text), r});
        }
    }
    return resp;
}

std::vector<std::string> MockProvider::generate_templates(const TemplateRequest& req) {
    static const std::vector<std::string> openers = {
        "The image shows: {caption}.",
        "Here is the scene: {caption}.",
        "An image is described by: {caption}.",
        "Picture context: {caption}.",
        "The photo is captioned: {caption}.",
    };
    static const std::vector<std::string> choice_suffixes = {
        "\n{options}\nAnswer with the letter of the correct option.",
        "\n{options}\nReply with just the option letter.",
    };

    std::vector<std::string> bodies;
    for (int i = 0; i < req.n; ++i) {
        SplitMix64 rng(hash_fields({to_string(req.relation),
                                    req.with_text ? "with_text" : "no_text",
                                    to_string(req.format), std::to_string(i),
                                    "mock-template"}));
        std::string subject =
            req.with_text ? std::string("the event '{event}'") : std::string("the event in the image");
        std::string ask;
        switch (req.relation) {
            case Relation::Result:
                ask = rng.below(2) ? "What happens as a result of " + subject + "?"
                                   : "Which event is the result of " + subject + "?";
                break;
            case Relation::After:
                ask = rng.below(2) ? "What happens after " + subject + "?"
                                   : "Which event comes after " + subject + "?";
                break;
            case Relation::HasIntention:
                ask = rng.below(2)
                          ? "What do the participants of " + subject + " intend to bring about?"
                          : "Which event do the participants of " + subject + " hope to achieve?";
                break;
            case Relation::Cause:
                ask = rng.below(2) ? "What caused " + subject + "?"
                                   : "Which event is the cause of " + subject + "?";
                break;
            case Relation::Before:
                ask = rng.below(2) ? "What happened before " + subject + "?"
                                   : "Which event took place before " + subject + "?";
                break;
            case Relation::IsIntention:
                ask = rng.below(2)
                          ? "Which earlier event had " + subject + " as its intended outcome?"
                          : "Which earlier event expressed the intention fulfilled by " + subject +
                                "?";
                break;
        }
        std::string body =
            openers[static_cast<size_t>(rng.below(openers.size()))] + " " + ask;
        if (req.format == TaskFormat::Choice) {
            body += choice_suffixes[static_cast<size_t>(rng.below(choice_suffixes.size()))];
        }
        bodies.push_back(std::move(body));
    }
    return bodies;
}

// ---------------------------------------------------------------------------
// Gate / decorators

ParallelGate::ParallelGate(int limit) : limit_(limit < 1 ? 1 : limit) {}

void ParallelGate::acquire() {
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [&] { return in_flight_ < limit_; });
    ++in_flight_;
    peak_ = std::max(peak_, in_flight_);
}

void ParallelGate::release() {
    {
        std::lock_guard lock(mutex_);
        --in_flight_;
    }
    cv_.notify_one();
}

int ParallelGate::peak() const {
    std::lock_guard lock(mutex_);
    return peak_;
}

GatedProvider::GatedProvider(std::shared_ptr<EventProvider> inner, int max_parallel)
    : inner_(std::move(inner)), gate_(max_parallel) {}

EvolveResponse GatedProvider::evolve(const EvolveRequest& req) {
    ParallelGate::Scope scope(gate_);
    return inner_->evolve(req);
}

std::vector<std::string> GatedProvider::generate_templates(const TemplateRequest& req) {
    ParallelGate::Scope scope(gate_);
    return inner_->generate_templates(req);
}

RecordingProvider::RecordingProvider(std::shared_ptr<EventProvider> inner)
    : inner_(std::move(inner)) {}

EvolveResponse RecordingProvider::evolve(const EvolveRequest& req) {
    EvolveResponse resp = inner_->evolve(req);
    std::lock_guard lock(mutex_);
    evolve_calls_.emplace_back(req, resp);
    return resp;
}

std::vector<std::string> RecordingProvider::generate_templates(const TemplateRequest& req) {
    return inner_->generate_templates(req);
}

std::vector<std::pair<EvolveRequest, EvolveResponse>> RecordingProvider::evolve_calls() const {
    std::lock_guard lock(mutex_);
    return evolve_calls_;
}

std::shared_ptr<EventProvider> make_provider(const ProviderConfig& cfg) {
    auto violations = validate_provider_config(cfg);
    if (!violations.empty()) throw InputError("provider config: " + violations.front());

    std::shared_ptr<EventProvider> inner;
    if (cfg.kind == ProviderKind::Mock) {
        inner = cfg.ontology_path.has_value()
                    ? std::make_shared<MockProvider>(load_ontology(*cfg.ontology_path))
                    : std::make_shared<MockProvider>();
    } else {
        inner = std::make_shared<HttpProvider>(cfg);
    }
    return std::make_shared<GatedProvider>(std::move(inner), cfg.max_parallel);
}

} // namespace evograph
