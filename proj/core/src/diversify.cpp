#include "evograph/diversify.hpp"

#include <algorithm>

#include "evograph/errors.hpp"
#include "evograph/lexicon.hpp"
#include "evograph/rng.hpp"
#include "evograph/text.hpp"

namespace evograph {

TaggerKind tagger_from_string(std::string_view label) {
    if (label == "heuristic") return TaggerKind::Heuristic;
    if (label == "external") return TaggerKind::External;
    throw InputError("unknown tagger: '" + std::string(label) + "'");
}

std::string_view to_string(TaggerKind t) {
    return t == TaggerKind::Heuristic ? "heuristic" : "external";
}

namespace {

bool has_verbal_suffix(const std::string& token, const std::set<std::string>& lexicon) {
    if (token.size() > 3 && ends_with(token, "ed")) return true;
    if (token.size() > 4 && ends_with(token, "ing")) return true;
    if (token.size() > 2 && ends_with(token, "s")) {
        if (lexicon.count(token.substr(0, token.size() - 1))) return true;
        if (token.size() > 3 && ends_with(token, "es") &&
            lexicon.count(token.substr(0, token.size() - 2))) {
            return true;
        }
    }
    return false;
}

} // namespace

std::string extract_trigger(const Event& event) {
    if (event.trigger.has_value() && !event.trigger->empty()) return *event.trigger;

    auto tokens = tokenize(event.text);
    if (tokens.empty()) {
        throw EmptyTextError("event '" + event.id + "' has no tokens");
    }
    const auto& lexicon = verb_lexicon();
    for (const auto& token : tokens) {
        if (lexicon.count(token)) return token;
    }
    for (const auto& token : tokens) {
        if (has_verbal_suffix(token, lexicon)) return token;
    }
    return tokens.size() > 1 ? tokens[1] : tokens[0];
}

double TriggerHistogram::max_share() const {
    if (total == 0) return 0.0;
    int max_count = 0;
    for (const auto& [trigger, count] : counts) {
        (void)trigger;
        max_count = std::max(max_count, count);
    }
    return static_cast<double>(max_count) / static_cast<double>(total);
}

TriggerHistogram trigger_histogram(const std::vector<Event>& events) {
    TriggerHistogram h;
    for (const auto& e : events) {
        std::string trigger;
        try {
            trigger = extract_trigger(e);
        } catch (const EmptyTextError&) {
            trigger = kNoTriggerBucket;
        }
        ++h.counts[trigger];
        ++h.total;
    }
    return h;
}

std::vector<Event> diversify(const std::vector<Event>& events, const DiversifyConfig& cfg) {
    if (cfg.cap_k < 1) throw InputError("cap_k must be >= 1");

    // Group by trigger, resolving missing triggers first. In external mode the
    // trigger is expected to be pre-filled; anything unresolved falls into the
    // _notrigger bucket rather than being dropped.
    std::map<std::string, std::vector<Event>> groups;
    for (const auto& e : events) {
        require_valid(e);
        Event tagged = e;
        if (!tagged.trigger.has_value() || tagged.trigger->empty()) {
            if (cfg.tagger == TaggerKind::Heuristic) {
                try {
                    tagged.trigger = extract_trigger(tagged);
                } catch (const EmptyTextError&) {
                    tagged.trigger = kNoTriggerBucket;
                }
            } else {
                tagged.trigger = kNoTriggerBucket;
            }
        }
        groups[*tagged.trigger].push_back(std::move(tagged));
    }

    std::vector<Event> out;
    for (auto& [trigger, group] : groups) {
        // Stable group order before sampling, so the sample is independent of
        // input order permutations only through ids.
        std::sort(group.begin(), group.end(),
                  [](const Event& a, const Event& b) { return a.id < b.id; });
        if (group.size() > static_cast<size_t>(cfg.cap_k)) {
            SplitMix64 rng(derive_seed(cfg.rng_seed, {"diversify", trigger}));
            group = rng.sample(group, static_cast<size_t>(cfg.cap_k));
        }
        for (auto& e : group) out.push_back(std::move(e));
    }

    std::sort(out.begin(), out.end(), [](const Event& a, const Event& b) {
        return std::tie(*a.trigger, a.id) < std::tie(*b.trigger, b.id);
    });
    return out;
}

} // namespace evograph
