#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "evograph/event.hpp"

namespace evograph {

enum class TaggerKind { Heuristic, External };

TaggerKind tagger_from_string(std::string_view label);
std::string_view to_string(TaggerKind t);

struct DiversifyConfig {
    int cap_k = 20;     // max events kept per trigger
    uint64_t rng_seed = 0;
    TaggerKind tagger = TaggerKind::Heuristic;
};

// Events whose trigger cannot be determined land in this bucket, which is
// capped like any other trigger.
inline constexpr const char* kNoTriggerBucket = "_notrigger";

// The main-verb token of the event text, lowercased. A pre-set trigger passes
// through unchanged. Heuristic order over the lowercased tokens:
//   (a) first token found verbatim in the bundled verb lexicon,
//   (b) else first token with a verbal suffix: -ed, -ing, or -s/-es whose
//       stem is a lexicon word,
//   (c) else the second token (subject-verb order), or the first when the
//       text has a single token.
// Throws EmptyTextError when the text has no tokens at all.
std::string extract_trigger(const Event& event);

struct TriggerHistogram {
    std::map<std::string, int> counts;
    int total = 0;

    double max_share() const;
};

TriggerHistogram trigger_histogram(const std::vector<Event>& events);

// Per-trigger cap with seeded uniform sampling inside each trigger group.
// Every returned event has its trigger field set; the output is sorted by
// (trigger, id) and is a subset of the input.
std::vector<Event> diversify(const std::vector<Event>& events, const DiversifyConfig& cfg);

} // namespace evograph
