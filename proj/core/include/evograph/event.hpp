#pragma once

#include <optional>
#include <string>
#include <vector>

namespace evograph {

// A textual event, optionally backed by an image with a caption. Images are
// opaque path/URI references; their bytes are never touched here.
struct Event {
    std::string id;
    std::string text;
    std::optional<std::string> image;
    std::optional<std::string> caption;
    std::optional<std::string> trigger;

    bool operator==(const Event&) const = default;
};

// Violated invariants, one entry each; empty means valid.
// Rules: text must be non-empty after trimming, and a caption requires an image.
std::vector<std::string> validate_event(const Event& e);

// Throws InputError on the first violation.
void require_valid(const Event& e);

// Ids must be unique within a corpus; throws InputError naming a duplicate.
void require_unique_ids(const std::vector<Event>& events);

} // namespace evograph
