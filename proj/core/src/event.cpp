#include "evograph/event.hpp"

#include <set>

#include "evograph/errors.hpp"
#include "evograph/text.hpp"

namespace evograph {

std::vector<std::string> validate_event(const Event& e) {
    std::vector<std::string> violations;
    if (trim(e.text).empty()) {
        violations.push_back("event '" + e.id + "': text is empty after trimming");
    }
    if (e.caption.has_value() && !e.image.has_value()) {
        violations.push_back("event '" + e.id + "': caption present without an image");
    }
    return violations;
}

void require_valid(const Event& e) {
    auto v = validate_event(e);
    if (!v.empty()) throw InputError(v.front());
}

void require_unique_ids(const std::vector<Event>& events) {
    std::set<std::string> seen;
    for (const auto& e : events) {
        if (!seen.insert(e.id).second) {
            throw InputError("duplicate event id '" + e.id + "'");
        }
    }
}

} // namespace evograph
