#include "evograph/datum.hpp"

#include <set>

namespace evograph {

std::vector<std::string> validate_datum(const InstructionDatum& d) {
    std::vector<std::string> v;
    if (d.task == TaskFormat::Choice) {
        if (!d.options.has_value() || d.options->size() < 2) {
            v.push_back("datum '" + d.id + "': choice task needs >= 2 options");
            return v;
        }
        if (!d.answer_index.has_value() || *d.answer_index < 0 ||
            static_cast<size_t>(*d.answer_index) >= d.options->size()) {
            v.push_back("datum '" + d.id + "': answer_index missing or out of range");
        } else if ((*d.options)[static_cast<size_t>(*d.answer_index)] != d.answer) {
            v.push_back("datum '" + d.id + "': options[answer_index] != answer");
        }
        std::set<std::string> distinct(d.options->begin(), d.options->end());
        if (distinct.size() != d.options->size()) {
            v.push_back("datum '" + d.id + "': options are not pairwise distinct");
        }
    } else {
        if (d.options.has_value()) {
            v.push_back("datum '" + d.id + "': open task carries options");
        }
        if (d.answer_index.has_value()) {
            v.push_back("datum '" + d.id + "': open task carries answer_index");
        }
    }
    return v;
}

} // namespace evograph
