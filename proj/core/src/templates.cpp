#include "evograph/templates.hpp"

#include <algorithm>

#include "evograph/errors.hpp"
#include "evograph/text.hpp"

namespace evograph {

std::string_view to_string(TaskFormat f) {
    return f == TaskFormat::Open ? "open" : "choice";
}

TaskFormat task_format_from_string(std::string_view label) {
    if (label == "open") return TaskFormat::Open;
    if (label == "choice") return TaskFormat::Choice;
    throw InputError("unknown task format: '" + std::string(label) + "'");
}

namespace {

std::vector<std::string> placeholders_in(const std::string& body) {
    std::vector<std::string> found;
    size_t pos = 0;
    while ((pos = body.find('{', pos)) != std::string::npos) {
        size_t end = body.find('}', pos);
        if (end == std::string::npos) {
            found.push_back(body.substr(pos)); // dangling brace, never valid
            break;
        }
        found.push_back(body.substr(pos, end - pos + 1));
        pos = end + 1;
    }
    return found;
}

} // namespace

std::vector<std::string> validate_template(const Template& t) {
    std::vector<std::string> v;
    if (trim(t.body).empty()) {
        v.push_back("template body is empty");
        return v;
    }
    bool has_caption = false;
    bool has_event = false;
    bool has_options = false;
    for (const auto& ph : placeholders_in(t.body)) {
        if (ph == "{caption}") has_caption = true;
        else if (ph == "{event}") has_event = true;
        else if (ph == "{options}") has_options = true;
        else v.push_back("unknown placeholder " + ph);
    }
    if (!has_caption) v.push_back("missing {caption} placeholder");
    if (t.with_text && !has_event) v.push_back("missing {event} placeholder");
    if (!t.with_text && has_event) v.push_back("{event} placeholder in a no-text template");
    bool wants_options = t.format == TaskFormat::Choice;
    if (wants_options && !has_options) v.push_back("missing {options} placeholder");
    if (!wants_options && has_options) v.push_back("{options} placeholder in an open template");
    return v;
}

std::string render_template(const Template& t, std::string_view caption,
                            std::optional<std::string_view> event,
                            std::optional<std::string_view> options) {
    std::string out = replace_all(t.body, "{caption}", caption);
    if (event.has_value()) out = replace_all(std::move(out), "{event}", *event);
    if (options.has_value()) out = replace_all(std::move(out), "{options}", *options);
    return out;
}

TemplateStore::TemplateStore(std::vector<Template> templates) {
    for (auto& t : templates) add(t);
}

bool TemplateStore::add(const Template& t) {
    if (!validate_template(t).empty()) return false;
    if (std::find(templates_.begin(), templates_.end(), t) != templates_.end()) {
        return true; // exact duplicate, keep the store minimal
    }
    templates_.push_back(t);
    return true;
}

std::vector<const Template*> TemplateStore::bucket(Relation r, bool with_text,
                                                   TaskFormat f) const {
    std::vector<const Template*> out;
    for (const auto& t : templates_) {
        if (t.relation == r && t.with_text == with_text && t.format == f) {
            out.push_back(&t);
        }
    }
    return out;
}

const Template& TemplateStore::select(Relation r, bool with_text, TaskFormat f,
                                      SplitMix64& rng) const {
    auto candidates = bucket(r, with_text, f);
    if (candidates.empty()) {
        throw NoTemplateError("no template for bucket " + std::string(to_string(r)) + "/" +
                              (with_text ? "with_text" : "no_text") + "/" +
                              std::string(to_string(f)));
    }
    return *candidates[static_cast<size_t>(rng.below(candidates.size()))];
}

std::vector<std::string> TemplateStore::empty_buckets() const {
    std::vector<std::string> out;
    for (Relation r : kAllRelations) {
        for (bool with_text : {false, true}) {
            for (TaskFormat f : {TaskFormat::Open, TaskFormat::Choice}) {
                if (bucket(r, with_text, f).empty()) {
                    out.push_back(std::string(to_string(r)) + "/" +
                                  (with_text ? "with_text" : "no_text") + "/" +
                                  std::string(to_string(f)));
                }
            }
        }
    }
    return out;
}

} // namespace evograph
