#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evograph/relation.hpp"
#include "evograph/rng.hpp"

namespace evograph {

enum class TaskFormat { Open, Choice };

std::string_view to_string(TaskFormat f);
TaskFormat task_format_from_string(std::string_view label);

// A question template for one (relation, with_text, format) bucket. The body
// carries placeholders: {caption} always, {event} exactly when with_text,
// {options} exactly when format == choice.
struct Template {
    Relation relation = Relation::Result;
    bool with_text = false;
    TaskFormat format = TaskFormat::Open;
    std::string body;

    bool operator==(const Template&) const = default;
};

// Empty list iff the placeholder set in body matches (with_text, format).
std::vector<std::string> validate_template(const Template& t);

// Substitutes every placeholder occurrence. Pass `event`/`options` only when
// the template's bucket requires them.
std::string render_template(const Template& t, std::string_view caption,
                            std::optional<std::string_view> event = std::nullopt,
                            std::optional<std::string_view> options = std::nullopt);

class TemplateStore {
public:
    TemplateStore() = default;
    explicit TemplateStore(std::vector<Template> templates);

    // Rejects invalid templates and exact duplicates; returns false if t was
    // dropped as invalid.
    bool add(const Template& t);

    const std::vector<Template>& all() const { return templates_; }

    std::vector<const Template*> bucket(Relation r, bool with_text, TaskFormat f) const;

    // Seeded-uniform pick among the matching templates.
    // Throws NoTemplateError when the bucket is empty.
    const Template& select(Relation r, bool with_text, TaskFormat f, SplitMix64& rng) const;

    // Buckets with no template, as "Relation/with_text/format" strings.
    std::vector<std::string> empty_buckets() const;

    size_t size() const { return templates_.size(); }

private:
    std::vector<Template> templates_;
};

// The hand-written store bundled with the library: at least two templates per
// (relation, with_text, format) bucket, so offline runs always have coverage.
TemplateStore builtin_template_store();

} // namespace evograph
