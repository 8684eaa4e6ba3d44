#pragma once

#include <filesystem>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "evograph/graph.hpp"
#include "evograph/relation.hpp"

namespace evograph {

// Quantifier on one pattern element: exactly one, zero-or-more, one-or-more.
enum class Quant { One, Star, Plus };

std::string_view to_string(Quant q);
Quant quant_from_string(std::string_view label);

// A rule collapses a whole seed-to-node relation path into one relation when
// the path is in the language of `pattern`, read as a regular expression over
// the six relation labels.
struct InductionRule {
    std::vector<std::pair<Relation, Quant>> pattern;
    Relation conclusion = Relation::Result;

    bool operator==(const InductionRule&) const = default;
};

// Empty iff valid: pattern non-empty and at least one non-star element.
std::vector<std::string> validate_rule(const InductionRule& rule);

// The built-in rule set, applied in order with first match winning:
//   (After)*(Result)+(After)*              -> Result
//   (After)*(HasIntention)+(After)*       -> HasIntention
//   (After)+                               -> After
//   (Before)*(Cause)+(Before)*             -> Cause
//   (Before)*(IsIntention)+(Before)*       -> IsIntention
//   (Before)+                              -> Before
// The backward rules' trailing quantifier is ambiguous in their source; the
// default reads it as star, mirroring the forward rules, so that a bare
// [Cause] path induces Cause. With symmetric_trailing = false the trailing
// element demands exactly one Before instead.
std::vector<InductionRule> default_rules(bool symmetric_trailing = true);

// Membership test: is `path` in the language of rule.pattern?
bool match_rule(const std::vector<Relation>& path, const InductionRule& rule);

// First matching rule's conclusion, or nullopt when no rule applies.
// Throws MixedDirectionError when the path mixes direction classes.
std::optional<Relation> induce_relation(const std::vector<Relation>& path,
                                        const std::vector<InductionRule>& rules);

std::optional<Relation> induce_relation(const std::vector<Relation>& path);

// Edge labels along the unique tree path from the seed to `node_id`.
std::vector<Relation> seed_path(const EvolvingGraph& graph, const std::string& node_id);

// File format: [{"pattern": [{"rel": "...", "quant": "..."}], "conclusion": "..."}]
std::vector<InductionRule> load_rules(const std::filesystem::path& path);
void save_rules(const std::filesystem::path& path, const std::vector<InductionRule>& rules);

} // namespace evograph
