#pragma once

#include <array>
#include <string>
#include <string_view>

namespace evograph {

// The closed set of inter-event relations. Result/After/HasIntention evolve a
// scenario forward in time, Cause/Before/IsIntention evolve it backward, and
// each label has a mirror in the opposite class.
enum class Relation {
    Result,
    After,
    HasIntention,
    Cause,
    Before,
    IsIntention,
};

enum class DirectionClass { Forward, Backward };

constexpr std::array<Relation, 6> kAllRelations = {
    Relation::Result, Relation::After,  Relation::HasIntention,
    Relation::Cause,  Relation::Before, Relation::IsIntention,
};

constexpr std::array<Relation, 3> kForwardRelations = {
    Relation::Result, Relation::After, Relation::HasIntention};

constexpr std::array<Relation, 3> kBackwardRelations = {
    Relation::Cause, Relation::Before, Relation::IsIntention};

std::string_view to_string(Relation r);

// Strict: unknown labels are hard errors (InputError), never coerced.
Relation relation_from_string(std::string_view label);

DirectionClass direction_class(Relation r);

Relation opposite(Relation r);

// One-line natural-language description used when rendering prompts.
std::string_view relation_gloss(Relation r);

} // namespace evograph
