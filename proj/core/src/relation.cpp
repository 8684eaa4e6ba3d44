#include "evograph/relation.hpp"

#include "evograph/errors.hpp"

namespace evograph {

std::string_view to_string(Relation r) {
    switch (r) {
        case Relation::Result: return "Result";
        case Relation::After: return "After";
        case Relation::HasIntention: return "HasIntention";
        case Relation::Cause: return "Cause";
        case Relation::Before: return "Before";
        case Relation::IsIntention: return "IsIntention";
    }
    throw Error("internal", "invalid relation value");
}

Relation relation_from_string(std::string_view label) {
    for (Relation r : kAllRelations) {
        if (to_string(r) == label) return r;
    }
    throw InputError("unknown relation label: '" + std::string(label) + "'");
}

DirectionClass direction_class(Relation r) {
    switch (r) {
        case Relation::Result:
        case Relation::After:
        case Relation::HasIntention:
            return DirectionClass::Forward;
        case Relation::Cause:
        case Relation::Before:
        case Relation::IsIntention:
            return DirectionClass::Backward;
    }
    throw Error("internal", "invalid relation value");
}

Relation opposite(Relation r) {
    switch (r) {
        case Relation::Result: return Relation::Cause;
        case Relation::Cause: return Relation::Result;
        case Relation::After: return Relation::Before;
        case Relation::Before: return Relation::After;
        case Relation::HasIntention: return Relation::IsIntention;
        case Relation::IsIntention: return Relation::HasIntention;
    }
    throw Error("internal", "invalid relation value");
}

std::string_view relation_gloss(Relation r) {
    switch (r) {
        case Relation::Result:
            return "an event that happens as a result of the given event";
        case Relation::After:
            return "an event that happens after the given event in time";
        case Relation::HasIntention:
            return "an event that the participants of the given event intend to bring about";
        case Relation::Cause:
            return "an event that caused the given event";
        case Relation::Before:
            return "an event that happened before the given event in time";
        case Relation::IsIntention:
            return "an earlier event whose intention the given event fulfills";
    }
    throw Error("internal", "invalid relation value");
}

} // namespace evograph
