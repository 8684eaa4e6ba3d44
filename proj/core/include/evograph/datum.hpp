#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evograph/relation.hpp"
#include "evograph/templates.hpp"

namespace evograph {

// Where a datum came from: the graph, the target node whose text is the
// answer, and the relation path from the seed to that node.
struct Provenance {
    std::string graph_id;
    std::string node_id;
    std::vector<Relation> path;

    bool operator==(const Provenance&) const = default;
};

// One training example. Open task: free generation of the answer. Choice
// task: the answer hidden among mined negatives, with answer_index locating
// it inside options.
struct InstructionDatum {
    std::string id;
    std::string image;
    std::string question;
    std::string answer;
    Relation relation = Relation::Result;
    TaskFormat task = TaskFormat::Open;
    std::optional<std::vector<std::string>> options;
    std::optional<int> answer_index;
    Provenance provenance;

    bool operator==(const InstructionDatum&) const = default;
};

std::vector<std::string> validate_datum(const InstructionDatum& d);

} // namespace evograph
