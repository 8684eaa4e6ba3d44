#pragma once

#include <string>
#include <vector>

namespace evograph {

// Ordered labeled tree standing in for a dependency parse. Parser-neutral:
// the default builder produces trigger-rooted flat trees, and precomputed
// parses can be loaded from a sidecar file in the same shape.
struct DepTree {
    std::string label;
    std::vector<DepTree> children;

    bool operator==(const DepTree&) const = default;
};

size_t node_count(const DepTree& t);

} // namespace evograph
