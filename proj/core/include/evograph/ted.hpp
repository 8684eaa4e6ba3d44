#pragma once

#include "evograph/dep_tree.hpp"

namespace evograph {

// Minimum-cost edit script between two ordered labeled trees with unit costs
// for relabel, insert and delete, computed with the Zhang-Shasha keyroot
// dynamic program over post-order positions.
int tree_edit_distance(const DepTree& a, const DepTree& b);

// tree_edit_distance scaled by the larger node count of the pair, so one
// threshold works across sentence lengths. Range [0, 1] for unit costs.
double normalized_tree_edit_distance(const DepTree& a, const DepTree& b);

} // namespace evograph
