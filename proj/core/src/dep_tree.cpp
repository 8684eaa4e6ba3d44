#include "evograph/dep_tree.hpp"

namespace evograph {

size_t node_count(const DepTree& t) {
    size_t n = 1;
    for (const auto& c : t.children) n += node_count(c);
    return n;
}

} // namespace evograph
