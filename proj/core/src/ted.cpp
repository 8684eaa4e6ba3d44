#include "evograph/ted.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace evograph {

namespace {

// Post-order flattening with, per node, the index of its leftmost leaf.
struct FlatTree {
    std::vector<std::string> labels; // post-order
    std::vector<int> lml;            // leftmost leaf index of the subtree at i
    std::vector<int> keyroots;       // ascending

    int size() const { return static_cast<int>(labels.size()); }
};

int flatten(const DepTree& t, FlatTree& out) {
    int first_leaf = -1;
    for (const auto& c : t.children) {
        int leaf = flatten(c, out);
        if (first_leaf < 0) first_leaf = leaf;
    }
    int index = out.size();
    if (first_leaf < 0) first_leaf = index;
    out.labels.push_back(t.label);
    out.lml.push_back(first_leaf);
    return first_leaf;
}

FlatTree make_flat(const DepTree& t) {
    FlatTree flat;
    flatten(t, flat);
    // Keyroots: for every distinct leftmost-leaf value, the highest node
    // carrying it.
    std::map<int, int> highest;
    for (int i = 0; i < flat.size(); ++i) highest[flat.lml[i]] = i;
    for (const auto& [lml, node] : highest) {
        (void)lml;
        flat.keyroots.push_back(node);
    }
    std::sort(flat.keyroots.begin(), flat.keyroots.end());
    return flat;
}

} // namespace

int tree_edit_distance(const DepTree& a, const DepTree& b) {
    FlatTree t1 = make_flat(a);
    FlatTree t2 = make_flat(b);
    const int n = t1.size();
    const int m = t2.size();

    std::vector<std::vector<int>> td(static_cast<size_t>(n),
                                     std::vector<int>(static_cast<size_t>(m), 0));
    // Forest distance table, reused per keyroot pair; indices are offset by
    // one so row/column 0 is the empty forest.
    std::vector<std::vector<int>> fd(static_cast<size_t>(n) + 1,
                                     std::vector<int>(static_cast<size_t>(m) + 1, 0));

    for (int x : t1.keyroots) {
        for (int y : t2.keyroots) {
            const int lx = t1.lml[static_cast<size_t>(x)];
            const int ly = t2.lml[static_cast<size_t>(y)];

            fd[0][0] = 0;
            for (int i = lx; i <= x; ++i) {
                fd[i - lx + 1][0] = fd[i - lx][0] + 1; // delete
            }
            for (int j = ly; j <= y; ++j) {
                fd[0][j - ly + 1] = fd[0][j - ly] + 1; // insert
            }
            for (int i = lx; i <= x; ++i) {
                for (int j = ly; j <= y; ++j) {
                    const int fi = i - lx + 1;
                    const int fj = j - ly + 1;
                    const bool both_whole_trees =
                        t1.lml[static_cast<size_t>(i)] == lx &&
                        t2.lml[static_cast<size_t>(j)] == ly;
                    if (both_whole_trees) {
                        const int relabel =
                            t1.labels[static_cast<size_t>(i)] == t2.labels[static_cast<size_t>(j)]
                                ? 0
                                : 1;
                        fd[fi][fj] = std::min({fd[fi - 1][fj] + 1,
                                               fd[fi][fj - 1] + 1,
                                               fd[fi - 1][fj - 1] + relabel});
                        td[static_cast<size_t>(i)][static_cast<size_t>(j)] = fd[fi][fj];
                    } else {
                        const int pi = t1.lml[static_cast<size_t>(i)] - lx;
                        const int pj = t2.lml[static_cast<size_t>(j)] - ly;
                        fd[fi][fj] = std::min(
                            {fd[fi - 1][fj] + 1,
                             fd[fi][fj - 1] + 1,
                             fd[pi][pj] +
                                 td[static_cast<size_t>(i)][static_cast<size_t>(j)]});
                    }
                }
            }
        }
    }
    return td[static_cast<size_t>(n - 1)][static_cast<size_t>(m - 1)];
}

double normalized_tree_edit_distance(const DepTree& a, const DepTree& b) {
    const double denom = static_cast<double>(std::max(node_count(a), node_count(b)));
    return static_cast<double>(tree_edit_distance(a, b)) / denom;
}

} // namespace evograph
