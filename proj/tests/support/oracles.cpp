#include "support/oracles.hpp"

#include <algorithm>
#include <regex>

namespace evograph::oracle {

char relation_char(Relation r) {
    switch (r) {
        case Relation::Result: return 'R';
        case Relation::After: return 'A';
        case Relation::HasIntention: return 'H';
        case Relation::Cause: return 'C';
        case Relation::Before: return 'B';
        case Relation::IsIntention: return 'I';
    }
    return '?';
}

std::string path_string(const std::vector<Relation>& path) {
    std::string s;
    for (Relation r : path) s.push_back(relation_char(r));
    return s;
}

std::string rule_regex(const InductionRule& rule) {
    std::string s;
    for (const auto& [rel, quant] : rule.pattern) {
        s.push_back(relation_char(rel));
        if (quant == Quant::Star) s.push_back('*');
        if (quant == Quant::Plus) s.push_back('+');
    }
    return s;
}

bool regex_match_rule(const std::vector<Relation>& path, const InductionRule& rule) {
    std::regex re(rule_regex(rule));
    return std::regex_match(path_string(path), re);
}

namespace {

bool segment_is(const std::vector<Relation>& path, size_t begin, size_t len, Relation rel) {
    for (size_t i = begin; i < begin + len; ++i) {
        if (path[i] != rel) return false;
    }
    return true;
}

bool enumerate_from(const std::vector<Relation>& path, size_t pos,
                    const InductionRule& rule, size_t elem) {
    if (elem == rule.pattern.size()) return pos == path.size();
    const auto& [rel, quant] = rule.pattern[elem];
    const size_t remaining = path.size() - pos;
    size_t lo = quant == Quant::Star ? 0 : 1;
    size_t hi = quant == Quant::One ? 1 : remaining;
    for (size_t take = lo; take <= hi && take <= remaining; ++take) {
        if (!segment_is(path, pos, take, rel)) continue;
        if (enumerate_from(path, pos + take, rule, elem + 1)) return true;
    }
    return false;
}

} // namespace

bool enumerate_match_rule(const std::vector<Relation>& path, const InductionRule& rule) {
    return enumerate_from(path, 0, rule, 0);
}

std::optional<Relation> induce_with(const std::vector<Relation>& path,
                                    const std::vector<InductionRule>& rules,
                                    bool (*match)(const std::vector<Relation>&,
                                                  const InductionRule&)) {
    for (const auto& rule : rules) {
        if (match(path, rule)) return rule.conclusion;
    }
    return std::nullopt;
}

std::vector<std::vector<Relation>> one_class_sequences(DirectionClass cls, int max_len) {
    std::vector<Relation> alphabet;
    for (Relation r : kAllRelations) {
        if (direction_class(r) == cls) alphabet.push_back(r);
    }
    std::vector<std::vector<Relation>> out;
    std::vector<std::vector<Relation>> frontier = {{}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<std::vector<Relation>> next;
        for (const auto& prefix : frontier) {
            for (Relation r : alphabet) {
                auto seq = prefix;
                seq.push_back(r);
                out.push_back(seq);
                next.push_back(std::move(seq));
            }
        }
        frontier = std::move(next);
    }
    return out;
}

namespace {

struct Flat {
    std::vector<std::string> labels; // postorder
    std::vector<int> lml;
};

int flatten(const DepTree& t, Flat& out) {
    int first = -1;
    for (const auto& c : t.children) {
        int leaf = flatten(c, out);
        if (first < 0) first = leaf;
    }
    int idx = static_cast<int>(out.labels.size());
    if (first < 0) first = idx;
    out.labels.push_back(t.label);
    out.lml.push_back(first);
    return first;
}

bool is_descendant(const Flat& t, int node, int maybe_ancestor) {
    return node >= t.lml[static_cast<size_t>(maybe_ancestor)] && node < maybe_ancestor;
}

struct MapSearch {
    const Flat& t1;
    const Flat& t2;
    std::vector<std::pair<int, int>> pairs;
    int best;

    void search(int i) {
        const int n1 = static_cast<int>(t1.labels.size());
        const int n2 = static_cast<int>(t2.labels.size());
        if (i == n1) {
            int relabels = 0;
            for (const auto& [a, b] : pairs) {
                if (t1.labels[static_cast<size_t>(a)] != t2.labels[static_cast<size_t>(b)]) {
                    ++relabels;
                }
            }
            int mapped = static_cast<int>(pairs.size());
            int cost = (n1 - mapped) + (n2 - mapped) + relabels;
            best = std::min(best, cost);
            return;
        }
        // Option 1: leave node i unmapped (deleted).
        search(i + 1);
        // Option 2: map i to some j after every previously used j, with the
        // ancestor relation mirrored against every previous pair.
        int min_j = pairs.empty() ? 0 : pairs.back().second + 1;
        for (int j = min_j; j < n2; ++j) {
            bool ok = true;
            for (const auto& [pi, pj] : pairs) {
                if (is_descendant(t1, pi, i) != is_descendant(t2, pj, j)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            pairs.emplace_back(i, j);
            search(i + 1);
            pairs.pop_back();
        }
    }
};

} // namespace

int ted_exhaustive(const DepTree& a, const DepTree& b) {
    Flat t1, t2;
    flatten(a, t1);
    flatten(b, t2);
    MapSearch s{t1, t2, {}, static_cast<int>(t1.labels.size() + t2.labels.size())};
    s.search(0);
    return s.best;
}

namespace {

DepTree random_tree_sized(SplitMix64& rng, int nodes,
                          const std::vector<std::string>& alphabet) {
    DepTree root;
    root.label = alphabet[static_cast<size_t>(rng.below(alphabet.size()))];
    int remaining = nodes - 1;
    while (remaining > 0) {
        int take = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(remaining)));
        root.children.push_back(random_tree_sized(rng, take, alphabet));
        remaining -= take;
    }
    return root;
}

} // namespace

DepTree random_tree(SplitMix64& rng, int max_nodes, const std::vector<std::string>& alphabet) {
    int nodes = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(max_nodes)));
    return random_tree_sized(rng, nodes, alphabet);
}

} // namespace evograph::oracle
