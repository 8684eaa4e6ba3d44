#include "evograph/serde.hpp"

namespace evograph {

namespace {

// Line-number context is added by read_jsonl; here we only keep unknown
// labels hard errors instead of letting nlohmann coerce them.
std::optional<std::string> opt_string(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return it->get<std::string>();
}

json opt_to_json(const std::optional<std::string>& v) {
    return v.has_value() ? json(*v) : json(nullptr);
}

} // namespace

void to_json(json& j, const Event& e) {
    j = json{{"id", e.id},
             {"text", e.text},
             {"image", opt_to_json(e.image)},
             {"caption", opt_to_json(e.caption)},
             {"trigger", opt_to_json(e.trigger)}};
}

void from_json(const json& j, Event& e) {
    e.id = j.at("id").get<std::string>();
    e.text = j.at("text").get<std::string>();
    e.image = opt_string(j, "image");
    e.caption = opt_string(j, "caption");
    e.trigger = opt_string(j, "trigger");
}

void to_json(json& j, const GraphNode& n) {
    j = json{{"id", n.id},
             {"text", n.text},
             {"direction", std::string(to_string(n.direction))},
             {"depth", n.depth}};
}

void from_json(const json& j, GraphNode& n) {
    n.id = j.at("id").get<std::string>();
    n.text = j.at("text").get<std::string>();
    n.direction = node_direction_from_string(j.at("direction").get<std::string>());
    n.depth = j.at("depth").get<int>();
}

void to_json(json& j, const GraphEdge& e) {
    j = json{{"src", e.src}, {"rel", std::string(to_string(e.rel))}, {"dst", e.dst}};
}

void from_json(const json& j, GraphEdge& e) {
    e.src = j.at("src").get<std::string>();
    e.rel = relation_from_string(j.at("rel").get<std::string>());
    e.dst = j.at("dst").get<std::string>();
}

void to_json(json& j, const EvolvingGraph& g) {
    j = json{{"graph_id", g.graph_id},
             {"seed_id", g.seed_id},
             {"nodes", g.nodes},
             {"edges", g.edges}};
}

void from_json(const json& j, EvolvingGraph& g) {
    g.graph_id = j.at("graph_id").get<std::string>();
    g.seed_id = j.at("seed_id").get<std::string>();
    g.nodes = j.at("nodes").get<std::vector<GraphNode>>();
    g.edges = j.at("edges").get<std::vector<GraphEdge>>();
}

void to_json(json& j, const Template& t) {
    j = json{{"relation", std::string(to_string(t.relation))},
             {"with_text", t.with_text},
             {"format", std::string(to_string(t.format))},
             {"body", t.body}};
}

void from_json(const json& j, Template& t) {
    t.relation = relation_from_string(j.at("relation").get<std::string>());
    t.with_text = j.at("with_text").get<bool>();
    t.format = task_format_from_string(j.at("format").get<std::string>());
    t.body = j.at("body").get<std::string>();
}

void to_json(json& j, const Provenance& p) {
    json path = json::array();
    for (Relation r : p.path) path.push_back(std::string(to_string(r)));
    j = json{{"graph_id", p.graph_id}, {"node_id", p.node_id}, {"path", path}};
}

void from_json(const json& j, Provenance& p) {
    p.graph_id = j.at("graph_id").get<std::string>();
    p.node_id = j.at("node_id").get<std::string>();
    p.path.clear();
    for (const auto& label : j.at("path")) {
        p.path.push_back(relation_from_string(label.get<std::string>()));
    }
}

void to_json(json& j, const InstructionDatum& d) {
    j = json{{"id", d.id},
             {"image", d.image},
             {"question", d.question},
             {"answer", d.answer},
             {"relation", std::string(to_string(d.relation))},
             {"task", std::string(to_string(d.task))},
             {"options", d.options.has_value() ? json(*d.options) : json(nullptr)},
             {"answer_index", d.answer_index.has_value() ? json(*d.answer_index) : json(nullptr)},
             {"provenance", d.provenance}};
}

void from_json(const json& j, InstructionDatum& d) {
    d.id = j.at("id").get<std::string>();
    d.image = j.at("image").get<std::string>();
    d.question = j.at("question").get<std::string>();
    d.answer = j.at("answer").get<std::string>();
    d.relation = relation_from_string(j.at("relation").get<std::string>());
    d.task = task_format_from_string(j.at("task").get<std::string>());
    auto opt_it = j.find("options");
    if (opt_it != j.end() && !opt_it->is_null()) {
        d.options = opt_it->get<std::vector<std::string>>();
    } else {
        d.options.reset();
    }
    auto idx_it = j.find("answer_index");
    if (idx_it != j.end() && !idx_it->is_null()) {
        d.answer_index = idx_it->get<int>();
    } else {
        d.answer_index.reset();
    }
    d.provenance = j.at("provenance").get<Provenance>();
}

json dep_tree_to_json(const DepTree& t) {
    json children = json::array();
    for (const auto& c : t.children) children.push_back(dep_tree_to_json(c));
    return json::array({t.label, children});
}

DepTree dep_tree_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_array()) {
        throw InputError("dep tree must be [label, [children...]]");
    }
    DepTree t;
    t.label = j[0].get<std::string>();
    for (const auto& c : j[1]) t.children.push_back(dep_tree_from_json(c));
    return t;
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const std::exception& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    out << j.dump(2) << '\n';
}

} // namespace evograph
