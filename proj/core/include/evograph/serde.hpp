#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "evograph/datum.hpp"
#include "evograph/dep_tree.hpp"
#include "evograph/errors.hpp"
#include "evograph/event.hpp"
#include "evograph/graph.hpp"
#include "evograph/templates.hpp"

namespace evograph {

// nlohmann::json keeps object keys sorted, which makes every file this
// library writes canonical: same values in, same bytes out.
using json = nlohmann::json;

void to_json(json& j, const Event& e);
void from_json(const json& j, Event& e);

void to_json(json& j, const GraphNode& n);
void from_json(const json& j, GraphNode& n);

void to_json(json& j, const GraphEdge& e);
void from_json(const json& j, GraphEdge& e);

void to_json(json& j, const EvolvingGraph& g);
void from_json(const json& j, EvolvingGraph& g);

void to_json(json& j, const Template& t);
void from_json(const json& j, Template& t);

void to_json(json& j, const Provenance& p);
void from_json(const json& j, Provenance& p);

void to_json(json& j, const InstructionDatum& d);
void from_json(const json& j, InstructionDatum& d);

// DepTree uses the sidecar shape: nested ["label", [children...]].
json dep_tree_to_json(const DepTree& t);
DepTree dep_tree_from_json(const json& j);

// One JSON object per line. Parse and schema problems are reported with the
// 1-based line number.
template <typename T>
std::vector<T> read_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    std::vector<T> out;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(json::parse(line).get<T>());
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            throw InputError(path.string() + " line " + std::to_string(line_no) + ": " +
                             e.what());
        }
    }
    return out;
}

template <typename T>
void write_jsonl(const std::filesystem::path& path, const std::vector<T>& rows) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    for (const auto& row : rows) {
        out << json(row).dump() << '\n';
    }
}

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

} // namespace evograph
