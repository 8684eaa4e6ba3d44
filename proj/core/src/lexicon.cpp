#include "evograph/lexicon.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "evograph/errors.hpp"
#include "evograph/serde.hpp"
#include "evograph/text.hpp"

namespace evograph {

namespace {

std::set<std::string> parse_word_list(const std::string& text) {
    std::set<std::string> words;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto w = trim(line);
        if (!w.empty()) words.insert(casefold(w));
    }
    return words;
}

Ontology parse_ontology(const json& j) {
    Ontology o;
    o.subjects = j.at("subjects").get<std::vector<std::string>>();
    o.verbs = j.at("verbs").get<std::vector<std::string>>();
    o.objects = j.at("objects").get<std::vector<std::string>>();
    if (o.subjects.empty() || o.verbs.empty() || o.objects.empty()) {
        throw InputError("ontology word banks must be non-empty");
    }
    return o;
}

} // namespace

const std::set<std::string>& verb_lexicon() {
    static const std::set<std::string> lexicon = parse_word_list(detail::kVerbLexiconText);
    return lexicon;
}

const std::set<std::string>& stopwords() {
    static const std::set<std::string> words = parse_word_list(detail::kStopwordsText);
    return words;
}

const Ontology& builtin_ontology() {
    static const Ontology o = parse_ontology(json::parse(detail::kOntologyJson));
    return o;
}

std::set<std::string> load_word_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_word_list(buf.str());
}

Ontology load_ontology(const std::filesystem::path& path) {
    return parse_ontology(read_json_file(path));
}

TemplateStore builtin_template_store() {
    static const std::vector<Template> templates =
        json::parse(detail::kTemplatesJson).get<std::vector<Template>>();
    return TemplateStore(templates);
}

} // namespace evograph
