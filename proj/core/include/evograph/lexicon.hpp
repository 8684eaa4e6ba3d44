#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

namespace evograph {

// Bundled word lists and the mock ontology, embedded at build time from the
// plain files under core/data/ so binaries are self-contained. The same
// loaders accept user-supplied files in the identical formats.

// Lowercase common-verb forms, one per line in the source file.
const std::set<std::string>& verb_lexicon();

const std::set<std::string>& stopwords();

// Word banks for the deterministic mock generator.
struct Ontology {
    std::vector<std::string> subjects;
    std::vector<std::string> verbs;
    std::vector<std::string> objects;
};

const Ontology& builtin_ontology();

std::set<std::string> load_word_list(const std::filesystem::path& path);
Ontology load_ontology(const std::filesystem::path& path);

namespace detail {
extern const char* const kVerbLexiconText;
extern const char* const kStopwordsText;
extern const char* const kOntologyJson;
extern const char* const kTemplatesJson;
} // namespace detail

} // namespace evograph
