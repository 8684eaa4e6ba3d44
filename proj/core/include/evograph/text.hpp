#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace evograph {

// Shared text normalization. Every module that compares or splits event text
// goes through these so that overlap, BLEU and tree building all agree on
// what a token is.

std::string casefold(std::string_view s);

std::string trim(std::string_view s);

// Lowercased alphanumeric runs; punctuation and whitespace are separators.
std::vector<std::string> tokenize(std::string_view s);

std::set<std::string> token_set(std::string_view s);

// Jaccard similarity of two token sets; two empty sets count as identical.
double token_jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

// Plain whitespace split, no casefolding. Used for token-count statistics.
std::vector<std::string> whitespace_tokens(std::string_view s);

bool ends_with(std::string_view s, std::string_view suffix);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Replace every occurrence of `needle` in `s`.
std::string replace_all(std::string s, std::string_view needle, std::string_view replacement);

} // namespace evograph
