#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evograph/relation.hpp"

namespace evograph {

struct EvalRecord {
    std::string id;
    std::string prediction;
    std::string gold_answer;
    std::optional<std::vector<std::string>> options;
    std::optional<std::string> decoded; // option label, set iff options present
    std::map<std::string, double> scores;
    std::optional<Relation> relation; // carried through for the report breakdown
};

enum class DecodeBranch { Prefix, Regex, Overlap };

std::string_view to_string(DecodeBranch b);

struct DecodeResult {
    int index = 0;
    DecodeBranch branch = DecodeBranch::Overlap;
};

// Answer extraction from free-form model output, in fixed branch order:
//   1. the trimmed prediction starts with a bare option letter (A-H followed
//      by end, '.', ':', ')' or whitespace),
//   2. else the pattern "the(?: correct)? (?:option|answer) is[\s:]+([A-H])"
//      matches anywhere, case-insensitively,
//   3. else the option with the highest word overlap against the prediction,
//      ties to the lowest index.
// Throws LabelOutOfRangeError when a matched letter exceeds the option count
// and InputError unless 2 <= |options| <= 8.
DecodeResult decode_close_ex(const std::string& prediction,
                             const std::vector<std::string>& options);

int decode_close(const std::string& prediction, const std::vector<std::string>& options);

// 100 * correct / N over (decoded index, gold index) pairs.
// Throws EmptyInputError on an empty list.
double accuracy(const std::vector<std::pair<int, int>>& decoded_vs_gold);

// Sentence-level BLEU-n in [0, 1]: modified n-gram precision with reference
// clipping, geometric mean over orders 1..n, brevity penalty exp(1 - r/c)
// when the prediction is shorter than the reference. A zero precision at
// order > 1 is smoothed to 1/(2c); a zero unigram precision stays zero.
double bleu_n(std::string_view prediction, std::string_view reference, int n);

// Mean of sentence scores scaled to 0..100.
double corpus_bleu(const std::vector<std::pair<std::string, std::string>>& pred_ref_pairs,
                   int n);

// Attaches {"id","score"} JSONL rows under scores[metric_name]. The file ids
// must match the record ids exactly; IdMismatchError lists missing/extra ids.
void load_external_scores(std::vector<EvalRecord>& records,
                          const std::filesystem::path& path,
                          const std::string& metric_name);

} // namespace evograph
