#include "evograph/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <set>

#include "evograph/errors.hpp"
#include "evograph/serde.hpp"
#include "evograph/text.hpp"

namespace evograph {

std::string_view to_string(DecodeBranch b) {
    switch (b) {
        case DecodeBranch::Prefix: return "prefix";
        case DecodeBranch::Regex: return "regex";
        case DecodeBranch::Overlap: return "overlap";
    }
    throw Error("internal", "invalid decode branch");
}

namespace {

int check_label(char letter, size_t option_count) {
    int index = letter - 'A';
    if (index < 0 || static_cast<size_t>(index) >= option_count) {
        throw LabelOutOfRangeError(std::string("decoded label '") + letter + "' exceeds " +
                                   std::to_string(option_count) + " options");
    }
    return index;
}

} // namespace

DecodeResult decode_close_ex(const std::string& prediction,
                             const std::vector<std::string>& options) {
    if (options.size() < 2 || options.size() > 8) {
        throw InputError("decode needs between 2 and 8 options, got " +
                         std::to_string(options.size()));
    }

    const std::string p = trim(prediction);

    // Branch 1: bare label prefix.
    if (!p.empty() && p[0] >= 'A' && p[0] <= 'H') {
        bool standalone = p.size() == 1 || p[1] == '.' || p[1] == ':' || p[1] == ')' ||
                          std::isspace(static_cast<unsigned char>(p[1]));
        if (standalone) {
            return {check_label(p[0], options.size()), DecodeBranch::Prefix};
        }
    }

    // Branch 2: stated answer pattern, anywhere in the prediction.
    static const std::regex pattern("the(?: correct)? (?:option|answer) is[\\s:]+([A-H])",
                                    std::regex::ECMAScript | std::regex::icase);
    std::smatch m;
    if (std::regex_search(p, m, pattern)) {
        char letter = static_cast<char>(
            std::toupper(static_cast<unsigned char>(m[1].str()[0])));
        return {check_label(letter, options.size()), DecodeBranch::Regex};
    }

    // Branch 3: closest option by word overlap.
    const auto pred_tokens = token_set(p);
    int best = 0;
    double best_overlap = -1.0;
    for (size_t i = 0; i < options.size(); ++i) {
        double ov = token_jaccard(token_set(options[i]), pred_tokens);
        if (ov > best_overlap) {
            best_overlap = ov;
            best = static_cast<int>(i);
        }
    }
    return {best, DecodeBranch::Overlap};
}

int decode_close(const std::string& prediction, const std::vector<std::string>& options) {
    return decode_close_ex(prediction, options).index;
}

double accuracy(const std::vector<std::pair<int, int>>& decoded_vs_gold) {
    if (decoded_vs_gold.empty()) throw EmptyInputError("no records to score");
    size_t correct = 0;
    for (const auto& [decoded, gold] : decoded_vs_gold) {
        if (decoded == gold) ++correct;
    }
    return 100.0 * static_cast<double>(correct) /
           static_cast<double>(decoded_vs_gold.size());
}

namespace {

std::map<std::string, int> ngram_counts(const std::vector<std::string>& tokens, int n) {
    std::map<std::string, int> counts;
    if (static_cast<int>(tokens.size()) < n) return counts;
    for (size_t i = 0; i + static_cast<size_t>(n) <= tokens.size(); ++i) {
        std::string key = tokens[i];
        for (int k = 1; k < n; ++k) {
            key += '\x1f';
            key += tokens[i + static_cast<size_t>(k)];
        }
        ++counts[key];
    }
    return counts;
}

} // namespace

double bleu_n(std::string_view prediction, std::string_view reference, int n) {
    if (n < 1) throw InputError("bleu order must be >= 1");
    const auto pred = tokenize(prediction);
    const auto ref = tokenize(reference);
    const auto c = static_cast<double>(pred.size());
    const auto r = static_cast<double>(ref.size());
    if (pred.empty()) return 0.0;

    double log_sum = 0.0;
    for (int order = 1; order <= n; ++order) {
        auto pred_counts = ngram_counts(pred, order);
        auto ref_counts = ngram_counts(ref, order);
        int total = 0;
        int clipped = 0;
        for (const auto& [gram, count] : pred_counts) {
            total += count;
            auto it = ref_counts.find(gram);
            if (it != ref_counts.end()) clipped += std::min(count, it->second);
        }
        double precision = total > 0 ? static_cast<double>(clipped) / total : 0.0;
        if (precision == 0.0) {
            if (order == 1) return 0.0;
            precision = 1.0 / (2.0 * c); // epsilon smoothing for higher orders
        }
        log_sum += std::log(precision);
    }
    const double brevity = c < r ? std::exp(1.0 - r / c) : 1.0;
    return brevity * std::exp(log_sum / n);
}

double corpus_bleu(const std::vector<std::pair<std::string, std::string>>& pred_ref_pairs,
                   int n) {
    if (pred_ref_pairs.empty()) throw EmptyInputError("no sentence pairs to score");
    double sum = 0.0;
    for (const auto& [pred, ref] : pred_ref_pairs) sum += bleu_n(pred, ref, n);
    return 100.0 * sum / static_cast<double>(pred_ref_pairs.size());
}

void load_external_scores(std::vector<EvalRecord>& records,
                          const std::filesystem::path& path,
                          const std::string& metric_name) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    std::map<std::string, double> by_id;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            json j = json::parse(line);
            by_id[j.at("id").get<std::string>()] = j.at("score").get<double>();
        } catch (const std::exception& e) {
            throw InputError(path.string() + " line " + std::to_string(line_no) + ": " +
                             e.what());
        }
    }

    std::vector<std::string> missing;
    std::set<std::string> record_ids;
    for (const auto& rec : records) {
        record_ids.insert(rec.id);
        if (by_id.find(rec.id) == by_id.end()) missing.push_back(rec.id);
    }
    std::vector<std::string> extra;
    for (const auto& [id, score] : by_id) {
        (void)score;
        if (!record_ids.count(id)) extra.push_back(id);
    }
    if (!missing.empty() || !extra.empty()) {
        std::string msg = "external scores for '" + metric_name + "' do not match records";
        if (!missing.empty()) msg += "; missing: " + join(missing, ", ");
        if (!extra.empty()) msg += "; extra: " + join(extra, ", ");
        throw IdMismatchError(msg);
    }
    for (auto& rec : records) rec.scores[metric_name] = by_id.at(rec.id);
}

} // namespace evograph
