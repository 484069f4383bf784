#include "medqc/dictionary.hpp"

#include <fstream>

#include "medqc/error.hpp"

namespace medqc {
namespace {

constexpr char kKeySep = '\x1f';

std::vector<Token> flatten(const TokenizedText& text) {
    std::vector<Token> out;
    for (const auto& sentence : text.sentences) {
        out.insert(out.end(), sentence.begin(), sentence.end());
    }
    return out;
}

}  // namespace

std::string_view to_string(SemanticGroup g) {
    switch (g) {
        case SemanticGroup::Treatment: return "Treatment";
        case SemanticGroup::SignOrSymptom: return "SignOrSymptom";
        case SemanticGroup::BodyPart: return "BodyPart";
        case SemanticGroup::Disorder: return "Disorder";
        case SemanticGroup::Drug: return "Drug";
        case SemanticGroup::ActiveIngredient: return "ActiveIngredient";
    }
    return "?";
}

std::optional<SemanticGroup> parse_semantic_group(std::string_view s) {
    for (SemanticGroup g : {SemanticGroup::Treatment, SemanticGroup::SignOrSymptom,
                            SemanticGroup::BodyPart, SemanticGroup::Disorder, SemanticGroup::Drug,
                            SemanticGroup::ActiveIngredient}) {
        if (s == to_string(g)) return g;
    }
    return std::nullopt;
}

std::vector<std::string> build_exact_key(std::string_view surface, const TextPipeline& pipeline) {
    std::vector<std::string> key;
    for (const Token& tok : flatten(pipeline.tokenize(surface))) {
        key.push_back(to_lower(tok.surface));
    }
    return key;
}

std::vector<std::string> build_approx_key(std::string_view surface, const TextPipeline& pipeline) {
    std::vector<std::string> key;
    for (const Token& tok : flatten(pipeline.tokenize(surface))) {
        if (tok.is_function_word) continue;
        key.push_back(tok.lemma);
    }
    return key;
}

std::string Dictionary::join_key(const std::vector<std::string>& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out.push_back(kKeySep);
        out.append(tokens[i]);
    }
    return out;
}

void Dictionary::add_definition(std::string_view surface, SemanticGroup group,
                                const TextPipeline& pipeline) {
    DictionaryEntry entry;
    entry.surface = std::string(surface);
    entry.group = group;
    entry.exact_key = build_exact_key(surface, pipeline);
    entry.approx_key = build_approx_key(surface, pipeline);
    if (entry.approx_key.empty()) {
        ++skipped_;
        return;
    }
    int id = static_cast<int>(entries_.size());
    bool exact_new = exact_index_.try_emplace(join_key(entry.exact_key), id).second;
    bool approx_new = approx_index_.try_emplace(join_key(entry.approx_key), id).second;
    if (!exact_new && !approx_new) {
        ++skipped_;  // duplicate of an existing entry under both keys
        return;
    }
    entries_.push_back(std::move(entry));
}

Dictionary Dictionary::load(const std::string& path, const TextPipeline& pipeline) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read dictionary: " + path);
    Dictionary dict;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || line.find('\t', tab + 1) != std::string::npos) {
            ++dict.skipped_;
            continue;
        }
        auto group = parse_semantic_group(std::string_view(line).substr(tab + 1));
        if (!group) {
            ++dict.skipped_;
            continue;
        }
        dict.add_definition(std::string_view(line).substr(0, tab), *group, pipeline);
    }
    return dict;
}

Dictionary Dictionary::from_definitions(
    const std::vector<std::pair<std::string, SemanticGroup>>& defs, const TextPipeline& pipeline) {
    Dictionary dict;
    for (const auto& [surface, group] : defs) {
        dict.add_definition(surface, group, pipeline);
    }
    return dict;
}

std::optional<int> Dictionary::find_exact(std::string_view joined_key) const {
    auto it = exact_index_.find(std::string(joined_key));
    if (it == exact_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> Dictionary::find_approx(std::string_view joined_key) const {
    auto it = approx_index_.find(std::string(joined_key));
    if (it == approx_index_.end()) return std::nullopt;
    return it->second;
}

std::vector<EntityMention> match_entities(const TokenizedText& text, const Dictionary& dict) {
    std::vector<EntityMention> mentions;
    for (std::size_t si = 0; si < text.sentences.size(); ++si) {
        const std::vector<Token>& sentence = text.sentences[si];
        const int n = static_cast<int>(sentence.size());

        std::vector<std::string> lowered(n);
        for (int t = 0; t < n; ++t) lowered[t] = to_lower(sentence[t].surface);

        int i = 0;
        while (i < n) {
            int matched = 0;
            const int max_len = std::min(Dictionary::kMaxNgram, n - i);
            for (int len = max_len; len >= 1 && !matched; --len) {
                std::vector<std::string> window(lowered.begin() + i, lowered.begin() + i + len);
                if (auto id = dict.find_exact(Dictionary::join_key(window))) {
                    mentions.push_back({*id, static_cast<int>(si), i, i + len, MatchKind::Exact});
                    matched = len;
                    break;
                }
                // Approximate windows are anchored on content words: leading or
                // trailing function words belong to the surrounding text, not
                // the mention.
                if (sentence[i].is_function_word || sentence[i + len - 1].is_function_word) {
                    continue;
                }
                std::vector<std::string> filtered;
                for (int t = i; t < i + len; ++t) {
                    if (!sentence[t].is_function_word) filtered.push_back(sentence[t].lemma);
                }
                if (filtered.empty()) continue;
                if (auto id = dict.find_approx(Dictionary::join_key(filtered))) {
                    mentions.push_back(
                        {*id, static_cast<int>(si), i, i + len, MatchKind::Approximate});
                    matched = len;
                    break;
                }
            }
            i += matched ? matched : 1;
        }
    }
    return mentions;
}

}  // namespace medqc
