#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "medqc/text_pipeline.hpp"

namespace medqc {

enum class SemanticGroup : uint8_t {
    Treatment = 0,
    SignOrSymptom,
    BodyPart,
    Disorder,
    Drug,
    ActiveIngredient,
};

std::string_view to_string(SemanticGroup g);
std::optional<SemanticGroup> parse_semantic_group(std::string_view s);

struct DictionaryEntry {
    std::string surface;  // original definition
    SemanticGroup group = SemanticGroup::Disorder;
    std::vector<std::string> exact_key;   // lowercased surface tokens
    std::vector<std::string> approx_key;  // content-word lemmas, function words removed
};

// Lowercased surface tokens of the definition.
std::vector<std::string> build_exact_key(std::string_view surface, const TextPipeline& pipeline);

// Tokenize, lemmatize, drop function words and punctuation.
std::vector<std::string> build_approx_key(std::string_view surface, const TextPipeline& pipeline);

// Terminology table with exact and approximate lookup keys. Immutable after
// load; shareable across threads.
class Dictionary {
public:
    static constexpr int kMaxNgram = 10;

    // TSV `surface<TAB>group`, '#' comments ignored. Unreadable file throws
    // DataError; malformed lines and entries with an empty approximate key
    // are skipped and counted.
    static Dictionary load(const std::string& path, const TextPipeline& pipeline);

    static Dictionary from_definitions(
        const std::vector<std::pair<std::string, SemanticGroup>>& defs,
        const TextPipeline& pipeline);

    const std::vector<DictionaryEntry>& entries() const { return entries_; }
    int skipped_lines() const { return skipped_; }

    std::optional<int> find_exact(std::string_view joined_key) const;
    std::optional<int> find_approx(std::string_view joined_key) const;

    // Tokens are joined with this separator to form index keys.
    static std::string join_key(const std::vector<std::string>& tokens);

private:
    void add_definition(std::string_view surface, SemanticGroup group,
                        const TextPipeline& pipeline);

    std::vector<DictionaryEntry> entries_;
    std::unordered_map<std::string, int> exact_index_;   // joined key -> lowest entry id
    std::unordered_map<std::string, int> approx_index_;  // joined key -> lowest entry id
    int skipped_ = 0;
};

enum class MatchKind : uint8_t { Exact, Approximate };

struct EntityMention {
    int entry_id = 0;
    int sentence_index = 0;
    int token_start = 0;
    int token_end = 0;  // exclusive
    MatchKind kind = MatchKind::Exact;

    bool operator==(const EntityMention&) const = default;
};

// Greedy leftmost-longest scan: at each position candidate windows of length
// 10 down to 1 are tried, exact before approximate, and the scan resumes
// after a match, so mentions never overlap.
std::vector<EntityMention> match_entities(const TokenizedText& text, const Dictionary& dict);

inline int count_mentions(const std::vector<EntityMention>& mentions) {
    return static_cast<int>(mentions.size());
}

}  // namespace medqc
