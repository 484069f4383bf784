#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace medqc {

struct Token {
    std::string surface;
    std::string lemma;  // lowercased normal form
    bool is_stopword = false;
    bool is_function_word = false;  // preposition, determiner, conjunction, or punctuation
};

struct TokenizedText {
    std::vector<std::vector<Token>> sentences;

    std::size_t token_count() const {
        std::size_t n = 0;
        for (const auto& s : sentences) n += s.size();
        return n;
    }
};

// ASCII lowercasing; multi-byte UTF-8 sequences pass through unchanged.
std::string to_lower(std::string_view s);

// True when every byte is ASCII punctuation.
bool is_pure_punctuation(std::string_view s);

// Rule-based replacement for a full NLP pipeline: sentence splitting on
// terminators followed by a capitalized word, lexicon + suffix-rule
// lemmatization, closed-class function-word lists. English only.
class TextPipeline {
public:
    static TextPipeline load(const std::string& lemma_path, const std::string& stopword_path,
                             const std::string& function_word_path);

    static TextPipeline from_lists(std::unordered_map<std::string, std::string> lemma_lexicon,
                                   std::unordered_set<std::string> stopwords,
                                   std::unordered_set<std::string> function_words);

    TokenizedText tokenize(std::string_view text) const;

    // Lexicon lookup on the lowercased surface, then plural-folding fallback.
    std::string lemmatize(std::string_view surface) const;

    bool classify_function_word(std::string_view surface) const;
    bool is_stopword(std::string_view surface) const;

private:
    std::unordered_map<std::string, std::string> lemma_lexicon_;
    std::unordered_set<std::string> stopwords_;
    std::unordered_set<std::string> function_words_;
};

// Drops flagged stopword tokens, preserving sentence structure and order.
TokenizedText remove_stopwords(const TokenizedText& text);

}  // namespace medqc
