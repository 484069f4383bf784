#include "medqc/text_pipeline.hpp"

#include <cctype>
#include <fstream>

#include "medqc/error.hpp"

namespace medqc {
namespace {

bool is_word_byte(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u >= 0x80;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// Token forms that keep a following ". Capital" from ending the sentence.
const std::unordered_set<std::string>& abbreviations() {
    static const std::unordered_set<std::string> kAbbrev = {
        "etc", "vs", "dr", "mr", "mrs", "ms", "prof", "fig", "al", "cf", "sr", "jr",
    };
    return kAbbrev;
}

struct RawToken {
    std::string_view surface;
    bool space_after = false;
    bool newline_after = false;
};

std::vector<RawToken> lex(std::string_view text) {
    std::vector<RawToken> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!out.empty()) {
                out.back().space_after = true;
                if (c == '\n') out.back().newline_after = true;
            }
            ++i;
            continue;
        }
        std::size_t j = i;
        if (is_word_byte(c)) {
            while (j < text.size()) {
                if (is_word_byte(text[j])) {
                    ++j;
                } else if ((text[j] == '-' || text[j] == '\'') && j + 1 < text.size() &&
                           is_word_byte(text[j + 1]) && j > i) {
                    ++j;  // internal hyphen or apostrophe
                } else {
                    break;
                }
            }
        } else {
            ++j;  // punctuation: one char per token
        }
        out.push_back({text.substr(i, j - i), false, false});
        i = j;
    }
    return out;
}

void read_word_list(const std::string& path, std::unordered_set<std::string>& out) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read word list: " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string word = to_lower(line);
        std::size_t b = word.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        std::size_t e = word.find_last_not_of(" \t");
        word = word.substr(b, e - b + 1);
        if (word.empty() || word[0] == '#') continue;
        out.insert(word);
    }
}

}  // namespace

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        unsigned char u = static_cast<unsigned char>(c);
        if (u < 0x80) c = static_cast<char>(std::tolower(u));
    }
    return out;
}

bool is_pure_punctuation(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        unsigned char u = static_cast<unsigned char>(c);
        if (u >= 0x80 || !std::ispunct(u)) return false;
    }
    return true;
}

TextPipeline TextPipeline::load(const std::string& lemma_path, const std::string& stopword_path,
                                const std::string& function_word_path) {
    TextPipeline p;
    std::ifstream in(lemma_path);
    if (!in) throw DataError("cannot read lemma lexicon: " + lemma_path);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
            throw DataError("malformed lemma lexicon line " + std::to_string(line_no) + " in " +
                            lemma_path);
        }
        p.lemma_lexicon_[to_lower(line.substr(0, tab))] = to_lower(line.substr(tab + 1));
    }
    read_word_list(stopword_path, p.stopwords_);
    read_word_list(function_word_path, p.function_words_);
    return p;
}

TextPipeline TextPipeline::from_lists(std::unordered_map<std::string, std::string> lemma_lexicon,
                                      std::unordered_set<std::string> stopwords,
                                      std::unordered_set<std::string> function_words) {
    TextPipeline p;
    p.lemma_lexicon_ = std::move(lemma_lexicon);
    p.stopwords_ = std::move(stopwords);
    p.function_words_ = std::move(function_words);
    return p;
}

TokenizedText TextPipeline::tokenize(std::string_view text) const {
    std::vector<RawToken> raw = lex(text);
    TokenizedText out;
    std::vector<Token> current;

    auto flush = [&] {
        if (!current.empty()) out.sentences.push_back(std::move(current));
        current.clear();
    };

    for (std::size_t idx = 0; idx < raw.size(); ++idx) {
        const RawToken& rt = raw[idx];
        Token tok;
        tok.surface = std::string(rt.surface);
        tok.lemma = lemmatize(tok.surface);
        tok.is_function_word = classify_function_word(tok.surface);
        tok.is_stopword = is_stopword(tok.surface);
        current.push_back(std::move(tok));

        bool boundary = false;
        if (rt.newline_after) {
            boundary = true;
        } else if (rt.surface == "." || rt.surface == "!" || rt.surface == "?") {
            if (idx + 1 == raw.size()) {
                boundary = true;
            } else if (rt.space_after &&
                       std::isupper(static_cast<unsigned char>(raw[idx + 1].surface[0]))) {
                // last word before the terminator decides the abbreviation exception
                std::string prev_word;
                for (auto it = current.rbegin(); it != current.rend(); ++it) {
                    if (!it->surface.empty() && is_word_byte(it->surface[0])) {
                        prev_word = to_lower(it->surface);
                        break;
                    }
                }
                if (!abbreviations().count(prev_word)) boundary = true;
            }
        }
        if (boundary) flush();
    }
    flush();
    return out;
}

std::string TextPipeline::lemmatize(std::string_view surface) const {
    std::string low = to_lower(surface);
    auto it = lemma_lexicon_.find(low);
    if (it != lemma_lexicon_.end()) return it->second;

    std::size_t n = low.size();
    if (n > 4 && ends_with(low, "ies")) {
        return low.substr(0, n - 3) + "y";
    }
    if (n > 4 && ends_with(low, "es")) {
        std::string_view base = std::string_view(low).substr(0, n - 2);
        if (ends_with(base, "x") || ends_with(base, "z") || ends_with(base, "ch") ||
            ends_with(base, "sh")) {
            return std::string(base);
        }
    }
    if (n > 3 && ends_with(low, "s") && !ends_with(low, "ss") && !ends_with(low, "us") &&
        !ends_with(low, "is")) {
        return low.substr(0, n - 1);
    }
    return low;
}

bool TextPipeline::classify_function_word(std::string_view surface) const {
    if (is_pure_punctuation(surface)) return true;
    return function_words_.count(to_lower(surface)) > 0;
}

bool TextPipeline::is_stopword(std::string_view surface) const {
    return stopwords_.count(to_lower(surface)) > 0;
}

TokenizedText remove_stopwords(const TokenizedText& text) {
    TokenizedText out;
    out.sentences.reserve(text.sentences.size());
    for (const auto& sentence : text.sentences) {
        std::vector<Token> kept;
        for (const Token& tok : sentence) {
            if (!tok.is_stopword) kept.push_back(tok);
        }
        out.sentences.push_back(std::move(kept));
    }
    return out;
}

}  // namespace medqc
