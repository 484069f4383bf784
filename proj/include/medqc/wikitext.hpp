#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "medqc/quality.hpp"

namespace medqc {

struct RawArticle {
    std::string title;
    std::string wikitext;
    QualityClass label = QualityClass::Stub;
    int64_t byte_length = 0;  // UTF-8 bytes of wikitext
};

inline RawArticle make_article(std::string title, std::string wikitext,
                               QualityClass label = QualityClass::Stub) {
    RawArticle a;
    a.byte_length = static_cast<int64_t>(wikitext.size());
    a.title = std::move(title);
    a.wikitext = std::move(wikitext);
    a.label = label;
    return a;
}

// Everything pulled out of one article's markup in a single best-effort pass.
// Parsing never fails: malformed constructs close implicitly at end of input
// and stray marker characters degrade to plain text.
struct StructuralElements {
    std::vector<std::string> internal_links;  // link targets, duplicates kept, fragments stripped
    std::vector<std::string> external_links;  // URLs (bracketed or bare)
    std::vector<std::string> headings;
    int references = 0;
    int images = 0;
    std::optional<std::string> infobox_raw;  // contents of the first outermost {{Infobox ...}}
    std::vector<std::string> category_strings;
    std::string plain_text;  // markup-free text runs in document order

    bool operator==(const StructuralElements&) const = default;
};

StructuralElements parse_wikitext(std::string_view wikitext);

inline StructuralElements parse_article(const RawArticle& raw) {
    return parse_wikitext(raw.wikitext);
}

// MediaWiki-style title normalization: trim, collapse whitespace and
// underscores to single spaces, uppercase the first character.
std::string normalize_title(std::string_view title);

// Set of normalized titles of the corpus under evaluation; the only way to
// decide link brokenness offline.
class TitleIndex {
public:
    TitleIndex() = default;

    // Throws DataError naming the collision if two titles normalize equal.
    static TitleIndex build(const std::vector<RawArticle>& corpus);

    // From already-normalized titles (model deserialization).
    static TitleIndex from_normalized(std::vector<std::string> titles);

    bool contains(std::string_view title) const {
        return titles_.count(normalize_title(title)) > 0;
    }
    std::size_t size() const { return titles_.size(); }

    // Sorted, for deterministic serialization.
    std::vector<std::string> sorted_titles() const;

private:
    std::unordered_set<std::string> titles_;
};

struct WikilinkCounts {
    int total = 0;
    int broken = 0;
};

WikilinkCounts count_wikilinks(const StructuralElements& elems, const TitleIndex& index);

// Byte count of the infobox span, 0 when the article has none.
inline int64_t extract_infobox_bytes(const StructuralElements& elems) {
    return elems.infobox_raw ? static_cast<int64_t>(elems.infobox_raw->size()) : 0;
}

}  // namespace medqc
