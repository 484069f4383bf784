#include "medqc/quality.hpp"

namespace medqc {

std::string_view to_string(QualityClass c) {
    switch (c) {
        case QualityClass::Stub: return "Stub";
        case QualityClass::Start: return "Start";
        case QualityClass::C: return "C";
        case QualityClass::B: return "B";
        case QualityClass::GA: return "GA";
        case QualityClass::FA: return "FA";
    }
    return "?";
}

std::optional<QualityClass> parse_quality_class(std::string_view s) {
    for (QualityClass c : kAllClasses) {
        if (s == to_string(c)) return c;
    }
    return std::nullopt;
}

char to_letter(ArticleCategory c) {
    switch (c) {
        case ArticleCategory::A: return 'A';
        case ArticleCategory::B: return 'B';
        case ArticleCategory::D: return 'D';
        case ArticleCategory::F: return 'F';
        case ArticleCategory::O: return 'O';
    }
    return '?';
}

std::optional<ArticleCategory> parse_category_letter(std::string_view s) {
    if (s.size() != 1) return std::nullopt;
    for (ArticleCategory c : kAllCategories) {
        if (s[0] == to_letter(c)) return c;
    }
    return std::nullopt;
}

}  // namespace medqc
