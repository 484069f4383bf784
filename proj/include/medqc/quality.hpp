#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace medqc {

// WikiProject assessment classes, lowest to highest. Class "A" exists in the
// WikiProject scheme but never occurs in medical-portal corpora, so it is not
// modeled.
enum class QualityClass : uint8_t { Stub = 0, Start, C, B, GA, FA };

inline constexpr int kNumClasses = 6;

inline constexpr std::array<QualityClass, kNumClasses> kAllClasses = {
    QualityClass::Stub, QualityClass::Start, QualityClass::C,
    QualityClass::B,    QualityClass::GA,    QualityClass::FA,
};

std::string_view to_string(QualityClass c);
std::optional<QualityClass> parse_quality_class(std::string_view s);

// Upper-level topic category derived from an article's MediaWiki category
// strings: Anatomy, Biography, Disorder, First aid, Other.
enum class ArticleCategory : uint8_t { A = 0, B, D, F, O };

inline constexpr int kNumCategories = 5;

inline constexpr std::array<ArticleCategory, kNumCategories> kAllCategories = {
    ArticleCategory::A, ArticleCategory::B, ArticleCategory::D,
    ArticleCategory::F, ArticleCategory::O,
};

char to_letter(ArticleCategory c);
std::optional<ArticleCategory> parse_category_letter(std::string_view s);

}  // namespace medqc
