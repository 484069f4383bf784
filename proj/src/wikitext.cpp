#include "medqc/wikitext.hpp"

#include <algorithm>
#include <cctype>

#include "medqc/error.hpp"

namespace medqc {
namespace {

bool starts_with_ci(std::string_view s, std::size_t pos, std::string_view lower_prefix) {
    if (pos + lower_prefix.size() > s.size()) return false;
    for (std::size_t k = 0; k < lower_prefix.size(); ++k) {
        if (std::tolower(static_cast<unsigned char>(s[pos + k])) != lower_prefix[k]) return false;
    }
    return true;
}

std::string_view trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

constexpr std::string_view kUrlSchemes[] = {"http://", "https://", "ftp://"};

bool scheme_at(std::string_view s, std::size_t pos) {
    for (std::string_view scheme : kUrlSchemes) {
        if (starts_with_ci(s, pos, scheme)) return true;
    }
    return false;
}

// Single forward pass over the markup. Recursion happens only for link and
// external-link labels, which may themselves carry inline markup.
class Scanner {
public:
    explicit Scanner(StructuralElements& out) : out_(out) {}

    void scan_document(std::string_view s) { scan(s, /*line_start=*/true); }

private:
    StructuralElements& out_;

    void emit(char c) { out_.plain_text.push_back(c); }
    void emit(std::string_view s) { out_.plain_text.append(s); }

    void scan(std::string_view s, bool line_start) {
        std::size_t i = 0;
        while (i < s.size()) {
            char c = s[i];
            if (line_start && c == '=' && parse_heading(s, i)) {
                line_start = true;
                continue;
            }
            if (c == '<') {
                if (starts_with_ci(s, i, "<!--")) {
                    skip_comment(s, i);
                    line_start = false;
                    continue;
                }
                if (is_ref_open(s, i)) {
                    parse_ref(s, i);
                    line_start = false;
                    continue;
                }
                if (skip_html_tag(s, i)) {
                    line_start = false;
                    continue;
                }
            } else if (c == '{' && i + 1 < s.size() && s[i + 1] == '{') {
                parse_template(s, i);
                line_start = false;
                continue;
            } else if (c == '[' && i + 1 < s.size() && s[i + 1] == '[') {
                parse_bracket_link(s, i);
                line_start = false;
                continue;
            } else if (c == '[' && scheme_at(s, i + 1)) {
                parse_external_link(s, i);
                line_start = false;
                continue;
            } else if (c == '\'' && i + 1 < s.size() && s[i + 1] == '\'') {
                while (i < s.size() && s[i] == '\'') ++i;
                continue;
            } else if (scheme_at(s, i) && (i == 0 || !is_url_char(s[i - 1]))) {
                parse_bare_url(s, i);
                line_start = false;
                continue;
            }
            emit(c);
            line_start = (c == '\n');
            ++i;
        }
    }

    static bool is_url_char(char c) {
        unsigned char u = static_cast<unsigned char>(c);
        return std::isalnum(u) || c == '/' || c == ':' || c == '.' || c == '-' || c == '_' ||
               c == '%' || c == '?' || c == '&' || c == '=' || c == '#' || c == '~' || c == '+';
    }

    // Line fenced by 2-6 '=' on each side. On success consumes through the
    // trailing newline and emits the heading text on its own line.
    bool parse_heading(std::string_view s, std::size_t& i) {
        std::size_t nl = s.find('\n', i);
        std::size_t line_end = (nl == std::string_view::npos) ? s.size() : nl;
        std::string_view line = s.substr(i, line_end - i);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
            line.remove_suffix(1);

        std::size_t lead = 0;
        while (lead < line.size() && line[lead] == '=') ++lead;
        if (lead < 2 || lead > 6) return false;
        std::size_t tail = 0;
        while (tail < line.size() && line[line.size() - 1 - tail] == '=') ++tail;
        if (tail < 2 || lead + tail > line.size()) return false;

        std::string_view text = trim(line.substr(lead, line.size() - lead - tail));
        out_.headings.emplace_back(text);
        emit(text);
        if (nl != std::string_view::npos) {
            emit('\n');
            i = nl + 1;
        } else {
            i = s.size();
        }
        return true;
    }

    void skip_comment(std::string_view s, std::size_t& i) {
        std::size_t end = s.find("-->", i + 4);
        i = (end == std::string_view::npos) ? s.size() : end + 3;
    }

    static bool is_ref_open(std::string_view s, std::size_t i) {
        if (!starts_with_ci(s, i, "<ref")) return false;
        if (i + 4 >= s.size()) return true;  // "<ref" truncated at end of input
        char next = s[i + 4];
        return next == ' ' || next == '\t' || next == '\n' || next == '>' || next == '/';
    }

    void parse_ref(std::string_view s, std::size_t& i) {
        ++out_.references;
        std::size_t gt = s.find('>', i + 4);
        if (gt == std::string_view::npos) {
            i = s.size();  // unclosed tag, implicit close
            return;
        }
        if (s[gt - 1] == '/') {  // self-closing
            i = gt + 1;
            return;
        }
        std::size_t close = std::string_view::npos;
        for (std::size_t p = gt + 1; p + 5 <= s.size(); ++p) {
            if (starts_with_ci(s, p, "</ref")) {
                close = p;
                break;
            }
        }
        if (close == std::string_view::npos) {
            i = s.size();
            return;
        }
        std::size_t g2 = s.find('>', close);
        i = (g2 == std::string_view::npos) ? s.size() : g2 + 1;
    }

    // Non-ref tags are dropped; the text between an open and close tag stays.
    bool skip_html_tag(std::string_view s, std::size_t& i) {
        std::size_t j = i + 1;
        if (j < s.size() && s[j] == '/') ++j;
        if (j >= s.size() || !std::isalpha(static_cast<unsigned char>(s[j]))) return false;
        std::size_t limit = std::min(s.size(), i + 512);
        for (std::size_t p = j; p < limit; ++p) {
            if (s[p] == '>') {
                i = p + 1;
                return true;
            }
            if (s[p] == '<') return false;
        }
        return false;
    }

    void parse_template(std::string_view s, std::size_t& i) {
        std::size_t j = i + 2;
        int depth = 1;
        while (j < s.size() && depth > 0) {
            if (s[j] == '{' && j + 1 < s.size() && s[j + 1] == '{') {
                ++depth;
                j += 2;
            } else if (s[j] == '}' && j + 1 < s.size() && s[j + 1] == '}') {
                --depth;
                j += 2;
            } else {
                ++j;
            }
        }
        std::size_t content_end = (depth == 0) ? j - 2 : s.size();
        std::string_view inner = s.substr(i + 2, content_end - (i + 2));
        std::string_view name = trim(inner);
        if (!out_.infobox_raw && starts_with_ci(name, 0, "infobox")) {
            out_.infobox_raw = std::string(inner);
        }
        i = (depth == 0) ? j : s.size();
    }

    void parse_bracket_link(std::string_view s, std::size_t& i) {
        std::size_t j = i + 2;
        int depth = 1;
        while (j < s.size() && depth > 0) {
            if (s[j] == '[' && j + 1 < s.size() && s[j + 1] == '[') {
                ++depth;
                j += 2;
            } else if (s[j] == ']' && j + 1 < s.size() && s[j + 1] == ']') {
                --depth;
                j += 2;
            } else {
                ++j;
            }
        }
        std::size_t content_end = (depth == 0) ? j - 2 : s.size();
        std::string_view inner = s.substr(i + 2, content_end - (i + 2));
        i = (depth == 0) ? j : s.size();

        // first '|' outside nested [[..]]
        std::size_t pipe = std::string_view::npos;
        int d = 0;
        for (std::size_t p = 0; p < inner.size(); ++p) {
            if (inner[p] == '[' && p + 1 < inner.size() && inner[p + 1] == '[') {
                ++d;
                ++p;
            } else if (inner[p] == ']' && p + 1 < inner.size() && inner[p + 1] == ']') {
                --d;
                ++p;
            } else if (inner[p] == '|' && d == 0) {
                pipe = p;
                break;
            }
        }
        std::string_view target_raw = (pipe == std::string_view::npos) ? inner : inner.substr(0, pipe);
        std::string_view label =
            (pipe == std::string_view::npos) ? std::string_view{} : inner.substr(pipe + 1);
        std::string_view target = trim(target_raw);

        if (starts_with_ci(target, 0, "category:")) {
            std::string_view name = trim(target.substr(9));
            out_.category_strings.emplace_back(name);
            return;
        }
        if (starts_with_ci(target, 0, "file:") || starts_with_ci(target, 0, "image:")) {
            ++out_.images;
            return;
        }
        std::string_view page = target;
        std::size_t hash = target.find('#');
        if (hash != std::string_view::npos) page = trim(target.substr(0, hash));
        if (!page.empty()) out_.internal_links.emplace_back(page);
        if (pipe == std::string_view::npos) {
            emit(target);
        } else {
            scan(label, /*line_start=*/false);
        }
    }

    void parse_external_link(std::string_view s, std::size_t& i) {
        std::size_t end = s.find(']', i + 1);
        std::size_t content_end = (end == std::string_view::npos) ? s.size() : end;
        std::string_view inner = s.substr(i + 1, content_end - (i + 1));
        std::size_t sp = inner.find_first_of(" \t");
        std::string_view url = (sp == std::string_view::npos) ? inner : inner.substr(0, sp);
        out_.external_links.emplace_back(url);
        if (sp != std::string_view::npos) {
            scan(trim(inner.substr(sp + 1)), /*line_start=*/false);
        }
        i = (end == std::string_view::npos) ? s.size() : end + 1;
    }

    void parse_bare_url(std::string_view s, std::size_t& i) {
        std::size_t j = i;
        while (j < s.size() && is_url_char(s[j])) ++j;
        while (j > i && (s[j - 1] == '.' || s[j - 1] == ',' || s[j - 1] == ';' ||
                         s[j - 1] == ':' || s[j - 1] == '!' || s[j - 1] == '?')) {
            --j;
        }
        out_.external_links.emplace_back(s.substr(i, j - i));
        i = j;
    }
};

}  // namespace

StructuralElements parse_wikitext(std::string_view wikitext) {
    StructuralElements out;
    Scanner(out).scan_document(wikitext);
    return out;
}

std::string normalize_title(std::string_view title) {
    std::string out;
    out.reserve(title.size());
    bool pending_sep = false;
    for (char c : title) {
        if (c == ' ' || c == '\t' || c == '_' || c == '\n' || c == '\r') {
            if (!out.empty()) pending_sep = true;
        } else {
            if (pending_sep) {
                out.push_back(' ');
                pending_sep = false;
            }
            out.push_back(c);
        }
    }
    if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    return out;
}

TitleIndex TitleIndex::build(const std::vector<RawArticle>& corpus) {
    TitleIndex index;
    for (const RawArticle& a : corpus) {
        std::string n = normalize_title(a.title);
        if (!index.titles_.insert(n).second) {
            throw DataError("duplicate normalized title in corpus: \"" + a.title +
                            "\" normalizes to \"" + n + "\" which is already present");
        }
    }
    return index;
}

TitleIndex TitleIndex::from_normalized(std::vector<std::string> titles) {
    TitleIndex index;
    for (std::string& t : titles) index.titles_.insert(std::move(t));
    return index;
}

std::vector<std::string> TitleIndex::sorted_titles() const {
    std::vector<std::string> out(titles_.begin(), titles_.end());
    std::sort(out.begin(), out.end());
    return out;
}

WikilinkCounts count_wikilinks(const StructuralElements& elems, const TitleIndex& index) {
    WikilinkCounts counts;
    counts.total = static_cast<int>(elems.internal_links.size());
    for (const std::string& target : elems.internal_links) {
        if (!index.contains(target)) ++counts.broken;
    }
    return counts;
}

}  // namespace medqc
