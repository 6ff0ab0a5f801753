#include "cmsent/textprep.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <unordered_map>

#include "cmsent/error.hpp"

namespace cmsent {

namespace {

bool is_ascii_alnum(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

bool is_ascii_digit(unsigned char c) { return c >= '0' && c <= '9'; }

char lower(unsigned char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

std::string_view to_string(Pos pos) {
    switch (pos) {
        case Pos::Adj: return "ADJ";
        case Pos::Adv: return "ADV";
        case Pos::Noun: return "NOUN";
        case Pos::Verb: return "VERB";
        case Pos::Other: return "OTHER";
    }
    return "OTHER";
}

std::string_view to_string(Lang lang) {
    return lang == Lang::En ? "EN" : "BN";
}

std::optional<Pos> pos_from_string(std::string_view s) {
    if (s == "ADJ") return Pos::Adj;
    if (s == "ADV") return Pos::Adv;
    if (s == "NOUN") return Pos::Noun;
    if (s == "VERB") return Pos::Verb;
    if (s == "OTHER") return Pos::Other;
    return std::nullopt;
}

std::optional<Lang> lang_from_string(std::string_view s) {
    if (s == "EN") return Lang::En;
    if (s == "BN") return Lang::Bn;
    return std::nullopt;
}

std::vector<TokenSpan> tokenize_with_spans(std::string_view text) {
    std::vector<TokenSpan> out;
    const std::size_t n = text.size();
    std::size_t i = 0;
    while (i < n) {
        if (!is_ascii_alnum(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        TokenSpan tok;
        tok.begin = i;
        while (i < n) {
            const unsigned char c = static_cast<unsigned char>(text[i]);
            if (is_ascii_alnum(c)) {
                tok.surface.push_back(lower(c));
                ++i;
                continue;
            }
            // join rules look one byte back and one ahead
            if (c == '\'' && i + 1 < n
                && is_ascii_alnum(static_cast<unsigned char>(text[i + 1]))) {
                tok.surface.push_back('\'');
                ++i;
                continue;
            }
            if (c == '/' && i + 1 < n
                && is_ascii_digit(static_cast<unsigned char>(text[i - 1]))
                && is_ascii_digit(static_cast<unsigned char>(text[i + 1]))) {
                tok.surface.push_back('/');
                ++i;
                continue;
            }
            break;
        }
        tok.end = i;
        out.push_back(std::move(tok));
    }
    return out;
}

std::vector<TaggedToken> tokenize(std::string_view text) {
    std::vector<TaggedToken> out;
    for (auto& span : tokenize_with_spans(text)) {
        TaggedToken t;
        t.surface = std::move(span.surface);
        out.push_back(std::move(t));
    }
    return out;
}

std::unordered_set<std::string> load_word_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open word list: " + path.string());
    std::unordered_set<std::string> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::transform(line.begin(), line.end(), line.begin(),
                       [](unsigned char c) { return lower(c); });
        out.insert(line);
    }
    if (out.empty()) throw DataError("word list is empty: " + path.string());
    return out;
}

std::vector<std::string> load_emoticon_patterns(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open emoticon list: " + path.string());
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') continue;  // full-line comments only; patterns keep inner punctuation
        line = trim(line);
        if (line.empty()) continue;
        out.push_back(line);
    }
    if (out.empty()) throw DataError("emoticon list is empty: " + path.string());
    return out;
}

const std::vector<std::string>& default_emoticon_patterns() {
    static const std::vector<std::string> patterns = {
        ":-)", ":-(", ":-D", ":-P", ":-p", ":-/", ":-\\", ":-|", ":-*",
        ":)",  ":(",  ":D",  ":P",  ":p",  ":/",  ":|",   ":*",
        ";-)", ";)",  ";-D", ";D",
        ":'(", ":'-(",
        "=)",  "=(",  "=D",
        "xD",  "XD",  "xd",
        "<3",  "</3",
        "^_^", "^^",  "-_-", "o_O", "O_o", "o_o", "O_O",
        ":3",  ">:(", ">:)",
    };
    return patterns;
}

namespace {

struct ByteSpan {
    std::size_t begin, end;
};

bool intersects(const ByteSpan& a, std::size_t begin, std::size_t end) {
    return begin < a.end && a.begin < end;
}

// A pattern edge that is a letter or digit must sit on a word boundary;
// otherwise "xd" would eat the middle of "xdcam".
bool on_word_boundary(std::string_view text, std::size_t begin, std::size_t end,
                      const std::string& pat) {
    if (is_ascii_alnum(static_cast<unsigned char>(pat.front())) && begin > 0
        && is_ascii_alnum(static_cast<unsigned char>(text[begin - 1])))
        return false;
    if (is_ascii_alnum(static_cast<unsigned char>(pat.back())) && end < text.size()
        && is_ascii_alnum(static_cast<unsigned char>(text[end])))
        return false;
    return true;
}

// Artifact regions: hashtags and emoticons, non-overlapping, left to right.
// Emoticons are tried longest-first at each position so ":-(" beats ":-".
std::vector<ByteSpan> artifact_spans(std::string_view text,
                                     const std::vector<std::string>& emoticons) {
    std::vector<std::string> sorted = emoticons;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    std::vector<ByteSpan> spans;
    const std::size_t n = text.size();
    std::size_t i = 0;
    while (i < n) {
        if (text[i] == '#' && i + 1 < n
            && (is_ascii_alnum(static_cast<unsigned char>(text[i + 1]))
                || text[i + 1] == '_')) {
            std::size_t j = i + 1;
            while (j < n
                   && (is_ascii_alnum(static_cast<unsigned char>(text[j]))
                       || text[j] == '_'))
                ++j;
            spans.push_back({i, j});
            i = j;
            continue;
        }
        bool matched = false;
        for (const auto& pat : sorted) {
            if (pat.empty() || pat.size() > n - i) continue;
            if (text.compare(i, pat.size(), pat) == 0
                && on_word_boundary(text, i, i + pat.size(), pat)) {
                spans.push_back({i, i + pat.size()});
                i += pat.size();
                matched = true;
                break;
            }
        }
        if (!matched) ++i;
    }
    return spans;
}

}  // namespace

std::vector<TaggedToken> remove_social_artifacts(const std::vector<TaggedToken>& tokens,
                                                 std::string_view raw_text,
                                                 const std::vector<std::string>& emoticons) {
    const std::vector<ByteSpan> artifacts = artifact_spans(raw_text, emoticons);
    if (artifacts.empty()) return tokens;

    const std::vector<TokenSpan> spans = tokenize_with_spans(raw_text);
    const bool aligned =
        spans.size() == tokens.size()
        && std::equal(spans.begin(), spans.end(), tokens.begin(),
                      [](const TokenSpan& s, const TaggedToken& t) {
                          return s.surface == t.surface;
                      });

    if (aligned) {
        std::vector<TaggedToken> out;
        out.reserve(tokens.size());
        for (std::size_t k = 0; k < tokens.size(); ++k) {
            const bool hit = std::any_of(artifacts.begin(), artifacts.end(),
                                         [&](const ByteSpan& a) {
                                             return intersects(a, spans[k].begin, spans[k].end);
                                         });
            if (!hit) out.push_back(tokens[k]);
        }
        return out;
    }

    // Tokens do not line up with the raw text (caller edited them). Remove by
    // surface instead: one occurrence per token found inside artifact regions.
    std::unordered_map<std::string, std::size_t> budget;
    for (const auto& a : artifacts) {
        for (auto& s : tokenize_with_spans(raw_text.substr(a.begin, a.end - a.begin)))
            ++budget[s.surface];
    }
    std::vector<TaggedToken> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
        auto it = budget.find(t.surface);
        if (it != budget.end() && it->second > 0) {
            --it->second;
            continue;
        }
        out.push_back(t);
    }
    return out;
}

bool ngram_passes_filter(const std::vector<std::string>& ngram, int n,
                         const WordLists& lists) {
    if (n != 2 && n != 3)
        throw std::invalid_argument("ngram_passes_filter: n must be 2 or 3");
    if (ngram.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("ngram_passes_filter: n-gram length != n");
    int hits = 0;
    for (const auto& tok : ngram) {
        if (lists.english_stopwords.count(tok) || lists.bengali_function_words.count(tok))
            ++hits;
    }
    return n == 2 ? hits == 0 : hits <= 1;
}

}  // namespace cmsent
