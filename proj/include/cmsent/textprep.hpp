#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace cmsent {

// Coarse POS inventory. Everything that is not an open-class English word
// ends up as Other; Bengali tokens are always Other.
enum class Pos { Adj, Adv, Noun, Verb, Other };

enum class Lang { En, Bn };

std::string_view to_string(Pos pos);
std::string_view to_string(Lang lang);
std::optional<Pos> pos_from_string(std::string_view s);
std::optional<Lang> lang_from_string(std::string_view s);

struct TaggedToken {
    std::string surface;           // lowercased token text
    std::optional<Lang> lang;      // unset when unknown
    std::optional<Pos> pos;        // unset until tagged

    bool operator==(const TaggedToken&) const = default;
};

// Tokenizer
//
// A token is a maximal run of ASCII letters and digits, lowercased, with two
// join exceptions:
//   - an apostrophe joins when both neighbours are letters/digits ("don't")
//   - a slash joins when both neighbours are digits ("2/10")
// Every other byte separates, including all non-ASCII bytes (the classic
// review corpora are Windows-1252; we treat those bytes as punctuation
// rather than guessing an encoding). Guarantees: no empty tokens, no token
// consists of separator characters, and re-tokenizing the space-joined
// output reproduces it.
std::vector<TaggedToken> tokenize(std::string_view text);

// Same tokens plus their [begin, end) byte spans in the input.
struct TokenSpan {
    std::string surface;
    std::size_t begin = 0;
    std::size_t end = 0;
};
std::vector<TokenSpan> tokenize_with_spans(std::string_view text);

// Stopword / function-word lists. Both sets are lowercase; loaders enforce
// that. In English-only processing the Bengali set is simply left empty.
struct WordLists {
    std::unordered_set<std::string> english_stopwords;
    std::unordered_set<std::string> bengali_function_words;
};

// One entry per line, '#' starts a comment, blank lines skipped, entries
// lowercased. Empty result is an error.
std::unordered_set<std::string> load_word_list(const std::filesystem::path& path);

// Literal emoticon patterns ( ":)", ":-(", "<3", ... ), one per line, same
// comment rules as load_word_list. Matching is case-sensitive, so variants
// like ":D" and ":d" need separate lines.
std::vector<std::string> load_emoticon_patterns(const std::filesystem::path& path);
const std::vector<std::string>& default_emoticon_patterns();

// Removes tokens produced by hashtags and emoticons.
//
// Works span-wise: the raw text is scanned for artifact regions (a '#' plus
// the following run of letters/digits/underscores; any emoticon pattern,
// longest match first, scanning left to right) and tokens whose span
// intersects an artifact region are dropped. `tokens` must be the tokenizer
// output for `raw_text`; if it is not (the caller re-ordered or edited), the
// function falls back to removing, by surface, one occurrence per artifact
// token. Tags on surviving tokens are untouched and order is preserved.
std::vector<TaggedToken> remove_social_artifacts(const std::vector<TaggedToken>& tokens,
                                                 std::string_view raw_text,
                                                 const std::vector<std::string>& emoticons
                                                 = default_emoticon_patterns());

// Stopword-based n-gram filter used by the feature rankers.
//   n == 2: keep only if no token is in either list
//   n == 3: keep only if at most one token is in either list
// Tokens are matched verbatim (lists and tokens are both lowercase).
// n outside {2,3} or an n-gram of the wrong length is a programmer error.
bool ngram_passes_filter(const std::vector<std::string>& ngram, int n,
                         const WordLists& lists);

}  // namespace cmsent
