#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cmsent/textprep.hpp"

namespace cmsent {

// --- SentiWordNet-style lexicon ------------------------------------------
//
// File lines: POS<TAB>id<TAB>pos_score<TAB>neg_score<TAB>terms[<TAB>gloss]
// where POS is one of a/s (adjective), r (adverb), n (noun), v (verb) and
// terms is a space-separated list of "word#sense" entries. '#' at the start
// of a line is a comment. Scores outside [0,1] are rejected.
//
// Every synset a (word, POS) pair appears in contributes equally: entries
// hold the per-(word, POS) average. word_fallback holds, per word, the
// unweighted mean of its per-POS averages; lookups without a usable tag, or
// whose exact (word, POS) entry is missing, degrade to it.
struct SwnLexicon {
    struct Scores {
        double positive = 0.0;
        double negative = 0.0;
    };
    std::map<std::pair<std::string, Pos>, Scores> entries;
    std::map<std::string, Scores> word_fallback;
};

SwnLexicon load_swn(const std::filesystem::path& path);
// One synthesized synset line per (word, POS) entry; loading it back
// reproduces the lexicon exactly.
void save_swn(const SwnLexicon& lex, const std::filesystem::path& path);

// --- SO-CAL-style dictionaries --------------------------------------------
//
// Five word -> value files (adjective, adverb, noun, verb, intensifier), one
// "word value" pair per line, '#' comments. Sentiment values are signed
// strengths; intensifier values are fractional modifiers, applied to the
// immediately following token as (1 + value).
struct SocalLexicon {
    std::map<std::string, double> adjective;
    std::map<std::string, double> adverb;
    std::map<std::string, double> noun;
    std::map<std::string, double> verb;
    std::map<std::string, double> intensifier;
};

// paths order: adjective, adverb, noun, verb, intensifier. Anything other
// than exactly five paths is an error.
SocalLexicon load_socal(const std::vector<std::filesystem::path>& paths);
void save_socal(const SocalLexicon& lex, const std::vector<std::filesystem::path>& paths);

// --- NRC-style emotion/polarity association lexicon ------------------------
//
// Lines: word<TAB>category<TAB>flag with flag in {0,1}. Categories and their
// fixed vector order are nrc_categories(). Words whose positive and negative
// flags are both 0 are dropped at load time: they cannot separate the two
// classes here.
struct NrcLexicon {
    std::map<std::string, std::array<std::uint8_t, 10>> entries;
};

const std::array<std::string_view, 10>& nrc_categories();
NrcLexicon load_nrc(const std::filesystem::path& path);
void save_nrc(const NrcLexicon& lex, const std::filesystem::path& path);

// --- aggregate features -----------------------------------------------------

struct LexiconBundle {
    std::optional<SwnLexicon> swn;
    std::optional<SocalLexicon> socal;
    std::optional<NrcLexicon> nrc;
};

struct LexiconFeatures {
    double swn_pos_sum = 0.0;
    double swn_neg_sum = 0.0;
    std::uint32_t swn_hits = 0;
    double socal_sum = 0.0;  // signed; intensifiers already applied
    std::uint32_t socal_hits = 0;
    std::array<std::uint32_t, 10> nrc_counts{};
};

// Scores a token sequence against whichever lexicons are non-null.
//
// SWN: (surface, tag) entry when the token carries an Adj/Adv/Noun/Verb tag,
// otherwise (or on a miss) word_fallback.
// SO-CAL: the tag's own dictionary is tried first, then the remaining
// sentiment dictionaries in adjective, adverb, noun, verb order (tags are
// heuristic; a miss in the own dictionary should not erase a known word).
// An intensifier multiplies the score of the next token only and is consumed
// whether or not that token carries sentiment.
// NRC: per-token category flags are summed.
LexiconFeatures lexicon_features(const std::vector<TaggedToken>& tokens,
                                 const SwnLexicon* swn,
                                 const SocalLexicon* socal,
                                 const NrcLexicon* nrc);

}  // namespace cmsent
