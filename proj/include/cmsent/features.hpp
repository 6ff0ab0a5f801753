#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cmsent/corpus.hpp"
#include "cmsent/lexicons.hpp"
#include "cmsent/textprep.hpp"

namespace cmsent {

struct TagResources;

// Cumulative feature-set ladder. fe01..fe07 is the English-side family
// (POS-driven unigrams), fe08..fe13 the code-mixed family (tf-idf unigrams,
// no POS dependence). Each level strictly contains the one before it.
//
//   fe01  unigrams tagged ADJ (all seen in training)       | fe08  top 1000 unigrams by tf-idf,
//   fe02  + unigrams tagged ADV/VERB/NOUN                  |       stopword/function-word free
//   fe03  + top 1000 filtered bigrams                      | fe09  + top 200 filtered bigrams
//   fe04  + top 500 filtered trigrams                      | fe10  + top 100 filtered trigrams
//   fe05  + swn lexicon block                              | fe11  + swn
//   fe06  + socal lexicon block                            | fe12  + socal
//   fe07  + nrc lexicon block                              | fe13  + nrc
enum class Level {
    Fe01, Fe02, Fe03, Fe04, Fe05, Fe06, Fe07,
    Fe08, Fe09, Fe10, Fe11, Fe12, Fe13,
};

enum class FeatureFamily { FSet1, FSet2 };

std::string_view to_string(Level level);
std::optional<Level> level_from_string(std::string_view s);
FeatureFamily family_of(Level level);
std::string_view to_string(FeatureFamily family);
std::optional<FeatureFamily> family_from_string(std::string_view s);
// the family's levels, ascending
const std::vector<Level>& levels_in(FeatureFamily family);

struct LexiconUse {
    bool swn = false;
    bool socal = false;
    bool nrc = false;
};
LexiconUse lexicons_for(Level level);

using NgramKey = std::vector<std::string>;

// n-grams in snippet order, with multiplicity
std::vector<NgramKey> extract_ngrams(const std::vector<std::string>& tokens, int n);
std::vector<NgramKey> extract_ngrams(const std::vector<TaggedToken>& tokens, int n);

enum class RankMode { English, CodeMixed };

struct RankedNgram {
    NgramKey key;
    double score = 0.0;
    double total_tf = 0.0;
    std::size_t df = 0;
};

// All surviving candidates, best first.
//
// Candidates: every n-gram in the corpus except those rejected by
// ngram_passes_filter (n = 2, 3); unigrams are dropped in codemix mode when
// they appear in either word list and are kept unconditionally in english
// mode (POS selection happens upstream there). In english mode the Bengali
// list is ignored entirely.
//
// score(g) = total_tf(g) · idf(g),  idf = ln((1+N)/(1+df)) + 1,
// with N = corpus size and df = number of snippets containing g. Ties are
// broken by lexicographic key order, so the result is a total order.
// Snippets must already carry tokens; untokenized ones are tokenized on the
// fly (without artifact removal; preprocessing is the caller's job).
std::vector<RankedNgram> tfidf_ranking(const LabeledCorpus& corpus, int n,
                                       const WordLists& lists, RankMode mode);

// Top k of tfidf_ranking (all candidates if fewer than k exist).
std::vector<NgramKey> rank_by_tfidf(const LabeledCorpus& corpus, int n, std::size_t k,
                                    const WordLists& lists, RankMode mode);

struct FeatureSpace {
    Level level = Level::Fe01;
    std::vector<NgramKey> vocabulary;  // unigram block, then bigrams, then trigrams
    std::unordered_map<std::string, std::uint32_t> index;  // joined key → column
    LexiconUse lexicons;
    std::string corpus_name;
    std::uint64_t seed = 0;

    std::size_t ngram_columns() const { return vocabulary.size(); }
    std::size_t lexicon_columns() const;
    std::size_t total_columns() const { return ngram_columns() + lexicon_columns(); }
};

// Canonical single-string form of a key: tokens joined by U+241F (a
// character the tokenizer can never emit).
std::string join_key(const NgramKey& key);
NgramKey split_key(std::string_view joined);

// Build resources shared by the space builders and vectorize.
struct PrepOptions {
    const TagResources* tagger = nullptr;                  // used by the FSet1 path
    const std::vector<std::string>* emoticons = nullptr;   // FSet2 artifact removal;
                                                           // null → built-in default set
};

// level ∈ fe01..fe07. Training snippets must carry POS-tagged tokens.
// Unigram blocks are ordered lexicographically; ranked n-gram blocks keep
// rank order. Throws when the level activates a lexicon missing from the
// bundle.
FeatureSpace build_fset1(const LabeledCorpus& train, Level level,
                         const WordLists& lists, const LexiconBundle& lexicons);

// level ∈ fe08..fe13. Training snippets must carry tokens with social
// artifacts already removed.
FeatureSpace build_fset2(const LabeledCorpus& train, Level level,
                         const WordLists& lists, const LexiconBundle& lexicons);

struct FeatureVector {
    // (column, count), sorted by column, counts ≥ 1
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ngram_counts;
    // active lexicon groups, fixed order: swn [pos_sum, neg_sum, hits],
    // socal [positive part, negative part, hits], nrc [10 counts].
    // socal is split into non-negative halves so that the count-based
    // classifiers stay well-defined; the signed sum is their difference.
    std::vector<double> lexicon_values;
    std::uint32_t ngram_dimension = 0;

    std::size_t dimension() const { return ngram_dimension + lexicon_values.size(); }
};

// Counts the snippet's n-grams against the space vocabulary and appends the
// active lexicon blocks. Pre-supplied tokens are used as-is; otherwise the
// snippet is tokenized (FSet2: artifacts removed; FSet1: tagged when prep
// provides a tagger; tags only sharpen swn lookups here, n-gram counting
// never needs them).
FeatureVector vectorize(const Snippet& snippet, const FeatureSpace& space,
                        const LexiconBundle& lexicons, const PrepOptions& prep = {});

void save_feature_space(const FeatureSpace& space, const std::filesystem::path& path);
FeatureSpace load_feature_space(const std::filesystem::path& path);

}  // namespace cmsent
