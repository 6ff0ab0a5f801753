#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cmsent/textprep.hpp"

namespace cmsent {

enum class Polarity { Negative = 0, Positive = 1 };

std::string_view to_string(Polarity p);
std::optional<Polarity> polarity_from_string(std::string_view s);

struct Snippet {
    std::string id;
    std::string text;
    Polarity label = Polarity::Negative;
    // Filled by the preprocessing pipeline, or supplied directly in JSONL
    // input, in which case downstream stages take them as-is.
    std::optional<std::vector<TaggedToken>> tokens;
};

struct LabeledCorpus {
    std::string name;
    std::vector<Snippet> snippets;
};

enum class CorpusFormat { Jsonl, TwoFilePolarity };

// Jsonl: one object per line with fields "id", "text", "label"
// ("positive"/"negative") and optional "tokens" ([{surface, lang, pos}],
// lang/pos nullable). Duplicate ids, missing fields and malformed lines are
// reported with their line number.
//
// TwoFilePolarity: `path` is a prefix; `<path>.pos` and `<path>.neg` hold one
// snippet per line. Ids are "positive-<line>" / "negative-<line>" (1-based).
// Bytes are passed through untouched; the tokenizer treats non-ASCII bytes
// as separators, so no transcoding is needed.
LabeledCorpus load_corpus(const std::filesystem::path& path, CorpusFormat format);

void save_corpus_jsonl(const LabeledCorpus& corpus, const std::filesystem::path& path);

struct SplitSpec {
    std::size_t train_per_class = 0;
    std::size_t test_per_class = 0;
    std::uint64_t seed = 42;
};

// Seeded, label-stratified split. Each class is shuffled independently
// (positives first, one RNG stream) and prefixes are taken, so the result
// depends only on corpus order and the seed. Train and test are disjoint.
// Asking for more snippets per class than exist is an error.
std::pair<LabeledCorpus, LabeledCorpus> split_corpus(const LabeledCorpus& corpus,
                                                     const SplitSpec& spec);

struct CorpusStats {
    std::size_t total = 0;
    std::size_t positive = 0;
    std::size_t negative = 0;
};

CorpusStats corpus_stats(const LabeledCorpus& corpus);

}  // namespace cmsent
