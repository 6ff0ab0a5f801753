#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cmsent/classifiers.hpp"
#include "cmsent/corpus.hpp"
#include "cmsent/eval.hpp"
#include "cmsent/features.hpp"

namespace cmsent {

struct CorpusSource {
    std::filesystem::path path;
    CorpusFormat format = CorpusFormat::Jsonl;
};

// One experiment = one train/test corpus pair swept over feature levels ×
// classifiers. Loaded from a JSON config file (paths are resolved relative
// to the config file's directory):
//
//   {
//     "name": "exp1",
//     "corpus": {"path": "...", "format": "two_file_polarity"},   // either a
//     "split": {"train_per_class": 4000, "test_per_class": 1200}, // single corpus + split
//     "train": {"path": "...", "format": "jsonl"},                 // or explicit pair
//     "test":  {"path": "...", "format": "jsonl"},
//     "family": "fset1",
//     "levels": ["fe01", ...],          // optional, default: the family ladder
//     "classifiers": ["GNB", ...],      // optional, default: all six
//     "seed": 42,                        // optional
//     "out_dir": "out/exp1",
//     "resources": {
//       "stopwords": "...",              // required
//       "bn_function_words": "...",      // optional
//       "emoticons": "...",              // optional, default built-in set
//       "tagger": "...",                 // required for fset1
//       "swn": "...",                    // each lexicon required only when a
//       "socal": ["adj","adv","noun","verb","intensifier"],  // requested level
//       "nrc": "..."                     // activates it
//     },
//     "classifier_overrides": {"LSVC": {"epochs": 80}, ...}  // optional
//   }
struct ExperimentConfig {
    std::string name;
    std::optional<CorpusSource> corpus;  // with split
    std::optional<SplitSpec> split;      // split.seed is ignored; the experiment seed rules
    std::optional<CorpusSource> train;
    std::optional<CorpusSource> test;
    FeatureFamily family = FeatureFamily::FSet1;
    std::vector<Level> levels;
    std::vector<Algorithm> classifiers;
    std::uint64_t seed = 42;
    std::filesystem::path out_dir;

    std::filesystem::path stopwords;
    std::optional<std::filesystem::path> bn_function_words;
    std::optional<std::filesystem::path> emoticons;
    std::optional<std::filesystem::path> tagger;
    std::optional<std::filesystem::path> swn;
    std::vector<std::filesystem::path> socal;  // empty or exactly 5
    std::optional<std::filesystem::path> nrc;

    std::map<Algorithm, ClassifierSpec> overrides;
};

ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct AblationCell {
    Level level = Level::Fe01;
    Algorithm algorithm = Algorithm::Gnb;
    double accuracy = 0.0;
    ConfusionMatrix cm;
    std::filesystem::path record_path;  // exactly one persisted run record per cell
};

struct AblationTable {
    std::string experiment;
    std::uint64_t seed = 0;
    std::string train_corpus;
    std::string test_corpus;
    std::vector<Level> levels;
    std::vector<Algorithm> classifiers;
    std::vector<std::vector<AblationCell>> cells;  // [level][classifier]
};

// Runs the full sweep: per level, build the feature space on the train
// corpus and vectorize both corpora against it unchanged (cross-domain runs
// simply miss vocabulary); per classifier, train, predict the test corpus,
// persist the run record, and compute the cell accuracy from that record's
// entries. Deterministic under a fixed config. Cells are independent of one
// another; this implementation runs them sequentially in row-major order.
// Errors from inner modules are re-thrown with "<level>/<classifier>"
// context. Also writes "<name>_table.md" and "<name>_table.csv" into
// out_dir.
AblationTable run_experiment(const ExperimentConfig& config);

enum class TableFormat { Markdown, Csv };

// Accuracies as percentages with 2 decimals. Markdown marks the single best
// cell in bold (ties: first in row-major order) and says so in the caption.
std::string render_table(const AblationTable& table, TableFormat format);

// Synthetic code-mixed review corpus built from template grammars over a
// fixed romanized-Bengali sentiment vocabulary (bhalo, asadharon, ghyam,
// darun, shundor vs kharap, baje, bekar, faltu, jaghanno), Bengali function
// words (er, e, je, ta, ...), shared English sentiment words, and the
// negator "na" in both orders ("chilo na kharap" → positive, "bhalo na" →
// negative). Snippets carry hashtag/emoticon artifacts; labels follow the
// template polarity; output depends only on (seed, size_per_class).
LabeledCorpus make_codemix_fixture(std::uint64_t seed, std::size_t size_per_class);

// English-only sibling sharing the same English sentiment vocabulary, for
// train-on-English / test-on-code-mixed contrast runs.
LabeledCorpus make_english_fixture(std::uint64_t seed, std::size_t size_per_class);

// The polarity-bearing items the fixture grammars draw from ("na" counts as
// a negative item). Exposed so audits can scan generated corpora.
const std::vector<std::string>& fixture_positive_items();
const std::vector<std::string>& fixture_negative_items();

}  // namespace cmsent
