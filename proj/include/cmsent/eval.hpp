#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cmsent/corpus.hpp"

namespace cmsent {

struct ConfusionMatrix {
    std::size_t tp = 0;  // gold positive, predicted positive
    std::size_t tn = 0;
    std::size_t fp = 0;  // gold negative, predicted positive
    std::size_t fn = 0;

    std::size_t total() const { return tp + tn + fp + fn; }
};

// predictions[i] is matched with gold[i]; lengths must agree and be non-zero.
ConfusionMatrix confusion(const std::vector<Polarity>& predictions,
                          const std::vector<Polarity>& gold);

// Positive is the target class for precision/recall/F1. G is the geometric
// mean of precision and recall; MCC is the usual four-term correlation.
// A zero denominator makes the affected metric 0 and sets degenerate.
struct MetricsReport {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double g_measure = 0.0;
    double mcc = 0.0;
    bool degenerate = false;
};

MetricsReport metrics(const ConfusionMatrix& cm);

// One prediction of one run; the score is the model's decision score.
struct RunRecordEntry {
    std::string snippet_id;
    Polarity gold = Polarity::Negative;
    Polarity predicted = Polarity::Negative;
    double score = 0.0;
};

struct RunRecord {
    std::string experiment;
    std::string level;
    std::string classifier;
    std::uint64_t seed = 0;
    std::string train_corpus;
    std::string test_corpus;
    std::vector<RunRecordEntry> entries;
};

// JSONL: a header object on the first line, one entry object per line after.
// Written atomically (temp file + rename). Scores survive the round trip
// exactly; they are stored as hex floats.
void save_run_record(const RunRecord& record, const std::filesystem::path& path);
RunRecord load_run_record(const std::filesystem::path& path);

struct Misclassified {
    Snippet snippet;
    Polarity predicted = Polarity::Negative;
    Polarity gold = Polarity::Negative;
    double score = 0.0;
};

// The wrongly-predicted snippets, most confident mistakes first (ties keep
// corpus order). All four inputs are aligned by index.
std::vector<Misclassified> misclassified(const std::vector<Polarity>& predictions,
                                         const std::vector<Polarity>& gold,
                                         const std::vector<double>& scores,
                                         const LabeledCorpus& corpus);

// Set differences over the two runs' wrongly-predicted snippet ids. Both
// records must cover exactly the same id set. Output lists are sorted.
struct ErrorDiff {
    std::vector<std::string> only_a;    // wrong in a, right in b
    std::vector<std::string> only_b;
    std::vector<std::string> both;      // wrong in both
    std::vector<std::string> neither;   // right in both
};

ErrorDiff diff_errors(const RunRecord& a, const RunRecord& b);

}  // namespace cmsent
