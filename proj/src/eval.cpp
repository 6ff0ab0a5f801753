#include "cmsent/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "cmsent/error.hpp"

namespace cmsent {

using nlohmann::json;

ConfusionMatrix confusion(const std::vector<Polarity>& predictions,
                          const std::vector<Polarity>& gold) {
    if (predictions.size() != gold.size())
        throw DataError("confusion: predictions and gold differ in length ("
                        + std::to_string(predictions.size()) + " vs "
                        + std::to_string(gold.size()) + ")");
    if (predictions.empty()) throw DataError("confusion: no predictions");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const bool pred_pos = predictions[i] == Polarity::Positive;
        const bool gold_pos = gold[i] == Polarity::Positive;
        if (pred_pos && gold_pos) ++cm.tp;
        else if (!pred_pos && !gold_pos) ++cm.tn;
        else if (pred_pos) ++cm.fp;
        else ++cm.fn;
    }
    return cm;
}

MetricsReport metrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw DataError("metrics: empty confusion matrix");
    MetricsReport r;
    const double tp = static_cast<double>(cm.tp), tn = static_cast<double>(cm.tn);
    const double fp = static_cast<double>(cm.fp), fn = static_cast<double>(cm.fn);

    // ratio with zero-denominator tracking
    const auto safe = [&r](double num, double denom) {
        if (denom == 0.0) {
            r.degenerate = true;
            return 0.0;
        }
        return num / denom;
    };

    r.accuracy = (tp + tn) / static_cast<double>(cm.total());
    r.precision = safe(tp, tp + fp);
    r.recall = safe(tp, tp + fn);
    r.f1 = safe(2.0 * r.precision * r.recall, r.precision + r.recall);
    r.g_measure = std::sqrt(r.precision * r.recall);
    const double mcc_denom_sq = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
    if (mcc_denom_sq == 0.0) {
        r.degenerate = true;
        r.mcc = 0.0;
    } else {
        r.mcc = (tp * tn - fp * fn) / std::sqrt(mcc_denom_sq);
    }
    return r;
}

namespace {

std::string fmt_hex(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::hex);
    return std::string(buf, res.ptr);
}

double parse_hex(const std::string& s, const std::string& where) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v, std::chars_format::hex);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw DataError(where + ": bad hex float \"" + s + "\"");
    return v;
}

Polarity parse_polarity(const json& j, const char* fieldname, const std::string& where) {
    if (!j.contains(fieldname) || !j[fieldname].is_string())
        throw DataError(where + ": missing string field \"" + fieldname + "\"");
    const auto p = polarity_from_string(j[fieldname].get<std::string>());
    if (!p) throw DataError(where + ": bad polarity in \"" + fieldname + "\"");
    return *p;
}

}  // namespace

void save_run_record(const RunRecord& record, const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write run record: " + tmp.string());
        json header;
        header["experiment"] = record.experiment;
        header["level"] = record.level;
        header["classifier"] = record.classifier;
        header["seed"] = record.seed;
        header["train_corpus"] = record.train_corpus;
        header["test_corpus"] = record.test_corpus;
        header["entries"] = record.entries.size();
        out << header.dump() << '\n';
        for (const auto& e : record.entries) {
            json j;
            j["snippet_id"] = e.snippet_id;
            j["gold"] = std::string(to_string(e.gold));
            j["predicted"] = std::string(to_string(e.predicted));
            j["score"] = fmt_hex(e.score);
            out << j.dump() << '\n';
        }
        if (!out) throw DataError("short write: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw DataError("cannot move run record into place: " + path.string() + ": "
                        + ec.message());
}

RunRecord load_run_record(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open run record: " + path.string());
    std::string line;
    std::size_t lineno = 0;
    RunRecord record;
    bool have_header = false;
    std::size_t expected = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::string where = path.string() + ":" + std::to_string(lineno);
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw DataError(where + ": invalid JSON object");
        if (!have_header) {
            for (const char* f : {"experiment", "level", "classifier", "train_corpus", "test_corpus"}) {
                if (!j.contains(f) || !j[f].is_string())
                    throw DataError(where + ": header missing string field \"" + f + "\"");
            }
            if (!j.contains("seed") || !j["seed"].is_number_unsigned())
                throw DataError(where + ": header missing unsigned field \"seed\"");
            if (!j.contains("entries") || !j["entries"].is_number_unsigned())
                throw DataError(where + ": header missing unsigned field \"entries\"");
            record.experiment = j["experiment"].get<std::string>();
            record.level = j["level"].get<std::string>();
            record.classifier = j["classifier"].get<std::string>();
            record.seed = j["seed"].get<std::uint64_t>();
            record.train_corpus = j["train_corpus"].get<std::string>();
            record.test_corpus = j["test_corpus"].get<std::string>();
            expected = j["entries"].get<std::size_t>();
            have_header = true;
            continue;
        }
        RunRecordEntry e;
        if (!j.contains("snippet_id") || !j["snippet_id"].is_string())
            throw DataError(where + ": entry missing string field \"snippet_id\"");
        e.snippet_id = j["snippet_id"].get<std::string>();
        e.gold = parse_polarity(j, "gold", where);
        e.predicted = parse_polarity(j, "predicted", where);
        if (!j.contains("score") || !j["score"].is_string())
            throw DataError(where + ": entry missing string field \"score\"");
        e.score = parse_hex(j["score"].get<std::string>(), where);
        record.entries.push_back(std::move(e));
    }
    if (!have_header) throw DataError(path.string() + ": missing run-record header");
    if (record.entries.size() != expected)
        throw DataError(path.string() + ": header promises " + std::to_string(expected)
                        + " entries, file has " + std::to_string(record.entries.size()));
    return record;
}

std::vector<Misclassified> misclassified(const std::vector<Polarity>& predictions,
                                         const std::vector<Polarity>& gold,
                                         const std::vector<double>& scores,
                                         const LabeledCorpus& corpus) {
    const std::size_t n = corpus.snippets.size();
    if (predictions.size() != n || gold.size() != n || scores.size() != n)
        throw DataError("misclassified: inputs not aligned with corpus");
    std::vector<Misclassified> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (predictions[i] == gold[i]) continue;
        Misclassified m;
        m.snippet = corpus.snippets[i];
        m.predicted = predictions[i];
        m.gold = gold[i];
        m.score = scores[i];
        out.push_back(std::move(m));
    }
    std::stable_sort(out.begin(), out.end(), [](const Misclassified& a, const Misclassified& b) {
        return std::abs(a.score) > std::abs(b.score);
    });
    return out;
}

ErrorDiff diff_errors(const RunRecord& a, const RunRecord& b) {
    std::map<std::string, bool> wrong_a, wrong_b;  // id → predicted wrong
    for (const auto& e : a.entries) {
        if (!wrong_a.emplace(e.snippet_id, e.predicted != e.gold).second)
            throw DataError("diff_errors: duplicate id \"" + e.snippet_id + "\" in first run");
    }
    for (const auto& e : b.entries) {
        if (!wrong_b.emplace(e.snippet_id, e.predicted != e.gold).second)
            throw DataError("diff_errors: duplicate id \"" + e.snippet_id + "\" in second run");
    }
    if (wrong_a.size() != wrong_b.size())
        throw DataError("diff_errors: runs cover different snippet sets");
    ErrorDiff diff;
    for (const auto& [id, wa] : wrong_a) {
        const auto it = wrong_b.find(id);
        if (it == wrong_b.end())
            throw DataError("diff_errors: id \"" + id + "\" missing from second run");
        const bool wb = it->second;
        if (wa && wb) diff.both.push_back(id);
        else if (wa) diff.only_a.push_back(id);
        else if (wb) diff.only_b.push_back(id);
        else diff.neither.push_back(id);
    }
    // std::map iteration is already sorted; the lists inherit that order
    return diff;
}

}  // namespace cmsent
