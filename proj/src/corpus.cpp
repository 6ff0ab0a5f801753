#include "cmsent/corpus.hpp"

#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "cmsent/error.hpp"
#include "cmsent/rng.hpp"

namespace cmsent {

using nlohmann::json;

std::string_view to_string(Polarity p) {
    return p == Polarity::Positive ? "positive" : "negative";
}

std::optional<Polarity> polarity_from_string(std::string_view s) {
    if (s == "positive") return Polarity::Positive;
    if (s == "negative") return Polarity::Negative;
    return std::nullopt;
}

namespace {

std::string loc(const std::filesystem::path& path, std::size_t lineno) {
    return path.string() + ":" + std::to_string(lineno);
}

TaggedToken parse_token(const json& j, const std::filesystem::path& path, std::size_t lineno) {
    if (!j.is_object() || !j.contains("surface") || !j["surface"].is_string())
        throw DataError(loc(path, lineno) + ": token needs a string \"surface\"");
    TaggedToken t;
    t.surface = j["surface"].get<std::string>();
    if (t.surface.empty())
        throw DataError(loc(path, lineno) + ": empty token surface");
    if (j.contains("lang") && !j["lang"].is_null()) {
        if (!j["lang"].is_string())
            throw DataError(loc(path, lineno) + ": token \"lang\" must be a string or null");
        auto lang = lang_from_string(j["lang"].get<std::string>());
        if (!lang)
            throw DataError(loc(path, lineno) + ": unknown lang \"" + j["lang"].get<std::string>()
                            + "\" (expected EN or BN)");
        t.lang = *lang;
    }
    if (j.contains("pos") && !j["pos"].is_null()) {
        if (!j["pos"].is_string())
            throw DataError(loc(path, lineno) + ": token \"pos\" must be a string or null");
        auto pos = pos_from_string(j["pos"].get<std::string>());
        if (!pos)
            throw DataError(loc(path, lineno) + ": unknown pos \"" + j["pos"].get<std::string>() + "\"");
        t.pos = *pos;
    }
    return t;
}

LabeledCorpus load_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open corpus: " + path.string());
    LabeledCorpus corpus;
    corpus.name = path.stem().string();
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw DataError(loc(path, lineno) + ": invalid JSON");
        if (!j.is_object())
            throw DataError(loc(path, lineno) + ": expected a JSON object");
        for (const char* field : {"id", "text", "label"}) {
            if (!j.contains(field) || !j[field].is_string())
                throw DataError(loc(path, lineno) + ": missing string field \"" + field + "\"");
        }
        Snippet s;
        s.id = j["id"].get<std::string>();
        if (s.id.empty())
            throw DataError(loc(path, lineno) + ": empty id");
        if (!seen.insert(s.id).second)
            throw DataError(loc(path, lineno) + ": duplicate id \"" + s.id + "\"");
        s.text = j["text"].get<std::string>();
        auto label = polarity_from_string(j["label"].get<std::string>());
        if (!label)
            throw DataError(loc(path, lineno) + ": unknown label \"" + j["label"].get<std::string>()
                            + "\" (expected positive or negative)");
        s.label = *label;
        if (j.contains("tokens") && !j["tokens"].is_null()) {
            if (!j["tokens"].is_array())
                throw DataError(loc(path, lineno) + ": \"tokens\" must be an array");
            std::vector<TaggedToken> toks;
            toks.reserve(j["tokens"].size());
            for (const auto& tj : j["tokens"]) toks.push_back(parse_token(tj, path, lineno));
            s.tokens = std::move(toks);
        }
        corpus.snippets.push_back(std::move(s));
    }
    if (corpus.snippets.empty())
        throw DataError("corpus is empty: " + path.string());
    return corpus;
}

void load_polarity_file(const std::filesystem::path& path, Polarity label,
                        LabeledCorpus& corpus) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open corpus file: " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        Snippet s;
        s.id = std::string(to_string(label)) + "-" + std::to_string(lineno);
        s.text = line;
        s.label = label;
        corpus.snippets.push_back(std::move(s));
    }
}

json token_to_json(const TaggedToken& t) {
    json j;
    j["surface"] = t.surface;
    j["lang"] = t.lang ? json(std::string(to_string(*t.lang))) : json(nullptr);
    j["pos"] = t.pos ? json(std::string(to_string(*t.pos))) : json(nullptr);
    return j;
}

}  // namespace

LabeledCorpus load_corpus(const std::filesystem::path& path, CorpusFormat format) {
    if (format == CorpusFormat::Jsonl) return load_jsonl(path);

    LabeledCorpus corpus;
    corpus.name = path.filename().string();
    auto pos_path = path;
    pos_path += ".pos";
    auto neg_path = path;
    neg_path += ".neg";
    load_polarity_file(pos_path, Polarity::Positive, corpus);
    load_polarity_file(neg_path, Polarity::Negative, corpus);
    if (corpus.snippets.empty())
        throw DataError("corpus is empty: " + path.string() + ".{pos,neg}");
    return corpus;
}

void save_corpus_jsonl(const LabeledCorpus& corpus, const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write corpus: " + path.string());
    for (const auto& s : corpus.snippets) {
        json j;
        j["id"] = s.id;
        j["text"] = s.text;
        j["label"] = std::string(to_string(s.label));
        if (s.tokens) {
            json arr = json::array();
            for (const auto& t : *s.tokens) arr.push_back(token_to_json(t));
            j["tokens"] = std::move(arr);
        }
        out << j.dump() << '\n';
    }
    if (!out) throw DataError("short write: " + path.string());
}

std::pair<LabeledCorpus, LabeledCorpus> split_corpus(const LabeledCorpus& corpus,
                                                     const SplitSpec& spec) {
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < corpus.snippets.size(); ++i) {
        (corpus.snippets[i].label == Polarity::Positive ? pos : neg).push_back(i);
    }
    const std::size_t need = spec.train_per_class + spec.test_per_class;
    if (need == 0) throw DataError("split asks for zero snippets");
    if (pos.size() < need)
        throw DataError("split needs " + std::to_string(need) + " positive snippets, corpus \""
                        + corpus.name + "\" has " + std::to_string(pos.size()));
    if (neg.size() < need)
        throw DataError("split needs " + std::to_string(need) + " negative snippets, corpus \""
                        + corpus.name + "\" has " + std::to_string(neg.size()));

    DeterministicRng rng(spec.seed);
    rng.shuffle(pos);
    rng.shuffle(neg);

    LabeledCorpus train, test;
    train.name = corpus.name + "-train";
    test.name = corpus.name + "-test";
    for (std::size_t i = 0; i < spec.train_per_class; ++i)
        train.snippets.push_back(corpus.snippets[pos[i]]);
    for (std::size_t i = 0; i < spec.train_per_class; ++i)
        train.snippets.push_back(corpus.snippets[neg[i]]);
    for (std::size_t i = 0; i < spec.test_per_class; ++i)
        test.snippets.push_back(corpus.snippets[pos[spec.train_per_class + i]]);
    for (std::size_t i = 0; i < spec.test_per_class; ++i)
        test.snippets.push_back(corpus.snippets[neg[spec.train_per_class + i]]);
    return {std::move(train), std::move(test)};
}

CorpusStats corpus_stats(const LabeledCorpus& corpus) {
    CorpusStats st;
    st.total = corpus.snippets.size();
    for (const auto& s : corpus.snippets) {
        if (s.label == Polarity::Positive)
            ++st.positive;
        else
            ++st.negative;
    }
    return st;
}

}  // namespace cmsent
