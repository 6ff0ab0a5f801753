#include "cmsent/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "cmsent/error.hpp"
#include "cmsent/postag.hpp"

namespace cmsent {

namespace {

constexpr std::string_view kKeySep = "\xE2\x90\x9F";  // U+241F SYMBOL FOR UNIT SEPARATOR

constexpr std::size_t kFset1Bigrams = 1000;
constexpr std::size_t kFset1Trigrams = 500;
constexpr std::size_t kFset2Unigrams = 1000;
constexpr std::size_t kFset2Bigrams = 200;
constexpr std::size_t kFset2Trigrams = 100;

const char* kLevelNames[] = {
    "fe01", "fe02", "fe03", "fe04", "fe05", "fe06", "fe07",
    "fe08", "fe09", "fe10", "fe11", "fe12", "fe13",
};

}  // namespace

std::string_view to_string(Level level) {
    return kLevelNames[static_cast<int>(level)];
}

std::optional<Level> level_from_string(std::string_view s) {
    for (int i = 0; i < 13; ++i)
        if (s == kLevelNames[i]) return static_cast<Level>(i);
    return std::nullopt;
}

FeatureFamily family_of(Level level) {
    return static_cast<int>(level) <= static_cast<int>(Level::Fe07) ? FeatureFamily::FSet1
                                                                    : FeatureFamily::FSet2;
}

std::string_view to_string(FeatureFamily family) {
    return family == FeatureFamily::FSet1 ? "fset1" : "fset2";
}

std::optional<FeatureFamily> family_from_string(std::string_view s) {
    if (s == "fset1") return FeatureFamily::FSet1;
    if (s == "fset2") return FeatureFamily::FSet2;
    return std::nullopt;
}

const std::vector<Level>& levels_in(FeatureFamily family) {
    static const std::vector<Level> fset1 = {Level::Fe01, Level::Fe02, Level::Fe03, Level::Fe04,
                                             Level::Fe05, Level::Fe06, Level::Fe07};
    static const std::vector<Level> fset2 = {Level::Fe08, Level::Fe09, Level::Fe10,
                                             Level::Fe11, Level::Fe12, Level::Fe13};
    return family == FeatureFamily::FSet1 ? fset1 : fset2;
}

LexiconUse lexicons_for(Level level) {
    LexiconUse use;
    if (family_of(level) == FeatureFamily::FSet1) {
        use.swn = level >= Level::Fe05;
        use.socal = level >= Level::Fe06;
        use.nrc = level >= Level::Fe07;
    } else {
        use.swn = level >= Level::Fe11;
        use.socal = level >= Level::Fe12;
        use.nrc = level >= Level::Fe13;
    }
    return use;
}

std::vector<NgramKey> extract_ngrams(const std::vector<std::string>& tokens, int n) {
    if (n < 1 || n > 3) throw std::invalid_argument("extract_ngrams: n must be 1, 2 or 3");
    std::vector<NgramKey> out;
    if (tokens.size() < static_cast<std::size_t>(n)) return out;
    out.reserve(tokens.size() - n + 1);
    for (std::size_t i = 0; i + n <= tokens.size(); ++i)
        out.emplace_back(tokens.begin() + i, tokens.begin() + i + n);
    return out;
}

std::vector<NgramKey> extract_ngrams(const std::vector<TaggedToken>& tokens, int n) {
    std::vector<std::string> surfaces;
    surfaces.reserve(tokens.size());
    for (const auto& t : tokens) surfaces.push_back(t.surface);
    return extract_ngrams(surfaces, n);
}

std::string join_key(const NgramKey& key) {
    std::string out;
    for (std::size_t i = 0; i < key.size(); ++i) {
        if (i) out += kKeySep;
        out += key[i];
    }
    return out;
}

NgramKey split_key(std::string_view joined) {
    NgramKey out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t cut = joined.find(kKeySep, start);
        if (cut == std::string_view::npos) {
            out.emplace_back(joined.substr(start));
            return out;
        }
        out.emplace_back(joined.substr(start, cut - start));
        start = cut + kKeySep.size();
    }
}

namespace {

std::vector<std::string> snippet_surfaces(const Snippet& s) {
    std::vector<std::string> out;
    if (s.tokens) {
        out.reserve(s.tokens->size());
        for (const auto& t : *s.tokens) out.push_back(t.surface);
    } else {
        for (auto& t : tokenize(s.text)) out.push_back(std::move(t.surface));
    }
    return out;
}

bool in_either_list(const std::string& tok, const WordLists& lists, bool use_bengali) {
    if (lists.english_stopwords.count(tok)) return true;
    return use_bengali && lists.bengali_function_words.count(tok) > 0;
}

}  // namespace

std::vector<RankedNgram> tfidf_ranking(const LabeledCorpus& corpus, int n,
                                       const WordLists& lists, RankMode mode) {
    if (n < 1 || n > 3) throw std::invalid_argument("tfidf_ranking: n must be 1, 2 or 3");
    const bool use_bengali = mode == RankMode::CodeMixed;
    WordLists effective;
    effective.english_stopwords = lists.english_stopwords;
    if (use_bengali) effective.bengali_function_words = lists.bengali_function_words;

    struct Acc {
        double total_tf = 0.0;
        std::size_t df = 0;
    };
    std::map<NgramKey, Acc> acc;
    std::set<NgramKey> rejected;  // memoized filter decisions

    for (const auto& snippet : corpus.snippets) {
        const auto grams = extract_ngrams(snippet_surfaces(snippet), n);
        std::map<NgramKey, std::size_t> tf;
        for (const auto& g : grams) ++tf[g];
        for (const auto& [key, count] : tf) {
            auto it = acc.find(key);
            if (it == acc.end()) {
                if (rejected.count(key)) continue;
                bool keep = true;
                if (n == 1) {
                    keep = mode == RankMode::English
                           || !in_either_list(key[0], effective, use_bengali);
                } else {
                    keep = ngram_passes_filter(key, n, effective);
                }
                if (!keep) {
                    rejected.insert(key);
                    continue;
                }
                it = acc.emplace(key, Acc{}).first;
            }
            it->second.total_tf += static_cast<double>(count);
            it->second.df += 1;
        }
    }

    const double N = static_cast<double>(corpus.snippets.size());
    std::vector<RankedNgram> out;
    out.reserve(acc.size());
    for (auto& [key, a] : acc) {
        RankedNgram r;
        r.key = key;
        r.total_tf = a.total_tf;
        r.df = a.df;
        r.score = a.total_tf * (std::log((1.0 + N) / (1.0 + static_cast<double>(a.df))) + 1.0);
        out.push_back(std::move(r));
    }
    std::stable_sort(out.begin(), out.end(), [](const RankedNgram& a, const RankedNgram& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.key < b.key;
    });
    return out;
}

std::vector<NgramKey> rank_by_tfidf(const LabeledCorpus& corpus, int n, std::size_t k,
                                    const WordLists& lists, RankMode mode) {
    if (k == 0) return {};
    auto ranked = tfidf_ranking(corpus, n, lists, mode);
    if (ranked.size() > k) ranked.resize(k);
    std::vector<NgramKey> out;
    out.reserve(ranked.size());
    for (auto& r : ranked) out.push_back(std::move(r.key));
    return out;
}

std::size_t FeatureSpace::lexicon_columns() const {
    std::size_t cols = 0;
    if (lexicons.swn) cols += 3;
    if (lexicons.socal) cols += 3;
    if (lexicons.nrc) cols += 10;
    return cols;
}

namespace {

void check_lexicons_available(Level level, const LexiconUse& use, const LexiconBundle& bundle) {
    const auto need = [&](bool active, bool present, const char* name) {
        if (active && !present)
            throw DataError(std::string("level ") + std::string(to_string(level))
                            + " needs the " + name + " lexicon, which was not supplied");
    };
    need(use.swn, bundle.swn.has_value(), "swn");
    need(use.socal, bundle.socal.has_value(), "socal");
    need(use.nrc, bundle.nrc.has_value(), "nrc");
}

FeatureSpace assemble_space(Level level, const LabeledCorpus& train,
                            std::vector<NgramKey> unigrams,
                            std::vector<NgramKey> bigrams,
                            std::vector<NgramKey> trigrams) {
    FeatureSpace space;
    space.level = level;
    space.lexicons = lexicons_for(level);
    space.corpus_name = train.name;
    space.vocabulary.reserve(unigrams.size() + bigrams.size() + trigrams.size());
    for (auto* block : {&unigrams, &bigrams, &trigrams})
        for (auto& key : *block) space.vocabulary.push_back(std::move(key));
    space.index.reserve(space.vocabulary.size());
    for (std::size_t i = 0; i < space.vocabulary.size(); ++i) {
        const auto [it, inserted] =
            space.index.emplace(join_key(space.vocabulary[i]), static_cast<std::uint32_t>(i));
        (void)it;
        if (!inserted)
            throw DataError("duplicate vocabulary key: " + join_key(space.vocabulary[i]));
    }
    return space;
}

}  // namespace

FeatureSpace build_fset1(const LabeledCorpus& train, Level level,
                         const WordLists& lists, const LexiconBundle& lexicons) {
    if (family_of(level) != FeatureFamily::FSet1)
        throw std::invalid_argument("build_fset1: level must be fe01..fe07");
    check_lexicons_available(level, lexicons_for(level), lexicons);

    const bool broad = level >= Level::Fe02;  // fe01: adjectives only
    std::set<std::string> unigram_set;
    for (const auto& snippet : train.snippets) {
        if (!snippet.tokens)
            throw DataError("build_fset1: snippet \"" + snippet.id
                            + "\" has no tokens (corpus must be tokenized and tagged)");
        for (const auto& t : *snippet.tokens) {
            if (!t.pos)
                throw DataError("build_fset1: token \"" + t.surface + "\" in snippet \""
                                + snippet.id + "\" is untagged");
            const bool keep = *t.pos == Pos::Adj
                              || (broad && (*t.pos == Pos::Adv || *t.pos == Pos::Verb
                                            || *t.pos == Pos::Noun));
            if (keep) unigram_set.insert(t.surface);
        }
    }
    std::vector<NgramKey> unigrams;
    unigrams.reserve(unigram_set.size());
    for (const auto& w : unigram_set) unigrams.push_back({w});

    std::vector<NgramKey> bigrams, trigrams;
    if (level >= Level::Fe03)
        bigrams = rank_by_tfidf(train, 2, kFset1Bigrams, lists, RankMode::English);
    if (level >= Level::Fe04)
        trigrams = rank_by_tfidf(train, 3, kFset1Trigrams, lists, RankMode::English);

    return assemble_space(level, train, std::move(unigrams), std::move(bigrams),
                          std::move(trigrams));
}

FeatureSpace build_fset2(const LabeledCorpus& train, Level level,
                         const WordLists& lists, const LexiconBundle& lexicons) {
    if (family_of(level) != FeatureFamily::FSet2)
        throw std::invalid_argument("build_fset2: level must be fe08..fe13");
    check_lexicons_available(level, lexicons_for(level), lexicons);
    for (const auto& snippet : train.snippets) {
        if (!snippet.tokens)
            throw DataError("build_fset2: snippet \"" + snippet.id
                            + "\" has no tokens (corpus must be preprocessed)");
    }

    std::vector<NgramKey> unigrams =
        rank_by_tfidf(train, 1, kFset2Unigrams, lists, RankMode::CodeMixed);
    std::vector<NgramKey> bigrams, trigrams;
    if (level >= Level::Fe09)
        bigrams = rank_by_tfidf(train, 2, kFset2Bigrams, lists, RankMode::CodeMixed);
    if (level >= Level::Fe10)
        trigrams = rank_by_tfidf(train, 3, kFset2Trigrams, lists, RankMode::CodeMixed);

    return assemble_space(level, train, std::move(unigrams), std::move(bigrams),
                          std::move(trigrams));
}

FeatureVector vectorize(const Snippet& snippet, const FeatureSpace& space,
                        const LexiconBundle& lexicons, const PrepOptions& prep) {
    check_lexicons_available(space.level, space.lexicons, lexicons);

    std::vector<TaggedToken> local;
    const std::vector<TaggedToken>* tokens = nullptr;
    if (snippet.tokens) {
        tokens = &*snippet.tokens;
    } else {
        local = tokenize(snippet.text);
        if (family_of(space.level) == FeatureFamily::FSet2) {
            local = remove_social_artifacts(local, snippet.text,
                                            prep.emoticons ? *prep.emoticons
                                                           : default_emoticon_patterns());
        } else if (prep.tagger) {
            local = tag(std::move(local), *prep.tagger);
        }
        tokens = &local;
    }

    // which n-gram sizes the vocabulary actually contains
    bool has_n[4] = {false, false, false, false};
    for (const auto& key : space.vocabulary) has_n[key.size()] = true;

    FeatureVector vec;
    vec.ngram_dimension = static_cast<std::uint32_t>(space.vocabulary.size());
    std::map<std::uint32_t, std::uint32_t> counts;
    for (int n = 1; n <= 3; ++n) {
        if (!has_n[n]) continue;
        if (tokens->size() < static_cast<std::size_t>(n)) continue;
        for (std::size_t i = 0; i + n <= tokens->size(); ++i) {
            std::string joined;
            for (int j = 0; j < n; ++j) {
                if (j) joined += kKeySep;
                joined += (*tokens)[i + j].surface;
            }
            auto it = space.index.find(joined);
            if (it != space.index.end()) ++counts[it->second];
        }
    }
    vec.ngram_counts.assign(counts.begin(), counts.end());

    const LexiconUse& use = space.lexicons;
    if (use.swn || use.socal || use.nrc) {
        const LexiconFeatures lf = lexicon_features(
            *tokens, use.swn ? &*lexicons.swn : nullptr, use.socal ? &*lexicons.socal : nullptr,
            use.nrc ? &*lexicons.nrc : nullptr);
        if (use.swn) {
            vec.lexicon_values.push_back(lf.swn_pos_sum);
            vec.lexicon_values.push_back(lf.swn_neg_sum);
            vec.lexicon_values.push_back(static_cast<double>(lf.swn_hits));
        }
        if (use.socal) {
            vec.lexicon_values.push_back(std::max(lf.socal_sum, 0.0));
            vec.lexicon_values.push_back(std::max(-lf.socal_sum, 0.0));
            vec.lexicon_values.push_back(static_cast<double>(lf.socal_hits));
        }
        if (use.nrc) {
            for (const auto c : lf.nrc_counts) vec.lexicon_values.push_back(static_cast<double>(c));
        }
    }
    return vec;
}

namespace {

std::string lexicon_flags(const LexiconUse& use) {
    std::string s;
    if (use.swn) s += "swn";
    if (use.socal) s += s.empty() ? "socal" : ",socal";
    if (use.nrc) s += s.empty() ? "nrc" : ",nrc";
    return s.empty() ? "-" : s;
}

}  // namespace

void save_feature_space(const FeatureSpace& space, const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write feature space: " + path.string());
    out << "cmsent-feature-space v1\n";
    out << "level " << to_string(space.level) << '\n';
    out << "corpus " << space.corpus_name << '\n';
    out << "seed " << space.seed << '\n';
    out << "lexicons " << lexicon_flags(space.lexicons) << '\n';
    out << "ngrams " << space.vocabulary.size() << '\n';
    for (const auto& key : space.vocabulary) out << join_key(key) << '\n';
    if (!out) throw DataError("short write: " + path.string());
}

FeatureSpace load_feature_space(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open feature space: " + path.string());
    std::string line;
    auto next = [&](const char* what) -> std::string {
        if (!std::getline(in, line))
            throw DataError(path.string() + ": truncated (expected " + what + ")");
        return line;
    };
    if (next("magic") != "cmsent-feature-space v1")
        throw DataError(path.string() + ": not a feature-space file");
    auto field = [&](const char* name) -> std::string {
        const std::string l = next(name);
        const std::string prefix = std::string(name) + " ";
        if (l.rfind(prefix, 0) != 0)
            throw DataError(path.string() + ": expected \"" + name + "\" line, got \"" + l + "\"");
        return l.substr(prefix.size());
    };

    FeatureSpace space;
    const std::string level_str = field("level");
    const auto level = level_from_string(level_str);
    if (!level) throw DataError(path.string() + ": unknown level \"" + level_str + "\"");
    space.level = *level;
    space.corpus_name = field("corpus");
    try {
        space.seed = std::stoull(field("seed"));
    } catch (const std::exception&) {
        throw DataError(path.string() + ": bad seed line");
    }
    const std::string flags = field("lexicons");
    if (flags != lexicon_flags(lexicons_for(*level)))
        throw DataError(path.string() + ": lexicon flags \"" + flags
                        + "\" do not match level " + level_str);
    space.lexicons = lexicons_for(*level);
    std::size_t count = 0;
    try {
        count = std::stoull(field("ngrams"));
    } catch (const std::exception&) {
        throw DataError(path.string() + ": bad ngrams line");
    }
    space.vocabulary.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        space.vocabulary.push_back(split_key(next("vocabulary key")));
    }
    space.index.reserve(count);
    for (std::size_t i = 0; i < space.vocabulary.size(); ++i) {
        if (!space.index.emplace(join_key(space.vocabulary[i]), static_cast<std::uint32_t>(i)).second)
            throw DataError(path.string() + ": duplicate vocabulary key at position "
                            + std::to_string(i));
    }
    return space;
}

}  // namespace cmsent
