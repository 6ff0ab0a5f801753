#include "cmsent/lexicons.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "cmsent/error.hpp"

namespace cmsent {

namespace {

std::string loc(const std::filesystem::path& path, std::size_t lineno) {
    return path.string() + ":" + std::to_string(lineno);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
        return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
    });
    return s;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t cut = line.find(sep, start);
        if (cut == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, cut - start));
        start = cut + 1;
    }
}

double parse_double(const std::string& s, const std::string& where) {
    const char* begin = s.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || errno == ERANGE || !std::isfinite(v))
        throw DataError(where + ": bad number \"" + s + "\"");
    return v;
}

// shortest representation that parses back to the same double
std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::optional<Pos> swn_pos_from_letter(char c) {
    switch (c) {
        case 'a':
        case 's': return Pos::Adj;  // satellite adjectives count as adjectives
        case 'r': return Pos::Adv;
        case 'n': return Pos::Noun;
        case 'v': return Pos::Verb;
        default: return std::nullopt;
    }
}

char swn_letter(Pos pos) {
    switch (pos) {
        case Pos::Adj: return 'a';
        case Pos::Adv: return 'r';
        case Pos::Noun: return 'n';
        case Pos::Verb: return 'v';
        case Pos::Other: break;
    }
    return '?';
}

}  // namespace

SwnLexicon load_swn(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open lexicon: " + path.string());

    struct Acc {
        double pos = 0.0, neg = 0.0;
        std::size_t n = 0;
    };
    std::map<std::pair<std::string, Pos>, Acc> acc;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::string where = loc(path, lineno);
        const auto cols = split(line, '\t');
        if (cols.size() < 5)
            throw DataError(where + ": expected at least 5 tab-separated columns");
        if (cols[0].size() != 1)
            throw DataError(where + ": bad POS column \"" + cols[0] + "\"");
        const auto pos = swn_pos_from_letter(cols[0][0]);
        if (!pos)
            throw DataError(where + ": bad POS column \"" + cols[0] + "\"");
        const double pos_score = parse_double(cols[2], where);
        const double neg_score = parse_double(cols[3], where);
        if (pos_score < 0.0 || pos_score > 1.0 || neg_score < 0.0 || neg_score > 1.0)
            throw DataError(where + ": scores must lie in [0,1]");
        // terms: space-separated "word#sense"
        for (const auto& term : split(cols[4], ' ')) {
            if (term.empty()) continue;
            const std::size_t hash = term.rfind('#');
            std::string word = lower(hash == std::string::npos ? term : term.substr(0, hash));
            if (word.empty())
                throw DataError(where + ": empty term in \"" + cols[4] + "\"");
            Acc& a = acc[{std::move(word), *pos}];
            a.pos += pos_score;
            a.neg += neg_score;
            ++a.n;
        }
    }
    if (acc.empty()) throw DataError("lexicon has no entries: " + path.string());

    SwnLexicon lex;
    for (const auto& [key, a] : acc) {
        lex.entries[key] = {a.pos / static_cast<double>(a.n), a.neg / static_cast<double>(a.n)};
    }
    // fallback: unweighted mean over the word's per-POS averages
    std::map<std::string, Acc> word_acc;
    for (const auto& [key, scores] : lex.entries) {
        Acc& a = word_acc[key.first];
        a.pos += scores.positive;
        a.neg += scores.negative;
        ++a.n;
    }
    for (const auto& [word, a] : word_acc) {
        lex.word_fallback[word] = {a.pos / static_cast<double>(a.n), a.neg / static_cast<double>(a.n)};
    }
    return lex;
}

void save_swn(const SwnLexicon& lex, const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write lexicon: " + path.string());
    out << "# synthesized sentiment lexicon, one synset per (word, POS) entry\n";
    std::size_t id = 0;
    for (const auto& [key, scores] : lex.entries) {
        char idbuf[16];
        std::snprintf(idbuf, sizeof idbuf, "%08zu", ++id);
        out << swn_letter(key.second) << '\t' << idbuf << '\t'
            << format_double(scores.positive) << '\t' << format_double(scores.negative)
            << '\t' << key.first << "#1\n";
    }
    if (!out) throw DataError("short write: " + path.string());
}

namespace {

std::map<std::string, double> load_value_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open lexicon: " + path.string());
    std::map<std::string, double> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::string where = loc(path, lineno);
        const std::size_t cut = line.find_first_of(" \t");
        if (cut == std::string::npos)
            throw DataError(where + ": expected \"word value\"");
        std::string word = lower(line.substr(0, cut));
        std::string rest = line.substr(cut + 1);
        rest.erase(0, rest.find_first_not_of(" \t"));
        if (word.empty() || rest.empty())
            throw DataError(where + ": expected \"word value\"");
        out[std::move(word)] = parse_double(rest, where);  // last entry wins
    }
    return out;
}

void save_value_file(const std::map<std::string, double>& dict,
                     const std::filesystem::path& path) {
if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
        std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write lexicon: " + path.string());
    for (const auto& [word, value] : dict) out << word << '\t' << format_double(value) << '\n';
    if (!out) throw DataError("short write: " + path.string());
}

}  // namespace

SocalLexicon load_socal(const std::vector<std::filesystem::path>& paths) {
    if (paths.size() != 5)
        throw DataError("socal lexicon needs 5 files (adjective, adverb, noun, verb, "
                        "intensifier), got " + std::to_string(paths.size()));
    SocalLexicon lex;
    lex.adjective = load_value_file(paths[0]);
    lex.adverb = load_value_file(paths[1]);
    lex.noun = load_value_file(paths[2]);
    lex.verb = load_value_file(paths[3]);
    lex.intensifier = load_value_file(paths[4]);
    if (lex.adjective.empty() && lex.adverb.empty() && lex.noun.empty() && lex.verb.empty())
        throw DataError("socal lexicon has no sentiment entries");
    return lex;
}

void save_socal(const SocalLexicon& lex, const std::vector<std::filesystem::path>& paths) {
    if (paths.size() != 5)
        throw DataError("socal lexicon needs 5 files (adjective, adverb, noun, verb, "
                        "intensifier), got " + std::to_string(paths.size()));
    save_value_file(lex.adjective, paths[0]);
    save_value_file(lex.adverb, paths[1]);
    save_value_file(lex.noun, paths[2]);
    save_value_file(lex.verb, paths[3]);
    save_value_file(lex.intensifier, paths[4]);
}

const std::array<std::string_view, 10>& nrc_categories() {
    static const std::array<std::string_view, 10> cats = {
        "anger", "anticipation", "disgust", "fear", "joy",
        "negative", "positive", "sadness", "surprise", "trust",
    };
    return cats;
}

namespace {

std::optional<std::size_t> nrc_category_index(std::string_view name) {
    const auto& cats = nrc_categories();
    for (std::size_t i = 0; i < cats.size(); ++i)
        if (cats[i] == name) return i;
    return std::nullopt;
}

constexpr std::size_t kNrcNegative = 5;
constexpr std::size_t kNrcPositive = 6;

}  // namespace

NrcLexicon load_nrc(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open lexicon: " + path.string());
    NrcLexicon lex;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::string where = loc(path, lineno);
        const auto cols = split(line, '\t');
        if (cols.size() != 3)
            throw DataError(where + ": expected word<TAB>category<TAB>flag");
        const auto idx = nrc_category_index(cols[1]);
        if (!idx)
            throw DataError(where + ": unknown category \"" + cols[1] + "\"");
        if (cols[2] != "0" && cols[2] != "1")
            throw DataError(where + ": flag must be 0 or 1, got \"" + cols[2] + "\"");
        if (cols[2] == "1") {
            std::string word = lower(cols[0]);
            if (word.empty()) throw DataError(where + ": empty word");
            lex.entries[std::move(word)][*idx] = 1;
        } else {
            // still materialize the word so the polarity-pruning below sees it
            lex.entries[lower(cols[0])];
        }
    }
    // keep only words that carry polarity
    for (auto it = lex.entries.begin(); it != lex.entries.end();) {
        if (it->second[kNrcNegative] == 0 && it->second[kNrcPositive] == 0)
            it = lex.entries.erase(it);
        else
            ++it;
    }
    if (lex.entries.empty())
        throw DataError("lexicon has no polar entries: " + path.string());
    return lex;
}

void save_nrc(const NrcLexicon& lex, const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write lexicon: " + path.string());
    const auto& cats = nrc_categories();
    for (const auto& [word, flags] : lex.entries) {
        for (std::size_t i = 0; i < cats.size(); ++i)
            out << word << '\t' << cats[i] << '\t' << static_cast<int>(flags[i]) << '\n';
    }
    if (!out) throw DataError("short write: " + path.string());
}

namespace {

const std::map<std::string, double>* socal_dict_for(const SocalLexicon& lex, Pos pos) {
    switch (pos) {
        case Pos::Adj: return &lex.adjective;
        case Pos::Adv: return &lex.adverb;
        case Pos::Noun: return &lex.noun;
        case Pos::Verb: return &lex.verb;
        case Pos::Other: break;
    }
    return nullptr;
}

std::optional<double> socal_score(const SocalLexicon& lex, const TaggedToken& t) {
    const std::map<std::string, double>* own =
        t.pos ? socal_dict_for(lex, *t.pos) : nullptr;
    if (own) {
        auto it = own->find(t.surface);
        if (it != own->end()) return it->second;
    }
    for (const auto* dict : {&lex.adjective, &lex.adverb, &lex.noun, &lex.verb}) {
        if (dict == own) continue;
        auto it = dict->find(t.surface);
        if (it != dict->end()) return it->second;
    }
    return std::nullopt;
}

}  // namespace

LexiconFeatures lexicon_features(const std::vector<TaggedToken>& tokens,
                                 const SwnLexicon* swn,
                                 const SocalLexicon* socal,
                                 const NrcLexicon* nrc) {
    LexiconFeatures f;
    double pending_multiplier = 1.0;
    for (const auto& t : tokens) {
        if (swn) {
            const SwnLexicon::Scores* scores = nullptr;
            if (t.pos && *t.pos != Pos::Other) {
                auto it = swn->entries.find({t.surface, *t.pos});
                if (it != swn->entries.end()) scores = &it->second;
            }
            if (!scores) {
                auto it = swn->word_fallback.find(t.surface);
                if (it != swn->word_fallback.end()) scores = &it->second;
            }
            if (scores) {
                f.swn_pos_sum += scores->positive;
                f.swn_neg_sum += scores->negative;
                ++f.swn_hits;
            }
        }
        if (socal) {
            const double multiplier = pending_multiplier;
            pending_multiplier = 1.0;  // scope is exactly one token
            if (auto score = socal_score(*socal, t)) {
                f.socal_sum += *score * multiplier;
                ++f.socal_hits;
            }
            auto it = socal->intensifier.find(t.surface);
            if (it != socal->intensifier.end()) pending_multiplier = 1.0 + it->second;
        }
        if (nrc) {
            auto it = nrc->entries.find(t.surface);
            if (it != nrc->entries.end()) {
                for (std::size_t i = 0; i < f.nrc_counts.size(); ++i)
                    f.nrc_counts[i] += it->second[i];
            }
        }
    }
    return f;
}

}  // namespace cmsent
