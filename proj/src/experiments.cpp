#include "cmsent/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include <json.hpp>

#include "cmsent/error.hpp"
#include "cmsent/postag.hpp"
#include "cmsent/rng.hpp"

namespace cmsent {

using nlohmann::json;

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

CorpusSource parse_corpus_source(const json& j, const std::filesystem::path& base,
                                 const std::string& where) {
    if (!j.is_object() || !j.contains("path") || !j["path"].is_string())
        throw DataError(where + ": corpus reference needs a string \"path\"");
    CorpusSource src;
    src.path = resolve(base, j["path"].get<std::string>());
    std::string fmt = "jsonl";
    if (j.contains("format")) {
        if (!j["format"].is_string())
            throw DataError(where + ": corpus \"format\" must be a string");
        fmt = j["format"].get<std::string>();
    }
    if (fmt == "jsonl") src.format = CorpusFormat::Jsonl;
    else if (fmt == "two_file_polarity") src.format = CorpusFormat::TwoFilePolarity;
    else throw DataError(where + ": unknown corpus format \"" + fmt + "\"");
    return src;
}

}  // namespace

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config: " + path.string());
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw DataError(path.string() + ": invalid JSON config");
    const std::string where = path.string();
    const std::filesystem::path base = path.parent_path();

    ExperimentConfig cfg;
    if (!j.contains("name") || !j["name"].is_string() || j["name"].get<std::string>().empty())
        throw DataError(where + ": config needs a non-empty \"name\"");
    cfg.name = j["name"].get<std::string>();

    if (j.contains("corpus")) cfg.corpus = parse_corpus_source(j["corpus"], base, where);
    if (j.contains("train")) cfg.train = parse_corpus_source(j["train"], base, where);
    if (j.contains("test")) cfg.test = parse_corpus_source(j["test"], base, where);
    if (j.contains("split")) {
        const auto& js = j["split"];
        if (!js.is_object() || !js.contains("train_per_class") || !js.contains("test_per_class")
            || !js["train_per_class"].is_number_unsigned()
            || !js["test_per_class"].is_number_unsigned())
            throw DataError(where + ": \"split\" needs unsigned train_per_class/test_per_class");
        SplitSpec sp;
        sp.train_per_class = js["train_per_class"].get<std::size_t>();
        sp.test_per_class = js["test_per_class"].get<std::size_t>();
        cfg.split = sp;
    }
    const bool single = cfg.corpus.has_value();
    const bool pair = cfg.train.has_value() || cfg.test.has_value();
    if (single == pair)
        throw DataError(where + ": give either \"corpus\"+\"split\" or \"train\"+\"test\"");
    if (single && !cfg.split)
        throw DataError(where + ": \"corpus\" needs a \"split\"");
    if (pair && (!cfg.train || !cfg.test))
        throw DataError(where + ": \"train\" and \"test\" must both be present");

    if (!j.contains("family") || !j["family"].is_string())
        throw DataError(where + ": config needs \"family\" (fset1 or fset2)");
    const auto family = family_from_string(j["family"].get<std::string>());
    if (!family)
        throw DataError(where + ": unknown family \"" + j["family"].get<std::string>() + "\"");
    cfg.family = *family;

    if (j.contains("levels")) {
        if (!j["levels"].is_array() || j["levels"].empty())
            throw DataError(where + ": \"levels\" must be a non-empty array");
        for (const auto& jl : j["levels"]) {
            if (!jl.is_string())
                throw DataError(where + ": levels must be strings");
            const auto level = level_from_string(jl.get<std::string>());
            if (!level)
                throw DataError(where + ": unknown level \"" + jl.get<std::string>() + "\"");
            cfg.levels.push_back(*level);
        }
    } else {
        cfg.levels = levels_in(cfg.family);
    }
    for (const Level level : cfg.levels) {
        if (family_of(level) != cfg.family)
            throw DataError(where + ": level " + std::string(to_string(level))
                            + " does not belong to family " + std::string(to_string(cfg.family)));
    }
    for (std::size_t i = 1; i < cfg.levels.size(); ++i) {
        if (!(cfg.levels[i - 1] < cfg.levels[i]))
            throw DataError(where + ": levels must be in ascending order");
    }

    if (j.contains("classifiers")) {
        if (!j["classifiers"].is_array() || j["classifiers"].empty())
            throw DataError(where + ": \"classifiers\" must be a non-empty array");
        std::set<Algorithm> seen;
        for (const auto& ja : j["classifiers"]) {
            if (!ja.is_string())
                throw DataError(where + ": classifiers must be strings");
            const auto algo = algorithm_from_string(ja.get<std::string>());
            if (!algo)
                throw DataError(where + ": unknown classifier \"" + ja.get<std::string>() + "\"");
            if (!seen.insert(*algo).second)
                throw DataError(where + ": duplicate classifier \"" + ja.get<std::string>() + "\"");
            cfg.classifiers.push_back(*algo);
        }
    } else {
        cfg.classifiers = all_algorithms();
    }

    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned())
            throw DataError(where + ": \"seed\" must be an unsigned integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }

    if (!j.contains("out_dir") || !j["out_dir"].is_string())
        throw DataError(where + ": config needs \"out_dir\"");
    cfg.out_dir = resolve(base, j["out_dir"].get<std::string>());

    if (!j.contains("resources") || !j["resources"].is_object())
        throw DataError(where + ": config needs a \"resources\" object");
    const auto& res = j["resources"];
    auto res_path = [&](const char* name) -> std::optional<std::filesystem::path> {
        if (!res.contains(name)) return std::nullopt;
        if (!res[name].is_string())
            throw DataError(where + ": resource \"" + name + "\" must be a string path");
        return resolve(base, res[name].get<std::string>());
    };
    const auto stopwords = res_path("stopwords");
    if (!stopwords) throw DataError(where + ": resources need \"stopwords\"");
    cfg.stopwords = *stopwords;
    cfg.bn_function_words = res_path("bn_function_words");
    cfg.emoticons = res_path("emoticons");
    cfg.tagger = res_path("tagger");
    cfg.swn = res_path("swn");
    cfg.nrc = res_path("nrc");
    if (res.contains("socal")) {
        if (!res["socal"].is_array() || res["socal"].size() != 5)
            throw DataError(where + ": resource \"socal\" must be an array of 5 paths "
                            "(adjective, adverb, noun, verb, intensifier)");
        for (const auto& jp : res["socal"]) {
            if (!jp.is_string())
                throw DataError(where + ": socal paths must be strings");
            cfg.socal.push_back(resolve(base, jp.get<std::string>()));
        }
    }

    if (j.contains("classifier_overrides")) {
        if (!j["classifier_overrides"].is_object())
            throw DataError(where + ": \"classifier_overrides\" must be an object");
        for (const auto& [key, jo] : j["classifier_overrides"].items()) {
            const auto algo = algorithm_from_string(key);
            if (!algo)
                throw DataError(where + ": override for unknown classifier \"" + key + "\"");
            if (!jo.is_object())
                throw DataError(where + ": override for " + key + " must be an object");
            ClassifierSpec spec;
            spec.algorithm = *algo;
            for (const auto& [field, jv] : jo.items()) {
                if (field == "alpha" && jv.is_number()) spec.alpha = jv.get<double>();
                else if (field == "lambda" && jv.is_number()) spec.lambda = jv.get<double>();
                else if (field == "epochs" && jv.is_number_unsigned())
                    spec.epochs = jv.get<std::size_t>();
                else if (field == "tolerance" && jv.is_number()) spec.tolerance = jv.get<double>();
                else
                    throw DataError(where + ": bad override field \"" + field + "\" for " + key);
            }
            cfg.overrides[*algo] = spec;
        }
    }
    return cfg;
}

namespace {

void prepare_corpus(LabeledCorpus& corpus, FeatureFamily family, const TagResources* tagger,
                    const std::vector<std::string>& emoticons) {
    for (auto& s : corpus.snippets) {
        if (family == FeatureFamily::FSet2) {
            if (!s.tokens) s.tokens = remove_social_artifacts(tokenize(s.text), s.text, emoticons);
        } else {
            if (!s.tokens) s.tokens = tokenize(s.text);
            s.tokens = tag(std::move(*s.tokens), *tagger);  // keeps pre-supplied tags
        }
    }
}

void write_text_atomic(const std::string& text, const std::filesystem::path& path) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write: " + tmp.string());
        out << text;
        if (!out) throw DataError("short write: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw DataError("cannot move into place: " + path.string() + ": " + ec.message());
}

std::string percent(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", fraction * 100.0);
    return buf;
}

}  // namespace

AblationTable run_experiment(const ExperimentConfig& config) {
    LabeledCorpus train_set, test_set;
    if (config.corpus) {
        LabeledCorpus full = load_corpus(config.corpus->path, config.corpus->format);
        SplitSpec split = *config.split;
        split.seed = config.seed;
        auto pair = split_corpus(full, split);
        train_set = std::move(pair.first);
        test_set = std::move(pair.second);
    } else {
        train_set = load_corpus(config.train->path, config.train->format);
        test_set = load_corpus(config.test->path, config.test->format);
    }

    WordLists lists;
    lists.english_stopwords = load_word_list(config.stopwords);
    if (config.bn_function_words)
        lists.bengali_function_words = load_word_list(*config.bn_function_words);
    const std::vector<std::string> emoticons =
        config.emoticons ? load_emoticon_patterns(*config.emoticons) : default_emoticon_patterns();

    std::optional<TagResources> tagger;
    if (config.family == FeatureFamily::FSet1) {
        if (!config.tagger)
            throw DataError("experiment " + config.name + ": fset1 needs a tagger resource path");
        tagger = load_tag_resources(*config.tagger);
    }

    if (config.levels.empty()) throw DataError("experiment " + config.name + ": no levels");
    if (config.classifiers.empty())
        throw DataError("experiment " + config.name + ": no classifiers");

    LexiconUse need;
    for (const Level level : config.levels) {
        const LexiconUse use = lexicons_for(level);
        need.swn |= use.swn;
        need.socal |= use.socal;
        need.nrc |= use.nrc;
    }
    auto first_level_needing = [&](bool LexiconUse::*member) -> std::string {
        for (const Level level : config.levels)
            if (lexicons_for(level).*member) return std::string(to_string(level));
        return "?";
    };
    LexiconBundle bundle;
    if (need.swn) {
        if (!config.swn)
            throw DataError("experiment " + config.name + ": level "
                            + first_level_needing(&LexiconUse::swn)
                            + " needs the swn lexicon, but no path was configured");
        bundle.swn = load_swn(*config.swn);
    }
    if (need.socal) {
        if (config.socal.empty())
            throw DataError("experiment " + config.name + ": level "
                            + first_level_needing(&LexiconUse::socal)
                            + " needs the socal lexicon, but no paths were configured");
        bundle.socal = load_socal(config.socal);
    }
    if (need.nrc) {
        if (!config.nrc)
            throw DataError("experiment " + config.name + ": level "
                            + first_level_needing(&LexiconUse::nrc)
                            + " needs the nrc lexicon, but no path was configured");
        bundle.nrc = load_nrc(*config.nrc);
    }

    prepare_corpus(train_set, config.family, tagger ? &*tagger : nullptr, emoticons);
    prepare_corpus(test_set, config.family, tagger ? &*tagger : nullptr, emoticons);

    std::filesystem::create_directories(config.out_dir);

    std::vector<Polarity> train_labels, test_gold;
    for (const auto& s : train_set.snippets) train_labels.push_back(s.label);
    for (const auto& s : test_set.snippets) test_gold.push_back(s.label);

    AblationTable table;
    table.experiment = config.name;
    table.seed = config.seed;
    table.train_corpus = train_set.name;
    table.test_corpus = test_set.name;
    table.levels = config.levels;
    table.classifiers = config.classifiers;

    PrepOptions prep;
    if (tagger) prep.tagger = &*tagger;
    prep.emoticons = &emoticons;

    for (const Level level : config.levels) {
        FeatureSpace space = config.family == FeatureFamily::FSet1
                                 ? build_fset1(train_set, level, lists, bundle)
                                 : build_fset2(train_set, level, lists, bundle);
        space.seed = config.seed;

        std::vector<FeatureVector> train_vecs, test_vecs;
        train_vecs.reserve(train_set.snippets.size());
        test_vecs.reserve(test_set.snippets.size());
        for (const auto& s : train_set.snippets) train_vecs.push_back(vectorize(s, space, bundle, prep));
        for (const auto& s : test_set.snippets) test_vecs.push_back(vectorize(s, space, bundle, prep));

        std::vector<AblationCell> row;
        for (const Algorithm algo : config.classifiers) {
            const std::string context = config.name + " " + std::string(to_string(level)) + "/"
                                        + std::string(to_string(algo));
            try {
                ClassifierSpec spec;
                const auto ov = config.overrides.find(algo);
                if (ov != config.overrides.end()) spec = ov->second;
                spec.algorithm = algo;
                spec.seed = config.seed;

                Model model = train(spec, train_vecs, train_labels);
                model.corpus_name = train_set.name;
                model.level = std::string(to_string(level));

                RunRecord record;
                record.experiment = config.name;
                record.level = std::string(to_string(level));
                record.classifier = std::string(to_string(algo));
                record.seed = config.seed;
                record.train_corpus = train_set.name;
                record.test_corpus = test_set.name;
                record.entries.reserve(test_set.snippets.size());
                for (std::size_t i = 0; i < test_set.snippets.size(); ++i) {
                    RunRecordEntry e;
                    e.snippet_id = test_set.snippets[i].id;
                    e.gold = test_gold[i];
                    e.score = decision_score(model, test_vecs[i]);
                    e.predicted = e.score >= 0.0 ? Polarity::Positive : Polarity::Negative;
                    record.entries.push_back(std::move(e));
                }

                AblationCell cell;
                cell.level = level;
                cell.algorithm = algo;
                cell.record_path = config.out_dir
                                   / (config.name + "_" + std::string(to_string(level)) + "_"
                                      + std::string(to_string(algo)) + ".jsonl");
                save_run_record(record, cell.record_path);

                // cell accuracy comes from the persisted record's entries, so the
                // table can never drift from what was written to disk
                std::vector<Polarity> preds, gold;
                for (const auto& e : record.entries) {
                    preds.push_back(e.predicted);
                    gold.push_back(e.gold);
                }
                cell.cm = confusion(preds, gold);
                cell.accuracy = static_cast<double>(cell.cm.tp + cell.cm.tn)
                                / static_cast<double>(cell.cm.total());
                row.push_back(std::move(cell));
            } catch (const DataError& e) {
                throw DataError(context + ": " + e.what());
            }
        }
        table.cells.push_back(std::move(row));
    }

    write_text_atomic(render_table(table, TableFormat::Markdown),
                      config.out_dir / (config.name + "_table.md"));
    write_text_atomic(render_table(table, TableFormat::Csv),
                      config.out_dir / (config.name + "_table.csv"));
    return table;
}

std::string render_table(const AblationTable& table, TableFormat format) {
    if (table.levels.empty() || table.classifiers.empty()
        || table.cells.size() != table.levels.size())
        throw DataError("render_table: incomplete table");
    for (const auto& row : table.cells)
        if (row.size() != table.classifiers.size())
            throw DataError("render_table: incomplete table");

    // single best cell; ties resolved by row-major order
    std::size_t best_r = 0, best_c = 0;
    double best = -1.0;
    for (std::size_t r = 0; r < table.cells.size(); ++r) {
        for (std::size_t c = 0; c < table.cells[r].size(); ++c) {
            if (table.cells[r][c].accuracy > best) {
                best = table.cells[r][c].accuracy;
                best_r = r;
                best_c = c;
            }
        }
    }

    std::string out;
    if (format == TableFormat::Csv) {
        out += "level";
        for (const Algorithm algo : table.classifiers) {
            out += ',';
            out += to_string(algo);
        }
        out += '\n';
        for (std::size_t r = 0; r < table.cells.size(); ++r) {
            out += to_string(table.levels[r]);
            for (const auto& cell : table.cells[r]) {
                out += ',';
                out += percent(cell.accuracy);
            }
            out += '\n';
        }
        return out;
    }

    out += "Accuracies (%) for " + table.experiment + " (train: " + table.train_corpus
           + ", test: " + table.test_corpus + ", seed " + std::to_string(table.seed)
           + "). Boldface: best performance.\n\n";
    out += "| Feature set |";
    for (const Algorithm algo : table.classifiers) {
        out += ' ';
        out += to_string(algo);
        out += " |";
    }
    out += "\n|---|";
    for (std::size_t c = 0; c < table.classifiers.size(); ++c) out += "---|";
    out += '\n';
    for (std::size_t r = 0; r < table.cells.size(); ++r) {
        out += "| ";
        out += to_string(table.levels[r]);
        out += " |";
        for (std::size_t c = 0; c < table.cells[r].size(); ++c) {
            const std::string value = percent(table.cells[r][c].accuracy);
            out += ' ';
            out += (r == best_r && c == best_c) ? "**" + value + "**" : value;
            out += " |";
        }
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// fixture generators

namespace {

namespace fx {

// Bengali sentiment carriers (romanized), documented polarities
const std::vector<std::string> kBnPos = {"bhalo", "asadharon", "ghyam", "darun", "shundor"};
const std::vector<std::string> kBnNeg = {"kharap", "baje", "bekar", "faltu", "jaghanno"};

// English sentiment vocabulary, shared by both fixtures
const std::vector<std::string> kEnPosAdj = {"good",      "great",    "wonderful",
                                            "brilliant", "superb",   "excellent",
                                            "charming",  "gripping", "fantastic"};
const std::vector<std::string> kEnNegAdj = {"bad",      "terrible", "awful",
                                            "boring",   "dull",     "horrible",
                                            "dreadful", "bland",    "messy"};
const std::vector<std::string> kEnPosNoun = {"masterpiece", "gem", "triumph", "delight", "treat"};
const std::vector<std::string> kEnNegNoun = {"disaster", "mess", "failure", "bore", "letdown"};
const std::vector<std::string> kEnPosVerb = {"loved", "enjoyed", "admired", "adored", "savored"};
const std::vector<std::string> kEnNegVerb = {"hated", "regretted", "disliked", "loathed",
                                             "endured"};
const std::vector<std::string> kEnPosAdv = {"beautifully", "brilliantly", "superbly",
                                            "wonderfully", "perfectly"};
const std::vector<std::string> kEnNegAdv = {"poorly", "badly", "terribly", "awkwardly",
                                            "clumsily"};

const std::vector<std::string> kFiller = {"movie",    "film",       "story", "plot",   "cast",
                                          "acting",   "director",   "scene", "ending", "screenplay"};
const std::vector<std::string> kBnFiller = {"chobi", "golpo", "boi", "gaan"};
const std::vector<std::string> kBnVerbish = {"laglo", "lage", "hoyeche", "chilo", "dekhlam"};

// class-neutral on purpose: these must carry no label signal, their removal
// is what the FSet2 path is being tested on
const std::vector<std::string> kArtifacts = {"#movie", "#review",  "#cinema", "#weekend",
                                             ":)",     ":-(",      "xD",      "<3"};
const std::vector<std::string> kCodemixTails = {"dekhe elam", "ei prothom", "porshu raate",
                                                "bondhura shoho"};
const std::vector<std::string> kEnglishTails = {"last weekend", "with friends",
                                                "at the cinema", "on a rainy evening"};

const std::string& pick(DeterministicRng& rng, const std::vector<std::string>& words) {
    return words[rng.bounded(words.size())];
}

std::string join(const std::vector<std::string>& words) {
    std::string out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) out += ' ';
        out += words[i];
    }
    return out;
}

std::string decorate(DeterministicRng& rng, std::vector<std::string> words, bool with_artifacts,
                     const std::vector<std::string>& tails) {
    if (rng.uniform01() < 0.30) words.push_back(pick(rng, tails));
    std::string text = join(words);
    if (rng.uniform01() < 0.25 && !text.empty() && text[0] >= 'a' && text[0] <= 'z')
        text[0] = static_cast<char>(text[0] - 'a' + 'A');
    if (with_artifacts && rng.uniform01() < 0.35) text += " " + pick(rng, kArtifacts);
    if (rng.uniform01() < 0.20) text += rng.uniform01() < 0.5 ? " !" : ".";
    return text;
}

// Eleven templates per class. 0..4 carry Bengali-only sentiment signal,
// 5..8 mix English and Bengali carriers, 9 is English-only, 10 is the
// deliberately ambiguous one (opposite-polarity words in one snippet).
// Template 4 is the "na" negation: pre-position flips a negative word in
// the positive grammar, post-position flips a positive word in the negative
// grammar.
std::string codemix_text(DeterministicRng& rng, bool positive) {
    const auto& bn_main = positive ? kBnPos : kBnNeg;
    const auto& en_adj = positive ? kEnPosAdj : kEnNegAdj;
    const auto& en_noun = positive ? kEnPosNoun : kEnNegNoun;
    const auto& en_verb = positive ? kEnPosVerb : kEnNegVerb;
    const auto& en_adv = positive ? kEnPosAdv : kEnNegAdv;

    std::vector<std::string> w;
    switch (rng.bounded(11)) {
        case 0:
            w = {pick(rng, kBnFiller), "ta", pick(rng, bn_main)};
            break;
        case 1:
            w = {"movie", "ta", "khub", pick(rng, bn_main), pick(rng, kBnVerbish)};
            break;
        case 2:
            w = {pick(rng, kFiller), "er", "golpo", "ekdom", pick(rng, bn_main),
                 "ar", pick(rng, bn_main)};
            break;
        case 3:
            w = {"ki", pick(rng, bn_main), "ekta", pick(rng, kFiller), "dekhlam"};
            break;
        case 4:
            if (positive) {
                // "amar mote film tah chilo na kharap" reads not-bad
                w = {"amar", "mote", pick(rng, kFiller), "tah", "chilo", "na",
                     pick(rng, kBnNeg)};
            } else {
                // "ekdom bhalo na ei movie" reads good-not
                w = {"ekdom", pick(rng, kBnPos), "na", "ei", pick(rng, kFiller)};
            }
            break;
        case 5:
            w = {"the", pick(rng, kFiller), "was", pick(rng, en_adj), "ar",
                 "acting", "o", pick(rng, bn_main)};
            break;
        case 6:
            w = {pick(rng, en_verb), "the", pick(rng, kFiller), "cast", "er",
                 "kaj", pick(rng, bn_main)};
            break;
        case 7:
            w = {"what", "a", pick(rng, en_adj), pick(rng, en_noun), "ekdom",
                 pick(rng, bn_main)};
            break;
        case 8:
            w = {"ei", pick(rng, kBnFiller), "ta", pick(rng, bn_main), "story", "o",
                 pick(rng, en_adj)};
            break;
        case 9:
            w = {positive ? "simply" : "utterly", pick(rng, en_adj), "and",
                 pick(rng, en_adv), "made", pick(rng, kFiller)};
            break;
        case 10:
            if (positive) {
                w = {"starting", "ta", pick(rng, kEnNegAdj), "but", "shesh", "ta",
                     pick(rng, kBnPos)};
            } else {
                w = {"jodio", "acting", "was", pick(rng, kEnPosAdj), "ami", "2/10",
                     "er", "beshi", "debo", "na"};
            }
            break;
    }
    return decorate(rng, std::move(w), /*with_artifacts=*/true, kCodemixTails);
}

// Ten templates per class; 1, 3, 6 and 7 carry only non-adjective signal, 9
// is the ambiguous but-clause one.
std::string english_text(DeterministicRng& rng, bool positive) {
    const auto& adj = positive ? kEnPosAdj : kEnNegAdj;
    const auto& noun = positive ? kEnPosNoun : kEnNegNoun;
    const auto& verb = positive ? kEnPosVerb : kEnNegVerb;
    const auto& adv = positive ? kEnPosAdv : kEnNegAdv;
    const auto& anti_adj = positive ? kEnNegAdj : kEnPosAdj;

    std::vector<std::string> w;
    switch (rng.bounded(10)) {
        case 0:
            w = {"the", pick(rng, kFiller), "was", pick(rng, adj), "and", pick(rng, adj)};
            break;
        case 1:
            w = {"i", pick(rng, verb), "this", pick(rng, kFiller)};
            break;
        case 2:
            w = {"a", pick(rng, adj), pick(rng, noun), pick(rng, adv), "made"};
            break;
        case 3:
            w = {"this", pick(rng, kFiller), "is", "a", pick(rng, noun)};
            break;
        case 4:
            w = {pick(rng, adv), pick(rng, adj), "from", "start", "to", "finish"};
            break;
        case 5:
            w = {"the", pick(rng, kFiller), "felt", pick(rng, adj), "and", "the",
                 "ending", "was", pick(rng, adj)};
            break;
        case 6:
            w = {"what", "a", pick(rng, noun)};
            break;
        case 7:
            w = {"i", pick(rng, verb), "the", pick(rng, kFiller), "and", "the", "cast"};
            break;
        case 8:
            w = {pick(rng, adj), "acting", "and", "a", pick(rng, adj), "screenplay"};
            break;
        case 9:
            w = {"the", pick(rng, kFiller), "was", pick(rng, anti_adj), "at", "first",
                 "but", "the", "ending", "was", pick(rng, adj)};
            break;
    }
    return decorate(rng, std::move(w), /*with_artifacts=*/false, kEnglishTails);
}

LabeledCorpus make_fixture(std::uint64_t seed, std::size_t size_per_class, const char* prefix,
                           const std::string& name,
                           std::string (*generate)(DeterministicRng&, bool)) {
    if (size_per_class == 0)
        throw std::invalid_argument("fixture size_per_class must be at least 1");
    DeterministicRng rng(seed);
    LabeledCorpus corpus;
    corpus.name = name;
    corpus.snippets.reserve(2 * size_per_class);
    for (int cls = 0; cls < 2; ++cls) {
        const bool positive = cls == 0;
        for (std::size_t i = 1; i <= size_per_class; ++i) {
            Snippet s;
            s.id = std::string(prefix) + "-" + (positive ? "pos" : "neg") + "-"
                   + std::to_string(i);
            s.label = positive ? Polarity::Positive : Polarity::Negative;
            s.text = generate(rng, positive);
            corpus.snippets.push_back(std::move(s));
        }
    }
    return corpus;
}

}  // namespace fx

}  // namespace

LabeledCorpus make_codemix_fixture(std::uint64_t seed, std::size_t size_per_class) {
    return fx::make_fixture(seed, size_per_class, "cm", "codemix-fixture", fx::codemix_text);
}

LabeledCorpus make_english_fixture(std::uint64_t seed, std::size_t size_per_class) {
    return fx::make_fixture(seed, size_per_class, "en", "english-fixture", fx::english_text);
}

namespace {

std::vector<std::string> concat_items(std::initializer_list<const std::vector<std::string>*> lists,
                                      std::initializer_list<std::string> extra) {
    std::vector<std::string> out;
    for (const auto* l : lists) out.insert(out.end(), l->begin(), l->end());
    out.insert(out.end(), extra.begin(), extra.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

const std::vector<std::string>& fixture_positive_items() {
    static const std::vector<std::string> items =
        concat_items({&fx::kBnPos, &fx::kEnPosAdj, &fx::kEnPosNoun, &fx::kEnPosVerb,
                      &fx::kEnPosAdv},
                     {});
    return items;
}

const std::vector<std::string>& fixture_negative_items() {
    // "na" flips polarity and is what makes the negated-positive templates
    // negative, so it counts as a negative item
    static const std::vector<std::string> items =
        concat_items({&fx::kBnNeg, &fx::kEnNegAdj, &fx::kEnNegNoun, &fx::kEnNegVerb,
                      &fx::kEnNegAdv},
                     {"na"});
    return items;
}

}  // namespace cmsent
