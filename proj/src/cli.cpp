#include "cmsent/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "cmsent/classifiers.hpp"
#include "cmsent/corpus.hpp"
#include "cmsent/error.hpp"
#include "cmsent/eval.hpp"
#include "cmsent/experiments.hpp"
#include "cmsent/features.hpp"
#include "cmsent/lexicons.hpp"
#include "cmsent/postag.hpp"
#include "cmsent/textprep.hpp"

namespace cmsent {

namespace {

CorpusFormat parse_corpus_format(const std::string& s) {
    if (s == "jsonl") return CorpusFormat::Jsonl;
    if (s == "two_file_polarity") return CorpusFormat::TwoFilePolarity;
    throw std::invalid_argument("unknown corpus format: " + s);
}

std::string percent(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", fraction * 100.0);
    return buf;
}

// shared lexicon/preprocessing flags for subcommands that vectorize
struct ResourceFlags {
    std::string swn;
    std::vector<std::string> socal;
    std::string nrc;
    std::string tagger;
    std::string emoticons;

    void attach(CLI::App* cmd) {
        cmd->add_option("--swn", swn, "SentiWordNet-style lexicon path");
        cmd->add_option("--socal", socal,
                        "SO-CAL-style lexicon paths: adjective adverb noun verb intensifier")
            ->expected(5);
        cmd->add_option("--nrc", nrc, "NRC-style emotion lexicon path");
        cmd->add_option("--tagger-resources", tagger,
                        "POS tagger resource file (fset1 preprocessing)");
        cmd->add_option("--emoticons", emoticons,
                        "emoticon pattern file (fset2 preprocessing; default: built-in set)");
    }

    LexiconBundle load_for(const LexiconUse& use) const {
        LexiconBundle bundle;
        if (use.swn) {
            if (swn.empty()) throw DataError("this feature level needs --swn");
            bundle.swn = load_swn(swn);
        }
        if (use.socal) {
            if (socal.empty()) throw DataError("this feature level needs --socal (5 paths)");
            bundle.socal = load_socal({socal.begin(), socal.end()});
        }
        if (use.nrc) {
            if (nrc.empty()) throw DataError("this feature level needs --nrc");
            bundle.nrc = load_nrc(nrc);
        }
        return bundle;
    }

    void prepare(LabeledCorpus& corpus, FeatureFamily family) const {
        std::optional<TagResources> tag_res;
        if (family == FeatureFamily::FSet1 && !tagger.empty())
            tag_res = load_tag_resources(tagger);
        const std::vector<std::string> patterns =
            emoticons.empty() ? default_emoticon_patterns() : load_emoticon_patterns(emoticons);
        for (auto& s : corpus.snippets) {
            if (family == FeatureFamily::FSet2) {
                if (!s.tokens) s.tokens = remove_social_artifacts(tokenize(s.text), s.text, patterns);
            } else {
                if (!s.tokens) s.tokens = tokenize(s.text);
                if (tag_res) s.tokens = tag(std::move(*s.tokens), *tag_res);
            }
        }
    }
};

int cmd_ingest(const std::string& input, const std::string& format, const std::string& out) {
    LabeledCorpus corpus = load_corpus(input, parse_corpus_format(format));
    save_corpus_jsonl(corpus, out);
    const CorpusStats st = corpus_stats(corpus);
    std::cout << "ingested " << st.total << " snippets (" << st.positive << " positive, "
              << st.negative << " negative) into " << out << "\n";
    return 0;
}

int cmd_split(const std::string& input, const std::string& format, std::size_t train_per_class,
              std::size_t test_per_class, std::uint64_t seed, const std::string& out_train,
              const std::string& out_test) {
    LabeledCorpus corpus = load_corpus(input, parse_corpus_format(format));
    SplitSpec spec;
    spec.train_per_class = train_per_class;
    spec.test_per_class = test_per_class;
    spec.seed = seed;
    auto [train_set, test_set] = split_corpus(corpus, spec);
    save_corpus_jsonl(train_set, out_train);
    save_corpus_jsonl(test_set, out_test);
    std::cout << "train: " << train_set.snippets.size() << " snippets into " << out_train << "\n"
              << "test: " << test_set.snippets.size() << " snippets into " << out_test << "\n";
    return 0;
}

struct BuildFeaturesArgs {
    std::string train, format = "jsonl", family, level, stopwords, bn_function_words, out;
    std::uint64_t seed = 42;
    ResourceFlags res;
};

int cmd_build_features(const BuildFeaturesArgs& a) {
    const auto family = family_from_string(a.family);
    if (!family) throw std::invalid_argument("unknown family: " + a.family);
    const auto level = level_from_string(a.level);
    if (!level) throw std::invalid_argument("unknown level: " + a.level);
    if (family_of(*level) != *family)
        throw std::invalid_argument("level " + a.level + " is not part of family " + a.family);

    WordLists lists;
    lists.english_stopwords = load_word_list(a.stopwords);
    if (!a.bn_function_words.empty())
        lists.bengali_function_words = load_word_list(a.bn_function_words);

    LabeledCorpus corpus = load_corpus(a.train, parse_corpus_format(a.format));
    if (*family == FeatureFamily::FSet1 && a.res.tagger.empty())
        throw DataError("building fset1 features needs --tagger-resources");
    a.res.prepare(corpus, *family);

    const LexiconBundle bundle = a.res.load_for(lexicons_for(*level));
    FeatureSpace space = *family == FeatureFamily::FSet1
                             ? build_fset1(corpus, *level, lists, bundle)
                             : build_fset2(corpus, *level, lists, bundle);
    space.seed = a.seed;
    save_feature_space(space, a.out);
    std::cout << "feature space " << a.level << ": " << space.ngram_columns()
              << " n-gram columns + " << space.lexicon_columns() << " lexicon columns into "
              << a.out << "\n";
    return 0;
}

struct TrainArgs {
    std::string train, format = "jsonl", features, algo, out;
    double alpha = 1.0, lambda = 1e-4, tolerance = 1e-6;
    std::size_t epochs = 0;
    std::uint64_t seed = 42;
    ResourceFlags res;
};

int cmd_train(const TrainArgs& a) {
    const auto algo = algorithm_from_string(a.algo);
    if (!algo) throw std::invalid_argument("unknown algorithm: " + a.algo);

    FeatureSpace space = load_feature_space(a.features);
    LabeledCorpus corpus = load_corpus(a.train, parse_corpus_format(a.format));
    a.res.prepare(corpus, family_of(space.level));
    const LexiconBundle bundle = a.res.load_for(space.lexicons);

    std::vector<FeatureVector> vectors;
    std::vector<Polarity> labels;
    vectors.reserve(corpus.snippets.size());
    PrepOptions prep;  // corpus already prepared; kept for stray untokenized snippets
    for (const auto& s : corpus.snippets) {
        vectors.push_back(vectorize(s, space, bundle, prep));
        labels.push_back(s.label);
    }

    ClassifierSpec spec;
    spec.algorithm = *algo;
    spec.alpha = a.alpha;
    spec.lambda = a.lambda;
    spec.epochs = a.epochs;
    spec.tolerance = a.tolerance;
    spec.seed = a.seed;
    Model model = train(spec, vectors, labels);
    model.corpus_name = corpus.name;
    model.level = std::string(to_string(space.level));
    save_model(model, a.out);
    std::cout << "trained " << to_string(*algo) << " on " << vectors.size() << " snippets ("
              << model.dimension << " features) into " << a.out << "\n";
    return 0;
}

struct EvaluateArgs {
    std::string model, features, test, format = "jsonl", name = "evaluate", out;
    ResourceFlags res;
};

int cmd_evaluate(const EvaluateArgs& a) {
    const Model model = load_model(a.model);
    FeatureSpace space = load_feature_space(a.features);
    LabeledCorpus corpus = load_corpus(a.test, parse_corpus_format(a.format));
    a.res.prepare(corpus, family_of(space.level));
    const LexiconBundle bundle = a.res.load_for(space.lexicons);

    std::vector<Polarity> predictions, gold;
    std::vector<double> scores;
    RunRecord record;
    record.experiment = a.name;
    record.level = std::string(to_string(space.level));
    record.classifier = std::string(to_string(model.algorithm));
    record.seed = model.spec.seed;
    record.train_corpus = model.corpus_name;
    record.test_corpus = corpus.name;
    PrepOptions prep;
    for (const auto& s : corpus.snippets) {
        const FeatureVector vec = vectorize(s, space, bundle, prep);
        RunRecordEntry e;
        e.snippet_id = s.id;
        e.gold = s.label;
        e.score = decision_score(model, vec);
        e.predicted = e.score >= 0.0 ? Polarity::Positive : Polarity::Negative;
        predictions.push_back(e.predicted);
        gold.push_back(e.gold);
        scores.push_back(e.score);
        record.entries.push_back(std::move(e));
    }

    const ConfusionMatrix cm = confusion(predictions, gold);
    const MetricsReport m = metrics(cm);
    std::cout << "snippets " << cm.total() << ", confusion tp " << cm.tp << " fp " << cm.fp
              << " fn " << cm.fn << " tn " << cm.tn << "\n";
    std::cout << "accuracy " << percent(m.accuracy) << "\n";
    std::cout << "precision " << percent(m.precision) << "\n";
    std::cout << "recall " << percent(m.recall) << "\n";
    std::cout << "f1 " << percent(m.f1) << "\n";
    std::cout << "g_measure " << percent(m.g_measure) << "\n";
    char mcc_buf[32];
    std::snprintf(mcc_buf, sizeof mcc_buf, "%.4f", m.mcc);
    std::cout << "mcc " << mcc_buf << "\n";
    if (m.degenerate)
        std::cout << "note: at least one metric had a zero denominator and was reported as 0\n";

    if (!a.out.empty()) {
        save_run_record(record, a.out);
        std::cout << "run record written to " << a.out << "\n";
    }
    return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& out_override,
                   const std::optional<std::uint64_t>& seed_override, const std::string& format) {
    ExperimentConfig config = load_experiment_config(config_path);
    if (!out_override.empty()) config.out_dir = out_override;
    if (seed_override) config.seed = *seed_override;
    const AblationTable table = run_experiment(config);
    std::cout << render_table(table,
                              format == "csv" ? TableFormat::Csv : TableFormat::Markdown);
    std::cout << "\nresults in " << config.out_dir.string() << "\n";
    return 0;
}

int cmd_diff_errors(const std::string& path_a, const std::string& path_b) {
    const RunRecord a = load_run_record(path_a);
    const RunRecord b = load_run_record(path_b);
    const ErrorDiff diff = diff_errors(a, b);
    const auto print_set = [](const std::string& label, const std::vector<std::string>& ids) {
        std::cout << label << " (" << ids.size() << ")";
        if (!ids.empty()) {
            std::cout << ":";
            for (const auto& id : ids) std::cout << ' ' << id;
        }
        std::cout << "\n";
    };
    print_set("wrong only in " + a.classifier + "/" + a.level, diff.only_a);
    print_set("wrong only in " + b.classifier + "/" + b.level, diff.only_b);
    print_set("wrong in both", diff.both);
    std::cout << "right in both (" << diff.neither.size() << ")\n";
    return 0;
}

int cmd_make_fixture(const std::string& kind, std::size_t per_class, std::uint64_t seed,
                     const std::string& out) {
    LabeledCorpus corpus;
    if (kind == "codemix") corpus = make_codemix_fixture(seed, per_class);
    else if (kind == "english") corpus = make_english_fixture(seed, per_class);
    else throw std::invalid_argument("unknown fixture kind: " + kind);
    save_corpus_jsonl(corpus, out);
    std::cout << "fixture " << corpus.name << ": " << corpus.snippets.size() << " snippets into "
              << out << "\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"code-mixed sentiment classification pipeline"};
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "convert a corpus to canonical JSONL");
    std::string in_path, in_format = "two_file_polarity", in_out;
    ingest->add_option("path", in_path, "corpus path (prefix for two_file_polarity)")->required();
    ingest->add_option("--corpus-format", in_format, "jsonl or two_file_polarity");
    ingest->add_option("--out", in_out, "output JSONL path")->required();

    // split
    auto* split = app.add_subcommand("split", "seeded stratified train/test split");
    std::string sp_path, sp_format = "jsonl", sp_out_train, sp_out_test;
    std::size_t sp_train = 0, sp_test = 0;
    std::uint64_t sp_seed = 42;
    split->add_option("path", sp_path, "corpus path")->required();
    split->add_option("--corpus-format", sp_format, "jsonl or two_file_polarity");
    split->add_option("--train-per-class", sp_train, "snippets per class for training")->required();
    split->add_option("--test-per-class", sp_test, "snippets per class for testing")->required();
    split->add_option("--seed", sp_seed, "shuffle seed (default 42)");
    split->add_option("--out-train", sp_out_train, "output JSONL path for the train part")->required();
    split->add_option("--out-test", sp_out_test, "output JSONL path for the test part")->required();

    // build-features
    auto* build = app.add_subcommand("build-features", "build and save a feature space");
    BuildFeaturesArgs bf;
    build->add_option("--train", bf.train, "training corpus path")->required();
    build->add_option("--corpus-format", bf.format, "jsonl or two_file_polarity");
    build->add_option("--family", bf.family, "fset1 or fset2")->required();
    build->add_option("--level", bf.level, "feature level (fe01..fe13)")->required();
    build->add_option("--stopwords", bf.stopwords, "English stopword list")->required();
    build->add_option("--bn-function-words", bf.bn_function_words, "Bengali function-word list");
    build->add_option("--seed", bf.seed, "recorded in the space provenance (default 42)");
    build->add_option("--out", bf.out, "output feature-space path")->required();
    bf.res.attach(build);

    // train
    auto* train_cmd = app.add_subcommand("train", "train a classifier against a feature space");
    TrainArgs tr;
    train_cmd->add_option("--train", tr.train, "training corpus path")->required();
    train_cmd->add_option("--corpus-format", tr.format, "jsonl or two_file_polarity");
    train_cmd->add_option("--features", tr.features, "feature-space path")->required();
    train_cmd->add_option("--algo", tr.algo, "GNB, BNB, MNB, LRC, SGDC or LSVC")->required();
    train_cmd->add_option("--alpha", tr.alpha, "naive Bayes smoothing (default 1.0)");
    train_cmd->add_option("--lambda", tr.lambda, "L2 strength (default 1e-4)");
    train_cmd->add_option("--epochs", tr.epochs, "training epochs/iterations (0 = default)");
    train_cmd->add_option("--tolerance", tr.tolerance, "LRC gradient tolerance (default 1e-6)");
    train_cmd->add_option("--seed", tr.seed, "epoch shuffle seed (default 42)");
    train_cmd->add_option("--out", tr.out, "output model path")->required();
    tr.res.attach(train_cmd);

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "evaluate a model on a test corpus");
    EvaluateArgs ev;
    eval_cmd->add_option("--model", ev.model, "model path")->required();
    eval_cmd->add_option("--features", ev.features, "feature-space path")->required();
    eval_cmd->add_option("--test", ev.test, "test corpus path")->required();
    eval_cmd->add_option("--corpus-format", ev.format, "jsonl or two_file_polarity");
    eval_cmd->add_option("--name", ev.name, "experiment name for the run record");
    eval_cmd->add_option("--out", ev.out, "write a run-record JSONL here");
    ev.res.attach(eval_cmd);

    // experiment
    auto* exp = app.add_subcommand("experiment", "run a level × classifier sweep from a config");
    exp->alias("run-experiment");
    std::string ex_config, ex_out, ex_format = "md";
    std::uint64_t ex_seed = 0;
    exp->add_option("--config", ex_config, "experiment config (JSON)")->required();
    exp->add_option("--out", ex_out, "override the config's output directory");
    auto* ex_seed_opt = exp->add_option("--seed", ex_seed, "override the config's seed");
    exp->add_option("--format", ex_format, "table format printed to stdout: md or csv")
        ->check(CLI::IsMember({"md", "csv"}));

    // diff-errors
    auto* diff = app.add_subcommand("diff-errors", "compare the error sets of two run records");
    std::string df_a, df_b;
    diff->add_option("run_a", df_a, "first run record (JSONL)")->required();
    diff->add_option("run_b", df_b, "second run record (JSONL)")->required();

    // make-fixture
    auto* fixture = app.add_subcommand("make-fixture", "generate a synthetic labeled corpus");
    std::string fx_kind = "codemix", fx_out;
    std::size_t fx_per_class = 200;
    std::uint64_t fx_seed = 42;
    fixture->add_option("--kind", fx_kind, "codemix or english")
        ->check(CLI::IsMember({"codemix", "english"}));
    fixture->add_option("--per-class", fx_per_class, "snippets per class (default 200)");
    fixture->add_option("--seed", fx_seed, "generator seed (default 42)");
    fixture->add_option("--out", fx_out, "output JSONL path")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints help to stdout or the error to stderr
        return e.get_exit_code() == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(ingest)) return cmd_ingest(in_path, in_format, in_out);
        if (app.got_subcommand(split))
            return cmd_split(sp_path, sp_format, sp_train, sp_test, sp_seed, sp_out_train,
                             sp_out_test);
        if (app.got_subcommand(build)) return cmd_build_features(bf);
        if (app.got_subcommand(train_cmd)) return cmd_train(tr);
        if (app.got_subcommand(eval_cmd)) return cmd_evaluate(ev);
        if (app.got_subcommand(exp)) {
            std::optional<std::uint64_t> seed_override;
            if (ex_seed_opt->count() > 0) seed_override = ex_seed;
            return cmd_experiment(ex_config, ex_out, seed_override, ex_format);
        }
        if (app.got_subcommand(diff)) return cmd_diff_errors(df_a, df_b);
        if (app.got_subcommand(fixture))
            return cmd_make_fixture(fx_kind, fx_per_class, fx_seed, fx_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;  // unreachable with require_subcommand(1)
}

}  // namespace cmsent
