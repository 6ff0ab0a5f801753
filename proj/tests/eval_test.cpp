#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cmsent/error.hpp"
#include "cmsent/eval.hpp"

#include "test_util.hpp"

using namespace cmsent;

namespace {

constexpr Polarity P = Polarity::Positive;
constexpr Polarity N = Polarity::Negative;

void check_report(const ConfusionMatrix& cm, double acc, double prec, double rec, double f1,
                  double g, double mcc) {
    const MetricsReport r = metrics(cm);
    CHECK(r.accuracy == doctest::Approx(acc).epsilon(1e-9));
    CHECK(r.precision == doctest::Approx(prec).epsilon(1e-9));
    CHECK(r.recall == doctest::Approx(rec).epsilon(1e-9));
    CHECK(r.f1 == doctest::Approx(f1).epsilon(1e-9));
    CHECK(r.g_measure == doctest::Approx(g).epsilon(1e-9));
    CHECK(r.mcc == doctest::Approx(mcc).epsilon(1e-9));
    CHECK_FALSE(r.degenerate);
}

Snippet snip(std::string id, Polarity label) {
    Snippet s;
    s.id = std::move(id);
    s.label = label;
    s.text = "placeholder";
    return s;
}

RunRecord record_with(std::vector<RunRecordEntry> entries) {
    RunRecord r;
    r.experiment = "exp";
    r.level = "fe01";
    r.classifier = "mnb";
    r.seed = 42;
    r.train_corpus = "train";
    r.test_corpus = "test";
    r.entries = std::move(entries);
    return r;
}

}  // namespace

TEST_CASE("confusion pairs predictions with gold labels") {
    const std::vector<Polarity> gold = {P, P, P, N, N, N};
    const std::vector<Polarity> pred = {P, N, P, N, P, N};
    const ConfusionMatrix cm = confusion(pred, gold);
    CHECK(cm.tp == 2);
    CHECK(cm.fn == 1);
    CHECK(cm.fp == 1);
    CHECK(cm.tn == 2);
    CHECK(cm.total() == 6);

    CHECK_THROWS_AS(confusion({P}, {P, N}), DataError);
    CHECK_THROWS_AS(confusion({}, {}), DataError);
}

TEST_CASE("metrics reproduce three hand-checked confusion matrices") {
    // balanced 1200-per-class matrices; expected values carried to 9 digits
    SUBCASE("strong classifier") {
        ConfusionMatrix cm{/*tp=*/991, /*tn=*/1036, /*fp=*/164, /*fn=*/209};
        check_report(cm, 0.844583333, 0.858008658, 0.825833333, 0.841613588, 0.841767277,
                     0.689651748);
    }
    SUBCASE("near chance") {
        ConfusionMatrix cm{/*tp=*/122, /*tn=*/114, /*fp=*/86, /*fn=*/78};
        check_report(cm, 0.59, 0.586538461, 0.61, 0.598039215, 0.598154212, 0.180144173);
    }
    SUBCASE("moderate classifier") {
        ConfusionMatrix cm{/*tp=*/149, /*tn=*/141, /*fp=*/59, /*fn=*/51};
        check_report(cm, 0.725, 0.716346153, 0.745, 0.730392156, 0.730532603, 0.450360432);
    }
}

TEST_CASE("metrics formulas on a tiny asymmetric matrix") {
    ConfusionMatrix cm{/*tp=*/8, /*tn=*/5, /*fp=*/3, /*fn=*/2};
    const MetricsReport r = metrics(cm);
    CHECK(r.accuracy == doctest::Approx(13.0 / 18.0));
    CHECK(r.precision == doctest::Approx(8.0 / 11.0));
    CHECK(r.recall == doctest::Approx(8.0 / 10.0));
    CHECK(r.f1 == doctest::Approx(2.0 * (8.0 / 11.0) * 0.8 / (8.0 / 11.0 + 0.8)));
    CHECK(r.g_measure == doctest::Approx(std::sqrt((8.0 / 11.0) * 0.8)));
    const double mcc_num = 8.0 * 5.0 - 3.0 * 2.0;
    const double mcc_den = std::sqrt(11.0 * 10.0 * 8.0 * 7.0);
    CHECK(r.mcc == doctest::Approx(mcc_num / mcc_den));
}

TEST_CASE("degenerate denominators produce zero, not NaN") {
    SUBCASE("no positive predictions: precision undefined") {
        ConfusionMatrix cm{/*tp=*/0, /*tn=*/5, /*fp=*/0, /*fn=*/5};
        const MetricsReport r = metrics(cm);
        CHECK(r.accuracy == doctest::Approx(0.5));
        CHECK(r.precision == 0.0);
        CHECK(r.recall == 0.0);
        CHECK(r.f1 == 0.0);
        CHECK(r.g_measure == 0.0);
        CHECK(r.mcc == 0.0);
        CHECK(r.degenerate);
    }
    SUBCASE("no gold positives: recall undefined") {
        ConfusionMatrix cm{/*tp=*/0, /*tn=*/3, /*fp=*/2, /*fn=*/0};
        const MetricsReport r = metrics(cm);
        CHECK(r.recall == 0.0);
        CHECK(r.degenerate);
    }
    SUBCASE("everything predicted positive on one-class gold") {
        ConfusionMatrix cm{/*tp=*/4, /*tn=*/0, /*fp=*/4, /*fn=*/0};
        const MetricsReport r = metrics(cm);
        CHECK(r.recall == doctest::Approx(1.0));
        CHECK(r.precision == doctest::Approx(0.5));
        CHECK(r.mcc == 0.0);  // tn+fn = 0 in the denominator
        CHECK(r.degenerate);
    }
    SUBCASE("perfect prediction is not degenerate") {
        ConfusionMatrix cm{/*tp=*/4, /*tn=*/4, /*fp=*/0, /*fn=*/0};
        const MetricsReport r = metrics(cm);
        CHECK(r.accuracy == doctest::Approx(1.0));
        CHECK(r.f1 == doctest::Approx(1.0));
        CHECK(r.mcc == doctest::Approx(1.0));
        CHECK_FALSE(r.degenerate);
    }
}

TEST_CASE("misclassified sorts by confidence and keeps corpus order on ties") {
    LabeledCorpus corpus;
    corpus.name = "toy";
    corpus.snippets = {snip("a", P), snip("b", P), snip("c", N), snip("d", N), snip("e", P)};

    const std::vector<Polarity> gold = {P, P, N, N, P};
    const std::vector<Polarity> pred = {N, P, P, P, N};
    const std::vector<double> scores = {-0.5, 2.0, 1.25, 1.25, -3.0};

    const auto wrong = misclassified(pred, gold, scores, corpus);
    REQUIRE(wrong.size() == 4);
    CHECK(wrong[0].snippet.id == "e");  // |score| 3.0
    CHECK(wrong[1].snippet.id == "c");  // 1.25, earlier in the corpus
    CHECK(wrong[2].snippet.id == "d");  // 1.25
    CHECK(wrong[3].snippet.id == "a");  // 0.5
    CHECK(wrong[0].predicted == N);
    CHECK(wrong[0].gold == P);
    CHECK(wrong[0].score == -3.0);

    CHECK_THROWS_AS(misclassified(pred, gold, {1.0, 2.0}, corpus), DataError);
}

TEST_CASE("run records survive the disk round trip with exact scores") {
    const auto dir = testutil::fresh_dir("runrec");
    RunRecord rec = record_with({
        {"positive-1", P, P, 0.1 + 0.2},  // deliberately non-representable sums
        {"positive-2", P, N, -1.0 / 3.0},
        {"negative-7", N, N, -4.158883083359672},
    });

    const auto path = dir / "rec.jsonl";
    save_run_record(rec, path);
    const RunRecord back = load_run_record(path);

    CHECK(back.experiment == rec.experiment);
    CHECK(back.level == rec.level);
    CHECK(back.classifier == rec.classifier);
    CHECK(back.seed == rec.seed);
    CHECK(back.train_corpus == rec.train_corpus);
    CHECK(back.test_corpus == rec.test_corpus);
    REQUIRE(back.entries.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back.entries[i].snippet_id == rec.entries[i].snippet_id);
        CHECK(back.entries[i].gold == rec.entries[i].gold);
        CHECK(back.entries[i].predicted == rec.entries[i].predicted);
        CHECK(back.entries[i].score == rec.entries[i].score);  // bit-exact
    }

    // saving twice produces identical bytes
    const auto again = dir / "rec2.jsonl";
    save_run_record(rec, again);
    CHECK(testutil::read_file(path) == testutil::read_file(again));
}

TEST_CASE("run record loader rejects structural damage") {
    const auto dir = testutil::fresh_dir("runrec-bad");

    const auto missing = dir / "nope.jsonl";
    CHECK_THROWS_AS(load_run_record(missing), DataError);

    const auto no_header = dir / "no-header.jsonl";
    testutil::write_file(no_header, "{\"snippet_id\":\"a\",\"gold\":\"positive\"}\n");
    CHECK_THROWS_AS(load_run_record(no_header), DataError);

    const auto bad_entry = dir / "bad-entry.jsonl";
    RunRecord rec = record_with({{"a", P, P, 1.0}});
    save_run_record(rec, bad_entry);
    testutil::write_file(bad_entry, testutil::read_file(bad_entry) + "not json\n");
    CHECK_THROWS_WITH_AS(load_run_record(bad_entry), doctest::Contains(":3"), DataError);
}

TEST_CASE("diff_errors partitions ids into the four buckets") {
    // gold all positive; a is wrong on {x,y}, b is wrong on {y,z}
    RunRecord a = record_with({
        {"w", P, P, 1.0},
        {"x", P, N, -1.0},
        {"y", P, N, -2.0},
        {"z", P, P, 3.0},
    });
    RunRecord b = record_with({
        {"z", P, N, -0.25},
        {"y", P, N, -1.5},
        {"x", P, P, 0.5},
        {"w", P, P, 2.0},
    });
    b.classifier = "lsvc";

    const ErrorDiff d = diff_errors(a, b);
    CHECK(d.only_a == std::vector<std::string>{"x"});
    CHECK(d.only_b == std::vector<std::string>{"z"});
    CHECK(d.both == std::vector<std::string>{"y"});
    CHECK(d.neither == std::vector<std::string>{"w"});
}

TEST_CASE("diff_errors requires identical id sets") {
    RunRecord a = record_with({{"a", P, P, 1.0}, {"b", P, N, -1.0}});
    RunRecord b = record_with({{"a", P, P, 1.0}, {"c", P, N, -1.0}});
    CHECK_THROWS_AS(diff_errors(a, b), DataError);

    RunRecord c = record_with({{"a", P, P, 1.0}});
    CHECK_THROWS_AS(diff_errors(a, c), DataError);
}
