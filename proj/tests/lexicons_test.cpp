#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cmsent/error.hpp"
#include "cmsent/lexicons.hpp"

#include "test_util.hpp"

using namespace cmsent;

namespace {

std::filesystem::path write(const std::filesystem::path& dir, const char* name,
                            const std::string& content) {
    testutil::write_file(dir / name, content);
    return dir / name;
}

std::vector<TaggedToken> toks(std::initializer_list<std::pair<const char*, std::optional<Pos>>>
                                  items) {
    std::vector<TaggedToken> out;
    for (const auto& [surface, pos] : items) out.push_back({surface, {}, pos});
    return out;
}

}  // namespace

TEST_CASE("swn entries average synsets per (word, POS) and per word") {
    const auto dir = testutil::fresh_dir("swn");
    const auto path = write(dir, "swn.txt",
                            "# header comment\n"
                            "a\t001\t0.75\t0\tgood#1\tgloss ignored\n"
                            "a\t002\t0.25\t0.5\tgood#2\n"
                            "n\t003\t0.5\t0\tgood#3\n"
                            "s\t004\t0\t0.125\todd#1 good#4\n");
    const auto lex = load_swn(path);

    // adjective synsets 1, 2 and the satellite line average to (pos, neg)
    const auto adj = lex.entries.at({"good", Pos::Adj});
    CHECK(adj.positive == doctest::Approx((0.75 + 0.25 + 0.0) / 3).epsilon(1e-12));
    CHECK(adj.negative == doctest::Approx((0.0 + 0.5 + 0.125) / 3).epsilon(1e-12));
    const auto noun = lex.entries.at({"good", Pos::Noun});
    CHECK(noun.positive == 0.5);

    // word fallback: unweighted mean of the two per-POS averages
    const auto fb = lex.word_fallback.at("good");
    CHECK(fb.positive == doctest::Approx((adj.positive + noun.positive) / 2).epsilon(1e-12));
    CHECK(lex.word_fallback.at("odd").negative == 0.125);
}

TEST_CASE("swn save/load round-trips exactly") {
    const auto dir = testutil::fresh_dir("swn-rt");
    const auto path = write(dir, "in.txt",
                            "a\t001\t0.7\t0.1\tgood#1 nice#1\n"
                            "v\t002\t0\t0.3\tdrag#1\n"
                            "r\t003\t0.2\t0.2\tso#1\n");
    const auto lex = load_swn(path);
    save_swn(lex, dir / "out.txt");
    const auto back = load_swn(dir / "out.txt");

    REQUIRE(back.entries.size() == lex.entries.size());
    for (const auto& [key, scores] : lex.entries) {
        const auto& other = back.entries.at(key);
        CHECK(other.positive == scores.positive);  // bit-exact
        CHECK(other.negative == scores.negative);
    }
    REQUIRE(back.word_fallback.size() == lex.word_fallback.size());
    for (const auto& [word, scores] : lex.word_fallback) {
        CHECK(back.word_fallback.at(word).positive == scores.positive);
        CHECK(back.word_fallback.at(word).negative == scores.negative);
    }
}

TEST_CASE("swn rejects malformed lines") {
    const auto dir = testutil::fresh_dir("swn-bad");
    CHECK_THROWS_AS(load_swn(write(dir, "a.txt", "x\t001\t0.5\t0\tword#1\n")), DataError);
    CHECK_THROWS_AS(load_swn(write(dir, "b.txt", "a\t001\t1.5\t0\tword#1\n")), DataError);
    CHECK_THROWS_WITH_AS(load_swn(write(dir, "c.txt", "a\t001\t0.5\n")),
                         doctest::Contains(":1"), DataError);
    CHECK_THROWS_AS(load_swn(dir / "missing.txt"), DataError);
}

namespace {

SocalLexicon tiny_socal(const std::filesystem::path& dir) {
    return load_socal({
        write(dir, "adj.txt", "good 3\nbad -3\n"),
        write(dir, "adv.txt", "poorly -2\n"),
        write(dir, "noun.txt", "failure -3\n"),
        write(dir, "verb.txt", "loved 4\n"),
        write(dir, "int.txt", "very 0.25\nbarely -0.6\n"),
    });
}

}  // namespace

TEST_CASE("socal loads five dictionaries and rejects other counts") {
    const auto dir = testutil::fresh_dir("socal");
    const auto lex = tiny_socal(dir);
    CHECK(lex.adjective.at("good") == 3.0);
    CHECK(lex.intensifier.at("barely") == -0.6);
    CHECK_THROWS_AS(load_socal({dir / "adj.txt"}), DataError);
}

TEST_CASE("socal round-trips through save_socal") {
    const auto dir = testutil::fresh_dir("socal-rt");
    const auto lex = tiny_socal(dir);
    const std::vector<std::filesystem::path> out = {dir / "o1.txt", dir / "o2.txt",
                                                    dir / "o3.txt", dir / "o4.txt",
                                                    dir / "o5.txt"};
    save_socal(lex, out);
    const auto back = load_socal(out);
    CHECK(back.adjective == lex.adjective);
    CHECK(back.adverb == lex.adverb);
    CHECK(back.noun == lex.noun);
    CHECK(back.verb == lex.verb);
    CHECK(back.intensifier == lex.intensifier);
}

TEST_CASE("socal scoring: own dictionary first, then the fixed order") {
    const auto dir = testutil::fresh_dir("socal-score");
    auto lex = tiny_socal(dir);
    lex.noun["good"] = 1.0;  // same surface, different dictionary

    // tagged Noun: own dictionary wins
    auto f = lexicon_features(toks({{"good", Pos::Noun}}), nullptr, &lex, nullptr);
    CHECK(f.socal_sum == 1.0);
    CHECK(f.socal_hits == 1);

    // tagged Verb, absent there: falls back to the adjective dictionary
    f = lexicon_features(toks({{"good", Pos::Verb}}), nullptr, &lex, nullptr);
    CHECK(f.socal_sum == 3.0);

    // untagged: adjective dictionary comes first in the fallback order
    f = lexicon_features(toks({{"good", std::nullopt}}), nullptr, &lex, nullptr);
    CHECK(f.socal_sum == 3.0);
}

TEST_CASE("socal intensifier scales exactly the next token and is consumed") {
    const auto dir = testutil::fresh_dir("socal-int");
    const auto lex = tiny_socal(dir);

    auto f = lexicon_features(toks({{"very", std::nullopt}, {"good", Pos::Adj}}), nullptr,
                              &lex, nullptr);
    CHECK(f.socal_sum == doctest::Approx(3.0 * 1.25).epsilon(1e-12));
    CHECK(f.socal_hits == 1);  // the intensifier itself is not a hit

    // consumed by a non-sentiment token: "good" two positions later is unscaled
    f = lexicon_features(toks({{"very", std::nullopt}, {"movie", std::nullopt},
                               {"good", Pos::Adj}}),
                         nullptr, &lex, nullptr);
    CHECK(f.socal_sum == 3.0);

    // diminisher ("barely") shrinks: 3 · (1 − 0.6)
    f = lexicon_features(toks({{"barely", std::nullopt}, {"good", Pos::Adj}}), nullptr,
                         &lex, nullptr);
    CHECK(f.socal_sum == doctest::Approx(3.0 * 0.4).epsilon(1e-12));

    // trailing intensifier scales nothing
    f = lexicon_features(toks({{"good", Pos::Adj}, {"very", std::nullopt}}), nullptr, &lex,
                         nullptr);
    CHECK(f.socal_sum == 3.0);
}

TEST_CASE("nrc categories are fixed and polarity-free words are dropped") {
    const auto& cats = nrc_categories();
    REQUIRE(cats.size() == 10);
    CHECK(cats[0] == "anger");
    CHECK(cats[5] == "negative");
    CHECK(cats[6] == "positive");
    CHECK(cats[9] == "trust");

    const auto dir = testutil::fresh_dir("nrc");
    const auto path = write(dir, "nrc.txt",
                            "good\tjoy\t1\n"
                            "good\tpositive\t1\n"
                            "good\tanger\t0\n"
                            "table\tsurprise\t1\n"  // no polarity flag -> dropped
                            "bad\tnegative\t1\n");
    const auto lex = load_nrc(path);
    REQUIRE(lex.entries.size() == 2);
    CHECK(lex.entries.at("good")[4] == 1);  // joy
    CHECK(lex.entries.at("good")[6] == 1);  // positive
    CHECK(lex.entries.at("good")[0] == 0);
    CHECK(lex.entries.count("table") == 0);

    CHECK_THROWS_AS(load_nrc(write(dir, "badcat.txt", "w\tmeh\t1\n")), DataError);
    CHECK_THROWS_AS(load_nrc(write(dir, "badflag.txt", "w\tjoy\t2\n")), DataError);
    CHECK_THROWS_AS(load_nrc(write(dir, "noflag.txt", "w\tjoy\t0\n")), DataError);

    save_nrc(lex, dir / "out.txt");
    const auto back = load_nrc(dir / "out.txt");
    CHECK(back.entries == lex.entries);
}

TEST_CASE("lexicon_features aggregates all three families over a sentence") {
    const auto dir = testutil::fresh_dir("lexfeat");
    const auto swn = load_swn(write(dir, "swn.txt",
                                    "a\t001\t0.75\t0\tgood#1\n"
                                    "a\t002\t0\t0.625\tbad#1\n"
                                    "v\t003\t0.5\t0.25\tdrag#1\n"));
    const auto socal = tiny_socal(dir);
    const auto nrc = load_nrc(write(dir, "nrc.txt",
                                    "good\tjoy\t1\ngood\tpositive\t1\nbad\tnegative\t1\n"
                                    "bad\tanger\t1\n"));

    const auto tokens = toks({{"good", Pos::Adj}, {"movie", Pos::Noun}, {"bad", Pos::Adj},
                              {"drag", std::nullopt}});
    const auto f = lexicon_features(tokens, &swn, &socal, &nrc);

    // swn: good (adj entry), bad (adj entry), drag via word fallback
    CHECK(f.swn_pos_sum == doctest::Approx(0.75 + 0.0 + 0.5).epsilon(1e-12));
    CHECK(f.swn_neg_sum == doctest::Approx(0.0 + 0.625 + 0.25).epsilon(1e-12));
    CHECK(f.swn_hits == 3);

    CHECK(f.socal_sum == doctest::Approx(3.0 - 3.0).epsilon(1e-12));
    CHECK(f.socal_hits == 2);

    CHECK(f.nrc_counts[4] == 1);  // joy
    CHECK(f.nrc_counts[6] == 1);  // positive
    CHECK(f.nrc_counts[5] == 1);  // negative
    CHECK(f.nrc_counts[0] == 1);  // anger
    CHECK(f.nrc_counts[9] == 0);

    const auto none = lexicon_features(tokens, nullptr, nullptr, nullptr);
    CHECK(none.swn_hits == 0);
    CHECK(none.socal_sum == 0.0);
}

TEST_CASE("bundled sample lexicons load cleanly and stay English-only") {
    const auto lexdir = testutil::data_dir() / "lexicons";
    const auto swn = load_swn(lexdir / "sample_swn.txt");
    CHECK(swn.entries.count({"good", Pos::Adj}) == 1);
    CHECK(swn.word_fallback.count("bhalo") == 0);

    const auto socal = load_socal({lexdir / "sample_socal_adjective.txt",
                                   lexdir / "sample_socal_adverb.txt",
                                   lexdir / "sample_socal_noun.txt",
                                   lexdir / "sample_socal_verb.txt",
                                   lexdir / "sample_socal_intensifier.txt"});
    CHECK(socal.adjective.at("good") > 0);
    CHECK(socal.adjective.at("bad") < 0);
    CHECK(socal.adjective.count("bhalo") == 0);

    const auto nrc = load_nrc(lexdir / "sample_nrc.txt");
    CHECK(nrc.entries.at("good")[6] == 1);
    CHECK(nrc.entries.count("kharap") == 0);
}
