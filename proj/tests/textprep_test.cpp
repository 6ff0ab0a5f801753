#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "cmsent/error.hpp"
#include "cmsent/rng.hpp"
#include "cmsent/textprep.hpp"

#include "test_util.hpp"

using namespace cmsent;

namespace {

std::vector<std::string> surfaces(const std::vector<TaggedToken>& tokens) {
    std::vector<std::string> out;
    for (const auto& t : tokens) out.push_back(t.surface);
    return out;
}

std::string join_spaces(const std::vector<std::string>& words) {
    std::string out;
    for (const auto& w : words) {
        if (!out.empty()) out += ' ';
        out += w;
    }
    return out;
}

}  // namespace

TEST_CASE("tokenize lowercases and splits on punctuation") {
    CHECK(surfaces(tokenize("The movie was GREAT!")) ==
          std::vector<std::string>{"the", "movie", "was", "great"});
    CHECK(surfaces(tokenize("semi-final...scene")) ==
          std::vector<std::string>{"semi", "final", "scene"});
    CHECK(surfaces(tokenize("")).empty());
    CHECK(surfaces(tokenize("!!! ???")).empty());
}

TEST_CASE("apostrophe joins only between letters or digits") {
    CHECK(surfaces(tokenize("don't stop")) == std::vector<std::string>{"don't", "stop"});
    CHECK(surfaces(tokenize("the students' work")) ==
          std::vector<std::string>{"the", "students", "work"});
    CHECK(surfaces(tokenize("'quoted'")) == std::vector<std::string>{"quoted"});
}

TEST_CASE("slash joins only between digits") {
    CHECK(surfaces(tokenize("rated 2/10 overall")) ==
          std::vector<std::string>{"rated", "2/10", "overall"});
    CHECK(surfaces(tokenize("either/or")) == std::vector<std::string>{"either", "or"});
    CHECK(surfaces(tokenize("1/2/3")) == std::vector<std::string>{"1/2/3"});
}

TEST_CASE("non-ASCII bytes separate tokens") {
    // "café" carries a two-byte UTF-8 é; both bytes are separators
    CHECK(surfaces(tokenize("caf\xC3\xA9 scene")) == std::vector<std::string>{"caf", "scene"});
    CHECK(surfaces(tokenize("\xE0\xA6\xAD movie")) == std::vector<std::string>{"movie"});
}

TEST_CASE("re-tokenizing the space-joined output is a fixed point") {
    const char* texts[] = {
        "The movie was great!",
        "don't rate it 2/10... #hashtag :)",
        "semi-final 'quoted' students' caf\xC3\xA9",
    };
    for (const auto* text : texts) {
        const auto first = surfaces(tokenize(text));
        CHECK(surfaces(tokenize(join_spaces(first))) == first);
    }
}

TEST_CASE("tokenize_with_spans points at the source bytes") {
    const std::string text = "Loved 2/10? :) #tag";
    for (const auto& span : tokenize_with_spans(text)) {
        REQUIRE(span.begin < span.end);
        REQUIRE(span.end <= text.size());
        std::string slice = text.substr(span.begin, span.end - span.begin);
        std::transform(slice.begin(), slice.end(), slice.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        CHECK(slice == span.surface);
    }
}

TEST_CASE("hashtag removal drops the whole tag, underscores included") {
    const std::string raw = "#movie_night was fun #great";
    const auto cleaned = remove_social_artifacts(tokenize(raw), raw);
    CHECK(surfaces(cleaned) == std::vector<std::string>{"was", "fun"});
}

TEST_CASE("emoticon removal is case-sensitive and longest-first") {
    const std::string raw = "so sad :'-( but fun xD";
    const auto cleaned = remove_social_artifacts(tokenize(raw), raw);
    // ":'-(" matches as one pattern; "xD" would otherwise survive as "xd"
    CHECK(surfaces(cleaned) == std::vector<std::string>{"so", "sad", "but", "fun"});

    const std::string kept = "the xdcam footage";  // no standalone emoticon
    CHECK(surfaces(remove_social_artifacts(tokenize(kept), kept)) ==
          std::vector<std::string>{"the", "xdcam", "footage"});
}

TEST_CASE("artifact removal keeps tags of surviving tokens") {
    const std::string raw = "#skip great xD";
    auto tokens = tokenize(raw);
    for (auto& t : tokens)
        if (t.surface == "great") t.pos = Pos::Adj;
    const auto cleaned = remove_social_artifacts(tokens, raw);
    REQUIRE(cleaned.size() == 1);
    CHECK(cleaned[0].surface == "great");
    CHECK(cleaned[0].pos == Pos::Adj);
}

TEST_CASE("artifact removal falls back to per-surface removal on foreign tokens") {
    // tokens do not line up with raw text: one "xd" per artifact is removed
    const std::string raw = "xD movie";
    std::vector<TaggedToken> tokens;
    for (const char* s : {"xd", "xd", "movie"}) tokens.push_back({s, {}, {}});
    const auto cleaned = remove_social_artifacts(tokens, raw);
    CHECK(surfaces(cleaned) == std::vector<std::string>{"xd", "movie"});
}

TEST_CASE("load_word_list lowercases, skips comments, rejects empty") {
    const auto dir = testutil::fresh_dir("wordlist");
    testutil::write_file(dir / "list.txt", "# comment\nThe\n\nAND\n");
    const auto words = load_word_list(dir / "list.txt");
    CHECK(words == std::unordered_set<std::string>{"the", "and"});

    testutil::write_file(dir / "empty.txt", "# nothing\n\n");
    CHECK_THROWS_AS(load_word_list(dir / "empty.txt"), DataError);
    CHECK_THROWS_AS(load_word_list(dir / "missing.txt"), DataError);
}

TEST_CASE("bundled word lists load and keep na out of the function words") {
    const auto stop = load_word_list(testutil::data_dir() / "stopwords_en.txt");
    CHECK(stop.count("the") == 1);
    CHECK(stop.count("movie") == 0);

    const auto bn = load_word_list(testutil::data_dir() / "bn_function_words.txt");
    CHECK(bn.count("er") == 1);
    CHECK(bn.count("ta") == 1);
    // the negator carries polarity and must stay a feature
    CHECK(bn.count("na") == 0);
    CHECK(bn.count("bhalo") == 0);
}

TEST_CASE("ngram filter: bigrams allow zero listed tokens, trigrams one") {
    WordLists lists;
    lists.english_stopwords = {"the", "was"};
    lists.bengali_function_words = {"ta"};

    CHECK(ngram_passes_filter({"good", "movie"}, 2, lists));
    CHECK_FALSE(ngram_passes_filter({"the", "movie"}, 2, lists));
    CHECK_FALSE(ngram_passes_filter({"movie", "ta"}, 2, lists));

    CHECK(ngram_passes_filter({"good", "movie", "scene"}, 3, lists));
    CHECK(ngram_passes_filter({"the", "good", "movie"}, 3, lists));
    CHECK_FALSE(ngram_passes_filter({"the", "movie", "was"}, 3, lists));
    CHECK_FALSE(ngram_passes_filter({"ta", "movie", "was"}, 3, lists));
}

TEST_CASE("ngram filter agrees with a direct count over random n-grams") {
    WordLists lists;
    lists.english_stopwords = {"s1", "s2", "s3"};
    lists.bengali_function_words = {"f1", "f2"};
    const std::vector<std::string> vocab = {"s1", "s2", "s3", "f1", "f2",
                                            "w1", "w2", "w3", "w4"};
    DeterministicRng rng(7);
    for (int round = 0; round < 200; ++round) {
        const int n = 2 + static_cast<int>(rng.bounded(2));
        std::vector<std::string> gram;
        std::size_t listed = 0;
        for (int i = 0; i < n; ++i) {
            gram.push_back(vocab[rng.bounded(vocab.size())]);
            if (lists.english_stopwords.count(gram.back())
                || lists.bengali_function_words.count(gram.back()))
                ++listed;
        }
        const bool expected = n == 2 ? listed == 0 : listed <= 1;
        CAPTURE(n);
        CHECK(ngram_passes_filter(gram, n, lists) == expected);
    }
}

TEST_CASE("DeterministicRng: bounded stays in range and shuffle permutes") {
    DeterministicRng rng(123);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 3000; ++i) {
        const auto v = rng.bounded(7);
        CHECK(v < 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 7);  // every residue shows up over 3000 draws
    for (int i = 0; i < 100; ++i) CHECK(rng.bounded(1) == 0);

    std::vector<int> items(50);
    for (int i = 0; i < 50; ++i) items[i] = i;
    auto shuffled = items;
    DeterministicRng a(9), b(9), c(10);
    a.shuffle(shuffled);
    auto sorted = shuffled;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == items);  // a permutation

    auto again = items;
    b.shuffle(again);
    CHECK(again == shuffled);  // same seed, same order

    auto other = items;
    c.shuffle(other);
    CHECK(other != shuffled);  // 50 elements: collision odds are negligible
}

TEST_CASE("DeterministicRng: uniform01 lies in [0, 1)") {
    DeterministicRng rng(5);
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}
