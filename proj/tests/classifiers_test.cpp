#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "cmsent/classifiers.hpp"
#include "cmsent/error.hpp"
#include "cmsent/rng.hpp"

#include "test_util.hpp"

using namespace cmsent;

namespace {

// dense counts -> sparse FeatureVector
FeatureVector vec_of(const std::vector<std::uint32_t>& counts,
                     std::vector<double> lexicon = {}) {
    FeatureVector v;
    v.ngram_dimension = static_cast<std::uint32_t>(counts.size());
    for (std::uint32_t j = 0; j < counts.size(); ++j)
        if (counts[j] > 0) v.ngram_counts.emplace_back(j, counts[j]);
    v.lexicon_values = std::move(lexicon);
    return v;
}

std::vector<double> dense(const FeatureVector& v) {
    std::vector<double> out(v.dimension(), 0.0);
    for (const auto& [col, count] : v.ngram_counts) out[col] = count;
    for (std::size_t i = 0; i < v.lexicon_values.size(); ++i)
        out[v.ngram_dimension + i] = v.lexicon_values[i];
    return out;
}

// the frozen hand example: vocab {good, movie, bad}
struct MnbOracle {
    std::vector<FeatureVector> vectors = {
        vec_of({2, 1, 0}), vec_of({1, 0, 0}),  // positive: "good good movie", "good"
        vec_of({0, 1, 1}), vec_of({0, 0, 2}),  // negative: "bad movie", "bad bad"
    };
    std::vector<Polarity> labels = {Polarity::Positive, Polarity::Positive,
                                    Polarity::Negative, Polarity::Negative};
};

std::vector<FeatureVector> random_count_vectors(DeterministicRng& rng, std::size_t n,
                                                std::size_t dim) {
    std::vector<FeatureVector> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::uint32_t> counts(dim, 0);
        for (std::size_t j = 0; j < dim; ++j)
            if (rng.uniform01() < 0.4) counts[j] = static_cast<std::uint32_t>(1 + rng.bounded(3));
        out.push_back(vec_of(counts));
    }
    return out;
}

std::vector<Polarity> alternating_labels(std::size_t n) {
    std::vector<Polarity> labels;
    for (std::size_t i = 0; i < n; ++i)
        labels.push_back(i % 2 ? Polarity::Negative : Polarity::Positive);
    return labels;
}

}  // namespace

TEST_CASE("effective epochs per algorithm") {
    ClassifierSpec spec;
    spec.algorithm = Algorithm::Lrc;
    CHECK(spec.effective_epochs() == 1000);
    spec.algorithm = Algorithm::Sgdc;
    CHECK(spec.effective_epochs() == 50);
    spec.algorithm = Algorithm::Lsvc;
    CHECK(spec.effective_epochs() == 50);
    spec.algorithm = Algorithm::Mnb;
    CHECK(spec.effective_epochs() == 1);
    spec.epochs = 7;
    spec.algorithm = Algorithm::Sgdc;
    CHECK(spec.effective_epochs() == 7);
}

TEST_CASE("MNB reproduces the add-1 smoothing example exactly") {
    MnbOracle oracle;
    ClassifierSpec spec;
    spec.algorithm = Algorithm::Mnb;
    const Model model = train(spec, oracle.vectors, oracle.labels);

    REQUIRE(model.dimension == 3);
    const double lp = std::log(2.0 / 4.0);
    CHECK(model.log_prior[0] == doctest::Approx(lp).epsilon(1e-15));
    CHECK(model.log_prior[1] == doctest::Approx(lp).epsilon(1e-15));

    // positive class: counts good 3, movie 1, bad 0; total 4; vocab 3
    CHECK(model.feature_stats[1][0] == doctest::Approx(std::log(4.0 / 7.0)).epsilon(1e-15));
    CHECK(model.feature_stats[1][1] == doctest::Approx(std::log(2.0 / 7.0)).epsilon(1e-15));
    CHECK(model.feature_stats[1][2] == doctest::Approx(std::log(1.0 / 7.0)).epsilon(1e-15));
    CHECK(model.feature_stats[0][0] == doctest::Approx(std::log(1.0 / 7.0)).epsilon(1e-15));
    CHECK(model.feature_stats[0][1] == doctest::Approx(std::log(2.0 / 7.0)).epsilon(1e-15));
    CHECK(model.feature_stats[0][2] == doctest::Approx(std::log(4.0 / 7.0)).epsilon(1e-15));

    // "good good good": priors cancel, score = 3 (log 4/7 - log 1/7) = 3 ln 4
    const FeatureVector query = vec_of({3, 0, 0});
    const double score = decision_score(model, query);
    CHECK(score == doctest::Approx(3.0 * std::log(4.0)).epsilon(1e-14));
    CHECK(score == doctest::Approx(4.158883083359672).epsilon(1e-13));
    CHECK(predict(model, query) == Polarity::Positive);
    CHECK(predict(model, vec_of({0, 0, 1})) == Polarity::Negative);
}

TEST_CASE("MNB smoothing strength follows alpha") {
    MnbOracle oracle;
    ClassifierSpec spec;
    spec.algorithm = Algorithm::Mnb;
    spec.alpha = 0.5;
    const Model model = train(spec, oracle.vectors, oracle.labels);
    CHECK(model.feature_stats[1][0] == doctest::Approx(std::log(3.5 / 5.5)).epsilon(1e-15));
    CHECK(model.feature_stats[1][2] == doctest::Approx(std::log(0.5 / 5.5)).epsilon(1e-15));
}

TEST_CASE("BNB matches a dense recomputation from its parameters") {
    DeterministicRng rng(31);
    const auto vectors = random_count_vectors(rng, 24, 6);
    const auto labels = alternating_labels(24);

    ClassifierSpec spec;
    spec.algorithm = Algorithm::Bnb;
    const Model model = train(spec, vectors, labels);

    for (int i = 0; i < 10; ++i) {
        const auto q = random_count_vectors(rng, 1, 6)[0];
        const auto x = dense(q);
        double expected = model.log_prior[1] - model.log_prior[0];
        for (std::size_t j = 0; j < x.size(); ++j) {
            const bool on = x[j] != 0.0;
            expected += on ? model.feature_stats[1][j] : model.feature_stats2[1][j];
            expected -= on ? model.feature_stats[0][j] : model.feature_stats2[0][j];
        }
        CHECK(decision_score(model, q) == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("GNB sparse scoring equals the dense density computation") {
    DeterministicRng rng(77);
    const auto vectors = random_count_vectors(rng, 30, 5);
    const auto labels = alternating_labels(30);

    ClassifierSpec spec;
    spec.algorithm = Algorithm::Gnb;
    const Model model = train(spec, vectors, labels);

    const auto log_normal = [](double x, double mean, double var) {
        return -0.5 * std::log(2.0 * std::numbers::pi * var)
               - (x - mean) * (x - mean) / (2.0 * var);
    };
    for (int i = 0; i < 10; ++i) {
        const auto q = random_count_vectors(rng, 1, 5)[0];
        const auto x = dense(q);
        double expected = model.log_prior[1] - model.log_prior[0];
        for (std::size_t j = 0; j < x.size(); ++j) {
            expected += log_normal(x[j], model.feature_stats[1][j], model.feature_stats2[1][j]);
            expected -= log_normal(x[j], model.feature_stats[0][j], model.feature_stats2[0][j]);
        }
        CHECK(decision_score(model, q) == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("GNB survives zero-variance features") {
    // second feature is constant per class; the variance floor keeps the
    // densities finite and the strong feature decides
    std::vector<FeatureVector> vectors = {vec_of({3, 1}), vec_of({3, 1}), vec_of({0, 1}),
                                          vec_of({0, 1})};
    std::vector<Polarity> labels = {Polarity::Positive, Polarity::Positive,
                                    Polarity::Negative, Polarity::Negative};
    ClassifierSpec spec;
    spec.algorithm = Algorithm::Gnb;
    const Model model = train(spec, vectors, labels);
    const double s = decision_score(model, vec_of({3, 1}));
    CHECK(std::isfinite(s));
    CHECK(s > 0.0);
    CHECK(decision_score(model, vec_of({0, 1})) < 0.0);
}

TEST_CASE("LRC analytic gradient matches central differences") {
    DeterministicRng rng(5);
    const std::size_t dim = 12;
    auto vectors = random_count_vectors(rng, 40, dim);
    const auto labels = alternating_labels(40);
    const double lambda = 1e-3;

    for (int point = 0; point < 2; ++point) {
        std::vector<double> w(dim);
        for (auto& wi : w) wi = rng.uniform01() * 2.0 - 1.0;
        const double b = rng.uniform01() - 0.5;

        std::vector<double> grad(dim);
        double grad_b = 0.0;
        lrc_loss_gradient(w, b, vectors, labels, lambda, grad, grad_b);

        const double h = 1e-6;
        std::vector<double> scratch(dim);
        double scratch_b = 0.0;
        for (std::size_t j = 0; j <= dim; ++j) {
            auto w_hi = w;
            auto w_lo = w;
            double b_hi = b, b_lo = b;
            if (j < dim) {
                w_hi[j] += h;
                w_lo[j] -= h;
            } else {
                b_hi += h;
                b_lo -= h;
            }
            const double hi = lrc_loss_gradient(w_hi, b_hi, vectors, labels, lambda,
                                                scratch, scratch_b);
            const double lo = lrc_loss_gradient(w_lo, b_lo, vectors, labels, lambda,
                                                scratch, scratch_b);
            const double numeric = (hi - lo) / (2.0 * h);
            const double analytic = j < dim ? grad[j] : grad_b;
            CHECK(std::abs(analytic - numeric)
                  <= 1e-5 * std::max(1.0, std::abs(analytic)));
        }
    }
}

namespace {

// labels decided by a fixed hyperplane with a margin, so the set is
// guaranteed separable
void separable_set(DeterministicRng& rng, std::size_t n, std::size_t dim,
                   std::vector<FeatureVector>& vectors, std::vector<Polarity>& labels) {
    std::vector<double> w_star(dim);
    for (auto& wi : w_star) wi = rng.uniform01() * 2.0 - 1.0;
    while (vectors.size() < n) {
        std::vector<std::uint32_t> counts(dim, 0);
        for (std::size_t j = 0; j < dim; ++j)
            if (rng.uniform01() < 0.5) counts[j] = static_cast<std::uint32_t>(1 + rng.bounded(3));
        double score = 0.0;
        for (std::size_t j = 0; j < dim; ++j) score += w_star[j] * counts[j];
        if (std::abs(score) < 0.5) continue;
        vectors.push_back(vec_of(counts));
        labels.push_back(score > 0 ? Polarity::Positive : Polarity::Negative);
    }
}

}  // namespace

TEST_CASE("linear family fits separable toy sets perfectly") {
    DeterministicRng rng(2024);
    std::vector<FeatureVector> vectors;
    std::vector<Polarity> labels;
    separable_set(rng, 90, 8, vectors, labels);
    REQUIRE(std::count(labels.begin(), labels.end(), Polarity::Positive) > 0);
    REQUIRE(std::count(labels.begin(), labels.end(), Polarity::Negative) > 0);

    for (const auto algo : {Algorithm::Lrc, Algorithm::Sgdc, Algorithm::Lsvc}) {
        CAPTURE(to_string(algo));
        ClassifierSpec spec;
        spec.algorithm = algo;
        const Model model = train(spec, vectors, labels);
        std::size_t correct = 0;
        for (std::size_t i = 0; i < vectors.size(); ++i)
            if (predict(model, vectors[i]) == labels[i]) ++correct;
        CHECK(correct == vectors.size());
    }
}

TEST_CASE("SGDC and LSVC are seed-deterministic") {
    DeterministicRng rng(404);
    const auto vectors = random_count_vectors(rng, 40, 6);
    const auto labels = alternating_labels(40);

    for (const auto algo : {Algorithm::Sgdc, Algorithm::Lsvc}) {
        ClassifierSpec spec;
        spec.algorithm = algo;
        spec.seed = 11;
        const Model a = train(spec, vectors, labels);
        const Model b = train(spec, vectors, labels);
        CHECK(a.weights == b.weights);
        CHECK(a.bias == b.bias);
    }
}

TEST_CASE("models round-trip through disk bit-exactly") {
    const auto dir = testutil::fresh_dir("models");
    DeterministicRng rng(808);
    const auto vectors = random_count_vectors(rng, 30, 7);
    const auto labels = alternating_labels(30);

    for (const auto algo : all_algorithms()) {
        CAPTURE(to_string(algo));
        ClassifierSpec spec;
        spec.algorithm = algo;
        spec.alpha = 0.7;
        spec.lambda = 3e-4;
        spec.seed = 5;
        Model model = train(spec, vectors, labels);
        model.corpus_name = "round-trip";
        model.level = "fe08";

        const auto path = dir / (std::string(to_string(algo)) + ".model");
        save_model(model, path);
        const Model back = load_model(path);

        CHECK(back.algorithm == model.algorithm);
        CHECK(back.dimension == model.dimension);
        CHECK(back.corpus_name == model.corpus_name);
        CHECK(back.level == model.level);
        CHECK(back.spec.alpha == model.spec.alpha);
        CHECK(back.spec.lambda == model.spec.lambda);
        CHECK(back.spec.seed == model.spec.seed);
        CHECK(back.log_prior == model.log_prior);
        for (int c = 0; c < 2; ++c) {
            CHECK(back.feature_stats[c] == model.feature_stats[c]);
            CHECK(back.feature_stats2[c] == model.feature_stats2[c]);
        }
        CHECK(back.weights == model.weights);
        CHECK(back.bias == model.bias);

        for (int i = 0; i < 5; ++i) {
            const auto q = random_count_vectors(rng, 1, 7)[0];
            CHECK(decision_score(back, q) == decision_score(model, q));
        }
    }
}

TEST_CASE("training and scoring reject malformed input") {
    ClassifierSpec spec;
    spec.algorithm = Algorithm::Mnb;

    std::vector<FeatureVector> one_class = {vec_of({1, 0}), vec_of({0, 1})};
    std::vector<Polarity> same = {Polarity::Positive, Polarity::Positive};
    CHECK_THROWS_AS(train(spec, one_class, same), DataError);

    std::vector<FeatureVector> mixed_dims = {vec_of({1, 0}), vec_of({1, 0, 2})};
    std::vector<Polarity> both = {Polarity::Positive, Polarity::Negative};
    CHECK_THROWS_AS(train(spec, mixed_dims, both), DataError);

    // count models reject negative lexicon values
    std::vector<FeatureVector> negative = {vec_of({1}, {-1.0}), vec_of({2}, {0.5})};
    CHECK_THROWS_AS(train(spec, negative, both), DataError);

    MnbOracle oracle;
    const Model model = train(spec, oracle.vectors, oracle.labels);
    CHECK_THROWS_AS(decision_score(model, vec_of({1, 0})), DataError);
}
