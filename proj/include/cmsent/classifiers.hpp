#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cmsent/corpus.hpp"
#include "cmsent/features.hpp"

namespace cmsent {

enum class Algorithm { Gnb, Bnb, Mnb, Lrc, Sgdc, Lsvc };

std::string_view to_string(Algorithm a);
std::optional<Algorithm> algorithm_from_string(std::string_view s);
const std::vector<Algorithm>& all_algorithms();

struct ClassifierSpec {
    Algorithm algorithm = Algorithm::Mnb;
    double alpha = 1.0;       // additive smoothing (GNB ignores it)
    double lambda = 1e-4;     // L2 strength for the linear family
    std::size_t epochs = 0;   // 0 → per-algorithm default
    double tolerance = 1e-6;  // LRC stopping threshold on the gradient norm
    std::uint64_t seed = 42;  // SGDC/LSVC shuffling

    std::size_t effective_epochs() const;
};

// One trained binary model. The algorithm tag decides which blocks are
// meaningful; the others stay empty. Class order everywhere: [negative,
// positive].
struct Model {
    Algorithm algorithm = Algorithm::Mnb;
    std::size_t dimension = 0;
    ClassifierSpec spec;
    std::string corpus_name;   // provenance
    std::string level;         // provenance, free-form ("fe07" in the pipeline)

    std::array<double, 2> log_prior{};        // naive Bayes family
    std::vector<double> feature_stats[2];     // per class: MNB log-likelihoods,
                                              // BNB log p, GNB means
    std::vector<double> feature_stats2[2];    // BNB log(1-p), GNB variances
    std::vector<double> weights;              // linear family
    double bias = 0.0;
};

// Train on vectorized snippets. Both classes must be present, all vectors
// must agree on the dimension, and every value must be finite (the count
// models additionally reject negative values). Training is deterministic:
// the only randomness is the epoch shuffle, driven by spec.seed.
//
//   GNB  per-class feature means/variances, variances floored at
//        1e-9 · (largest per-feature variance) to keep densities finite
//   BNB  Bernoulli NB on binarized features, add-alpha
//   MNB  multinomial NB on raw counts, add-alpha
//   LRC  L2-regularized logistic regression, full-batch gradient descent
//        with backtracking line search; stops when the gradient norm
//        drops below spec.tolerance (or after effective_epochs() steps)
//   SGDC hinge loss, per-sample SGD, eta_t = 1/(lambda·(t + t0)) with
//        t0 = 1/lambda; returns the final iterate
//   LSVC same updates as SGDC but returns the average of the epoch-boundary
//        iterates over the second half of training
Model train(const ClassifierSpec& spec, const std::vector<FeatureVector>& vectors,
            const std::vector<Polarity>& labels);

// decision_score >= 0 → Positive (ties go to Positive by convention; scores
// of exactly 0 are almost always a degenerate model, not a real tie).
// Naive Bayes: log posterior(pos) − log posterior(neg). Linear: w·x + b.
double decision_score(const Model& model, const FeatureVector& vec);
Polarity predict(const Model& model, const FeatureVector& vec);

// L2-regularized logistic loss and gradient at (weights, bias); exposed so
// the gradient can be checked independently. Returns the loss; fills
// grad_w (size = weights.size()) and grad_b.
double lrc_loss_gradient(const std::vector<double>& weights, double bias,
                         const std::vector<FeatureVector>& vectors,
                         const std::vector<Polarity>& labels, double lambda,
                         std::vector<double>& grad_w, double& grad_b);

// Text round-trip: load_model(save_model(m)) reproduces every number
// bit-exactly (doubles are stored as hex floats).
void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

}  // namespace cmsent
