#include "cmsent/classifiers.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cmsent/error.hpp"
#include "cmsent/rng.hpp"

namespace cmsent {

namespace {

const char* kAlgoNames[] = {"GNB", "BNB", "MNB", "LRC", "SGDC", "LSVC"};

// sparse sample: (column, value) sorted by column
using Sample = std::vector<std::pair<std::uint32_t, double>>;

Sample flatten(const FeatureVector& vec) {
    Sample s;
    s.reserve(vec.ngram_counts.size() + vec.lexicon_values.size());
    for (const auto& [col, count] : vec.ngram_counts)
        s.emplace_back(col, static_cast<double>(count));
    for (std::size_t i = 0; i < vec.lexicon_values.size(); ++i) {
        if (vec.lexicon_values[i] != 0.0)
            s.emplace_back(static_cast<std::uint32_t>(vec.ngram_dimension + i),
                           vec.lexicon_values[i]);
    }
    return s;
}

struct TrainData {
    std::vector<Sample> samples;
    std::vector<double> y;  // -1 negative, +1 positive
    std::size_t dim = 0;
    std::size_t n_pos = 0, n_neg = 0;
};

TrainData prepare(const ClassifierSpec& spec, const std::vector<FeatureVector>& vectors,
                  const std::vector<Polarity>& labels) {
    if (vectors.size() != labels.size())
        throw std::invalid_argument("train: vectors and labels differ in length");
    if (vectors.empty()) throw DataError("train: no training samples");

    const bool counts_only = spec.algorithm == Algorithm::Mnb;
    TrainData data;
    data.dim = vectors[0].dimension();
    data.samples.reserve(vectors.size());
    data.y.reserve(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].dimension() != data.dim)
            throw DataError("train: sample " + std::to_string(i) + " has dimension "
                            + std::to_string(vectors[i].dimension()) + ", expected "
                            + std::to_string(data.dim));
        Sample s = flatten(vectors[i]);
        for (const auto& [col, v] : s) {
            if (col >= data.dim)
                throw DataError("train: sample " + std::to_string(i) + " column out of range");
            if (!std::isfinite(v))
                throw DataError("train: sample " + std::to_string(i) + " has a non-finite value");
            if (counts_only && v < 0.0)
                throw DataError("train: MNB needs non-negative features, sample "
                                + std::to_string(i) + " has a negative value");
        }
        data.samples.push_back(std::move(s));
        if (labels[i] == Polarity::Positive) {
            ++data.n_pos;
            data.y.push_back(1.0);
        } else {
            ++data.n_neg;
            data.y.push_back(-1.0);
        }
    }
    if (data.n_pos == 0 || data.n_neg == 0)
        throw DataError("train: both classes must be present (got " + std::to_string(data.n_neg)
                        + " negative, " + std::to_string(data.n_pos) + " positive)");
    return data;
}

double dot(const std::vector<double>& w, const Sample& s) {
    double acc = 0.0;
    for (const auto& [col, v] : s) acc += w[col] * v;
    return acc;
}

// log(1 + e^t) without overflow
double softplus(double t) {
    if (t > 35.0) return t;
    return std::log1p(std::exp(t));
}

double sigmoid(double t) {
    if (t >= 0.0) {
        const double e = std::exp(-t);
        return 1.0 / (1.0 + e);
    }
    const double e = std::exp(t);
    return e / (1.0 + e);
}

void train_mnb(const ClassifierSpec& spec, const TrainData& data, Model& model) {
    if (spec.alpha <= 0.0) throw DataError("train: smoothing alpha must be positive");
    std::vector<double> counts[2];
    counts[0].assign(data.dim, 0.0);
    counts[1].assign(data.dim, 0.0);
    double totals[2] = {0.0, 0.0};
    for (std::size_t i = 0; i < data.samples.size(); ++i) {
        const int c = data.y[i] > 0 ? 1 : 0;
        for (const auto& [col, v] : data.samples[i]) {
            counts[c][col] += v;
            totals[c] += v;
        }
    }
    const double V = static_cast<double>(data.dim);
    for (int c = 0; c < 2; ++c) {
        model.feature_stats[c].resize(data.dim);
        const double denom = std::log(totals[c] + spec.alpha * V);
        for (std::size_t j = 0; j < data.dim; ++j)
            model.feature_stats[c][j] = std::log(counts[c][j] + spec.alpha) - denom;
    }
}

void train_bnb(const ClassifierSpec& spec, const TrainData& data, Model& model) {
    if (spec.alpha <= 0.0) throw DataError("train: smoothing alpha must be positive");
    std::vector<double> present[2];
    present[0].assign(data.dim, 0.0);
    present[1].assign(data.dim, 0.0);
    const double n_class[2] = {static_cast<double>(data.n_neg), static_cast<double>(data.n_pos)};
    for (std::size_t i = 0; i < data.samples.size(); ++i) {
        const int c = data.y[i] > 0 ? 1 : 0;
        for (const auto& [col, v] : data.samples[i])
            if (v > 0.0) present[c][col] += 1.0;
    }
    for (int c = 0; c < 2; ++c) {
        model.feature_stats[c].resize(data.dim);   // log p
        model.feature_stats2[c].resize(data.dim);  // log (1-p)
        for (std::size_t j = 0; j < data.dim; ++j) {
            const double p = (present[c][j] + spec.alpha) / (n_class[c] + 2.0 * spec.alpha);
            model.feature_stats[c][j] = std::log(p);
            model.feature_stats2[c][j] = std::log1p(-p);
        }
    }
}

void train_gnb(const TrainData& data, Model& model) {
    std::vector<double> sum[2], sumsq[2];
    for (int c = 0; c < 2; ++c) {
        sum[c].assign(data.dim, 0.0);
        sumsq[c].assign(data.dim, 0.0);
    }
    std::vector<double> all_sum(data.dim, 0.0), all_sumsq(data.dim, 0.0);
    for (std::size_t i = 0; i < data.samples.size(); ++i) {
        const int c = data.y[i] > 0 ? 1 : 0;
        for (const auto& [col, v] : data.samples[i]) {
            sum[c][col] += v;
            sumsq[c][col] += v * v;
            all_sum[col] += v;
            all_sumsq[col] += v * v;
        }
    }
    // variance floor: 1e-9 times the largest per-feature variance over the
    // whole training set (absolute 1e-9 when even that is zero)
    const double N = static_cast<double>(data.samples.size());
    double max_var = 0.0;
    for (std::size_t j = 0; j < data.dim; ++j) {
        const double mean = all_sum[j] / N;
        const double var = std::max(0.0, all_sumsq[j] / N - mean * mean);
        max_var = std::max(max_var, var);
    }
    double eps = 1e-9 * max_var;
    if (eps <= 0.0) eps = 1e-9;

    const double n_class[2] = {static_cast<double>(data.n_neg), static_cast<double>(data.n_pos)};
    for (int c = 0; c < 2; ++c) {
        model.feature_stats[c].resize(data.dim);   // means
        model.feature_stats2[c].resize(data.dim);  // variances
        for (std::size_t j = 0; j < data.dim; ++j) {
            const double mean = sum[c][j] / n_class[c];
            double var = std::max(0.0, sumsq[c][j] / n_class[c] - mean * mean);
            if (var < eps) var = eps;
            model.feature_stats[c][j] = mean;
            model.feature_stats2[c][j] = var;
        }
    }
}

void train_lrc(const ClassifierSpec& spec, const TrainData& data,
               const std::vector<FeatureVector>& vectors, const std::vector<Polarity>& labels,
               Model& model) {
    std::vector<double> w(data.dim, 0.0), grad(data.dim, 0.0), trial(data.dim, 0.0);
    double b = 0.0, grad_b = 0.0;
    const std::size_t max_iters = spec.effective_epochs();
    double step = 1.0;

    double loss = lrc_loss_gradient(w, b, vectors, labels, spec.lambda, grad, grad_b);
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        double gnorm_sq = grad_b * grad_b;
        for (const double g : grad) gnorm_sq += g * g;
        if (std::sqrt(gnorm_sq) <= spec.tolerance) break;

        // backtracking line search on the full objective (Armijo, c = 1e-4)
        step = std::min(step * 2.0, 1e6);
        bool moved = false;
        for (int halvings = 0; halvings < 60; ++halvings) {
            for (std::size_t j = 0; j < data.dim; ++j) trial[j] = w[j] - step * grad[j];
            const double trial_b = b - step * grad_b;
            double reg = 0.0;
            for (const double wj : trial) reg += wj * wj;
            double trial_loss = spec.lambda * 0.5 * reg;
            double data_loss = 0.0;
            for (std::size_t i = 0; i < data.samples.size(); ++i) {
                const double z = dot(trial, data.samples[i]) + trial_b;
                data_loss += softplus(-data.y[i] * z);
            }
            trial_loss += data_loss / static_cast<double>(data.samples.size());
            if (trial_loss <= loss - 1e-4 * step * gnorm_sq) {
                w.swap(trial);
                b = trial_b;
                loss = trial_loss;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;  // no descent step found: numerically converged
        loss = lrc_loss_gradient(w, b, vectors, labels, spec.lambda, grad, grad_b);
    }
    model.weights = std::move(w);
    model.bias = b;
}

void train_linear_sgd(const ClassifierSpec& spec, const TrainData& data, Model& model) {
    if (spec.lambda <= 0.0) throw DataError("train: lambda must be positive");
    const std::size_t epochs = spec.effective_epochs();
    std::vector<double> w(data.dim, 0.0);
    double scale = 1.0;  // real weights are scale * w
    double b = 0.0;
    const double lambda = spec.lambda;
    const double t0 = 1.0 / lambda;

    const bool average = spec.algorithm == Algorithm::Lsvc;
    std::vector<double> w_sum;
    double b_sum = 0.0;
    std::size_t n_avg = 0;
    const std::size_t avg_from = epochs / 2;  // epoch-boundary tail average
    if (average) w_sum.assign(data.dim, 0.0);

    std::vector<std::size_t> order(data.samples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    DeterministicRng rng(spec.seed);

    std::uint64_t t = 0;
    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
        rng.shuffle(order);
        for (const std::size_t i : order) {
            ++t;
            const double eta = 1.0 / (lambda * (static_cast<double>(t) + t0));
            const Sample& x = data.samples[i];
            const double y = data.y[i];
            const double margin = y * (scale * dot(w, x) + b);
            scale *= 1.0 - eta * lambda;  // L2 shrink, bias excluded
            if (scale < 1e-9) {
                for (auto& wj : w) wj *= scale;
                scale = 1.0;
            }
            if (margin < 1.0) {
                const double push = eta * y / scale;
                for (const auto& [col, v] : x) w[col] += push * v;
                b += eta * y;
            }
        }
        if (average && epoch >= avg_from) {
            for (std::size_t j = 0; j < data.dim; ++j) w_sum[j] += scale * w[j];
            b_sum += b;
            ++n_avg;
        }
    }

    model.weights.assign(data.dim, 0.0);
    if (average && n_avg > 0) {
        for (std::size_t j = 0; j < data.dim; ++j)
            model.weights[j] = w_sum[j] / static_cast<double>(n_avg);
        model.bias = b_sum / static_cast<double>(n_avg);
    } else {
        for (std::size_t j = 0; j < data.dim; ++j) model.weights[j] = scale * w[j];
        model.bias = b;
    }
}

}  // namespace

std::string_view to_string(Algorithm a) { return kAlgoNames[static_cast<int>(a)]; }

std::optional<Algorithm> algorithm_from_string(std::string_view s) {
    std::string up(s);
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) {
        return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : static_cast<char>(c);
    });
    for (int i = 0; i < 6; ++i)
        if (up == kAlgoNames[i]) return static_cast<Algorithm>(i);
    return std::nullopt;
}

const std::vector<Algorithm>& all_algorithms() {
    static const std::vector<Algorithm> algos = {Algorithm::Gnb,  Algorithm::Bnb,
                                                 Algorithm::Mnb,  Algorithm::Lrc,
                                                 Algorithm::Sgdc, Algorithm::Lsvc};
    return algos;
}

std::size_t ClassifierSpec::effective_epochs() const {
    if (epochs > 0) return epochs;
    switch (algorithm) {
        case Algorithm::Lrc: return 1000;
        case Algorithm::Sgdc:
        case Algorithm::Lsvc: return 50;
        default: return 1;  // closed-form trainers
    }
}

Model train(const ClassifierSpec& spec, const std::vector<FeatureVector>& vectors,
            const std::vector<Polarity>& labels) {
    TrainData data = prepare(spec, vectors, labels);

    Model model;
    model.algorithm = spec.algorithm;
    model.dimension = data.dim;
    model.spec = spec;
    const double N = static_cast<double>(data.samples.size());
    model.log_prior[0] = std::log(static_cast<double>(data.n_neg) / N);
    model.log_prior[1] = std::log(static_cast<double>(data.n_pos) / N);

    switch (spec.algorithm) {
        case Algorithm::Mnb: train_mnb(spec, data, model); break;
        case Algorithm::Bnb: train_bnb(spec, data, model); break;
        case Algorithm::Gnb: train_gnb(data, model); break;
        case Algorithm::Lrc: train_lrc(spec, data, vectors, labels, model); break;
        case Algorithm::Sgdc:
        case Algorithm::Lsvc: train_linear_sgd(spec, data, model); break;
    }
    return model;
}

double decision_score(const Model& model, const FeatureVector& vec) {
    if (vec.dimension() != model.dimension)
        throw DataError("decision_score: vector dimension " + std::to_string(vec.dimension())
                        + " does not match model dimension " + std::to_string(model.dimension));
    const Sample s = flatten(vec);
    for (const auto& [col, v] : s) {
        (void)col;
        if (!std::isfinite(v)) throw DataError("decision_score: non-finite feature value");
    }

    switch (model.algorithm) {
        case Algorithm::Mnb: {
            double score[2];
            for (int c = 0; c < 2; ++c) {
                score[c] = model.log_prior[c];
                for (const auto& [col, v] : s) score[c] += v * model.feature_stats[c][col];
            }
            return score[1] - score[0];
        }
        case Algorithm::Bnb: {
            double score[2];
            for (int c = 0; c < 2; ++c) {
                double acc = model.log_prior[c];
                for (const double l1mp : model.feature_stats2[c]) acc += l1mp;
                for (const auto& [col, v] : s) {
                    if (v > 0.0)
                        acc += model.feature_stats[c][col] - model.feature_stats2[c][col];
                }
                score[c] = acc;
            }
            return score[1] - score[0];
        }
        case Algorithm::Gnb: {
            double score[2];
            for (int c = 0; c < 2; ++c) {
                const auto& mean = model.feature_stats[c];
                const auto& var = model.feature_stats2[c];
                double acc = model.log_prior[c];
                // baseline assumes x = 0 everywhere, then corrects non-zeros
                for (std::size_t j = 0; j < model.dimension; ++j) {
                    acc += -0.5 * std::log(2.0 * std::numbers::pi * var[j])
                           - mean[j] * mean[j] / (2.0 * var[j]);
                }
                for (const auto& [col, v] : s)
                    acc += (2.0 * v * mean[col] - v * v) / (2.0 * var[col]);
                score[c] = acc;
            }
            return score[1] - score[0];
        }
        case Algorithm::Lrc:
        case Algorithm::Sgdc:
        case Algorithm::Lsvc: {
            double z = model.bias;
            for (const auto& [col, v] : s) z += model.weights[col] * v;
            return z;
        }
    }
    throw std::logic_error("decision_score: unknown algorithm");
}

Polarity predict(const Model& model, const FeatureVector& vec) {
    return decision_score(model, vec) >= 0.0 ? Polarity::Positive : Polarity::Negative;
}

double lrc_loss_gradient(const std::vector<double>& weights, double bias,
                         const std::vector<FeatureVector>& vectors,
                         const std::vector<Polarity>& labels, double lambda,
                         std::vector<double>& grad_w, double& grad_b) {
    if (vectors.size() != labels.size() || vectors.empty())
        throw std::invalid_argument("lrc_loss_gradient: bad inputs");
    grad_w.assign(weights.size(), 0.0);
    grad_b = 0.0;
    double data_loss = 0.0;
    const double N = static_cast<double>(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        const Sample s = flatten(vectors[i]);
        double z = bias;
        for (const auto& [col, v] : s) z += weights[col] * v;
        const double y = labels[i] == Polarity::Positive ? 1.0 : -1.0;
        data_loss += softplus(-y * z);
        const double coeff = -y * sigmoid(-y * z) / N;
        for (const auto& [col, v] : s) grad_w[col] += coeff * v;
        grad_b += coeff;
    }
    double reg = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        reg += weights[j] * weights[j];
        grad_w[j] += lambda * weights[j];
    }
    return data_loss / N + lambda * 0.5 * reg;
}

namespace {

std::string fmt_hex(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::hex);
    return std::string(buf, res.ptr);
}

double parse_hex(std::string_view s, const std::string& where) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v, std::chars_format::hex);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw DataError(where + ": bad hex float \"" + std::string(s) + "\"");
    return v;
}

void write_block(std::ofstream& out, const char* name, const std::vector<double>& values) {
    out << name << ' ' << values.size();
    for (const double v : values) out << ' ' << fmt_hex(v);
    out << '\n';
}

std::vector<double> read_block(std::istream& in, const char* name, const std::string& where) {
    std::string line;
    if (!std::getline(in, line)) throw DataError(where + ": truncated (expected " + name + ")");
    std::istringstream ls(line);
    std::string tag;
    std::size_t count = 0;
    if (!(ls >> tag >> count) || tag != name)
        throw DataError(where + ": expected \"" + name + "\" block");
    std::vector<double> values;
    values.reserve(count);
    std::string tok;
    for (std::size_t i = 0; i < count; ++i) {
        if (!(ls >> tok)) throw DataError(where + ": short " + name + " block");
        values.push_back(parse_hex(tok, where));
    }
    if (ls >> tok) throw DataError(where + ": trailing data in " + name + " block");
    return values;
}

}  // namespace

void save_model(const Model& model, const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write model: " + path.string());
    out << "cmsent-model v1\n";
    out << "algorithm " << to_string(model.algorithm) << '\n';
    out << "dimension " << model.dimension << '\n';
    out << "corpus " << model.corpus_name << '\n';
    out << "level " << model.level << '\n';
    out << "alpha " << fmt_hex(model.spec.alpha) << '\n';
    out << "lambda " << fmt_hex(model.spec.lambda) << '\n';
    out << "epochs " << model.spec.epochs << '\n';
    out << "tolerance " << fmt_hex(model.spec.tolerance) << '\n';
    out << "seed " << model.spec.seed << '\n';
    out << "log_prior " << fmt_hex(model.log_prior[0]) << ' ' << fmt_hex(model.log_prior[1])
        << '\n';
    write_block(out, "stats_neg", model.feature_stats[0]);
    write_block(out, "stats_pos", model.feature_stats[1]);
    write_block(out, "stats2_neg", model.feature_stats2[0]);
    write_block(out, "stats2_pos", model.feature_stats2[1]);
    write_block(out, "weights", model.weights);
    out << "bias " << fmt_hex(model.bias) << '\n';
    if (!out) throw DataError("short write: " + path.string());
}

Model load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open model: " + path.string());
    const std::string where = path.string();
    std::string line;
    auto next = [&](const char* what) -> std::string {
        if (!std::getline(in, line))
            throw DataError(where + ": truncated (expected " + what + ")");
        return line;
    };
    auto field = [&](const char* name) -> std::string {
        const std::string l = next(name);
        const std::string prefix = std::string(name) + " ";
        if (l.rfind(prefix, 0) != 0)
            throw DataError(where + ": expected \"" + name + "\" line, got \"" + l + "\"");
        return l.substr(prefix.size());
    };

    if (next("magic") != "cmsent-model v1")
        throw DataError(where + ": not a model file");
    Model model;
    const std::string algo_str = field("algorithm");
    const auto algo = algorithm_from_string(algo_str);
    if (!algo) throw DataError(where + ": unknown algorithm \"" + algo_str + "\"");
    model.algorithm = *algo;
    model.spec.algorithm = *algo;
    try {
        model.dimension = std::stoull(field("dimension"));
    } catch (const std::exception&) {
        throw DataError(where + ": bad dimension line");
    }
    model.corpus_name = field("corpus");
    model.level = field("level");
    model.spec.alpha = parse_hex(field("alpha"), where);
    model.spec.lambda = parse_hex(field("lambda"), where);
    try {
        model.spec.epochs = std::stoull(field("epochs"));
    } catch (const std::exception&) {
        throw DataError(where + ": bad epochs line");
    }
    model.spec.tolerance = parse_hex(field("tolerance"), where);
    try {
        model.spec.seed = std::stoull(field("seed"));
    } catch (const std::exception&) {
        throw DataError(where + ": bad seed line");
    }
    {
        const std::string priors = field("log_prior");
        const std::size_t cut = priors.find(' ');
        if (cut == std::string::npos) throw DataError(where + ": bad log_prior line");
        model.log_prior[0] = parse_hex(priors.substr(0, cut), where);
        model.log_prior[1] = parse_hex(priors.substr(cut + 1), where);
    }
    model.feature_stats[0] = read_block(in, "stats_neg", where);
    model.feature_stats[1] = read_block(in, "stats_pos", where);
    model.feature_stats2[0] = read_block(in, "stats2_neg", where);
    model.feature_stats2[1] = read_block(in, "stats2_pos", where);
    model.weights = read_block(in, "weights", where);
    model.bias = parse_hex(field("bias"), where);

    for (const auto& block : {model.feature_stats[0], model.feature_stats[1],
                              model.feature_stats2[0], model.feature_stats2[1], model.weights}) {
        if (!block.empty() && block.size() != model.dimension)
            throw DataError(where + ": block size does not match dimension");
    }
    return model;
}

}  // namespace cmsent
