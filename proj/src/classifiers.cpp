#include "oge/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "oge/errors.hpp"
#include "oge/rng.hpp"
#include "oge/version.hpp"

namespace oge {

namespace {

const char* kAlgorithmNames[] = {"decision_tree",        "bagged_trees", "rusboost_trees",
                                 "gaussian_naive_bayes", "knn",          "logistic_regression"};

}  // namespace

Algorithm algorithm_from_string(const std::string& name) {
    for (std::size_t i = 0; i < std::size(kAlgorithmNames); ++i)
        if (name == kAlgorithmNames[i]) return Algorithm(i);
    throw ConfigError("unknown algorithm: '" + name + "'");
}

std::string algorithm_to_string(Algorithm a) { return kAlgorithmNames[std::size_t(a)]; }

const std::vector<Algorithm>& all_algorithms() {
    static const std::vector<Algorithm> all = {
        Algorithm::decision_tree,        Algorithm::bagged_trees, Algorithm::rusboost_trees,
        Algorithm::gaussian_naive_bayes, Algorithm::knn,          Algorithm::logistic_regression};
    return all;
}

void ClassifierSpec::validate() const {
    if (max_splits < 1) throw ConfigError("max_splits must be >= 1");
    if (min_leaf < 1) throw ConfigError("min_leaf must be >= 1");
    if (learners < 1) throw ConfigError("learners must be >= 1");
    if (!(learning_rate > 0.0) || learning_rate > 1.0)
        throw ConfigError("learning_rate must be in (0, 1]");
    if (features_per_split < 0) throw ConfigError("features_per_split must be >= 0");
    if (knn_k < 1) throw ConfigError("knn_k must be >= 1");
    if (logit_iterations < 1) throw ConfigError("logit_iterations must be >= 1");
    if (logit_l2 < 0.0) throw ConfigError("logit_l2 must be >= 0");
    if (!(decision_threshold > 0.0) || !(decision_threshold < 1.0))
        throw ConfigError("decision_threshold must be in (0, 1)");
}

double DecisionTree::predict(std::span<const double> row) const {
    int i = 0;
    while (!nodes[std::size_t(i)].is_leaf()) {
        const TreeNode& nd = nodes[std::size_t(i)];
        i = row[std::size_t(nd.feature)] < nd.threshold ? nd.left : nd.right;
    }
    return nodes[std::size_t(i)].p_glare;
}

// ---------------------------------------------------------------------------
// CART with weighted Gini impurity and a breadth-first split budget.

namespace {

struct SortedItem {
    double x;
    double w;
    int y;
};

struct SplitChoice {
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
};

double gini(double wpos, double wsum) {
    if (wsum <= 0.0) return 0.0;
    double p = wpos / wsum;
    return 1.0 - p * p - (1.0 - p) * (1.0 - p);
}

}  // namespace

DecisionTree fit_decision_tree(const std::vector<std::vector<double>>& rows,
                               const std::vector<int>& labels,
                               const std::vector<std::size_t>& subset,
                               const std::vector<double>& weights, int max_splits, int min_leaf,
                               int features_per_split, std::uint64_t feature_seed) {
    if (subset.empty()) throw TrainingError("empty training subset");
    if (subset.size() != weights.size()) throw TrainingError("subset/weight size mismatch");
    const int m = int(rows.front().size());

    DecisionTree tree;
    tree.nodes.emplace_back();
    std::deque<std::pair<int, std::vector<std::size_t>>> queue;  // (node id, item indices)
    {
        std::vector<std::size_t> all(subset.size());
        for (std::size_t i = 0; i < subset.size(); ++i) all[i] = i;
        queue.emplace_back(0, std::move(all));
    }
    int splits_used = 0;

    while (!queue.empty()) {
        auto [id, items] = std::move(queue.front());
        queue.pop_front();

        double wsum = 0.0, wpos = 0.0;
        bool mixed = false;
        for (std::size_t it : items) {
            wsum += weights[it];
            if (labels[subset[it]] == 1) wpos += weights[it];
            if (labels[subset[it]] != labels[subset[items.front()]]) mixed = true;
        }
        tree.nodes[std::size_t(id)].p_glare = wsum > 0.0 ? wpos / wsum : 0.5;

        if (splits_used >= max_splits || !mixed || items.size() < 2 * std::size_t(min_leaf))
            continue;

        // candidate features: all of them, or a per-node random subset
        std::vector<std::size_t> feats;
        if (features_per_split > 0 && features_per_split < m) {
            Rng frng(Rng::mix(feature_seed, std::uint64_t(id)));
            feats = frng.sample_without_replacement(std::size_t(m), std::size_t(features_per_split));
        } else {
            feats.resize(std::size_t(m));
            for (int f = 0; f < m; ++f) feats[std::size_t(f)] = std::size_t(f);
        }

        const double parent_g = gini(wpos, wsum);
        SplitChoice best;
        std::vector<SortedItem> si(items.size());
        for (std::size_t f : feats) {
            for (std::size_t i = 0; i < items.size(); ++i) {
                std::size_t row = subset[items[i]];
                si[i] = {rows[row][f], weights[items[i]], labels[row]};
            }
            std::sort(si.begin(), si.end(),
                      [](const SortedItem& a, const SortedItem& b) { return a.x < b.x; });
            double wl = 0.0, wl_pos = 0.0;
            for (std::size_t i = 0; i + 1 < si.size(); ++i) {
                wl += si[i].w;
                if (si[i].y == 1) wl_pos += si[i].w;
                if (!(si[i].x < si[i + 1].x)) continue;
                if (i + 1 < std::size_t(min_leaf) || si.size() - i - 1 < std::size_t(min_leaf))
                    continue;
                double wr = wsum - wl, wr_pos = wpos - wl_pos;
                double child = (wl * gini(wl_pos, wl) + wr * gini(wr_pos, wr)) / wsum;
                double gain = parent_g - child;
                // strict improvement keeps the first feature / lowest
                // threshold on ties
                if (gain > best.gain + 1e-12) {
                    double t = (si[i].x + si[i + 1].x) / 2.0;
                    if (!(t > si[i].x)) t = si[i + 1].x;
                    best = {int(f), t, gain};
                }
            }
        }

        if (best.feature < 0) continue;

        int left_id = int(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes.emplace_back();
        TreeNode& nd = tree.nodes[std::size_t(id)];
        nd.feature = best.feature;
        nd.threshold = best.threshold;
        nd.left = left_id;
        nd.right = left_id + 1;
        ++splits_used;

        std::vector<std::size_t> left_items, right_items;
        for (std::size_t it : items)
            (rows[subset[it]][std::size_t(best.feature)] < best.threshold ? left_items
                                                                          : right_items)
                .push_back(it);
        queue.emplace_back(left_id, std::move(left_items));
        queue.emplace_back(left_id + 1, std::move(right_items));
    }
    return tree;
}

// ---------------------------------------------------------------------------
// training

namespace {

Standardization fit_standardization(const FeatureMatrix& data) {
    Standardization st;
    const std::size_t n = data.n(), m = data.m();
    st.mean.assign(m, 0.0);
    st.scale.assign(m, 1.0);
    for (const auto& r : data.rows)
        for (std::size_t j = 0; j < m; ++j) st.mean[j] += r[j];
    for (std::size_t j = 0; j < m; ++j) st.mean[j] /= double(n);
    std::vector<double> var(m, 0.0);
    for (const auto& r : data.rows)
        for (std::size_t j = 0; j < m; ++j) {
            double d = r[j] - st.mean[j];
            var[j] += d * d;
        }
    for (std::size_t j = 0; j < m; ++j) {
        double sd = std::sqrt(var[j] / double(n));
        st.scale[j] = sd > 0.0 ? sd : 1.0;
    }
    return st;
}

std::vector<double> standardize_row(const Standardization& st, std::span<const double> row) {
    std::vector<double> z(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) z[j] = (row[j] - st.mean[j]) / st.scale[j];
    return z;
}

void train_bagged(TrainedModel& model, const FeatureMatrix& data) {
    const std::size_t n = data.n();
    const int m = int(data.m());
    int fps = model.spec.features_per_split;
    if (fps == 0) fps = std::max(1, int(std::lround(std::sqrt(double(m)))));
    const double w0 = 1.0 / double(n);
    for (int b = 0; b < model.spec.learners; ++b) {
        Rng rng(Rng::mix(model.spec.seed, std::uint64_t(2 * b)));
        std::vector<std::size_t> boot(n);
        for (std::size_t i = 0; i < n; ++i) boot[i] = std::size_t(rng.below(n));
        std::sort(boot.begin(), boot.end());
        std::vector<double> w(n, w0);
        model.trees.push_back(fit_decision_tree(data.rows, data.labels, boot, w,
                                                model.spec.max_splits, model.spec.min_leaf, fps,
                                                Rng::mix(model.spec.seed, std::uint64_t(2 * b + 1))));
        model.tree_weights.push_back(1.0);
    }
}

void train_rusboost(TrainedModel& model, const FeatureMatrix& data) {
    const std::size_t n = data.n();
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < n; ++i) (data.labels[i] == 1 ? pos : neg).push_back(i);
    const bool pos_minority = pos.size() <= neg.size();
    const auto& minority = pos_minority ? pos : neg;
    const auto& majority = pos_minority ? neg : pos;

    std::vector<double> dist(n, 1.0 / double(n));
    const double lr = model.spec.learning_rate;

    for (int t = 0; t < model.spec.learners; ++t) {
        Rng rng(Rng::mix(model.spec.seed, std::uint64_t(t)));

        // random undersample of the majority class down to minority size
        auto pick = rng.sample_without_replacement(majority.size(), minority.size());
        std::vector<std::size_t> sample(minority);
        for (std::size_t k : pick) sample.push_back(majority[k]);
        std::sort(sample.begin(), sample.end());

        std::vector<double> w(sample.size());
        double wsum = 0.0;
        for (std::size_t i = 0; i < sample.size(); ++i) wsum += dist[sample[i]];
        if (wsum <= 0.0) wsum = 1.0;
        for (std::size_t i = 0; i < sample.size(); ++i) w[i] = dist[sample[i]] / wsum;

        DecisionTree tree =
            fit_decision_tree(data.rows, data.labels, sample, w, model.spec.max_splits,
                              model.spec.min_leaf, model.spec.features_per_split,
                              Rng::mix(model.spec.seed, 0x5eed0000ULL + std::uint64_t(t)));

        BoostRound round;
        int ps = 0;
        for (std::size_t i : sample) ps += data.labels[i] == 1;
        round.pos_sampled = ps;
        round.neg_sampled = int(sample.size()) - ps;

        // pseudo-loss over the full training set: eps = sum D_i (1 - h(x_i, y_i))
        std::vector<double> h(n);
        double eps = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double p = tree.predict(data.rows[i]);
            h[i] = data.labels[i] == 1 ? p : 1.0 - p;
            eps += dist[i] * (1.0 - h[i]);
        }
        round.epsilon = eps;

        if (eps >= 0.5) {  // weak learner no better than chance: skip round
            round.used = false;
            round.beta = 0.0;
            round.vote_weight = 0.0;
            model.boost_rounds.push_back(round);
            continue;
        }
        double beta = eps <= 0.0 ? 1e-10 : eps / (1.0 - eps);
        round.beta = beta;
        round.vote_weight = lr * std::log(1.0 / beta);
        round.used = true;
        model.boost_rounds.push_back(round);
        model.trees.push_back(std::move(tree));
        model.tree_weights.push_back(round.vote_weight);

        if (eps <= 0.0) break;  // perfect learner, nothing left to reweight

        // shrink weight of correctly handled examples
        double dsum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            dist[i] *= std::pow(beta, lr * h[i]);
            dsum += dist[i];
        }
        for (double& d : dist) d /= dsum;
    }

    if (model.trees.empty()) {
        model.constant_label = pos.size() >= neg.size() ? 1 : 0;
        model.warnings.push_back("all boosting rounds rejected; degenerate majority-vote model");
    }
}

void train_naive_bayes(TrainedModel& model, const FeatureMatrix& data) {
    const std::size_t n = data.n(), m = data.m();
    NaiveBayesParams nb;
    std::size_t cnt[2] = {0, 0};
    for (int c = 0; c < 2; ++c) {
        nb.mean[c].assign(m, 0.0);
        nb.var[c].assign(m, 0.0);
    }
    for (std::size_t i = 0; i < n; ++i) {
        int c = data.labels[i];
        ++cnt[c];
        for (std::size_t j = 0; j < m; ++j) nb.mean[c][j] += data.rows[i][j];
    }
    for (int c = 0; c < 2; ++c)
        for (std::size_t j = 0; j < m; ++j) nb.mean[c][j] /= double(cnt[c]);
    for (std::size_t i = 0; i < n; ++i) {
        int c = data.labels[i];
        for (std::size_t j = 0; j < m; ++j) {
            double d = data.rows[i][j] - nb.mean[c][j];
            nb.var[c][j] += d * d;
        }
    }
    // variance floor proportional to the largest overall feature variance
    double max_var = 0.0;
    Standardization st = fit_standardization(data);
    for (std::size_t j = 0; j < m; ++j)
        max_var = std::max(max_var, st.scale[j] * st.scale[j]);
    double floor = 1e-9 * (max_var > 0.0 ? max_var : 1.0);
    for (int c = 0; c < 2; ++c)
        for (std::size_t j = 0; j < m; ++j)
            nb.var[c][j] = std::max(nb.var[c][j] / double(cnt[c]), floor);
    nb.prior[0] = double(cnt[0]) / double(n);
    nb.prior[1] = double(cnt[1]) / double(n);
    model.nb = std::move(nb);
}

void train_knn(TrainedModel& model, const FeatureMatrix& data) {
    model.standardization = fit_standardization(data);
    KnnParams knn;
    for (const auto& r : data.rows)
        knn.points.push_back(standardize_row(*model.standardization, r));
    knn.labels = data.labels;
    model.knn = std::move(knn);
}

void train_logistic(TrainedModel& model, const FeatureMatrix& data) {
    model.standardization = fit_standardization(data);
    const std::size_t n = data.n(), m = data.m();
    std::vector<std::vector<double>> z;
    z.reserve(n);
    double max_sq = 0.0;
    for (const auto& r : data.rows) {
        z.push_back(standardize_row(*model.standardization, r));
        double s = 0.0;
        for (double v : z.back()) s += v * v;
        max_sq = std::max(max_sq, s);
    }
    LogisticParams lp;
    lp.weights.assign(m, 0.0);
    const double l2 = model.spec.logit_l2;
    const double step = 1.0 / (0.25 * (max_sq + 1.0) + l2);  // 1/L for the mean NLL
    for (int it = 0; it < model.spec.logit_iterations; ++it) {
        std::vector<double> grad(m, 0.0);
        double gbias = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double a = lp.bias;
            for (std::size_t j = 0; j < m; ++j) a += lp.weights[j] * z[i][j];
            double p = 1.0 / (1.0 + std::exp(-a));
            double d = p - double(data.labels[i]);
            for (std::size_t j = 0; j < m; ++j) grad[j] += d * z[i][j];
            gbias += d;
        }
        for (std::size_t j = 0; j < m; ++j) {
            grad[j] = grad[j] / double(n) + l2 * lp.weights[j];
            lp.weights[j] -= step * grad[j];
        }
        lp.bias -= step * gbias / double(n);
    }
    model.logit = std::move(lp);
}

}  // namespace

TrainedModel train(const FeatureMatrix& data, const ClassifierSpec& spec) {
    data.validate();
    spec.validate();

    TrainedModel model;
    model.spec = spec;
    model.feature_names = data.feature_names;
    model.dataset_name = data.dataset_name;
    {
        std::ostringstream os;
        os << data.dataset_name << ":" << data.n() << "x" << data.m()
           << ":seed=" << spec.seed;
        model.training_fingerprint = os.str();
    }

    std::size_t npos = 0;
    for (int l : data.labels) npos += std::size_t(l);
    if (npos == 0 || npos == data.n()) {
        model.constant_label = npos ? 1 : 0;
        model.warnings.push_back("single-class training set; constant model");
        return model;
    }

    switch (spec.algorithm) {
        case Algorithm::decision_tree: {
            std::vector<std::size_t> all(data.n());
            for (std::size_t i = 0; i < data.n(); ++i) all[i] = i;
            std::vector<double> w(data.n(), 1.0 / double(data.n()));
            model.trees.push_back(fit_decision_tree(data.rows, data.labels, all, w,
                                                    spec.max_splits, spec.min_leaf,
                                                    spec.features_per_split, spec.seed));
            model.tree_weights.push_back(1.0);
            break;
        }
        case Algorithm::bagged_trees:
            train_bagged(model, data);
            break;
        case Algorithm::rusboost_trees:
            train_rusboost(model, data);
            break;
        case Algorithm::gaussian_naive_bayes:
            train_naive_bayes(model, data);
            break;
        case Algorithm::knn:
            train_knn(model, data);
            break;
        case Algorithm::logistic_regression:
            train_logistic(model, data);
            break;
    }
    return model;
}

double TrainedModel::predict_score(std::span<const double> row) const {
    if (row.size() != feature_names.size())
        throw ShapeError("feature count mismatch: model expects " +
                         std::to_string(feature_names.size()) + ", got " +
                         std::to_string(row.size()));
    if (constant_label) return double(*constant_label);

    switch (spec.algorithm) {
        case Algorithm::decision_tree:
            return trees.front().predict(row);
        case Algorithm::bagged_trees:
        case Algorithm::rusboost_trees: {
            double wsum = 0.0, vote = 0.0;
            for (std::size_t t = 0; t < trees.size(); ++t) {
                wsum += tree_weights[t];
                if (trees[t].predict(row) >= 0.5) vote += tree_weights[t];
            }
            return wsum > 0.0 ? vote / wsum : 0.5;
        }
        case Algorithm::gaussian_naive_bayes: {
            double logp[2];
            for (int c = 0; c < 2; ++c) {
                logp[c] = std::log(nb->prior[c]);
                for (std::size_t j = 0; j < row.size(); ++j) {
                    double d = row[j] - nb->mean[c][j];
                    logp[c] += -0.5 * std::log(2.0 * 3.14159265358979323846 * nb->var[c][j]) -
                               d * d / (2.0 * nb->var[c][j]);
                }
            }
            double m = std::max(logp[0], logp[1]);
            double e0 = std::exp(logp[0] - m), e1 = std::exp(logp[1] - m);
            return e1 / (e0 + e1);
        }
        case Algorithm::knn: {
            auto z = standardize_row(*standardization, row);
            std::vector<std::pair<double, std::size_t>> d(knn->points.size());
            for (std::size_t i = 0; i < knn->points.size(); ++i) {
                double s = 0.0;
                for (std::size_t j = 0; j < z.size(); ++j) {
                    double dd = z[j] - knn->points[i][j];
                    s += dd * dd;
                }
                d[i] = {s, i};
            }
            std::size_t k = std::min<std::size_t>(std::size_t(spec.knn_k), d.size());
            std::partial_sort(d.begin(), d.begin() + std::ptrdiff_t(k), d.end());
            double pos = 0.0;
            for (std::size_t i = 0; i < k; ++i) pos += knn->labels[d[i].second] == 1;
            return pos / double(k);
        }
        case Algorithm::logistic_regression: {
            auto z = standardize_row(*standardization, row);
            double a = logit->bias;
            for (std::size_t j = 0; j < z.size(); ++j) a += logit->weights[j] * z[j];
            return 1.0 / (1.0 + std::exp(-a));
        }
    }
    throw TrainingError("unreachable");
}

int TrainedModel::predict_label(std::span<const double> row) const {
    return predict_score(row) >= spec.decision_threshold ? 1 : 0;
}

// ---------------------------------------------------------------------------
// model (de)serialization

namespace {

using nlohmann::json;

json tree_to_json(const DecisionTree& t) {
    json nodes = json::array();
    for (const auto& n : t.nodes)
        nodes.push_back({{"f", n.feature},
                         {"t", n.threshold},
                         {"l", n.left},
                         {"r", n.right},
                         {"p", n.p_glare}});
    return nodes;
}

DecisionTree tree_from_json(const json& j) {
    DecisionTree t;
    for (const auto& n : j)
        t.nodes.push_back({n.at("f").get<int>(), n.at("t").get<double>(), n.at("l").get<int>(),
                           n.at("r").get<int>(), n.at("p").get<double>()});
    return t;
}

}  // namespace

std::string model_to_json(const TrainedModel& m) {
    json j;
    j["format_version"] = kModelFormatVersion;
    j["generator"] = std::string("oge ") + kVersion;
    j["algorithm"] = algorithm_to_string(m.spec.algorithm);
    j["hyperparameters"] = {{"seed", m.spec.seed},
                            {"max_splits", m.spec.max_splits},
                            {"min_leaf", m.spec.min_leaf},
                            {"learners", m.spec.learners},
                            {"learning_rate", m.spec.learning_rate},
                            {"features_per_split", m.spec.features_per_split},
                            {"knn_k", m.spec.knn_k},
                            {"logit_iterations", m.spec.logit_iterations},
                            {"logit_l2", m.spec.logit_l2},
                            {"decision_threshold", m.spec.decision_threshold}};
    j["feature_names"] = m.feature_names;
    j["dataset_name"] = m.dataset_name;
    j["training_fingerprint"] = m.training_fingerprint;
    j["warnings"] = m.warnings;
    if (m.constant_label) j["constant_label"] = *m.constant_label;
    if (!m.trees.empty()) {
        json trees = json::array();
        for (const auto& t : m.trees) trees.push_back(tree_to_json(t));
        j["trees"] = trees;
        j["tree_weights"] = m.tree_weights;
    }
    if (!m.boost_rounds.empty()) {
        json rounds = json::array();
        for (const auto& r : m.boost_rounds)
            rounds.push_back({{"pos_sampled", r.pos_sampled},
                              {"neg_sampled", r.neg_sampled},
                              {"epsilon", r.epsilon},
                              {"beta", r.beta},
                              {"vote_weight", r.vote_weight},
                              {"used", r.used}});
        j["boost_rounds"] = rounds;
    }
    if (m.nb) {
        j["naive_bayes"] = {{"prior", {m.nb->prior[0], m.nb->prior[1]}},
                            {"mean0", m.nb->mean[0]},
                            {"mean1", m.nb->mean[1]},
                            {"var0", m.nb->var[0]},
                            {"var1", m.nb->var[1]}};
    }
    if (m.knn) j["knn_data"] = {{"points", m.knn->points}, {"labels", m.knn->labels}};
    if (m.logit) j["logistic"] = {{"weights", m.logit->weights}, {"bias", m.logit->bias}};
    if (m.standardization)
        j["standardization"] = {{"mean", m.standardization->mean},
                                {"scale", m.standardization->scale}};
    if (!m.feature_recipe_json.empty()) j["feature_recipe"] = json::parse(m.feature_recipe_json);
    return j.dump(2);
}

TrainedModel model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ModelIoError(std::string("model file is not valid JSON: ") + e.what());
    }
    try {
        if (j.at("format_version").get<int>() != kModelFormatVersion)
            throw ModelIoError("unsupported model format_version");
        TrainedModel m;
        m.spec.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
        const json& h = j.at("hyperparameters");
        m.spec.seed = h.at("seed").get<std::uint64_t>();
        m.spec.max_splits = h.at("max_splits").get<int>();
        m.spec.min_leaf = h.at("min_leaf").get<int>();
        m.spec.learners = h.at("learners").get<int>();
        m.spec.learning_rate = h.at("learning_rate").get<double>();
        m.spec.features_per_split = h.at("features_per_split").get<int>();
        m.spec.knn_k = h.at("knn_k").get<int>();
        m.spec.logit_iterations = h.at("logit_iterations").get<int>();
        m.spec.logit_l2 = h.at("logit_l2").get<double>();
        m.spec.decision_threshold = h.at("decision_threshold").get<double>();
        m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        m.dataset_name = j.value("dataset_name", std::string());
        m.training_fingerprint = j.value("training_fingerprint", std::string());
        m.warnings = j.value("warnings", std::vector<std::string>{});
        if (j.contains("constant_label")) m.constant_label = j["constant_label"].get<int>();
        if (j.contains("trees")) {
            for (const auto& t : j["trees"]) m.trees.push_back(tree_from_json(t));
            m.tree_weights = j.at("tree_weights").get<std::vector<double>>();
            if (m.tree_weights.size() != m.trees.size())
                throw ModelIoError("tree_weights length mismatch");
        }
        if (j.contains("boost_rounds")) {
            for (const auto& r : j["boost_rounds"])
                m.boost_rounds.push_back({r.at("pos_sampled").get<int>(),
                                          r.at("neg_sampled").get<int>(),
                                          r.at("epsilon").get<double>(),
                                          r.at("beta").get<double>(),
                                          r.at("vote_weight").get<double>(),
                                          r.at("used").get<bool>()});
        }
        if (j.contains("naive_bayes")) {
            NaiveBayesParams nb;
            nb.prior[0] = j["naive_bayes"].at("prior")[0].get<double>();
            nb.prior[1] = j["naive_bayes"].at("prior")[1].get<double>();
            nb.mean[0] = j["naive_bayes"].at("mean0").get<std::vector<double>>();
            nb.mean[1] = j["naive_bayes"].at("mean1").get<std::vector<double>>();
            nb.var[0] = j["naive_bayes"].at("var0").get<std::vector<double>>();
            nb.var[1] = j["naive_bayes"].at("var1").get<std::vector<double>>();
            m.nb = std::move(nb);
        }
        if (j.contains("knn_data")) {
            KnnParams knn;
            knn.points = j["knn_data"].at("points").get<std::vector<std::vector<double>>>();
            knn.labels = j["knn_data"].at("labels").get<std::vector<int>>();
            m.knn = std::move(knn);
        }
        if (j.contains("logistic")) {
            LogisticParams lp;
            lp.weights = j["logistic"].at("weights").get<std::vector<double>>();
            lp.bias = j["logistic"].at("bias").get<double>();
            m.logit = std::move(lp);
        }
        if (j.contains("standardization")) {
            Standardization st;
            st.mean = j["standardization"].at("mean").get<std::vector<double>>();
            st.scale = j["standardization"].at("scale").get<std::vector<double>>();
            m.standardization = std::move(st);
        }
        if (j.contains("feature_recipe")) m.feature_recipe_json = j["feature_recipe"].dump();
        return m;
    } catch (const json::exception& e) {
        throw ModelIoError(std::string("model file missing or malformed field: ") + e.what());
    }
}

void save_model(const TrainedModel& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ModelIoError("cannot open " + path + " for writing");
    out << model_to_json(m) << '\n';
    if (!out) throw ModelIoError("failed writing " + path);
}

TrainedModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelIoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return model_from_json(ss.str());
}

}
