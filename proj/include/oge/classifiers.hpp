#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oge/feature_matrix.hpp"

namespace oge {

enum class Algorithm {
    decision_tree,
    bagged_trees,
    rusboost_trees,
    gaussian_naive_bayes,
    knn,
    logistic_regression,
};

Algorithm algorithm_from_string(const std::string& name);  // ConfigError
std::string algorithm_to_string(Algorithm a);
const std::vector<Algorithm>& all_algorithms();

struct ClassifierSpec {
    Algorithm algorithm = Algorithm::rusboost_trees;
    std::uint64_t seed = 0;

    // tree family
    int max_splits = 20;        // split budget per tree, breadth-first
    int min_leaf = 1;
    int learners = 30;          // ensemble size
    double learning_rate = 0.1; // boosting shrinkage
    int features_per_split = 0; // 0 = all; bagging defaults to sqrt(m) at fit time

    // k nearest neighbours
    int knn_k = 5;

    // logistic regression
    int logit_iterations = 500;
    double logit_l2 = 1e-4;

    double decision_threshold = 0.5;

    void validate() const;  // ConfigError on out-of-range values
};

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double p_glare = 0.0;

    bool is_leaf() const { return feature < 0; }
};

struct DecisionTree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root
    double predict(std::span<const double> row) const;
};

// per-round boosting diagnostics (kept in the model for inspection)
struct BoostRound {
    int pos_sampled = 0;
    int neg_sampled = 0;
    double epsilon = 0.0;
    double beta = 0.0;
    double vote_weight = 0.0;
    bool used = false;
};

struct NaiveBayesParams {
    double prior[2] = {0.0, 0.0};
    std::vector<double> mean[2];
    std::vector<double> var[2];
};

struct KnnParams {
    std::vector<std::vector<double>> points;  // standardized
    std::vector<int> labels;
};

struct LogisticParams {
    std::vector<double> weights;  // on standardized features
    double bias = 0.0;
};

struct Standardization {
    std::vector<double> mean;
    std::vector<double> scale;  // zero-variance features get scale 1
};

struct TrainedModel {
    ClassifierSpec spec;
    std::vector<std::string> feature_names;
    std::string dataset_name;
    std::string training_fingerprint;
    std::vector<std::string> warnings;

    std::optional<int> constant_label;  // degenerate single-class fit

    std::vector<DecisionTree> trees;
    std::vector<double> tree_weights;
    std::vector<BoostRound> boost_rounds;
    std::optional<NaiveBayesParams> nb;
    std::optional<KnnParams> knn;
    std::optional<LogisticParams> logit;
    std::optional<Standardization> standardization;

    // extraction recipe recorded by the CLI so `predict` can re-derive
    // features from raw images; empty when the model was fed a bare matrix
    std::string feature_recipe_json;

    // glare score in [0, 1]; ensembles report weighted vote fractions
    double predict_score(std::span<const double> row) const;
    int predict_label(std::span<const double> row) const;
};

TrainedModel train(const FeatureMatrix& data, const ClassifierSpec& spec);

std::string model_to_json(const TrainedModel& m);
TrainedModel model_from_json(const std::string& text);  // ModelIoError
void save_model(const TrainedModel& m, const std::string& path);
TrainedModel load_model(const std::string& path);

// internal fitting entry point, exposed for targeted tests
DecisionTree fit_decision_tree(const std::vector<std::vector<double>>& rows,
                               const std::vector<int>& labels,
                               const std::vector<std::size_t>& subset,
                               const std::vector<double>& weights, int max_splits, int min_leaf,
                               int features_per_split, std::uint64_t feature_seed);

}
