#pragma once

#include "oge/classifiers.hpp"
#include "oge/evaluation.hpp"
#include "oge/kfold.hpp"

namespace oge {

struct CrossValResult {
    EvaluationReport report;
    std::vector<double> oof_scores;  // out-of-fold score per row
    FoldAssignment folds;
};

// Plain (unstratified) k-fold cross-validation. Per-fold models use seeds
// derived from spec.seed and the fold id; AUC and the optimal-cutoff squared
// distance come from the pooled out-of-fold scores.
CrossValResult cross_validate(const FeatureMatrix& data, const ClassifierSpec& spec, int k,
                              std::uint64_t split_seed);

}
