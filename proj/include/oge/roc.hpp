#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "oge/evaluation.hpp"

namespace oge {

// Direction of a score: most glare metrics grow with glare, visual-comfort
// style scores shrink.
enum class Orientation { higher_means_glare, lower_means_glare };

Orientation metric_orientation(std::string_view metric_name);  // UnknownMetricError

struct RocPoint {
    double threshold = 0.0;  // in oriented-score space (higher = more glare)
    double fpr = 0.0;
    double tpr = 0.0;
};

struct RocCurve {
    Orientation orientation = Orientation::higher_means_glare;
    std::vector<RocPoint> points;  // thresholds strictly decreasing, +inf first
};

struct RocSummary {
    double auc = 0.0;
    double cutoff = 0.0;  // original score space
    double sqd = 0.0;     // (1-TPR)^2 + FPR^2 at the cutoff
    double tpr_at_cutoff = 0.0;
    double tnr_at_cutoff = 0.0;
};

// Builds the full empirical curve: one point per distinct score plus the
// +/-inf sentinels. Requires at least one row of each class.
RocCurve roc_curve(std::span<const double> scores, std::span<const int> labels,
                   Orientation orient = Orientation::higher_means_glare);

// Trapezoidal AUC and the distance-optimal cutoff (min squared distance to
// the (0,1) corner; ties broken toward larger TPR, then smaller threshold).
// Only finite thresholds are cutoff candidates.
RocSummary summarize(const RocCurve& curve);

// Classify at a fixed cutoff: glare iff score >= cutoff (<= for
// lower_means_glare) and report pooled rates.
EvaluationReport evaluate_at_cutoff(std::span<const double> scores, std::span<const int> labels,
                                    double cutoff, Orientation orient);

// k-fold cutoff stability (fold cutoffs are derived on the held-out folds):
// C1 = mean per-fold cutoff, C2 = all-data cutoff,
// variation error E = |C1 - C2| / C1 * 100.
struct CutoffComparison {
    double c1 = 0.0;
    double c2 = 0.0;
    double variation_error_pct = 0.0;
    bool generalizable = false;  // E < 10
    std::vector<double> fold_cutoffs;
    std::uint64_t folds_seed = 0;  // seed actually used (after any re-draws)
};

CutoffComparison cross_validated_cutoff(std::span<const double> scores,
                                        std::span<const int> labels, int k, std::uint64_t seed,
                                        Orientation orient = Orientation::higher_means_glare);

}
