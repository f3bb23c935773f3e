#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace oge {

struct ConfusionCounts {
    long tp = 0, tn = 0, fp = 0, fn = 0;

    long total() const { return tp + tn + fp + fn; }
    // overall accuracy (TP+TN)/(TP+FP+TN+FN)
    double oa() const { return total() ? double(tp + tn) / double(total()) : std::nan(""); }
    double tpr() const { return tp + fn ? double(tp) / double(tp + fn) : std::nan(""); }
    double tnr() const { return tn + fp ? double(tn) / double(tn + fp) : std::nan(""); }
    double fpr() const { return tn + fp ? double(fp) / double(tn + fp) : std::nan(""); }

    void add(int label, int predicted) {
        if (label == 1)
            (predicted == 1 ? tp : fn) += 1;
        else
            (predicted == 1 ? fp : tn) += 1;
    }
};

struct EvaluationReport {
    ConfusionCounts counts;  // pooled over all evaluated rows
    double oa = std::nan("");
    double tpr = std::nan("");
    double tnr = std::nan("");
    // fold-averaged rates (only set for cross-validated evaluations)
    double oa_macro = std::nan("");
    double tpr_macro = std::nan("");
    double tnr_macro = std::nan("");
    std::vector<ConfusionCounts> per_fold;
    double auc = std::nan("");
    double sqd = std::nan("");
    double cutoff = std::nan("");
    std::vector<std::string> warnings;

    void finalize_pooled() {
        oa = counts.oa();
        tpr = counts.tpr();
        tnr = counts.tnr();
    }
};

// Screening gates for a usable glare predictor. A missing statistic (NaN)
// does not fail its gate; the flag records that it was not applicable.
struct GateThresholds {
    double min_oa = 0.70;   // inclusive
    double min_tpr = 0.5;   // exclusive
    double min_tnr = 0.5;   // exclusive
    double min_auc = 0.6;   // inclusive
    double max_sqd = 0.5;   // exclusive
};

struct GateFlags {
    bool oa_ok = false, tpr_ok = false, tnr_ok = false, auc_ok = false, sqd_ok = false;
    bool pass = false;
};

GateFlags apply_gates(const EvaluationReport& rep, const GateThresholds& thr = {});
GateFlags apply_gates(double oa, double tpr, double tnr, double auc, double sqd,
                      const GateThresholds& thr = {});

}
