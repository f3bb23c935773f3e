#include "oge/roc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oge/errors.hpp"
#include "oge/glare_indices.hpp"
#include "oge/kfold.hpp"

namespace oge {

Orientation metric_orientation(std::string_view metric_name) {
    // everything in the canonical metric set grows with glare except the
    // visual comfort probability
    for (const char* n : GlareMetricsRecord::metric_names())
        if (metric_name == n)
            return metric_name == "VCP" ? Orientation::lower_means_glare
                                        : Orientation::higher_means_glare;
    throw UnknownMetricError("unknown metric: '" + std::string(metric_name) + "'");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double orient_score(double s, Orientation o) {
    return o == Orientation::lower_means_glare ? -s : s;
}

double unorient(double s, Orientation o) {
    return o == Orientation::lower_means_glare ? -s : s;
}

void check_classes(std::span<const int> labels) {
    bool pos = false, neg = false;
    for (int l : labels) (l == 1 ? pos : neg) = true;
    if (!pos || !neg) throw RocError("need at least one row of each class");
}

}  // namespace

RocCurve roc_curve(std::span<const double> scores, std::span<const int> labels,
                   Orientation orient) {
    if (scores.size() != labels.size()) throw RocError("scores/labels size mismatch");
    if (scores.empty()) throw RocError("empty score list");
    check_classes(labels);
    for (double s : scores)
        if (std::isnan(s)) throw RocError("NaN score");

    long pos_total = 0, neg_total = 0;
    std::vector<std::pair<double, int>> rows;  // (oriented score, label)
    rows.reserve(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        rows.emplace_back(orient_score(scores[i], orient), labels[i]);
        (labels[i] == 1 ? pos_total : neg_total)++;
    }
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    RocCurve curve;
    curve.orientation = orient;
    curve.points.push_back({kInf, 0.0, 0.0});
    long tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < rows.size()) {
        double s = rows[i].first;
        while (i < rows.size() && rows[i].first == s) {
            (rows[i].second == 1 ? tp : fp)++;
            ++i;
        }
        curve.points.push_back({s, double(fp) / double(neg_total), double(tp) / double(pos_total)});
    }
    curve.points.push_back({-kInf, 1.0, 1.0});
    return curve;
}

RocSummary summarize(const RocCurve& curve) {
    if (curve.points.size() < 3) throw RocError("curve has no finite thresholds");
    RocSummary s;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const auto& a = curve.points[i - 1];
        const auto& b = curve.points[i];
        s.auc += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
    }
    bool have = false;
    double best_sqd = 0.0, best_tpr = 0.0, best_thr = 0.0;
    for (const auto& p : curve.points) {
        if (std::isinf(p.threshold)) continue;
        double sqd = (1.0 - p.tpr) * (1.0 - p.tpr) + p.fpr * p.fpr;
        bool better = !have || sqd < best_sqd ||
                      (sqd == best_sqd &&
                       (p.tpr > best_tpr || (p.tpr == best_tpr && p.threshold < best_thr)));
        if (better) {
            have = true;
            best_sqd = sqd;
            best_tpr = p.tpr;
            best_thr = p.threshold;
            s.tpr_at_cutoff = p.tpr;
            s.tnr_at_cutoff = 1.0 - p.fpr;
        }
    }
    s.sqd = best_sqd;
    s.cutoff = unorient(best_thr, curve.orientation);
    return s;
}

EvaluationReport evaluate_at_cutoff(std::span<const double> scores, std::span<const int> labels,
                                    double cutoff, Orientation orient) {
    if (scores.size() != labels.size()) throw RocError("scores/labels size mismatch");
    EvaluationReport rep;
    double thr = orient_score(cutoff, orient);
    for (std::size_t i = 0; i < scores.size(); ++i) {
        int pred = orient_score(scores[i], orient) >= thr ? 1 : 0;
        rep.counts.add(labels[i], pred);
    }
    rep.finalize_pooled();
    rep.cutoff = cutoff;
    return rep;
}

CutoffComparison cross_validated_cutoff(std::span<const double> scores,
                                        std::span<const int> labels, int k, std::uint64_t seed,
                                        Orientation orient) {
    if (scores.size() != labels.size()) throw RocError("scores/labels size mismatch");
    check_classes(labels);

    // re-draw folds until every held-out fold contains both classes
    constexpr int kMaxRedraws = 100;
    FoldAssignment folds;
    std::uint64_t used_seed = seed;
    bool ok = false;
    for (int attempt = 0; attempt < kMaxRedraws && !ok; ++attempt) {
        used_seed = seed + std::uint64_t(attempt);
        folds = kfold_split(scores.size(), k, used_seed);
        auto rows = folds.fold_rows();
        ok = true;
        for (const auto& fr : rows) {
            bool pos = false, neg = false;
            for (std::size_t i : fr) (labels[i] == 1 ? pos : neg) = true;
            if (!pos || !neg) {
                ok = false;
                break;
            }
        }
    }
    if (!ok)
        throw RocError("could not draw k folds with both classes present in every fold");

    CutoffComparison cc;
    cc.folds_seed = used_seed;
    auto rows = folds.fold_rows();
    for (const auto& fr : rows) {
        std::vector<double> s;
        std::vector<int> l;
        s.reserve(fr.size());
        for (std::size_t i : fr) {
            s.push_back(scores[i]);
            l.push_back(labels[i]);
        }
        RocSummary sum = summarize(roc_curve(s, l, orient));
        cc.fold_cutoffs.push_back(sum.cutoff);
    }
    double sum = 0.0;
    for (double c : cc.fold_cutoffs) sum += c;
    cc.c1 = sum / double(cc.fold_cutoffs.size());
    cc.c2 = summarize(roc_curve(scores, labels, orient)).cutoff;
    if (cc.c1 == 0.0)
        throw VariationUndefinedError("mean fold cutoff is zero; variation error undefined");
    cc.variation_error_pct = std::abs(cc.c1 - cc.c2) / std::abs(cc.c1) * 100.0;
    cc.generalizable = cc.variation_error_pct < 10.0;
    return cc;
}

}
