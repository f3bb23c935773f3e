#include "oge/cross_validation.hpp"

#include <algorithm>
#include <cmath>

#include "oge/errors.hpp"
#include "oge/roc.hpp"
#include "oge/rng.hpp"

namespace oge {

CrossValResult cross_validate(const FeatureMatrix& data, const ClassifierSpec& spec, int k,
                              std::uint64_t split_seed) {
    data.validate();
    CrossValResult res;
    res.folds = kfold_split(data.n(), k, split_seed);
    res.oof_scores.assign(data.n(), 0.0);

    auto fold_rows = res.folds.fold_rows();
    double oa_sum = 0.0, tpr_sum = 0.0, tnr_sum = 0.0;
    int oa_n = 0, tpr_n = 0, tnr_n = 0;

    for (int f = 1; f <= k; ++f) {
        FeatureMatrix tr;
        tr.dataset_name = data.dataset_name;
        tr.feature_names = data.feature_names;
        for (std::size_t i = 0; i < data.n(); ++i) {
            if (res.folds.fold_of_row[i] == f) continue;
            tr.rows.push_back(data.rows[i]);
            tr.labels.push_back(data.labels[i]);
        }
        ClassifierSpec fold_spec = spec;
        fold_spec.seed = Rng::mix(spec.seed, std::uint64_t(f));
        TrainedModel model = train(tr, fold_spec);
        for (const auto& w : model.warnings)
            res.report.warnings.push_back("fold " + std::to_string(f) + ": " + w);

        ConfusionCounts cc;
        for (std::size_t i : fold_rows[std::size_t(f - 1)]) {
            double s = model.predict_score(data.rows[i]);
            res.oof_scores[i] = s;
            int pred = s >= spec.decision_threshold ? 1 : 0;
            cc.add(data.labels[i], pred);
            res.report.counts.add(data.labels[i], pred);
        }
        res.report.per_fold.push_back(cc);
        if (!std::isnan(cc.oa())) {
            oa_sum += cc.oa();
            ++oa_n;
        }
        if (!std::isnan(cc.tpr())) {
            tpr_sum += cc.tpr();
            ++tpr_n;
        }
        if (!std::isnan(cc.tnr())) {
            tnr_sum += cc.tnr();
            ++tnr_n;
        }
    }

    res.report.finalize_pooled();
    if (oa_n) res.report.oa_macro = oa_sum / oa_n;
    if (tpr_n) res.report.tpr_macro = tpr_sum / tpr_n;
    if (tnr_n) res.report.tnr_macro = tnr_sum / tnr_n;
    if (tpr_n < k || tnr_n < k)
        res.report.warnings.push_back("some folds lacked one class; macro rates skip them");

    bool pos = false, neg = false;
    for (int l : data.labels) (l == 1 ? pos : neg) = true;
    if (pos && neg) {
        RocSummary sum = summarize(
            roc_curve(res.oof_scores, data.labels, Orientation::higher_means_glare));
        res.report.auc = sum.auc;
        res.report.sqd = sum.sqd;
        res.report.cutoff = sum.cutoff;
    }
    return res;
}

}
