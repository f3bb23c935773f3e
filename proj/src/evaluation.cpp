#include "oge/evaluation.hpp"

namespace oge {

GateFlags apply_gates(double oa, double tpr, double tnr, double auc, double sqd,
                      const GateThresholds& thr) {
    GateFlags f;
    f.oa_ok = !std::isnan(oa) && oa >= thr.min_oa;
    f.tpr_ok = !std::isnan(tpr) && tpr > thr.min_tpr;
    f.tnr_ok = !std::isnan(tnr) && tnr > thr.min_tnr;
    f.auc_ok = std::isnan(auc) || auc >= thr.min_auc;
    f.sqd_ok = std::isnan(sqd) || sqd < thr.max_sqd;
    f.pass = f.oa_ok && f.tpr_ok && f.tnr_ok && f.auc_ok && f.sqd_ok;
    return f;
}

GateFlags apply_gates(const EvaluationReport& rep, const GateThresholds& thr) {
    return apply_gates(rep.oa, rep.tpr, rep.tnr, rep.auc, rep.sqd, thr);
}

}
