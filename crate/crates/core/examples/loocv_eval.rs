//! Leave-one-out evaluation of one selector + model, with and without the
//! leaky shortcut of ranking on all rows.

use skyselect::eval::{loocv, LoocvConfig};
use skyselect::features::extract_cohort;
use skyselect::synth::{generate_records, CohortSpec};
use skyselect::{Cohort, DatasetCombo, FeatureRegistry, ModelKind, SelectorKind};

fn main() -> skyselect::Result<()> {
    let spec = CohortSpec { gaze_hz: 30.0, ..CohortSpec::new(12, 12, 3) };
    let participants = generate_records(&spec)?.into_iter().map(|(r, _)| r).collect();
    let m = extract_cohort(&Cohort { participants })?.for_combo(&FeatureRegistry::standard(), DatasetCombo::ALL_GROUPS)?;

    for leak_compat in [false, true] {
        let cfg = LoocvConfig { leak_compat, seed: 3, ..LoocvConfig::new(SelectorKind::Mic, 0.65, ModelKind::Svm) };
        let r = loocv(&m, &cfg)?;
        println!(
            "leak_compat={leak_compat}: acc {:.4} f1 {:.4} auc {:.4} ({} features per fold)",
            r.metrics.acc, r.metrics.f1, r.metrics.auc, r.n_features
        );
        println!("  tp {} fp {} tn {} fn {}", r.cm.tp, r.cm.fp, r.cm.tn, r.cm.fn_);
    }
    Ok(())
}
