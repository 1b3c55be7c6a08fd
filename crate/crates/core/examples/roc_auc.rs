//! ROC points and the two ways of computing AUC.

use skyselect::eval::{count_metrics, pairwise_auc, roc_curve, ConfusionMatrix};

fn main() {
    let labels = [1, 1, 0, 1, 0, 0, 1, 0];
    let scores = [0.9, 0.8, 0.8, 0.6, 0.5, 0.3, 0.3, 0.1];
    let roc = roc_curve(&labels, &scores).unwrap();
    println!("fpr    tpr    threshold");
    for p in &roc.points {
        println!("{:.3}  {:.3}  {}", p.fpr, p.tpr, p.threshold);
    }
    println!("trapezoid area {:.4}", roc.area());
    println!("pairwise count {:.4}", pairwise_auc(&labels, &scores).unwrap());

    let cm = ConfusionMatrix { tp: 21, fp: 2, tn: 21, fn_: 1 };
    let m = count_metrics(&cm);
    println!("acc {:.4} precision {:.4} recall {:.4} f1 {:.4}", m.acc, m.precision, m.recall, m.f1);
}
