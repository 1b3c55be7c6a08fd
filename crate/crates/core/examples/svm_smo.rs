//! The SMO dual solver on a toy problem, then a full SVM on two blobs.

use skyselect::models::svm::{dual_objective, smo_solve, train_svm, Kernel, KernelChoice, SvmParams};

fn main() {
    // Four points, two per class, linear kernel.
    let x = vec![vec![1.0, 1.0], vec![2.0, 2.5], vec![-1.0, -1.0], vec![-2.0, -0.5]];
    let y = [1.0, 1.0, -1.0, -1.0];
    let gram = Kernel::Linear.gram(&x);
    let sol = smo_solve(&gram, &y, 1.0, 1e-6, 10_000).unwrap();
    println!("alpha = {:?}", sol.alpha);
    println!("bias = {:.4}, dual objective = {:.6}, {} iterations", sol.bias, dual_objective(&sol.alpha, &y, &gram), sol.iterations);
    for (i, xi) in x.iter().enumerate() {
        let f: f64 = (0..4).map(|j| sol.alpha[j] * y[j] * Kernel::Linear.eval(&x[j], xi)).sum::<f64>() + sol.bias;
        println!("  x{i} {:?}: y f(x) = {:.4}", xi, y[i] * f);
    }

    // RBF SVM with the default scale heuristic.
    let rows: Vec<Vec<f64>> = (0..40)
        .map(|i| {
            let a = i as f64 * 0.7;
            let r = if i % 2 == 0 { 1.0 } else { 3.0 };
            vec![r * a.cos(), r * a.sin()]
        })
        .collect();
    let labels: Vec<u8> = (0..40).map(|i| (i % 2) as u8).collect();
    let model = train_svm(&rows, &labels, SvmParams { kernel: KernelChoice::RbfScale, ..SvmParams::default() }).unwrap();
    let correct = rows.iter().zip(&labels).filter(|(r, &l)| (model.score(r) > 0.0) as u8 == l).count();
    println!("rings: {} support vectors, {correct}/40 training rows correct", model.support.len());
}
