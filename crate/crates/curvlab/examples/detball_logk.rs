//! det(I − ZW*)^{−1} on the 2×2 matrix ball is positive definite but not
//! infinitely divisible: its log fails positivity, witnessed at t = ½.
//!
//! Run with `cargo run --release --example detball_logk` (the order-8
//! four-variable expansion is sizable).

use curvlab::kernel::KernelSpec;
use curvlab::series::MultiIndex;
use curvlab::{divisibility, points, posdef};
use num_complex::Complex64 as C64;

fn main() -> curvlab::Result<()> {
    let k = KernelSpec::DetBall2;
    let w0 = vec![C64::new(0.0, 0.0); 4];
    let s = k.taylor_expand(&w0, 8)?;
    println!("expansion: {} coefficients", s.iter().count());

    // The kernel itself is fine.
    let pts = points::matrix_ball_points(42, 30, 0.6);
    let gram = posdef::gram_psd(&k, &pts, 1e-9)?;
    println!("kernel Gram over 30 matrices: {:?}", gram.verdict);

    // Its log is not: the shifted log Gram picks up a negative eigenvalue.
    let log_report = divisibility::log_kernel_cpd_check(&k, &pts, &w0, 1e-9)?;
    println!(
        "log K: cpd {:?}, shifted Gram {:?} (min eigenvalue {:.3e})",
        log_report.cpd.verdict,
        log_report.shifted_psd.verdict,
        log_report.shifted_psd.min_eigenvalue
    );

    // Consequently the square root fails.
    let div = divisibility::divisibility_check(&k, &[0.5, 1.0], &w0, 8, 1e-9, 42)?;
    for (t, v) in div.t_grid.iter().zip(&div.per_t) {
        println!("t = {t}: {:?} ({})", v.verdict, v.source);
    }
    println!("overall: {:?}", div.overall);

    // The Taylor matrix H_δ for δ = (1,0,0,3), printed for inspection.
    let delta = MultiIndex::new(vec![1, 0, 0, 3]);
    let tm = posdef::TaylorMatrix::build(&s.log()?, &delta)?;
    println!("\nH_δ for δ = {delta} ({} indices):", tm.indices.len());
    for (r, idx) in tm.indices.iter().enumerate() {
        let row: Vec<String> = (0..tm.indices.len())
            .map(|c| format!("{:+.3}", tm.matrix.get(r, c).re))
            .collect();
        println!("  {idx}: [{}]", row.join(", "));
    }
    let (lo, hi) = tm.matrix.min_max_eigenvalues();
    println!("H_δ eigenvalue range: [{lo:.6}, {hi:.6}]");
    Ok(())
}
