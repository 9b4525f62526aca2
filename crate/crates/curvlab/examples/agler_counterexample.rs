//! The curvature inequality does not characterize contractions.
//!
//! K(z,w) = 8 + 16 zw̄ + 15 z²w̄²/(1−zw̄) has curvature dominated by the
//! backward shift everywhere on the disc, yet the adjoint multiplication
//! operator M* has norm √(16/15) > 1.
//!
//! Run with `cargo run --example agler_counterexample`.

use curvlab::kernel::KernelSpec;
use curvlab::{curvature, operator, points};
use num_complex::Complex64 as C64;

fn main() -> curvlab::Result<()> {
    let k = KernelSpec::diagonal(vec![8.0, 16.0, 15.0], 15.0);

    // M* is unitarily a weighted shift with weights √(a_n/a_{n+1}).
    let shift = operator::shift_from_diagonal(&[8.0, 16.0, 15.0, 15.0], 15.0)?;
    println!("shift weights: {:?}", shift.weights);
    println!("operator norm: {:.9} (> 1: {})", shift.norm(), !shift.is_contraction());

    // Equivalent test: (1−zw̄)K = 8 + 8zw̄ − z²w̄² is not positive definite.
    let report = operator::contraction_test(&k, 8, 42)?;
    println!(
        "contraction test: {:?}, witness {:?}",
        report.verdict.verdict, report.verdict.witness
    );

    // Yet the curvature inequality holds at every point: the difference
    // K_{S*}(w) − K_{M*}(w) equals 8(8−4r−r²)/(8+8r−r²)², r = |w|² > 0.
    println!("\n  r       K_M*(w)        K_S*(w)        difference   closed form");
    for i in 0..=9 {
        let r = 0.1 * i as f64;
        let w = C64::new(r, 0.0);
        let km = curvature::curvature_scalar(&k, w)?;
        let ks = curvature::curvature_scalar(&KernelSpec::SzegoDisc, w)?;
        let rr = r * r;
        let closed = 8.0 * (8.0 - 4.0 * rr - rr * rr) / (8.0 + 8.0 * rr - rr * rr).powi(2);
        println!("  {r:.1}  {km:13.6}  {ks:13.6}  {:11.6}  {closed:11.6}", ks - km);
    }

    // And every local operator N_T(w) is a contraction.
    let pts = points::disc_points(42, 10, 0.9);
    let (all_ok, worst, _) = operator::local_contraction_sweep(&k, &pts)?;
    println!("\nlocal operators all contractive: {all_ok} (worst margin {worst:.3e})");
    Ok(())
}
