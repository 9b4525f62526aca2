//! The Szegő kernel of the disc as a sanity baseline: curvature −1/(1−|w|²)²,
//! normalized section norm 1−|w|², boundary-case local operators.
//!
//! Run with `cargo run --example szego_baseline`.

use curvlab::kernel::KernelSpec;
use curvlab::{curvature, operator};
use num_complex::Complex64 as C64;

fn main() -> curvlab::Result<()> {
    let k = KernelSpec::SzegoDisc;
    println!("  r      curvature     −1/(1−r²)²     h(w)      1−r²   contraction");
    for i in 0..10 {
        let r = 0.1 * i as f64;
        let w = C64::new(r, 0.0);
        let curv = curvature::curvature_scalar(&k, w)?;
        let closed = -1.0 / (1.0 - r * r).powi(2);
        let local = operator::local_contraction_test(&k, w)?;
        println!(
            "  {r:.1}  {curv:12.6}  {closed:12.6}  {:8.4}  {:8.4}  {}",
            local.operator.h,
            1.0 - r * r,
            local.contraction
        );
    }

    // The local contraction criterion h² ≤ (1−|w|²)² is tight here: the
    // Szegő kernel is the equality case of the curvature inequality.
    let margin = operator::local_contraction_test(&k, C64::new(0.6, 0.0))?.margin;
    println!("\nboundary margin at r=0.6: {margin:.3e} (equality case)");

    // Powers scale curvature linearly; the inequality holds for t ≥ 1.
    for t in [1.0, 1.5, 2.0] {
        let kt = k.clone().pow(t);
        let c0 = curvature::curvature_scalar(&kt, C64::new(0.0, 0.0))?;
        println!("curvature of szego^{t} at 0: {c0:.3}");
    }
    Ok(())
}
