//! Rebuilding an infinitely divisible kernel from the mixed part of log K̂.
//!
//! Splitting log K̂ = ψ(z) + K₀(z,w) + ψ(w)̄ and re-assembling
//! exp(ψ)·exp(K₀)·exp(ψ̄) recovers the kernel on the diagonal; positivity of
//! K₀ makes every power exp(t·K₀) positive too.
//!
//! Run with `cargo run --example reconstruct`.

use curvlab::kernel::KernelSpec;
use curvlab::series::{HermitianSeries, MultiIndex};
use curvlab::{divisibility, points};
use num_complex::Complex64 as C64;

fn main() -> curvlab::Result<()> {
    // Round-trip the Szegő kernel: log, split, reassemble.
    let s = KernelSpec::SzegoDisc.taylor_expand(&[C64::new(0.0, 0.0)], 10)?;
    let result = divisibility::reconstruct(&s.log()?, &[0.1, 0.5, 1.0], 1e-9)?;
    println!("szego roundtrip: diagonal error {:.3e}", result.diag_error);
    println!("K0 positivity: {:?}", result.k0_verdict.verdict);
    for (t, v) in &result.per_t {
        println!("  kernel^{t}: {:?}", v.verdict);
    }
    for w in points::disc_points(3, 4, 0.3) {
        let got = result.kernel.eval_pair(&w, &w).re;
        let want = 1.0 / (1.0 - w[0].norm_sqr());
        println!("  K(w,w) at |w|={:.3}: {got:.9} vs {want:.9}", w[0].norm());
    }

    // A kernel with a genuine holomorphic part: log K̂ = z + w̄ + zw̄, i.e.
    // K̂(w,w) = e^{2 Re w} e^{|w|²}. The completion recovers ψ = z.
    let mut l = HermitianSeries::new(1, 10, vec![C64::new(0.0, 0.0)]);
    let e = MultiIndex::new(vec![1]);
    let zero = MultiIndex::zero(1);
    l.insert(e.clone(), zero.clone(), C64::new(1.0, 0.0));
    l.insert(zero.clone(), e.clone(), C64::new(1.0, 0.0));
    l.insert(e.clone(), e.clone(), C64::new(1.0, 0.0));
    let result = divisibility::reconstruct(&l, &[0.5, 1.0], 1e-9)?;
    println!("\nψ coefficient of z: {:.6}", result.psi.coeff(&e, &zero).re);
    println!("diagonal error: {:.3e}", result.diag_error);
    let w = C64::new(0.1, -0.05);
    let got = result.kernel.eval_pair(&[w], &[w]).re;
    let want = (2.0 * w.re).exp() * w.norm_sqr().exp();
    println!("K(w,w): {got:.9} vs e^(2Re w)e^(|w|²) = {want:.9}");

    // Unpaired holomorphic coefficients are rejected.
    let mut bad = HermitianSeries::new(1, 4, vec![C64::new(0.0, 0.0)]);
    bad.insert(e.clone(), zero.clone(), C64::new(1.0, 0.0));
    match divisibility::reconstruct(&bad, &[1.0], 1e-9) {
        Err(err) => println!("\nunpaired input rejected: {err}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
