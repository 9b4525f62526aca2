//! Truncated Hermitian power series: build, multiply, invert, log, exp.
//!
//! Run with `cargo run --example series_algebra`.

use curvlab::{HermitianSeries, KernelSpec, MultiIndex};
use num_complex::Complex64 as C64;

fn main() -> curvlab::Result<()> {
    // The Szegő kernel 1/(1−zw̄) as an order-8 series at the origin.
    let szego = KernelSpec::SzegoDisc.taylor_expand(&[C64::new(0.0, 0.0)], 8)?;
    println!("szego:\n{szego}");

    // Its log has the classic coefficients 1/n.
    let log = szego.log()?;
    println!("log szego:");
    for n in 1..=8u32 {
        println!("  z^{n} w̄^{n}: {:.6}  (expect {:.6})", log.coeff1(n, n).re, 1.0 / n as f64);
    }

    // exp inverts log, and invert(s)·s = 1.
    let roundtrip = log.exp();
    let mut dev: f64 = 0.0;
    for ((i, j), &v) in szego.iter() {
        dev = dev.max((v - roundtrip.coeff(i, j)).norm());
    }
    println!("exp(log szego) deviation: {dev:.3e}");

    let inv = szego.invert()?;
    let one = szego.mul(&inv)?;
    println!("szego · szego⁻¹:\n{one}");

    // Fractional powers: (1−zw̄)^{−1/2} has Pochhammer coefficients (½)_n/n!.
    let half = szego.real_power(0.5)?;
    println!("szego^0.5 diagonal coefficients:");
    let mut expect = 1.0;
    for n in 0..=8u32 {
        println!("  n={n}: {:.8}  (expect {:.8})", half.coeff1(n, n).re, expect);
        expect *= (0.5 + n as f64) / (n as f64 + 1.0);
    }

    // Mixed derivatives read off curvature data: ∂∂̄ log szego at 0 is 1.
    let hess = log.mixed_derivative(0, 0);
    let zero = MultiIndex::zero(1);
    println!("∂∂̄ log szego at 0: {:.6}", hess.coeff(&zero, &zero).re);

    // Series evaluate anywhere inside the guard radius.
    let w = [C64::new(0.3, 0.2)];
    let approx = szego.diagonal_eval(&w, None)?;
    let exact = 1.0 / (1.0 - w[0].norm_sqr());
    println!("szego(w,w) at |w|={:.3}: series {approx:.9}, closed form {exact:.9}", w[0].norm());

    // Hand-built series must be Hermitian: a_{IJ} = conj(a_{JI}).
    let mut s = HermitianSeries::new(1, 4, vec![C64::new(0.0, 0.0)]);
    s.insert(MultiIndex::new(vec![1]), MultiIndex::zero(1), C64::new(0.0, 0.5));
    match s.hermitianized() {
        Err(e) => println!("asymmetric series rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
