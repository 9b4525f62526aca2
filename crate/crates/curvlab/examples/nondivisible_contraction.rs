//! A contraction that is not infinitely divisible.
//!
//! K = 1 + 2zw̄ + Σ_{n≥2}(n+¼)z^nw̄^n: the factored kernel (1−zw̄)K has
//! coefficients {1, 1, ¼, 1, …} ≥ 0, so M* is a contraction — but raising it
//! to the power t gives z²w̄² coefficient t(2t−1)/4, negative for t < ½.
//!
//! Run with `cargo run --example nondivisible_contraction`.

use curvlab::kernel::KernelSpec;
use curvlab::{divisibility, operator};
use num_complex::Complex64 as C64;

fn main() -> curvlab::Result<()> {
    let k = KernelSpec::diagonal(
        vec![1.0, 2.0, 2.25, 3.25, 4.25, 5.25, 6.25, 7.25, 8.25],
        9.25,
    );
    let report = operator::contraction_test(&k, 8, 42)?;
    println!("contraction: {:?}", report.verdict.verdict);

    let kdagger = k.clone().contract();
    println!(
        "K‡ coefficients: {:?}",
        kdagger.diagonal_coefficients(8)?.unwrap()
    );

    // Divisibility of K‡ across the t grid.
    let w0 = [C64::new(0.0, 0.0)];
    let div =
        divisibility::divisibility_check(&kdagger, &divisibility::DEFAULT_T_GRID, &w0, 8, 1e-9, 42)?;
    println!("\n  t     verdict       z²w̄² coefficient   t(2t−1)/4");
    let s = kdagger.taylor_expand(&w0, 8)?;
    for (t, v) in div.t_grid.iter().zip(&div.per_t) {
        let coeff = s.real_power(*t)?.coeff1(2, 2).re;
        let formula = t * (2.0 * t - 1.0) / 4.0;
        println!("  {t:<5} {:<12?} {coeff:>14.6}   {formula:>10.6}", v.verdict);
    }
    println!("\noverall: {:?}", div.overall);

    // The two routes of the divisible-contraction check agree.
    let both = divisibility::divisible_contraction_check(&k, &[0.25, 0.5, 1.0], 8, 1e-9, 42)?;
    println!(
        "factored route: {:?}; curvature route: {:?}; agree: {}",
        both.factored.overall, both.curvature_route.verdict, both.routes_agree
    );
    Ok(())
}
