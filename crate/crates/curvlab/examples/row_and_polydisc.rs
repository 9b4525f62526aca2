//! Row and polydisc contraction criteria in several variables.
//!
//! Positivity of (1−⟨z,w⟩)K decides row contractivity on the ball;
//! ∏(1−z_iw̄_i)K decides simultaneous contractivity on the polydisc. The
//! Drury–Arveson and polydisc Szegő kernels pass; their square roots fail
//! with a negative binomial coefficient.
//!
//! Run with `cargo run --example row_and_polydisc`.

use curvlab::kernel::KernelSpec;
use curvlab::{curvature, operator, points};
use num_complex::Complex64 as C64;

fn main() -> curvlab::Result<()> {
    // Drury–Arveson: (1−⟨z,w⟩)K_DA = 1, a row contraction by construction.
    let da = KernelSpec::DruryArveson(2);
    let r = operator::row_contraction_test(&da, 6, 42)?;
    println!("da(2): row contraction verdict {:?}", r.verdict.verdict);

    // Its square root is not: (1−u)^{1/2} has coefficient −1/8 at u².
    let half = da.clone().pow(0.5);
    let r = operator::row_contraction_test(&half, 6, 42)?;
    println!(
        "da(2)^0.5: {:?} (min eigenvalue {:.6}, expect −1/8 = −0.125)",
        r.verdict.verdict, r.verdict.min_eigenvalue
    );

    // Same story on the bidisc.
    let sz2 = KernelSpec::SzegoPolydisc(2);
    let r = operator::polydisc_contraction_test(&sz2, 6, 42)?;
    println!("\nszego_poly(2): polydisc contraction verdict {:?}", r.verdict.verdict);
    let r = operator::polydisc_contraction_test(&sz2.clone().pow(0.5), 6, 42)?;
    println!("szego_poly(2)^0.5: {:?}", r.verdict.verdict);

    // Curvature matrices in several variables are negative definite.
    let pts = points::ball_points(2, 7, 4, 0.7);
    for w in &pts {
        let mat = curvature::curvature_matrix(&da, w)?;
        let (lo, hi) = mat.min_max_eigenvalues();
        println!(
            "K_DA curvature at ({:.2}{:+.2}i, {:.2}{:+.2}i): eigenvalues in [{lo:.4}, {hi:.4}]",
            w[0].re, w[0].im, w[1].re, w[1].im
        );
    }

    // At the origin the Drury–Arveson curvature is exactly −I.
    let mat = curvature::curvature_matrix(&da, &[C64::new(0.0, 0.0); 2])?;
    println!(
        "at 0: [[{:.3}, {:.3}], [{:.3}, {:.3}]]",
        mat.get(0, 0).re,
        mat.get(0, 1).re,
        mat.get(1, 0).re,
        mat.get(1, 1).re
    );
    Ok(())
}
