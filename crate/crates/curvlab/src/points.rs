//! Deterministic seeded point generators for the supported domains. Every
//! verdict that samples points goes through these, so runs are replayable.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::kernel::Domain;

/// Default boundary guard for sampled points.
pub const DEFAULT_RADIUS: f64 = 0.95;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn unit_complex(rng: &mut ChaCha8Rng) -> C64 {
    let theta: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
    C64::new(theta.cos(), theta.sin())
}

/// Radial-uniform points in the disc of radius `rmax`.
pub fn disc_points(seed: u64, n: usize, rmax: f64) -> Vec<Vec<C64>> {
    let mut rng = rng(seed);
    (0..n)
        .map(|_| {
            let r = rmax * rng.gen::<f64>();
            vec![r * unit_complex(&mut rng)]
        })
        .collect()
}

/// Radial-uniform points in the Euclidean ball of C^m.
pub fn ball_points(m: usize, seed: u64, n: usize, rmax: f64) -> Vec<Vec<C64>> {
    let mut rng = rng(seed);
    (0..n)
        .map(|_| {
            let mut v: Vec<C64> = (0..m)
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    C64::new(re, im)
                })
                .collect();
            let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let r = rmax * rng.gen::<f64>();
            for z in &mut v {
                *z *= r / norm.max(1e-12);
            }
            v
        })
        .collect()
}

/// Independent radial-uniform coordinates in each disc of the polydisc.
pub fn polydisc_points(m: usize, seed: u64, n: usize, rmax: f64) -> Vec<Vec<C64>> {
    let mut rng = rng(seed);
    (0..n)
        .map(|_| {
            (0..m)
                .map(|_| {
                    let r = rmax * rng.gen::<f64>();
                    r * unit_complex(&mut rng)
                })
                .collect()
        })
        .collect()
}

/// Operator norm of a 2×2 complex matrix given as [a, b, c, d] row-major.
pub fn opnorm_2x2(entries: &[C64]) -> f64 {
    // Largest singular value from the eigenvalues of A*A.
    let (a, b, c, d) = (entries[0], entries[1], entries[2], entries[3]);
    let trace = a.norm_sqr() + b.norm_sqr() + c.norm_sqr() + d.norm_sqr();
    let det = (a * d - b * c).norm_sqr();
    let disc = (trace * trace - 4.0 * det).max(0.0).sqrt();
    (0.5 * (trace + disc)).sqrt()
}

/// Random 2×2 matrices of operator norm ≤ `norm_max`, flattened row-major.
/// Gaussian entries rescaled by the operator norm; generically non-normal.
pub fn matrix_ball_points(seed: u64, n: usize, norm_max: f64) -> Vec<Vec<C64>> {
    let mut rng = rng(seed);
    (0..n)
        .map(|_| {
            let mut v: Vec<C64> = (0..4)
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    C64::new(re, im)
                })
                .collect();
            let scale = norm_max * rng.gen::<f64>() / (opnorm_2x2(&v) + 1e-9);
            for z in &mut v {
                *z *= scale;
            }
            v
        })
        .collect()
}

/// Sample `n` points in the interior of `domain`, scaled to radius `rmax`.
pub fn sample(domain: &Domain, seed: u64, n: usize, rmax: f64) -> Vec<Vec<C64>> {
    match domain {
        Domain::Disc => disc_points(seed, n, rmax),
        Domain::Ball(m) => ball_points(*m, seed, n, rmax),
        Domain::Polydisc(m) => polydisc_points(*m, seed, n, rmax),
        Domain::MatrixBall2 => matrix_ball_points(seed, n, rmax),
    }
}
