//! Eigenvalues of dense Hermitian matrices.
//!
//! A complex Hermitian matrix H = A + iB is embedded into the real symmetric
//! 2n×2n matrix [[A, -B], [B, A]], whose spectrum is that of H with every
//! eigenvalue doubled. The extremes are unchanged, which is all the positivity
//! verdicts need.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

/// Dense complex matrix stored row-major.
#[derive(Clone, Debug)]
pub struct HermitianMatrix {
    n: usize,
    data: Vec<C64>,
}

impl HermitianMatrix {
    pub fn zeros(n: usize) -> Self {
        HermitianMatrix {
            n,
            data: vec![C64::new(0.0, 0.0); n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = f(i, j);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.n + j] = v;
    }

    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    /// Sorted (ascending) real eigenvalues, assuming Hermitian input.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let n = self.n;
        if n == 0 {
            return Vec::new();
        }
        let mut embed = DMatrix::<f64>::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                // Symmetrize against float noise before embedding.
                let h = 0.5 * (self.get(i, j) + self.get(j, i).conj());
                embed[(i, j)] = h.re;
                embed[(i + n, j + n)] = h.re;
                embed[(i, j + n)] = -h.im;
                embed[(i + n, j)] = h.im;
            }
        }
        let eig = embed.symmetric_eigen();
        let mut all: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        all.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // Every eigenvalue of H appears twice; keep one copy of each.
        all.into_iter().step_by(2).collect()
    }

    pub fn min_max_eigenvalues(&self) -> (f64, f64) {
        let ev = self.eigenvalues();
        (ev[0], *ev.last().unwrap())
    }
}
