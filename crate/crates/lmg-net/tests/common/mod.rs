//! Independent numerical oracles for the integration tests.
//!
//! Everything here is deliberately written against plain `Vec`-based
//! matrices, without touching the crate's faer-backed eigensolver or its
//! spectral propagator, so that the two routes can be checked against each
//! other.

#![allow(dead_code)]

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

pub type RealMat = Vec<Vec<f64>>;
pub type ComplexMat = Vec<Vec<C>>;

/// Eigenvalues of a real symmetric matrix by the cyclic Jacobi rotation
/// method, ascending.
pub fn jacobi_eigenvalues(mat: &RealMat) -> Vec<f64> {
    let n = mat.len();
    let mut a: RealMat = mat.clone();
    for _sweep in 0..100 {
        let mut off = 0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p][q] * a[p][q];
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ev
}

/// Eigenvalues of a Hermitian complex matrix, ascending, via its real
/// symmetric embedding [[Re, -Im], [Im, Re]] (each eigenvalue doubled).
pub fn hermitian_eigenvalues_oracle(mat: &ComplexMat) -> Vec<f64> {
    let n = mat.len();
    let mut big = vec![vec![0f64; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            big[i][j] = mat[i][j].re;
            big[i][j + n] = -mat[i][j].im;
            big[i + n][j] = mat[i][j].im;
            big[i + n][j + n] = mat[i][j].re;
        }
    }
    let doubled = jacobi_eigenvalues(&big);
    doubled.chunks(2).map(|pair| 0.5 * (pair[0] + pair[1])).collect()
}

fn mat_mul(a: &ComplexMat, b: &ComplexMat) -> ComplexMat {
    let n = a.len();
    let mut out = vec![vec![C::ZERO; n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

/// `exp(-i H t)` by scaling-and-squaring with a Taylor series on the scaled
/// matrix; H real symmetric.
pub fn expm_minus_i_ht(h: &RealMat, t: f64) -> ComplexMat {
    let n = h.len();
    let norm: f64 = h
        .iter()
        .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let scale = (norm * t.abs()).max(1e-30);
    let squarings = scale.log2().ceil().max(0.0) as u32;
    let factor = t / 2f64.powi(squarings as i32);

    // Taylor series of exp(-i H factor).
    let mut result: ComplexMat = (0..n)
        .map(|i| (0..n).map(|j| if i == j { C::ONE } else { C::ZERO }).collect())
        .collect();
    let mut term = result.clone();
    for k in 1..=40 {
        // term <- term * (-i H factor) / k
        let mut next = vec![vec![C::ZERO; n]; n];
        for i in 0..n {
            for l in 0..n {
                let til = term[i][l];
                if til.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    next[i][j] += til * C::new(0.0, -h[l][j] * factor / k as f64);
                }
            }
        }
        term = next;
        let mut max = 0f64;
        for i in 0..n {
            for j in 0..n {
                result[i][j] += term[i][j];
                max = max.max(term[i][j].norm());
            }
        }
        if max < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        result = mat_mul(&result, &result);
    }
    result
}

/// Brute-force reduced density matrix: forms the full outer product
/// `psi psi^dagger` and contracts the traced-out indices bit by bit.
/// `keep` uses 1-based labels, qubit 1 = MSB, like the crate.
pub fn partial_trace_oracle(amps: &[C], n: usize, keep: &[usize]) -> ComplexMat {
    let dim = 1usize << n;
    let k = keep.len();
    let kd = 1usize << k;
    let mut rho = vec![vec![C::ZERO; kd]; kd];
    for x in 0..dim {
        for y in 0..dim {
            // Contributes only when the traced-out bits of x and y agree.
            let mut same_env = true;
            for q in 1..=n {
                if keep.contains(&q) {
                    continue;
                }
                if (x >> (n - q)) & 1 != (y >> (n - q)) & 1 {
                    same_env = false;
                    break;
                }
            }
            if !same_env {
                continue;
            }
            let mut a = 0usize;
            let mut b = 0usize;
            for (m, &q) in keep.iter().enumerate() {
                a |= ((x >> (n - q)) & 1) << (k - 1 - m);
                b |= ((y >> (n - q)) & 1) << (k - 1 - m);
            }
            rho[a][b] += amps[x] * amps[y].conj();
        }
    }
    rho
}

/// A Haar-ish random normalized state from a seeded stream.
pub fn random_state(n: usize, rng: &mut ChaCha12Rng) -> Vec<C> {
    let dim = 1usize << n;
    let mut amps: Vec<C> = (0..dim)
        .map(|_| C::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    amps
}

pub fn seeded_rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// Copies a faer matrix view into nested Vecs.
pub fn to_rows_f64(mat: &faer::Mat<f64>) -> RealMat {
    (0..mat.nrows())
        .map(|i| (0..mat.ncols()).map(|j| mat[(i, j)]).collect())
        .collect()
}

pub fn to_rows_c64(mat: &faer::Mat<C>) -> ComplexMat {
    (0..mat.nrows())
        .map(|i| (0..mat.ncols()).map(|j| mat[(i, j)]).collect())
        .collect()
}
