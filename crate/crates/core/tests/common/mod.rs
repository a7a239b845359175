//! Shared helpers for integration tests: random states and an independent
//! reference pipeline built on nalgebra.

#![allow(dead_code)]

use locc_cert::linalg::Matrix;
use locc_cert::qstate::{mix_ensemble, DensityMatrix, Ensemble, PureState, Register};
use locc_cert::C64;
use nalgebra::DMatrix;
use rand::Rng;
use std::f64::consts::FRAC_1_SQRT_2;

pub fn random_pure(rng: &mut impl Rng, register: &Register) -> PureState {
    let dim = register.dim();
    let raw: Vec<C64> = (0..dim)
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    PureState::new(register.clone(), raw.iter().map(|z| z / norm).collect()).unwrap()
}

/// Mixture of 1..=6 random pure states on `A, B, C, D` with random weights.
pub fn random_density(rng: &mut impl Rng) -> DensityMatrix {
    let reg = Register::abcd();
    let k = rng.gen_range(1..=6);
    let raw: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    // absorb rounding so the weights sum to one within the ensemble tolerance
    let head: f64 = weights[..k - 1].iter().sum();
    weights[k - 1] = 1.0 - head;
    let members = weights
        .into_iter()
        .map(|w| (w, random_pure(rng, &reg)))
        .collect();
    mix_ensemble(&Ensemble::new(members).unwrap())
}

pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> Matrix {
    let mut data = vec![C64::new(0.0, 0.0); n * n];
    for i in 0..n {
        data[i * n + i] = C64::new(rng.gen_range(-1.0..1.0), 0.0);
        for j in i + 1..n {
            let z = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            data[i * n + j] = z;
            data[j * n + i] = z.conj();
        }
    }
    Matrix::from_vec(n, data).unwrap()
}

pub fn to_nalgebra(m: &Matrix) -> DMatrix<C64> {
    DMatrix::from_fn(m.dim(), m.dim(), |i, j| m.get(i, j))
}

/// Reference two-qubit amplitudes of the family, indexed `2*i_first + i_second`.
pub fn family_amplitudes(i: usize, a: C64, b: C64, c: C64, d: C64) -> [C64; 4] {
    let z = C64::new(0.0, 0.0);
    match i {
        1 => [a, z, z, b],
        2 => [b.conj(), z, z, -a.conj()],
        3 => [z, c, d, z],
        4 => [z, d.conj(), -c.conj(), z],
        _ => unreachable!(),
    }
}

pub fn bell_amplitudes(i: usize) -> [C64; 4] {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    let z = C64::new(0.0, 0.0);
    match i {
        1 => [h, z, z, h],
        2 => [h, z, z, -h],
        3 => [z, h, h, z],
        4 => [z, h, -h, z],
        _ => unreachable!(),
    }
}

/// Uniform mixture of `|A_i>_AB |B_i>_CD` over `indices`, assembled entry by
/// entry from the index formula `8 i_A + 4 i_B + 2 i_C + i_D`.
pub fn reference_mixture(indices: &[usize], a: C64, b: C64, c: C64, d: C64) -> DMatrix<C64> {
    let mut m = DMatrix::<C64>::zeros(16, 16);
    let w = 1.0 / indices.len() as f64;
    for &i in indices {
        let fam = family_amplitudes(i, a, b, c, d);
        let bell = bell_amplitudes(i);
        let mut v = [C64::new(0.0, 0.0); 16];
        for ia in 0..2 {
            for ib in 0..2 {
                for ic in 0..2 {
                    for id in 0..2 {
                        v[8 * ia + 4 * ib + 2 * ic + id] = fam[2 * ia + ib] * bell[2 * ic + id];
                    }
                }
            }
        }
        for r in 0..16 {
            for s in 0..16 {
                m[(r, s)] += v[r] * v[s].conj() * w;
            }
        }
    }
    m
}

/// Partial transpose on qubits A and C, swapping bits 3 and 1 between row and column.
pub fn reference_pt_ac(m: &DMatrix<C64>) -> DMatrix<C64> {
    let bits = |k: usize| [(k >> 3) & 1, (k >> 2) & 1, (k >> 1) & 1, k & 1];
    let index = |q: [usize; 4]| 8 * q[0] + 4 * q[1] + 2 * q[2] + q[3];
    let mut out = DMatrix::<C64>::zeros(16, 16);
    for r in 0..16 {
        for s in 0..16 {
            let (mut rb, mut sb) = (bits(r), bits(s));
            for q in [0, 2] {
                std::mem::swap(&mut rb[q], &mut sb[q]);
            }
            out[(index(rb), index(sb))] = m[(r, s)];
        }
    }
    out
}

pub fn reference_eigenvalues(m: &DMatrix<C64>) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// `log2 || m^{T_AC} ||_1` through nalgebra's Hermitian eigensolver.
pub fn reference_log_negativity(m: &DMatrix<C64>) -> f64 {
    reference_eigenvalues(&reference_pt_ac(m))
        .iter()
        .map(|l| l.abs())
        .sum::<f64>()
        .log2()
}
