//! Negativity, logarithmic negativity and the closed-form expressions for
//! the four-party helper states.
//!
//! All logarithms are base 2, so values are in ebits.

use serde::{Deserialize, Serialize};

use crate::linalg::hermitian_eigenvalues;
use crate::qstate::{DensityMatrix, FamilyParams, PairKind, Triple};
use crate::{Error, Result};

/// Partial-transpose eigenvalues in `[-NEG_EIGEN_EPS, 0)` count as zero.
pub const NEG_EIGEN_EPS: f64 = 1e-10;

/// Rounding slack on the strict region inequalities. Inputs such as
/// `a = b = 1/sqrt(2)` land exactly on the 3/4 boundary but round slightly
/// above it in f64.
pub const CONDITION_EPS: f64 = 1e-12;

/// Allowed gap between the trace norm and `1 + 2N` before the numeric
/// result is rejected.
pub const BOUND_IDENTITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Numeric,
    ClosedForm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnResult {
    /// Logarithmic negativity in bits.
    pub en: f64,
    /// Absolute value of the sum of the negative partial-transpose eigenvalues.
    pub negativity: f64,
    /// The eigenvalues that contributed to `negativity`, ascending.
    pub neg_eigenvalues: Vec<f64>,
    pub method: Method,
}

impl EnResult {
    pub fn closed_form(en: f64) -> Self {
        Self {
            en,
            negativity: (en.exp2() - 1.0) / 2.0,
            neg_eigenvalues: Vec::new(),
            method: Method::ClosedForm,
        }
    }
}

/// `N = -sum { lambda : lambda < -NEG_EIGEN_EPS }` over the spectrum of the
/// partial transpose on `subset`.
pub fn negativity<S: AsRef<str>>(m: &DensityMatrix, subset: &[S]) -> Result<f64> {
    Ok(log_negativity(m, subset)?.negativity)
}

/// `E_N = log2 || m^{T_subset} ||_1`, cross-checked against `log2(1 + 2N)`.
pub fn log_negativity<S: AsRef<str>>(m: &DensityMatrix, subset: &[S]) -> Result<EnResult> {
    let pt = m.partial_transpose(subset)?;
    let spectrum = hermitian_eigenvalues(&pt)?;

    let trace_norm: f64 = spectrum.eigenvalues.iter().map(|l| l.abs()).sum();
    let neg_eigenvalues: Vec<f64> = spectrum
        .eigenvalues
        .iter()
        .copied()
        .filter(|&l| l < -NEG_EIGEN_EPS)
        .collect();
    let negativity = -neg_eigenvalues.iter().sum::<f64>();

    let one_plus_two_n = 1.0 + 2.0 * negativity;
    if (trace_norm - one_plus_two_n).abs() > BOUND_IDENTITY_TOL {
        return Err(Error::BoundIdentity {
            trace_norm,
            one_plus_two_n,
        });
    }

    Ok(EnResult {
        en: trace_norm.log2(),
        negativity,
        neg_eigenvalues,
        method: Method::Numeric,
    })
}

/// `log2(|a|^2 + |c|^2)` for the four-state mixture across AC:BD.
pub fn en_rho_closed_form(p: &FamilyParams) -> Result<f64> {
    if !p.is_canonical() {
        return Err(Error::NotCanonical);
    }
    Ok((p.a().norm_sqr() + p.c().norm_sqr()).log2())
}

/// `(x, y)` for the eta expressions: `x` is `|ab|^2` when the triple holds
/// both `a, b` states and `|cd|^2` otherwise; `y` is the other product.
pub fn eta_moduli(p: &FamilyParams, triple: &Triple) -> (f64, f64) {
    match triple.pair_kind() {
        PairKind::Ab => (p.ab_sqr(), p.cd_sqr()),
        PairKind::Cd => (p.cd_sqr(), p.ab_sqr()),
    }
}

/// `log2{ (sqrt(1 + 16x - 4y) + 2 sqrt(1 - 4x + y)) / 3 + 1 }`.
///
/// Radicands are clamped at zero against rounding at `|ab| = 1/2`.
/// Agrees with the numeric logarithmic negativity only when `4x >= y`.
pub fn en_eta_published(x: f64, y: f64) -> f64 {
    (((1.0 + 16.0 * x - 4.0 * y).max(0.0).sqrt() + 2.0 * (1.0 - 4.0 * x + y).max(0.0).sqrt()) / 3.0
        + 1.0)
        .log2()
}

/// `log2(4/3 + (2/3) sqrt(1 - 4x + y))`, valid when `4x < y`.
pub fn en_eta_far_branch(x: f64, y: f64) -> f64 {
    (4.0 / 3.0 + 2.0 / 3.0 * (1.0 - 4.0 * x + y).max(0.0).sqrt()).log2()
}

/// Closed-form `E_N` of the three-state mixture across AC:BD.
pub fn en_eta_closed_form(p: &FamilyParams, triple: &Triple) -> Result<f64> {
    if !p.is_canonical() {
        return Err(Error::NotCanonical);
    }
    let (x, y) = eta_moduli(p, triple);
    Ok(if 4.0 * x >= y {
        en_eta_published(x, y)
    } else {
        en_eta_far_branch(x, y)
    })
}

/// `4|ab|^2 - |cd|^2 > 3/4`, strict up to [`CONDITION_EPS`].
pub fn condition3(p: &FamilyParams) -> bool {
    4.0 * p.ab_sqr() - p.cd_sqr() - 0.75 > CONDITION_EPS
}

/// `4|cd|^2 - |ab|^2 > 3/4`, strict up to [`CONDITION_EPS`].
pub fn condition4(p: &FamilyParams) -> bool {
    4.0 * p.cd_sqr() - p.ab_sqr() - 0.75 > CONDITION_EPS
}

/// The region condition that governs `triple`: [`condition3`] for triples
/// holding A1 and A2, [`condition4`] for those holding A3 and A4.
pub fn condition_for_triple(p: &FamilyParams, triple: &Triple) -> bool {
    match triple.pair_kind() {
        PairKind::Ab => condition3(p),
        PairKind::Cd => condition4(p),
    }
}

/// Signed distance `4x - y - 3/4` of the governing condition from its boundary.
pub fn condition_margin(p: &FamilyParams, triple: &Triple) -> f64 {
    let (x, y) = eta_moduli(p, triple);
    4.0 * x - y - 0.75
}
