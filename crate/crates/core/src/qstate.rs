//! Multi-qubit pure states, the two-qubit state families, mixtures and
//! partial transposes.
//!
//! Index convention: the first label of a register is the most significant
//! bit. For the four-party register `A,B,C,D` the basis index is
//! `8*i_A + 4*i_B + 2*i_C + i_D`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::linalg::{hermitian_eigenvalues, Matrix};
use crate::{Error, Result, C64};

/// Tolerance on `sum |amplitude|^2 = 1` and on the family normalizations.
pub const NORM_TOL: f64 = 1e-12;

/// Slack allowed on `|a| >= |b|` and `|c| >= |d|` when checking canonical form.
pub const CANONICAL_SLACK: f64 = 1e-12;

/// Trace and positivity tolerance when validating a density matrix.
pub const DENSITY_TOL: f64 = 1e-10;

/// Amplitudes `(a, b, c, d)` of the two-qubit family
/// `a|00>+b|11>`, `conj(b)|00>-conj(a)|11>`, `c|01>+d|10>`, `conj(d)|01>-conj(c)|10>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    a: C64,
    b: C64,
    c: C64,
    d: C64,
}

/// Result of [`FamilyParams::canonicalize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Canonical {
    pub params: FamilyParams,
    /// `(a, b)` was replaced by `(conj(b), -conj(a))`, exchanging the roles of A1 and A2.
    pub swapped_ab: bool,
    /// `(c, d)` was replaced by `(conj(d), -conj(c))`, exchanging the roles of A3 and A4.
    pub swapped_cd: bool,
}

impl FamilyParams {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        for (name, z) in [("a", a), ("b", b), ("c", c), ("d", d)] {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite(format!("{name} = {z}")));
            }
        }
        let ab = a.norm_sqr() + b.norm_sqr();
        let cd = c.norm_sqr() + d.norm_sqr();
        if (ab - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidParams(format!("|a|^2 + |b|^2 = {ab}, expected 1")));
        }
        if (cd - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidParams(format!("|c|^2 + |d|^2 = {cd}, expected 1")));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::new(C64::new(a, 0.0), C64::new(b, 0.0), C64::new(c, 0.0), C64::new(d, 0.0))
    }

    /// The point where the family reproduces the four Bell states.
    pub fn bell() -> Self {
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        Self { a: h, b: h, c: h, d: h }
    }

    /// `a = cos theta1, b = sin theta1, c = cos theta2, d = sin theta2`.
    ///
    /// `theta == pi/4` maps to the exact constant `1/sqrt(2)` for both moduli so
    /// grids land on the Bell point without trig rounding.
    pub fn from_angles(theta1: f64, theta2: f64) -> Result<Self> {
        let (a, b) = cos_sin(theta1);
        let (c, d) = cos_sin(theta2);
        Self::real(a, b, c, d)
    }

    /// Multiplies `a, b, c, d` by `exp(i*phase_k)`.
    pub fn with_phases(&self, phases: [f64; 4]) -> Result<Self> {
        let p = |z: C64, t: f64| z * C64::from_polar(1.0, t);
        Self::new(
            p(self.a, phases[0]),
            p(self.b, phases[1]),
            p(self.c, phases[2]),
            p(self.d, phases[3]),
        )
    }

    /// Rescales `(a, b)` and `(c, d)` to unit norm. Fails if either pair is zero
    /// or non-finite.
    pub fn normalized(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        let nab = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let ncd = (c.norm_sqr() + d.norm_sqr()).sqrt();
        if !(nab.is_finite() && ncd.is_finite()) || nab == 0.0 || ncd == 0.0 {
            return Err(Error::InvalidParams("cannot normalize a zero pair".into()));
        }
        Self::new(a / nab, b / nab, c / ncd, d / ncd)
    }

    pub fn a(&self) -> C64 {
        self.a
    }
    pub fn b(&self) -> C64 {
        self.b
    }
    pub fn c(&self) -> C64 {
        self.c
    }
    pub fn d(&self) -> C64 {
        self.d
    }

    /// `|ab|^2`.
    pub fn ab_sqr(&self) -> f64 {
        (self.a * self.b).norm_sqr()
    }

    /// `|cd|^2`.
    pub fn cd_sqr(&self) -> f64 {
        (self.c * self.d).norm_sqr()
    }

    pub fn is_canonical(&self) -> bool {
        self.a.norm() >= self.b.norm() - CANONICAL_SLACK
            && self.c.norm() >= self.d.norm() - CANONICAL_SLACK
    }

    /// Brings the parameters to `|a| >= |b|`, `|c| >= |d|` without changing
    /// the set of four states.
    pub fn canonicalize(&self) -> Canonical {
        let mut params = *self;
        let swapped_ab = self.a.norm() < self.b.norm();
        if swapped_ab {
            params.a = self.b.conj();
            params.b = -self.a.conj();
        }
        let swapped_cd = self.c.norm() < self.d.norm();
        if swapped_cd {
            params.c = self.d.conj();
            params.d = -self.c.conj();
        }
        Canonical {
            params,
            swapped_ab,
            swapped_cd,
        }
    }
}

fn cos_sin(theta: f64) -> (f64, f64) {
    if theta == FRAC_PI_4 {
        (FRAC_1_SQRT_2, FRAC_1_SQRT_2)
    } else {
        (theta.cos(), theta.sin())
    }
}

/// Which pair of family states a [`Triple`] contains in full.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    /// Contains A1 and A2 (the `a, b` states); the third is A3 or A4.
    Ab,
    /// Contains A3 and A4 (the `c, d` states); the third is A1 or A2.
    Cd,
}

/// Three distinct indices from `1..=4`, stored sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Triple([usize; 3]);

impl Triple {
    pub fn new(indices: &[usize]) -> Result<Self> {
        let mut v = indices.to_vec();
        v.sort_unstable();
        let ok = v.len() == 3 && v.iter().all(|i| (1..=4).contains(i)) && v[0] < v[1] && v[1] < v[2];
        if !ok {
            return Err(Error::InvalidTriple(indices.to_vec()));
        }
        Ok(Self([v[0], v[1], v[2]]))
    }

    pub fn indices(&self) -> [usize; 3] {
        self.0
    }

    pub fn pair_kind(&self) -> PairKind {
        if self.0[0] == 1 && self.0[1] == 2 {
            PairKind::Ab
        } else {
            PairKind::Cd
        }
    }

    /// The index outside the complete pair.
    pub fn third(&self) -> usize {
        match self.pair_kind() {
            PairKind::Ab => self.0[2],
            PairKind::Cd => self.0[0],
        }
    }

    pub fn all() -> [Triple; 4] {
        [
            Triple([1, 2, 3]),
            Triple([1, 2, 4]),
            Triple([1, 3, 4]),
            Triple([2, 3, 4]),
        ]
    }
}

impl TryFrom<Vec<usize>> for Triple {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Triple::new(&v)
    }
}

impl From<Triple> for Vec<usize> {
    fn from(t: Triple) -> Self {
        t.0.to_vec()
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.0[0], self.0[1], self.0[2])
    }
}

impl FromStr for Triple {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parsed: std::result::Result<Vec<usize>, _> =
            s.split(',').map(|t| t.trim().parse::<usize>()).collect();
        match parsed {
            Ok(v) => Triple::new(&v),
            Err(_) => Err(Error::InvalidTriple(Vec::new())),
        }
    }
}

/// Ordered qubit labels; the first label is the most significant bit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Register(Vec<String>);

impl Register {
    pub fn new<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidRegister("no qubits".into()));
        }
        if labels.len() > 16 {
            return Err(Error::InvalidRegister(format!("{} qubits is too many", labels.len())));
        }
        let mut out: Vec<String> = Vec::with_capacity(labels.len());
        for l in labels {
            let l = l.as_ref();
            if l.is_empty() {
                return Err(Error::InvalidRegister("empty label".into()));
            }
            if out.iter().any(|o| o == l) {
                return Err(Error::LabelCollision(l.to_string()));
            }
            out.push(l.to_string());
        }
        Ok(Self(out))
    }

    /// The four-party register `A, B, C, D`.
    pub fn abcd() -> Self {
        Self(["A", "B", "C", "D"].iter().map(|s| s.to_string()).collect())
    }

    pub fn labels(&self) -> &[String] {
        &self.0
    }

    pub fn num_qubits(&self) -> usize {
        self.0.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.0.len()
    }

    /// Bit mask selecting `subset` within a basis index.
    pub fn mask<S: AsRef<str>>(&self, subset: &[S]) -> Result<usize> {
        let n = self.num_qubits();
        let mut mask = 0usize;
        for label in subset {
            let label = label.as_ref();
            let pos = self
                .0
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
            mask |= 1 << (n - 1 - pos);
        }
        Ok(mask)
    }
}

/// A bipartition of a register's qubits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    left: Vec<String>,
    right: Vec<String>,
}

impl Cut {
    /// Puts `left` on one side and the rest of `register` on the other.
    pub fn new<S: AsRef<str>>(register: &Register, left: &[S]) -> Result<Self> {
        let mask = register.mask(left)?;
        let n = register.num_qubits();
        let (mut l, mut r) = (Vec::new(), Vec::new());
        for (k, label) in register.labels().iter().enumerate() {
            if mask & (1 << (n - 1 - k)) != 0 {
                l.push(label.clone());
            } else {
                r.push(label.clone());
            }
        }
        if l.len() != left.len() {
            return Err(Error::InvalidCut("repeated label on the left".into()));
        }
        if l.is_empty() || r.is_empty() {
            return Err(Error::InvalidCut("both sides must be nonempty".into()));
        }
        Ok(Self { left: l, right: r })
    }

    /// Alice with Charu versus Bob with Debu.
    pub fn ac_bd() -> Self {
        Self {
            left: vec!["A".into(), "C".into()],
            right: vec!["B".into(), "D".into()],
        }
    }

    pub fn left(&self) -> &[String] {
        &self.left
    }

    pub fn right(&self) -> &[String] {
        &self.right
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[String]| {
            if v.iter().all(|s| s.chars().count() == 1) {
                v.concat()
            } else {
                v.join(",")
            }
        };
        write!(f, "{}:{}", join(&self.left), join(&self.right))
    }
}

/// Normalized amplitude vector over a labeled register.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    register: Register,
    amplitudes: Vec<C64>,
}

impl PureState {
    pub fn new(register: Register, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != register.dim() {
            return Err(Error::DimensionMismatch {
                lhs: amplitudes.len(),
                rhs: register.dim(),
            });
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("state amplitude".into()));
        }
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self { register, amplitudes })
    }

    /// Computational basis vector `|index>`.
    pub fn basis(register: Register, index: usize) -> Result<Self> {
        let dim = register.dim();
        if index >= dim {
            return Err(Error::DimensionMismatch { lhs: index, rhs: dim });
        }
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        Self::new(register, amps)
    }

    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn num_qubits(&self) -> usize {
        self.register.num_qubits()
    }

    /// Same amplitudes on a new register of equal size.
    pub fn relabel<S: AsRef<str>>(&self, labels: &[S]) -> Result<Self> {
        let register = Register::new(labels)?;
        if register.num_qubits() != self.num_qubits() {
            return Err(Error::DimensionMismatch {
                lhs: register.num_qubits(),
                rhs: self.num_qubits(),
            });
        }
        Ok(Self {
            register,
            amplitudes: self.amplitudes.clone(),
        })
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        if self.amplitudes.len() != other.amplitudes.len() {
            return Err(Error::DimensionMismatch {
                lhs: self.amplitudes.len(),
                rhs: other.amplitudes.len(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(x, y)| x.conj() * y)
            .sum())
    }
}

fn two_qubit(labels: [&str; 2], amps: [C64; 4]) -> PureState {
    PureState {
        register: Register::new(&labels).expect("static labels"),
        amplitudes: amps.to_vec(),
    }
}

/// Bell state `|B_i>`, `i` in `1..=4`, on qubits labeled `C, D`.
///
/// `B1 = (|00>+|11>)/sqrt2`, `B2 = (|00>-|11>)/sqrt2`,
/// `B3 = (|01>+|10>)/sqrt2`, `B4 = (|01>-|10>)/sqrt2`.
pub fn bell_state(i: usize) -> Result<PureState> {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    let z = C64::new(0.0, 0.0);
    let amps = match i {
        1 => [h, z, z, h],
        2 => [h, z, z, -h],
        3 => [z, h, h, z],
        4 => [z, h, -h, z],
        _ => return Err(Error::IndexOutOfRange { index: i }),
    };
    Ok(two_qubit(["C", "D"], amps))
}

/// Family state `|A_i>`, `i` in `1..=4`, on qubits labeled `A, B`.
pub fn a_state(i: usize, p: &FamilyParams) -> Result<PureState> {
    let z = C64::new(0.0, 0.0);
    let amps = match i {
        1 => [p.a, z, z, p.b],
        2 => [p.b.conj(), z, z, -p.a.conj()],
        3 => [z, p.c, p.d, z],
        4 => [z, p.d.conj(), -p.c.conj(), z],
        _ => return Err(Error::IndexOutOfRange { index: i }),
    };
    Ok(two_qubit(["A", "B"], amps))
}

/// `|s><s|`.
pub fn projector(s: &PureState) -> Matrix {
    Matrix::outer(&s.amplitudes, &s.amplitudes).expect("equal lengths")
}

/// Product state on the concatenated register, `left` labels first.
pub fn tensor(left: &PureState, right: &PureState) -> Result<PureState> {
    let mut labels: Vec<&str> = left.register.labels().iter().map(String::as_str).collect();
    labels.extend(right.register.labels().iter().map(String::as_str));
    let register = Register::new(&labels)?;
    let mut amplitudes = Vec::with_capacity(register.dim());
    for l in &left.amplitudes {
        for r in &right.amplitudes {
            amplitudes.push(l * r);
        }
    }
    Ok(PureState {
        register,
        amplitudes,
    })
}

/// Weighted collection of pure states on a shared register.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    members: Vec<(f64, PureState)>,
}

impl Ensemble {
    pub fn new(members: Vec<(f64, PureState)>) -> Result<Self> {
        let Some((_, first)) = members.first() else {
            return Err(Error::InvalidEnsemble("no members".into()));
        };
        let register = first.register.clone();
        let mut total = 0.0;
        for (w, s) in &members {
            if !w.is_finite() || *w <= 0.0 {
                return Err(Error::InvalidEnsemble(format!("weight {w} is not positive")));
            }
            if s.register != register {
                return Err(Error::InvalidEnsemble("members act on different registers".into()));
            }
            total += w;
        }
        if (total - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidEnsemble(format!("weights sum to {total}")));
        }
        Ok(Self { members })
    }

    /// Equal weights.
    pub fn uniform(states: Vec<PureState>) -> Result<Self> {
        let w = 1.0 / states.len().max(1) as f64;
        Self::new(states.into_iter().map(|s| (w, s)).collect())
    }

    pub fn members(&self) -> &[(f64, PureState)] {
        &self.members
    }

    pub fn register(&self) -> &Register {
        &self.members[0].1.register
    }
}

/// `sum_k w_k |s_k><s_k|`.
pub fn mix_ensemble(e: &Ensemble) -> DensityMatrix {
    let dim = e.register().dim();
    let mut data = vec![C64::new(0.0, 0.0); dim * dim];
    for (w, s) in &e.members {
        let amps = s.amplitudes();
        for i in 0..dim {
            let wi = amps[i] * *w;
            if wi == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..dim {
                data[i * dim + j] += wi * amps[j].conj();
            }
        }
    }
    DensityMatrix {
        matrix: Matrix::from_vec(dim, data).expect("finite by construction"),
        register: e.register().clone(),
    }
}

/// Hermitian, positive semidefinite, unit-trace matrix on a labeled register.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: Matrix,
    register: Register,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity within [`DENSITY_TOL`].
    pub fn new(matrix: Matrix, register: Register) -> Result<Self> {
        if matrix.dim() != register.dim() {
            return Err(Error::DimensionMismatch {
                lhs: matrix.dim(),
                rhs: register.dim(),
            });
        }
        let deviation = matrix.hermitian_deviation();
        if deviation > crate::linalg::HERMITIAN_TOL {
            return Err(Error::NotDensityMatrix(format!(
                "not Hermitian (deviation {deviation:e})"
            )));
        }
        let tr = matrix.trace().re;
        if (tr - 1.0).abs() > DENSITY_TOL {
            return Err(Error::NotDensityMatrix(format!("trace {tr}")));
        }
        let min = hermitian_eigenvalues(&matrix)?.min();
        if min < -DENSITY_TOL {
            return Err(Error::NotDensityMatrix(format!("eigenvalue {min}")));
        }
        Ok(Self { matrix, register })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn partial_transpose<S: AsRef<str>>(&self, subset: &[S]) -> Result<Matrix> {
        partial_transpose(&self.matrix, &self.register, subset)
    }
}

/// Transposes the tensor factors named in `subset`: `|i><j|` goes to
/// `|i'><j'|` where the subset bits are exchanged between `i` and `j`.
pub fn partial_transpose<S: AsRef<str>>(
    m: &Matrix,
    register: &Register,
    subset: &[S],
) -> Result<Matrix> {
    let dim = register.dim();
    if m.dim() != dim {
        return Err(Error::DimensionMismatch { lhs: m.dim(), rhs: dim });
    }
    let mask = register.mask(subset)?;
    let keep = !mask;
    let src = m.as_slice();
    let mut out = vec![C64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let ti = (i & keep) | (j & mask);
            let tj = (j & keep) | (i & mask);
            out[ti * dim + tj] = src[i * dim + j];
        }
    }
    Matrix::from_vec(dim, out)
}

fn paired_member(i: usize, p: &FamilyParams) -> Result<PureState> {
    tensor(&a_state(i, p)?, &bell_state(i)?)
}

/// `(1/4) sum_i P[|A_i>_AB |B_i>_CD]` on register `A, B, C, D`.
pub fn build_rho(p: &FamilyParams) -> Result<DensityMatrix> {
    let states = (1..=4).map(|i| paired_member(i, p)).collect::<Result<Vec<_>>>()?;
    Ok(mix_ensemble(&Ensemble::uniform(states)?))
}

/// `(1/3) sum_{i in triple} P[|A_i>_AB |B_i>_CD]` on register `A, B, C, D`.
pub fn build_eta(p: &FamilyParams, triple: &Triple) -> Result<DensityMatrix> {
    let states = triple
        .indices()
        .iter()
        .map(|&i| paired_member(i, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(mix_ensemble(&Ensemble::uniform(states)?))
}
