//! Turns logarithmic-negativity values into verdicts on local
//! distinguishability.
//!
//! If the family states could be discriminated by LOCC on a single copy, the
//! helper mixture would let the parties holding C and D end up sharing a Bell
//! pair, i.e. at least one ebit of distillable entanglement across AC:BD.
//! `E_N` bounds distillable entanglement from above, so `E_N < 1` across
//! that cut certifies indistinguishability. Where the bound is not strict the
//! verdict falls back to the known special cases, or stays inconclusive.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::measures::log_negativity;
use crate::qstate::{build_eta, build_rho, Cut, FamilyParams, PairKind, Triple};
use crate::{Result, C64};

/// Margin turning "strictly less than one ebit" into a floating-point test.
pub const CERT_EPS: f64 = 1e-9;

/// Tolerance on the special-case equalities `|ab| = 1/2`, `ab = 0` and the
/// phase test for exact Bell pairs.
pub const CASE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    /// `E_N < 1 - CERT_EPS` across the cut.
    CertifiedIndistinguishable,
    /// The states can be told apart by local computational-basis measurements.
    TriviallyDistinguishable,
    /// Maximally entangled triples, locally unitarily equivalent to three Bell
    /// states; indistinguishability is known but not re-derived here.
    KnownIndistinguishableByCitation,
    Inconclusive,
}

impl VerdictKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::CertifiedIndistinguishable => "certified_indistinguishable",
            Self::TriviallyDistinguishable => "trivially_distinguishable",
            Self::KnownIndistinguishableByCitation => "known_indistinguishable_by_citation",
            Self::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Special cases for three-state subsets.
///
/// For triples holding A1 and A2 ("ab pair"):
/// - `1.1.a`: the pair is maximally entangled (`|ab| = 1/2`), the third is not.
/// - `1.1.b`: both are maximally entangled.
/// - `2.1.a`: the pair is a product (`ab = 0`).
/// - `2.1.b`: both maximally entangled, the third exactly `(|01> +- |10>)/sqrt2`
///   while the pair is not exactly `(|00> +- |11>)/sqrt2`.
///
/// Triples holding A3 and A4 mirror this with `1.2`, `2.2.a`, `2.2.b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseLabel {
    #[serde(rename = "1.1.a")]
    Case11a,
    #[serde(rename = "1.1.b")]
    Case11b,
    #[serde(rename = "1.2")]
    Case12,
    #[serde(rename = "2.1.a")]
    Case21a,
    #[serde(rename = "2.1.b")]
    Case21b,
    #[serde(rename = "2.2.a")]
    Case22a,
    #[serde(rename = "2.2.b")]
    Case22b,
    #[serde(rename = "general")]
    General,
}

impl CaseLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Case11a => "1.1.a",
            Self::Case11b => "1.1.b",
            Self::Case12 => "1.2",
            Self::Case21a => "2.1.a",
            Self::Case21b => "2.1.b",
            Self::Case22a => "2.2.a",
            Self::Case22b => "2.2.b",
            Self::General => "general",
        }
    }

    pub fn all() -> [CaseLabel; 8] {
        [
            Self::Case11a,
            Self::Case11b,
            Self::Case12,
            Self::Case21a,
            Self::Case21b,
            Self::Case22a,
            Self::Case22b,
            Self::General,
        ]
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    /// Numeric logarithmic negativity across `cut`, in bits.
    pub en_value: f64,
    pub cut: Cut,
    pub rationale: String,
    pub case_label: Option<CaseLabel>,
}

/// Amplitude pair `(u, v)` of one family pair, e.g. `(a, b)`.
#[derive(Clone, Copy)]
struct Pair(C64, C64);

impl Pair {
    fn product_modulus(self) -> f64 {
        self.0.norm() * self.1.norm()
    }

    fn is_product(self) -> bool {
        self.product_modulus() <= CASE_TOL
    }

    fn is_maximally_entangled(self) -> bool {
        (self.product_modulus() - 0.5).abs() <= CASE_TOL
    }

    /// Both states of the pair are Bell states up to a global phase,
    /// i.e. `v / u = +-1`.
    fn is_exact_bell(self) -> bool {
        self.is_maximally_entangled() && (self.0 * self.1.conj()).im.abs() <= CASE_TOL
    }
}

fn pair_and_third(p: &FamilyParams, triple: &Triple) -> (Pair, Pair) {
    let ab = Pair(p.a(), p.b());
    let cd = Pair(p.c(), p.d());
    match triple.pair_kind() {
        PairKind::Ab => (ab, cd),
        PairKind::Cd => (cd, ab),
    }
}

/// Labels `(p, triple)` with the special case it falls under, or
/// [`CaseLabel::General`].
pub fn classify_case(p: &FamilyParams, triple: &Triple) -> CaseLabel {
    let p = p.canonicalize().params;
    let (pair, third) = pair_and_third(&p, triple);
    let ab_kind = triple.pair_kind() == PairKind::Ab;

    if pair.is_maximally_entangled() && third.is_maximally_entangled() {
        let third_led = third.is_exact_bell() && !pair.is_exact_bell();
        return match (ab_kind, third_led) {
            (true, false) => CaseLabel::Case11b,
            (true, true) => CaseLabel::Case21b,
            (false, false) => CaseLabel::Case12,
            (false, true) => CaseLabel::Case22b,
        };
    }
    if pair.is_maximally_entangled() {
        return if ab_kind { CaseLabel::Case11a } else { CaseLabel::Case12 };
    }
    if pair.is_product() {
        return if ab_kind { CaseLabel::Case21a } else { CaseLabel::Case22a };
    }
    CaseLabel::General
}

/// Verdict for all four family states, from `E_N` of the four-state mixture.
pub fn certify_four(p: &FamilyParams) -> Result<Verdict> {
    let cut = Cut::ac_bd();
    let en = log_negativity(&build_rho(p)?, cut.left())?.en;
    let canon = p.canonicalize().params;

    let (kind, rationale) = if en < 1.0 - CERT_EPS {
        (
            VerdictKind::CertifiedIndistinguishable,
            format!(
                "E_N = {en:.12} < 1 across {cut}; LOCC discrimination would yield at least 1 ebit"
            ),
        )
    } else if Pair(canon.a(), canon.b()).is_product() && Pair(canon.c(), canon.d()).is_product() {
        (
            VerdictKind::TriviallyDistinguishable,
            "states are |00>, |11>, |01>, |10> up to phases; local Z measurements suffice".to_string(),
        )
    } else {
        (
            VerdictKind::Inconclusive,
            format!("E_N = {en:.12} is not below 1 - {CERT_EPS:e}"),
        )
    };
    Ok(Verdict {
        kind,
        en_value: en,
        cut,
        rationale,
        case_label: None,
    })
}

/// Verdict for three of the four family states, from `E_N` of the
/// three-state mixture. The numeric value is always the decision input.
pub fn certify_three(p: &FamilyParams, triple: &Triple) -> Result<Verdict> {
    let cut = Cut::ac_bd();
    let en = log_negativity(&build_eta(p, triple)?, cut.left())?.en;
    let case = classify_case(p, triple);
    let canon = p.canonicalize().params;
    let (pair, third) = pair_and_third(&canon, triple);

    let (kind, rationale) = if en < 1.0 - CERT_EPS {
        (
            VerdictKind::CertifiedIndistinguishable,
            format!(
                "E_N = {en:.12} < 1 across {cut}; LOCC discrimination would yield at least 1 ebit"
            ),
        )
    } else if pair.is_maximally_entangled() && third.is_maximally_entangled() {
        (
            VerdictKind::KnownIndistinguishableByCitation,
            "all three states are maximally entangled, locally equivalent to three Bell states"
                .to_string(),
        )
    } else if pair.is_product() {
        (
            VerdictKind::TriviallyDistinguishable,
            "the complete pair is a product pair; local Z measurements and parity identify each state"
                .to_string(),
        )
    } else {
        (
            VerdictKind::Inconclusive,
            format!("E_N = {en:.12} >= 1 - {CERT_EPS:e}; the bound does not decide this point"),
        )
    };
    Ok(Verdict {
        kind,
        en_value: en,
        cut,
        rationale,
        case_label: Some(case),
    })
}
