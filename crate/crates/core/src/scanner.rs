//! Parameter sweeps over the canonical moduli region and cross-validation
//! of the closed forms against the numeric pipeline.
//!
//! Points are `a = cos theta1, b = sin theta1, c = cos theta2, d = sin theta2`
//! with both angles in `[0, pi/4]`, so every point is canonical. Phases are
//! fixed to zero; the numeric values do not depend on them.

use std::f64::consts::FRAC_PI_4;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certifier::{certify_four, certify_three, CaseLabel, VerdictKind, CERT_EPS};
use crate::measures::{
    condition3, condition4, condition_for_triple, en_eta_closed_form, en_eta_published,
    en_rho_closed_form, log_negativity,
};
use crate::qstate::{build_eta, build_rho, Cut, FamilyParams, PairKind, Triple};
use crate::{Error, Result};

/// Required agreement between numeric and closed-form `E_N`.
pub const AGREEMENT_TOL: f64 = 1e-9;

/// Points with `|4x - y - 3/4|` at or below this are left out of the
/// region-agreement check.
pub const BOUNDARY_BAND: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub theta1: f64,
    pub theta2: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    /// `|ab|^2`
    pub x: f64,
    /// `|cd|^2`
    pub y: f64,
    pub en_rho_numeric: f64,
    pub en_rho_closed: f64,
    pub en_eta_numeric: f64,
    pub en_eta_closed: f64,
    pub cond3: bool,
    pub cond4: bool,
    pub verdict_three: VerdictKind,
    pub verdict_four: VerdictKind,
    pub case_label: CaseLabel,
    pub triple: Triple,
}

impl ScanRecord {
    /// `(x, y)` with the roles the triple assigns them in the eta expressions.
    pub fn eta_moduli(&self) -> (f64, f64) {
        match self.triple.pair_kind() {
            PairKind::Ab => (self.x, self.y),
            PairKind::Cd => (self.y, self.x),
        }
    }

    /// Signed distance of the triple's governing condition from its boundary.
    pub fn condition_margin(&self) -> f64 {
        let (x, y) = self.eta_moduli();
        4.0 * x - y - 0.75
    }

    pub fn in_boundary_band(&self) -> bool {
        self.condition_margin().abs() <= BOUNDARY_BAND
    }

    /// The condition that governs this record's triple.
    pub fn governing_condition(&self) -> bool {
        match self.triple.pair_kind() {
            PairKind::Ab => self.cond3,
            PairKind::Cd => self.cond4,
        }
    }
}

/// Evaluates every quantity of a [`ScanRecord`] at one grid point.
pub fn evaluate_point(theta1: f64, theta2: f64, triple: &Triple) -> Result<ScanRecord> {
    let p = FamilyParams::from_angles(theta1, theta2)?;
    let cut = Cut::ac_bd();
    let en_rho_numeric = log_negativity(&build_rho(&p)?, cut.left())?.en;
    let en_eta_numeric = log_negativity(&build_eta(&p, triple)?, cut.left())?.en;
    let three = certify_three(&p, triple)?;
    let four = certify_four(&p)?;
    Ok(ScanRecord {
        theta1,
        theta2,
        a: p.a().re,
        b: p.b().re,
        c: p.c().re,
        d: p.d().re,
        x: p.ab_sqr(),
        y: p.cd_sqr(),
        en_rho_numeric,
        en_rho_closed: en_rho_closed_form(&p)?,
        en_eta_numeric,
        en_eta_closed: en_eta_closed_form(&p, triple)?,
        cond3: condition3(&p),
        cond4: condition4(&p),
        verdict_three: three.kind,
        verdict_four: four.kind,
        case_label: three.case_label.unwrap_or(CaseLabel::General),
        triple: *triple,
    })
}

/// Grid angle `k` of `n`, uniform on `[0, pi/4]` with both endpoints exact.
pub fn grid_angle(k: usize, n: usize) -> f64 {
    if k + 1 == n {
        FRAC_PI_4
    } else {
        FRAC_PI_4 * k as f64 / (n - 1) as f64
    }
}

/// Sorts by `(theta1, theta2)`.
pub fn sort_records(records: &mut [ScanRecord]) {
    records.sort_by(|l, r| {
        l.theta1
            .total_cmp(&r.theta1)
            .then(l.theta2.total_cmp(&r.theta2))
    });
}

/// `n x n` sweep of `(theta1, theta2)`, evaluated in parallel and returned
/// sorted.
pub fn sweep_grid(n: usize, triple: &Triple) -> Result<Vec<ScanRecord>> {
    if n < 2 {
        return Err(Error::GridTooSmall(n));
    }
    let mut records = (0..n * n)
        .into_par_iter()
        .map(|k| evaluate_point(grid_angle(k / n, n), grid_angle(k % n, n), triple))
        .collect::<Result<Vec<_>>>()?;
    sort_records(&mut records);
    Ok(records)
}

/// Summary of numeric-versus-closed-form agreement over a set of records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub records: usize,
    pub max_rho_deviation: f64,
    /// Branched closed form versus numeric, all records.
    pub max_eta_deviation: f64,
    /// Published expression versus numeric where `4x >= y`.
    pub max_eta_published_deviation_in_regime: f64,
    /// Published expression versus numeric where `4x < y`.
    pub max_eta_published_deviation_off_regime: f64,
    /// Records where `4x < y` and the closed form takes its second branch.
    pub regime_branch_records: usize,
    /// Records excluded from region agreement by [`BOUNDARY_BAND`].
    pub margin_band_records: usize,
    pub failures: Vec<String>,
}

impl CrossValidation {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn cross_validate(records: &[ScanRecord]) -> CrossValidation {
    let mut report = CrossValidation {
        records: records.len(),
        max_rho_deviation: 0.0,
        max_eta_deviation: 0.0,
        max_eta_published_deviation_in_regime: 0.0,
        max_eta_published_deviation_off_regime: 0.0,
        regime_branch_records: 0,
        margin_band_records: 0,
        failures: Vec::new(),
    };
    if records.is_empty() {
        report.failures.push("no records to validate".into());
        return report;
    }

    for r in records {
        let at = format!("(theta1={}, theta2={})", r.theta1, r.theta2);

        let rho_dev = (r.en_rho_numeric - r.en_rho_closed).abs();
        report.max_rho_deviation = report.max_rho_deviation.max(rho_dev);
        if rho_dev > AGREEMENT_TOL {
            report.failures.push(format!("rho closed form off by {rho_dev:e} at {at}"));
        }

        let eta_dev = (r.en_eta_numeric - r.en_eta_closed).abs();
        report.max_eta_deviation = report.max_eta_deviation.max(eta_dev);
        if eta_dev > AGREEMENT_TOL {
            report.failures.push(format!("eta closed form off by {eta_dev:e} at {at}"));
        }

        let (x, y) = r.eta_moduli();
        let published_dev = (r.en_eta_numeric - en_eta_published(x, y)).abs();
        if 4.0 * x >= y {
            report.max_eta_published_deviation_in_regime =
                report.max_eta_published_deviation_in_regime.max(published_dev);
            if published_dev > AGREEMENT_TOL {
                report
                    .failures
                    .push(format!("published eta expression off by {published_dev:e} in regime at {at}"));
            }
        } else {
            report.regime_branch_records += 1;
            report.max_eta_published_deviation_off_regime =
                report.max_eta_published_deviation_off_regime.max(published_dev);
        }

        if r.verdict_three == VerdictKind::CertifiedIndistinguishable
            && r.en_eta_numeric >= 1.0 - CERT_EPS
        {
            report.failures.push(format!("unsound three-state certificate at {at}"));
        }
        if r.verdict_four == VerdictKind::CertifiedIndistinguishable
            && r.en_rho_numeric >= 1.0 - CERT_EPS
        {
            report.failures.push(format!("unsound four-state certificate at {at}"));
        }

        if r.in_boundary_band() {
            report.margin_band_records += 1;
        } else {
            let certified = r.verdict_three == VerdictKind::CertifiedIndistinguishable;
            if certified != r.governing_condition() {
                report.failures.push(format!(
                    "region mismatch at {at}: certified={certified}, condition={}",
                    r.governing_condition()
                ));
            }
        }
    }
    report
}

/// Re-derives the governing condition from raw parameters. Used to check a
/// record's stored flags.
pub fn condition_at(theta1: f64, theta2: f64, triple: &Triple) -> Result<bool> {
    let p = FamilyParams::from_angles(theta1, theta2)?;
    Ok(condition_for_triple(&p, triple))
}
