//! Cross-checks of the pipeline against an independently assembled reference:
//! states built entry by entry, a separate partial transpose, and nalgebra's
//! eigensolver.

mod common;

use common::{reference_eigenvalues, reference_log_negativity, reference_mixture, to_nalgebra};
use locc_cert::certifier::{certify_four, VerdictKind};
use locc_cert::linalg::hermitian_eigenvalues;
use locc_cert::measures::{
    condition3, en_eta_far_branch, en_eta_published, log_negativity,
};
use locc_cert::qstate::{build_eta, build_rho, Cut, FamilyParams, Triple};
use locc_cert::scanner::{evaluate_point, grid_angle, sort_records, sweep_grid};
use locc_cert::C64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_4, TAU};

fn params_of(p: &FamilyParams) -> (C64, C64, C64, C64) {
    (p.a(), p.b(), p.c(), p.d())
}

#[test]
fn reference_states_match_builders() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let p = FamilyParams::from_angles(rng.gen_range(0.0..FRAC_PI_4), rng.gen_range(0.0..FRAC_PI_4))
            .unwrap()
            .with_phases([rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU)])
            .unwrap();
        let (a, b, c, d) = params_of(&p);
        let rho = to_nalgebra(build_rho(&p).unwrap().matrix());
        assert!((rho - reference_mixture(&[1, 2, 3, 4], a, b, c, d)).camax() < 1e-15);
        for t in Triple::all() {
            let eta = to_nalgebra(build_eta(&p, &t).unwrap().matrix());
            assert!((eta - reference_mixture(&t.indices(), a, b, c, d)).camax() < 1e-15);
        }
    }
}

#[test]
fn pt_spectra_match_reference_eigensolver() {
    let cut = Cut::ac_bd();
    let n = 13;
    for i in 0..n {
        for j in 0..n {
            let p = FamilyParams::from_angles(grid_angle(i, n), grid_angle(j, n)).unwrap();
            let (a, b, c, d) = params_of(&p);
            for t in Triple::all() {
                let eta = build_eta(&p, &t).unwrap();
                let pt = eta.partial_transpose(cut.left()).unwrap();
                let ours = hermitian_eigenvalues(&pt).unwrap().eigenvalues;
                let reference = reference_eigenvalues(&common::reference_pt_ac(
                    &reference_mixture(&t.indices(), a, b, c, d),
                ));
                for (l, r) in ours.iter().zip(&reference) {
                    assert!((l - r).abs() < 1e-12, "eigenvalue {l} vs {r}");
                }
            }
        }
    }
}

/// The second eta branch is confirmed against the reference pipeline alone,
/// without touching the production partial transpose or eigensolver.
#[test]
fn eta_branches_follow_reference_log_negativity() {
    let n = 41;
    let (mut in_regime, mut off_regime) = (0, 0);
    for i in 0..n {
        for j in 0..n {
            let p = FamilyParams::from_angles(grid_angle(i, n), grid_angle(j, n)).unwrap();
            let (a, b, c, d) = params_of(&p);
            let en = reference_log_negativity(&reference_mixture(&[1, 2, 3], a, b, c, d));
            let (x, y) = (p.ab_sqr(), p.cd_sqr());
            if 4.0 * x >= y {
                in_regime += 1;
                assert!((en - en_eta_published(x, y)).abs() < 1e-10);
            } else {
                off_regime += 1;
                assert!((en - en_eta_far_branch(x, y)).abs() < 1e-10);
            }
        }
    }
    assert!(in_regime > 0 && off_regime > 0);
}

#[test]
fn pipeline_log_negativity_matches_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let cut = Cut::ac_bd();
    for _ in 0..100 {
        let p = FamilyParams::from_angles(rng.gen_range(0.0..FRAC_PI_4), rng.gen_range(0.0..FRAC_PI_4))
            .unwrap()
            .with_phases([rng.gen_range(0.0..TAU), 0.0, rng.gen_range(0.0..TAU), 0.0])
            .unwrap();
        let (a, b, c, d) = params_of(&p);
        let ours = log_negativity(&build_rho(&p).unwrap(), cut.left()).unwrap().en;
        let reference = reference_log_negativity(&reference_mixture(&[1, 2, 3, 4], a, b, c, d));
        assert!((ours - reference).abs() < 1e-10);
        let t = *Triple::all().choose(&mut rng).unwrap();
        let ours = log_negativity(&build_eta(&p, &t).unwrap(), cut.left()).unwrap().en;
        let reference = reference_log_negativity(&reference_mixture(&t.indices(), a, b, c, d));
        assert!((ours - reference).abs() < 1e-10);
    }
}

/// Area of `{4 sin^2(2t1)/4 - sin^2(2t2)/4 > 3/4}` inside `[0, pi/4]^2`, by
/// solving for the threshold in `t2` along fine `t1` slices.
fn condition3_area_fraction() -> f64 {
    let slices = 200_000;
    let h = FRAC_PI_4 / slices as f64;
    let mut area = 0.0;
    for k in 0..slices {
        let t1 = (k as f64 + 0.5) * h;
        let x = (2.0 * t1).sin().powi(2) / 4.0;
        // y = sin^2(2 t2) / 4 must stay below 4x - 3/4
        let ymax = 4.0 * x - 0.75;
        if ymax <= 0.0 {
            continue;
        }
        let t2_max = if ymax >= 0.25 { FRAC_PI_4 } else { (2.0 * ymax.sqrt()).asin() / 2.0 };
        area += t2_max * h;
    }
    area / (FRAC_PI_4 * FRAC_PI_4)
}

#[test]
fn certified_fraction_matches_region_area() {
    let n = 101;
    let t = Triple::new(&[1, 2, 3]).unwrap();
    let mut hits = 0usize;
    for i in 0..n {
        for j in 0..n {
            let p = FamilyParams::from_angles(grid_angle(i, n), grid_angle(j, n)).unwrap();
            hits += condition3(&p) as usize;
        }
    }
    let fraction = hits as f64 / (n * n) as f64;
    let area = condition3_area_fraction();
    assert!((fraction - area).abs() <= 1.0 / (n - 1) as f64, "{fraction} vs {area}");

    let certified = sweep_grid(n, &t)
        .unwrap()
        .iter()
        .filter(|r| r.verdict_three == VerdictKind::CertifiedIndistinguishable)
        .count();
    assert!((certified as f64 / (n * n) as f64 - area).abs() <= 1.0 / (n - 1) as f64);
}

#[test]
fn scan_is_independent_of_evaluation_order() {
    let n = 9;
    let t = Triple::new(&[1, 2, 3]).unwrap();
    let mut points: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    points.shuffle(&mut ChaCha8Rng::seed_from_u64(13));
    let mut shuffled: Vec<_> = points
        .iter()
        .map(|&(i, j)| evaluate_point(grid_angle(i, n), grid_angle(j, n), &t).unwrap())
        .collect();
    sort_records(&mut shuffled);
    let swept = sweep_grid(n, &t).unwrap();
    assert_eq!(shuffled.len(), swept.len());
    for (l, r) in shuffled.iter().zip(&swept) {
        assert_eq!(l, r);
        assert_eq!(l.en_eta_numeric.to_bits(), r.en_eta_numeric.to_bits());
        assert_eq!(l.en_rho_numeric.to_bits(), r.en_rho_numeric.to_bits());
    }
}

#[test]
fn log_negativity_ignores_phases() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let cut = Cut::ac_bd();
    for _ in 0..500 {
        let base = FamilyParams::from_angles(rng.gen_range(0.0..FRAC_PI_4), rng.gen_range(0.0..FRAC_PI_4)).unwrap();
        let phased = base
            .with_phases([rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU)])
            .unwrap();
        let t = *Triple::all().choose(&mut rng).unwrap();
        let en = |p: &FamilyParams| log_negativity(&build_eta(p, &t).unwrap(), cut.left()).unwrap().en;
        assert!((en(&base) - en(&phased)).abs() <= 1e-10);
        let en = |p: &FamilyParams| log_negativity(&build_rho(p).unwrap(), cut.left()).unwrap().en;
        assert!((en(&base) - en(&phased)).abs() <= 1e-10);
    }
}

#[test]
fn four_state_certifier_is_conclusive_away_from_the_corner() {
    let n = 41;
    for i in 0..n {
        for j in 0..n {
            let p = FamilyParams::from_angles(grid_angle(i, n), grid_angle(j, n)).unwrap();
            let v = certify_four(&p).unwrap();
            let near_corner = p.b().norm_sqr() + p.d().norm_sqr() <= 1e-6;
            assert_ne!(v.kind, VerdictKind::Inconclusive);
            if near_corner {
                assert_eq!(v.kind, VerdictKind::TriviallyDistinguishable);
            } else {
                assert_eq!(v.kind, VerdictKind::CertifiedIndistinguishable);
            }
        }
    }
}
