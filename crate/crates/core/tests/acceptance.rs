//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `--nocapture`) and asserting it.

use std::time::Instant;

use symflag_core::bivar::BivarPoly;
use symflag_core::flags::{
    are_antipodal, inversion, random_sl_horocyclic, random_unipotent, sign_certificate,
    standard_flag, standard_opp_flag, ThetaSet,
};
use symflag_core::rep::{build_rho, limit_point, limit_point_at_infinity, sl2_relation_residuals,
    expected_h_spectrum, SuHoroParams};
use symflag_core::rng::{rational, trial_rng};
use symflag_core::scalar::{Backend, Scalar, Tolerance};
use symflag_core::symplectic::{
    antiprincipal_minor, minor_inversion_check, random_symplectic_with, SymplecticForm,
};
use symflag_core::witness::{
    effective_degree, extract_coefficient_polys, non_maximality_check, resultant_alpha_degree,
    sl2c_witness, su_witness, Verdict,
};

fn report(idx: usize, name: &str, pass: bool, detail: &str) {
    println!(
        "acceptance {:>2}: {:<28} {} ({})",
        idx,
        name,
        if pass { "pass" } else { "FAIL" },
        detail
    );
    assert!(pass, "acceptance criterion {idx} failed: {name} ({detail})");
}

fn tol() -> Tolerance {
    Tolerance::default()
}

fn all_nonempty_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
        out.push(members);
    }
    out
}

#[test]
fn acceptance_01_minor_inversion_law() {
    let start = Instant::now();
    let mut checked = 0usize;
    let mut failures = 0usize;
    for n in 1..=5usize {
        let ks: Vec<usize> = (1..=n).collect();
        for trial in 0..1000u64 {
            let mut rng = trial_rng(10_000 + n as u64, trial);
            let g = random_symplectic_with(n, &mut rng, 2.0, Backend::Exact);
            for rec in minor_inversion_check(&g, &ks).unwrap() {
                checked += 1;
                if !rec.residual.is_zero() {
                    failures += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        1,
        "minor inversion law",
        failures == 0 && elapsed < 60.0,
        &format!("{checked} exact residuals, {failures} failures, {elapsed:.1}s"),
    );
}

#[test]
fn acceptance_02_transversality_criterion() {
    let mut checked = 0usize;
    let mut failures = 0usize;
    for n in 2..=4usize {
        let mut thetas = vec![vec![2], vec![1, 2], vec![n]];
        thetas.dedup();
        for members in thetas {
            let theta = ThetaSet::new(n, members.clone()).unwrap();
            let form = SymplecticForm::standard(n, Backend::Exact);
            let opp = standard_opp_flag(&theta, &form);
            for trial in 0..500u64 {
                let mut rng = trial_rng(20_000 + 17 * n as u64, trial);
                let u = random_unipotent(&theta, &mut rng, Backend::Exact);
                let by_flags =
                    are_antipodal(&u.moved_opp_flag(&tol()), &opp, &tol()).unwrap();
                let by_minors = theta
                    .members()
                    .iter()
                    .all(|&k| !antiprincipal_minor(u.mat(), k).unwrap().is_zero());
                checked += 1;
                if by_flags != by_minors {
                    failures += 1;
                }
            }
        }
    }
    report(
        2,
        "transversality criterion",
        failures == 0,
        &format!("{checked} samples, {failures} disagreements"),
    );
}

#[test]
fn acceptance_03_inversion_involution() {
    let mut checked = 0usize;
    let mut failures = 0usize;
    for n in 1..=4usize {
        for members in all_nonempty_subsets(n) {
            let theta = ThetaSet::new(n, members).unwrap();
            let form = SymplecticForm::standard(n, Backend::Exact);
            let std = standard_flag(&theta, &form);
            let opp = standard_opp_flag(&theta, &form);
            let mut done = 0usize;
            let mut trial = 0u64;
            while done < 200 {
                let mut rng = trial_rng(30_000 + 31 * n as u64, trial);
                trial += 1;
                assert!(trial < 4000, "sampling stalled");
                let u = random_unipotent(&theta, &mut rng, Backend::Exact);
                let doubly = theta
                    .members()
                    .iter()
                    .all(|&k| !antiprincipal_minor(u.mat(), k).unwrap().is_zero());
                if !doubly {
                    continue;
                }
                done += 1;
                checked += 1;
                let tau = u.moved_opp_flag(&tol());
                let iota = inversion(&tau, &theta).unwrap();
                let preserved = are_antipodal(&iota, &opp, &tol()).unwrap()
                    && are_antipodal(&iota, &std, &tol()).unwrap();
                let twice = inversion(&iota, &theta).unwrap();
                if twice != tau || !preserved {
                    failures += 1;
                }
            }
        }
    }
    report(
        3,
        "inversion involution",
        failures == 0,
        &format!("{checked} doubly-transverse flags, {failures} failures"),
    );
}

#[test]
fn acceptance_04_sign_certificates() {
    let mut certs = 0usize;
    let mut failures = 0usize;
    for n in 1..=5usize {
        for members in all_nonempty_subsets(n) {
            let theta = ThetaSet::new(n, members).unwrap();
            let cert = sign_certificate(&theta, 50, 40_000 + n as u64).unwrap();
            certs += 1;
            let anchored = cert.statement().contains("contains an odd integer");
            if !cert.holds() || !anchored {
                failures += 1;
            }
            // odd members force the flip on every sample; even-only Theta
            // persists on every sample
            for rec in &cert.records {
                for &(k, s, si) in &rec.signs {
                    let ok = if k % 2 == 1 { si == -s } else { si == s };
                    if !ok {
                        failures += 1;
                    }
                }
            }
        }
    }
    report(
        4,
        "inversion sign certificates",
        failures == 0,
        &format!("{certs} certificates over all Theta, n <= 5"),
    );
}

#[test]
fn acceptance_05_representation_certificate() {
    let mut failures = 0usize;
    let mut relations = 0usize;
    for n in 2..=7usize {
        let t = build_rho(n).unwrap();
        for (_, _, is_zero) in sl2_relation_residuals(t.h(), t.x(), t.y()) {
            relations += 1;
            if !is_zero {
                failures += 1;
            }
        }
        if t.h_spectrum() != expected_h_spectrum(n) {
            failures += 1;
        }
    }
    report(
        5,
        "representation certificate",
        failures == 0,
        &format!("{relations} exact relations and spectra for n = 2..=7"),
    );
}

#[test]
fn acceptance_06_traceless_symmetric_block() {
    let mut failures = 0usize;
    for n in 2..=7usize {
        let t = build_rho(n).unwrap();
        let d = effective_degree(n) as u32;
        let id = symflag_core::mat::Mat::identity(2 * n, Backend::Exact);
        let base = extract_coefficient_polys(&id, &t).unwrap();
        // symbolic vanishing of the I and R coefficients of the bare
        // exponential, and the degree law
        if !base.f_i.is_zero() || !base.f_r.is_zero() {
            failures += 1;
        }
        if base.f_t.total_degree() != Some(d) || base.f_p.total_degree() != Some(d) {
            failures += 1;
        }
        for seed in 0..5u64 {
            let mut rng = trial_rng(60_000 + n as u64, seed);
            let g = random_sl_horocyclic(n, &mut rng, Backend::Exact);
            let polys = extract_coefficient_polys(&g, &t).unwrap();
            let below = |p: &BivarPoly| p.total_degree().map(|x| x < d).unwrap_or(true);
            if !below(&polys.f_i) || !below(&polys.f_r) {
                failures += 1;
            }
            if polys.f_t.total_degree() != Some(d) || polys.f_p.total_degree() != Some(d) {
                failures += 1;
            }
            if polys.f_t.leading_form() != base.f_t.leading_form()
                || polys.f_p.leading_form() != base.f_p.leading_form()
            {
                failures += 1;
            }
        }
    }
    report(
        6,
        "traceless symmetric block",
        failures == 0,
        "f_I = f_R = 0 symbolically; deg f_T = deg f_P = n-1 (even) / n-2 (odd), n = 2..=7",
    );
}

#[test]
fn acceptance_07_limit_set_antipodality() {
    let mut checked = 0usize;
    let mut failures = 0usize;
    for n in 2..=5usize {
        let t = build_rho(n).unwrap();
        let infinity = limit_point_at_infinity(n, Backend::Exact);
        let origin = limit_point(
            &t,
            &Scalar::zero(Backend::Exact),
            &Scalar::zero(Backend::Exact),
        )
        .unwrap();
        if !are_antipodal(&origin, &infinity, &tol()).unwrap() {
            failures += 1;
        }
        for trial in 0..200u64 {
            let mut rng = trial_rng(70_000 + n as u64, trial);
            let mut draw = || Scalar::from_rational(rational(&mut rng, 6, 2), Backend::Exact);
            let (a1, b1, a2, b2) = (draw(), draw(), draw(), draw());
            if a1 == a2 && b1 == b2 {
                continue;
            }
            let f1 = limit_point(&t, &a1, &b1).unwrap();
            let f2 = limit_point(&t, &a2, &b2).unwrap();
            checked += 1;
            if !are_antipodal(&f1, &f2, &tol()).unwrap() {
                failures += 1;
            }
            if !are_antipodal(&f1, &infinity, &tol()).unwrap() {
                failures += 1;
            }
        }
    }
    report(
        7,
        "limit set antipodality",
        failures == 0,
        &format!("{checked} distinct parameter pairs, n = 2..=5"),
    );
}

#[test]
fn acceptance_08_sl2c_witness_engine() {
    let start = Instant::now();
    let mut found = 0usize;
    let mut failures = 0usize;
    for n in 2..=5usize {
        let t = build_rho(n).unwrap();
        for trial in 0..100u64 {
            let mut rng = trial_rng(80_000 + n as u64, trial);
            let g = random_sl_horocyclic(n, &mut rng, Backend::Exact);
            match sl2c_witness(&g, &t, 1e-6, 1e-10, 81_000 + trial) {
                Ok(rep) => {
                    let ok = rep.verdict == Verdict::WitnessFound
                        && rep.residual <= 1e-10
                        && rep.perturbation_norm <= 1e-6
                        && rep.flag_check_non_antipodal;
                    if ok {
                        found += 1;
                    } else {
                        failures += 1;
                    }
                }
                Err(_) => failures += 1,
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        8,
        "sl2c witness engine",
        failures == 0 && elapsed < 300.0,
        &format!("{found}/400 witnesses, residual <= 1e-10, perturbation <= 1e-6, {elapsed:.1}s"),
    );
}

#[test]
fn acceptance_09_su_witness_engine() {
    let mut failures = 0usize;
    let mut found = 0usize;
    for n in 3..=5usize {
        for trial in 0..100u64 {
            let mut rng = trial_rng(90_000 + n as u64, trial);
            let len = n - 2;
            let draw_vec = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<Scalar> {
                (0..len)
                    .map(|_| Scalar::from_rational(rational(rng, 5, 3), Backend::Exact))
                    .collect()
            };
            let params = SuHoroParams {
                u: draw_vec(&mut rng),
                v: draw_vec(&mut rng),
                w: draw_vec(&mut rng),
                z: draw_vec(&mut rng),
                b: Scalar::from_rational(rational(&mut rng, 5, 3), Backend::Exact),
                c: Scalar::from_rational(rational(&mut rng, 5, 3), Backend::Exact),
                d: Scalar::from_rational(rational(&mut rng, 5, 3), Backend::Exact),
            };
            match su_witness(&params, n) {
                Ok(w) => {
                    let ok = w.residual.is_zero()
                        && w.flag_check_non_antipodal
                        && w.standard_picture_agrees;
                    if ok {
                        found += 1;
                    } else {
                        failures += 1;
                    }
                }
                Err(_) => failures += 1,
            }
        }
    }
    report(
        9,
        "su witness engine",
        failures == 0,
        &format!("{found}/300 closed-form witnesses with exactly zero residual"),
    );
}

#[test]
fn acceptance_10_non_maximality_certificate() {
    let mut failures = 0usize;
    let mut checked = 0usize;
    for trial in 0..500u64 {
        let n = 3 + (trial % 3) as usize;
        let mut rng = trial_rng(100_000, trial);
        let len = n - 2;
        let draw_vec = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<Scalar> {
            (0..len)
                .map(|_| Scalar::from_rational(rational(rng, 6, 3), Backend::Exact))
                .collect()
        };
        let alpha = draw_vec(&mut rng);
        let beta = draw_vec(&mut rng);
        let gamma = Scalar::from_rational(rational(&mut rng, 6, 3), Backend::Exact);
        // the block form itself is asserted inside the check
        let (det, block) = non_maximality_check(&alpha, &beta, &gamma, n).unwrap();
        checked += 1;
        let ge_one = (&det - &Scalar::one(Backend::Exact)).signum() >= 0;
        if !ge_one || !block.t_coef.is_zero() || !block.p_coef.is_zero() {
            failures += 1;
        }
    }
    report(
        10,
        "non-maximality certificate",
        failures == 0,
        &format!("{checked} parameter draws, determinant >= 1 throughout"),
    );
}

#[test]
fn acceptance_11_bezout_diagnostic() {
    let mut failures = 0usize;
    let mut checked = 0usize;
    for n in 3..=5usize {
        let t = build_rho(n).unwrap();
        let d = effective_degree(n);
        let instances = if n == 5 { 16 } else { 17 };
        for trial in 0..instances as u64 {
            let mut rng = trial_rng(110_000 + n as u64, trial);
            let g = random_sl_horocyclic(n, &mut rng, Backend::Exact);
            let polys = extract_coefficient_polys(&g, &t).unwrap();
            // rational jitter of the constant terms, exactly as the search
            // engine would apply it
            let mut ft = polys.f_t.clone();
            ft.add_term(0, 0, Scalar::ratio(1, 1009 + trial as i64, Backend::Exact));
            let mut fp = polys.f_p.clone();
            fp.add_term(0, 0, Scalar::ratio(1, 1013 + trial as i64, Backend::Exact));
            checked += 1;
            if resultant_alpha_degree(&ft, &fp) != Some(d * d) {
                failures += 1;
            }
        }
    }
    report(
        11,
        "bezout degree diagnostic",
        failures == 0,
        &format!("{checked} jittered instances, exact resultant degree = d^2"),
    );
}
