use super::*;
use crate::operators::{normalization_c, normalization_cprime};

fn p1() -> QParams {
    QParams::new(0.5, 0.5, -0.7).unwrap()
}

fn p2() -> QParams {
    QParams::new(0.7, 0.9, -0.4).unwrap()
}

fn opts() -> VerifyOptions {
    VerifyOptions::default()
}

fn assert_pass(r: &VerificationReport) {
    assert_eq!(r.status, Status::Passed, "{r:#?}");
    assert!(r.passed);
    let bound = r.tolerance * (1.0 + r.lhs.abs().max(r.rhs.abs()));
    assert!(r.residual <= bound);
}

#[test]
fn big_laguerre_examples() {
    let p = p1();
    let r = verify_big_laguerre_orthogonality(0, 1, &p, &opts()).unwrap();
    assert_pass(&r);
    assert!(r.residual <= 1e-9);
    let r = verify_big_laguerre_orthogonality(2, 2, &p, &opts()).unwrap();
    assert_pass(&r);
    let raw = (r.details["raw_lhs"], r.details["raw_rhs"]);
    assert!((raw.0 - raw.1).abs() <= 1e-9 * raw.1.abs());
    // m = m' = 0 is the lowest sum identity
    let r0 = verify_big_laguerre_orthogonality(0, 0, &p, &opts()).unwrap();
    let s = verify_sears_identity(&p, &opts()).unwrap();
    assert!((r0.details["raw_lhs"] - s.lhs).abs() < 1e-14);
}

#[test]
fn big_laguerre_truncated_double_sum_oracle() {
    // direct evaluation with infinite products recomputed at each point and
    // polynomials from the recurrence
    let p = p1();
    let t = Truncation::default();
    let (a, b, q) = (p.a, p.b, p.q);
    let inf = |x: f64| crate::qseries::q_pochhammer_inf(&x, &q, &t).unwrap();
    let mut lhs = 0.0;
    for n in 0..80 {
        let qn1 = q.powi(n + 1);
        let pu = crate::polynomials::big_q_laguerre_recurrence(3, a * qn1, &p);
        let pl = crate::polynomials::big_q_laguerre_recurrence(3, b * qn1, &p);
        lhs += inf(qn1) * inf(a * qn1 / b) / inf(a * qn1) * q.powi(n) * pu[1] * pu[3];
        lhs -= b / a * inf(qn1) * inf(b * qn1 / a) / inf(b * qn1) * q.powi(n) * pl[1] * pl[3];
    }
    assert!(lhs.abs() < 1e-12);
    let r = verify_big_laguerre_orthogonality(1, 3, &p, &opts()).unwrap();
    assert!((r.details["raw_lhs"] - lhs).abs() < 1e-12);
}

#[test]
fn sears_examples() {
    for p in [p1(), p2()] {
        let r = verify_sears_identity(&p, &opts()).unwrap();
        assert_pass(&r);
        assert!(r.residual <= 1e-10);
        assert!(r.details["phi_form_residual"] <= 1e-11);
        assert!(r.details["upper_sum"] > 0.0 && r.details["lower_sum"] > 0.0);
    }
}

#[test]
fn unitarity_examples() {
    let p = p1();
    let o = opts();
    assert_pass(&verify_unitarity(RowsOrColumns::Columns, 0, 0, &p, &o).unwrap());
    let r = verify_unitarity(RowsOrColumns::Columns, 0, -1, &p, &o).unwrap();
    assert_pass(&r);
    assert_eq!(r.rhs, 0.0);
    assert_pass(&verify_unitarity(RowsOrColumns::Rows, 0, 0, &p, &o).unwrap());
    assert!(verify_unitarity(RowsOrColumns::Rows, -1, 0, &p, &o).is_err());
}

#[test]
fn rows_agree_with_big_laguerre() {
    for p in [p1(), p2()] {
        for (m, m2) in [(0, 0), (1, 1), (0, 2), (3, 3), (2, 5)] {
            let u = verify_unitarity(RowsOrColumns::Rows, m, m2, &p, &opts()).unwrap();
            let b =
                verify_big_laguerre_orthogonality(m as usize, m2 as usize, &p, &opts()).unwrap();
            assert_eq!(u.passed, b.passed);
            assert!(
                (u.lhs - b.lhs).abs() <= 1e-10 * (1.0 + b.lhs.abs()),
                "{m} {m2}: {} {}",
                u.lhs,
                b.lhs
            );
            assert!((u.residual - b.residual).abs() <= 1e-10);
        }
    }
}

#[test]
fn dual_examples() {
    let p = p1();
    let t = Truncation::default();
    let r = verify_dual_orthogonality(DualPair::FF, 0, 0, &p, &opts()).unwrap();
    assert_pass(&r);
    let c0 = normalization_c(0, &p, &t).unwrap();
    assert!((r.details["raw_rhs"] - 1.0 / (c0 * c0)).abs() < 1e-14 / (c0 * c0));
    assert!((r.details["raw_lhs"] * c0 * c0 - 1.0).abs() < 1e-8);
    for n in 0..=5 {
        for n2 in 0..=5 {
            assert_pass(&verify_dual_orthogonality(DualPair::FG, n, n2, &p, &opts()).unwrap());
        }
    }
    let r = verify_dual_orthogonality(DualPair::GG, 0, 1, &p, &opts()).unwrap();
    assert_pass(&r);
    let cp = normalization_cprime(1, &p, &t).unwrap();
    let g = verify_dual_orthogonality(DualPair::GG, 1, 1, &p, &opts()).unwrap();
    assert!((g.details["raw_lhs"] * cp * cp - 1.0).abs() < 1e-8);
}

#[test]
fn meixner_examples() {
    let p = p1();
    let t = Truncation::default();
    let r = verify_meixner_orthogonality(0, 0, &p, &opts()).unwrap();
    assert_pass(&r);
    let inf = |x: f64| crate::qseries::q_pochhammer_inf(&x, &p.q, &t).unwrap();
    let expect = inf(p.b / p.a) / inf(p.b * p.q);
    assert!((r.details["raw_lhs"] - expect).abs() <= 1e-9 * expect);
    let r = verify_meixner_orthogonality(0, 3, &p, &opts()).unwrap();
    assert_pass(&r);
    assert!(r.details["raw_lhs"].abs() < 1e-9);
    let (_, h, _) = meixner_orthogonality_sum(0, 0, &p.a, &p.b, &p.q, &t).unwrap();
    assert!(h > 0.0);
    for n in 0..10 {
        let (_, h, _) = meixner_orthogonality_sum(n, 0, &p.a, &p.b, &p.q, &t).unwrap();
        assert!(h > 0.0);
    }
}

#[test]
fn negative_parameter_meixner_examples() {
    let p = p1();
    let t = Truncation::default();
    let r = verify_negative_b_meixner_orthogonality(0, 0, &p, &opts()).unwrap();
    assert_pass(&r);
    let inf = |x: f64| crate::qseries::q_pochhammer_inf(&x, &p.q, &t).unwrap();
    assert!(inf(p.a / p.b) > 0.0);
    let expect = inf(p.a / p.b) / inf(p.a * p.q);
    assert!((r.details["raw_lhs"] - expect).abs() <= 1e-9 * expect);
    let r = verify_negative_b_meixner_orthogonality(1, 2, &p, &opts()).unwrap();
    assert_pass(&r);
    assert!(r.details["raw_lhs"].abs() < 1e-9);
    // swapping the roles of a and b in the positive-family sum gives the same sum
    let (s, _, _) = meixner_orthogonality_sum(1, 2, &p.b, &p.a, &p.q, &t).unwrap();
    assert_eq!(s.value, r.details["raw_lhs"]);
}

#[test]
fn eq_zero_examples() {
    let p = p1();
    let t = Truncation::default();
    // n = n' = 0 is E_q(-1) itself
    let direct = crate::qseries::jackson_e_q(&-1.0, &p.q, &t).unwrap();
    assert!(direct.abs() < 1e-12);
    let r = verify_eq_zero_identity(0, 0, &p, &opts()).unwrap();
    assert_pass(&r);
    assert!((r.details["raw_lhs"] - direct).abs() < 1e-12);
    for (n, n2) in [(1, 0), (2, 3)] {
        let r = verify_eq_zero_identity(n, n2, &p, &opts()).unwrap();
        assert_pass(&r);
        assert!(r.details["raw_lhs"].abs() < 1e-9);
        assert!(r.note.as_deref().unwrap().contains("E_q"));
    }
}

#[test]
fn biorthogonality_examples() {
    let p = p1();
    for (m, n, expect) in [(0, 0, 1.0), (0, -1, 0.0), (2, 2, 1.0)] {
        let r = verify_biorthogonality(m, n, &p, &opts()).unwrap();
        assert_pass(&r);
        assert_eq!(r.rhs, expect);
        assert!((r.lhs - expect).abs() < 1e-8);
    }
}

#[test]
fn weights_are_positive() {
    for p in [p1(), p2()] {
        for m in 0..40 {
            for s in [
                WeightedSpace::Dual,
                WeightedSpace::Meixner,
                WeightedSpace::MeixnerNegative,
            ] {
                assert!(s.weight(m, &p.a, &p.b, &p.q) > 0.0, "{s:?} {m}");
            }
        }
    }
}

#[test]
fn scalar_product_reproduces_dual_norm() {
    let p = p1();
    let t = Truncation::default();
    let f = |m: usize| Ok(crate::polynomials::dual_f(0, m, &p));
    let s = WeightedSpace::Dual.scalar_product(&p, &t, f, f).unwrap();
    let c0 = normalization_c(0, &p, &t).unwrap();
    assert!((s.value * c0 * c0 - 1.0).abs() < 1e-10);
}

#[test]
fn reports_are_deterministic() {
    let p = p2();
    let a = verify_dual_orthogonality(DualPair::FG, 3, 4, &p, &opts()).unwrap();
    let b = verify_dual_orthogonality(DualPair::FG, 3, 4, &p, &opts()).unwrap();
    assert_eq!(format!("{a:?}"), format!("{b:?}"));
}

#[test]
fn extended_precision_agrees() {
    let p = p1();
    let ext = VerifyOptions {
        precision: Precision::Extended,
        ..opts()
    };
    let d = verify_biorthogonality(1, 1, &p, &opts()).unwrap();
    let e = verify_biorthogonality(1, 1, &p, &ext).unwrap();
    assert_eq!(e.precision, Precision::Extended);
    assert!((d.lhs - e.lhs).abs() < 1e-12);
}

#[test]
fn grids_and_names() {
    assert_eq!(index_grid(Identity::Sears, 8), vec![Check::Sears]);
    assert_eq!(index_grid(Identity::BigLaguerre, 2).len(), 6);
    assert_eq!(index_grid(Identity::Biortho, 1).len(), 16);
    for id in Identity::ALL {
        assert_eq!(Identity::from_name(id.name()), Some(id));
    }
    assert_eq!(Identity::from_name("bogus"), None);
}
