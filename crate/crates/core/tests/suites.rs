use qgreen_core::expr::parse_element;
use qgreen_core::green::{apply, chevalley_from_green, green_images, green_minus, green_plus, Route};
use qgreen_core::presentation::{chevalley_presentation, green_presentation, RankParams};
use qgreen_core::rewrite::Status;
use qgreen_core::superalg::{sup, Element, Kind, Parity};
use qgreen_core::verify::{self, FockConvention, SymbolicConfig, VStatus};
use qgreen_core::Scalar;

fn rank(m: usize, n: usize) -> RankParams {
    RankParams::new(m, n).unwrap()
}

fn cfg() -> SymbolicConfig {
    SymbolicConfig::default()
}

#[test]
fn distinct_index_super_bracket_vanishes() {
    let r = rank(1, 1);
    let rs = verify::chevalley_system(r, cfg()).unwrap();
    let x = sup(&r.e(1), &r.f(2), &Scalar::one()).unwrap();
    let out = rs.reduce(&x, 6, false);
    assert_eq!(out.status, Status::Zero);
    let zero = rs.reduce(&Element::zero(), 6, false);
    assert_eq!((zero.status, zero.steps), (Status::Zero, 0));
}

#[test]
fn last_mode_anticommutator_through_images() {
    let r = rank(1, 1);
    let p = green_presentation(r);
    let image = apply(&green_images(r), &p.relation("30c[i=2]").unwrap().body);
    let rs = verify::chevalley_system(r, cfg()).unwrap();
    assert_eq!(rs.reduce(&image, 6, false).status, Status::Zero);
}

#[test]
fn mixed_relations_hold_at_lowest_rank() {
    let rep = verify::check_green_from_chevalley(rank(1, 1), cfg()).unwrap();
    for tag in ["16[i=1,j=1]", "17[i=1,j=1]", "23c[i=2]", "30d[xi=-]", "30e[i=1,xi=+1,j=1,eta=+]"] {
        assert_eq!(rep.record(tag).map(|r| r.status), Some(VStatus::Verified), "{tag}");
    }
    assert!(rep.all_verified());
}

#[test]
fn chevalley_side_relations_at_lowest_rank() {
    let rep = verify::check_chevalley_from_green(rank(1, 1), cfg()).unwrap();
    for tag in ["8c[i=2,j=2]", "9a[i=1,j=1]", "9d", "10d", "41", "29c[i=1]"] {
        assert_eq!(rep.record(tag).map(|r| r.status), Some(VStatus::Verified), "{tag}");
    }
}

#[test]
fn lemmas_at_two_odd_two_even_modes() {
    let rep = verify::check_chevalley_from_green(rank(2, 2), cfg()).unwrap();
    assert!(rep.all_verified(), "{}", rep.to_text());
    for tag in ["36[i=1]", "39", "9c", "10c"] {
        assert!(rep.record(tag).is_some(), "{tag} missing");
    }
}

#[test]
fn generators_survive_the_round_trip() {
    for (m, n) in [(1, 1), (2, 1), (1, 2)] {
        let rep = verify::check_round_trip(rank(m, n), cfg()).unwrap();
        assert!(rep.all_verified(), "({m},{n})");
        assert_eq!(rep.records.len(), 8 * rank(m, n).N());
    }
}

#[test]
fn expansions_have_expected_shape() {
    let r = rank(1, 1);
    let want = parse_element("r2*e2", r).unwrap();
    assert_eq!(green_minus(r, 2, Route::Direct).unwrap().body, want);
    let want = parse_element("r2*(e1*e2 - q*e2*e1)", r).unwrap();
    assert_eq!(green_minus(r, 1, Route::Direct).unwrap().body, want);
    let want = parse_element("r2*(f2*f1 - q^-1*f1*f2)", r).unwrap();
    assert_eq!(green_plus(r, 1, Route::Direct).unwrap().body, want);

    let r = rank(2, 1);
    let g = green_minus(r, 1, Route::Direct).unwrap().body;
    assert_eq!(g.len(), 4);
    assert_eq!(g.parity(), Parity::Odd);
    assert!(g.terms().keys().all(|w| w.len() == 3));
    assert!(green_minus(r, 4, Route::Direct).is_err());
}

#[test]
fn last_mode_inverse_map() {
    let r = rank(1, 1);
    let e2 = chevalley_from_green(r, Kind::E, 2).unwrap();
    assert_eq!(e2, r.am(2).scale(&Scalar::inv_sqrt2()));
    let f2 = chevalley_from_green(r, Kind::F, 2).unwrap();
    assert_eq!(f2, r.ap(2).scale(&Scalar::inv_sqrt2().neg()));
}

#[test]
fn classical_limit_matches_undeformed_bodies() {
    for (m, n) in [(1, 1), (2, 2), (3, 1)] {
        let rep = verify::check_classical_limit(rank(m, n)).unwrap();
        assert!(rep.all_verified(), "({m},{n})");
        assert!(rep.record("30d[xi=+]").is_some() && rep.record("30d[xi=-]").is_some());
    }
}

#[test]
fn fock_module_satisfies_both_presentations() {
    for (m, n) in [(1, 1), (2, 1), (1, 2)] {
        let r = rank(m, n);
        let rep = verify::build_fock_rep(r, 6, 1.1, FockConvention::QKlein).unwrap();
        let green = verify::check_rep(&rep, &green_presentation(r)).unwrap();
        assert!(green.all_verified(), "green ({m},{n}) {}", green.to_text());
        let rep = rep.with_chevalley_images().unwrap();
        let chev = verify::check_rep(&rep, &chevalley_presentation(r)).unwrap();
        assert!(chev.all_verified(), "chevalley ({m},{n}) {}", chev.to_text());
    }
}

fn qnum(x: f64, q: f64) -> f64 {
    (q.powf(x) - q.powf(-x)) / (q - 1.0 / q)
}

#[test]
fn scaled_ladder_is_detected() {
    let r = rank(1, 1);
    let v: f64 = 1.1;
    let q = v * v;
    for (i, other, level) in [(1, 2, 5.5), (2, 1, 0.5)] {
        let mut rep = verify::build_fock_rep(r, 8, v, FockConvention::QKlein).unwrap();
        rep.mats.get_mut(&r.gen(Kind::Aplus, i)).unwrap().mapv_inplace(|z| z * 2.0);
        let out = verify::check_rep(&rep, &green_presentation(r)).unwrap();
        let c = out.record(&format!("30c[i={i}]")).unwrap();
        assert_eq!(c.status, VStatus::Failed);
        let oracle = 2.0 * qnum(level, q);
        let got = c.residual_value.unwrap();
        assert!((got - oracle).abs() < 1e-9 * oracle, "mode {i}: {got} vs {oracle}");
        assert_eq!(out.record(&format!("30c[i={other}]")).unwrap().status, VStatus::Verified);
    }
}

#[test]
fn trivial_module() {
    for (m, n) in [(1, 1), (2, 3)] {
        let r = rank(m, n);
        let rep = verify::build_trivial_rep(r);
        assert!(verify::check_rep(&rep, &chevalley_presentation(r)).unwrap().all_verified());
        assert!(verify::check_rep(&rep, &green_presentation(r)).unwrap().all_verified());
    }
}

#[test]
fn literal_ladders_break_the_green_relations() {
    let r = rank(1, 1);
    let rep = verify::build_fock_rep(r, 8, 1.1, FockConvention::Literal).unwrap();
    let out = verify::check_rep(&rep, &green_presentation(r)).unwrap();
    assert!(out.count(VStatus::Failed) > 0);
    assert_eq!(out.exit_code(), 2);
}
