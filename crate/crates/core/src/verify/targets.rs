//! Relation bodies checked by the suites. Every function returns
//! `(tag, body)` pairs where the body is claimed to vanish.

use crate::coeff::Scalar;
use crate::green::chevalley_images;
use crate::green::{apply, f_alternative};
use crate::presentation::RankParams;
use crate::superalg::{anti, plain, sup, Element, Kind};

fn sb(a: &Element, b: &Element, x: &Scalar) -> Element {
    sup(a, b, x).expect("homogeneous operands")
}

fn one() -> Scalar {
    Scalar::one()
}

fn sign(s: i64) -> Scalar {
    Scalar::int(s)
}

/// Mixed relations between Chevalley and Green generators, i ≠ N, all j.
pub fn mixed_relations(rank: RankParams) -> Vec<(String, Element)> {
    let nn = rank.N();
    let mut out = Vec::new();
    for i in 1..nn {
        for j in 1..=nn {
            let mut b16 = sb(&rank.e(i), &rank.ap(j), &one());
            let mut b17 = sb(&rank.am(j), &rank.f(i), &one());
            if i == j {
                b16 = b16.add(&rank.k(i).mul(&rank.ap(i + 1)).scale(&sign(rank.sgn(i + 1))));
                b17 = b17.sub(&rank.am(i + 1).mul(&rank.kbar(i)));
            }
            out.push((format!("16[i={i},j={j}]"), b16));
            out.push((format!("17[i={i},j={j}]"), b17));
        }
    }
    for i in 1..nn {
        for j in 1..=nn {
            if i + 1 < j || i > j {
                out.push((format!("18a[i={i},j={j}]"), sb(&rank.e(i), &rank.am(j), &one())));
            }
        }
        let b = sb(&rank.e(i), &rank.am(i + 1), &rank.q_(i)).sub(&rank.am(i).scale(&sign(rank.sgn(i + 1))));
        out.push((format!("18b[i={i}]"), b));
        out.push((format!("18c[i={i}]"), sb(&rank.e(i), &rank.am(i), &rank.qb_(i - 1))));
    }
    for i in 1..nn {
        for j in 1..=nn {
            if i + 1 < j || i > j {
                out.push((format!("19a[i={i},j={j}]"), sb(&rank.ap(j), &rank.f(i), &one())));
            }
        }
        let b = sb(&rank.ap(i + 1), &rank.f(i), &rank.qb_(i)).add(&rank.ap(i));
        out.push((format!("19b[i={i}]"), b));
        out.push((format!("19c[i={i}]"), sb(&rank.ap(i), &rank.f(i), &rank.q_(i - 1))));
    }
    out
}

/// Bilinear relations among Green generators with Chevalley right-hand sides.
pub fn bilinear_relations(rank: RankParams) -> Vec<(String, Element)> {
    let nn = rank.N();
    let mut out = Vec::new();
    let two = Scalar::int(2);
    for i in 1..nn {
        let a = sb(&rank.am(i), &rank.ap(i + 1), &one()).sub(&rank.l(i + 1).mul(&rank.e(i)).scale(&two));
        out.push((format!("23a[i={i}]"), a));
        let b = sb(&rank.am(i + 1), &rank.ap(i), &one())
            .add(&rank.f(i).mul(&rank.lbar(i + 1)).scale(&Scalar::int(2 * rank.sgn(i + 1))));
        out.push((format!("23b[i={i}]"), b));
    }
    let c = two.div(&Scalar::q().sub(&Scalar::qbar())).expect("nonzero");
    for i in 1..=nn {
        let b = sb(&rank.am(i), &rank.ap(i), &one()).add(&rank.l(i).sub(&rank.lbar(i)).scale(&c));
        out.push((format!("23c[i={i}]"), b));
    }
    out
}

/// Lemmas stated through Chevalley generators, written in Green generators.
pub fn green_side_lemmas(rank: RankParams) -> Vec<(String, Element)> {
    let (m, nn) = (rank.m, rank.N());
    let map = chevalley_images(rank);
    let e = |i: usize| apply(&map, &rank.e(i));
    let f = |i: usize| apply(&map, &rank.f(i));
    let mut out = Vec::new();
    for i in 1..=nn.saturating_sub(2) {
        if i == m {
            continue;
        }
        let lhs = plain(&e(i), &e(i + 1), &rank.q_(i - 1));
        let rhs = rank
            .lbar(i + 2)
            .mul(&sb(&rank.am(i), &rank.ap(i + 2), &one()))
            .scale(&Scalar::rational(rank.sgn(i + 1), 2));
        out.push((format!("36[i={i}]"), lhs.sub(&rhs)));
    }
    if m >= 2 {
        let inner = plain(&plain(&e(m - 1), &e(m), &Scalar::qbar()), &e(m + 1), &Scalar::q());
        out.push(("39".to_string(), sb(&e(m), &inner, &one())));
    }
    let c = Scalar::qbar().mul(&Scalar::inv_sqrt2());
    let b41 = plain(&e(nn), &e(nn - 1), &Scalar::qbar()).add(&rank.am(nn - 1).scale(&c));
    out.push(("41".to_string(), b41));
    for i in 1..nn {
        let alt = f_alternative(rank, i).expect("index below N");
        out.push((format!("29c[i={i}]"), alt.sub(&f(i))));
    }
    out
}

/// The anticommutator form of the extra Serre relations.
pub fn extra_serre_alternatives(rank: RankParams) -> Vec<(String, Element)> {
    let m = rank.m;
    if m < 2 {
        return Vec::new();
    }
    let body = |x: &dyn Fn(usize) -> Element| {
        anti(&plain(&x(m), &x(m - 1), &Scalar::qbar()), &plain(&x(m), &x(m + 1), &Scalar::q()), &one())
    };
    vec![
        ("9c'".to_string(), body(&|i| rank.e(i))),
        ("10c'".to_string(), body(&|i| rank.f(i))),
    ]
}

/// Chevalley generators that must survive the round trip through Green generators.
pub fn chevalley_generators(rank: RankParams) -> Vec<(String, Element)> {
    let mut out = Vec::new();
    for i in 1..=rank.N() {
        for (kind, name) in [(Kind::E, "e"), (Kind::F, "f"), (Kind::K, "k"), (Kind::Kbar, "kbar")] {
            out.push((format!("{name}{i}"), Element::gen(rank.gen(kind, i))));
        }
    }
    out
}

/// Green generators for the reverse round trip.
pub fn green_generators(rank: RankParams) -> Vec<(String, Element)> {
    let mut out = Vec::new();
    for i in 1..=rank.N() {
        for kind in [Kind::Aminus, Kind::Aplus, Kind::L, Kind::Lbar] {
            let g = rank.gen(kind, i);
            out.push((g.to_string(), Element::gen(g)));
        }
    }
    out
}
