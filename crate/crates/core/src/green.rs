//! Deformed Green generators built from Chevalley generators, and the
//! Chevalley generators written back through Green generators.

use std::collections::HashMap;

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::presentation::RankParams;
use crate::superalg::{plain, sup, Element, Gen, Kind};

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Side {
    Plus,
    Minus,
}

/// How a Green generator is assembled.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Route {
    Direct,
    Rec14(usize),
    Split15(usize),
}

impl std::str::FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Route> {
        let bad = || Error::InvalidRoute(s.to_string());
        if s == "direct" {
            return Ok(Route::Direct);
        }
        let (name, j) = s.split_once(':').ok_or_else(bad)?;
        let j: usize = j.parse().map_err(|_| bad())?;
        match name {
            "rec14" => Ok(Route::Rec14(j)),
            "split15" => Ok(Route::Split15(j)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GreenExpansion {
    pub rank: RankParams,
    pub side: Side,
    pub index: usize,
    pub route: Route,
    pub body: Element,
}

fn pm_one(odd_power: i64) -> Scalar {
    if odd_power.rem_euclid(2) == 1 {
        Scalar::int(-1)
    } else {
        Scalar::one()
    }
}

fn check_route(rank: RankParams, i: usize, route: Route) -> Result<()> {
    rank.check_index(i)?;
    if let Route::Rec14(j) | Route::Split15(j) = route {
        if !(i < j && j < rank.N()) {
            return Err(Error::InvalidRoute(format!("need {i} < j = {j} < {}", rank.N())));
        }
    }
    Ok(())
}

/// `(−1)^{(m−i)⟨i⟩}`
fn minus_sign(rank: RankParams, i: usize) -> i64 {
    (rank.m as i64 - i as i64) * rank.deg(i) as i64
}

/// `[e_i,[e_{i+1},…[e_{j−1}, x]_{q_{j−1}}…]_{q_i}`
fn nest_e(rank: RankParams, i: usize, j: usize, x: Element) -> Element {
    (i..j).rev().fold(x, |acc, l| plain(&rank.e(l), &acc, &rank.q_(l)))
}

/// `[[…[x, f_{j−1}]_{q̄_{j−1}}…], f_i]_{q̄_i}`
fn nest_f(rank: RankParams, i: usize, j: usize, x: Element) -> Element {
    (i..j).rev().fold(x, |acc, l| plain(&acc, &rank.f(l), &rank.qb_(l)))
}

pub fn green_minus(rank: RankParams, i: usize, route: Route) -> Result<GreenExpansion> {
    check_route(rank, i, route)?;
    let nn = rank.N();
    let r2 = Scalar::sqrt2();
    let body = match route {
        Route::Direct => nest_e(rank, i, nn, rank.e(nn)).scale(&pm_one(minus_sign(rank, i)).mul(&r2)),
        Route::Rec14(j) => {
            let aj = green_minus(rank, j, Route::Direct)?.body;
            let s = pm_one(minus_sign(rank, i) + minus_sign(rank, j));
            nest_e(rank, i, j, aj).scale(&s)
        }
        Route::Split15(j) => {
            let aj = green_minus(rank, j, Route::Direct)?.body;
            let s = pm_one(minus_sign(rank, i) + minus_sign(rank, j));
            let y = nest_e(rank, i, j - 1, rank.e(j - 1));
            plain(&y, &aj, &rank.q_(j - 1)).scale(&s)
        }
    };
    Ok(GreenExpansion { rank, side: Side::Minus, index: i, route, body })
}

pub fn green_plus(rank: RankParams, i: usize, route: Route) -> Result<GreenExpansion> {
    check_route(rank, i, route)?;
    let nn = rank.N();
    let r2 = Scalar::sqrt2();
    let body = match route {
        Route::Direct => nest_f(rank, i, nn, rank.f(nn)).scale(&pm_one((nn - i + 1) as i64).mul(&r2)),
        Route::Rec14(j) => {
            let aj = green_plus(rank, j, Route::Direct)?.body;
            nest_f(rank, i, j, aj).scale(&pm_one((i + j) as i64))
        }
        Route::Split15(j) => {
            let aj = green_plus(rank, j, Route::Direct)?.body;
            let z = nest_f(rank, i, j - 1, rank.f(j - 1));
            plain(&aj, &z, &rank.qb_(j - 1)).scale(&pm_one((i + j) as i64))
        }
    };
    Ok(GreenExpansion { rank, side: Side::Plus, index: i, route, body })
}

/// `L_i = k_i k_{i+1} … k_N`
pub fn cartan_l(rank: RankParams, i: usize) -> Result<Element> {
    rank.check_index(i)?;
    Ok((i..=rank.N()).fold(Element::one(), |acc, l| acc.mul(&rank.k(l))))
}

/// `L̄_i = k̄_N … k̄_i`
pub fn cartan_lbar(rank: RankParams, i: usize) -> Result<Element> {
    rank.check_index(i)?;
    Ok((i..=rank.N()).rev().fold(Element::one(), |acc, l| acc.mul(&rank.kbar(l))))
}

/// Images of the Green symbols `a_i^±, L_i, L̄_i` in the Chevalley algebra.
pub fn green_images(rank: RankParams) -> HashMap<Gen, Element> {
    let mut map = HashMap::new();
    for i in 1..=rank.N() {
        let ok = "index in range";
        map.insert(rank.gen(Kind::Aminus, i), green_minus(rank, i, Route::Direct).expect(ok).body);
        map.insert(rank.gen(Kind::Aplus, i), green_plus(rank, i, Route::Direct).expect(ok).body);
        map.insert(rank.gen(Kind::L, i), cartan_l(rank, i).expect(ok));
        map.insert(rank.gen(Kind::Lbar, i), cartan_lbar(rank, i).expect(ok));
    }
    map
}

/// A Chevalley generator of the given kind written through Green generators.
pub fn chevalley_from_green(rank: RankParams, kind: Kind, i: usize) -> Result<Element> {
    rank.check_index(i)?;
    let nn = rank.N();
    let half = Scalar::rational(1, 2);
    let one = Scalar::one();
    let r2inv = Scalar::inv_sqrt2();
    Ok(match kind {
        Kind::E if i == nn => rank.am(nn).scale(&r2inv),
        Kind::E => rank.lbar(i + 1).mul(&sup(&rank.am(i), &rank.ap(i + 1), &one)?).scale(&half),
        Kind::F if i == nn => rank.ap(nn).scale(&r2inv.neg()),
        Kind::F => sup(&rank.ap(i), &rank.am(i + 1), &one)?.mul(&rank.l(i + 1)).scale(&half),
        Kind::K if i == nn => rank.l(nn),
        Kind::K => rank.l(i).mul(&rank.lbar(i + 1)),
        Kind::Kbar if i == nn => rank.lbar(nn),
        Kind::Kbar => rank.lbar(i).mul(&rank.l(i + 1)),
        _ => return Err(Error::UnknownGenerator(format!("{kind:?}"))),
    })
}

/// The alternative expression `−½(−1)^{⟨i+1⟩}⟦a_{i+1}^-, a_i^+⟧ L_{i+1}` for `f_i`, i < N.
pub fn f_alternative(rank: RankParams, i: usize) -> Result<Element> {
    rank.check_index(i)?;
    if i == rank.N() {
        return Err(Error::IndexOutOfRange { index: i, max: rank.N() - 1 });
    }
    let c = Scalar::rational(-(rank.sgn(i + 1)), 2);
    Ok(sup(&rank.am(i + 1), &rank.ap(i), &Scalar::one())?.mul(&rank.l(i + 1)).scale(&c))
}

/// Images of `e_i, f_i, k_i, k̄_i` in the Green algebra.
pub fn chevalley_images(rank: RankParams) -> HashMap<Gen, Element> {
    let mut map = HashMap::new();
    for i in 1..=rank.N() {
        for kind in [Kind::E, Kind::F, Kind::K, Kind::Kbar] {
            map.insert(rank.gen(kind, i), chevalley_from_green(rank, kind, i).expect("index in range"));
        }
    }
    map
}

/// Applies a generator map produced by [`green_images`] or [`chevalley_images`].
pub fn apply(map: &HashMap<Gen, Element>, x: &Element) -> Element {
    x.substitute(&|g| map.get(&g).cloned())
}
