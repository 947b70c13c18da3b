//! Rank parameters, the Cartan matrix, and the Chevalley, Green and
//! classical relation lists.

use serde_json::{json, Value};

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::superalg::{anti, plain, sup, Element, Gen, Kind, Parity};

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct RankParams {
    pub m: usize,
    pub n: usize,
}

impl RankParams {
    pub fn new(m: usize, n: usize) -> Result<RankParams> {
        if m < 1 || n < 1 {
            return Err(Error::InvalidRank { m, n });
        }
        Ok(RankParams { m, n })
    }

    #[allow(non_snake_case)]
    pub fn N(&self) -> usize {
        self.m + self.n
    }

    /// ⟨i⟩: 1 for i ≤ m, 0 otherwise (also for i > N).
    pub fn deg(&self, i: usize) -> usize {
        usize::from(i <= self.m)
    }

    /// (−1)^{⟨i⟩}
    pub fn sgn(&self, i: usize) -> i64 {
        if i <= self.m {
            -1
        } else {
            1
        }
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < 1 || i > self.N() {
            return Err(Error::IndexOutOfRange { index: i, max: self.N() });
        }
        Ok(())
    }

    /// `q_i = q^{(−1)^{⟨i+1⟩}}`, defined for every i ≥ 0.
    pub fn q_(&self, i: usize) -> Scalar {
        if i < self.m {
            Scalar::qbar()
        } else {
            Scalar::q()
        }
    }

    /// `q̄_i`
    pub fn qb_(&self, i: usize) -> Scalar {
        if i < self.m {
            Scalar::q()
        } else {
            Scalar::qbar()
        }
    }

    pub fn gen(&self, kind: Kind, i: usize) -> Gen {
        Gen::new(kind, i, self.m)
    }

    fn el(&self, kind: Kind, i: usize) -> Element {
        Element::gen(self.gen(kind, i))
    }

    pub fn e(&self, i: usize) -> Element {
        self.el(Kind::E, i)
    }

    pub fn f(&self, i: usize) -> Element {
        self.el(Kind::F, i)
    }

    pub fn k(&self, i: usize) -> Element {
        self.el(Kind::K, i)
    }

    pub fn kbar(&self, i: usize) -> Element {
        self.el(Kind::Kbar, i)
    }

    pub fn am(&self, i: usize) -> Element {
        self.el(Kind::Aminus, i)
    }

    pub fn ap(&self, i: usize) -> Element {
        self.el(Kind::Aplus, i)
    }

    /// `a_i^η` with η = +1 or −1.
    pub fn a(&self, i: usize, eta: i8) -> Element {
        if eta > 0 {
            self.ap(i)
        } else {
            self.am(i)
        }
    }

    pub fn l(&self, i: usize) -> Element {
        self.el(Kind::L, i)
    }

    pub fn lbar(&self, i: usize) -> Element {
        self.el(Kind::Lbar, i)
    }

    /// `L_i^s`: `L_i` for s = +1, `L̄_i` for s = −1.
    pub fn l_pow(&self, i: usize, s: i8) -> Element {
        if s > 0 {
            self.l(i)
        } else {
            self.lbar(i)
        }
    }
}

/// The N×N Cartan matrix α_ij.
pub fn cartan_matrix(rank: RankParams) -> Vec<Vec<i64>> {
    let n = rank.N();
    let delta = |a: usize, b: usize| i64::from(a == b);
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    rank.sgn(j) * delta(i + 1, j) + rank.sgn(i) * delta(i, j + 1)
                        - (rank.sgn(j + 1) + rank.sgn(j)) * delta(i, j)
                        + delta(i, n) * delta(j, n)
                })
                .collect()
        })
        .collect()
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Flavor {
    Chevalley,
    Green,
    Classical,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Chevalley => "chevalley",
            Flavor::Green => "green",
            Flavor::Classical => "classical",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub tag: String,
    pub body: Element,
    pub parity: Parity,
}

impl Relation {
    pub fn new(tag: impl Into<String>, body: Element) -> Relation {
        let parity = body.parity();
        Relation { tag: tag.into(), body, parity }
    }

    /// Tag without the index annotation, e.g. `9b`.
    pub fn group(&self) -> &str {
        self.tag.split('[').next().unwrap_or(&self.tag)
    }
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub rank: RankParams,
    pub flavor: Flavor,
    pub generators: Vec<Gen>,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn to_json(&self) -> Value {
        json!({
            "flavor": self.flavor.name(),
            "m": self.rank.m,
            "n": self.rank.n,
            "generators": self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "relations": self.relations.iter().map(|r| json!({"tag": r.tag, "body": r.body.to_string()})).collect::<Vec<_>>(),
        })
    }

    pub fn relation(&self, tag: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.tag == tag)
    }

    pub fn group<'a>(&'a self, group: &'a str) -> impl Iterator<Item = &'a Relation> + 'a {
        self.relations.iter().filter(move |r| r.group() == group)
    }
}

fn sign_s(s: i8) -> char {
    if s > 0 {
        '+'
    } else {
        '-'
    }
}

/// Commutation relations among the Cartan letters `x_i`, `x̄_i`:
/// inverse pairs and pairwise commutativity (including the barred forms).
fn cartan_block(rank: RankParams, x: Kind, xbar: Kind, tag: &str, out: &mut Vec<Relation>) {
    let nn = rank.N();
    let one = Element::one();
    let g = |k: Kind, i: usize| Element::gen(rank.gen(k, i));
    for i in 1..=nn {
        out.push(Relation::new(format!("{tag}[i={i},inv]"), g(x, i).mul(&g(xbar, i)).sub(&one)));
        out.push(Relation::new(format!("{tag}[i={i},inv']"), g(xbar, i).mul(&g(x, i)).sub(&one)));
    }
    for i in 1..=nn {
        for j in i + 1..=nn {
            for (a, b, lbl) in [(x, x, ""), (x, xbar, ",bar2"), (xbar, x, ",bar1"), (xbar, xbar, ",bar12")] {
                let body = plain(&g(a, i), &g(b, j), &Scalar::one());
                out.push(Relation::new(format!("{tag}[i={i},j={j}{lbl}]"), body));
            }
        }
    }
}

/// Body of the e- (or f-) Serre relations with `x(i)` the generator.
fn serre(rank: RankParams, x: &dyn Fn(usize) -> Element, label: &str, out: &mut Vec<Relation>) -> Result<()> {
    let (m, nn) = (rank.m, rank.N());
    let (q, qb, one) = (Scalar::q(), Scalar::qbar(), Scalar::one());
    // a
    for i in 1..=nn {
        for j in i..=nn {
            if j == i + 1 {
                continue;
            }
            let body = sup(&x(i), &x(j), &one)?;
            if !body.is_zero() {
                out.push(Relation::new(format!("{label}a[i={i},j={j}]"), body));
            }
        }
    }
    // b
    for i in 1..=nn {
        if i == m || i == nn {
            continue;
        }
        for j in [i.wrapping_sub(1), i + 1] {
            if j < 1 || j > nn {
                continue;
            }
            let body = plain(&x(i), &plain(&x(i), &x(j), &qb), &q);
            out.push(Relation::new(format!("{label}b[i={i},j={j}]"), body));
        }
    }
    // c
    if m >= 2 {
        let body = anti(&plain(&x(m), &x(m - 1), &q), &plain(&x(m), &x(m + 1), &qb), &one);
        out.push(Relation::new(format!("{label}c"), body));
    }
    // d
    let inner = plain(&x(nn), &x(nn - 1), &qb);
    let body = plain(&x(nn), &plain(&x(nn), &inner, &one), &q);
    out.push(Relation::new(format!("{label}d"), body));
    Ok(())
}

pub fn chevalley_presentation(rank: RankParams) -> Presentation {
    let nn = rank.N();
    let mut rels = Vec::new();
    cartan_block(rank, Kind::K, Kind::Kbar, "12a", &mut rels);
    let alpha = cartan_matrix(rank);
    for i in 1..=nn {
        for j in 1..=nn {
            let a = alpha[i - 1][j - 1] as i32;
            let cases = [
                (rank.k(i), rank.e(j), a, "e"),
                (rank.k(i), rank.f(j), -a, "f"),
                (rank.kbar(i), rank.e(j), -a, "kbar,e"),
                (rank.kbar(i), rank.f(j), a, "kbar,f"),
            ];
            for (kk, x, p, lbl) in cases {
                let body = kk.mul(&x).sub(&x.mul(&kk).scale(&Scalar::q_pow(p)));
                rels.push(Relation::new(format!("12b[i={i},j={j},{lbl}]"), body));
            }
        }
    }
    let qq = Scalar::q().sub(&Scalar::qbar());
    for i in 1..=nn {
        for j in 1..=nn {
            let mut body = sup(&rank.e(i), &rank.f(j), &Scalar::one()).expect("homogeneous");
            if i == j {
                let c = rank.k(i).sub(&rank.kbar(i)).scale(&qq.inv().expect("nonzero"));
                body = body.sub(&c);
            }
            rels.push(Relation::new(format!("8c[i={i},j={j}]"), body));
        }
    }
    serre(rank, &|i| rank.e(i), "9", &mut rels).expect("homogeneous");
    serre(rank, &|i| rank.f(i), "10", &mut rels).expect("homogeneous");
    let mut generators = Vec::new();
    for i in 1..=nn {
        for k in [Kind::E, Kind::F, Kind::K, Kind::Kbar] {
            generators.push(rank.gen(k, i));
        }
    }
    Presentation { rank, flavor: Flavor::Chevalley, generators, relations: rels }
}

/// Index tuples `(i, ξ, j, η)` of the triple brackets tagged `30e`.
pub fn green_triple_indices(rank: RankParams) -> Vec<(usize, i8, usize, i8)> {
    let nn = rank.N() as i64;
    let mut v = Vec::new();
    for i in 1..=nn {
        for xi in [1i8, -1] {
            let ip = i + xi as i64;
            if ip < 1 || ip > nn {
                continue;
            }
            for j in 1..=nn {
                for eta in [1i8, -1] {
                    v.push((i as usize, xi, j as usize, eta));
                }
            }
        }
    }
    v
}

/// Triple bracket body at `(i, ξ, j, η)`.
pub fn green_triple_body(rank: RankParams, i: usize, xi: i8, j: usize, eta: i8) -> Element {
    let ip = (i as i64 + xi as i64) as usize;
    let inner = sup(&rank.a(i, eta), &rank.a(ip, -eta), &Scalar::one()).expect("homogeneous");
    let expo = if i == j { -(xi as i32) * rank.sgn(i) as i32 } else { 0 };
    let mut body = sup(&inner, &rank.a(j, eta), &Scalar::q_pow(expo)).expect("homogeneous");
    if j == ip {
        let c = if j <= rank.m { eta as i64 } else { 1 };
        let s = -xi * eta;
        body = body.sub(&rank.l_pow(j, s).mul(&rank.a(i, eta)).scale(&Scalar::int(2 * c)));
    }
    body
}

pub fn green_presentation(rank: RankParams) -> Presentation {
    let nn = rank.N();
    let mut rels = Vec::new();
    cartan_block(rank, Kind::L, Kind::Lbar, "30a", &mut rels);
    for i in 1..=nn {
        for j in 1..=nn {
            for eta in [1i8, -1] {
                let a = rank.a(j, eta);
                let s = sign_s(eta);
                if i != j {
                    rels.push(Relation::new(format!("32a[i={i},j={j},{s}]"), plain(&rank.l(i), &a, &Scalar::one())));
                    rels.push(Relation::new(
                        format!("32a[i={i},j={j},{s},bar]"),
                        plain(&rank.lbar(i), &a, &Scalar::one()),
                    ));
                } else {
                    let p = eta as i32 * rank.sgn(i) as i32;
                    rels.push(Relation::new(format!("32b[i={i},{s}]"), plain(&rank.l(i), &a, &Scalar::q_pow(p))));
                    rels.push(Relation::new(format!("32b[i={i},{s},bar]"), plain(&rank.lbar(i), &a, &Scalar::q_pow(-p))));
                }
            }
        }
    }
    let qq = Scalar::q().sub(&Scalar::qbar());
    for i in 1..=nn {
        let c = Scalar::int(2).div(&qq).expect("nonzero");
        let body = sup(&rank.am(i), &rank.ap(i), &Scalar::one())
            .expect("homogeneous")
            .add(&rank.l(i).sub(&rank.lbar(i)).scale(&c));
        rels.push(Relation::new(format!("30c[i={i}]"), body));
    }
    for xi in [1i8, -1] {
        let body = plain(
            &plain(&rank.a(nn - 1, xi), &rank.a(nn, xi), &Scalar::one()),
            &rank.a(nn, xi),
            &Scalar::qbar(),
        );
        rels.push(Relation::new(format!("30d[xi={}]", sign_s(xi)), body));
    }
    for (i, xi, j, eta) in green_triple_indices(rank) {
        let body = green_triple_body(rank, i, xi, j, eta);
        rels.push(Relation::new(format!("30e[i={i},xi={xi:+},j={j},eta={}]", sign_s(eta)), body));
    }
    let mut generators = Vec::new();
    for i in 1..=nn {
        for k in [Kind::Aminus, Kind::Aplus, Kind::L, Kind::Lbar] {
            generators.push(rank.gen(k, i));
        }
    }
    Presentation { rank, flavor: Flavor::Green, generators, relations: rels }
}

/// Body of the classical triple relation at `(i, j, k, η)`.
pub fn classical_triple_body(rank: RankParams, i: usize, j: usize, k: usize, eta: i8) -> Element {
    let one = Scalar::one();
    let inner = sup(&rank.a(i, eta), &rank.a(j, -eta), &one).expect("homogeneous");
    let mut body = sup(&inner, &rank.a(k, eta), &one).expect("homogeneous");
    if j == k {
        let c = if k <= rank.m { eta as i64 } else { 1 };
        body = body.sub(&rank.a(i, eta).scale(&Scalar::int(2 * c)));
    }
    body
}

pub fn classical_presentation(rank: RankParams) -> Presentation {
    let nn = rank.N();
    let mut rels = Vec::new();
    for eta in [1i8, -1] {
        let body = plain(
            &plain(&rank.a(nn - 1, eta), &rank.a(nn, eta), &Scalar::one()),
            &rank.a(nn, eta),
            &Scalar::one(),
        );
        rels.push(Relation::new(format!("2a[eta={}]", sign_s(eta)), body));
    }
    for i in 1..=nn {
        for j in i.saturating_sub(1).max(1)..=(i + 1).min(nn) {
            for k in 1..=nn {
                for eta in [1i8, -1] {
                    let body = classical_triple_body(rank, i, j, k, eta);
                    rels.push(Relation::new(format!("2b[i={i},j={j},k={k},eta={}]", sign_s(eta)), body));
                }
            }
        }
    }
    let mut generators = Vec::new();
    for i in 1..=nn {
        generators.push(rank.gen(Kind::Aminus, i));
        generators.push(rank.gen(Kind::Aplus, i));
    }
    Presentation { rank, flavor: Flavor::Classical, generators, relations: rels }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(m: usize, n: usize) -> RankParams {
        RankParams::new(m, n).unwrap()
    }

    #[test]
    fn rank_validation() {
        assert!(RankParams::new(0, 1).is_err());
        assert!(RankParams::new(1, 0).is_err());
    }

    #[test]
    fn cartan_small() {
        assert_eq!(cartan_matrix(r(1, 1)), vec![vec![0, 1], vec![1, -1]]);
    }

    #[test]
    fn cartan_44_verbatim() {
        let expected: Vec<Vec<i64>> = vec![
            vec![2, -1, 0, 0, 0, 0, 0, 0],
            vec![-1, 2, -1, 0, 0, 0, 0, 0],
            vec![0, -1, 2, -1, 0, 0, 0, 0],
            vec![0, 0, -1, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 1, -2, 1, 0, 0],
            vec![0, 0, 0, 0, 1, -2, 1, 0],
            vec![0, 0, 0, 0, 0, 1, -2, 1],
            vec![0, 0, 0, 0, 0, 0, 1, -1],
        ];
        assert_eq!(cartan_matrix(r(4, 4)), expected);
    }

    #[test]
    fn chevalley_11_contents() {
        let rank = r(1, 1);
        let p = chevalley_presentation(rank);
        let em2 = p.relation("9a[i=1,j=1]").unwrap();
        assert_eq!(em2.body, rank.e(1).mul(&rank.e(1)).scale(&Scalar::int(2)));
        let d = p.relation("9d").unwrap();
        let expected = plain(&rank.e(2), &plain(&rank.e(2), &plain(&rank.e(2), &rank.e(1), &Scalar::qbar()), &Scalar::one()), &Scalar::q());
        assert_eq!(d.body, expected);
        assert!(p.relations.iter().all(|r| r.parity != Parity::Mixed));
    }

    #[test]
    fn green_triple_bracket_example() {
        // i = j = 1 ≤ m, ξ = +1, η = +: subscript q
        let rank = r(1, 1);
        let p = green_presentation(rank);
        let rel = p.relation("30e[i=1,xi=+1,j=1,eta=+]").unwrap();
        let inner = sup(&rank.ap(1), &rank.am(2), &Scalar::one()).unwrap();
        let expected = sup(&inner, &rank.ap(1), &Scalar::q()).unwrap();
        assert_eq!(rel.body, expected);
    }

    #[test]
    fn green_nested_minus_body() {
        let rank = r(1, 1);
        let p = green_presentation(rank);
        let rel = p.relation("30d[xi=-]").unwrap();
        let expected = plain(&plain(&rank.am(1), &rank.am(2), &Scalar::one()), &rank.am(2), &Scalar::qbar());
        assert_eq!(rel.body, expected);
    }

    #[test]
    fn classical_triple_diagonal() {
        let rank = r(1, 1);
        let body = classical_triple_body(rank, 1, 1, 1, 1);
        let inner = sup(&rank.ap(1), &rank.am(1), &Scalar::one()).unwrap();
        let expected = sup(&inner, &rank.ap(1), &Scalar::one()).unwrap().sub(&rank.ap(1).scale(&Scalar::int(2)));
        assert_eq!(body, expected);
        assert!(rank.gen(Kind::Aplus, 1).is_odd());
        assert!(!rank.gen(Kind::Aplus, 2).is_odd());
    }
}
