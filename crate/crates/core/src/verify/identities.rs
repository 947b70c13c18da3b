//! Free-algebra bracket identities over generic graded symbols A, B, C.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::time::Instant;

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::rewrite::RewriteSystem;
use crate::superalg::{plain, sup, Element, Gen};

use super::{ms, Method, Record, VStatus, VerificationReport};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    Id1,
    Id2,
    Id3,
    Eq25,
    Eq40,
}

impl Identity {
    pub const ALL: [Identity; 5] = [Identity::Id1, Identity::Id2, Identity::Id3, Identity::Eq25, Identity::Eq40];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Id1 => "Id1",
            Identity::Id2 => "Id2",
            Identity::Id3 => "Id3",
            Identity::Eq25 => "Eq25",
            Identity::Eq40 => "Eq40",
        }
    }

    /// Whether `(|A|, |B|, |C|)` satisfies the parity hypothesis.
    pub fn admits(self, p: [bool; 3]) -> bool {
        match self {
            Identity::Id1 => true,
            Identity::Id2 | Identity::Eq25 => !(p[1] && p[2]),
            Identity::Id3 => !p[2],
            Identity::Eq40 => !p[1],
        }
    }

    /// Every admissible parity assignment, `true` meaning odd.
    pub fn parity_cases(self) -> Vec<[bool; 3]> {
        (0..8u8)
            .map(|b| [b & 4 != 0, b & 2 != 0, b & 1 != 0])
            .filter(|&p| self.admits(p))
            .collect()
    }

    /// Free scalar symbols the identity is stated over.
    pub fn symbols(self) -> &'static [&'static str] {
        match self {
            Identity::Id1 => &["x"],
            Identity::Id2 => &["z", "r", "s"],
            Identity::Id3 => &["x", "y"],
            Identity::Eq25 | Identity::Eq40 => &[],
        }
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Identity> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownGenerator(format!("identity {s}")))
    }
}

/// Scalar bindings; unbound symbols become aux symbols named `prefix + name`.
#[derive(Clone, Debug, Default)]
pub struct Bindings {
    pub values: BTreeMap<String, Scalar>,
    pub prefix: String,
}

impl Bindings {
    pub fn generic() -> Bindings {
        Bindings { values: BTreeMap::new(), prefix: "id_".to_string() }
    }

    pub fn with_prefix(prefix: &str) -> Bindings {
        Bindings { values: BTreeMap::new(), prefix: prefix.to_string() }
    }

    pub fn bind(mut self, name: &str, value: Scalar) -> Bindings {
        self.values.insert(name.to_string(), value);
        self
    }

    fn get(&self, name: &str) -> Scalar {
        self.values.get(name).cloned().unwrap_or_else(|| Scalar::aux(&format!("{}{name}", self.prefix)))
    }
}

fn parity_label(p: [bool; 3]) -> String {
    let s = |odd: bool| if odd { "odd" } else { "even" };
    format!("A={},B={},C={}", s(p[0]), s(p[1]), s(p[2]))
}

fn sb(a: &Element, b: &Element, x: &Scalar) -> Element {
    sup(a, b, x).expect("homogeneous operands")
}

fn derived(b: &Bindings, name: &str, value: Scalar) -> Result<Scalar> {
    match b.values.get(name) {
        Some(given) if *given != value => {
            Err(Error::Hypothesis(format!("{name} = {given} violates the side condition, expected {value}")))
        }
        _ => Ok(value),
    }
}

/// `LHS − RHS` expanded in the free algebra, before hypothesis rewriting.
/// The second component lists commutation hypotheses as relation bodies.
pub fn identity_difference(id: Identity, p: [bool; 3], b: &Bindings) -> Result<(Element, Vec<Element>)> {
    if !id.admits(p) {
        return Err(Error::Hypothesis(format!("{} does not admit {}", id.name(), parity_label(p))));
    }
    let a = Element::gen(Gen::generic(1, p[0]));
    let bb = Element::gen(Gen::generic(2, p[1]));
    let c = Element::gen(Gen::generic(3, p[2]));
    let one = Scalar::one();
    let sign = |x: bool, y: bool| if x && y { Scalar::int(-1) } else { Scalar::one() };
    Ok(match id {
        Identity::Id1 => {
            let x = b.get("x");
            let xi = x.inv()?;
            let x2 = x.mul(&x);
            let bc = plain(&bb, &c, &x);
            let lhs = plain(&bb, &plain(&a, &bc, &x), &one).scale(&x.add(&xi));
            let r1 = plain(&a, &plain(&bb, &bc, &xi), &x2);
            let r2 = plain(&plain(&bb, &plain(&bb, &a, &x), &xi), &c, &x2);
            (lhs.sub(&r1.sub(&r2)), vec![plain(&a, &c, &one)])
        }
        Identity::Id2 | Identity::Eq25 => {
            let (z, r, s) = if id == Identity::Id2 {
                (b.get("z"), b.get("r"), b.get("s"))
            } else {
                (one.clone(), one.clone(), Scalar::qbar())
            };
            let x = derived(b, "x", z.mul(&s))?;
            let y = derived(b, "y", z.mul(&r))?;
            let t = derived(b, "t", z.mul(&s).mul(&r))?;
            let lhs = sb(&a, &plain(&bb, &c, &x), &y);
            let r1 = sb(&sb(&a, &bb, &z), &c, &t);
            let r2 = sb(&bb, &sb(&a, &c, &r), &s).scale(&z.mul(&sign(p[0], p[1])));
            (lhs.sub(&r1.add(&r2)), Vec::new())
        }
        Identity::Id3 => {
            let (x, y) = (b.get("x"), b.get("y"));
            let lhs = sb(&a, &plain(&bb, &c, &x), &y);
            let rhs = plain(&sb(&a, &bb, &y), &c, &x);
            (lhs.sub(&rhs), vec![plain(&a, &c, &one)])
        }
        Identity::Eq40 => {
            let q = Scalar::q();
            let lhs = sb(&a, &plain(&c, &bb, &q), &one);
            let r1 = sb(&plain(&a, &bb, &Scalar::qbar()), &c, &one).scale(&q.neg());
            let r2 = plain(&bb, &sb(&a, &c, &q), &one);
            (lhs.sub(&r1.sub(&r2)), Vec::new())
        }
    })
}

/// Expands both sides, applies hypothesis swap rules, and records the residual.
pub fn check_identity(id: Identity, p: [bool; 3], b: &Bindings) -> Result<Record> {
    let t = Instant::now();
    let (diff, hyps) = identity_difference(id, p, b)?;
    let rs = RewriteSystem::from_relations(hyps.into_iter().enumerate().map(|(k, h)| (format!("hyp{k}"), h)))?;
    let res = rs.normal_form(&diff);
    Ok(Record {
        tag: format!("{}[{}]", id.name(), parity_label(p)),
        method: Method::Expansion,
        status: if res.is_zero() { VStatus::Verified } else { VStatus::Failed },
        residual: res.to_string(),
        residual_value: None,
        elapsed_ms: ms(t),
        note: None,
    })
}

/// Every identity at every admissible parity assignment with generic scalars.
pub fn check_identities() -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("identities", None);
    let b = Bindings::generic();
    for id in Identity::ALL {
        for p in id.parity_cases() {
            rep.records.push(check_identity(id, p, &b)?);
        }
    }
    Ok(rep)
}
