//! The free Z2-graded associative algebra over [`Scalar`]: generator symbols,
//! words, sparse noncommutative polynomials and the three bracket families.

use std::borrow::Borrow;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::coeff::Scalar;
use crate::error::{Error, Result};

/// Generator kinds.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Kind {
    F,
    E,
    Aminus,
    Aplus,
    K,
    Kbar,
    L,
    Lbar,
    GenericEven,
    GenericOdd,
}

impl Kind {
    /// Cartan letters carry no weight in degree bounds.
    pub fn is_cartan(self) -> bool {
        matches!(self, Kind::K | Kind::Kbar | Kind::L | Kind::Lbar)
    }
}

/// A graded generator symbol packed as `class << 24 | index << 2 | bar << 1 | odd`.
///
/// The packing makes integer order coincide with the symbol priority:
/// f < e < a⁻ < a⁺ < Cartan k < Cartan L < generics, index ascending within
/// a class. A Cartan letter and its inverse share a class and differ only in
/// the bar bit, so `k_i`, `k̄_i` are adjacent in the order.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen(u32);

impl Gen {
    /// Builds a symbol, computing its parity from the rank parameter `m`.
    pub fn new(kind: Kind, index: usize, m: usize) -> Gen {
        let odd = match kind {
            Kind::E | Kind::F => index == m,
            Kind::Aminus | Kind::Aplus => index <= m,
            Kind::K | Kind::Kbar | Kind::L | Kind::Lbar | Kind::GenericEven => false,
            Kind::GenericOdd => true,
        };
        Gen::raw(kind, index, odd)
    }

    fn raw(kind: Kind, index: usize, odd: bool) -> Gen {
        assert!(index < (1 << 22), "generator index too large");
        let (class, bar) = match kind {
            Kind::F => (0, 0),
            Kind::E => (1, 0),
            Kind::Aminus => (2, 0),
            Kind::Aplus => (3, 0),
            Kind::K => (4, 0),
            Kind::Kbar => (4, 1),
            Kind::L => (5, 0),
            Kind::Lbar => (5, 1),
            Kind::GenericEven => (6, 0),
            Kind::GenericOdd => (7, 0),
        };
        Gen((class << 24) | ((index as u32) << 2) | (bar << 1) | odd as u32)
    }

    pub fn generic(label: usize, odd: bool) -> Gen {
        Gen::raw(if odd { Kind::GenericOdd } else { Kind::GenericEven }, label, odd)
    }

    pub fn kind(self) -> Kind {
        let bar = (self.0 >> 1) & 1 == 1;
        match (self.0 >> 24, bar) {
            (0, _) => Kind::F,
            (1, _) => Kind::E,
            (2, _) => Kind::Aminus,
            (3, _) => Kind::Aplus,
            (4, false) => Kind::K,
            (4, true) => Kind::Kbar,
            (5, false) => Kind::L,
            (5, true) => Kind::Lbar,
            (6, _) => Kind::GenericEven,
            _ => Kind::GenericOdd,
        }
    }

    pub fn index(self) -> usize {
        ((self.0 >> 2) & ((1 << 22) - 1)) as usize
    }

    pub fn is_odd(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn is_cartan(self) -> bool {
        self.kind().is_cartan()
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = self.index();
        match self.kind() {
            Kind::E => write!(f, "e{i}"),
            Kind::F => write!(f, "f{i}"),
            Kind::K => write!(f, "k{i}"),
            Kind::Kbar => write!(f, "kbar{i}"),
            Kind::Aplus => write!(f, "a{i}+"),
            Kind::Aminus => write!(f, "a{i}-"),
            Kind::L => write!(f, "L{i}"),
            Kind::Lbar => write!(f, "Lbar{i}"),
            Kind::GenericEven => write!(f, "ge{i}"),
            Kind::GenericOdd => write!(f, "go{i}"),
        }
    }
}

impl fmt::Debug for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A monomial; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub SmallVec<[Gen; 8]>);

impl Word {
    pub fn unit() -> Word {
        Word(SmallVec::new())
    }

    pub fn from_slice(s: &[Gen]) -> Word {
        Word(SmallVec::from_slice(s))
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of non-Cartan letters.
    pub fn weight(&self) -> usize {
        weight(&self.0)
    }

    pub fn is_odd(&self) -> bool {
        self.0.iter().filter(|g| g.is_odd()).count() % 2 == 1
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }
}

pub fn weight(letters: &[Gen]) -> usize {
    letters.iter().filter(|g| !g.is_cartan()).count()
}

/// Degree-lexicographic comparison of letter sequences.
pub fn deglex(a: &[Gen], b: &[Gen]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        deglex(&self.0, &o.0)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Borrow<[Gen]> for Word {
    fn borrow(&self) -> &[Gen] {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Family {
    Plain,
    Anti,
    Super,
}

/// A finite Scalar-weighted sum of words with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Word, Scalar>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn one() -> Element {
        Element::scalar(Scalar::one())
    }

    pub fn scalar(s: Scalar) -> Element {
        Element::term(Word::unit(), s)
    }

    pub fn term(w: Word, s: Scalar) -> Element {
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(w, s);
        }
        Element { terms }
    }

    pub fn gen(g: Gen) -> Element {
        Element::term(Word::from_slice(&[g]), Scalar::one())
    }

    pub fn word(letters: &[Gen]) -> Element {
        Element::term(Word::from_slice(letters), Scalar::one())
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    pub fn from_terms(terms: BTreeMap<Word, Scalar>) -> Element {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Element { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The order-leading term.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn max_weight(&self) -> usize {
        self.terms.keys().map(Word::weight).max().unwrap_or(0)
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign(&mut self, o: &Element) {
        for (w, c) in &o.terms {
            self.add_term(w.clone(), c);
        }
    }

    pub fn add(&self, o: &Element) -> Element {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn sub(&self, o: &Element) -> Element {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Element {
        Element { terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        if s.is_zero() {
            return Element::zero();
        }
        if s.is_one() {
            return self.clone();
        }
        Element { terms: self.terms.iter().map(|(w, c)| (w.clone(), c.mul(s))).collect() }
    }

    pub fn mul(&self, o: &Element) -> Element {
        let mut r = Element::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                r.add_term(w1.concat(w2), &c1.mul(c2));
            }
        }
        r
    }

    /// Product of a list of factors, left to right.
    pub fn product(factors: &[&Element]) -> Element {
        factors.iter().fold(Element::one(), |acc, f| acc.mul(f))
    }

    pub fn parity(&self) -> Parity {
        let mut seen: Option<bool> = None;
        for w in self.terms.keys() {
            let odd = w.is_odd();
            match seen {
                None => seen = Some(odd),
                Some(p) if p != odd => return Parity::Mixed,
                _ => {}
            }
        }
        if seen == Some(true) {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.parity() != Parity::Mixed
    }

    /// `ab − x·ba`, `ab + x·ba`, or `ab − (−1)^{|a||b|} x·ba`.
    pub fn bracket(a: &Element, b: &Element, x: &Scalar, family: Family) -> Result<Element> {
        let sign_minus = match family {
            Family::Plain => true,
            Family::Anti => false,
            Family::Super => {
                let (pa, pb) = (a.parity(), b.parity());
                if pa == Parity::Mixed || pb == Parity::Mixed {
                    return Err(Error::MixedParity);
                }
                !(pa == Parity::Odd && pb == Parity::Odd)
            }
        };
        let ba = b.mul(a).scale(x);
        let ab = a.mul(b);
        Ok(if sign_minus { ab.sub(&ba) } else { ab.add(&ba) })
    }

    /// Applies the algebra homomorphism determined by `f` on generators;
    /// generators mapped to `None` are kept.
    pub fn substitute(&self, f: &dyn Fn(Gen) -> Option<Element>) -> Element {
        let mut cache: BTreeMap<Gen, Element> = BTreeMap::new();
        let mut out = Element::zero();
        for (w, c) in &self.terms {
            let mut acc = Element::scalar(c.clone());
            for &g in w.letters() {
                let img = cache.entry(g).or_insert_with(|| f(g).unwrap_or_else(|| Element::gen(g)));
                acc = acc.mul(img);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign(&acc);
        }
        out
    }

    /// Applies `f` to every coefficient, dropping terms that become zero.
    pub fn map_scalars(&self, f: &dyn Fn(&Scalar) -> Result<Scalar>) -> Result<Element> {
        let mut out = Element::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &f(c)?);
        }
        Ok(out)
    }

    /// Every generator occurring in some word.
    pub fn generators(&self) -> Vec<Gen> {
        let mut v: Vec<Gen> = self.terms.keys().flat_map(|w| w.letters().iter().copied()).collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Plain bracket `[a,b]_x`.
pub fn plain(a: &Element, b: &Element, x: &Scalar) -> Element {
    Element::bracket(a, b, x, Family::Plain).expect("plain bracket is total")
}

/// Anticommutator `{a,b}_x`.
pub fn anti(a: &Element, b: &Element, x: &Scalar) -> Element {
    Element::bracket(a, b, x, Family::Anti).expect("anti bracket is total")
}

/// Super bracket `⟦a,b⟧_x`.
pub fn sup(a: &Element, b: &Element, x: &Scalar) -> Result<Element> {
    Element::bracket(a, b, x, Family::Super)
}

fn is_sum(s: &str) -> bool {
    s.contains(" + ") || s.contains(" - ")
}

/// Renders a coefficient as a factor; returns `(negative, text)` where an
/// empty text stands for the unit.
fn coeff_factor(c: &Scalar) -> (bool, String) {
    if c.is_one() {
        return (false, String::new());
    }
    if c.neg().is_one() {
        return (true, String::new());
    }
    let s = c.to_string();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) if !is_sum(rest) => (true, rest.to_string()),
        _ => (false, s),
    };
    let body = if is_sum(&body) || body.contains('/') { format!("({body})") } else { body };
    (neg, body)
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().rev().enumerate() {
            let (neg, cf) = coeff_factor(c);
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match (cf.is_empty(), w.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{w}")?,
                (false, true) => write!(f, "{cf}")?,
                (false, false) => write!(f, "{cf}*{w}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
