//! Sparse multivariate polynomials over Q(√2) with exact division and gcd.
//!
//! Monomials use graded-lexicographic order with variable 0 (`v`) largest.
//! The gcd is the classical recursive primitive-PRS algorithm: univariate
//! Euclid over the coefficient field at the base, content/primitive-part
//! splitting in the main variable otherwise.

use std::cmp::Ordering;
use std::sync::{OnceLock, RwLock};

use num_complex::Complex64;
use smallvec::SmallVec;

use super::qr2::Qr2;

/// A polynomial variable. `Var::V` is the deformation parameter `v` (q = v²);
/// every other id names an auxiliary transcendental registered by name.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var(pub u16);

fn registry() -> &'static RwLock<Vec<String>> {
    static NAMES: OnceLock<RwLock<Vec<String>>> = OnceLock::new();
    NAMES.get_or_init(|| RwLock::new(vec!["v".to_string()]))
}

impl Var {
    pub const V: Var = Var(0);

    /// Interns an auxiliary symbol. The same name always yields the same id.
    pub fn aux(name: &str) -> Var {
        {
            let names = registry().read().expect("symbol registry poisoned");
            if let Some(pos) = names.iter().position(|n| n == name) {
                return Var(pos as u16);
            }
        }
        let mut names = registry().write().expect("symbol registry poisoned");
        if let Some(pos) = names.iter().position(|n| n == name) {
            return Var(pos as u16);
        }
        names.push(name.to_string());
        Var((names.len() - 1) as u16)
    }

    pub fn name(&self) -> String {
        registry().read().expect("symbol registry poisoned")[self.0 as usize].clone()
    }
}

/// Monomial: sorted `(var, exponent)` pairs with positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(pub(crate) SmallVec<[(Var, u32); 2]>);

impl Mono {
    pub fn one() -> Self {
        Mono(SmallVec::new())
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        if e == 0 {
            Mono::one()
        } else {
            Mono(smallvec::smallvec![(v, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    pub fn entries(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        self.zip_with(o, |a, b| a + b)
    }

    pub fn gcd(&self, o: &Mono) -> Mono {
        self.zip_with(o, |a, b| a.min(b))
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().all(|&(v, e)| o.degree_in(v) >= e)
    }

    /// `self / o`, assuming `o` divides `self`.
    pub fn div(&self, o: &Mono) -> Mono {
        debug_assert!(o.divides(self));
        self.zip_with(o, |a, b| a - b)
    }

    pub fn without(&self, v: Var) -> Mono {
        Mono(self.0.iter().copied().filter(|&(w, _)| w != v).collect())
    }

    fn zip_with(&self, o: &Mono, f: impl Fn(u32, u32) -> u32) -> Mono {
        let mut out: SmallVec<[(Var, u32); 2]> = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < o.0.len() {
            let (v, a, b) = match (self.0.get(i), o.0.get(j)) {
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (va, ea, eb)
                    }
                    Ordering::Less => {
                        i += 1;
                        (va, ea, 0)
                    }
                    Ordering::Greater => {
                        j += 1;
                        (vb, 0, eb)
                    }
                },
                (Some(&(va, ea)), None) => {
                    i += 1;
                    (va, ea, 0)
                }
                (None, Some(&(vb, eb))) => {
                    j += 1;
                    (vb, 0, eb)
                }
                (None, None) => unreachable!(),
            };
            let e = f(a, b);
            if e > 0 {
                out.push((v, e));
            }
        }
        Mono(out)
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Mono) -> Ordering {
        match self.degree().cmp(&o.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), o.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va == vb {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    } else if va < vb {
                        return Ordering::Greater;
                    } else {
                        return Ordering::Less;
                    }
                }
            }
        }
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Mono) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Sparse polynomial, terms sorted ascending by monomial, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly(pub(crate) Vec<(Mono, Qr2)>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly::constant(Qr2::one())
    }

    pub fn constant(c: Qr2) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly(vec![(Mono::one(), c)])
        }
    }

    pub fn term(m: Mono, c: Qr2) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly(vec![(m, c)])
        }
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Mono::var_pow(v, 1), Qr2::one())
    }

    pub fn terms(&self) -> &[(Mono, Qr2)] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].0.is_one() && self.0[0].1.is_one()
    }

    pub fn as_constant(&self) -> Option<&Qr2> {
        match self.0.as_slice() {
            [(m, c)] if m.is_one() => Some(c),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || self.as_constant().is_some()
    }

    pub fn as_monomial(&self) -> Option<(&Mono, &Qr2)> {
        match self.0.as_slice() {
            [(m, c)] => Some((m, c)),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Mono, Qr2)> {
        self.0.last()
    }

    pub fn vars(&self) -> SmallVec<[Var; 4]> {
        let mut vs: SmallVec<[Var; 4]> = SmallVec::new();
        for (m, _) in &self.0 {
            for &(v, _) in m.entries() {
                if !vs.contains(&v) {
                    vs.push(v);
                }
            }
        }
        vs.sort();
        vs
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.0.iter().map(|(m, _)| m.degree_in(v)).max().unwrap_or(0)
    }

    fn from_unsorted(mut terms: Vec<(Mono, Qr2)>) -> Poly {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Mono, Qr2)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly(out)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.merge(o, true)
    }

    fn merge(&self, o: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < o.0.len() {
            let (ma, ca) = &self.0[i];
            let (mb, cb) = &o.0[j];
            match ma.cmp(mb) {
                Ordering::Less => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((mb.clone(), if negate { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.0[i..].iter().cloned());
        for (m, c) in &o.0[j..] {
            out.push((m.clone(), if negate { -c } else { c.clone() }));
        }
        Poly(out)
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = o.as_constant() {
            return self.scale(c);
        }
        if let Some(c) = self.as_constant() {
            return o.scale(c);
        }
        let mut terms = Vec::with_capacity(self.0.len() * o.0.len());
        for (ma, ca) in &self.0 {
            for (mb, cb) in &o.0 {
                terms.push((ma.mul(mb), ca * cb));
            }
        }
        Poly::from_unsorted(terms)
    }

    pub fn scale(&self, c: &Qr2) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly(self.0.iter().map(|(m, a)| (m.clone(), a * c)).collect())
    }

    pub fn mul_mono(&self, m: &Mono) -> Poly {
        if m.is_one() {
            return self.clone();
        }
        // multiplication by a monomial preserves grlex order
        Poly(self.0.iter().map(|(a, c)| (a.mul(m), c.clone())).collect())
    }

    /// Divides every term by `m`; caller guarantees divisibility.
    pub fn div_mono(&self, m: &Mono) -> Poly {
        if m.is_one() {
            return self.clone();
        }
        Poly(self.0.iter().map(|(a, c)| (a.div(m), c.clone())).collect())
    }

    /// Largest monomial dividing every term.
    pub fn mono_content(&self) -> Mono {
        let mut it = self.0.iter();
        let Some((first, _)) = it.next() else { return Mono::one() };
        let mut g = first.clone();
        for (m, _) in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?.clone();
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.inv()?));
        }
        let dinv = dc.inv()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.leading().cloned() {
            if !dm.divides(&rm) {
                return None;
            }
            let t = rm.div(&dm);
            let c = &rc * &dinv;
            rem = rem.sub(&d.mul_mono(&t).scale(&c));
            quot.push((t, c));
        }
        Some(Poly::from_unsorted(quot))
    }

    /// Coefficients of `self` viewed as a polynomial in `v`: entry k multiplies `v^k`.
    pub fn to_univariate(&self, v: Var) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Mono, Qr2)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.0 {
            buckets[m.degree_in(v) as usize].push((m.without(v), c.clone()));
        }
        buckets.into_iter().map(Poly::from_unsorted).collect()
    }

    pub fn from_univariate(v: Var, coeffs: &[Poly]) -> Poly {
        let mut terms = Vec::new();
        for (k, p) in coeffs.iter().enumerate() {
            let vk = Mono::var_pow(v, k as u32);
            for (m, c) in &p.0 {
                terms.push((m.mul(&vk), c.clone()));
            }
        }
        Poly::from_unsorted(terms)
    }

    /// Substitutes `var := value` exactly.
    pub fn specialize(&self, var: Var, value: &Qr2) -> Poly {
        let mut terms = Vec::with_capacity(self.0.len());
        for (m, c) in &self.0 {
            let e = m.degree_in(var);
            let mut c = c.clone();
            for _ in 0..e {
                c = &c * value;
            }
            terms.push((m.without(var), c));
        }
        Poly::from_unsorted(terms)
    }

    pub fn evaluate(&self, assign: &dyn Fn(Var) -> Option<Complex64>) -> Option<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.0 {
            let mut t = Complex64::new(c.to_f64(), 0.0);
            for &(v, e) in m.entries() {
                t *= assign(v)?.powu(e);
            }
            acc += t;
        }
        Some(acc)
    }
}

fn trim_dense(p: &mut Vec<Qr2>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn dense_rem(a: &[Qr2], b: &[Qr2], binv: &Qr2) -> Vec<Qr2> {
    let mut r = a.to_vec();
    trim_dense(&mut r);
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let f = &r[r.len() - 1] * binv;
        for (k, bc) in b.iter().enumerate() {
            r[shift + k] = &r[shift + k] - &(&f * bc);
        }
        trim_dense(&mut r);
    }
    r
}

fn gcd_univariate(a: &Poly, b: &Poly, v: Var) -> Poly {
    let dense = |p: &Poly| -> Vec<Qr2> {
        let mut d = vec![Qr2::zero(); p.degree_in(v) as usize + 1];
        for (m, c) in &p.0 {
            d[m.degree_in(v) as usize] = c.clone();
        }
        trim_dense(&mut d);
        d
    };
    let (mut x, mut y) = (dense(a), dense(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let yinv = y.last().unwrap().inv().expect("nonzero");
        let r = dense_rem(&x, &y, &yinv);
        x = y;
        y = r;
    }
    let coeffs: Vec<Poly> = x.into_iter().map(Poly::constant).collect();
    Poly::from_univariate(v, &coeffs).monic()
}

fn content(coeffs: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() { c.monic() } else { gcd(&g, c) };
        if g.is_one() {
            break;
        }
    }
    g
}

fn trim_poly_vec(p: &mut Vec<Poly>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Pseudo-remainder of `a` by `b` in R[x], multiplying by lc(b) at each step.
fn pseudo_rem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut r = a.to_vec();
    trim_poly_vec(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let lr = r[r.len() - 1].clone();
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (k, bc) in b.iter().enumerate() {
            r[shift + k] = r[shift + k].sub(&lr.mul(bc));
        }
        trim_poly_vec(&mut r);
    }
    r
}

fn primitive(p: &[Poly]) -> (Poly, Vec<Poly>) {
    let c = content(p);
    let pp = p
        .iter()
        .map(|x| x.div_exact(&c).expect("content divides every coefficient"))
        .collect();
    (c, pp)
}

/// Sends every variable but `keep` to a small integer where both leading coefficients in `keep` survive.
fn image(a: &Poly, b: &Poly, keep: Var, vars: &[Var], attempt: i64) -> Option<(Poly, Poly)> {
    let lead = |p: &Poly| p.to_univariate(keep).pop().unwrap_or_else(Poly::zero);
    let (mut la, mut lb, mut pa, mut pb) = (lead(a), lead(b), a.clone(), b.clone());
    for (k, &w) in vars.iter().filter(|&&w| w != keep).enumerate() {
        let x = Qr2::int(2 + attempt * 7 + 3 * k as i64);
        la = la.specialize(w, &x);
        lb = lb.specialize(w, &x);
        pa = pa.specialize(w, &x);
        pb = pb.specialize(w, &x);
    }
    (!la.is_zero() && !lb.is_zero()).then_some((pa, pb))
}

/// True only if `a` and `b` are certainly coprime; false means undecided.
fn provably_coprime(a: &Poly, b: &Poly, vars: &[Var]) -> bool {
    vars.iter().all(|&keep| {
        if a.degree_in(keep) == 0 || b.degree_in(keep) == 0 {
            return true;
        }
        (0..3).find_map(|t| image(a, b, keep, vars, t))
            .is_some_and(|(pa, pb)| gcd_univariate(&pa, &pb, keep).is_constant())
    })
}

/// Monic greatest common divisor.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let mg = a.mono_content().gcd(&b.mono_content());
    let a1 = a.div_mono(&a.mono_content());
    let b1 = b.div_mono(&b.mono_content());
    gcd_no_monomial(&a1, &b1).mul_mono(&mg)
}

fn gcd_no_monomial(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.monic();
    }
    let mut vars = a.vars();
    for v in b.vars() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    vars.sort();
    if vars.len() == 1 {
        return gcd_univariate(a, b, vars[0]);
    }
    if provably_coprime(a, b, &vars) {
        return Poly::one();
    }
    let main = *vars.last().unwrap();
    let ua = a.to_univariate(main);
    let ub = b.to_univariate(main);
    let (ca, mut pa) = primitive(&ua);
    let (cb, mut pb) = primitive(&ub);
    let c = gcd(&ca, &cb);
    if pa.len() < pb.len() {
        std::mem::swap(&mut pa, &mut pb);
    }
    let g = loop {
        if pb.len() == 1 {
            break vec![Poly::one()];
        }
        let r = pseudo_rem(&pa, &pb);
        if r.is_empty() {
            break pb;
        }
        pa = pb;
        pb = primitive(&r).1;
    };
    let g = primitive(&g).1;
    c.mul(&Poly::from_univariate(main, &g)).monic()
}
