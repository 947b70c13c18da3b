//! Exact arithmetic in K = Q(√2)(v, aux…), with q = v².
//!
//! A [`Scalar`] is a reduced fraction of polynomials: numerator and
//! denominator are coprime and the denominator's grlex-leading coefficient
//! is exactly 1, so structural equality is field equality.

mod poly;
mod qr2;

use std::fmt;

use num_complex::Complex64;

pub use poly::{gcd, Mono, Poly, Var};
pub use qr2::Qr2;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar { num: Poly::one(), den: Poly::one() }
    }

    pub fn int(n: i64) -> Self {
        Scalar::from_qr2(Qr2::int(n))
    }

    pub fn rational(num: i64, den: i64) -> Self {
        Scalar::from_qr2(Qr2::rational(num, den))
    }

    pub fn from_qr2(c: Qr2) -> Self {
        Scalar { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn sqrt2() -> Self {
        Scalar::from_qr2(Qr2::sqrt2())
    }

    /// `1/√2`
    pub fn inv_sqrt2() -> Self {
        Scalar::from_qr2(Qr2::sqrt2().scale_rational(&num_rational::BigRational::new(1.into(), 2.into())))
    }

    pub fn var_pow(var: Var, k: i32) -> Self {
        let m = Mono::var_pow(var, k.unsigned_abs());
        if k >= 0 {
            Scalar { num: Poly::term(m, Qr2::one()), den: Poly::one() }
        } else {
            Scalar { num: Poly::one(), den: Poly::term(m, Qr2::one()) }
        }
    }

    pub fn v() -> Self {
        Scalar::var_pow(Var::V, 1)
    }

    pub fn v_pow(k: i32) -> Self {
        Scalar::var_pow(Var::V, k)
    }

    pub fn q() -> Self {
        Scalar::v_pow(2)
    }

    pub fn qbar() -> Self {
        Scalar::v_pow(-2)
    }

    pub fn q_pow(k: i32) -> Self {
        Scalar::v_pow(2 * k)
    }

    pub fn aux(name: &str) -> Self {
        Scalar::var_pow(Var::aux(name), 1)
    }

    /// Builds the canonical form of `num / den`.
    pub fn normalize(num: Poly, den: Poly) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Scalar::zero());
        }
        let (num, den) = if let Some((dm, _)) = den.as_monomial() {
            let g = num.mono_content().gcd(dm);
            (num.div_mono(&g), den.div_mono(&g))
        } else if let Some((nm, _)) = num.as_monomial() {
            let g = nm.gcd(&den.mono_content());
            (num.div_mono(&g), den.div_mono(&g))
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        Ok(Scalar::with_monic_den(num, den))
    }

    fn with_monic_den(num: Poly, den: Poly) -> Scalar {
        let lc = den.leading().expect("nonzero denominator").1.clone();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.inv().expect("nonzero");
            Scalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The value as an element of Q(√2) when no variable occurs.
    pub fn as_constant(&self) -> Option<Qr2> {
        if self.is_zero() {
            return Some(Qr2::zero());
        }
        match (self.num.as_constant(), self.den.as_constant()) {
            (Some(a), Some(b)) => Some(&a.clone() * &b.inv().expect("nonzero")),
            _ => None,
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let num = self.num.add(&o.num);
            if self.den.is_one() || num.is_zero() {
                return if num.is_zero() { Scalar::zero() } else { Scalar { num, den: self.den.clone() } };
            }
            return Scalar::normalize(num, self.den.clone()).expect("nonzero denominator");
        }
        if let (Some((bm, _)), Some((dm, _))) = (self.den.as_monomial(), o.den.as_monomial()) {
            let g = bm.gcd(dm);
            let bs = bm.div(&g);
            let ds = dm.div(&g);
            let num = self.num.mul_mono(&ds).add(&o.num.mul_mono(&bs));
            let den = Poly::term(bm.mul(&ds), Qr2::one());
            return Scalar::normalize(num, den).expect("nonzero denominator");
        }
        let g = gcd(&self.den, &o.den);
        let bs = self.den.div_exact(&g).expect("gcd divides");
        let ds = o.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&ds).add(&o.num.mul(&bs));
        let den = self.den.mul(&ds);
        Scalar::normalize(num, den).expect("nonzero denominator")
    }

    pub fn neg(&self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar { num: self.num.mul(&o.num), den: Poly::one() };
        }
        if self.den.as_monomial().is_some() && o.den.as_monomial().is_some() {
            return Scalar::normalize(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero");
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = o.den.div_exact(&g1).expect("gcd divides");
        let c = o.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        Scalar::with_monic_den(a.mul(&c), b.mul(&d))
    }

    pub fn scale_qr2(&self, c: &Qr2) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::with_monic_den(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, k: i32) -> Result<Scalar> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Numeric value with √2 taken as the positive real root.
    pub fn evaluate(&self, assign: &dyn Fn(Var) -> Option<Complex64>) -> Result<Complex64> {
        let missing = |p: &Poly| -> Option<Var> {
            p.vars().into_iter().find(|&v| assign(v).is_none())
        };
        if let Some(v) = missing(&self.num).or_else(|| missing(&self.den)) {
            return Err(Error::UnassignedSymbol(v.name()));
        }
        let n = self.num.evaluate(assign).expect("all symbols assigned");
        let d = self.den.evaluate(assign).expect("all symbols assigned");
        if d.norm() == 0.0 || !d.norm().is_finite() {
            return Err(Error::Pole);
        }
        Ok(n / d)
    }

    /// Evaluates a scalar in `v` alone.
    pub fn evaluate_v(&self, v: f64) -> Result<Complex64> {
        self.evaluate(&|var| (var == Var::V).then(|| Complex64::new(v, 0.0)))
    }

    /// Exact substitution `var := value`; fails when the denominator vanishes.
    pub fn specialize(&self, var: Var, value: &Qr2) -> Result<Scalar> {
        let num = self.num.specialize(var, value);
        let den = self.den.specialize(var, value);
        if den.is_zero() {
            return Err(Error::Pole);
        }
        Scalar::normalize(num, den)
    }

    /// The bar involution `v ↦ v⁻¹` (so `q ↔ q̄`), fixing √2 and aux symbols.
    pub fn bar(&self) -> Scalar {
        let flip = |p: &Poly| -> Scalar {
            let mut acc = Scalar::zero();
            for (m, c) in p.terms() {
                let e = m.degree_in(Var::V) as i32;
                let rest = Scalar { num: Poly::term(m.without(Var::V), c.clone()), den: Poly::one() };
                acc = acc.add(&rest.mul(&Scalar::v_pow(-e)));
            }
            acc
        };
        flip(&self.num).div(&flip(&self.den)).expect("bar of a nonzero denominator is nonzero")
    }

    /// True when only `v` occurs.
    pub fn is_v_only(&self) -> bool {
        self.num.vars().iter().chain(self.den.vars().iter()).all(|&v| v == Var::V)
    }
}

/// `q_i = q^{(-1)^{⟨i+1⟩}}`: q̄ for i < m, q for i ≥ m.
pub fn q_sub(i: usize, m: usize, n: usize) -> Result<Scalar> {
    let big_n = m + n;
    if i < 1 || i > big_n {
        return Err(Error::IndexOutOfRange { index: i, max: big_n });
    }
    Ok(if i < m { Scalar::qbar() } else { Scalar::q() })
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar::add(self, o)
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar::sub(self, o)
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        Scalar::mul(self, o)
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

/// Renders one monomial with signed exponents; `v` powers print as `q` when `use_q`.
fn fmt_mono(exps: &[(Var, i64)], use_q: bool, out: &mut String) {
    let mut first = true;
    for &(var, e) in exps {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        let (name, e) = if var == Var::V && use_q { ("q".to_string(), e / 2) } else { (var.name(), e) };
        out.push_str(&name);
        if e != 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

fn fmt_laurent(terms: &[(Qr2, Vec<(Var, i64)>)], use_q: bool) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (c, exps)) in terms.iter().enumerate() {
        let is_unit_mono = exps.iter().all(|&(_, e)| e == 0);
        let neg = c.is_negative_display();
        let c_abs = if neg { -c } else { c.clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if is_unit_mono {
            if c_abs.is_compound() {
                out.push_str(&format!("({c_abs})"));
            } else {
                out.push_str(&c_abs.to_string());
            }
            continue;
        }
        if !c_abs.is_one() {
            if c_abs.is_compound() {
                out.push_str(&format!("({c_abs})*"));
            } else {
                out.push_str(&format!("{c_abs}*"));
            }
        }
        fmt_mono(exps, use_q, &mut out);
    }
    out
}

fn laurent_terms(p: &Poly, shift: &[(Var, u32)]) -> Vec<(Qr2, Vec<(Var, i64)>)> {
    let mut terms: Vec<(Qr2, Vec<(Var, i64)>)> = p
        .terms()
        .iter()
        .rev()
        .map(|(m, c)| {
            let mut exps: Vec<(Var, i64)> = m.entries().iter().map(|&(v, e)| (v, e as i64)).collect();
            for &(v, e) in shift {
                match exps.iter_mut().find(|(w, _)| *w == v) {
                    Some(slot) => slot.1 -= e as i64,
                    None => exps.push((v, -(e as i64))),
                }
            }
            exps.sort();
            (c.clone(), exps)
        })
        .collect();
    // present higher total degree first, then by the exponent vector
    terms.sort_by(|a, b| {
        let da: i64 = a.1.iter().map(|x| x.1).sum();
        let db: i64 = b.1.iter().map(|x| x.1).sum();
        db.cmp(&da).then_with(|| b.1.cmp(&a.1))
    });
    terms
}

fn all_v_even(terms: &[(Qr2, Vec<(Var, i64)>)]) -> bool {
    terms.iter().all(|(_, e)| e.iter().all(|&(v, k)| v != Var::V || k % 2 == 0))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((dm, _)) = self.den.as_monomial() {
            let terms = laurent_terms(&self.num, dm.entries());
            let use_q = all_v_even(&terms);
            return write!(f, "{}", fmt_laurent(&terms, use_q));
        }
        let nt = laurent_terms(&self.num, &[]);
        let dt = laurent_terms(&self.den, &[]);
        let use_q = all_v_even(&nt) && all_v_even(&dt);
        write!(f, "({})/({})", fmt_laurent(&nt, use_q), fmt_laurent(&dt, use_q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_minus_qbar() -> Scalar {
        Scalar::q().sub(&Scalar::qbar())
    }

    #[test]
    fn cancels_x_over_x() {
        let x = q_minus_qbar();
        assert_eq!(x.div(&x).unwrap(), Scalar::one());
    }

    #[test]
    fn laurent_cancellation() {
        assert_eq!(Scalar::v_pow(2).mul(&Scalar::v_pow(-2)), Scalar::one());
    }

    #[test]
    fn q_number_quotient() {
        // (q² − q⁻²)/(q − q⁻¹) = q + q⁻¹; oracle: cross-multiplication
        let lhs = Scalar::q_pow(2).sub(&Scalar::q_pow(-2)).div(&q_minus_qbar()).unwrap();
        let expected = Scalar::q().add(&Scalar::qbar());
        assert_eq!(lhs, expected);
        let cross = expected.mul(&q_minus_qbar());
        assert_eq!(cross, Scalar::q_pow(2).sub(&Scalar::q_pow(-2)));
    }

    #[test]
    fn zero_denominator_rejected() {
        let err = Scalar::normalize(Poly::one(), Poly::zero()).unwrap_err();
        assert_eq!(err.to_string(), "division by zero scalar");
        assert!(Scalar::zero().inv().is_err());
    }

    #[test]
    fn normalize_is_idempotent() {
        let x = Scalar::q().add(&Scalar::one()).div(&q_minus_qbar()).unwrap();
        let again = Scalar::normalize(x.numerator().clone(), x.denominator().clone()).unwrap();
        assert_eq!(again, x);
    }

    #[test]
    fn q_sub_examples() {
        assert_eq!(q_sub(1, 2, 1).unwrap(), Scalar::v_pow(-2));
        assert_eq!(q_sub(2, 2, 1).unwrap(), Scalar::q());
        assert_eq!(q_sub(3, 1, 2).unwrap(), Scalar::q());
        assert!(q_sub(4, 1, 2).is_err());
        assert!(q_sub(0, 1, 2).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let two = Scalar::q().add(&Scalar::qbar()).evaluate_v(1.0).unwrap();
        assert!((two.re - 2.0).abs() < 1e-15);
        let x = q_minus_qbar();
        let ratio = x.div(&x).unwrap().evaluate_v(1.1).unwrap();
        assert!((ratio.re - 1.0).abs() < 1e-15);
        let s = Scalar::sqrt2().mul(&Scalar::sqrt2()).evaluate_v(1.3).unwrap();
        assert!((s.re - 2.0).abs() < 1e-15);
    }

    #[test]
    fn evaluate_errors() {
        let pole = Scalar::one().div(&q_minus_qbar()).unwrap();
        assert_eq!(pole.evaluate_v(1.0).unwrap_err(), Error::Pole);
        let z = Scalar::aux("eval_err_z");
        assert!(matches!(z.evaluate_v(1.1), Err(Error::UnassignedSymbol(_))));
    }

    #[test]
    fn rendering() {
        assert_eq!(Scalar::q_pow(3).to_string(), "q^3");
        assert_eq!(Scalar::v_pow(-1).to_string(), "v^-1");
        assert_eq!(Scalar::sqrt2().to_string(), "r2");
        assert_eq!(Scalar::q().add(&Scalar::qbar()).to_string(), "q + q^-1");
        let x = Scalar::one().div(&q_minus_qbar()).unwrap();
        assert_eq!(x.to_string(), "(q)/(q^2 - 1)");
    }

    #[test]
    fn bar_swaps_q_and_qbar() {
        let x = Scalar::q().add(&Scalar::sqrt2()).div(&Scalar::qbar().add(&Scalar::int(3))).unwrap();
        let expected = Scalar::qbar().add(&Scalar::sqrt2()).div(&Scalar::q().add(&Scalar::int(3))).unwrap();
        assert_eq!(x.bar(), expected);
        assert_eq!(x.bar().bar(), x);
    }

    #[test]
    fn specialize_at_one() {
        let x = Scalar::q().add(&Scalar::qbar()).add(&Scalar::sqrt2());
        let at1 = x.specialize(Var::V, &Qr2::one()).unwrap();
        assert_eq!(at1, Scalar::int(2).add(&Scalar::sqrt2()));
        let pole = Scalar::one().div(&q_minus_qbar()).unwrap();
        assert_eq!(pole.specialize(Var::V, &Qr2::one()).unwrap_err(), Error::Pole);
    }
}
