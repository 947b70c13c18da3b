//! Numeric matrix representations and relation residuals.

use std::collections::HashMap;
use std::time::Instant;

use ndarray::Array2;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::green::chevalley_images;
use crate::presentation::{classical_presentation, Presentation, RankParams};
use crate::superalg::{Element, Gen, Kind};

use super::{ms, Method, Record, VStatus, VerificationReport};

type Mat = Array2<Complex64>;

/// Sign convention of the Fock builder.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FockConvention {
    /// Single-mode ladders tensored with identities.
    Literal,
    /// Ladder of mode i dressed by `(s_ij q^{±1})^{n_j}` for every j > i,
    /// `s_ij = +1` iff both modes are odd.
    QKlein,
}

#[derive(Clone, Debug)]
pub struct MatrixRep {
    pub rank: RankParams,
    pub dim: usize,
    pub mats: HashMap<Gen, Mat>,
    pub v: f64,
    pub tolerance: f64,
    /// Per basis column, the least number of raising steps still inside the
    /// truncated space. `None` for untruncated representations.
    pub headroom: Option<Vec<usize>>,
    /// Raising cost of each generator, used with `headroom`.
    pub cost: HashMap<Gen, usize>,
    pub label: String,
}

pub fn default_tolerance(dim: usize) -> f64 {
    if dim <= 64 {
        1e-10
    } else {
        1e-10 * dim as f64
    }
}

/// `[x]_q = (q^x − q^{−x}) / (q − q^{−1})`
pub fn q_number(x: f64, q: f64) -> f64 {
    (q.powf(x) - q.powf(-x)) / (q - 1.0 / q)
}

fn identity(d: usize) -> Mat {
    Array2::from_diag_elem(d, Complex64::new(1.0, 0.0))
}

fn max_abs(m: &Mat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

impl MatrixRep {
    /// Adds `e_i, f_i, k_i, k̄_i` as matrices of their Green images.
    pub fn with_chevalley_images(mut self) -> Result<MatrixRep> {
        for (g, img) in chevalley_images(self.rank) {
            let m = eval_element(&self, &img)?;
            let c = img.terms().keys().map(|w| w.letters().iter().map(|l| self.cost_of(*l)).sum()).max().unwrap_or(0);
            self.mats.insert(g, m);
            self.cost.insert(g, c);
        }
        Ok(self)
    }

    fn cost_of(&self, g: Gen) -> usize {
        self.cost.get(&g).copied().unwrap_or(0)
    }

    fn body_cost(&self, x: &Element) -> usize {
        x.terms().keys().map(|w| w.letters().iter().map(|l| self.cost_of(*l)).sum()).max().unwrap_or(0)
    }

    /// Columns whose headroom covers `cost`.
    fn window(&self, cost: usize) -> Vec<usize> {
        match &self.headroom {
            None => (0..self.dim).collect(),
            Some(h) => (0..self.dim).filter(|&c| h[c] >= cost).collect(),
        }
    }

    /// Max entry magnitude of `x` over the columns with enough headroom.
    pub fn residual(&self, x: &Element) -> Result<f64> {
        let m = eval_element(self, x)?;
        let cols = self.window(self.body_cost(x));
        Ok(cols.iter().map(|&c| m.column(c).iter().map(|z| z.norm()).fold(0.0, f64::max)).fold(0.0, f64::max))
    }
}

/// Matrix of an element; coefficients are evaluated at `rep.v`.
pub fn eval_element(rep: &MatrixRep, x: &Element) -> Result<Mat> {
    let d = rep.dim;
    let mut acc = Array2::<Complex64>::zeros((d, d));
    for (w, c) in x.terms() {
        let c = c.evaluate_v(rep.v)?;
        let mut prod: Option<Mat> = None;
        for g in w.letters() {
            let m = rep.mats.get(g).ok_or_else(|| Error::UnassignedSymbol(g.to_string()))?;
            prod = Some(match prod {
                None => m.clone(),
                Some(p) => p.dot(m),
            });
        }
        let p = prod.unwrap_or_else(|| identity(d));
        acc.scaled_add(c, &p);
    }
    Ok(acc)
}

fn check_inverses(rep: &MatrixRep) -> Result<()> {
    let id = identity(rep.dim);
    for i in 1..=rep.rank.N() {
        for (a, b) in [(Kind::K, Kind::Kbar), (Kind::L, Kind::Lbar)] {
            let (ga, gb) = (rep.rank.gen(a, i), rep.rank.gen(b, i));
            if let (Some(x), Some(y)) = (rep.mats.get(&ga), rep.mats.get(&gb)) {
                let err = max_abs(&(x.dot(y) - &id)).max(max_abs(&(y.dot(x) - &id)));
                if err > rep.tolerance {
                    return Err(Error::Representation(format!("{ga} and {gb} are not inverse (defect {err:.3e})")));
                }
            }
        }
    }
    Ok(())
}

/// Evaluates every relation of `p` in `rep`.
pub fn check_rep(rep: &MatrixRep, p: &Presentation) -> Result<VerificationReport> {
    for g in &p.generators {
        if !rep.mats.contains_key(g) {
            return Err(Error::UnassignedSymbol(g.to_string()));
        }
    }
    check_inverses(rep)?;
    let mut out = VerificationReport::new(format!("rep:{}:{}", rep.label, p.flavor.name()), Some((rep.rank.m, rep.rank.n)));
    for r in &p.relations {
        let t = Instant::now();
        let res = rep.residual(&r.body)?;
        out.records.push(Record {
            tag: r.tag.clone(),
            method: Method::Numeric,
            status: if res < rep.tolerance { VStatus::Verified } else { VStatus::Failed },
            residual: format!("{res:.3e}"),
            residual_value: Some(res),
            elapsed_ms: ms(t),
            note: None,
        });
    }
    out.meta = serde_json::json!({ "dim": rep.dim, "v": rep.v, "tolerance": rep.tolerance, "label": rep.label });
    Ok(out)
}

/// Max residual of the classical triple relations evaluated in `rep`.
pub fn classical_residual(rep: &MatrixRep) -> Result<f64> {
    let p = classical_presentation(rep.rank);
    let mut worst: f64 = 0.0;
    for r in &p.relations {
        worst = worst.max(rep.residual(&r.body)?);
    }
    Ok(worst)
}

/// `e, f, a^± ↦ 0`, Cartan generators `↦ 1`, in dimension 1.
pub fn build_trivial_rep(rank: RankParams) -> MatrixRep {
    let mut mats = HashMap::new();
    for i in 1..=rank.N() {
        for kind in [Kind::E, Kind::F, Kind::Aminus, Kind::Aplus] {
            mats.insert(rank.gen(kind, i), Array2::zeros((1, 1)));
        }
        for kind in [Kind::K, Kind::Kbar, Kind::L, Kind::Lbar] {
            mats.insert(rank.gen(kind, i), identity(1));
        }
    }
    MatrixRep {
        rank,
        dim: 1,
        mats,
        v: 2.0,
        tolerance: default_tolerance(1),
        headroom: None,
        cost: HashMap::new(),
        label: "trivial".to_string(),
    }
}

/// Squared ladder amplitudes of an odd mode: `x_n + x_{n−1} = 2[n + ½]_q`.
fn boson_amplitudes(cutoff: usize, q: f64) -> Result<Vec<f64>> {
    let mut xs = Vec::with_capacity(cutoff - 1);
    let mut prev = 0.0;
    for n in 0..cutoff - 1 {
        let x = 2.0 * q_number(n as f64 + 0.5, q) - prev;
        if x < 0.0 {
            return Err(Error::Representation(format!("negative amplitude square {x:.3e} at level {n}")));
        }
        xs.push(x);
        prev = x;
    }
    Ok(xs)
}

/// Order-1 Fock module: an odd mode `i ≤ m` is a ladder of length `cutoff`
/// with `H_i = −(n + ½)`, an even mode is two-dimensional with `H_i = n − ½`.
pub fn build_fock_rep(rank: RankParams, cutoff: usize, v: f64, convention: FockConvention) -> Result<MatrixRep> {
    if cutoff < 2 {
        return Err(Error::Representation(format!("cutoff {cutoff} below 2")));
    }
    if !v.is_finite() || v == 0.0 || (v.abs() - 1.0).abs() < 1e-12 {
        return Err(Error::Representation(format!("v = {v} not admissible")));
    }
    let nn = rank.N();
    let q = v * v;
    let odd = |i: usize| i <= rank.m;
    let dims: Vec<usize> = (1..=nn).map(|i| if odd(i) { cutoff } else { 2 }).collect();
    let dim: usize = dims.iter().product();
    let boson = boson_amplitudes(cutoff, q)?;
    let fermion = 2.0 * q_number(0.5, q);
    if fermion < 0.0 {
        return Err(Error::Representation("negative even-mode amplitude".to_string()));
    }
    let amp = |i: usize, n: usize| if odd(i) { boson[n].sqrt() } else { fermion.sqrt() };
    let occ = |mut s: usize| {
        let mut o = vec![0usize; nn];
        for k in (0..nn).rev() {
            o[k] = s % dims[k];
            s /= dims[k];
        }
        o
    };
    let index = |o: &[usize]| o.iter().zip(&dims).fold(0, |acc, (n, d)| acc * d + n);
    let states: Vec<Vec<usize>> = (0..dim).map(occ).collect();
    let h = |i: usize, n: usize| if odd(i) { -(n as f64 + 0.5) } else { n as f64 - 0.5 };
    let dress = |i: usize, o: &[usize], up: bool| -> f64 {
        if convention == FockConvention::Literal {
            return 1.0;
        }
        let qq = if up { q } else { 1.0 / q };
        (i + 1..=nn)
            .map(|j| {
                let s = if odd(i) && odd(j) { 1.0 } else { -1.0 };
                (s * qq).powi(o[j - 1] as i32)
            })
            .product()
    };
    let mut mats = HashMap::new();
    for i in 1..=nn {
        let mut ap = Array2::<Complex64>::zeros((dim, dim));
        let mut am = Array2::<Complex64>::zeros((dim, dim));
        let mut l = Array2::<Complex64>::zeros((dim, dim));
        let mut lb = Array2::<Complex64>::zeros((dim, dim));
        for (col, o) in states.iter().enumerate() {
            let n = o[i - 1];
            let e = h(i, n);
            l[[col, col]] = Complex64::new(q.powf(e), 0.0);
            lb[[col, col]] = Complex64::new(q.powf(-e), 0.0);
            if n + 1 < dims[i - 1] {
                let mut t = o.clone();
                t[i - 1] += 1;
                ap[[index(&t), col]] = Complex64::new(amp(i, n) * dress(i, o, true), 0.0);
            }
            if n >= 1 {
                let mut t = o.clone();
                t[i - 1] -= 1;
                am[[index(&t), col]] = Complex64::new(amp(i, n - 1) * dress(i, o, false), 0.0);
            }
        }
        mats.insert(rank.gen(Kind::Aplus, i), ap);
        mats.insert(rank.gen(Kind::Aminus, i), am);
        mats.insert(rank.gen(Kind::L, i), l);
        mats.insert(rank.gen(Kind::Lbar, i), lb);
    }
    let headroom = states
        .iter()
        .map(|o| (1..=nn).filter(|&i| odd(i)).map(|i| cutoff - 1 - o[i - 1]).min().unwrap_or(usize::MAX))
        .collect();
    let mut cost = HashMap::new();
    for i in 1..=nn {
        cost.insert(rank.gen(Kind::Aplus, i), 1);
        cost.insert(rank.gen(Kind::Aminus, i), 1);
    }
    let tag = match convention {
        FockConvention::Literal => "literal",
        FockConvention::QKlein => "qklein",
    };
    Ok(MatrixRep {
        rank,
        dim,
        mats,
        v,
        tolerance: default_tolerance(dim),
        headroom: Some(headroom),
        cost,
        label: format!("fock-{tag}-c{cutoff}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{chevalley_presentation, green_presentation};

    fn r(m: usize, n: usize) -> RankParams {
        RankParams::new(m, n).unwrap()
    }

    #[test]
    fn trivial_rep_satisfies_both() {
        for (m, n) in [(1, 1), (2, 1), (1, 3)] {
            let rep = build_trivial_rep(r(m, n));
            assert!(check_rep(&rep, &chevalley_presentation(r(m, n))).unwrap().all_verified());
            assert!(check_rep(&rep, &green_presentation(r(m, n))).unwrap().all_verified());
        }
    }

    #[test]
    fn boson_h_descends_under_raising() {
        let rep = build_fock_rep(r(1, 1), 4, 1.1, FockConvention::QKlein).unwrap();
        let l = &rep.mats[&r(1, 1).gen(Kind::L, 1)];
        let ap = &rep.mats[&r(1, 1).gen(Kind::Aplus, 1)];
        // L a^+ = q^{-1} a^+ L
        let q = 1.1f64 * 1.1;
        let d = l.dot(ap) - ap.dot(l).mapv(|z| z / q);
        assert!(max_abs(&d) < 1e-12);
    }

    #[test]
    fn even_mode_squares_to_zero() {
        let rep = build_fock_rep(r(1, 1), 4, 1.1, FockConvention::QKlein).unwrap();
        let ap = &rep.mats[&r(1, 1).gen(Kind::Aplus, 2)];
        assert!(max_abs(&ap.dot(ap)) < 1e-14);
        assert!(max_abs(ap) > 0.1);
    }

    #[test]
    fn ground_state_annihilated() {
        let rank = r(2, 1);
        let rep = build_fock_rep(rank, 3, 1.1, FockConvention::QKlein).unwrap();
        for i in 1..=rank.N() {
            let am = &rep.mats[&rank.gen(Kind::Aminus, i)];
            assert!(am.column(0).iter().all(|z| z.norm() == 0.0));
        }
    }

    #[test]
    fn missing_generator() {
        let mut rep = build_trivial_rep(r(1, 1));
        rep.mats.remove(&r(1, 1).gen(Kind::E, 1));
        assert!(matches!(check_rep(&rep, &chevalley_presentation(r(1, 1))), Err(Error::UnassignedSymbol(_))));
    }

    #[test]
    fn singular_cartan() {
        let mut rep = build_trivial_rep(r(1, 1));
        rep.mats.insert(r(1, 1).gen(Kind::K, 1), Array2::zeros((1, 1)));
        assert!(matches!(check_rep(&rep, &chevalley_presentation(r(1, 1))), Err(Error::Representation(_))));
    }

    #[test]
    fn bad_inputs() {
        assert!(build_fock_rep(r(1, 1), 1, 1.1, FockConvention::QKlein).is_err());
        assert!(build_fock_rep(r(1, 1), 4, 1.0, FockConvention::QKlein).is_err());
    }
}
