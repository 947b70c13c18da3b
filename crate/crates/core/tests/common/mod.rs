#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use qgreen_core::coeff::Var;
use qgreen_core::presentation::{chevalley_presentation, green_presentation, RankParams};
use qgreen_core::rewrite::{RewriteSystem, Status};
use qgreen_core::superalg::{plain, sup, Element, Gen, Kind, Parity, Word};
use qgreen_core::Scalar;

pub const SEED: [u8; 32] = *b"qgreen-acceptance-seed-000000001";

pub fn runner(cases: u32) -> TestRunner {
    let cfg = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(cfg, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

/// Small Laurent polynomial in v and one aux symbol, with an optional √2 part.
fn laurent() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-4i64..=4, -3i32..=3, 0u32..=1, any::<bool>()), 1..4).prop_map(|terms| {
        let t = Scalar::aux("t");
        terms.into_iter().fold(Scalar::zero(), |acc, (c, e, a, r2)| {
            let mut x = Scalar::int(c).mul(&Scalar::v_pow(e));
            if a == 1 {
                x = x.mul(&t);
            }
            if r2 {
                x = x.mul(&Scalar::sqrt2());
            }
            acc.add(&x)
        })
    })
}

pub fn scalar() -> impl Strategy<Value = Scalar> {
    (laurent(), laurent()).prop_map(|(a, b)| if b.is_zero() { a } else { a.div(&b).expect("nonzero") })
}

fn small_coeff() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, -2i32..=2).prop_filter_map("nonzero", |(c, e)| (c != 0).then(|| Scalar::int(c).mul(&Scalar::q_pow(e))))
}

fn alphabet(rank: RankParams, kinds: &[Kind]) -> Vec<Gen> {
    let mut out = Vec::new();
    for i in 1..=rank.N() {
        for &k in kinds {
            out.push(rank.gen(k, i));
        }
    }
    out
}

pub fn chevalley_alphabet(rank: RankParams) -> Vec<Gen> {
    alphabet(rank, &[Kind::E, Kind::F, Kind::K, Kind::Kbar])
}

pub fn green_alphabet(rank: RankParams) -> Vec<Gen> {
    alphabet(rank, &[Kind::Aminus, Kind::Aplus, Kind::L, Kind::Lbar])
}

pub fn element(gens: Vec<Gen>, max_len: usize) -> impl Strategy<Value = Element> {
    let n = gens.len();
    prop::collection::vec((prop::collection::vec(0..n, 0..=max_len), small_coeff()), 0..4).prop_map(move |terms| {
        let mut x = Element::zero();
        for (w, c) in terms {
            let letters: Vec<Gen> = w.into_iter().map(|i| gens[i]).collect();
            x.add_term(Word::from_slice(&letters), &c);
        }
        x
    })
}

/// Elements whose words all share the parity of the first one.
pub fn homogeneous(gens: Vec<Gen>, max_len: usize) -> impl Strategy<Value = Element> {
    element(gens, max_len).prop_map(|x| {
        let Some((w0, _)) = x.leading() else { return x };
        let odd = w0.is_odd();
        Element::from_terms(x.into_terms().into_iter().filter(|(w, _)| w.is_odd() == odd).collect())
    })
}

fn check(b: bool, what: &str) -> Result<(), TestCaseError> {
    if b {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

pub fn field_axioms(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(scalar(), scalar(), scalar()), |(a, b, c)| {
            check(a.add(&b).add(&c) == a.add(&b.add(&c)), "additive associativity")?;
            check(a.add(&b) == b.add(&a), "additive commutativity")?;
            check(a.mul(&b).mul(&c) == a.mul(&b.mul(&c)), "multiplicative associativity")?;
            check(a.mul(&b) == b.mul(&a), "multiplicative commutativity")?;
            check(a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c)), "distributivity")?;
            check(a.sub(&a).is_zero(), "additive inverse")?;
            check(a.add(&Scalar::zero()) == a && a.mul(&Scalar::one()) == a, "identities")?;
            if !a.is_zero() {
                check(a.mul(&a.inv().expect("nonzero")).is_one(), "multiplicative inverse")?;
            }
            let at = |var: Var| {
                Some(if var == Var::V {
                    num_complex::Complex64::new(1.37, 0.0)
                } else {
                    num_complex::Complex64::new(-0.61, 0.0)
                })
            };
            if let (Ok(ea), Ok(eb), Ok(ec), Ok(e)) =
                (a.evaluate(&at), b.evaluate(&at), c.evaluate(&at), a.mul(&b).add(&c).evaluate(&at))
            {
                let want = ea * eb + ec;
                check((e - want).norm() <= 1e-12 * want.norm().max(1.0), "evaluate is a homomorphism")?;
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn associativity(cases: u32) -> Result<(), String> {
    let gens = chevalley_alphabet(RankParams::new(1, 1).unwrap());
    let s = || element(gens.clone(), 3);
    runner(cases)
        .run(&(s(), s(), s()), |(x, y, z)| {
            check(x.mul(&y).mul(&z) == x.mul(&y.mul(&z)), "associativity")?;
            check(x.mul(&Element::one()) == x && Element::one().mul(&x) == x, "unit")?;
            check(x.mul(&y.add(&z)) == x.mul(&y).add(&x.mul(&z)), "bilinearity")
        })
        .map_err(|e| e.to_string())
}

pub fn bracket_parity(cases: u32) -> Result<(), String> {
    let gens = green_alphabet(RankParams::new(2, 1).unwrap());
    runner(cases)
        .run(&(homogeneous(gens.clone(), 3), homogeneous(gens, 3), small_coeff()), |(x, y, c)| {
            let b = sup(&x, &y, &c).expect("homogeneous");
            let (px, py) = (x.parity(), y.parity());
            let both_odd = px == Parity::Odd && py == Parity::Odd;
            let want = if both_odd { x.mul(&y).add(&y.mul(&x).scale(&c)) } else { plain(&x, &y, &c) };
            check(b == want, "super bracket family")?;
            if !b.is_zero() && !x.is_zero() && !y.is_zero() {
                let odd = (px == Parity::Odd) != (py == Parity::Odd);
                check(b.parity() == if odd { Parity::Odd } else { Parity::Even }, "bracket parity")?;
            }
            let one = Scalar::one();
            let sign = if both_odd { Scalar::one() } else { Scalar::int(-1) };
            let swapped = sup(&y, &x, &one).expect("homogeneous").scale(&sign);
            check(sup(&x, &y, &one).expect("homogeneous") == swapped, "graded antisymmetry")
        })
        .map_err(|e| e.to_string())
}

pub fn reduction_properties(cases: u32) -> Result<(), String> {
    let rank = RankParams::new(1, 1).unwrap();
    let systems = [
        (RewriteSystem::orient(&chevalley_presentation(rank)).unwrap().complete(10, 5000), chevalley_alphabet(rank)),
        (RewriteSystem::orient(&green_presentation(rank)).unwrap().complete(10, 5000), green_alphabet(rank)),
    ];
    for (rs, gens) in systems {
        runner(cases)
            .run(&element(gens, 4), |x| {
                let out = rs.reduce(&x, 10, true);
                check(out.status != Status::Inconclusive, "bounded input")?;
                let again = rs.reduce(&out.result, 10, false);
                check(again.result == out.result && again.steps == 0, "idempotence")?;
                let replayed = rs.replay(out.trace.as_deref().expect("traced"));
                check(replayed == x.sub(&out.result), "trace replay")?;
                check(out.result.terms().keys().all(|w| !rs.is_reducible(w.letters())), "irreducible result")
            })
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}
