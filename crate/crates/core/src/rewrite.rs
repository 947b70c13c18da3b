//! Noncommutative rewriting modulo a presentation: rule orientation,
//! normal-form reduction with traces, and truncated overlap completion.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::superalg::{deglex, weight, Element, Gen, Word};

pub const DEFAULT_DEGREE_BOUND: usize = 10;
pub const DEFAULT_MAX_RULES: usize = 5000;

/// Queued overlap `(weight, length, seq, a, b, k)`.
type PairKey = (usize, usize, usize, usize, usize, usize);

/// Degree-first, then symbol-priority lexicographic order on words.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct MonomialOrder;

impl MonomialOrder {
    pub fn cmp(&self, a: &[Gen], b: &[Gen]) -> std::cmp::Ordering {
        deglex(a, b)
    }
}

#[derive(Clone, Debug)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Element,
    pub tag: String,
}

impl Rule {
    /// The relation `lhs − rhs` this rule encodes.
    pub fn relation(&self) -> Element {
        Element::term(self.lhs.clone(), Scalar::one()).sub(&self.rhs)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CompletionMeta {
    pub completed: bool,
    pub truncated: bool,
    pub degree_bound: usize,
    pub max_rules: usize,
    pub rule_cap_hit: bool,
    pub pairs_processed: usize,
    pub pairs_skipped: usize,
    pub rules_added: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Zero,
    NormalForm,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct TraceStep {
    pub step: usize,
    pub rule_tag: String,
    pub rule: usize,
    pub position: usize,
    pub word: Word,
    pub coeff: Scalar,
}

#[derive(Clone, Debug)]
pub struct ReductionOutcome {
    pub status: Status,
    pub result: Element,
    pub steps: usize,
    pub trace: Option<Vec<TraceStep>>,
}

#[derive(Clone, Debug, Default)]
pub struct RewriteSystem {
    rules: Vec<Option<Rule>>,
    index: FxHashMap<Word, usize>,
    len_count: BTreeMap<usize, usize>,
    pub meta: CompletionMeta,
}

fn contains(hay: &[Gen], needle: &[Gen]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Overlap lengths `k` with `a[|a|−k..] = b[..k]`, `0 < k < min(|a|, |b|)`.
fn overlaps(a: &[Gen], b: &[Gen]) -> Vec<usize> {
    let top = a.len().min(b.len());
    (1..top).filter(|&k| a[a.len() - k..] == b[..k]).collect()
}

/// `u · x · v`
fn sandwich(u: &[Gen], x: &Element, v: &[Gen], c: &Scalar) -> Element {
    let mut out = Element::zero();
    for (w, d) in x.terms() {
        let mut letters: Vec<Gen> = Vec::with_capacity(u.len() + w.len() + v.len());
        letters.extend_from_slice(u);
        letters.extend_from_slice(w.letters());
        letters.extend_from_slice(v);
        out.add_term(Word::from_slice(&letters), &d.mul(c));
    }
    out
}

impl RewriteSystem {
    pub fn new() -> RewriteSystem {
        RewriteSystem::default()
    }

    /// One inter-reduced rule per relation of `p`.
    pub fn orient(p: &Presentation) -> Result<RewriteSystem> {
        RewriteSystem::from_relations(p.relations.iter().map(|r| (r.tag.clone(), r.body.clone())))
    }

    pub fn from_relations(rels: impl IntoIterator<Item = (String, Element)>) -> Result<RewriteSystem> {
        let mut rs = RewriteSystem::new();
        for (tag, body) in rels {
            if body.is_zero() {
                return Err(Error::DegenerateRelation(tag));
            }
            rs.insert(tag, body);
        }
        rs.interreduce_rhs();
        Ok(rs)
    }

    pub fn rules(&self) -> impl Iterator<Item = &Rule> {
        self.rules.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn rule(&self, id: usize) -> Option<&Rule> {
        self.rules.get(id).and_then(Option::as_ref)
    }

    pub fn rule_for(&self, lhs: &[Gen]) -> Option<&Rule> {
        self.index.get(lhs).and_then(|&id| self.rule(id))
    }

    /// Leftmost redex `(position, rule id)`, shortest match first.
    fn find_redex(&self, w: &[Gen]) -> Option<(usize, usize)> {
        for p in 0..w.len() {
            for &l in self.len_count.keys() {
                if p + l > w.len() {
                    break;
                }
                if let Some(&id) = self.index.get(&w[p..p + l]) {
                    return Some((p, id));
                }
            }
        }
        None
    }

    pub fn is_reducible(&self, w: &[Gen]) -> bool {
        self.find_redex(w).is_some()
    }

    /// Reduces `x` toward normal form; words of weight above `degree_bound`
    /// stop the reduction with status inconclusive.
    pub fn reduce(&self, x: &Element, degree_bound: usize, trace: bool) -> ReductionOutcome {
        self.reduce_inner(x, Some(degree_bound), trace)
    }

    /// Unbounded normal form.
    pub fn normal_form(&self, x: &Element) -> Element {
        self.reduce_inner(x, None, false).result
    }

    fn reduce_inner(&self, x: &Element, bound: Option<usize>, trace: bool) -> ReductionOutcome {
        let mut todo: BTreeMap<Word, Scalar> = x.terms().clone();
        let mut done: BTreeMap<Word, Scalar> = BTreeMap::new();
        let mut steps = 0;
        let mut log = trace.then(Vec::new);
        while let Some((w, c)) = todo.pop_last() {
            if let Some(b) = bound {
                if w.weight() > b {
                    todo.insert(w, c);
                    let mut rest = Element::from_terms(todo);
                    rest.add_assign(&Element::from_terms(done));
                    return ReductionOutcome { status: Status::Inconclusive, result: rest, steps, trace: log };
                }
            }
            match self.find_redex(w.letters()) {
                None => {
                    done.insert(w, c);
                }
                Some((pos, id)) => {
                    let rule = self.rules[id].as_ref().expect("indexed rule is active");
                    steps += 1;
                    if let Some(log) = log.as_mut() {
                        log.push(TraceStep {
                            step: steps,
                            rule_tag: rule.tag.clone(),
                            rule: id,
                            position: pos,
                            word: w.clone(),
                            coeff: c.clone(),
                        });
                    }
                    let u = &w.letters()[..pos];
                    let v = &w.letters()[pos + rule.lhs.len()..];
                    for (rw, rc) in rule.rhs.terms() {
                        let mut letters: Vec<Gen> = Vec::with_capacity(w.len());
                        letters.extend_from_slice(u);
                        letters.extend_from_slice(rw.letters());
                        letters.extend_from_slice(v);
                        let coeff = rc.mul(&c);
                        let key = Word::from_slice(&letters);
                        match todo.get_mut(&key) {
                            Some(slot) => {
                                let s = slot.add(&coeff);
                                if s.is_zero() {
                                    todo.remove(&key);
                                } else {
                                    *slot = s;
                                }
                            }
                            None => {
                                todo.insert(key, coeff);
                            }
                        }
                    }
                }
            }
        }
        let result = Element::from_terms(done);
        let status = if result.is_zero() { Status::Zero } else { Status::NormalForm };
        ReductionOutcome { status, result, steps, trace: log }
    }

    /// Rebuilds `x − result` from a trace; equals it exactly for a sound reduction.
    pub fn replay(&self, trace: &[TraceStep]) -> Element {
        let mut acc = Element::zero();
        for s in trace {
            let rule = self.rule(s.rule).expect("traced rule is active");
            let u = &s.word.letters()[..s.position];
            let v = &s.word.letters()[s.position + rule.lhs.len()..];
            acc.add_assign(&sandwich(u, &rule.relation(), v, &s.coeff));
        }
        acc
    }

    fn add_rule(&mut self, rule: Rule) -> usize {
        let id = self.rules.len();
        *self.len_count.entry(rule.lhs.len()).or_insert(0) += 1;
        self.index.insert(rule.lhs.clone(), id);
        self.rules.push(Some(rule));
        id
    }

    fn remove_rule(&mut self, id: usize) -> Rule {
        let rule = self.rules[id].take().expect("active rule");
        self.index.remove(&rule.lhs);
        let c = self.len_count.get_mut(&rule.lhs.len()).expect("counted length");
        *c -= 1;
        if *c == 0 {
            self.len_count.remove(&rule.lhs.len());
        }
        rule
    }

    /// Adds a relation, keeping the left-hand sides inter-reduced; returns
    /// the ids of rules created.
    fn insert(&mut self, tag: String, body: Element) -> Vec<usize> {
        let mut queue = vec![(tag, body)];
        let mut added = Vec::new();
        while let Some((tag, body)) = queue.pop() {
            let nf = self.normal_form(&body);
            let Some((lw, lc)) = nf.leading() else { continue };
            let (lw, lc) = (lw.clone(), lc.clone());
            let inv = lc.inv().expect("nonzero leading coefficient");
            let mut rhs = nf.scale(&inv.neg());
            rhs.add_term(lw.clone(), &Scalar::one());
            let victims: Vec<usize> = self
                .rules
                .iter()
                .enumerate()
                .filter_map(|(id, r)| r.as_ref().filter(|r| contains(r.lhs.letters(), lw.letters())).map(|_| id))
                .collect();
            for v in victims {
                let r = self.remove_rule(v);
                added.retain(|&a| a != v);
                queue.push((r.tag.clone(), r.relation()));
            }
            let id = self.add_rule(Rule { lhs: lw, rhs, tag });
            added.push(id);
        }
        added
    }

    /// Reduces every right-hand side against the whole system.
    pub fn interreduce_rhs(&mut self) {
        for id in 0..self.rules.len() {
            let Some(rule) = self.rules[id].as_ref() else { continue };
            let rhs = self.normal_form(&rule.rhs);
            self.rules[id].as_mut().expect("active").rhs = rhs;
        }
    }

    /// Truncated overlap completion. Critical pairs whose overlap word has
    /// weight above `degree_bound` are skipped and recorded as truncation.
    pub fn complete(&self, degree_bound: usize, max_rules: usize) -> RewriteSystem {
        let mut rs = self.clone();
        rs.meta = CompletionMeta { degree_bound, max_rules, ..CompletionMeta::default() };
        let mut heap: BinaryHeap<Reverse<PairKey>> = BinaryHeap::new();
        let mut seq = 0usize;
        let mut push_pairs = |rs: &RewriteSystem, id: usize, heap: &mut BinaryHeap<_>, meta_skip: &mut usize| {
            let Some(r) = rs.rule(id) else { return };
            let a = r.lhs.letters();
            for (oid, o) in rs.rules.iter().enumerate() {
                let Some(o) = o.as_ref() else { continue };
                let b = o.lhs.letters();
                let mut cand: Vec<(usize, usize, usize)> = overlaps(a, b).into_iter().map(|k| (id, oid, k)).collect();
                if oid != id {
                    cand.extend(overlaps(b, a).into_iter().map(|k| (oid, id, k)));
                }
                for (x, y, k) in cand {
                    let xl = rs.rules[x].as_ref().expect("active").lhs.letters();
                    let yl = rs.rules[y].as_ref().expect("active").lhs.letters();
                    let len = xl.len() + yl.len() - k;
                    let wt = weight(xl) + weight(&yl[k..]);
                    if wt > degree_bound {
                        *meta_skip += 1;
                        continue;
                    }
                    seq += 1;
                    heap.push(Reverse((wt, len, seq, x, y, k)));
                }
            }
        };
        let ids: Vec<usize> = (0..rs.rules.len()).filter(|&i| rs.rules[i].is_some()).collect();
        let mut skipped = 0;
        for id in ids {
            // pairs with rules of smaller id are produced when the later one is visited
            push_pairs(&rs, id, &mut heap, &mut skipped);
        }
        while let Some(Reverse((_, _, _, x, y, k))) = heap.pop() {
            if rs.rule(x).is_none() || rs.rule(y).is_none() {
                continue;
            }
            rs.meta.pairs_processed += 1;
            let (rx, ry) = (rs.rule(x).expect("active"), rs.rule(y).expect("active"));
            let a = rx.lhs.letters();
            let b = ry.lhs.letters();
            let left = sandwich(&[], &rx.rhs, &b[k..], &Scalar::one());
            let right = sandwich(&a[..a.len() - k], &ry.rhs, &[], &Scalar::one());
            let s = left.sub(&right);
            let nf = rs.normal_form(&s);
            if nf.is_zero() {
                continue;
            }
            if rs.len() >= max_rules {
                rs.meta.rule_cap_hit = true;
                rs.meta.truncated = true;
                break;
            }
            let tag = format!("cp#{}", rs.meta.rules_added + 1);
            let added = rs.insert(tag, nf);
            rs.meta.rules_added += added.len();
            for id in added {
                push_pairs(&rs, id, &mut heap, &mut skipped);
            }
        }
        rs.meta.pairs_skipped = skipped;
        rs.meta.truncated |= skipped > 0;
        rs.meta.completed = true;
        rs.interreduce_rhs();
        rs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{chevalley_presentation, RankParams};
    use crate::superalg::{sup, Kind};

    fn g(kind: Kind, i: usize) -> Gen {
        Gen::new(kind, i, 1)
    }

    #[test]
    fn orient_examples() {
        let rank = RankParams::new(1, 1).unwrap();
        let p = chevalley_presentation(rank);
        let rs = RewriteSystem::orient(&p).unwrap();
        let ke = rs.rule_for(&[g(Kind::K, 1), g(Kind::E, 1)]).unwrap();
        // α₁₁ = 0 at rank (1,1)
        assert_eq!(ke.rhs, Element::word(&[g(Kind::E, 1), g(Kind::K, 1)]));
        let kk = rs.rule_for(&[g(Kind::K, 1), g(Kind::Kbar, 1)]).unwrap();
        assert_eq!(kk.rhs, Element::one());
        // e₁ odd: e₁f₁ → −f₁e₁ + (k₁ − k̄₁)/(q − q̄)
        let ef = rs.rule_for(&[g(Kind::E, 1), g(Kind::F, 1)]).unwrap();
        let qq = Scalar::q().sub(&Scalar::qbar()).inv().unwrap();
        let expected = Element::word(&[g(Kind::F, 1), g(Kind::E, 1)])
            .neg()
            .add(&Element::gen(g(Kind::K, 1)).sub(&Element::gen(g(Kind::Kbar, 1))).scale(&qq));
        assert_eq!(ef.rhs, expected);
        for r in rs.rules() {
            assert!(r.rhs.terms().keys().all(|w| w < &r.lhs));
        }
    }

    #[test]
    fn off_diagonal_reduces_to_zero() {
        let rank = RankParams::new(1, 1).unwrap();
        let rs = RewriteSystem::orient(&chevalley_presentation(rank)).unwrap();
        let x = sup(&rank.e(1), &rank.f(2), &Scalar::one()).unwrap();
        let out = rs.reduce(&x, 6, true);
        assert_eq!(out.status, Status::Zero);
        let z = rs.reduce(&Element::zero(), 3, false);
        assert_eq!((z.status, z.steps), (Status::Zero, 0));
    }

    #[test]
    fn trace_replays() {
        let rank = RankParams::new(1, 1).unwrap();
        let rs = RewriteSystem::orient(&chevalley_presentation(rank)).unwrap();
        let x = rank.k(1).mul(&rank.e(2)).mul(&rank.f(2)).mul(&rank.kbar(1)).add(&rank.e(1).mul(&rank.f(1)));
        let out = rs.reduce(&x, 10, true);
        let replay = rs.replay(out.trace.as_ref().unwrap());
        assert_eq!(replay, x.sub(&out.result));
        let again = rs.reduce(&out.result, 10, false);
        assert_eq!(again.result, out.result);
        assert_eq!(again.steps, 0);
    }

    #[test]
    fn confluent_systems_gain_nothing() {
        let (a, b) = (Gen::generic(1, false), Gen::generic(2, false));
        let ba = Element::word(&[b, a]).sub(&Element::word(&[a, b]));
        let rs = RewriteSystem::from_relations([("ba".to_string(), ba)]).unwrap();
        let done = rs.complete(8, 100);
        assert_eq!(done.len(), 1);
        assert_eq!(done.meta.rules_added, 0);

        let (k, kb) = (g(Kind::K, 1), g(Kind::Kbar, 1));
        let rels = [
            ("inv".to_string(), Element::word(&[k, kb]).sub(&Element::one())),
            ("inv'".to_string(), Element::word(&[kb, k]).sub(&Element::one())),
        ];
        let rs = RewriteSystem::from_relations(rels).unwrap();
        let done = rs.complete(8, 100);
        assert_eq!(done.meta.rules_added, 0);
        assert!(!done.meta.truncated);
    }

    #[test]
    fn inconclusive_above_bound() {
        let rank = RankParams::new(1, 1).unwrap();
        let rs = RewriteSystem::orient(&chevalley_presentation(rank)).unwrap();
        let x = rank.e(2).mul(&rank.e(2)).mul(&rank.e(2)).mul(&rank.e(2));
        assert_eq!(rs.reduce(&x, 3, false).status, Status::Inconclusive);
    }

    #[test]
    fn completion_finds_overlap_consequence() {
        // aab → 0 and ab → b a give a b b... : a toy system with a nontrivial pair
        let (a, b) = (Gen::generic(1, false), Gen::generic(2, false));
        let rels = [
            ("r1".to_string(), Element::word(&[b, a]).sub(&Element::word(&[a, b]).scale(&Scalar::q()))),
            ("r2".to_string(), Element::word(&[b, b]).sub(&Element::word(&[a]))),
        ];
        let rs = RewriteSystem::from_relations(rels).unwrap();
        let done = rs.complete(8, 100);
        assert!(done.meta.rules_added > 0);
        // b·b·a reduces two ways; after completion both agree
        let x = Element::word(&[b, b, a]);
        let lhs = done.normal_form(&x);
        let rhs = done.normal_form(&Element::word(&[a, a]));
        assert_eq!(lhs, rhs);
    }
}
