//! Exact check of compatibility with concatenation, and the class-merging repair.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::FiniteWord;

use super::{ClassId, Classifier};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `uw ≁ u′w`
    Right,
    /// `wu ≁ wu′`
    Left,
}

/// Equivalent words `u ∼ u′` separated by extending both with `w` on `side`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition1Violation {
    pub u: FiniteWord,
    pub u_prime: FiniteWord,
    pub w: FiniteWord,
    pub side: Side,
}

impl Condition1Violation {
    /// The two extended words, in the order `(from u, from u′)`.
    pub fn extended(&self) -> (FiniteWord, FiniteWord) {
        match self.side {
            Side::Right => (self.u.concat(&self.w), self.u_prime.concat(&self.w)),
            Side::Left => (self.w.concat(&self.u), self.w.concat(&self.u_prime)),
        }
    }

    /// Re-checks the violation by direct class evaluation.
    pub fn verify(&self, c: &Classifier) -> Result<bool> {
        let (x, y) = self.extended();
        Ok(c.equivalent(&self.u, &self.u_prime)? && !c.equivalent(&x, &y)?)
    }

    fn key(&self) -> (usize, Side, &[char], &[char], &[char]) {
        (
            self.u.len() + self.u_prime.len() + self.w.len(),
            self.side,
            self.u.letters(),
            self.u_prime.letters(),
            self.w.letters(),
        )
    }

    fn cmp_key(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

/// Budget for the left check's transformation monoid.
pub const DEFAULT_MONOID_BUDGET: usize = 200_000;

/// The transformation monoid of a classifier's machine, including the
/// identity, with shortlex-least witnesses.
#[derive(Clone, Debug)]
pub struct MachineMonoid {
    functions: Vec<Vec<u32>>,
    witnesses: Vec<FiniteWord>,
}

impl MachineMonoid {
    pub fn build(c: &Classifier, budget: usize) -> Result<Self> {
        let n = c.num_states();
        let k = c.alphabet().len();
        let identity: Vec<u32> = (0..n as u32).collect();
        let mut index: HashMap<Vec<u32>, usize> = HashMap::from([(identity.clone(), 0)]);
        let mut m = MachineMonoid { functions: vec![identity], witnesses: vec![FiniteWord::empty()] };
        let mut next = 0;
        while next < m.functions.len() {
            for ci in 0..k {
                let g: Vec<u32> = m.functions[next].iter().map(|&q| c.step(q as usize, ci) as u32).collect();
                if index.contains_key(&g) {
                    continue;
                }
                if m.functions.len() >= budget {
                    return Err(Error::BudgetExceeded { what: "transformation monoid size", limit: budget });
                }
                let mut w = m.witnesses[next].clone();
                w.push(c.alphabet().letter(ci));
                index.insert(g.clone(), m.functions.len());
                m.functions.push(g);
                m.witnesses.push(w);
            }
            next += 1;
        }
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }
}

/// Pairs of reachable states with equal class that some suffix separates:
/// the smallest violation found by backward search in the pair graph.
fn right_violation(c: &Classifier) -> Option<Condition1Violation> {
    let n = c.num_states();
    let k = c.alphabet().len();
    let access = c.access_words();
    // dist[p*n+q] = length of the shortest w with class(p·w) ≠ class(q·w).
    let mut dist = vec![usize::MAX; n * n];
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n * n];
    for p in 0..n {
        for q in 0..n {
            for ci in 0..k {
                pred[c.step(p, ci) * n + c.step(q, ci)].push(p * n + q);
            }
        }
    }
    let mut queue = VecDeque::new();
    for p in 0..n {
        for q in 0..n {
            if c.class_of_state(p) != c.class_of_state(q) {
                dist[p * n + q] = 0;
                queue.push_back(p * n + q);
            }
        }
    }
    while let Some(x) = queue.pop_front() {
        for &y in &pred[x] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    let mut best: Option<Condition1Violation> = None;
    for (i, (p, u)) in access.iter().enumerate() {
        for (q, u2) in &access[i + 1..] {
            let (p, q) = (*p, *q);
            if c.class_of_state(p) != c.class_of_state(q) || dist[p * n + q] == usize::MAX {
                continue;
            }
            // Greedy walk yields the lexicographically least shortest suffix.
            let mut w = FiniteWord::empty();
            let (mut x, mut y) = (p, q);
            while dist[x * n + y] > 0 {
                let d = dist[x * n + y];
                let ci = (0..k).find(|&ci| dist[c.step(x, ci) * n + c.step(y, ci)] == d - 1).expect("shortest path");
                w.push(c.alphabet().letter(ci));
                x = c.step(x, ci);
                y = c.step(y, ci);
            }
            let (u, u2) = if u.shortlex_cmp(u2) == Ordering::Greater { (u2, u) } else { (u, u2) };
            let v = Condition1Violation { u: u.clone(), u_prime: u2.clone(), w, side: Side::Right };
            if best.as_ref().is_none_or(|b| v.cmp_key(b) == Ordering::Less) {
                best = Some(v);
            }
        }
    }
    best
}

/// Elements grouped by the class they send the initial state to; each
/// group is compared with its first (shortlex-least) element on every
/// reachable state. Any disagreement within a group shows up against the
/// anchor, so this is exact.
fn left_violation(c: &Classifier, monoid: &MachineMonoid) -> Option<Condition1Violation> {
    let access = c.access_words();
    let init = c.initial();
    let mut anchor: HashMap<ClassId, usize> = HashMap::new();
    let mut best: Option<Condition1Violation> = None;
    for (g, f) in monoid.functions.iter().enumerate() {
        let class = c.class_of_state(f[init] as usize);
        let a = *anchor.entry(class).or_insert(g);
        if a == g {
            continue;
        }
        let fa = &monoid.functions[a];
        for (r, w) in &access {
            if c.class_of_state(fa[*r] as usize) != c.class_of_state(f[*r] as usize) {
                let v = Condition1Violation {
                    u: monoid.witnesses[a].clone(),
                    u_prime: monoid.witnesses[g].clone(),
                    w: w.clone(),
                    side: Side::Left,
                };
                if best.as_ref().is_none_or(|b| v.cmp_key(b) == Ordering::Less) {
                    best = Some(v);
                }
                break;
            }
        }
    }
    best
}

fn smallest(a: Option<Condition1Violation>, b: Option<Condition1Violation>) -> Option<Condition1Violation> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.cmp_key(&x) == Ordering::Less { y } else { x }),
        (x, y) => x.or(y),
    }
}

/// Exact check of `u ∼ u′ ⇒ uw ∼ u′w ∧ wu ∼ wu′`. Returns the smallest
/// violation under the key `(|u|+|u′|+|w|, side, u, u′, w)`.
pub fn check_condition1(c: &Classifier) -> Result<Option<Condition1Violation>> {
    let monoid = MachineMonoid::build(c, DEFAULT_MONOID_BUDGET)?;
    Ok(check_with_monoid(c, &monoid))
}

/// As [`check_condition1`], with a precomputed monoid of the same machine.
pub fn check_with_monoid(c: &Classifier, monoid: &MachineMonoid) -> Option<Condition1Violation> {
    smallest(right_violation(c), left_violation(c, monoid))
}

/// Output of [`lemma_repair`]: the repaired classifier and the violations
/// that triggered each merge, in order.
#[derive(Clone, Debug)]
pub struct Repair {
    pub classifier: Classifier,
    pub merges: Vec<Condition1Violation>,
}

/// Merges classes until the classifier satisfies condition (1). A right
/// violation merges the classes of `uw` and `u′w`; a left one those of `wu`
/// and `wu′`. The smaller class id survives.
pub fn lemma_repair(c: &Classifier) -> Result<Repair> {
    lemma_repair_with_budget(c, DEFAULT_MONOID_BUDGET)
}

pub fn lemma_repair_with_budget(c: &Classifier, monoid_budget: usize) -> Result<Repair> {
    // Relabelling never changes the machine, so the monoid is built once.
    let monoid = MachineMonoid::build(c, monoid_budget)?;
    let mut current = c.clone();
    let mut merges = Vec::new();
    while let Some(v) = check_with_monoid(&current, &monoid) {
        let (x, y) = v.extended();
        let (cx, cy) = (current.class_of(&x)?, current.class_of(&y)?);
        current = current.merge_classes(cx.min(cy), cx.max(cy));
        merges.push(v);
    }
    Ok(Repair { classifier: current, merges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn ab() -> Alphabet {
        Alphabet::new("ab").unwrap()
    }

    /// Brute-force condition (1) over words of length ≤ `n`.
    pub(crate) fn brute_condition1(c: &Classifier, n: usize) -> bool {
        let words = FiniteWord::enumerate(c.alphabet(), n);
        let ext = FiniteWord::enumerate(c.alphabet(), n);
        for u in &words {
            for v in &words {
                if !c.equivalent(u, v).unwrap() {
                    continue;
                }
                for w in &ext {
                    if !c.equivalent(&u.concat(w), &v.concat(w)).unwrap()
                        || !c.equivalent(&w.concat(u), &w.concat(v)).unwrap()
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn parity_is_a_congruence() {
        let p = Classifier::parity(ab(), 'a').unwrap();
        assert_eq!(check_condition1(&p).unwrap(), None);
        assert_eq!(check_condition1(&Classifier::single_class(ab())).unwrap(), None);
    }

    #[test]
    fn seen_ab_violates() {
        let s = Classifier::seen_factor(ab(), &"ab".into()).unwrap();
        assert!(!brute_condition1(&s, 3));
        let v = check_condition1(&s).unwrap().expect("violation");
        assert!(v.verify(&s).unwrap());
        assert_eq!(v, Condition1Violation { u: "ε".into(), u_prime: "a".into(), w: "b".into(), side: Side::Right });
    }

    #[test]
    fn repair_examples() {
        let p = Classifier::parity(ab(), 'a').unwrap();
        let r = lemma_repair(&p).unwrap();
        assert!(r.merges.is_empty());
        assert!(r.classifier.same_partition(&p));

        let s = Classifier::seen_factor(ab(), &"ab".into()).unwrap();
        let r = lemma_repair(&s).unwrap();
        assert_eq!(r.classifier.index(), 1);
        assert_eq!(r.merges.len(), 1);

        let f = Classifier::first_letter(ab());
        assert!(brute_condition1(&f, 4));
        let r = lemma_repair(&f).unwrap();
        assert!(r.classifier.same_partition(&f));
    }
}
