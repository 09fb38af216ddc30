//! Independent PBW verdict by overlap resolution.
//!
//! Each relation `x_i x_j` becomes the length-decreasing rewrite rule
//! `x_i x_j -> sum_m a[i,j;m] x_m + b[i,j]`. The deformation is PBW exactly when
//! every degree-three overlap `x_i x_j x_k` reaches the same normal form
//! whether the prefix or the suffix is rewritten first.
//!
//! Nothing here refers to the polynomial constraint system; the two verdicts
//! are compared in tests.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Algebra, Triple};
use crate::parameters::ParameterTable;
use crate::polynomial::ParamName;

/// A word in the generators; the empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letter(x: usize) -> Self {
        Word(vec![x])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

// length first, then lexicographic
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|x| format!("x{x}")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Element of the free algebra with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, BigRational>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn word(w: Word) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(w, BigRational::one());
        p
    }

    pub fn add_term(&mut self, w: Word, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    /// `left * self * right` for words `left`, `right`.
    pub fn sandwich(&self, left: &[usize], right: &[usize]) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            let mut v = left.to_vec();
            v.extend_from_slice(&w.0);
            v.extend_from_slice(right);
            out.add_term(Word(v), c.clone());
        }
        out
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (w, c)) in self.terms.iter().rev().enumerate() {
            match (idx, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if w.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{abs}*{w}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Rules `x_i x_j -> rhs` for every relation.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    rules: BTreeMap<(usize, usize), NCPoly>,
}

impl RewriteSystem {
    /// # Panics
    /// If `table` is symbolic.
    pub fn new(alg: &Algebra, table: &ParameterTable) -> Self {
        let value = |p: ParamName| {
            table
                .value(p)
                .expect("the rewriting oracle needs a numeric parameter table")
        };
        let mut rules = BTreeMap::new();
        for rel in alg.relations() {
            let mut rhs = NCPoly::zero();
            for m in alg.generators() {
                rhs.add_term(Word::letter(m), value(ParamName::a(rel.from, rel.to, m)));
            }
            rhs.add_term(Word::unit(), value(ParamName::b(rel.from, rel.to)));
            rules.insert((rel.from, rel.to), rhs);
        }
        RewriteSystem { rules }
    }

    pub fn rule(&self, i: usize, j: usize) -> Option<&NCPoly> {
        self.rules.get(&(i, j))
    }

    fn redex(&self, w: &[usize], strategy: Strategy) -> Option<usize> {
        let mut positions = 0..w.len().saturating_sub(1);
        let hit = |&p: &usize| self.rules.contains_key(&(w[p], w[p + 1]));
        match strategy {
            Strategy::Leftmost => positions.find(hit),
            Strategy::Rightmost => positions.rev().find(hit),
        }
    }

    /// Rewrites until no word contains a relation; each step shortens a word.
    pub fn normal_form(&self, p: &NCPoly) -> NCPoly {
        self.normal_form_with(p, Strategy::Leftmost)
    }

    pub fn normal_form_with(&self, p: &NCPoly, strategy: Strategy) -> NCPoly {
        let mut out = NCPoly::zero();
        let mut stack: Vec<(Word, BigRational)> =
            p.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        while let Some((w, c)) = stack.pop() {
            match self.redex(&w.0, strategy) {
                None => out.add_term(w, c),
                Some(pos) => {
                    let rhs = &self.rules[&(w.0[pos], w.0[pos + 1])];
                    let expanded = rhs.sandwich(&w.0[..pos], &w.0[pos + 2..]);
                    for (v, x) in expanded.terms() {
                        stack.push((v.clone(), x * &c));
                    }
                }
            }
        }
        out
    }

    /// Normal forms of `x_i x_j x_k` after contracting the prefix, resp. the
    /// suffix, first.
    pub fn resolve_overlap(&self, t: Triple) -> (NCPoly, NCPoly) {
        let left = self.rules[&(t.i, t.j)].sandwich(&[], &[t.k]);
        let right = self.rules[&(t.j, t.k)].sandwich(&[t.i], &[]);
        (self.normal_form(&left), self.normal_form(&right))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapFailure {
    pub triple: Triple,
    pub left: NCPoly,
    pub right: NCPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict {
    pub pbw: bool,
    pub failures: Vec<OverlapFailure>,
}

pub fn oracle_verdict(alg: &Algebra, table: &ParameterTable) -> OracleVerdict {
    let rs = RewriteSystem::new(alg, table);
    let failures: Vec<OverlapFailure> = alg
        .overlap_basis()
        .iter()
        .filter_map(|t| {
            let (left, right) = rs.resolve_overlap(t);
            (left != right).then_some(OverlapFailure {
                triple: t,
                left,
                right,
            })
        })
        .collect();
    OracleVerdict {
        pbw: failures.is_empty(),
        failures,
    }
}

/// The relation `x_i x_j - sum_m a[i,j;m] x_m - b[i,j]` of the filtered algebra.
pub fn deformed_relation(rs: &RewriteSystem, i: usize, j: usize) -> Option<NCPoly> {
    let rhs = rs.rule(i, j)?;
    Some(NCPoly::word(Word(vec![i, j])).add(&rhs.scale(&-BigRational::one())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn w(v: &[usize]) -> NCPoly {
        NCPoly::word(Word(v.to_vec()))
    }

    #[test]
    fn no_redex_is_unchanged() {
        let alg = Algebra::new(3, [(1, 2)]).unwrap();
        let rs = RewriteSystem::new(&alg, &ParameterTable::zero(&alg));
        assert_eq!(rs.normal_form(&w(&[1, 3])), w(&[1, 3]));
    }

    #[test]
    fn loop_rule_collapses_square() {
        let alg = Algebra::new(1, [(1, 1)]).unwrap();
        let t = ParameterTable::numeric(&alg, [(ParamName::a(1, 1, 1), int(1))]).unwrap();
        let rs = RewriteSystem::new(&alg, &t);
        assert_eq!(rs.normal_form(&w(&[1, 1])), w(&[1]));
        assert_eq!(rs.normal_form(&w(&[1, 1, 1, 1])), w(&[1]));
    }

    #[test]
    fn two_cycle_overlap_resolves_either_way() {
        let alg = Algebra::new(2, [(1, 2), (2, 1)]).unwrap();
        let t = ParameterTable::numeric(
            &alg,
            [
                (ParamName::a(1, 2, 1), int(1)),
                (ParamName::a(1, 2, 2), int(1)),
                (ParamName::a(2, 1, 1), int(1)),
                (ParamName::a(2, 1, 2), int(1)),
                (ParamName::b(1, 2), int(-1)),
                (ParamName::b(2, 1), int(-1)),
            ],
        )
        .unwrap();
        let rs = RewriteSystem::new(&alg, &t);
        let word = w(&[1, 2, 1]);
        let left = rs.normal_form_with(&word, Strategy::Leftmost);
        let right = rs.normal_form_with(&word, Strategy::Rightmost);
        assert_eq!(left, right);
        // x1x2x1 -> (x1 + x2 - 1)x1 -> x1^2 + (x1 + x2 - 1) - x1  (x1^2 irreducible)
        assert_eq!(left.to_string(), "x1*x1 + x2 - 1");
        assert!(oracle_verdict(&alg, &t).pbw);
    }

    #[test]
    fn zero_table_is_pbw() {
        let alg = Algebra::new(3, [(1, 1), (1, 2), (2, 3), (3, 3)]).unwrap();
        assert!(oracle_verdict(&alg, &ParameterTable::zero(&alg)).pbw);
    }

    #[test]
    fn perturbed_b_breaks_three_generator_example() {
        let alg = Algebra::new(3, [(1, 1), (1, 2), (2, 3), (3, 3)]).unwrap();
        // free values a111=1, a121=a233=2, a122=3, a232=-1, a333=1/2; b's from II
        let (a111, a121, a122, a232, a333) = (int(1), int(2), int(3), int(-1), ratio(1, 2));
        let b11 = &a122 * &a122 - &a111 * &a122;
        let b12 = -(&a121 * &a122);
        let b23 = -(&a232 * &a121);
        let b33 = &a232 * &a232 - &a232 * &a333;
        let entries = |b12: BigRational| {
            vec![
                (ParamName::a(1, 1, 1), a111.clone()),
                (ParamName::a(1, 2, 1), a121.clone()),
                (ParamName::a(2, 3, 3), a121.clone()),
                (ParamName::a(1, 2, 2), a122.clone()),
                (ParamName::a(2, 3, 2), a232.clone()),
                (ParamName::a(3, 3, 3), a333.clone()),
                (ParamName::b(1, 1), b11.clone()),
                (ParamName::b(1, 2), b12),
                (ParamName::b(2, 3), b23.clone()),
                (ParamName::b(3, 3), b33.clone()),
            ]
        };
        let good = ParameterTable::numeric(&alg, entries(b12.clone())).unwrap();
        assert!(oracle_verdict(&alg, &good).pbw);

        let bad = ParameterTable::numeric(&alg, entries(&b12 + int(1))).unwrap();
        let v = oracle_verdict(&alg, &bad);
        assert!(!v.pbw);
        assert!(v
            .failures
            .iter()
            .any(|f| f.triple == Triple::new(1, 1, 2) || f.triple == Triple::new(1, 2, 3)));
    }

    #[test]
    fn rendering() {
        let mut p = w(&[1, 2]);
        p.add_term(Word::letter(1), ratio(-3, 2));
        p.add_term(Word::unit(), int(1));
        assert_eq!(p.to_string(), "x1*x2 - 3/2*x1 + 1");
        assert_eq!(NCPoly::zero().to_string(), "0");
    }
}
