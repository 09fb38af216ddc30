//! Graph patterns that make parts of conditions II and III automatic.
//!
//! Each overlap `(i,j,k)` has one of five shapes. When the relation graph
//! avoids certain arrows around the overlap, condition II holds for all `r`
//! outside a small index set as soon as condition I holds everywhere (clause 1),
//! and condition III holds for the overlap once conditions I and II hold
//! everywhere (clause 2). The cube shape `(i,i,i)` has a single clause that
//! settles both II and III from condition I alone.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::{Algebra, Triple};
use crate::constraints::{evaluate, CheckVerdict, Constraint, ConstraintSystem, Failure, Origin};
use crate::parameters::ParameterTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    /// `x_i x_j x_k`, all distinct.
    Distinct,
    /// `x_i x_i x_k`.
    SquareFirst,
    /// `x_i x_k x_k`.
    SquareLast,
    /// `x_i x_j x_i`.
    Return,
    /// `x_i x_i x_i`.
    Cube,
}

impl Shape {
    pub fn of(t: Triple) -> Shape {
        let Triple { i, j, k } = t;
        match (i == j, j == k, i == k) {
            (true, true, _) => Shape::Cube,
            (_, _, true) => Shape::Return,
            (true, false, _) => Shape::SquareFirst,
            (false, true, _) => Shape::SquareLast,
            _ => Shape::Distinct,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Shape::Distinct => "ijk",
            Shape::SquareFirst => "iik",
            Shape::SquareLast => "ikk",
            Shape::Return => "iji",
            Shape::Cube => "iii",
        }
    }

    /// The subgraph the first clause looks for, in words.
    pub fn pattern(self) -> &'static str {
        match self {
            Shape::Distinct => "no arrow i->m' for m' outside {i,j}; no arrow m->k for m outside {j,k}",
            Shape::SquareFirst | Shape::SquareLast => {
                "no arrow i->m' for m' outside {i,k}; no arrow m->k for m outside {i,k}"
            }
            Shape::Return => {
                "every m outside {i,j}: no arrows between i and m, or none between j and m, or no loop at m"
            }
            Shape::Cube => "every m != i: no arrow i->m, or no arrow m->i, or no loop at m",
        }
    }

    /// The extra condition of the second clause, in words.
    pub fn clause_two_pattern(self) -> Option<&'static str> {
        match self {
            Shape::Distinct => Some("loops at i and k both present or both absent"),
            Shape::SquareFirst => Some("no loop at k, or no arrow k->i"),
            Shape::SquareLast => Some("no loop at i, or no arrow k->i"),
            Shape::Return => Some("no loop at i and no loop at j"),
            Shape::Cube => None,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What must already hold on the whole overlap basis before a skip is valid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Requirement {
    ConditionI,
    ConditionsIAndII,
}

impl Requirement {
    pub fn as_str(self) -> &'static str {
        match self {
            Requirement::ConditionI => "I",
            Requirement::ConditionsIAndII => "I+II",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleShortcut {
    pub triple: Triple,
    pub shape: Shape,
    /// Clauses whose graph preconditions hold (1, 2).
    pub clauses: Vec<u8>,
    /// Condition-II indices `r` implied once condition I holds.
    pub skip_ii: BTreeSet<usize>,
    pub skip_iii: Option<Requirement>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortcutReport {
    pub entries: Vec<TripleShortcut>,
}

impl ShortcutReport {
    pub fn get(&self, t: Triple) -> Option<&TripleShortcut> {
        self.entries.iter().find(|e| e.triple == t)
    }

    /// The requirement under which `c` may be skipped, if any.
    pub fn skippable(&self, c: &Constraint) -> Option<Requirement> {
        let entry = self.get(c.triple)?;
        match c.origin {
            Origin::II => c
                .r
                .filter(|r| entry.skip_ii.contains(r))
                .map(|_| Requirement::ConditionI),
            Origin::III => entry.skip_iii,
            _ => None,
        }
    }

    pub fn skipped_ii_count(&self) -> usize {
        self.entries.iter().map(|e| e.skip_ii.len()).sum()
    }
}

fn classify(alg: &Algebra, t: Triple) -> TripleShortcut {
    let Triple { i, j, k } = t;
    let shape = Shape::of(t);
    let has = |x: usize, y: usize| alg.has(x, y);
    let others = |excluded: &[usize]| alg.generators().filter(move |m| !excluded.contains(m)).collect::<Vec<_>>();
    let r_outside = |keep: &[usize]| -> BTreeSet<usize> { others(keep).into_iter().collect() };

    let mut clauses = Vec::new();
    let mut skip_ii = BTreeSet::new();
    let mut skip_iii = None;

    match shape {
        Shape::Distinct => {
            let c1 = others(&[i, j]).into_iter().all(|mp| !has(i, mp))
                && others(&[j, k]).into_iter().all(|m| !has(m, k));
            if c1 {
                clauses.push(1);
                skip_ii = r_outside(&[i, j, k]);
                if has(i, i) == has(k, k) {
                    clauses.push(2);
                    skip_iii = Some(Requirement::ConditionsIAndII);
                }
            }
        }
        Shape::SquareFirst | Shape::SquareLast => {
            // the two distinct indices: (i, k) for i i k and (i, k) for i k k
            let (p, q) = (i, k);
            let c1 = others(&[p, q]).into_iter().all(|mp| !has(p, mp))
                && others(&[p, q]).into_iter().all(|m| !has(m, q));
            if c1 {
                clauses.push(1);
                skip_ii = r_outside(&[p, q]);
                let c2 = match shape {
                    Shape::SquareFirst => !has(q, q) || !has(q, p),
                    _ => !has(p, p) || !has(q, p),
                };
                if c2 {
                    clauses.push(2);
                    skip_iii = Some(Requirement::ConditionsIAndII);
                }
            }
        }
        Shape::Return => {
            let c1 = others(&[i, j]).into_iter().all(|m| {
                (!has(i, m) && !has(m, i)) || (!has(j, m) && !has(m, j)) || !has(m, m)
            });
            if c1 {
                clauses.push(1);
                skip_ii = r_outside(&[i, j]);
                if !has(i, i) && !has(j, j) {
                    clauses.push(2);
                    skip_iii = Some(Requirement::ConditionsIAndII);
                }
            }
        }
        Shape::Cube => {
            let c = others(&[i])
                .into_iter()
                .all(|m| !has(i, m) || !has(m, i) || !has(m, m));
            if c {
                clauses.push(1);
                skip_ii = alg.generators().collect();
                skip_iii = Some(Requirement::ConditionI);
            }
        }
    }

    TripleShortcut {
        triple: t,
        shape,
        clauses,
        skip_ii,
        skip_iii,
    }
}

pub fn shortcut_report(alg: &Algebra) -> ShortcutReport {
    ShortcutReport {
        entries: alg.overlap_basis().iter().map(|t| classify(alg, t)).collect(),
    }
}

/// Outcome of a check that may leave out constraints the report proves implied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrunedCheck {
    pub verdict: CheckVerdict,
    pub skipped: usize,
}

/// Like [`ConstraintSystem::check`], skipping constraints whose shortcut
/// hypotheses are verified on `table` first.
pub fn check_pruned(sys: &ConstraintSystem, report: &ShortcutReport, table: &ParameterTable) -> PrunedCheck {
    let fails = |c: &Constraint| {
        let value = evaluate(&c.polynomial, table);
        (!num_traits::Zero::is_zero(&value)).then(|| Failure {
            constraint: c.clone(),
            value,
        })
    };

    let mut failures: Vec<Failure> = sys.iter().filter(|c| c.origin.is_condition_i()).filter_map(fails).collect();
    if !failures.is_empty() {
        let verdict = sys.check(table);
        return PrunedCheck { verdict, skipped: 0 };
    }

    let mut skipped = 0;
    let ii: Vec<&Constraint> = sys
        .with_origin(Origin::II)
        .filter(|c| {
            let skip = report.skippable(c) == Some(Requirement::ConditionI);
            skipped += usize::from(skip);
            !skip
        })
        .collect();
    let ii_failures: Vec<Failure> = ii.into_iter().filter_map(fails).collect();
    let ii_holds = ii_failures.is_empty();
    failures.extend(ii_failures);

    for c in sys.with_origin(Origin::III) {
        let skip = match report.skippable(c) {
            Some(Requirement::ConditionI) => true,
            Some(Requirement::ConditionsIAndII) => ii_holds,
            None => false,
        };
        if skip {
            skipped += 1;
        } else if let Some(f) = fails(c) {
            failures.push(f);
        }
    }

    PrunedCheck {
        verdict: CheckVerdict {
            pbw: failures.is_empty(),
            failures,
        },
        skipped,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        assert_eq!(Shape::of(Triple::new(1, 2, 3)), Shape::Distinct);
        assert_eq!(Shape::of(Triple::new(1, 1, 2)), Shape::SquareFirst);
        assert_eq!(Shape::of(Triple::new(1, 2, 2)), Shape::SquareLast);
        assert_eq!(Shape::of(Triple::new(1, 2, 1)), Shape::Return);
        assert_eq!(Shape::of(Triple::new(2, 2, 2)), Shape::Cube);
    }

    #[test]
    fn single_loop_is_fully_skippable() {
        let alg = Algebra::new(1, [(1, 1)]).unwrap();
        let rep = shortcut_report(&alg);
        let e = rep.get(Triple::new(1, 1, 1)).unwrap();
        assert_eq!(e.clauses, vec![1]);
        assert_eq!(e.skip_ii, BTreeSet::from([1]));
        assert_eq!(e.skip_iii, Some(Requirement::ConditionI));
    }

    #[test]
    fn path_overlaps_fire_both_clauses() {
        let alg = Algebra::new(5, [(1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let rep = shortcut_report(&alg);
        for e in &rep.entries {
            let Triple { i, j, k } = e.triple;
            assert_eq!(e.clauses, vec![1, 2]);
            let expected: BTreeSet<usize> = (1..=5).filter(|r| ![i, j, k].contains(r)).collect();
            assert_eq!(e.skip_ii, expected);
            assert_eq!(e.skip_iii, Some(Requirement::ConditionsIAndII));
        }
    }

    #[test]
    fn four_generator_example_has_no_shortcut() {
        let alg = Algebra::new(4, [(1, 2), (2, 3), (1, 4)]).unwrap();
        let rep = shortcut_report(&alg);
        let e = rep.get(Triple::new(1, 2, 3)).unwrap();
        assert!(e.clauses.is_empty());
        assert!(e.skip_ii.is_empty());
        assert_eq!(e.skip_iii, None);
    }
}
