//! The polynomial constraint system deciding PBW deformations.
//!
//! For every overlap `(i,j,k)` three families of equations are produced:
//!
//! * **I** (linear): `a[i,j;m] = 0` for `m != i` with `x_m x_k` not a relation
//!   (I.a), `a[j,k;m'] = 0` for `m' != k` with `x_i x_m'` not a relation (I.b),
//!   and `a[i,j;i] = a[j,k;k]` when `x_i x_k` is not a relation (I.c).
//! * **II** (quadratic): for each `r`, `d_r(i,j,k)` equals a prescribed
//!   combination of `b[i,j]`, `b[j,k]`, `b[j,i]`.
//! * **III** (bilinear in `a` and `b`): the `b`-weighted analogue of `d`.
//!
//! The filtered algebra is a PBW deformation iff all of them hold.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use petgraph::unionfind::UnionFind;

use crate::algebra::{Algebra, Triple};
use crate::error::ConstraintError;
use crate::parameters::{parameter_names, ParameterTable};
use crate::polynomial::{Monomial, ParamName, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Origin {
    Ia,
    Ib,
    Ic,
    II,
    III,
}

impl Origin {
    pub fn as_str(self) -> &'static str {
        match self {
            Origin::Ia => "I.a",
            Origin::Ib => "I.b",
            Origin::Ic => "I.c",
            Origin::II => "II",
            Origin::III => "III",
        }
    }

    pub fn is_condition_i(self) -> bool {
        matches!(self, Origin::Ia | Origin::Ib | Origin::Ic)
    }
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One equation `polynomial = 0` with the overlap and indices it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub polynomial: Polynomial,
    pub origin: Origin,
    pub triple: Triple,
    /// The `r` index of a condition-II equation.
    pub r: Option<usize>,
    /// The vanishing index `m` (I.a) or `m'` (I.b).
    pub aux: Option<usize>,
}

impl Constraint {
    fn sort_key(&self) -> (Triple, Origin, Option<usize>, Option<usize>) {
        (self.triple, self.origin, self.r, self.aux)
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}", self.origin, self.triple)?;
        if let Some(r) = self.r {
            write!(f, " r={r}")?;
        }
        if let Some(m) = self.aux {
            write!(f, " m={m}")?;
        }
        write!(f, "] {} = 0", self.polynomial)
    }
}

/// Normalized, deduplicated constraints sorted by `(triple, origin, r, aux)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    algebra: Algebra,
    constraints: Vec<Constraint>,
}

impl ConstraintSystem {
    /// Conditions I, II and III together.
    pub fn generate(alg: &Algebra, table: &ParameterTable) -> Self {
        let mut raw = raw_condition_i(alg, table);
        raw.extend(raw_condition_ii(alg, table));
        raw.extend(raw_condition_iii(alg, table));
        Self::finalize(alg, raw)
    }

    pub(crate) fn finalize(alg: &Algebra, raw: Vec<Constraint>) -> Self {
        let mut constraints: Vec<Constraint> = raw
            .into_iter()
            .filter_map(|mut c| {
                c.polynomial = c.polynomial.normalized();
                (!c.polynomial.is_zero()).then_some(c)
            })
            .collect();
        constraints.sort_by_key(Constraint::sort_key);
        let mut seen = HashSet::new();
        constraints.retain(|c| seen.insert(c.polynomial.clone()));
        ConstraintSystem {
            algebra: alg.clone(),
            constraints,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Constraint> {
        self.constraints.iter()
    }

    pub fn with_origin(&self, origin: Origin) -> impl Iterator<Item = &Constraint> {
        self.constraints.iter().filter(move |c| c.origin == origin)
    }

    pub fn count(&self, origin: Origin) -> usize {
        self.with_origin(origin).count()
    }

    /// The set of normalized polynomials, for order-insensitive comparison.
    pub fn polynomial_set(&self) -> BTreeSet<Polynomial> {
        self.constraints.iter().map(|c| c.polynomial.clone()).collect()
    }

    /// Evaluates every constraint on a numeric table.
    pub fn check(&self, table: &ParameterTable) -> CheckVerdict {
        let failures: Vec<Failure> = self
            .constraints
            .iter()
            .filter_map(|c| {
                let value = evaluate(&c.polynomial, table);
                (!value.is_zero()).then(|| Failure {
                    constraint: c.clone(),
                    value,
                })
            })
            .collect();
        CheckVerdict {
            pbw: failures.is_empty(),
            failures,
        }
    }
}

/// Value of a polynomial on a numeric table.
///
/// # Panics
/// If `table` is symbolic.
pub fn evaluate(p: &Polynomial, table: &ParameterTable) -> BigRational {
    p.eval_with(|name| table.value(name))
        .expect("constraint evaluation needs a numeric parameter table")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub constraint: Constraint,
    pub value: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckVerdict {
    pub pbw: bool,
    pub failures: Vec<Failure>,
}

/// `d_r(i,j,k) = sum_{m: (m,k) in R} a[i,j;m] a[m,k;r] - sum_{m': (i,m') in R} a[i,m';r] a[j,k;m']`.
pub fn d_poly(
    alg: &Algebra,
    table: &ParameterTable,
    t: Triple,
    r: usize,
) -> Result<Polynomial, ConstraintError> {
    if !(alg.has(t.i, t.j) && alg.has(t.j, t.k)) {
        return Err(ConstraintError::NotAnOverlap(t));
    }
    if r == 0 || r > alg.n() {
        return Err(ConstraintError::IndexOutOfRange { r, n: alg.n() });
    }
    Ok(d_unchecked(alg, table, t, r))
}

fn d_unchecked(alg: &Algebra, table: &ParameterTable, t: Triple, r: usize) -> Polynomial {
    let Triple { i, j, k } = t;
    let mut d = Polynomial::zero();
    for m in alg.in_neighbors(k) {
        d = d + table.lookup(ParamName::a(i, j, m)) * table.lookup(ParamName::a(m, k, r));
    }
    for mp in alg.out_neighbors(i) {
        d = d - table.lookup(ParamName::a(i, mp, r)) * table.lookup(ParamName::a(j, k, mp));
    }
    d
}

/// The value condition II prescribes for `d_r(i,j,k)`.
fn condition_ii_rhs(table: &ParameterTable, t: Triple, r: usize) -> Polynomial {
    let Triple { i, j, k } = t;
    if i != k {
        if r == k {
            -table.lookup(ParamName::b(i, j))
        } else if r == i {
            table.lookup(ParamName::b(j, k))
        } else {
            Polynomial::zero()
        }
    } else if r == i {
        table.lookup(ParamName::b(j, i)) - table.lookup(ParamName::b(i, j))
    } else {
        Polynomial::zero()
    }
}

/// Condition II for one overlap and one `r`: `d_r - rhs`.
pub fn condition_ii_polynomial(alg: &Algebra, table: &ParameterTable, t: Triple, r: usize) -> Polynomial {
    d_unchecked(alg, table, t, r) - condition_ii_rhs(table, t, r)
}

/// Condition III for one overlap.
pub fn condition_iii_polynomial(alg: &Algebra, table: &ParameterTable, t: Triple) -> Polynomial {
    let Triple { i, j, k } = t;
    let mut p = Polynomial::zero();
    for m in alg.in_neighbors(k) {
        p = p + table.lookup(ParamName::a(i, j, m)) * table.lookup(ParamName::b(m, k));
    }
    for mp in alg.out_neighbors(i) {
        p = p - table.lookup(ParamName::b(i, mp)) * table.lookup(ParamName::a(j, k, mp));
    }
    p
}

pub(crate) fn raw_condition_i(alg: &Algebra, table: &ParameterTable) -> Vec<Constraint> {
    let mut out = Vec::new();
    for t in alg.overlap_basis().iter() {
        let Triple { i, j, k } = t;
        for m in alg.generators().filter(|&m| m != i && !alg.has(m, k)) {
            out.push(Constraint {
                polynomial: table.lookup(ParamName::a(i, j, m)),
                origin: Origin::Ia,
                triple: t,
                r: None,
                aux: Some(m),
            });
        }
        for mp in alg.generators().filter(|&mp| mp != k && !alg.has(i, mp)) {
            out.push(Constraint {
                polynomial: table.lookup(ParamName::a(j, k, mp)),
                origin: Origin::Ib,
                triple: t,
                r: None,
                aux: Some(mp),
            });
        }
        if !alg.has(i, k) {
            out.push(Constraint {
                polynomial: table.lookup(ParamName::a(i, j, i)) - table.lookup(ParamName::a(j, k, k)),
                origin: Origin::Ic,
                triple: t,
                r: None,
                aux: None,
            });
        }
    }
    out
}

pub(crate) fn raw_condition_ii(alg: &Algebra, table: &ParameterTable) -> Vec<Constraint> {
    let mut out = Vec::new();
    for t in alg.overlap_basis().iter() {
        for r in alg.generators() {
            out.push(Constraint {
                polynomial: condition_ii_polynomial(alg, table, t, r),
                origin: Origin::II,
                triple: t,
                r: Some(r),
                aux: None,
            });
        }
    }
    out
}

pub(crate) fn raw_condition_iii(alg: &Algebra, table: &ParameterTable) -> Vec<Constraint> {
    alg.overlap_basis()
        .iter()
        .map(|t| Constraint {
            polynomial: condition_iii_polynomial(alg, table, t),
            origin: Origin::III,
            triple: t,
            r: None,
            aux: None,
        })
        .collect()
}

pub fn generate_condition_i(alg: &Algebra, table: &ParameterTable) -> ConstraintSystem {
    ConstraintSystem::finalize(alg, raw_condition_i(alg, table))
}

pub fn generate_condition_ii(alg: &Algebra, table: &ParameterTable) -> ConstraintSystem {
    ConstraintSystem::finalize(alg, raw_condition_ii(alg, table))
}

pub fn generate_condition_iii(alg: &Algebra, table: &ParameterTable) -> ConstraintSystem {
    ConstraintSystem::finalize(alg, raw_condition_iii(alg, table))
}

/// Decides whether a numeric table gives a PBW deformation.
pub fn check(alg: &Algebra, table: &ParameterTable) -> CheckVerdict {
    ConstraintSystem::generate(alg, &ParameterTable::symbolic(alg)).check(table)
}

/// Parameters forced equal by I.c, collapsed onto one representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualityClass {
    /// Smallest member; the value every member takes.
    pub representative: ParamName,
    pub members: Vec<ParamName>,
    /// Some member is forced to zero by I.a/I.b, so the whole class is.
    pub zero: bool,
}

/// Outcome of eliminating the linear condition I from a symbolic system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    /// `a`-parameters fixed by condition I: to zero or to a class representative.
    pub rules: BTreeMap<ParamName, Polynomial>,
    pub classes: Vec<EqualityClass>,
    /// In-scope `a`-parameters not fixed by any rule.
    pub free_a: Vec<ParamName>,
    /// `b`-parameters solved from a residual condition-II equation, as
    /// polynomials in the free `a`-parameters. The defining equations stay in
    /// the residual.
    pub b_pivots: BTreeMap<ParamName, Polynomial>,
    /// Conditions II and III after substitution.
    pub residual: ConstraintSystem,
}

impl Reduction {
    pub fn respects_rules(&self, table: &ParameterTable) -> bool {
        self.rules
            .iter()
            .all(|(p, rhs)| evaluate(&Polynomial::var(*p), table) == evaluate(rhs, table))
    }

    /// `b`-parameters in scope that are neither pivots nor fixed.
    pub fn free_b(&self) -> Vec<ParamName> {
        parameter_names(self.residual.algebra())
            .into_iter()
            .filter(|p| !p.is_a() && !self.b_pivots.contains_key(p))
            .collect()
    }
}

/// Single `b` variable occurring only linearly with a constant coefficient:
/// returns `(b, expression)` such that the equation reads `b = expression`.
fn b_pivot(p: &Polynomial) -> Option<(ParamName, Polynomial)> {
    let bs: Vec<ParamName> = p.variables().into_iter().filter(|v| !v.is_a()).collect();
    let [b] = bs[..] else { return None };
    let lin = Monomial::var(b);
    let coeff = p.coefficient(&lin);
    if coeff.is_zero() {
        return None;
    }
    let linear_only = p
        .terms()
        .all(|(m, _)| *m == lin || m.variables().all(|v| v != b));
    if !linear_only {
        return None;
    }
    let rest = p - &Polynomial::var(b).scale(&coeff);
    Some((b, rest.scale(&-coeff.recip())))
}

/// Eliminates condition I from a symbolic system.
///
/// Every assignment satisfies `sys` iff it respects `rules` and satisfies the
/// residual.
pub fn reduce_by_i(sys: &ConstraintSystem) -> Reduction {
    let alg = sys.algebra().clone();

    let mut zeros = BTreeSet::new();
    let mut equalities = Vec::new();
    for c in sys.iter() {
        match c.origin {
            Origin::Ia | Origin::Ib => zeros.extend(c.polynomial.variables()),
            Origin::Ic => {
                let vars: Vec<_> = c.polynomial.variables().into_iter().collect();
                if let [x, y] = vars[..] {
                    equalities.push((x, y));
                }
            }
            _ => {}
        }
    }

    let a_names: Vec<ParamName> = parameter_names(&alg).into_iter().filter(|p| p.is_a()).collect();
    let index: BTreeMap<ParamName, usize> = a_names.iter().enumerate().map(|(ix, p)| (*p, ix)).collect();
    let mut uf = UnionFind::<usize>::new(a_names.len());
    for (x, y) in &equalities {
        uf.union(index[x], index[y]);
    }
    let mut grouped: BTreeMap<usize, Vec<ParamName>> = BTreeMap::new();
    for (x, y) in &equalities {
        for p in [x, y] {
            grouped.entry(uf.find(index[p])).or_default().push(*p);
        }
    }

    let mut rules = BTreeMap::new();
    let mut classes = Vec::new();
    for (_, mut members) in grouped {
        members.sort();
        members.dedup();
        let representative = members[0];
        let zero = members.iter().any(|p| zeros.contains(p));
        for p in &members {
            if zero {
                rules.insert(*p, Polynomial::zero());
            } else if *p != representative {
                rules.insert(*p, Polynomial::var(representative));
            }
        }
        classes.push(EqualityClass {
            representative,
            members,
            zero,
        });
    }
    classes.sort_by_key(|c| c.representative);
    for p in &zeros {
        rules.insert(*p, Polynomial::zero());
    }
    let free_a = a_names.into_iter().filter(|p| !rules.contains_key(p)).collect();

    // condition I substituted into II and III
    let substituted: Vec<Constraint> = sys
        .iter()
        .filter(|c| !c.origin.is_condition_i())
        .filter_map(|c| {
            let polynomial = c.polynomial.substitute_unchecked(&rules).normalized();
            (!polynomial.is_zero()).then(|| Constraint {
                polynomial,
                ..c.clone()
            })
        })
        .collect();

    let mut b_pivots: BTreeMap<ParamName, Polynomial> = BTreeMap::new();
    let mut pivot_rows = Vec::new();
    let mut others = Vec::new();
    for c in substituted.iter().filter(|c| c.origin == Origin::II) {
        let p = c.polynomial.substitute_unchecked(&b_pivots);
        if p.is_zero() {
            continue;
        }
        match b_pivot(&p) {
            Some((b, expr)) if !b_pivots.contains_key(&b) => {
                b_pivots.insert(b, expr);
                pivot_rows.push(Constraint {
                    polynomial: p,
                    ..c.clone()
                });
            }
            _ => others.push(c.clone()),
        }
    }
    others.extend(substituted.iter().filter(|c| c.origin == Origin::III).cloned());
    for c in &mut others {
        c.polynomial = c.polynomial.substitute_unchecked(&b_pivots);
    }
    pivot_rows.extend(others);

    Reduction {
        rules,
        classes,
        free_a,
        b_pivots,
        residual: ConstraintSystem::finalize(&alg, pivot_rows),
    }
}
