//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Variables are filtration parameters [`ParamName`]. Monomials are ordered
//! graded-lexicographically, with variables ranked by the `ParamName` total
//! order (smaller name = more significant variable). Polynomials print from the
//! largest monomial down; the printed form is stable and used in golden tests.

use std::collections::{BTreeMap, BTreeSet};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::PolyError;

/// A filtration parameter: `a[i,j;m]` (coefficient of `x_m` in the lowering of
/// `x_i x_j`) or `b[i,j]` (its constant term).
///
/// The derived order is: all `A` before all `B`, then `(i, j)`, then `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParamName {
    A { i: usize, j: usize, m: usize },
    B { i: usize, j: usize },
}

impl ParamName {
    pub const fn a(i: usize, j: usize, m: usize) -> Self {
        ParamName::A { i, j, m }
    }

    pub const fn b(i: usize, j: usize) -> Self {
        ParamName::B { i, j }
    }

    /// The relation `(i, j)` this parameter belongs to.
    pub fn relation(self) -> (usize, usize) {
        match self {
            ParamName::A { i, j, .. } | ParamName::B { i, j } => (i, j),
        }
    }

    pub fn is_a(self) -> bool {
        matches!(self, ParamName::A { .. })
    }
}

impl fmt::Display for ParamName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamName::A { i, j, m } => write!(f, "a[{i},{j};{m}]"),
            ParamName::B { i, j } => write!(f, "b[{i},{j}]"),
        }
    }
}

/// A power product of parameters, stored as `(name, exponent)` pairs sorted by
/// name with positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(ParamName, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(p: ParamName) -> Self {
        Monomial(vec![(p, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(ParamName, u32)] {
        &self.0
    }

    pub fn variables(&self) -> impl Iterator<Item = ParamName> + '_ {
        self.0.iter().map(|(p, _)| *p)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(pa, ea)), Some(&&(pb, eb))) => match pa.cmp(&pb) {
                    Ordering::Less => {
                        out.push((pa, ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((pb, eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        out.push((pa, ea + eb));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&x), None) => {
                    out.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    out.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial(out)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (x, y) in self.0.iter().zip(&other.0) {
                if x.0 != y.0 {
                    // the side holding the earlier variable has the larger exponent there
                    return if x.0 < y.0 { Ordering::Greater } else { Ordering::Less };
                }
                if x.1 != y.1 {
                    return x.1.cmp(&y.1);
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (idx, (p, e)) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            write!(f, "{p}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Canonical sparse polynomial: no zero coefficients are ever stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(p: ParamName) -> Self {
        let mut out = Polynomial::zero();
        out.add_term(Monomial::var(p), BigRational::one());
        out
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value of a polynomial with no variables.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn variables(&self) -> BTreeSet<ParamName> {
        self.terms.keys().flat_map(|m| m.variables()).collect()
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value under `assignment`, which must cover every variable present.
    pub fn eval(&self, assignment: &BTreeMap<ParamName, BigRational>) -> Result<BigRational, PolyError> {
        self.eval_with(|p| assignment.get(&p).cloned())
    }

    pub fn eval_with<F>(&self, mut lookup: F) -> Result<BigRational, PolyError>
    where
        F: FnMut(ParamName) -> Option<BigRational>,
    {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for &(p, e) in m.factors() {
                let x = lookup(p).ok_or(PolyError::MissingVariable(p))?;
                v *= num_traits::pow(x, e as usize);
            }
            total += v;
        }
        Ok(total)
    }

    /// Simultaneous substitution. Rejects rules whose right-hand sides mention a
    /// substituted variable.
    pub fn substitute(&self, rules: &BTreeMap<ParamName, Polynomial>) -> Result<Polynomial, PolyError> {
        check_acyclic(rules)?;
        Ok(self.substitute_unchecked(rules))
    }

    pub(crate) fn substitute_unchecked(&self, rules: &BTreeMap<ParamName, Polynomial>) -> Polynomial {
        if rules.is_empty() || self.variables().iter().all(|v| !rules.contains_key(v)) {
            return self.clone();
        }
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(c.clone());
            let mut kept = Monomial::one();
            for &(p, e) in m.factors() {
                match rules.get(&p) {
                    Some(rhs) => term = &term * &rhs.pow(e),
                    None => kept = kept.mul(&Monomial(vec![(p, e)])),
                }
                if term.is_zero() {
                    break;
                }
            }
            if term.is_zero() {
                continue;
            }
            for (tm, tc) in term.terms {
                out.add_term(tm.mul(&kept), tc);
            }
        }
        out
    }

    /// Scales an equation `self = 0` to a canonical representative: integer
    /// coefficients with content 1 and a positive leading coefficient.
    pub fn normalized(&self) -> Polynomial {
        let Some((_, lead)) = self.leading() else {
            return Polynomial::zero();
        };
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .terms
            .values()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let mut factor = BigRational::new(lcm, content);
        if lead.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }
}

pub(crate) fn check_acyclic(rules: &BTreeMap<ParamName, Polynomial>) -> Result<(), PolyError> {
    for rhs in rules.values() {
        if let Some(v) = rhs.variables().into_iter().find(|v| rules.contains_key(v)) {
            return Err(PolyError::CyclicRules(v));
        }
    }
    Ok(())
}

impl From<ParamName> for Polynomial {
    fn from(p: ParamName) -> Self {
        Polynomial::var(p)
    }
}

impl From<BigRational> for Polynomial {
    fn from(c: BigRational) -> Self {
        Polynomial::constant(c)
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::constant(BigRational::from_integer(c.into()))
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn x() -> Polynomial {
        ParamName::a(1, 2, 1).into()
    }

    fn y() -> Polynomial {
        ParamName::a(1, 2, 2).into()
    }

    #[test]
    fn param_order_and_display() {
        let mut names = [
            ParamName::b(1, 1),
            ParamName::a(1, 2, 1),
            ParamName::a(1, 1, 3),
            ParamName::a(1, 1, 1),
        ];
        names.sort();
        let shown: Vec<_> = names.iter().map(ToString::to_string).collect();
        assert_eq!(shown, vec!["a[1,1;1]", "a[1,1;3]", "a[1,2;1]", "b[1,1]"]);
    }

    #[test]
    fn add_examples() {
        let p = &x() * &y() + Polynomial::from(3);
        assert_eq!(&p + &Polynomial::zero(), p);
        assert!((&x() + &(-&x())).is_zero());
        let half = x().scale(&q(1, 2));
        assert_eq!(&half + &half, x());
    }

    #[test]
    fn mul_examples() {
        let p = &x() * &y() - Polynomial::from(2);
        assert_eq!(&p * &Polynomial::one(), p);
        let lhs = (&x() + &y()) * (&x() - &y());
        let rhs = x().pow(2) - y().pow(2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rendering_is_canonical() {
        let b: Polynomial = ParamName::b(1, 2).into();
        let p = &x() * &y() - &b;
        assert_eq!(p.to_string(), "a[1,2;1]*a[1,2;2] - b[1,2]");
        let p = y().pow(2).scale(&q(-3, 2)) + x() + Polynomial::from(-1);
        assert_eq!(p.to_string(), "-3/2*a[1,2;2]^2 + a[1,2;1] - 1");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn eval_examples() {
        let mut asg = BTreeMap::new();
        assert_eq!(Polynomial::zero().eval(&asg).unwrap(), q(0, 1));
        asg.insert(ParamName::a(1, 2, 1), q(2, 1));
        asg.insert(ParamName::a(1, 2, 2), q(1, 2));
        let p = &x() * &y() - Polynomial::one();
        assert_eq!(p.eval(&asg).unwrap(), q(0, 1));
        let z: Polynomial = ParamName::b(3, 3).into();
        assert_eq!(
            (&p + &z).eval(&asg),
            Err(PolyError::MissingVariable(ParamName::b(3, 3)))
        );
    }

    #[test]
    fn substitute_examples() {
        let z: Polynomial = ParamName::b(1, 1).into();
        let p = &x() * &y() + &z;
        let mut rules = BTreeMap::new();
        rules.insert(ParamName::a(1, 2, 1), Polynomial::zero());
        assert_eq!(p.substitute(&rules).unwrap(), z);

        let mut rules = BTreeMap::new();
        rules.insert(ParamName::a(1, 2, 1), y());
        assert!((&x() - &y()).substitute(&rules).unwrap().is_zero());

        let mut cyclic = BTreeMap::new();
        cyclic.insert(ParamName::a(1, 2, 1), y());
        cyclic.insert(ParamName::a(1, 2, 2), x());
        assert!(matches!(p.substitute(&cyclic), Err(PolyError::CyclicRules(_))));
    }

    #[test]
    fn normalization() {
        let p = x().scale(&q(-2, 3)) + y().scale(&q(4, 9));
        let n = p.normalized();
        assert_eq!(n.to_string(), "3*a[1,2;1] - 2*a[1,2;2]");
        assert_eq!(n.normalized(), n);
        assert_eq!(Polynomial::zero().normalized(), Polynomial::zero());
        assert_eq!(Polynomial::from(-7).normalized(), Polynomial::one());
    }

    #[test]
    fn graded_lex_order() {
        let x2 = Monomial(vec![(ParamName::a(1, 1, 1), 2)]);
        let xy = Monomial(vec![(ParamName::a(1, 1, 1), 1), (ParamName::a(1, 1, 2), 1)]);
        let y2 = Monomial(vec![(ParamName::a(1, 1, 2), 2)]);
        let x = Monomial::var(ParamName::a(1, 1, 1));
        assert!(x2 > xy && xy > y2 && y2 > x && x > Monomial::one());
    }
}
