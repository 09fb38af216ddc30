//! Filtration-parameter tables.
//!
//! A table covers exactly the parameters of the relations in `R`:
//! `a[i,j;m]` for `1 <= m <= n` and `b[i,j]`, for every `(i,j)` in `R`.
//! Looking up a parameter of a non-relation yields zero.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::Algebra;
use crate::error::ParamError;
use crate::polynomial::{ParamName, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    Numeric,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterTable {
    algebra: Algebra,
    // empty in symbolic mode
    values: BTreeMap<ParamName, BigRational>,
    mode: Mode,
}

/// Whether `p` is a filtration parameter of `alg`.
pub fn in_scope(alg: &Algebra, p: ParamName) -> bool {
    let (i, j) = p.relation();
    let m_ok = match p {
        ParamName::A { m, .. } => (1..=alg.n()).contains(&m),
        ParamName::B { .. } => true,
    };
    m_ok && alg.has(i, j)
}

/// Every in-scope parameter in the `ParamName` order.
pub fn parameter_names(alg: &Algebra) -> Vec<ParamName> {
    let mut names: Vec<ParamName> = alg
        .relations()
        .flat_map(|r| alg.generators().map(move |m| ParamName::a(r.from, r.to, m)))
        .collect();
    names.extend(alg.relations().map(|r| ParamName::b(r.from, r.to)));
    names
}

impl ParameterTable {
    /// Every in-scope parameter stands for itself.
    pub fn symbolic(alg: &Algebra) -> Self {
        ParameterTable {
            algebra: alg.clone(),
            values: BTreeMap::new(),
            mode: Mode::Symbolic,
        }
    }

    /// Numeric table from sparse entries; unspecified parameters are zero.
    pub fn numeric<I>(alg: &Algebra, entries: I) -> Result<Self, ParamError>
    where
        I: IntoIterator<Item = (ParamName, BigRational)>,
    {
        let mut values: BTreeMap<ParamName, BigRational> = parameter_names(alg)
            .into_iter()
            .map(|p| (p, BigRational::zero()))
            .collect();
        let mut seen = std::collections::BTreeSet::new();
        for (p, v) in entries {
            if !in_scope(alg, p) {
                return Err(ParamError::OutOfScope(p));
            }
            if !seen.insert(p) {
                return Err(ParamError::Duplicate(p));
            }
            values.insert(p, v);
        }
        Ok(ParameterTable {
            algebra: alg.clone(),
            values,
            mode: Mode::Numeric,
        })
    }

    /// The trivial deformation.
    pub fn zero(alg: &Algebra) -> Self {
        ParameterTable::numeric(alg, []).expect("no entries")
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Number of in-scope parameters, `|R| * (n + 1)`.
    pub fn len(&self) -> usize {
        self.algebra.relation_count() * (self.algebra.n() + 1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn names(&self) -> Vec<ParamName> {
        parameter_names(&self.algebra)
    }

    /// The parameter as a polynomial: its variable (symbolic), its value
    /// (numeric), or zero when out of scope.
    pub fn lookup(&self, p: ParamName) -> Polynomial {
        if !in_scope(&self.algebra, p) {
            return Polynomial::zero();
        }
        match self.mode {
            Mode::Symbolic => Polynomial::var(p),
            Mode::Numeric => Polynomial::constant(self.values[&p].clone()),
        }
    }

    /// Numeric value; zero when out of scope. `None` in symbolic mode.
    pub fn value(&self, p: ParamName) -> Option<BigRational> {
        match self.mode {
            Mode::Symbolic => None,
            Mode::Numeric => Some(self.values.get(&p).cloned().unwrap_or_else(BigRational::zero)),
        }
    }

    /// All in-scope values, for numeric tables.
    pub fn assignment(&self) -> &BTreeMap<ParamName, BigRational> {
        &self.values
    }

    /// True iff numeric and every value is zero.
    pub fn is_trivial(&self) -> bool {
        self.mode == Mode::Numeric && self.values.values().all(Zero::is_zero)
    }
}
