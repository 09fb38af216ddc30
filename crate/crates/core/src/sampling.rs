//! Random numeric parameter tables for cross-validation.
//!
//! Values are small rationals; a `density` in `[0, 1]` controls how many
//! entries are nonzero, so both sparse and dense tables are exercised.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use crate::algebra::Algebra;
use crate::constraints::{evaluate, Reduction};
use crate::parameters::{parameter_names, ParameterTable};
use crate::polynomial::{ParamName, Polynomial};
use crate::rational::ratio;

pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    let num = rng.gen_range(-6i64..=6);
    let den = rng.gen_range(1i64..=4);
    ratio(num, den)
}

fn maybe<R: Rng + ?Sized>(rng: &mut R, density: f64) -> BigRational {
    if rng.gen_bool(density.clamp(0.0, 1.0)) {
        random_rational(rng)
    } else {
        BigRational::zero()
    }
}

/// Every in-scope parameter drawn independently.
pub fn random_table<R: Rng + ?Sized>(alg: &Algebra, rng: &mut R, density: f64) -> ParameterTable {
    let entries: Vec<_> = parameter_names(alg)
        .into_iter()
        .map(|p| (p, maybe(rng, density)))
        .collect();
    ParameterTable::numeric(alg, entries).expect("names are in scope")
}

/// A table satisfying condition I: free `a`-parameters drawn at random, the
/// rest fixed by the reduction rules. With `solve_b`, each pivot `b` is set
/// from its condition-II equation; other `b`s are drawn at random.
pub fn table_satisfying_i<R: Rng + ?Sized>(
    alg: &Algebra,
    reduction: &Reduction,
    rng: &mut R,
    density: f64,
    solve_b: bool,
) -> ParameterTable {
    let mut values: BTreeMap<ParamName, BigRational> = BTreeMap::new();
    for p in &reduction.free_a {
        values.insert(*p, maybe(rng, density));
    }
    let eval_free = |poly: &Polynomial, values: &BTreeMap<ParamName, BigRational>| {
        poly.eval(values).expect("rule right-hand sides only mention free parameters")
    };
    let fixed: Vec<_> = reduction
        .rules
        .iter()
        .map(|(p, rhs)| (*p, eval_free(rhs, &values)))
        .collect();
    values.extend(fixed);
    for p in parameter_names(alg).into_iter().filter(|p| !p.is_a()) {
        let v = match reduction.b_pivots.get(&p) {
            Some(expr) if solve_b => eval_free(expr, &values),
            _ => maybe(rng, density),
        };
        values.insert(p, v);
    }
    let table = ParameterTable::numeric(alg, values).expect("names are in scope");
    debug_assert!(reduction
        .rules
        .iter()
        .all(|(p, rhs)| evaluate(&Polynomial::var(*p), &table) == evaluate(rhs, &table)));
    table
}
