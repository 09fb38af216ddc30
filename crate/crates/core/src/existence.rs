//! Explicit nontrivial PBW deformations.
//!
//! Every algebra with at least one relation admits one. The construction keeps
//! `a[i,j;m] = 0` for `m` outside `{i, j}` and picks one of three shapes:
//!
//! 1. a loop `l -> l`: only `a[l,l;l] = 1`;
//! 2. no loops but a two-cycle `s <-> t`: for `u` in `{s, t}` set
//!    `a[p,u;p] = 1` for each in-neighbour `p` and `a[u,q;q] = 1` for each
//!    out-neighbour `q`, plus `b[s,t] = b[t,s] = -1`;
//! 3. otherwise: the same `a`-pattern around a single vertex `u`, all `b` zero.
//!
//! Ties are broken by the smallest index; no reindexing takes place.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;

use crate::algebra::Algebra;
use crate::error::ExistenceError;
use crate::parameters::ParameterTable;
use crate::polynomial::ParamName;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    Loop { vertex: usize },
    TwoCycle { s: usize, t: usize },
    Vertex { u: usize },
}

impl Witness {
    pub fn case(self) -> u8 {
        match self {
            Witness::Loop { .. } => 1,
            Witness::TwoCycle { .. } => 2,
            Witness::Vertex { .. } => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deformation {
    pub witness: Witness,
    pub table: ParameterTable,
}

/// Which construction applies.
pub fn choose_witness(alg: &Algebra) -> Result<Witness, ExistenceError> {
    if alg.relation_count() == 0 {
        return Err(ExistenceError::NoRelations);
    }
    if let Some(l) = alg.generators().find(|&l| alg.has(l, l)) {
        return Ok(Witness::Loop { vertex: l });
    }
    for s in alg.generators() {
        for t in s + 1..=alg.n() {
            if alg.has(s, t) && alg.has(t, s) {
                return Ok(Witness::TwoCycle { s, t });
            }
        }
    }
    let u = alg
        .generators()
        .find(|&u| alg.in_degree(u) + alg.out_degree(u) > 0)
        .expect("a relation has an endpoint");
    Ok(Witness::Vertex { u })
}

pub fn nontrivial_deformation(alg: &Algebra) -> Result<Deformation, ExistenceError> {
    let witness = choose_witness(alg)?;
    let one = BigRational::one();
    let mut entries: BTreeMap<ParamName, BigRational> = BTreeMap::new();
    let around = |u: usize, entries: &mut BTreeMap<ParamName, BigRational>| {
        for p in alg.in_neighbors(u) {
            entries.insert(ParamName::a(p, u, p), one.clone());
        }
        for q in alg.out_neighbors(u) {
            entries.insert(ParamName::a(u, q, q), one.clone());
        }
    };
    match witness {
        Witness::Loop { vertex } => {
            entries.insert(ParamName::a(vertex, vertex, vertex), one.clone());
        }
        Witness::TwoCycle { s, t } => {
            around(s, &mut entries);
            around(t, &mut entries);
            entries.insert(ParamName::b(s, t), -one.clone());
            entries.insert(ParamName::b(t, s), -one.clone());
        }
        Witness::Vertex { u } => around(u, &mut entries),
    }
    let table = ParameterTable::numeric(alg, entries).expect("constructed parameters are in scope");
    Ok(Deformation { witness, table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraints::check;
    use crate::oracle::oracle_verdict;
    use crate::rational::int;
    use num_traits::Zero;

    #[test]
    fn empty_relations_error() {
        let alg = Algebra::new(2, []).unwrap();
        assert_eq!(nontrivial_deformation(&alg), Err(ExistenceError::NoRelations));
    }

    #[test]
    fn loop_case() {
        let alg = Algebra::new(3, [(1, 1), (1, 2), (2, 3), (3, 3)]).unwrap();
        let d = nontrivial_deformation(&alg).unwrap();
        assert_eq!(d.witness, Witness::Loop { vertex: 1 });
        for (p, v) in d.table.assignment() {
            let expected = if *p == ParamName::a(1, 1, 1) { int(1) } else { BigRational::zero() };
            assert_eq!(*v, expected, "{p}");
        }
        assert!(check(&alg, &d.table).pbw);
        assert!(oracle_verdict(&alg, &d.table).pbw);
    }

    #[test]
    fn two_cycle_case() {
        let alg = Algebra::new(2, [(1, 2), (2, 1)]).unwrap();
        let d = nontrivial_deformation(&alg).unwrap();
        assert_eq!(d.witness, Witness::TwoCycle { s: 1, t: 2 });
        let nonzero: Vec<_> = d
            .table
            .assignment()
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(p, v)| format!("{p}={v}"))
            .collect();
        assert_eq!(
            nonzero,
            vec!["a[1,2;1]=1", "a[1,2;2]=1", "a[2,1;1]=1", "a[2,1;2]=1", "b[1,2]=-1", "b[2,1]=-1"]
        );
        assert!(check(&alg, &d.table).pbw);
    }

    #[test]
    fn vertex_case() {
        let alg = Algebra::new(4, [(1, 2), (2, 3), (1, 4)]).unwrap();
        let d = nontrivial_deformation(&alg).unwrap();
        assert_eq!(d.witness, Witness::Vertex { u: 1 });
        let nonzero: Vec<_> = d
            .table
            .assignment()
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(p, _)| p.to_string())
            .collect();
        assert_eq!(nonzero, vec!["a[1,2;2]", "a[1,4;4]"]);
        assert!(check(&alg, &d.table).pbw);
        assert!(oracle_verdict(&alg, &d.table).pbw);
    }
}
