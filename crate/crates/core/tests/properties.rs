use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use pbw_core::algebra::algebra_from_mask;
use pbw_core::constraints::evaluate;
use pbw_core::io::{algebra_json, params_json, parse_algebra, parse_params};
use pbw_core::oracle::Strategy as Redex;
use pbw_core::parameters::parameter_names;
use pbw_core::rational::ratio;
use pbw_core::sampling::{random_table, table_satisfying_i};
use pbw_core::{
    reduce_by_i, Algebra, ConstraintSystem, NCPoly, ParamName, ParameterTable, Polynomial, RewriteSystem, Word,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const VARS: [ParamName; 4] = [
    ParamName::A { i: 1, j: 2, m: 1 },
    ParamName::A { i: 1, j: 2, m: 2 },
    ParamName::A { i: 2, j: 1, m: 1 },
    ParamName::B { i: 1, j: 2 },
];

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    let monomial = (prop::collection::vec(0usize..VARS.len(), 0..3), small_rational());
    prop::collection::vec(monomial, 0..5).prop_map(|terms| {
        terms.into_iter().fold(Polynomial::zero(), |acc, (vars, c)| {
            let m = vars.into_iter().fold(Polynomial::one(), |p, v| &p * &Polynomial::var(VARS[v]));
            acc + m.scale(&c)
        })
    })
}

fn point() -> impl Strategy<Value = BTreeMap<ParamName, BigRational>> {
    prop::collection::vec(small_rational(), VARS.len()).prop_map(|vs| VARS.iter().copied().zip(vs).collect())
}

fn algebra(max_n: usize) -> impl Strategy<Value = Algebra> {
    (1..=max_n).prop_flat_map(|n| (0..1u64 << (n * n)).prop_map(move |m| algebra_from_mask(n, m)))
}

fn ncpoly(n: usize) -> impl Strategy<Value = NCPoly> {
    let term = (prop::collection::vec(1..=n, 0..5), small_rational());
    prop::collection::vec(term, 0..5).prop_map(|terms| {
        let mut p = NCPoly::zero();
        for (w, c) in terms {
            p.add_term(Word(w), c);
        }
        p
    })
}

fn rewrite_case() -> impl Strategy<Value = (Algebra, RewriteSystem, NCPoly, NCPoly, BigRational)> {
    (algebra(3), any::<u64>()).prop_flat_map(|(alg, seed)| {
        let table = random_table(&alg, &mut ChaCha8Rng::seed_from_u64(seed), 0.6);
        let rs = RewriteSystem::new(&alg, &table);
        let n = alg.n();
        (Just(alg), Just(rs), ncpoly(n), ncpoly(n), small_rational())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(p in polynomial(), q in polynomial(), r in polynomial()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &Polynomial::one(), p.clone());
        prop_assert_eq!(&p + &Polynomial::zero(), p.clone());
    }

    #[test]
    fn eval_is_a_homomorphism(p in polynomial(), q in polynomial(), x in point()) {
        let ev = |f: &Polynomial| f.eval(&x).unwrap();
        prop_assert_eq!(ev(&(&p + &q)), ev(&p) + ev(&q));
        prop_assert_eq!(ev(&(&p * &q)), ev(&p) * ev(&q));
    }

    #[test]
    fn normalization(p in polynomial(), c in small_rational()) {
        let n = p.normalized();
        prop_assert_eq!(n.normalized(), n.clone());
        if !c.is_zero() {
            prop_assert_eq!(p.scale(&c).normalized(), n.clone());
        }
        if let Some((_, lead)) = n.leading() {
            prop_assert!(*lead > BigRational::zero());
        }
        prop_assert_eq!(n.is_zero(), p.is_zero());
    }

    #[test]
    fn display_is_stable(p in polynomial(), q in polynomial()) {
        prop_assert_eq!(p == q, p.to_string() == q.to_string());
    }

    #[test]
    fn normal_form_is_linear_and_idempotent((_alg, rs, p, q, c) in rewrite_case()) {
        let nf = |f: &NCPoly| rs.normal_form(f);
        prop_assert_eq!(nf(&p.add(&q)), nf(&p).add(&nf(&q)));
        prop_assert_eq!(nf(&p.scale(&c)), nf(&p).scale(&c));
        prop_assert_eq!(nf(&nf(&p)), nf(&p));
    }

    #[test]
    fn overlap_normal_forms_ignore_strategy((alg, rs, _p, _q, _c) in rewrite_case()) {
        for t in alg.overlap_basis().iter() {
            let left = rs.rule(t.i, t.j).unwrap().sandwich(&[], &[t.k]);
            let right = rs.rule(t.j, t.k).unwrap().sandwich(&[t.i], &[]);
            for side in [left, right] {
                prop_assert_eq!(
                    rs.normal_form_with(&side, Redex::Leftmost),
                    rs.normal_form_with(&side, Redex::Rightmost)
                );
            }
        }
    }

    #[test]
    fn reduction_preserves_solutions(alg in algebra(3), seed in any::<u64>()) {
        let sys = ConstraintSystem::generate(&alg, &ParameterTable::symbolic(&alg));
        let red = reduce_by_i(&sys);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tables = [
            random_table(&alg, &mut rng, 0.5),
            table_satisfying_i(&alg, &red, &mut rng, 0.8, false),
            table_satisfying_i(&alg, &red, &mut rng, 0.8, true),
        ];
        for table in &tables {
            let full = sys.check(table).pbw;
            let reduced = red.respects_rules(table)
                && red.residual.iter().all(|c| evaluate(&c.polynomial, table).is_zero());
            prop_assert_eq!(full, reduced);
        }
    }

    #[test]
    fn io_round_trip(alg in algebra(4), seed in any::<u64>()) {
        let text = algebra_json(&alg).to_string();
        prop_assert_eq!(parse_algebra(&text).unwrap(), alg.clone());
        let table = random_table(&alg, &mut ChaCha8Rng::seed_from_u64(seed), 0.5);
        prop_assert_eq!(parse_params(&alg, &params_json(&table).to_string()).unwrap(), table);
    }

    #[test]
    fn lookup_outside_scope_is_zero(alg in algebra(3), seed in any::<u64>()) {
        let table = random_table(&alg, &mut ChaCha8Rng::seed_from_u64(seed), 1.0);
        let n = alg.n();
        for i in 1..=n {
            for j in 1..=n {
                if !alg.has(i, j) {
                    prop_assert!(table.lookup(ParamName::b(i, j)).is_zero());
                    for m in 1..=n {
                        prop_assert!(table.lookup(ParamName::a(i, j, m)).is_zero());
                    }
                }
            }
        }
        prop_assert_eq!(parameter_names(&alg).len(), table.len());
    }
}
