//! Statistics for every relation set on a small number of generators.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{algebra_from_mask, Algebra};
use crate::constraints::{reduce_by_i, ConstraintSystem, Origin};
use crate::existence::choose_witness;
use crate::parameters::ParameterTable;

pub const MAX_SURVEY_N: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    /// Bit `(i-1)*n + (j-1)` set iff `(i,j)` is a relation.
    pub mask: u64,
    pub relations: Vec<[usize; 2]>,
    pub r_count: usize,
    pub q_count: usize,
    pub ia: usize,
    pub ib: usize,
    pub ic: usize,
    pub ii: usize,
    pub iii: usize,
    pub free_a: usize,
    pub residual: usize,
    pub existence_case: Option<u8>,
}

impl SurveyRow {
    pub const CSV_HEADER: &'static str = "mask,relations,r,q,ia,ib,ic,ii,iii,free_a,residual,existence_case";

    pub fn csv(&self) -> String {
        let rels: Vec<String> = self.relations.iter().map(|[i, j]| format!("{i}{j}")).collect();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.mask,
            rels.join(" "),
            self.r_count,
            self.q_count,
            self.ia,
            self.ib,
            self.ic,
            self.ii,
            self.iii,
            self.free_a,
            self.residual,
            self.existence_case.map(|c| c.to_string()).unwrap_or_default()
        )
    }
}

pub fn survey_row(alg: &Algebra, mask: u64) -> SurveyRow {
    let sys = ConstraintSystem::generate(alg, &ParameterTable::symbolic(alg));
    let red = reduce_by_i(&sys);
    SurveyRow {
        mask,
        relations: alg.relations().map(|a| [a.from, a.to]).collect(),
        r_count: alg.relation_count(),
        q_count: alg.overlap_basis().len(),
        ia: sys.count(Origin::Ia),
        ib: sys.count(Origin::Ib),
        ic: sys.count(Origin::Ic),
        ii: sys.count(Origin::II),
        iii: sys.count(Origin::III),
        free_a: red.free_a.len(),
        residual: red.residual.len(),
        existence_case: choose_witness(alg).ok().map(|w| w.case()),
    }
}

/// One row per relation set, in mask order. `None` when `n` is outside `1..=4`.
pub fn survey(n: usize) -> Option<Vec<SurveyRow>> {
    if !(1..=MAX_SURVEY_N).contains(&n) {
        return None;
    }
    let rows = (0..1u64 << (n * n))
        .into_par_iter()
        .map(|mask| survey_row(&algebra_from_mask(n, mask), mask))
        .collect();
    Some(rows)
}
