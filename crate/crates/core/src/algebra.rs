//! Quadratic monomial algebras and their relation graphs.
//!
//! An [`Algebra`] is `k<x_1, ..., x_n> / (R)` where `R` is spanned by degree-two
//! monomials `x_i x_j`. Each relation is an arrow `i -> j` of the relation graph,
//! and the overlap basis collects the length-two paths `i -> j -> k`.
//!
//! Generator indices are 1-based everywhere in the public API.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;

/// A relation `x_i x_j`, equivalently an arrow `i -> j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
}

impl Arrow {
    pub const fn new(from: usize, to: usize) -> Self {
        Arrow { from, to }
    }

    pub fn is_loop(self) -> bool {
        self.from == self.to
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.from, self.to)
    }
}

/// An element `x_i x_j x_k` of the overlap basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl Triple {
    pub const fn new(i: usize, j: usize, k: usize) -> Self {
        Triple { i, j, k }
    }

    pub fn as_array(self) -> [usize; 3] {
        [self.i, self.j, self.k]
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.k)
    }
}

/// A quadratic monomial algebra on `n` generators.
///
/// Immutable after construction. Relations are kept in lexicographic order and
/// mirrored in a dense `n x n` membership table for constant-time lookups.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Algebra {
    n: usize,
    relations: BTreeSet<Arrow>,
    member: Vec<bool>,
}

impl Algebra {
    /// Validates indices and collapses duplicate relations.
    pub fn new<I>(n: usize, relations: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(AlgebraError::NoGenerators);
        }
        let mut set = BTreeSet::new();
        for (i, j) in relations {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(AlgebraError::IndexOutOfRange { i, j, n });
            }
            set.insert(Arrow::new(i, j));
        }
        let mut member = vec![false; n * n];
        for a in &set {
            member[(a.from - 1) * n + (a.to - 1)] = true;
        }
        Ok(Algebra {
            n,
            relations: set,
            member,
        })
    }

    /// Number of generators.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn relations(&self) -> impl ExactSizeIterator<Item = Arrow> + '_ {
        self.relations.iter().copied()
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    /// Whether `x_i x_j` is a relation. Out-of-range indices are never relations.
    pub fn has(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && i <= self.n && j <= self.n && self.member[(i - 1) * self.n + (j - 1)]
    }

    pub fn generators(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    /// `{p : x_p x_u in R}`.
    pub fn in_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.generators().filter(move |&p| self.has(p, u))
    }

    /// `{q : x_u x_q in R}`.
    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.generators().filter(move |&q| self.has(u, q))
    }

    pub fn in_degree(&self, u: usize) -> usize {
        self.in_neighbors(u).count()
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out_neighbors(u).count()
    }

    /// The length-two paths of the relation graph, in lexicographic order.
    pub fn overlap_basis(&self) -> OverlapBasis {
        let mut triples = Vec::new();
        for first in &self.relations {
            for k in self.out_neighbors(first.to) {
                triples.push(Triple::new(first.from, first.to, k));
            }
        }
        // relations are sorted by (from, to) and k ascends, so this is already sorted
        debug_assert!(triples.windows(2).all(|w| w[0] < w[1]));
        OverlapBasis { triples }
    }

    /// Partition of the arrows into weakly connected components.
    ///
    /// Components are ordered by their smallest arrow; arrows inside a component
    /// are sorted. Isolated vertices do not appear.
    pub fn components(&self) -> Vec<Vec<Arrow>> {
        let mut uf = UnionFind::<usize>::new(self.n);
        for a in &self.relations {
            uf.union(a.from - 1, a.to - 1);
        }
        let mut groups: Vec<(usize, Vec<Arrow>)> = Vec::new();
        for a in &self.relations {
            let root = uf.find(a.from - 1);
            match groups.iter_mut().find(|(r, _)| *r == root) {
                Some((_, arrows)) => arrows.push(*a),
                None => groups.push((root, vec![*a])),
            }
        }
        groups.into_iter().map(|(_, arrows)| arrows).collect()
    }

    /// Index (into [`Algebra::components`]) of the component holding vertex `v`,
    /// or `None` for an isolated vertex.
    pub fn component_of_vertex(&self, v: usize) -> Option<usize> {
        self.components()
            .iter()
            .position(|c| c.iter().any(|a| a.from == v || a.to == v))
    }

    /// Graphviz rendering of the relation graph.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph relations {\n");
        for v in self.generators() {
            let _ = writeln!(out, "  {v} [label=\"{v}\"];");
        }
        for a in &self.relations {
            let _ = writeln!(out, "  {} -> {};", a.from, a.to);
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k<")?;
        for v in self.generators() {
            if v > 1 {
                write!(f, ",")?;
            }
            write!(f, "x{v}")?;
        }
        write!(f, ">/(")?;
        for (idx, a) in self.relations.iter().enumerate() {
            if idx > 0 {
                write!(f, ", ")?;
            }
            write!(f, "x{}*x{}", a.from, a.to)?;
        }
        write!(f, ")")
    }
}

/// The basis `Q` of `RV ∩ VR`: every `(i,j,k)` with `(i,j)` and `(j,k)` relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapBasis {
    triples: Vec<Triple>,
}

impl OverlapBasis {
    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, t: Triple) -> bool {
        self.triples.binary_search(&t).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Triple> + '_ {
        self.triples.iter().copied()
    }
}

/// Every algebra on `n` generators, indexed by the bitmask of its relation set
/// (bit `(i-1)*n + (j-1)` set iff `x_i x_j` is a relation).
pub fn algebra_from_mask(n: usize, mask: u64) -> Algebra {
    let rels = (0..n * n)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| (b / n + 1, b % n + 1));
    Algebra::new(n, rels).expect("mask indices are in range")
}
