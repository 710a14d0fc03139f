//! Finitely generated rational cones and cone duality.
//!
//! Every cone carries both descriptions. The inequality description is derived from the
//! generators by Fourier–Motzkin elimination of the multipliers in `x = Σ λ_j g_j, λ ≥ 0`;
//! both lists are then reduced to a canonical form:
//!
//! * the lineality space (resp. the implicit equations) is stored as `±b` for each vector
//!   `b` of a primitive RREF basis;
//! * the remaining extreme rays are projected onto the orthogonal complement of that
//!   space and scaled to primitive integer vectors;
//! * everything is sorted lexicographically.
//!
//! Two cones are therefore equal iff their canonical generator lists are equal.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::linalg::{nullspace, rank, row_space_basis, Projector};
use super::rational::Rational;
use super::vector::RationalVector;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalCone {
    ambient_dim: usize,
    generators: Vec<RationalVector>,
    facets: Vec<RationalVector>,
}

impl RationalCone {
    pub fn from_generators(generators: &[RationalVector]) -> Result<Self, Error> {
        let Some(first) = generators.first() else {
            return Err(Error::TrivialCone);
        };
        let dim = first.dim();
        if dim == 0 {
            return Err(Error::TrivialCone);
        }
        check_dims(generators, dim)?;
        let hrep = fourier_motzkin_facets(generators, dim);
        Ok(Self {
            ambient_dim: dim,
            generators: canonical_rays(generators, &hrep, dim),
            facets: canonical_rays(&hrep, generators, dim),
        })
    }

    /// Cone `{x : ⟨f, x⟩ ≥ 0 for every f in normals}`.
    pub fn from_inequalities(normals: &[RationalVector], ambient_dim: usize) -> Result<Self, Error> {
        check_dims(normals, ambient_dim)?;
        if ambient_dim == 0 {
            return Err(Error::TrivialCone);
        }
        if normals.is_empty() {
            return Ok(Self::whole_space(ambient_dim));
        }
        Ok(Self::from_generators(normals)?.dual())
    }

    pub fn whole_space(ambient_dim: usize) -> Self {
        let mut generators = Vec::new();
        for i in 0..ambient_dim {
            let e = RationalVector::unit(ambient_dim, i);
            generators.push(-&e);
            generators.push(e);
        }
        generators.sort();
        Self {
            ambient_dim,
            generators,
            facets: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Canonical generators (primitive, sorted; lineality directions appear with both signs).
    pub fn generators(&self) -> &[RationalVector] {
        &self.generators
    }

    /// Canonical inner facet normals (implicit equations appear with both signs).
    pub fn facets(&self) -> &[RationalVector] {
        &self.facets
    }

    /// The dual cone `{y : ⟨y, g⟩ ≥ 0 for all g in self}`.
    pub fn dual(&self) -> Self {
        Self {
            ambient_dim: self.ambient_dim,
            generators: self.facets.clone(),
            facets: self.generators.clone(),
        }
    }

    pub fn contains(&self, v: &RationalVector, strict: bool) -> Result<bool, Error> {
        if v.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.dim(),
            });
        }
        Ok(self.facets.iter().all(|f| {
            let p = f.dot(v);
            if strict {
                p.is_positive()
            } else {
                !p.is_negative()
            }
        }))
    }

    /// Extreme rays: generators whose negation is not a generator.
    pub fn rays(&self) -> Vec<&RationalVector> {
        split_pairs(&self.generators).1
    }

    /// Generators of the lineality space (both signs).
    pub fn lineality(&self) -> Vec<&RationalVector> {
        split_pairs(&self.generators).0
    }

    /// Facet normals proper, i.e. excluding the implicit equations.
    pub fn proper_facets(&self) -> Vec<&RationalVector> {
        split_pairs(&self.facets).1
    }

    pub fn implicit_equations(&self) -> Vec<&RationalVector> {
        split_pairs(&self.facets).0
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        rank(&self.generators, self.ambient_dim)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.implicit_equations().is_empty()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality().is_empty()
    }

    /// `self ∩ other`.
    pub fn intersection(&self, other: &Self) -> Result<Self, Error> {
        if other.ambient_dim != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        let normals: Vec<RationalVector> = self.facets.iter().chain(&other.facets).cloned().collect();
        Self::from_inequalities(&normals, self.ambient_dim)
    }

    /// Whether the topological interiors of two cones meet.
    pub fn interiors_meet(&self, other: &Self) -> Result<bool, Error> {
        Ok(self.intersection(other)?.is_full_dimensional()
            && self.is_full_dimensional()
            && other.is_full_dimensional())
    }

    pub fn contains_cone(&self, other: &Self) -> Result<bool, Error> {
        for g in &other.generators {
            if !self.contains(g, false)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Dual of the cone generated by `generators`.
pub fn dual_cone(generators: &[RationalVector]) -> Result<RationalCone, Error> {
    Ok(RationalCone::from_generators(generators)?.dual())
}

fn check_dims(vs: &[RationalVector], dim: usize) -> Result<(), Error> {
    match vs.iter().find(|v| v.dim() != dim) {
        Some(v) => Err(Error::DimensionMismatch {
            expected: dim,
            found: v.dim(),
        }),
        None => Ok(()),
    }
}

fn split_pairs(vs: &[RationalVector]) -> (Vec<&RationalVector>, Vec<&RationalVector>) {
    let set: BTreeSet<&RationalVector> = vs.iter().collect();
    vs.iter().partition(|v| set.contains(&-*v))
}

#[derive(Clone)]
struct Row {
    x: Vec<Rational>,
    lambda: Vec<Rational>,
    history: BTreeSet<usize>,
}

impl Row {
    fn combine(&self, a: &Rational, other: &Row, b: &Rational) -> Row {
        Row {
            x: self.x.iter().zip(&other.x).map(|(p, q)| p * a + q * b).collect(),
            lambda: self
                .lambda
                .iter()
                .zip(&other.lambda)
                .map(|(p, q)| p * a + q * b)
                .collect(),
            history: self.history.union(&other.history).copied().collect(),
        }
    }

    fn normalized(self) -> Option<Row> {
        let all: Vec<Rational> = self.x.iter().chain(&self.lambda).cloned().collect();
        let v = RationalVector::new(all);
        if v.is_zero() {
            return None;
        }
        let p = v.primitive().into_coords();
        let (x, lambda) = p.split_at(self.x.len());
        Some(Row {
            x: x.to_vec(),
            lambda: lambda.to_vec(),
            history: self.history,
        })
    }

    fn key(&self) -> (Vec<Rational>, Vec<Rational>) {
        (self.x.clone(), self.lambda.clone())
    }
}

/// Inequality description of `cone(generators)`: returns normals `a` with `⟨a, x⟩ ≥ 0` on
/// the cone; implicit equations are included with both signs. May contain redundant rows.
pub(crate) fn fourier_motzkin_facets(generators: &[RationalVector], dim: usize) -> Vec<RationalVector> {
    let m = generators.len();
    let mut equalities: Vec<Row> = (0..dim)
        .map(|i| Row {
            x: (0..dim)
                .map(|k| {
                    if k == i {
                        Rational::from_integer(1.into())
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
            lambda: generators.iter().map(|g| -g[i].clone()).collect(),
            history: BTreeSet::new(),
        })
        .collect();
    let mut inequalities: Vec<Row> = (0..m)
        .map(|j| Row {
            x: vec![Rational::zero(); dim],
            lambda: (0..m)
                .map(|k| {
                    if k == j {
                        Rational::from_integer(1.into())
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
            history: BTreeSet::from([j]),
        })
        .collect();

    // Substitute away every multiplier that an equality determines.
    let mut free = Vec::new();
    for j in 0..m {
        let Some(p) = equalities.iter().position(|r| !r.lambda[j].is_zero()) else {
            free.push(j);
            continue;
        };
        let pivot = equalities.swap_remove(p);
        let pc = pivot.lambda[j].clone();
        let eliminate = |row: &mut Row| {
            let c = row.lambda[j].clone();
            if !c.is_zero() {
                // row - (c / pc) * pivot
                *row = row.combine(&Rational::from_integer(1.into()), &pivot, &(-(c / &pc)));
                row.lambda[j] = Rational::zero();
            }
        };
        equalities.iter_mut().for_each(eliminate);
        inequalities.iter_mut().for_each(eliminate);
    }

    // Fourier–Motzkin on the remaining multipliers, with Chernikov's redundancy rule.
    for (step, &j) in free.iter().enumerate() {
        let (mut pos, mut neg, mut zero) = (Vec::new(), Vec::new(), Vec::new());
        for row in inequalities.drain(..) {
            let c = &row.lambda[j];
            if c.is_positive() {
                pos.push(row);
            } else if c.is_negative() {
                neg.push(row);
            } else {
                zero.push(row);
            }
        }
        let bound = step + 2;
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        let mut push = |row: Row, next: &mut Vec<Row>| {
            if let Some(row) = row.normalized() {
                if seen.insert(row.key()) {
                    next.push(row);
                }
            }
        };
        for row in zero {
            push(row, &mut next);
        }
        for p in &pos {
            for n in &neg {
                if p.history.union(&n.history).count() > bound {
                    continue;
                }
                let a = -n.lambda[j].clone();
                let b = p.lambda[j].clone();
                let mut row = p.combine(&a, n, &b);
                row.lambda[j] = Rational::zero();
                push(row, &mut next);
            }
        }
        inequalities = next;
    }

    let mut out = BTreeSet::new();
    for row in inequalities {
        let a = RationalVector::new(row.x);
        if !a.is_zero() {
            out.insert(a.primitive());
        }
    }
    for row in equalities {
        let a = RationalVector::new(row.x);
        if !a.is_zero() {
            let a = a.primitive();
            out.insert(-&a);
            out.insert(a);
        }
    }
    out.into_iter().collect()
}

/// Canonical generators of `cone(gens)` given any inequality description `hrep` of it.
pub(crate) fn canonical_rays(
    gens: &[RationalVector],
    hrep: &[RationalVector],
    dim: usize,
) -> Vec<RationalVector> {
    let lineality = if hrep.is_empty() {
        (0..dim).map(|i| RationalVector::unit(dim, i)).collect()
    } else {
        row_space_basis(&nullspace(hrep, dim), dim)
    };
    let target_rank = dim - lineality.len();
    let projector = Projector::new(lineality.clone());
    let mut out = BTreeSet::new();
    for b in &lineality {
        let b = b.primitive();
        out.insert(-&b);
        out.insert(b);
    }
    if target_rank == 0 {
        return out.into_iter().collect();
    }
    for g in gens {
        let r = projector.reject(g);
        if r.is_zero() {
            continue;
        }
        let tight: Vec<RationalVector> = hrep.iter().filter(|a| a.dot(g).is_zero()).cloned().collect();
        if rank(&tight, dim) == target_rank - 1 {
            out.insert(r.primitive());
        }
    }
    out.into_iter().collect()
}
