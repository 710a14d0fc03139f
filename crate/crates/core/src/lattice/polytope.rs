//! Vertex-described polytopes, hyperplane slices and faces with constant pairing.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use petgraph::graph::UnGraph;
use serde::Serialize;

use super::cone::RationalCone;
use super::linalg::{rank, Projector};
use super::rational::{serialize_rational, Rational};
use super::vector::RationalVector;
use crate::Error;

/// Facet structure of the convex hull of finitely many rational points.
///
/// Built from the homogenized cone over `{(v, 1)}`: its proper facets are the facets of the
/// polytope and its implicit equations cut out the affine hull.
#[derive(Clone, Debug)]
pub(crate) struct Hull {
    vertices: Vec<RationalVector>,
    /// `(a, b)` per facet, meaning `⟨a, x⟩ + b ≥ 0`.
    facets: Vec<RationalVector>,
    /// Vertex indices on each facet.
    incidence: Vec<BTreeSet<usize>>,
    dim: usize,
}

impl Hull {
    fn new(points: &[RationalVector]) -> Result<Self, Error> {
        let Some(first) = points.first() else {
            return Err(Error::EmptyPolytope);
        };
        let ambient = first.dim();
        if let Some(p) = points.iter().find(|p| p.dim() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: p.dim(),
            });
        }
        let lifted: Vec<RationalVector> = points.iter().map(|p| p.extended(Rational::one())).collect();
        let cone = RationalCone::from_generators(&lifted)?;
        let mut vertices: Vec<RationalVector> = cone
            .rays()
            .into_iter()
            .map(|r| {
                let t = r[ambient].clone();
                RationalVector::new(r.coords()[..ambient].iter().map(|c| c / &t).collect())
            })
            .collect();
        vertices.sort();
        let facets: Vec<RationalVector> = if cone.dim() <= 1 {
            Vec::new()
        } else {
            cone.proper_facets().into_iter().cloned().collect()
        };
        let incidence = facets
            .iter()
            .map(|f| {
                (0..vertices.len())
                    .filter(|&i| f.dot(&vertices[i].extended(Rational::one())).is_zero())
                    .collect()
            })
            .collect();
        let dim = cone.dim() - 1;
        Ok(Self {
            vertices,
            facets,
            incidence,
            dim,
        })
    }

    /// Vertex set of the smallest face containing `subset`.
    fn face_closure(&self, subset: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut face: BTreeSet<usize> = (0..self.vertices.len()).collect();
        for inc in &self.incidence {
            if subset.is_subset(inc) {
                face = face.intersection(inc).copied().collect();
            }
        }
        face
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertices.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let pair = BTreeSet::from([i, j]);
                if self.face_closure(&pair) == pair {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn affine_dim_of(&self, subset: &BTreeSet<usize>) -> usize {
        affine_dim(
            &subset
                .iter()
                .map(|&i| self.vertices[i].clone())
                .collect::<Vec<_>>(),
        )
    }

    /// Facet normals projected to the direction space of the affine hull, primitive, sorted.
    fn normal_fan(&self) -> Vec<RationalVector> {
        let ambient = self.vertices[0].dim();
        let directions: Vec<RationalVector> =
            self.vertices[1..].iter().map(|v| v - &self.vertices[0]).collect();
        let basis = super::linalg::row_space_basis(&directions, ambient);
        let projector = Projector::new(basis);
        let mut out: Vec<RationalVector> = self
            .facets
            .iter()
            .map(|f| {
                let a = RationalVector::new(f.coords()[..ambient].to_vec());
                projector.project(&a).primitive()
            })
            .collect();
        out.sort();
        out
    }

    /// Vertex/facet incidence graph, used for combinatorial isomorphism tests.
    fn incidence_graph(&self) -> UnGraph<bool, ()> {
        let mut g = UnGraph::new_undirected();
        let vs: Vec<_> = (0..self.vertices.len()).map(|_| g.add_node(true)).collect();
        for inc in &self.incidence {
            let f = g.add_node(false);
            for &i in inc {
                g.add_edge(vs[i], f, ());
            }
        }
        g
    }
}

fn affine_dim(points: &[RationalVector]) -> usize {
    match points.split_first() {
        None => 0,
        Some((first, rest)) => {
            let diffs: Vec<RationalVector> = rest.iter().map(|p| p - first).collect();
            rank(&diffs, first.dim())
        }
    }
}

/// A polytope with integer vertices: the moment polytope of a polarized toric variety.
#[derive(Clone, Debug)]
pub struct LatticePolytope {
    hull: Hull,
}

impl LatticePolytope {
    /// Convex hull of integral points; redundant points are discarded.
    pub fn new(points: &[RationalVector]) -> Result<Self, Error> {
        if let Some(p) = points.iter().find(|p| !p.is_integral()) {
            return Err(Error::NonIntegral(format!("polytope vertex {p}")));
        }
        Ok(Self {
            hull: Hull::new(points)?,
        })
    }

    pub fn from_int_vertices(points: &[Vec<i64>]) -> Result<Self, Error> {
        let pts: Vec<RationalVector> = points.iter().map(|p| RationalVector::from_ints(p)).collect();
        Self::new(&pts)
    }

    /// `[0,1]^d`.
    pub fn hypercube(d: usize) -> Self {
        let pts: Vec<RationalVector> = (0..1u64 << d)
            .map(|mask| {
                RationalVector::from_ints(&(0..d).map(|i| ((mask >> i) & 1) as i64).collect::<Vec<_>>())
            })
            .collect();
        Self::new(&pts).expect("hypercube is a valid polytope")
    }

    /// Sorted vertices.
    pub fn vertices(&self) -> &[RationalVector] {
        &self.hull.vertices
    }

    pub fn ambient_dim(&self) -> usize {
        self.hull.vertices[0].dim()
    }

    pub fn dim(&self) -> usize {
        self.hull.dim
    }

    /// Facet inequalities `(a, b)` meaning `⟨a, x⟩ + b ≥ 0`, as vectors of length `ambient + 1`.
    pub fn facet_inequalities(&self) -> &[RationalVector] {
        &self.hull.facets
    }

    /// Index pairs of vertices joined by an edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.hull.edges()
    }

    /// Vertex indices of the smallest face containing the given vertices.
    pub fn face_closure(&self, subset: &BTreeSet<usize>) -> BTreeSet<usize> {
        self.hull.face_closure(subset)
    }

    pub fn vertex_index(&self, v: &RationalVector) -> Option<usize> {
        self.hull.vertices.binary_search(v).ok()
    }

    pub(crate) fn sub_face_dim(&self, subset: &BTreeSet<usize>) -> usize {
        self.hull.affine_dim_of(subset)
    }

    fn sub_polytope(&self, subset: &BTreeSet<usize>) -> LatticePolytope {
        let pts: Vec<RationalVector> = subset.iter().map(|&i| self.hull.vertices[i].clone()).collect();
        LatticePolytope::new(&pts).expect("faces of lattice polytopes are lattice polytopes")
    }

    fn pairings(&self, lambda: &RationalVector) -> Result<Vec<Rational>, Error> {
        if lambda.dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: lambda.dim(),
            });
        }
        Ok(self.hull.vertices.iter().map(|v| lambda.dot(v)).collect())
    }

    /// Vertices of `self ∩ {⟨λ, x⟩ = τ}`, from the vertices on the hyperplane and the
    /// crossing points of edges.
    pub fn slice(&self, lambda: &RationalVector, tau: &Rational) -> Result<SlicePolytope, Error> {
        let values = self.pairings(lambda)?;
        let min = values.iter().min().expect("nonempty");
        let max = values.iter().max().expect("nonempty");
        if tau < min || tau > max {
            return Err(Error::TauOutOfRange);
        }
        let mut points = BTreeSet::new();
        for (i, v) in self.hull.vertices.iter().enumerate() {
            if &values[i] == tau {
                points.insert(v.clone());
            }
        }
        for (i, j) in self.edges() {
            let (a, b) = (&values[i], &values[j]);
            if (a < tau && tau < b) || (b < tau && tau < a) {
                let t = (tau - a) / (b - a);
                let p = &self.hull.vertices[i] + &(&self.hull.vertices[j] - &self.hull.vertices[i]).scale(&t);
                points.insert(p);
            }
        }
        let points: Vec<RationalVector> = points.into_iter().collect();
        Ok(SlicePolytope {
            hull: Hull::new(&points)?,
            level: tau.clone(),
        })
    }

    /// The maximal faces on which `⟨λ, ·⟩` is constant, each with its level shifted so that
    /// the minimum is 0. Sorted by level, then by vertices.
    ///
    /// For each vertex the face spanned by its λ-constant edges is taken; at a simple vertex
    /// this is the unique maximal constant face through it. If that face is not constant, or
    /// the faces found do not partition the vertices, the fixed geometry is not smooth and
    /// an error is returned.
    pub fn constant_faces(&self, lambda: &RationalVector) -> Result<Vec<(LatticePolytope, Rational)>, Error> {
        if lambda.is_zero() {
            return Err(Error::TrivialAction);
        }
        Ok(self
            .constant_face_sets(lambda)?
            .into_iter()
            .map(|(set, level)| (self.sub_polytope(&set), level))
            .collect())
    }

    pub(crate) fn constant_face_sets(
        &self,
        lambda: &RationalVector,
    ) -> Result<Vec<(BTreeSet<usize>, Rational)>, Error> {
        if lambda.is_zero() {
            return Err(Error::TrivialAction);
        }
        let values = self.pairings(lambda)?;
        let min = values.iter().min().expect("nonempty").clone();
        let n = values.len();
        let mut neighbors: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (i, j) in self.edges() {
            if values[i] == values[j] {
                neighbors[i].insert(j);
                neighbors[j].insert(i);
            }
        }
        let mut faces: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        for v in 0..n {
            let mut span = neighbors[v].clone();
            span.insert(v);
            let face = self.hull.face_closure(&span);
            if face.iter().any(|&u| values[u] != values[v]) {
                return Err(Error::NonSmoothFixedGeometry(format!(
                    "constant edges at vertex {} span a non-constant face",
                    self.hull.vertices[v]
                )));
            }
            faces.insert(face);
        }
        let mut covered = vec![0usize; n];
        for f in &faces {
            for &i in f {
                covered[i] += 1;
            }
        }
        if covered.iter().any(|&c| c != 1) {
            return Err(Error::NonSmoothFixedGeometry(
                "maximal constant faces overlap".into(),
            ));
        }
        let mut out: Vec<(BTreeSet<usize>, Rational)> = faces
            .into_iter()
            .map(|f| {
                let level = &values[*f.iter().next().expect("nonempty face")] - &min;
                (f, level)
            })
            .collect();
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        Ok(out)
    }
}

impl Serialize for LatticePolytope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LatticePolytope", 2)?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("vertices", self.vertices())?;
        st.end()
    }
}

/// A hyperplane section `Δ ∩ {⟨λ, x⟩ = level}`; vertices may be rational.
#[derive(Clone, Debug)]
pub struct SlicePolytope {
    hull: Hull,
    level: Rational,
}

impl SlicePolytope {
    pub fn vertices(&self) -> &[RationalVector] {
        &self.hull.vertices
    }

    pub fn level(&self) -> &Rational {
        &self.level
    }

    pub fn vertex_count(&self) -> usize {
        self.hull.vertices.len()
    }

    pub fn dim(&self) -> usize {
        self.hull.dim
    }

    /// Number of rays of the normal fan, i.e. facets of the slice inside its affine hull.
    pub fn ray_count(&self) -> usize {
        self.hull.facets.len()
    }

    /// Primitive facet normals inside the direction space of the slice.
    pub fn normal_fan(&self) -> Vec<RationalVector> {
        self.hull.normal_fan()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.hull.edges()
    }

    /// Whether the two slices have isomorphic face lattices.
    pub fn combinatorially_isomorphic(&self, other: &Self) -> bool {
        self.dim() == other.dim()
            && self.vertex_count() == other.vertex_count()
            && self.ray_count() == other.ray_count()
            && petgraph::algo::is_isomorphic_matching(
                &self.hull.incidence_graph(),
                &other.hull.incidence_graph(),
                |a, b| a == b,
                |_, _| true,
            )
    }

    /// Number of nonempty faces in each dimension `0..=dim`.
    pub fn face_count_by_dim(&self) -> Vec<usize> {
        let mut faces: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let all: BTreeSet<usize> = (0..self.vertex_count()).collect();
        let mut frontier = vec![all];
        while let Some(f) = frontier.pop() {
            if !faces.insert(f.clone()) {
                continue;
            }
            for inc in &self.hull.incidence {
                let g: BTreeSet<usize> = f.intersection(inc).copied().collect();
                if !g.is_empty() && g != f {
                    frontier.push(g);
                }
            }
        }
        let mut counts = vec![0; self.dim() + 1];
        for f in &faces {
            counts[self.hull.affine_dim_of(f)] += 1;
        }
        counts
    }
}

impl Serialize for SlicePolytope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            dim: usize,
            #[serde(serialize_with = "serialize_rational")]
            level: &'a Rational,
            vertices: &'a [RationalVector],
        }
        Repr {
            dim: self.dim(),
            level: &self.level,
            vertices: self.vertices(),
        }
        .serialize(s)
    }
}

/// The integer `k` with `b - a = k·e`, `e` primitive integral.
pub fn lattice_length(a: &RationalVector, b: &RationalVector) -> Result<u64, Error> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let diff = (b - a)
        .to_bigints()
        .ok_or_else(|| Error::NonIntegral(format!("lattice length of {a} and {b}")))?;
    let g = diff.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return Err(Error::Degenerate("lattice length of coincident points".into()));
    }
    u64::try_from(g.abs()).map_err(|_| Error::Degenerate("lattice length overflow".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rational::{int, rat};

    fn v(c: &[i64]) -> RationalVector {
        RationalVector::from_ints(c)
    }

    #[test]
    fn redundant_points_are_dropped() {
        let p =
            LatticePolytope::from_int_vertices(&[vec![0, 0], vec![2, 0], vec![0, 2], vec![1, 0], vec![1, 1]])
                .unwrap();
        assert_eq!(p.vertices(), &[v(&[0, 0]), v(&[0, 2]), v(&[2, 0])]);
        assert_eq!(p.edges().len(), 3);
    }

    #[test]
    fn non_integral_vertices_rejected() {
        let pts = vec![RationalVector::new(vec![rat(1, 2), int(0)])];
        assert!(matches!(LatticePolytope::new(&pts), Err(Error::NonIntegral(_))));
    }

    #[test]
    fn cube_slices() {
        let cube = LatticePolytope::hypercube(3);
        let l = v(&[1, 1, 1]);
        assert_eq!(cube.edges().len(), 12);
        assert_eq!(cube.slice(&l, &rat(1, 2)).unwrap().vertex_count(), 3);
        let hex = cube.slice(&l, &rat(3, 2)).unwrap();
        assert_eq!(hex.vertex_count(), 6);
        assert_eq!(hex.ray_count(), 6);
        assert_eq!(hex.dim(), 2);
        let pt = cube.slice(&l, &int(0)).unwrap();
        assert_eq!(pt.vertices(), &[v(&[0, 0, 0])]);
        assert_eq!(pt.ray_count(), 0);
        assert!(matches!(cube.slice(&l, &int(4)), Err(Error::TauOutOfRange)));
    }

    #[test]
    fn cube_constant_faces() {
        let cube = LatticePolytope::hypercube(3);
        let faces = cube.constant_faces(&v(&[1, 1, 1])).unwrap();
        assert_eq!(faces.len(), 8);
        assert!(faces.iter().all(|(f, _)| f.dim() == 0));
        let levels: Vec<Rational> = faces.iter().map(|(_, l)| l.clone()).collect();
        let count = |k: i64| levels.iter().filter(|l| **l == int(k)).count();
        assert_eq!((count(0), count(1), count(2), count(3)), (1, 3, 3, 1));
        assert!(matches!(
            cube.constant_faces(&v(&[0, 0, 0])),
            Err(Error::TrivialAction)
        ));
    }

    #[test]
    fn square_constant_faces() {
        let sq = LatticePolytope::hypercube(2);
        let faces = sq.constant_faces(&v(&[1, 0])).unwrap();
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|(f, _)| f.dim() == 1));
        assert_eq!(faces[0].1, int(0));
        assert_eq!(faces[1].1, int(1));
    }

    #[test]
    fn lattice_lengths() {
        assert_eq!(lattice_length(&v(&[0, 0, 0]), &v(&[3, 0, 0])).unwrap(), 3);
        assert_eq!(lattice_length(&v(&[0, 0]), &v(&[1, 1])).unwrap(), 1);
        assert_eq!(lattice_length(&v(&[-1, 1, 1]), &v(&[1, -1, 1])).unwrap(), 2);
        assert!(lattice_length(&v(&[0, 0]), &RationalVector::new(vec![rat(1, 2), int(0)])).is_err());
        assert!(lattice_length(&v(&[1, 1]), &v(&[1, 1])).is_err());
    }

    #[test]
    fn triangle_and_hexagon_face_counts() {
        let cube = LatticePolytope::hypercube(3);
        let l = v(&[1, 1, 1]);
        let tri = cube.slice(&l, &rat(1, 2)).unwrap();
        assert_eq!(tri.face_count_by_dim(), vec![3, 3, 1]);
        let tri2 = cube.slice(&l, &rat(5, 2)).unwrap();
        assert!(tri.combinatorially_isomorphic(&tri2));
        let hex = cube.slice(&l, &rat(3, 2)).unwrap();
        assert!(!tri.combinatorially_isomorphic(&hex));
    }
}
