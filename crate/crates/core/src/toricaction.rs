//! C*-subactions of the torus on polarized toric varieties, read off the moment polytope.
//!
//! Fixed components are the maximal faces on which `⟨λ, ·⟩` is constant, invariant curves
//! are the remaining edges, and the geometric quotients of the chambers are the hyperplane
//! slices `Δ ∩ {⟨λ, x⟩ = τ}`.

use num_traits::{One, Signed};
use serde::Serialize;

use crate::action::{ActionReport, FixedComponent, OrbitGraph};
use crate::lattice::rational::serialize_rational;
use crate::lattice::{int, lattice_length, rat, LatticePolytope, Rational, RationalVector, SlicePolytope};
use crate::Error;

#[derive(Clone, Debug, Serialize)]
pub struct PolarizedToric {
    polytope: LatticePolytope,
    name: String,
}

impl PolarizedToric {
    pub fn new(polytope: LatticePolytope, name: impl Into<String>) -> Result<Self, Error> {
        if polytope.dim() != polytope.ambient_dim() {
            return Err(Error::Degenerate(format!(
                "polytope of dimension {} in a lattice of rank {}",
                polytope.dim(),
                polytope.ambient_dim()
            )));
        }
        Ok(Self {
            polytope,
            name: name.into(),
        })
    }

    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

pub const PRESET_NAMES: [&str; 3] = ["cube", "projbundle13[n]", "projbundle122[n]"];

/// Moment polytope of `P(⊕ O(a_i))` over `P¹`: the Cayley polytope with vertices
/// `(0, f_i)` and `(a_i, f_i)`, `f_i` the vertices of the standard simplex.
pub fn projective_bundle(degrees: &[i64]) -> Result<LatticePolytope, Error> {
    if degrees.is_empty() || degrees.iter().any(|&a| a < 0) {
        return Err(Error::Degenerate(format!("bundle degrees {degrees:?}")));
    }
    let k = degrees.len();
    let mut points = Vec::with_capacity(2 * k);
    for (i, &a) in degrees.iter().enumerate() {
        let mut f = vec![0i64; k];
        if i > 0 {
            f[i] = 1;
        }
        points.push(f.clone());
        f[0] = a;
        points.push(f);
    }
    LatticePolytope::from_int_vertices(&points)
}

fn unknown(name: &str) -> Error {
    Error::UnknownName {
        name: name.to_string(),
        valid: PRESET_NAMES.join(", "),
    }
}

/// `cube` is `(P¹)³`; `projbundle13[n]` and `projbundle122[n]` are `P(O(1)^{n-1} ⊕ O(3))`
/// and `P(O(1)^{n-2} ⊕ O(2)²)` over `P¹`, for `n ≥ 3`.
pub fn preset(name: &str) -> Result<PolarizedToric, Error> {
    if name == "cube" {
        return PolarizedToric::new(LatticePolytope::hypercube(3), name);
    }
    let parse =
        |prefix: &str| -> Option<usize> { name.strip_prefix(prefix)?.strip_suffix(']')?.parse().ok() };
    let degrees = if let Some(n) = parse("projbundle13[") {
        (n >= 3).then(|| {
            let mut a = vec![3];
            a.resize(n, 1);
            a
        })
    } else if let Some(n) = parse("projbundle122[") {
        (n >= 3).then(|| {
            let mut a = vec![2, 2];
            a.resize(n, 1);
            a
        })
    } else {
        None
    };
    let degrees = degrees.ok_or_else(|| unknown(name))?;
    PolarizedToric::new(projective_bundle(&degrees)?, name)
}

fn check_lambda(t: &PolarizedToric, lambda: &RationalVector) -> Result<Vec<Rational>, Error> {
    let p = &t.polytope;
    if lambda.dim() != p.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: p.ambient_dim(),
            found: lambda.dim(),
        });
    }
    if lambda.is_zero() {
        return Err(Error::TrivialAction);
    }
    p.vertices()
        .iter()
        .map(|v| {
            let x = lambda.dot(v);
            if x.is_integer() {
                Ok(x)
            } else {
                Err(Error::NonIntegral(format!("pairing of λ with vertex {v}")))
            }
        })
        .collect()
}

fn to_level(q: &Rational) -> u64 {
    u64::try_from(q.to_integer()).expect("shifted levels are small nonnegative integers")
}

/// Fixed faces, bandwidth, criticality, ν± and equalization of the subaction `λ`.
///
/// ν± are counted per vertex from the edges leaving the face; vertices that are not simple,
/// or faces whose vertices disagree, are rejected as non-smooth fixed geometry.
pub fn toric_analyze(t: &PolarizedToric, lambda: &RationalVector) -> Result<ActionReport, Error> {
    let values = check_lambda(t, lambda)?;
    let p = &t.polytope;
    let n = p.dim();
    let faces = p.constant_face_sets(lambda)?;
    let edges = p.edges();
    let mut face_of = vec![0usize; values.len()];
    for (k, (f, _)) in faces.iter().enumerate() {
        for &i in f {
            face_of[i] = k;
        }
    }
    // (internal, up, down) per vertex
    let mut counts = vec![(0usize, 0usize, 0usize); values.len()];
    let mut internal: Vec<Vec<u64>> = vec![Vec::new(); faces.len()];
    let mut equalized = true;
    for &(i, j) in &edges {
        let vi = &p.vertices()[i];
        let vj = &p.vertices()[j];
        let len = lattice_length(vi, vj)?;
        if face_of[i] == face_of[j] {
            counts[i].0 += 1;
            counts[j].0 += 1;
            internal[face_of[i]].push(len);
            continue;
        }
        let step = (&values[j] - &values[i]) / int(len as i64);
        if step.abs() != Rational::one() {
            equalized = false;
        }
        let (lo, hi) = if values[i] < values[j] { (i, j) } else { (j, i) };
        counts[lo].1 += 1;
        counts[hi].2 += 1;
    }
    let mut components = Vec::with_capacity(faces.len());
    for (k, (f, level)) in faces.iter().enumerate() {
        let first = *f.iter().next().expect("faces are nonempty");
        let face_dim = p.sub_face_dim(f);
        for &i in f {
            let (c, up, down) = counts[i];
            if c != face_dim || c + up + down != n {
                return Err(Error::NonSmoothFixedGeometry(format!(
                    "vertex {} is not simple",
                    p.vertices()[i]
                )));
            }
            if counts[i] != counts[first] {
                return Err(Error::NonSmoothFixedGeometry(format!(
                    "normal directions differ between {} and {}",
                    p.vertices()[first],
                    p.vertices()[i]
                )));
            }
        }
        components.push(FixedComponent {
            level: to_level(level),
            weights: f.iter().map(|&i| p.vertices()[i].clone()).collect(),
            dim: face_dim,
            nu_plus: counts[first].1,
            nu_minus: counts[first].2,
            internal_edge_degrees: std::mem::take(&mut internal[k]),
        });
    }
    Ok(ActionReport::assemble(n, components, equalized, Vec::new()))
}

/// Invariant curves (non-constant edges) with their L-degrees (lattice lengths).
pub fn toric_orbit_graph(t: &PolarizedToric, lambda: &RationalVector) -> Result<OrbitGraph, Error> {
    let report = toric_analyze(t, lambda)?;
    if !report.equalized {
        return Err(Error::NotEqualized);
    }
    let p = &t.polytope;
    let curves = p
        .edges()
        .into_iter()
        .map(|(i, j)| {
            let (a, b) = (&p.vertices()[i], &p.vertices()[j]);
            Ok((a.clone(), b.clone(), lattice_length(a, b)?))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(OrbitGraph::build(&report, curves))
}

/// One open interval `(lower, upper)` between consecutive critical levels.
#[derive(Clone, Debug, Serialize)]
pub struct Chamber {
    #[serde(serialize_with = "serialize_rational")]
    pub lower: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub upper: Rational,
    /// Shifted level at which the sample slice is taken (the midpoint).
    #[serde(serialize_with = "serialize_rational")]
    pub tau: Rational,
    /// Slice in the unshifted hyperplane `⟨λ, x⟩ = tau + offset`.
    pub slice: SlicePolytope,
    pub vertex_count: usize,
    pub ray_count: usize,
    /// Adjacent to the sink.
    pub sink_side: bool,
    /// Adjacent to the source.
    pub source_side: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChamberReport {
    /// Distinct levels of fixed components, `0 = a_0 < … < a_r = δ`.
    #[serde(serialize_with = "crate::lattice::rational::serialize_rationals")]
    pub critical_levels: Vec<Rational>,
    /// Minimum pairing of `λ` on the polytope.
    #[serde(serialize_with = "serialize_rational")]
    pub offset: Rational,
    pub chambers: Vec<Chamber>,
}

impl ChamberReport {
    pub fn vertex_counts(&self) -> Vec<usize> {
        self.chambers.iter().map(|c| c.vertex_count).collect()
    }
}

/// Slices of the polytope at the midpoints of the chambers between critical levels.
pub fn git_chambers(t: &PolarizedToric, lambda: &RationalVector) -> Result<ChamberReport, Error> {
    let report = toric_analyze(t, lambda)?;
    let values = check_lambda(t, lambda)?;
    let offset = values.iter().min().expect("nonempty").clone();
    let critical_levels: Vec<Rational> = report.levels().into_iter().map(|l| int(l as i64)).collect();
    let last = critical_levels.len() - 2;
    let chambers = critical_levels
        .windows(2)
        .enumerate()
        .map(|(k, w)| {
            let tau = (&w[0] + &w[1]) * rat(1, 2);
            let slice = t.polytope.slice(lambda, &(&tau + &offset))?;
            Ok(Chamber {
                lower: w[0].clone(),
                upper: w[1].clone(),
                vertex_count: slice.vertex_count(),
                ray_count: slice.ray_count(),
                tau,
                slice,
                sink_side: k == 0,
                source_side: k == last,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(ChamberReport {
        critical_levels,
        offset,
        chambers,
    })
}

/// The two extremal geometric quotients and whether their slices are combinatorially
/// isomorphic.
#[derive(Clone, Debug, Serialize)]
pub struct BirationalSummary {
    pub sink_slice: SlicePolytope,
    pub source_slice: SlicePolytope,
    pub combinatorially_isomorphic: bool,
}

pub fn birational_summary(t: &PolarizedToric, lambda: &RationalVector) -> Result<BirationalSummary, Error> {
    let chambers = git_chambers(t, lambda)?.chambers;
    let sink_slice = chambers
        .first()
        .expect("criticality is at least one")
        .slice
        .clone();
    let source_slice = chambers
        .last()
        .expect("criticality is at least one")
        .slice
        .clone();
    Ok(BirationalSummary {
        combinatorially_isomorphic: sink_slice.combinatorially_isomorphic(&source_slice),
        sink_slice,
        source_slice,
    })
}

/// Vertex pairs `(i, j)` of edges on which `λ` is not constant.
pub fn moving_edges(t: &PolarizedToric, lambda: &RationalVector) -> Result<Vec<(usize, usize)>, Error> {
    let values = check_lambda(t, lambda)?;
    Ok(t.polytope
        .edges()
        .into_iter()
        .filter(|&(i, j)| values[i] != values[j])
        .collect())
}

/// Shifted levels of the polytope vertices, in vertex order.
pub fn vertex_levels(t: &PolarizedToric, lambda: &RationalVector) -> Result<Vec<Rational>, Error> {
    let values = check_lambda(t, lambda)?;
    let min = values.iter().min().expect("nonempty").clone();
    Ok(values.into_iter().map(|v| v - &min).collect())
}
