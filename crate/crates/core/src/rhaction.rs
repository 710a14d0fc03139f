//! C*-actions on rational homogeneous varieties `G/P`, modelled on the Weyl orbit of the
//! highest weight.
//!
//! * The T-fixed points are the orbit weights.
//! * The tangent directions at `w` are the roots `α` with `⟨w, α∨⟩ > 0`. The invariant curve
//!   in direction `α` joins `w` to `s_α(w)` and has L-degree `⟨w, α∨⟩`.
//! * A cocharacter `λ` gives the level `⟨λ, w⟩` (shifted so the minimum is 0).
//! * Fixed components are the classes of weights connected by reflections in roots with
//!   `⟨λ, α⟩ = 0`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::action::{product_report, ActionReport, FixedComponent, OrbitGraph, UNVERIFIED_FLAG};
use crate::lattice::{rat, Rational, RationalVector};
use crate::rootsys::{coroot_pairing, reflect, Family, RootSystem, Weight};
use crate::Error;

/// One-parameter subgroup of the maximal torus, paired with weights by the standard form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Cocharacter(pub RationalVector);

#[derive(Clone, Debug)]
pub struct HomogeneousModel {
    root_system: RootSystem,
    highest_weight: Weight,
    orbit: Vec<Weight>,
    name: String,
    dimension: usize,
    verified: bool,
}

impl HomogeneousModel {
    /// The closed orbit `family_rank(index)` of the fundamental representation `ω_index`.
    pub fn fundamental(family: Family, rank: usize, index: usize) -> Result<Self, Error> {
        let rs = RootSystem::new(family, rank)?;
        let w = rs.fundamental_weight(index)?;
        let name = format!("{}({index})", rs.name());
        Self::from_weight(rs, w, name)
    }

    pub fn from_weight(root_system: RootSystem, highest_weight: Weight, name: String) -> Result<Self, Error> {
        let orbit = root_system.weyl_orbit(&highest_weight)?;
        let roots = root_system.roots();
        let tangent_count = |w: &Weight| {
            roots
                .iter()
                .filter(|a| coroot_pairing(&w.0, a).map(|c| c.is_positive()).unwrap_or(false))
                .count()
        };
        let dimension = tangent_count(&orbit[0]);
        if let Some(w) = orbit.iter().find(|w| tangent_count(w) != dimension) {
            return Err(Error::InconsistentComponent(format!(
                "tangent root count differs at {w}"
            )));
        }
        let cominuscule = (1..=root_system.rank()).any(|i| {
            root_system.is_cominuscule_index(i)
                && root_system.fundamental_weight(i).ok().as_ref() == Some(&highest_weight)
        });
        let verified = root_system.is_minuscule(&highest_weight) || cominuscule;
        Ok(Self {
            root_system,
            highest_weight,
            orbit,
            name,
            dimension,
            verified,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn orbit(&self) -> &[Weight] {
        &self.orbit
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    pub fn highest_weight(&self) -> &Weight {
        &self.highest_weight
    }

    /// Whether the connectivity-class component model is known to match the fixed-point
    /// components (minuscule and cominuscule highest weights).
    pub fn component_model_verified(&self) -> bool {
        self.verified
    }
}

/// Per-weight data shared by `analyze` and `orbit_graph`.
struct Skeleton {
    levels: Vec<u64>,
    /// `(i, j, ⟨w_i, α∨⟩, ⟨λ, α⟩)` for every tangent root `α` at `w_i`, `w_j = s_α(w_i)`.
    tangents: Vec<(usize, usize, u64, Rational)>,
}

fn skeleton(model: &HomogeneousModel, lambda: &Cocharacter) -> Result<Skeleton, Error> {
    let orbit = &model.orbit;
    let pairings = orbit
        .iter()
        .map(|w| lambda.0.pair(&w.0))
        .collect::<Result<Vec<_>, _>>()?;
    let min = pairings.iter().min().expect("orbits are nonempty").clone();
    if pairings.iter().all(|p| *p == min) {
        return Err(Error::TrivialAction);
    }
    let levels = pairings
        .iter()
        .map(|p| {
            let d = p - &min;
            if d.is_integer() {
                d.to_integer().to_u64().ok_or(Error::NotAdapted)
            } else {
                Err(Error::NotAdapted)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let index: BTreeMap<&RationalVector, usize> = orbit.iter().enumerate().map(|(i, w)| (&w.0, i)).collect();
    let roots = model.root_system.roots();
    let mut tangents = Vec::new();
    for (i, w) in orbit.iter().enumerate() {
        for alpha in &roots {
            let c = coroot_pairing(&w.0, alpha)?;
            if !c.is_positive() {
                continue;
            }
            let image = reflect(&w.0, alpha)?;
            let j = *index
                .get(&image)
                .ok_or_else(|| Error::Verification(format!("orbit not closed at {w}")))?;
            let degree = c
                .to_integer()
                .to_u64()
                .filter(|_| c.is_integer())
                .ok_or_else(|| Error::NonIntegral(format!("coroot pairing at {w}")))?;
            tangents.push((i, j, degree, lambda.0.dot(alpha)));
        }
    }
    Ok(Skeleton { levels, tangents })
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Fixed components, bandwidth, criticality, ν± and equalization of the action of `λ`.
pub fn analyze(model: &HomogeneousModel, lambda: &Cocharacter) -> Result<ActionReport, Error> {
    let sk = skeleton(model, lambda)?;
    let n = model.orbit.len();
    let mut uf = UnionFind::new(n);
    // (dim, ν+, ν-) per weight
    let mut counts = vec![(0usize, 0usize, 0usize); n];
    let mut internal: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    let mut equalized = true;
    for (i, j, degree, t) in &sk.tangents {
        let (i, j) = (*i, *j);
        if t.is_zero() {
            uf.union(i, j);
            counts[i].0 += 1;
            internal.insert((i.min(j), i.max(j)), *degree);
        } else {
            if t.abs() != Rational::one() {
                equalized = false;
            }
            if sk.levels[j] > sk.levels[i] {
                counts[i].1 += 1;
            } else {
                counts[i].2 += 1;
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        groups.entry(uf.find(i)).or_default().push(i);
    }
    let mut components = Vec::new();
    for members in groups.into_values() {
        let first = members[0];
        if let Some(&bad) = members.iter().find(|&&m| counts[m] != counts[first]) {
            return Err(Error::InconsistentComponent(format!(
                "tangent sign counts differ between {} and {}",
                model.orbit[first], model.orbit[bad]
            )));
        }
        let member_set: BTreeSet<usize> = members.iter().copied().collect();
        let internal_edge_degrees = internal
            .iter()
            .filter(|((a, _), _)| member_set.contains(a))
            .map(|(_, d)| *d)
            .collect();
        let (dim, nu_plus, nu_minus) = counts[first];
        components.push(FixedComponent {
            level: sk.levels[first],
            weights: members.iter().map(|&m| model.orbit[m].0.clone()).collect(),
            dim,
            nu_plus,
            nu_minus,
            internal_edge_degrees,
        });
    }
    let flags = if model.verified {
        Vec::new()
    } else {
        vec![UNVERIFIED_FLAG.to_string()]
    };
    Ok(ActionReport::assemble(
        model.dimension,
        components,
        equalized,
        flags,
    ))
}

/// Invariant curves between fixed components, with their L-degrees `⟨w, α∨⟩`.
pub fn orbit_graph(model: &HomogeneousModel, lambda: &Cocharacter) -> Result<OrbitGraph, Error> {
    let report = analyze(model, lambda)?;
    if !report.equalized {
        return Err(Error::NotEqualized);
    }
    let sk = skeleton(model, lambda)?;
    let curves = sk
        .tangents
        .iter()
        .filter(|(_, _, _, t)| !t.is_zero())
        .map(|&(i, j, degree, _)| (model.orbit[i].0.clone(), model.orbit[j].0.clone(), degree));
    Ok(OrbitGraph::build(&report, curves))
}

/// Action on `X₁ × X₂` with the sum cocharacter.
pub fn product(
    a: (&HomogeneousModel, &Cocharacter),
    b: (&HomogeneousModel, &Cocharacter),
) -> Result<ActionReport, Error> {
    Ok(product_report(&analyze(a.0, a.1)?, &analyze(b.0, b.1)?))
}

/// Names accepted by [`catalog`]; `P1xQ[k]` takes the quadric dimension `k ≥ 4`.
pub const CATALOG_NAMES: [&str; 5] = ["C3(3)", "A5(3)", "D6(6)", "E7(7)", "P1xQ[k]"];

/// A preset variety with an adapted cocharacter.
#[derive(Clone, Debug)]
pub enum CatalogEntry {
    Single {
        model: HomogeneousModel,
        lambda: Cocharacter,
    },
    Product {
        name: String,
        factors: [(HomogeneousModel, Cocharacter); 2],
    },
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        match self {
            CatalogEntry::Single { model, .. } => model.name(),
            CatalogEntry::Product { name, .. } => name,
        }
    }

    pub fn analyze(&self) -> Result<ActionReport, Error> {
        match self {
            CatalogEntry::Single { model, lambda } => analyze(model, lambda),
            CatalogEntry::Product { factors: [a, b], .. } => product((&a.0, &a.1), (&b.0, &b.1)),
        }
    }

    pub fn orbit_graph(&self) -> Result<OrbitGraph, Error> {
        match self {
            CatalogEntry::Single { model, lambda } => orbit_graph(model, lambda),
            CatalogEntry::Product { factors: [a, b], .. } => {
                let report = self.analyze()?;
                let ga = orbit_graph(&a.0, &a.1)?;
                let gb = orbit_graph(&b.0, &b.1)?;
                Ok(OrbitGraph::product(&ga, &gb, &report))
            }
        }
    }
}

/// Smooth quadric `Q^k`: `B_{(k+1)/2}(1)` for odd `k`, `D_{k/2+1}(1)` for even `k`.
pub fn quadric(k: usize) -> Result<HomogeneousModel, Error> {
    let (family, rank) = if k % 2 == 1 {
        (Family::B, k.div_ceil(2))
    } else {
        (Family::D, k / 2 + 1)
    };
    let rs = RootSystem::new(family, rank)?;
    let w = rs.fundamental_weight(1)?;
    HomogeneousModel::from_weight(rs, w, format!("Q{k}"))
}

fn unknown(name: &str) -> Error {
    Error::UnknownName {
        name: name.to_string(),
        valid: CATALOG_NAMES.join(", "),
    }
}

/// The bandwidth-three presets: four Picard-number-one varieties and `P¹ × Q^k`.
pub fn catalog(name: &str) -> Result<CatalogEntry, Error> {
    let half = |n: usize| Cocharacter(RationalVector::new(vec![rat(1, 2); n]));
    let single = |family, rank, index, lambda: Cocharacter| {
        Ok(CatalogEntry::Single {
            model: HomogeneousModel::fundamental(family, rank, index)?,
            lambda,
        })
    };
    match name {
        "C3(3)" => single(Family::C, 3, 3, half(3)),
        "A5(3)" => single(
            Family::A,
            5,
            3,
            Cocharacter(RationalVector::from_ints(&[1, 1, 1, 0, 0, 0])),
        ),
        "D6(6)" => single(Family::D, 6, 6, half(6)),
        "E7(7)" => {
            // simply laced: the fundamental coweight at node 7 is ω₇ itself
            let rs = RootSystem::new(Family::E7, 7)?;
            let lambda = Cocharacter(rs.fundamental_weight(7)?.0);
            single(Family::E7, 7, 7, lambda)
        }
        _ => {
            let k: usize = name
                .strip_prefix("P1xQ[")
                .and_then(|s| s.strip_suffix(']'))
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| unknown(name))?;
            if k < 4 {
                return Err(unknown(name));
            }
            let q = quadric(k)?;
            let q_lambda = Cocharacter(RationalVector::unit(q.root_system().ambient_dim(), 0));
            let p1 = HomogeneousModel::fundamental(Family::A, 1, 1)?;
            let p1_lambda = Cocharacter(RationalVector::from_ints(&[1, 0]));
            Ok(CatalogEntry::Product {
                name: format!("P1xQ[{k}]"),
                factors: [(p1, p1_lambda), (q, q_lambda)],
            })
        }
    }
}
