//! Report types shared by the homogeneous and toric action models: fixed components,
//! bandwidth, criticality, equalization and orbit graphs.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::lattice::RationalVector;

/// A fixed-point component, described by the T-fixed points it contains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedComponent {
    /// Weight of the linearization, shifted so that the sink has level 0.
    pub level: u64,
    /// T-fixed points (extremal weights or polytope vertices), sorted.
    pub weights: Vec<RationalVector>,
    pub dim: usize,
    pub nu_plus: usize,
    pub nu_minus: usize,
    /// L-degrees of the invariant curves joining fixed points inside the component.
    pub internal_edge_degrees: Vec<u64>,
}

impl FixedComponent {
    pub fn is_point(&self) -> bool {
        self.dim == 0 && self.weights.len() == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionReport {
    /// Dimension of the variety carrying the action.
    pub variety_dim: usize,
    /// Sorted by (level, number of fixed points, first fixed point).
    pub components: Vec<FixedComponent>,
    pub bandwidth: u64,
    pub criticality: usize,
    pub equalized: bool,
    pub isolated_extremes: bool,
    /// Caveats about the model, e.g. `"component model unverified"`.
    pub flags: Vec<String>,
}

pub const UNVERIFIED_FLAG: &str = "component model unverified";

impl ActionReport {
    pub(crate) fn assemble(
        variety_dim: usize,
        mut components: Vec<FixedComponent>,
        equalized: bool,
        flags: Vec<String>,
    ) -> Self {
        for c in &mut components {
            c.weights.sort();
            c.internal_edge_degrees.sort_unstable();
        }
        components.sort_by(|a, b| {
            (a.level, a.weights.len(), &a.weights[0]).cmp(&(b.level, b.weights.len(), &b.weights[0]))
        });
        let levels: BTreeSet<u64> = components.iter().map(|c| c.level).collect();
        let min = *levels.first().expect("at least one component");
        let max = *levels.last().expect("at least one component");
        let isolated = |level: u64| {
            let at: Vec<&FixedComponent> = components.iter().filter(|c| c.level == level).collect();
            at.len() == 1 && at[0].is_point()
        };
        let isolated_extremes = isolated(min) && isolated(max);
        Self {
            variety_dim,
            bandwidth: max - min,
            criticality: levels.len() - 1,
            equalized,
            isolated_extremes,
            flags,
            components,
        }
    }

    /// The trivial action on a point.
    pub fn point() -> Self {
        Self::assemble(
            0,
            vec![FixedComponent {
                level: 0,
                weights: vec![RationalVector::zeros(0)],
                dim: 0,
                nu_plus: 0,
                nu_minus: 0,
                internal_edge_degrees: Vec::new(),
            }],
            true,
            Vec::new(),
        )
    }

    /// Distinct levels in increasing order.
    pub fn levels(&self) -> Vec<u64> {
        self.components
            .iter()
            .map(|c| c.level)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Number of T-fixed points at each distinct level.
    pub fn weights_per_level(&self) -> Vec<usize> {
        self.levels()
            .into_iter()
            .map(|l| self.components_at(l).map(|c| c.weights.len()).sum())
            .collect()
    }

    pub fn components_at(&self, level: u64) -> impl Iterator<Item = &FixedComponent> {
        self.components.iter().filter(move |c| c.level == level)
    }

    /// Components strictly between the sink and source levels.
    pub fn inner_components(&self) -> impl Iterator<Item = &FixedComponent> {
        let top = self.bandwidth;
        self.components
            .iter()
            .filter(move |c| c.level != 0 && c.level != top)
    }

    pub fn fixed_point_count(&self) -> usize {
        self.components.iter().map(|c| c.weights.len()).sum()
    }
}

/// Product action on `X₁ × X₂`: components pair up, levels, dimensions and ν± add.
pub fn product_report(a: &ActionReport, b: &ActionReport) -> ActionReport {
    let mut components = Vec::new();
    for ca in &a.components {
        for cb in &b.components {
            let weights = ca
                .weights
                .iter()
                .flat_map(|wa| cb.weights.iter().map(move |wb| wa.concat(wb)))
                .collect();
            // invariant curves inside Y_a × Y_b run along one factor
            let mut degrees = Vec::new();
            for &d in &ca.internal_edge_degrees {
                degrees.extend(std::iter::repeat_n(d, cb.weights.len()));
            }
            for &d in &cb.internal_edge_degrees {
                degrees.extend(std::iter::repeat_n(d, ca.weights.len()));
            }
            components.push(FixedComponent {
                level: ca.level + cb.level,
                weights,
                dim: ca.dim + cb.dim,
                nu_plus: ca.nu_plus + cb.nu_plus,
                nu_minus: ca.nu_minus + cb.nu_minus,
                internal_edge_degrees: degrees,
            });
        }
    }
    let flags: BTreeSet<String> = a.flags.iter().chain(&b.flags).cloned().collect();
    ActionReport::assemble(
        a.variety_dim + b.variety_dim,
        components,
        a.equalized && b.equalized,
        flags.into_iter().collect(),
    )
}

/// A component node of an orbit graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphNode {
    pub id: usize,
    pub level: u64,
    pub multiplicity: usize,
    pub dim: usize,
}

/// A T-fixed point, tagged with its component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphPoint {
    pub component: usize,
    pub weight: RationalVector,
    pub level: u64,
}

/// Closure of a one-dimensional orbit joining two fixed points (indices into `points`),
/// from the lower to the higher level.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Curve {
    pub lower: usize,
    pub upper: usize,
    pub degree: u64,
}

/// Curves aggregated by component pair and degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphEdge {
    pub source: usize,
    pub target: usize,
    pub degree: u64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitGraph {
    pub nodes: Vec<GraphNode>,
    pub points: Vec<GraphPoint>,
    pub curves: Vec<Curve>,
    pub edges: Vec<GraphEdge>,
}

impl OrbitGraph {
    /// `curves` are given as unordered pairs of fixed points with their L-degree; pairs
    /// inside one component are dropped.
    pub(crate) fn build(
        report: &ActionReport,
        curves: impl IntoIterator<Item = (RationalVector, RationalVector, u64)>,
    ) -> Self {
        let mut points = Vec::new();
        let mut index = BTreeMap::new();
        let nodes = report
            .components
            .iter()
            .enumerate()
            .map(|(id, c)| {
                for w in &c.weights {
                    index.insert(w.clone(), points.len());
                    points.push(GraphPoint {
                        component: id,
                        weight: w.clone(),
                        level: c.level,
                    });
                }
                GraphNode {
                    id,
                    level: c.level,
                    multiplicity: c.weights.len(),
                    dim: c.dim,
                }
            })
            .collect();
        let mut set = BTreeSet::new();
        for (a, b, degree) in curves {
            let (i, j) = (index[&a], index[&b]);
            if points[i].component == points[j].component {
                continue;
            }
            let (lower, upper) = if points[i].level <= points[j].level {
                (i, j)
            } else {
                (j, i)
            };
            set.insert(Curve { lower, upper, degree });
        }
        let curves: Vec<Curve> = set.into_iter().collect();
        let mut agg: BTreeMap<(usize, usize, u64), usize> = BTreeMap::new();
        for c in &curves {
            let key = (points[c.lower].component, points[c.upper].component, c.degree);
            *agg.entry(key).or_default() += 1;
        }
        let edges = agg
            .into_iter()
            .map(|((source, target, degree), multiplicity)| GraphEdge {
                source,
                target,
                degree,
                multiplicity,
            })
            .collect();
        Self {
            nodes,
            points,
            curves,
            edges,
        }
    }

    /// Orbit graph of a product action: invariant curves move along one factor at a time.
    pub fn product(a: &OrbitGraph, b: &OrbitGraph, report: &ActionReport) -> Self {
        let mut curves = Vec::new();
        for c in &a.curves {
            for p in &b.points {
                curves.push((
                    a.points[c.lower].weight.concat(&p.weight),
                    a.points[c.upper].weight.concat(&p.weight),
                    c.degree,
                ));
            }
        }
        for c in &b.curves {
            for p in &a.points {
                curves.push((
                    p.weight.concat(&b.points[c.lower].weight),
                    p.weight.concat(&b.points[c.upper].weight),
                    c.degree,
                ));
            }
        }
        Self::build(report, curves)
    }

    /// Level difference between the endpoints of a curve.
    pub fn level_gap(&self, c: &Curve) -> u64 {
        self.points[c.upper].level - self.points[c.lower].level
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(level: u64, weights: &[&[i64]], dim: usize) -> FixedComponent {
        FixedComponent {
            level,
            weights: weights.iter().map(|w| RationalVector::from_ints(w)).collect(),
            dim,
            nu_plus: 0,
            nu_minus: 0,
            internal_edge_degrees: vec![],
        }
    }

    #[test]
    fn assemble_computes_invariants() {
        let r = ActionReport::assemble(1, vec![comp(1, &[&[0]], 0), comp(0, &[&[1]], 0)], true, vec![]);
        assert_eq!(r.bandwidth, 1);
        assert_eq!(r.criticality, 1);
        assert!(r.isolated_extremes);
        assert_eq!(r.components[0].level, 0);
        assert_eq!(r.weights_per_level(), vec![1, 1]);
    }

    #[test]
    fn product_with_point_is_identity() {
        let r = ActionReport::assemble(1, vec![comp(1, &[&[0]], 0), comp(0, &[&[1]], 0)], true, vec![]);
        let p = product_report(&r, &ActionReport::point());
        assert_eq!(p, r);
    }
}
