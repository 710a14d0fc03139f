//! Root systems in orthogonal (epsilon) coordinates, fundamental weights with Bourbaki
//! numbering, reflections and Weyl orbits.
//!
//! `A_n` lives in `R^{n+1}` (roots in the sum-zero hyperplane); its fundamental weights are
//! the lifts `ω_i = e_1 + … + e_i`, which pair with every coroot exactly like the
//! projections do. `E_6` and `E_7` use the Bourbaki simple roots inside `R^8`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::lattice::linalg::solve;
use crate::lattice::{int, rat, Rational, RationalVector};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E6,
    E7,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E6 => "E6",
            Family::E7 => "E7",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E6" => Ok(Family::E6),
            "E7" => Ok(Family::E7),
            _ => Err(Error::UnsupportedRootSystem(s.to_string())),
        }
    }
}

/// A weight in the orthogonal coordinates of its root system.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Weight(pub RationalVector);

impl Weight {
    pub fn coords(&self) -> &RationalVector {
        &self.0
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    simple_roots: Vec<RationalVector>,
    positive_roots: Vec<RationalVector>,
}

/// `⟨w, α∨⟩ = 2(w, α)/(α, α)`.
pub fn coroot_pairing(w: &RationalVector, alpha: &RationalVector) -> Result<Rational, Error> {
    let norm = alpha.dot(alpha);
    if norm.is_zero() {
        return Err(Error::ZeroRoot);
    }
    Ok(int(2) * w.pair(alpha)? / norm)
}

/// `s_α(w) = w − ⟨w, α∨⟩ α`.
pub fn reflect(w: &RationalVector, alpha: &RationalVector) -> Result<RationalVector, Error> {
    let c = coroot_pairing(w, alpha)?;
    Ok(w - &alpha.scale(&c))
}

fn sum_eps(dim: usize, entries: &[(usize, i64)]) -> RationalVector {
    let mut c = vec![Rational::zero(); dim];
    for &(i, s) in entries {
        c[i] += int(s);
    }
    RationalVector::new(c)
}

fn simple_roots(family: Family, rank: usize) -> Result<Vec<RationalVector>, Error> {
    let unsupported = || Error::UnsupportedRootSystem(format!("{family}{rank}"));
    let chain = |dim: usize, count: usize| -> Vec<RationalVector> {
        (0..count).map(|i| sum_eps(dim, &[(i, 1), (i + 1, -1)])).collect()
    };
    let roots = match family {
        Family::A if (1..=7).contains(&rank) => chain(rank + 1, rank),
        Family::B if (2..=6).contains(&rank) => {
            let mut r = chain(rank, rank - 1);
            r.push(sum_eps(rank, &[(rank - 1, 1)]));
            r
        }
        Family::C if rank == 3 => {
            let mut r = chain(3, 2);
            r.push(sum_eps(3, &[(2, 2)]));
            r
        }
        Family::D if (3..=6).contains(&rank) => {
            let mut r = chain(rank, rank - 1);
            r.push(sum_eps(rank, &[(rank - 2, 1), (rank - 1, 1)]));
            r
        }
        Family::E6 | Family::E7 if rank == if family == Family::E6 { 6 } else { 7 } => {
            let half = rat(1, 2);
            let mut a1 = vec![-half.clone(); 8];
            a1[0] = half.clone();
            a1[7] = half;
            let mut r = vec![
                RationalVector::new(a1),
                sum_eps(8, &[(0, 1), (1, 1)]),
                sum_eps(8, &[(1, 1), (0, -1)]),
            ];
            for i in 2..rank - 1 {
                r.push(sum_eps(8, &[(i, 1), (i - 1, -1)]));
            }
            r
        }
        _ => return Err(unsupported()),
    };
    Ok(roots)
}

impl RootSystem {
    /// Simple roots for the supported `(family, rank)` pairs and the positive roots
    /// generated from them by closure under simple reflections.
    pub fn new(family: Family, rank: usize) -> Result<Self, Error> {
        let simple = simple_roots(family, rank)?;
        // s_i permutes the positive roots other than α_i.
        let mut seen: BTreeSet<RationalVector> = simple.iter().cloned().collect();
        let mut queue: VecDeque<RationalVector> = simple.iter().cloned().collect();
        let mut positive = Vec::new();
        while let Some(beta) = queue.pop_front() {
            for a in &simple {
                if *a == beta {
                    continue;
                }
                let gamma = reflect(&beta, a)?;
                if seen.insert(gamma.clone()) {
                    queue.push_back(gamma);
                }
            }
            positive.push(beta);
        }
        positive.sort();
        Ok(Self {
            family,
            rank,
            simple_roots: simple,
            positive_roots: positive,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.simple_roots[0].dim()
    }

    pub fn simple_roots(&self) -> &[RationalVector] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[RationalVector] {
        &self.positive_roots
    }

    /// All roots, positive ones followed by their negatives.
    pub fn roots(&self) -> Vec<RationalVector> {
        let mut all = self.positive_roots.clone();
        all.extend(self.positive_roots.iter().map(|r| -r));
        all
    }

    pub fn name(&self) -> String {
        match self.family {
            Family::E6 | Family::E7 => self.family.to_string(),
            f => format!("{f}{}", self.rank),
        }
    }

    /// Cartan matrix `C[i][j] = ⟨α_i, α_j∨⟩`.
    pub fn cartan_matrix(&self) -> Vec<Vec<Rational>> {
        self.simple_roots
            .iter()
            .map(|ai| {
                self.simple_roots
                    .iter()
                    .map(|aj| coroot_pairing(ai, aj).expect("simple roots are nonzero"))
                    .collect()
            })
            .collect()
    }

    /// Coefficients of `v` in the basis of simple roots, if `v` lies in their span.
    pub fn simple_coefficients(&self, v: &RationalVector) -> Option<Vec<Rational>> {
        // Gram system (α_i, α_j) c = (α_i, v)
        let gram: Vec<Vec<Rational>> = self
            .simple_roots
            .iter()
            .map(|a| self.simple_roots.iter().map(|b| a.dot(b)).collect())
            .collect();
        let rhs: Vec<Rational> = self.simple_roots.iter().map(|a| a.dot(v)).collect();
        let c = solve(&gram, &rhs)?;
        let back = self
            .simple_roots
            .iter()
            .zip(&c)
            .fold(RationalVector::zeros(v.dim()), |acc, (a, k)| &acc + &a.scale(k));
        (back == *v).then_some(c)
    }

    /// The fundamental weight `ω_i` (1-based, Bourbaki numbering).
    pub fn fundamental_weight(&self, i: usize) -> Result<Weight, Error> {
        if i == 0 || i > self.rank {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank,
            });
        }
        if self.family == Family::A {
            let dim = self.ambient_dim();
            let coords = (0..dim).map(|k| if k < i { int(1) } else { int(0) }).collect();
            return Ok(Weight(RationalVector::new(coords)));
        }
        // ω_i = Σ c_k α_k with Σ_k c_k ⟨α_k, α_j∨⟩ = δ_ij
        let cartan = self.cartan_matrix();
        let transposed: Vec<Vec<Rational>> = (0..self.rank)
            .map(|j| (0..self.rank).map(|k| cartan[k][j].clone()).collect())
            .collect();
        let rhs: Vec<Rational> = (0..self.rank)
            .map(|j| {
                if j + 1 == i {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        let c = solve(&transposed, &rhs).expect("Cartan matrices are invertible");
        let w = self
            .simple_roots
            .iter()
            .zip(&c)
            .fold(RationalVector::zeros(self.ambient_dim()), |acc, (a, k)| {
                &acc + &a.scale(k)
            });
        Ok(Weight(w))
    }

    /// Whether every coroot pairing of `w` is an integer.
    pub fn in_weight_lattice(&self, w: &Weight) -> bool {
        self.positive_roots
            .iter()
            .all(|a| coroot_pairing(&w.0, a).map(|c| c.is_integer()).unwrap_or(false))
    }

    /// The Weyl orbit of `w`: breadth-first closure under simple reflections, sorted
    /// lexicographically.
    pub fn weyl_orbit(&self, w: &Weight) -> Result<Vec<Weight>, Error> {
        if w.0.dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: w.0.dim(),
            });
        }
        if !self.in_weight_lattice(w) {
            return Err(Error::NonIntegral(format!("{w} is not in the weight lattice")));
        }
        let mut seen: BTreeSet<RationalVector> = BTreeSet::from([w.0.clone()]);
        let mut queue = VecDeque::from([w.0.clone()]);
        while let Some(x) = queue.pop_front() {
            for a in &self.simple_roots {
                let y = reflect(&x, a)?;
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        Ok(seen.into_iter().map(Weight).collect())
    }

    /// The highest root (maximal height).
    pub fn highest_root(&self) -> RationalVector {
        self.positive_roots
            .iter()
            .max_by_key(|r| {
                self.simple_coefficients(r)
                    .expect("roots lie in the root span")
                    .into_iter()
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .expect("nonempty")
            .clone()
    }

    /// `ω_i` is minuscule when all coroot pairings lie in `{-1, 0, 1}`.
    pub fn is_minuscule(&self, w: &Weight) -> bool {
        self.positive_roots.iter().all(|a| {
            coroot_pairing(&w.0, a)
                .map(|c| c.abs() <= Rational::one())
                .unwrap_or(false)
        })
    }

    /// `ω_i` is cominuscule when `α_i` has coefficient 1 in the highest root.
    pub fn is_cominuscule_index(&self, i: usize) -> bool {
        let c = self
            .simple_coefficients(&self.highest_root())
            .expect("highest root lies in the root span");
        (1..=self.rank).contains(&i) && c[i - 1] == Rational::one()
    }

    pub fn is_root(&self, alpha: &RationalVector) -> bool {
        self.positive_roots.contains(alpha) || self.positive_roots.contains(&-alpha)
    }

    /// Squared length `(w, w)`.
    pub fn norm(w: &Weight) -> Rational {
        w.0.dot(&w.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> RationalVector {
        RationalVector::from_ints(c)
    }

    #[test]
    fn root_counts() {
        let cases = [
            (Family::A, 5, 15),
            (Family::A, 1, 1),
            (Family::B, 3, 9),
            (Family::C, 3, 9),
            (Family::D, 6, 30),
            (Family::D, 3, 6),
            (Family::E6, 6, 36),
            (Family::E7, 7, 63),
        ];
        for (f, r, count) in cases {
            let rs = RootSystem::new(f, r).unwrap();
            assert_eq!(rs.positive_roots().len(), count, "{f}{r}");
        }
    }

    #[test]
    fn c3_has_long_roots() {
        let rs = RootSystem::new(Family::C, 3).unwrap();
        for i in 0..3 {
            let mut c = [0; 3];
            c[i] = 2;
            assert!(rs.positive_roots().contains(&v(&c)));
        }
    }

    #[test]
    fn positive_roots_are_nonnegative_integer_combinations() {
        for (f, r) in [
            (Family::A, 4),
            (Family::B, 4),
            (Family::C, 3),
            (Family::D, 5),
            (Family::E6, 6),
            (Family::E7, 7),
        ] {
            let rs = RootSystem::new(f, r).unwrap();
            for root in rs.positive_roots() {
                let c = rs.simple_coefficients(root).unwrap();
                assert!(
                    c.iter().all(|x| x.is_integer() && !x.is_negative()),
                    "{f}{r} {root}"
                );
            }
        }
    }

    #[test]
    fn unsupported_pairs() {
        assert!(RootSystem::new(Family::C, 4).is_err());
        assert!(RootSystem::new(Family::A, 8).is_err());
        assert!(RootSystem::new(Family::E6, 7).is_err());
        assert!(RootSystem::new(Family::D, 2).is_err());
    }

    #[test]
    fn fundamental_weights_from_defining_system() {
        let c3 = RootSystem::new(Family::C, 3).unwrap();
        assert_eq!(c3.fundamental_weight(3).unwrap().0, v(&[1, 1, 1]));
        let d6 = RootSystem::new(Family::D, 6).unwrap();
        assert_eq!(
            d6.fundamental_weight(6).unwrap().0,
            RationalVector::new(vec![rat(1, 2); 6])
        );
        let a5 = RootSystem::new(Family::A, 5).unwrap();
        assert_eq!(a5.fundamental_weight(3).unwrap().0, v(&[1, 1, 1, 0, 0, 0]));
        assert!(matches!(
            a5.fundamental_weight(6),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(a5.fundamental_weight(0).is_err());
        for rs in [c3, d6, a5, RootSystem::new(Family::E7, 7).unwrap()] {
            for i in 1..=rs.rank() {
                let w = rs.fundamental_weight(i).unwrap();
                for (j, a) in rs.simple_roots().iter().enumerate() {
                    let expect = if i == j + 1 { int(1) } else { int(0) };
                    assert_eq!(coroot_pairing(&w.0, a).unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn coroot_pairings() {
        let w = v(&[1, 1, 1]);
        assert_eq!(coroot_pairing(&w, &v(&[2, 0, 0])).unwrap(), int(1));
        assert_eq!(coroot_pairing(&w, &v(&[1, -1, 0])).unwrap(), int(0));
        assert_eq!(coroot_pairing(&w, &v(&[1, 1, 0])).unwrap(), int(2));
        assert!(matches!(coroot_pairing(&w, &v(&[0, 0, 0])), Err(Error::ZeroRoot)));
    }

    #[test]
    fn reflections() {
        let w = v(&[1, 1, 1]);
        assert_eq!(reflect(&w, &v(&[2, 0, 0])).unwrap(), v(&[-1, 1, 1]));
        let a = v(&[1, 1, 1, 0, 0, 0]);
        let alpha = v(&[0, 0, 1, -1, 0, 0]);
        assert_eq!(reflect(&a, &alpha).unwrap(), v(&[1, 1, 0, 1, 0, 0]));
        let once = reflect(&w, &v(&[1, 1, 0])).unwrap();
        assert_eq!(reflect(&once, &v(&[1, 1, 0])).unwrap(), w);
    }

    #[test]
    fn minuscule_and_cominuscule() {
        let c3 = RootSystem::new(Family::C, 3).unwrap();
        assert!(!c3.is_minuscule(&c3.fundamental_weight(3).unwrap()));
        assert!(c3.is_cominuscule_index(3));
        let e7 = RootSystem::new(Family::E7, 7).unwrap();
        assert!(e7.is_minuscule(&e7.fundamental_weight(7).unwrap()));
        assert!(e7.is_cominuscule_index(7));
        assert!(!e7.is_cominuscule_index(1));
    }
}
