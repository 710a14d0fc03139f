//! Small dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use super::rational::Rational;
use super::vector::RationalVector;

/// Reduced row echelon form of `rows` (each of length `ncols`) and its pivot columns.
pub fn rref(rows: &[RationalVector], ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.coords().to_vec()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = Rational::one() / &m[row][col];
        for x in &mut m[row][col..ncols] {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[row].clone();
                for (x, p) in m[r][col..ncols].iter_mut().zip(&pivot_row[col..ncols]) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    (m, pivots)
}

pub fn rank(rows: &[RationalVector], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : r·x = 0 for all rows r}`, one vector per free column, in RREF-derived
/// canonical form.
pub fn nullspace(rows: &[RationalVector], ncols: usize) -> Vec<RationalVector> {
    let (m, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            RationalVector::new(v)
        })
        .collect()
}

/// Canonical basis of the row space (nonzero RREF rows).
pub fn row_space_basis(rows: &[RationalVector], ncols: usize) -> Vec<RationalVector> {
    rref(rows, ncols).0.into_iter().map(RationalVector::new).collect()
}

/// Solves the square system `a x = b`; `None` when singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let aug: Vec<RationalVector> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            RationalVector::new(r)
        })
        .collect();
    let (m, pivots) = rref(&aug, n + 1);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Orthogonal projector onto `span(basis)` under the standard inner product.
pub struct Projector {
    basis: Vec<RationalVector>,
    gram_inverse: Vec<Vec<Rational>>,
}

impl Projector {
    /// `basis` must be linearly independent.
    pub fn new(basis: Vec<RationalVector>) -> Self {
        let k = basis.len();
        let gram: Vec<Vec<Rational>> = basis
            .iter()
            .map(|u| basis.iter().map(|v| u.dot(v)).collect())
            .collect();
        let gram_inverse = (0..k)
            .map(|j| {
                let e: Vec<Rational> = (0..k)
                    .map(|i| if i == j { Rational::one() } else { Rational::zero() })
                    .collect();
                solve(&gram, &e).expect("projector basis must be independent")
            })
            .collect::<Vec<_>>();
        // columns of the inverse were computed; transpose into rows
        let gram_inverse = (0..k)
            .map(|i| (0..k).map(|j| gram_inverse[j][i].clone()).collect())
            .collect();
        Self { basis, gram_inverse }
    }

    pub fn project(&self, v: &RationalVector) -> RationalVector {
        let dim = v.dim();
        if self.basis.is_empty() {
            return RationalVector::zeros(dim);
        }
        let dots: Vec<Rational> = self.basis.iter().map(|b| b.dot(v)).collect();
        let mut out = RationalVector::zeros(dim);
        for (i, b) in self.basis.iter().enumerate() {
            let coeff = self.gram_inverse[i]
                .iter()
                .zip(&dots)
                .fold(Rational::zero(), |acc, (g, d)| acc + g * d);
            if !coeff.is_zero() {
                out = &out + &b.scale(&coeff);
            }
        }
        out
    }

    /// Component of `v` orthogonal to the span.
    pub fn reject(&self, v: &RationalVector) -> RationalVector {
        v - &self.project(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rational::int;

    fn v(c: &[i64]) -> RationalVector {
        RationalVector::from_ints(c)
    }

    #[test]
    fn rank_and_nullspace() {
        let rows = vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])];
        assert_eq!(rank(&rows, 3), 2);
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            assert!(r.dot(&ns[0]).is_zero());
        }
    }

    #[test]
    fn solve_square() {
        let a = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        let x = solve(&a, &[int(3), int(5)]).unwrap();
        assert_eq!(x, vec![crate::lattice::rat(4, 5), crate::lattice::rat(7, 5)]);
        assert!(solve(&[vec![int(1), int(1)], vec![int(2), int(2)]], &[int(0), int(0)]).is_none());
    }

    #[test]
    fn projection_onto_line() {
        let p = Projector::new(vec![v(&[1, 1, 1])]);
        let x = v(&[3, 0, 0]);
        assert_eq!(p.project(&x), v(&[1, 1, 1]));
        assert_eq!(p.reject(&x), v(&[2, -1, -1]));
    }
}
