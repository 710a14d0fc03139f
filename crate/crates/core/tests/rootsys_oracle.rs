use std::collections::{BTreeSet, VecDeque};

use cstar_core::lattice::{int, rat, Rational, RationalVector};
use cstar_core::rootsys::{coroot_pairing, reflect, Family, RootSystem, Weight};
use num_traits::{One, Zero};

fn unit(dim: usize, i: usize, s: i64) -> RationalVector {
    let mut c = vec![Rational::zero(); dim];
    c[i] = int(s);
    RationalVector::new(c)
}

fn pm_pairs(dim: usize, upto: usize, out: &mut BTreeSet<RationalVector>) {
    for i in 0..upto {
        for j in i + 1..upto {
            for si in [-1, 1] {
                for sj in [-1, 1] {
                    out.insert(&unit(dim, i, si) + &unit(dim, j, sj));
                }
            }
        }
    }
}

/// All 240 roots of E8 in the even coordinate system.
fn e8_roots() -> BTreeSet<RationalVector> {
    let mut out = BTreeSet::new();
    pm_pairs(8, 8, &mut out);
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            let c = (0..8)
                .map(|k| if mask >> k & 1 == 1 { rat(-1, 2) } else { rat(1, 2) })
                .collect();
            out.insert(RationalVector::new(c));
        }
    }
    out
}

fn oracle_roots(family: Family, n: usize) -> BTreeSet<RationalVector> {
    let mut out = BTreeSet::new();
    match family {
        Family::A => {
            for i in 0..=n {
                for j in 0..=n {
                    if i != j {
                        out.insert(&unit(n + 1, i, 1) + &unit(n + 1, j, -1));
                    }
                }
            }
        }
        Family::B | Family::C | Family::D => {
            pm_pairs(n, n, &mut out);
            let short = match family {
                Family::B => 1,
                Family::C => 2,
                _ => 0,
            };
            if short > 0 {
                for i in 0..n {
                    out.insert(unit(n, i, short));
                    out.insert(unit(n, i, -short));
                }
            }
        }
        Family::E7 => {
            let a = &unit(8, 6, 1) + &unit(8, 7, 1);
            out = e8_roots().into_iter().filter(|r| r.dot(&a).is_zero()).collect();
        }
        Family::E6 => {
            let a = &unit(8, 6, 1) + &unit(8, 7, 1);
            let b = &unit(8, 5, 1) + &unit(8, 7, 1);
            out = e8_roots()
                .into_iter()
                .filter(|r| r.dot(&a).is_zero() && r.dot(&b).is_zero())
                .collect();
        }
    }
    out
}

const SUPPORTED: &[(Family, usize)] = &[
    (Family::A, 1),
    (Family::A, 3),
    (Family::A, 5),
    (Family::A, 7),
    (Family::B, 2),
    (Family::B, 3),
    (Family::B, 6),
    (Family::C, 3),
    (Family::D, 3),
    (Family::D, 4),
    (Family::D, 6),
    (Family::E6, 6),
    (Family::E7, 7),
];

#[test]
fn roots_match_explicit_lists() {
    for &(f, n) in SUPPORTED {
        let rs = RootSystem::new(f, n).unwrap();
        let got: BTreeSet<RationalVector> = rs.roots().into_iter().collect();
        assert_eq!(got, oracle_roots(f, n), "{f}{n}");
        assert_eq!(rs.positive_roots().len() * 2, got.len());
    }
}

#[test]
fn classical_root_counts() {
    let count = |f, n| RootSystem::new(f, n).unwrap().positive_roots().len();
    for n in 1..=7 {
        assert_eq!(count(Family::A, n), n * (n + 1) / 2);
    }
    for n in 2..=6 {
        assert_eq!(count(Family::B, n), n * n);
    }
    for n in 3..=6 {
        assert_eq!(count(Family::D, n), n * (n - 1));
    }
    assert_eq!(count(Family::C, 3), 9);
    assert_eq!(count(Family::E6, 6), 36);
    assert_eq!(count(Family::E7, 7), 63);
}

#[test]
fn unsupported_pairs() {
    assert!(RootSystem::new(Family::A, 8).is_err());
    assert!(RootSystem::new(Family::C, 4).is_err());
    assert!(RootSystem::new(Family::E6, 7).is_err());
    assert!(RootSystem::new(Family::B, 1).is_err());
}

#[test]
fn fundamental_weights_are_dual_to_simple_coroots() {
    for &(f, n) in SUPPORTED {
        let rs = RootSystem::new(f, n).unwrap();
        for i in 1..=n {
            let w = rs.fundamental_weight(i).unwrap();
            for (j, a) in rs.simple_roots().iter().enumerate() {
                let expected = if j + 1 == i {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                assert_eq!(
                    coroot_pairing(&w.0, a).unwrap(),
                    expected,
                    "{f}{n} ω{i} α{}",
                    j + 1
                );
            }
        }
        assert!(rs.fundamental_weight(0).is_err());
        assert!(rs.fundamental_weight(n + 1).is_err());
    }
}

/// Closure under reflection in every root.
fn brute_orbit(rs: &RootSystem, w: &RationalVector) -> BTreeSet<RationalVector> {
    let roots = rs.roots();
    let mut seen = BTreeSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(x) = queue.pop_front() {
        for a in &roots {
            let y = reflect(&x, a).unwrap();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn orbit(f: Family, n: usize, i: usize) -> (RootSystem, Vec<Weight>) {
    let rs = RootSystem::new(f, n).unwrap();
    let w = rs.fundamental_weight(i).unwrap();
    let o = rs.weyl_orbit(&w).unwrap();
    (rs, o)
}

#[test]
fn catalogue_orbits() {
    for (f, n, i, size) in [
        (Family::A, 5, 3, 20),
        (Family::C, 3, 3, 8),
        (Family::D, 6, 6, 32),
        (Family::E7, 7, 7, 56),
        (Family::E6, 6, 6, 27),
        (Family::E6, 6, 1, 27),
    ] {
        let (rs, o) = orbit(f, n, i);
        assert_eq!(o.len(), size, "{f}{n} ω{i}");
        let got: BTreeSet<RationalVector> = o.iter().map(|w| w.0.clone()).collect();
        assert_eq!(got, brute_orbit(&rs, &o[0].0));
        let norm = o[0].0.dot(&o[0].0);
        assert!(o.iter().all(|w| w.0.dot(&w.0) == norm));
        for w in &o {
            for a in rs.simple_roots() {
                assert!(got.contains(&reflect(&w.0, a).unwrap()));
            }
        }
        let sorted: Vec<&Weight> = {
            let mut s: Vec<&Weight> = o.iter().collect();
            s.sort();
            s
        };
        assert!(sorted.iter().zip(&o).all(|(a, b)| *a == b));
    }
}

#[test]
fn explicit_orbits() {
    let (_, o) = orbit(Family::C, 3, 3);
    let mut expected = BTreeSet::new();
    for s in 0..8 {
        let c: Vec<i64> = (0..3).map(|k| if s >> k & 1 == 1 { -1 } else { 1 }).collect();
        expected.insert(RationalVector::from_ints(&c));
    }
    assert_eq!(o.iter().map(|w| w.0.clone()).collect::<BTreeSet<_>>(), expected);

    let (_, o) = orbit(Family::A, 5, 3);
    let mut expected = BTreeSet::new();
    for i in 0..6 {
        for j in i + 1..6 {
            for k in j + 1..6 {
                let mut c = vec![0i64; 6];
                c[i] = 1;
                c[j] = 1;
                c[k] = 1;
                expected.insert(RationalVector::from_ints(&c));
            }
        }
    }
    assert_eq!(o.iter().map(|w| w.0.clone()).collect::<BTreeSet<_>>(), expected);

    let (_, o) = orbit(Family::D, 6, 6);
    for w in &o {
        assert!(w.0.iter().all(|c| *c == rat(1, 2) || *c == rat(-1, 2)));
        let minus = w.0.iter().filter(|c| **c < Rational::zero()).count();
        assert_eq!(minus % 2, 0);
    }
}

#[test]
fn spec_pairings_and_reflections() {
    let w = RationalVector::from_ints(&[1, 1, 1]);
    assert_eq!(
        coroot_pairing(&w, &RationalVector::from_ints(&[2, 0, 0])).unwrap(),
        int(1)
    );
    assert_eq!(
        coroot_pairing(&w, &RationalVector::from_ints(&[1, -1, 0])).unwrap(),
        int(0)
    );
    assert_eq!(
        coroot_pairing(&w, &RationalVector::from_ints(&[1, 1, 0])).unwrap(),
        int(2)
    );
    assert!(coroot_pairing(&w, &RationalVector::zeros(3)).is_err());
    assert_eq!(
        reflect(&w, &RationalVector::from_ints(&[2, 0, 0])).unwrap(),
        RationalVector::from_ints(&[-1, 1, 1])
    );
    let w6 = RationalVector::from_ints(&[1, 1, 1, 0, 0, 0]);
    assert_eq!(
        reflect(&w6, &RationalVector::from_ints(&[0, 0, 1, -1, 0, 0])).unwrap(),
        RationalVector::from_ints(&[1, 1, 0, 1, 0, 0])
    );
    let rs = RootSystem::new(Family::E7, 7).unwrap();
    let x = rs.fundamental_weight(7).unwrap().0;
    for a in rs.roots() {
        assert_eq!(reflect(&reflect(&x, &a).unwrap(), &a).unwrap(), x);
    }
}

#[test]
fn spec_fundamental_weights() {
    let rs = RootSystem::new(Family::C, 3).unwrap();
    assert_eq!(
        rs.fundamental_weight(3).unwrap().0,
        RationalVector::from_ints(&[1, 1, 1])
    );
    let rs = RootSystem::new(Family::D, 6).unwrap();
    assert_eq!(
        rs.fundamental_weight(6).unwrap().0,
        RationalVector::new(vec![rat(1, 2); 6])
    );
    let rs = RootSystem::new(Family::C, 3).unwrap();
    for r in [[2, 0, 0], [0, 2, 0], [0, 0, 2]] {
        assert!(rs.is_root(&RationalVector::from_ints(&r)));
    }
}

#[test]
fn orbit_rejects_non_weights() {
    let rs = RootSystem::new(Family::C, 3).unwrap();
    let w = Weight(RationalVector::new(vec![rat(1, 2), int(0), int(0)]));
    assert!(rs.weyl_orbit(&w).is_err());
}
