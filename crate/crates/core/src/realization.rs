//! Numerical shadow of the geometric realization of a bispecial transformation of type
//! `(m₋, m₊)`: intersection tables of `P`, `P₋`, `P₊` and `X` on the common basis
//! `(H, Y₋, Y₊)`, their Nef, Mori and movable cones, the chamber decomposition of `Mov(X)`
//! and the contractions of `X`.
//!
//! The divisors `W±` on `P`, `P±` are identified with their strict transforms `Y±` on `X`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::lattice::rational::serialize_rational;
use crate::lattice::{dual_cone, int, Rational, RationalCone, RationalVector};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BispecialType {
    pub m_minus: u32,
    pub m_plus: u32,
    /// Codimension of the fundamental locus `Z₋ ⊂ Y₋`.
    pub r_minus: u32,
    pub r_plus: u32,
}

impl BispecialType {
    pub fn new(m_minus: u32, m_plus: u32, r_minus: u32, r_plus: u32) -> Result<Self, Error> {
        if m_minus == 0 || m_plus == 0 || u64::from(m_minus) * u64::from(m_plus) <= 1 {
            return Err(Error::NotBispecial(format!(
                "type ({m_minus},{m_plus}) needs m₋, m₊ ≥ 1 and m₋m₊ > 1"
            )));
        }
        if r_minus < 2 || r_plus < 2 {
            return Err(Error::NotBispecial(format!(
                "codimensions ({r_minus},{r_plus}) must be at least 2"
            )));
        }
        Ok(Self {
            m_minus,
            m_plus,
            r_minus,
            r_plus,
        })
    }

    /// Type `(m₋, m₊)` with both fundamental loci of codimension 2.
    pub fn of_type(m_minus: u32, m_plus: u32) -> Result<Self, Error> {
        Self::new(m_minus, m_plus, 2, 2)
    }

    pub fn mu_minus(&self) -> i64 {
        i64::from(self.m_minus) - 1
    }

    pub fn mu_plus(&self) -> i64 {
        i64::from(self.m_plus) - 1
    }

    fn swapped(&self) -> Self {
        Self {
            m_minus: self.m_plus,
            m_plus: self.m_minus,
            r_minus: self.r_plus,
            r_plus: self.r_minus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variety {
    P,
    PMinus,
    PPlus,
    X,
}

impl Variety {
    pub const ALL: [Variety; 4] = [Variety::P, Variety::PMinus, Variety::PPlus, Variety::X];

    pub fn name(&self) -> &'static str {
        match self {
            Variety::P => "P",
            Variety::PMinus => "P-",
            Variety::PPlus => "P+",
            Variety::X => "X",
        }
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Variety {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Invariant curve classes of the realization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurveName {
    EMinus,
    EPlus,
    Gamma,
    DeltaMinus,
    DeltaPlus,
    GammaMinus,
    GammaPlus,
    Epsilon,
    EllMinus,
    EllPlus,
}

impl CurveName {
    pub fn name(&self) -> &'static str {
        match self {
            CurveName::EMinus => "e-",
            CurveName::EPlus => "e+",
            CurveName::Gamma => "gamma",
            CurveName::DeltaMinus => "delta-",
            CurveName::DeltaPlus => "delta+",
            CurveName::GammaMinus => "gamma-",
            CurveName::GammaPlus => "gamma+",
            CurveName::Epsilon => "epsilon",
            CurveName::EllMinus => "ell-",
            CurveName::EllPlus => "ell+",
        }
    }

    /// The same curve after exchanging the roles of `−` and `+`.
    pub fn mirrored(&self) -> Self {
        use CurveName::*;
        match self {
            EMinus => EPlus,
            EPlus => EMinus,
            DeltaMinus => DeltaPlus,
            DeltaPlus => DeltaMinus,
            GammaMinus => GammaPlus,
            GammaPlus => GammaMinus,
            EllMinus => EllPlus,
            EllPlus => EllMinus,
            Gamma => Gamma,
            Epsilon => Epsilon,
        }
    }
}

impl fmt::Display for CurveName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for CurveName {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Intersection numbers of curve classes with `(H, Y₋, Y₊)`, in table order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveClassTable {
    pub variety: Variety,
    pub rows: Vec<(CurveName, RationalVector)>,
}

impl CurveClassTable {
    pub fn row(&self, name: CurveName) -> Option<&RationalVector> {
        self.rows.iter().find(|(n, _)| *n == name).map(|(_, v)| v)
    }
}

fn v3(h: i64, ym: i64, yp: i64) -> RationalVector {
    RationalVector::from_ints(&[h, ym, yp])
}

fn curve_row(t: &BispecialType, c: CurveName) -> RationalVector {
    use CurveName::*;
    let (mm, mp) = (t.mu_minus(), t.mu_plus());
    match c {
        EMinus => v3(0, -1, 0),
        EPlus => v3(0, 0, -1),
        Gamma => v3(1, 1, 1),
        DeltaMinus => v3(0, 1, 0),
        DeltaPlus => v3(0, 0, 1),
        GammaMinus => v3(1, 0, 1),
        GammaPlus => v3(1, 1, 0),
        Epsilon => v3(1, 0, 0),
        EllMinus => v3(1, -mm, 0),
        EllPlus => v3(1, 0, -mp),
    }
}

fn table_names(t: &BispecialType, variety: Variety) -> Vec<CurveName> {
    use CurveName::*;
    let (mm, mp) = (t.mu_minus(), t.mu_plus());
    match variety {
        Variety::P => vec![EMinus, EPlus, Gamma],
        Variety::PMinus if mm > 0 => vec![DeltaMinus, EPlus, EllMinus, GammaMinus],
        Variety::PMinus => vec![DeltaMinus, EPlus, GammaMinus],
        Variety::PPlus if mp > 0 => vec![DeltaPlus, EMinus, EllPlus, GammaPlus],
        Variety::PPlus => vec![DeltaPlus, EMinus, GammaPlus],
        Variety::X => vec![
            DeltaMinus, GammaMinus, DeltaPlus, GammaPlus, Epsilon, Gamma, EllMinus, EllPlus,
        ],
    }
}

/// Curve classes of each variety against `(H, Y₋, Y₊)`.
pub fn build_tables(t: &BispecialType) -> BTreeMap<Variety, CurveClassTable> {
    Variety::ALL
        .iter()
        .map(|&variety| {
            let rows = table_names(t, variety)
                .into_iter()
                .map(|c| (c, curve_row(t, c)))
                .collect();
            (variety, CurveClassTable { variety, rows })
        })
        .collect()
}

/// Curves spanning the Mori cone.
pub fn mori_curves(t: &BispecialType, variety: Variety) -> Vec<CurveName> {
    use CurveName::*;
    let (mm, mp) = (t.mu_minus(), t.mu_plus());
    match variety {
        Variety::X => match (mm > 0, mp > 0) {
            (true, true) => vec![DeltaMinus, EllPlus, EllMinus, DeltaPlus],
            (true, false) => vec![DeltaMinus, EllMinus, DeltaPlus],
            _ => vec![DeltaMinus, EllPlus, DeltaPlus],
        },
        other => table_names(t, other),
    }
}

/// Curves on `X` moving in codimension at least one; `Mov(X)` is their dual.
pub fn movable_curves(t: &BispecialType) -> Vec<CurveName> {
    use CurveName::*;
    let (mm, mp) = (t.mu_minus(), t.mu_plus());
    let mut out = vec![Gamma, GammaMinus];
    if mm > 0 {
        out.push(EllMinus);
    }
    if mp > 0 {
        out.push(EllPlus);
    }
    out.push(GammaPlus);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeBundle {
    pub nef: RationalCone,
    pub mori: RationalCone,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mov: Option<RationalCone>,
}

fn rows_of(t: &BispecialType, names: &[CurveName]) -> Vec<RationalVector> {
    names.iter().map(|&c| curve_row(t, c)).collect()
}

/// Nef and Mori cones of `P`, `P±`, `X`, and `Mov(X)`.
pub fn cones(t: &BispecialType) -> Result<BTreeMap<Variety, ConeBundle>, Error> {
    Variety::ALL
        .iter()
        .map(|&variety| {
            let mori = RationalCone::from_generators(&rows_of(t, &mori_curves(t, variety)))?;
            let nef = mori.dual();
            let mov = if variety == Variety::X {
                Some(dual_cone(&rows_of(t, &movable_curves(t)))?)
            } else {
                None
            };
            Ok((variety, ConeBundle { nef, mori, mov }))
        })
        .collect()
}

/// Cone generators written out directly from the closed formulas, used to audit
/// [`cones`].
pub mod expected {
    use super::*;
    use crate::lattice::rat;

    fn q(h: Rational, ym: Rational, yp: Rational) -> RationalVector {
        RationalVector::new(vec![h, ym, yp]).primitive()
    }

    fn mu(t: &BispecialType) -> (i64, i64) {
        (t.mu_minus(), t.mu_plus())
    }

    /// Nef generators as `H + a Y₋ + b Y₊` (with `W± = Y±`), primitive.
    pub fn nef(t: &BispecialType, variety: Variety) -> Vec<RationalVector> {
        let (mm, mp) = mu(t);
        let (one, zero) = (int(1), int(0));
        let h = || q(one.clone(), zero.clone(), zero.clone());
        let mut out = match variety {
            Variety::P => vec![
                h(),
                q(one.clone(), -&one, zero.clone()),
                q(one.clone(), zero.clone(), -&one),
            ],
            Variety::PMinus if mm > 0 => vec![
                h(),
                q(one.clone(), zero.clone(), -&one),
                q(one.clone(), rat(1, mm), zero.clone()),
                q(one.clone(), rat(1, mm), -&one),
            ],
            Variety::PMinus => vec![
                h(),
                q(one.clone(), zero.clone(), -&one),
                q(zero.clone(), one.clone(), zero.clone()),
            ],
            Variety::PPlus if mp > 0 => vec![
                h(),
                q(one.clone(), -&one, zero.clone()),
                q(one.clone(), zero.clone(), rat(1, mp)),
                q(one.clone(), -&one, rat(1, mp)),
            ],
            Variety::PPlus => vec![
                h(),
                q(one.clone(), -&one, zero.clone()),
                q(zero.clone(), zero.clone(), one.clone()),
            ],
            Variety::X => match (mm > 0, mp > 0) {
                (true, true) => vec![
                    h(),
                    q(one.clone(), rat(1, mm), zero.clone()),
                    q(one.clone(), zero.clone(), rat(1, mp)),
                    q(one.clone(), rat(1, mm), rat(1, mp)),
                ],
                (true, false) => vec![
                    h(),
                    q(one.clone(), rat(1, mm), zero.clone()),
                    q(zero.clone(), zero.clone(), one.clone()),
                ],
                _ => vec![
                    h(),
                    q(one.clone(), zero.clone(), rat(1, mp)),
                    q(zero.clone(), one.clone(), zero.clone()),
                ],
            },
        };
        out.sort();
        out
    }

    /// Mori generators, primitive and sorted.
    pub fn mori(t: &BispecialType, variety: Variety) -> Vec<RationalVector> {
        let mut out: Vec<RationalVector> = mori_curves(t, variety)
            .iter()
            .map(|&c| curve_row(t, c).primitive())
            .collect();
        out.sort();
        out
    }

    /// Generators of `Mov(X)`.
    pub fn mov(t: &BispecialType) -> Vec<RationalVector> {
        let (mm, mp) = mu(t);
        let (one, zero) = (int(1), int(0));
        let mut out = vec![
            q(one.clone(), -&one, zero.clone()),
            q(one.clone(), zero.clone(), -&one),
        ];
        match (mm > 0, mp > 0) {
            (true, true) => {
                out.push(q(one.clone(), rat(1, mm), -&one));
                out.push(q(one.clone(), rat(1, mm), rat(1, mp)));
                out.push(q(one.clone(), -&one, rat(1, mp)));
            }
            (true, false) => {
                out.push(q(one.clone(), rat(1, mm), -&one));
                out.push(q(zero.clone(), zero.clone(), one.clone()));
            }
            _ => {
                out.push(q(one.clone(), -&one, rat(1, mp)));
                out.push(q(zero.clone(), one.clone(), zero.clone()));
            }
        }
        out.sort();
        out
    }
}

/// One comparison between a computed cone and its closed-form generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub variety: Variety,
    pub cone: &'static str,
    pub computed: Vec<RationalVector>,
    pub expected: Vec<RationalVector>,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableCheck {
    pub entries: Vec<TableEntry>,
    pub all_match: bool,
}

/// Compares every Nef, Mori and movable cone with the closed-form generators, and checks
/// that the dual of each closed-form Nef cone is the computed Mori cone.
pub fn table_check(t: &BispecialType) -> Result<TableCheck, Error> {
    let bundles = cones(t)?;
    let mut entries = Vec::new();
    let mut push = |variety, cone, computed: Vec<RationalVector>, expected: Vec<RationalVector>| {
        entries.push(TableEntry {
            variety,
            cone,
            matches: computed == expected,
            computed,
            expected,
        });
    };
    for (&variety, b) in &bundles {
        let gens = |c: &RationalCone| c.generators().to_vec();
        push(variety, "nef", gens(&b.nef), expected::nef(t, variety));
        push(variety, "mori", gens(&b.mori), expected::mori(t, variety));
        let from_nef = dual_cone(&expected::nef(t, variety))?;
        push(variety, "mori_from_nef", gens(&b.mori), gens(&from_nef));
        if let Some(mov) = &b.mov {
            push(variety, "mov", gens(mov), expected::mov(t));
        }
    }
    let all_match = entries.iter().all(|e| e.matches);
    Ok(TableCheck { entries, all_match })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChamberViolation {
    pub check: String,
    pub witness: Option<RationalVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChamberCheck {
    pub samples: usize,
    pub seed: u64,
    pub nef_in_mov: bool,
    pub interiors_disjoint: bool,
    pub samples_covered: usize,
    pub violations: Vec<ChamberViolation>,
}

impl ChamberCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that the four Nef cones lie in `Mov(X)`, have pairwise disjoint interiors, and
/// cover `samples` random points of `Mov(X)` drawn deterministically from `seed`.
pub fn chamber_check(t: &BispecialType, samples: usize, seed: u64) -> Result<ChamberCheck, Error> {
    let bundles = cones(t)?;
    let mov = bundles[&Variety::X].mov.clone().expect("X carries Mov");
    let nefs: Vec<(Variety, &RationalCone)> = bundles.iter().map(|(v, b)| (*v, &b.nef)).collect();
    let mut violations = Vec::new();

    let mut nef_in_mov = true;
    for (v, nef) in &nefs {
        if !mov.contains_cone(nef)? {
            nef_in_mov = false;
            let witness = nef
                .generators()
                .iter()
                .find(|g| !mov.contains(g, false).unwrap_or(false))
                .cloned();
            violations.push(ChamberViolation {
                check: format!("Nef({v}) ⊆ Mov(X)"),
                witness,
            });
        }
    }

    let mut interiors_disjoint = true;
    for (i, (va, a)) in nefs.iter().enumerate() {
        for (vb, b) in &nefs[i + 1..] {
            if a.interiors_meet(b)? {
                interiors_disjoint = false;
                let meet = a.intersection(b)?;
                let witness = meet
                    .generators()
                    .iter()
                    .fold(RationalVector::zeros(3), |acc, g| &acc + g);
                violations.push(ChamberViolation {
                    check: format!("interiors of Nef({va}) and Nef({vb}) meet"),
                    witness: Some(witness),
                });
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens = mov.generators();
    let mut samples_covered = 0;
    for _ in 0..samples {
        let point = gens.iter().fold(RationalVector::zeros(3), |acc, g| {
            let c = int(rng.gen_range(0..=16));
            &acc + &g.scale(&c)
        });
        let mut covered = false;
        for (_, nef) in &nefs {
            if nef.contains(&point, false)? {
                covered = true;
                break;
            }
        }
        if covered {
            samples_covered += 1;
        } else {
            violations.push(ChamberViolation {
                check: "sample of Mov(X) outside every Nef cone".into(),
                witness: Some(point),
            });
        }
    }

    Ok(ChamberCheck {
        samples,
        seed,
        nef_in_mov,
        interiors_disjoint,
        samples_covered,
        violations,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ContractionCase {
    /// `μ₋μ₊ > 0`: both extremal components contract to points.
    #[serde(rename = "mu_minus_mu_plus_positive")]
    BothPositive,
    /// `μ₊ = 0` (after exchanging roles if `μ₋ = 0`).
    #[serde(rename = "mu_plus_zero")]
    OneZero,
}

/// Lower bound `-K_X · curve ≥ at_least`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KBound {
    pub curve: CurveName,
    pub at_least: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionVerdict {
    pub case: ContractionCase,
    /// Whether `−` and `+` were exchanged to reach the case `μ₊ = 0`; curve names below are
    /// in the original labelling.
    pub swapped: bool,
    pub supporting_divisor: RationalVector,
    pub contracted_rays: Vec<CurveName>,
    /// Divisor supporting the fiber type contraction onto `P¹` (case `μ₊ = 0`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiber_divisor: Option<RationalVector>,
    pub target_picard_rank: u32,
    pub smooth: bool,
    #[serde(serialize_with = "serialize_rational")]
    pub bandwidth_l_gamma: Rational,
    /// Degree of the supporting divisor on the chain `δ₋ + ε + δ₊`.
    #[serde(serialize_with = "serialize_rational")]
    pub chain_degree: Rational,
    pub k_negativity_bounds: Vec<KBound>,
}

fn zero_set(t: &BispecialType, d: &RationalVector) -> Result<Vec<CurveName>, Error> {
    let mut out = Vec::new();
    for c in mori_curves(t, Variety::X) {
        let x = d.dot(&curve_row(t, c));
        if x.is_negative() {
            return Err(Error::Verification(format!("{d} is negative on {c}")));
        }
        if x.is_zero() {
            out.push(c);
        }
    }
    out.sort();
    Ok(out)
}

/// Contractions of `X` supported on the face of `NE(X)` spanned by the `ℓ` classes.
pub fn contraction_analysis(t: &BispecialType) -> Result<ContractionVerdict, Error> {
    let swapped = t.mu_plus() > 0 && t.mu_minus() == 0;
    let s = if swapped { t.swapped() } else { *t };
    let (mm, mp) = (s.mu_minus(), s.mu_plus());
    if mm == 0 {
        return Err(Error::NotBispecial("μ₋ = μ₊ = 0".into()));
    }
    let nef_x = cones(&s)?[&Variety::X].nef.clone();
    let gamma = curve_row(&s, CurveName::Gamma);
    let chain = &(&curve_row(&s, CurveName::DeltaMinus) + &curve_row(&s, CurveName::Epsilon))
        + &curve_row(&s, CurveName::DeltaPlus);
    let mut k_negativity_bounds = vec![
        KBound {
            curve: CurveName::EllMinus,
            at_least: s.r_minus,
        },
        KBound {
            curve: CurveName::EllPlus,
            at_least: s.r_plus,
        },
    ];
    let (case, divisor, expected_zero, fiber_divisor, rank, smooth) = if mp > 0 {
        let mu = mm.lcm(&mp);
        let d = v3(mu, mu / mm, mu / mp);
        let mut zero = vec![CurveName::EllMinus, CurveName::EllPlus];
        zero.sort();
        (
            ContractionCase::BothPositive,
            d,
            zero,
            None,
            1,
            mm == 1 && mp == 1,
        )
    } else {
        let d = v3(mm, 1, 1);
        let y_plus = v3(0, 0, 1);
        if !nef_x.contains(&y_plus, false)? {
            return Err(Error::Verification("Y₊ is not nef".into()));
        }
        if y_plus.dot(&curve_row(&s, CurveName::DeltaPlus)) != int(1) {
            return Err(Error::Verification("Y₊ · δ₊ ≠ 1".into()));
        }
        if zero_set(&s, &y_plus)? != vec![CurveName::DeltaMinus, CurveName::EllMinus] {
            return Err(Error::Verification("Y₊ does not vanish exactly off δ₊".into()));
        }
        (
            ContractionCase::OneZero,
            d,
            vec![CurveName::EllMinus],
            Some(y_plus),
            2,
            mm == 1,
        )
    };
    if !nef_x.contains(&divisor, false)? {
        return Err(Error::Verification(format!("{divisor} is not nef on X")));
    }
    let zero = zero_set(&s, &divisor)?;
    if zero != expected_zero {
        return Err(Error::Verification(format!(
            "{divisor} vanishes on {zero:?}, expected {expected_zero:?}"
        )));
    }
    let relabel = |c: CurveName| if swapped { c.mirrored() } else { c };
    let mut contracted_rays: Vec<CurveName> = zero.into_iter().map(relabel).collect();
    contracted_rays.sort();
    for b in &mut k_negativity_bounds {
        b.curve = relabel(b.curve);
    }
    k_negativity_bounds.sort_by_key(|b| b.curve);
    let mirror = |d: RationalVector| {
        if swapped {
            RationalVector::new(vec![d[0].clone(), d[2].clone(), d[1].clone()])
        } else {
            d
        }
    };
    Ok(ContractionVerdict {
        case,
        swapped,
        bandwidth_l_gamma: divisor.dot(&gamma),
        chain_degree: divisor.dot(&chain),
        supporting_divisor: mirror(divisor),
        contracted_rays,
        fiber_divisor: fiber_divisor.map(mirror),
        target_picard_rank: rank,
        smooth,
        k_negativity_bounds,
    })
}
