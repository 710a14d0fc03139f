//! One PASS/FAIL line per acceptance criterion; run with `--nocapture` to see them.

use std::process::Command;

use cstar_core::action::ActionReport;
use cstar_core::lattice::{dual_cone, int, rat, RationalCone, RationalVector};
use cstar_core::realization::{
    chamber_check, contraction_analysis, table_check, BispecialType, ContractionCase,
};
use cstar_core::rhaction::{catalog, CatalogEntry};
use cstar_core::toricaction::{git_chambers, preset, toric_analyze, toric_orbit_graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<(), String>;
type Criterion = fn() -> Check;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn cstar_json(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_cstar"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {:?}", out.status.code()));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn criterion_1() -> Check {
    let v = cstar_json(&["toric", "cube", "--lambda", "1,1,1", "--chambers", "--summary"])?;
    let p = &v["payload"];
    let r: Vec<&Value> = p["report"]["components"]
        .as_array()
        .ok_or("no components")?
        .iter()
        .collect();
    let points: usize = r
        .iter()
        .map(|c| c["weights"].as_array().map_or(0, Vec::len))
        .sum();
    ensure(points == 8, || format!("{points} fixed points"))?;
    let mut per_level = [0usize; 4];
    for c in &r {
        let level = c["level"].as_u64().ok_or("level")? as usize;
        *per_level.get_mut(level).ok_or("level out of range")? += c["weights"].as_array().map_or(0, Vec::len);
    }
    ensure(per_level == [1, 3, 3, 1], || {
        format!("multiplicities {per_level:?}")
    })?;
    ensure(p["report"]["bandwidth"] == 3, || "bandwidth".into())?;
    ensure(p["report"]["criticality"] == 3, || "criticality".into())?;
    ensure(p["report"]["equalized"] == true, || "equalized".into())?;
    let counts: Vec<u64> = p["chambers"]["chambers"]
        .as_array()
        .ok_or("no chambers")?
        .iter()
        .filter_map(|c| c["vertex_count"].as_u64())
        .collect();
    ensure(counts == [3, 6, 3], || format!("slice vertex counts {counts:?}"))?;
    ensure(
        p["birational_summary"]["combinatorially_isomorphic"] == true,
        || "extremal quotients".into(),
    )
}

fn criterion_2() -> Check {
    for (name, dim, mult, inner_dim, degree) in [
        ("C3(3)", 6, 3, 2, Some(2)),
        ("A5(3)", 9, 9, 4, Some(1)),
        ("D6(6)", 15, 15, 8, None),
        ("E7(7)", 27, 27, 16, None),
    ] {
        let r = catalog(name)
            .and_then(|e| e.analyze())
            .map_err(|e| format!("{name}: {e}"))?;
        ensure(r.bandwidth == 3 && r.equalized && r.isolated_extremes, || {
            format!("{name}: {r:?}")
        })?;
        ensure(r.variety_dim == dim, || {
            format!("{name}: dimension {}", r.variety_dim)
        })?;
        ensure(r.weights_per_level() == [1, mult, mult, 1], || {
            format!("{name}: {:?}", r.weights_per_level())
        })?;
        for c in r.inner_components() {
            ensure(c.dim == inner_dim, || format!("{name}: inner dim {}", c.dim))?;
            if let Some(d) = degree {
                ensure(
                    !c.internal_edge_degrees.is_empty() && c.internal_edge_degrees.iter().all(|&x| x == d),
                    || format!("{name}: internal degrees {:?}", c.internal_edge_degrees),
                )?;
            }
        }
    }
    Ok(())
}

fn criterion_3() -> Check {
    let r = catalog("P1xQ[4]")
        .and_then(|e| e.analyze())
        .map_err(|e| e.to_string())?;
    ensure(r.bandwidth == 3, || format!("bandwidth {}", r.bandwidth))?;
    for level in [1, 2] {
        let mut dims: Vec<usize> = r.components_at(level).map(|c| c.dim).collect();
        dims.sort_unstable();
        ensure(dims == [0, 2], || format!("level {level}: dims {dims:?}"))?;
    }
    Ok(())
}

const TYPES: [(u32, u32); 6] = [(2, 2), (2, 3), (3, 2), (4, 3), (2, 1), (3, 1)];

fn criterion_4() -> Check {
    for (a, b) in TYPES {
        let t = BispecialType::of_type(a, b).map_err(|e| e.to_string())?;
        let check = table_check(&t).map_err(|e| e.to_string())?;
        let bad: Vec<String> = check
            .entries
            .iter()
            .filter(|e| !e.matches)
            .map(|e| format!("{} {}", e.variety, e.cone))
            .collect();
        ensure(check.all_match && bad.is_empty(), || {
            format!("({a},{b}): {bad:?}")
        })?;
        for cone in ["nef", "mori", "mov"] {
            ensure(check.entries.iter().any(|e| e.cone == cone), || {
                format!("({a},{b}): no {cone}")
            })?;
        }
    }
    Ok(())
}

fn criterion_5() -> Check {
    for (k, (a, b)) in TYPES.into_iter().enumerate() {
        let t = BispecialType::of_type(a, b).map_err(|e| e.to_string())?;
        let c = chamber_check(&t, 1000, 2024 + k as u64).map_err(|e| e.to_string())?;
        ensure(
            c.passed() && c.samples_covered == 1000 && c.interiors_disjoint && c.nef_in_mov,
            || format!("({a},{b}): {:?}", c.violations),
        )?;
    }
    Ok(())
}

fn criterion_6() -> Check {
    let run = |a, b| {
        BispecialType::of_type(a, b)
            .and_then(|t| contraction_analysis(&t))
            .map_err(|e| e.to_string())
    };
    let v = run(2, 2)?;
    ensure(v.bandwidth_l_gamma == int(3) && v.smooth, || {
        format!("(2,2): {v:?}")
    })?;
    let v = run(3, 2)?;
    ensure(v.bandwidth_l_gamma == int(5) && !v.smooth, || {
        format!("(3,2): {v:?}")
    })?;
    let v = run(2, 1)?;
    ensure(
        v.case == ContractionCase::OneZero && v.target_picard_rank == 2 && v.smooth,
        || format!("(2,1): {v:?}"),
    )
}

fn check_report(r: &ActionReport, label: &str) -> Check {
    for c in &r.components {
        ensure(c.nu_plus + c.nu_minus + c.dim == r.variety_dim, || {
            format!(
                "{label}: level {} has nu+ {} nu- {} dim {}",
                c.level, c.nu_plus, c.nu_minus, c.dim
            )
        })?;
    }
    for c in r.inner_components() {
        ensure(c.nu_plus >= 1 && c.nu_minus >= 1, || {
            format!("{label}: inner level {}", c.level)
        })?;
    }
    Ok(())
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut cones = 0;
    while cones < 200 {
        let d = rng.gen_range(2..=4);
        let n = rng.gen_range(1..=7);
        let gens: Vec<RationalVector> = (0..n)
            .map(|_| RationalVector::from_ints(&(0..d).map(|_| rng.gen_range(-3..=3)).collect::<Vec<i64>>()))
            .collect();
        if gens.iter().all(RationalVector::is_zero) {
            continue;
        }
        cones += 1;
        let c = RationalCone::from_generators(&gens).map_err(|e| e.to_string())?;
        let dual = dual_cone(&gens).map_err(|e| e.to_string())?;
        let back = if dual.generators().is_empty() {
            RationalCone::whole_space(d)
        } else {
            dual_cone(dual.generators()).map_err(|e| e.to_string())?
        };
        ensure(back == c, || format!("double dual of {gens:?}"))?;
    }

    for name in [
        "C3(3)", "A5(3)", "D6(6)", "E7(7)", "P1xQ[4]", "P1xQ[5]", "P1xQ[6]",
    ] {
        let entry: CatalogEntry = catalog(name).map_err(|e| e.to_string())?;
        let r = entry.analyze().map_err(|e| e.to_string())?;
        check_report(&r, name)?;
        if r.equalized {
            let g = entry.orbit_graph().map_err(|e| e.to_string())?;
            ensure(g.curves.iter().all(|c| g.level_gap(c) == c.degree), || {
                format!("{name}: AM-FM")
            })?;
        }
    }

    let presets = [
        ("cube", vec![1, 1, 1]),
        ("cube", vec![1, 0, 0]),
        ("cube", vec![1, 1, 2]),
        ("projbundle13[3]", vec![1, 1, 1]),
        ("projbundle13[4]", vec![1, 1, 1, 1]),
        ("projbundle122[3]", vec![1, 1, 1]),
        ("projbundle122[4]", vec![1, 1, 1, 1]),
    ];
    let mut equalized = 0;
    for (name, lam) in presets {
        let label = format!("{name} {lam:?}");
        let t = preset(name).map_err(|e| e.to_string())?;
        let lambda = RationalVector::from_ints(&lam);
        let r = toric_analyze(&t, &lambda).map_err(|e| e.to_string())?;
        check_report(&r, &label)?;
        if r.equalized {
            equalized += 1;
            let g = toric_orbit_graph(&t, &lambda).map_err(|e| e.to_string())?;
            ensure(g.curves.iter().all(|c| g.level_gap(c) == c.degree), || {
                format!("{label}: AM-FM")
            })?;
        }
        let ch = git_chambers(&t, &lambda).map_err(|e| e.to_string())?;
        for c in &ch.chambers {
            let width = &c.upper - &c.lower;
            let at = |k: i64| {
                let tau = &ch.offset + &c.lower + &width * rat(k, 3);
                t.polytope().slice(&lambda, &tau).map_err(|e| e.to_string())
            };
            let (a, b) = (at(1)?, at(2)?);
            ensure(
                a.vertex_count() == b.vertex_count() && a.vertex_count() == c.vertex_count,
                || format!("{label}: chamber ({}, {})", c.lower, c.upper),
            )?;
        }
    }
    ensure(equalized >= 5, || format!("only {equalized} equalized presets"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, Criterion); 7] = [
        ("1 Cremona cube", criterion_1),
        ("2 catalogue", criterion_2),
        ("3 product P1 x Q4", criterion_3),
        ("4 cone tables", criterion_4),
        ("5 chamber decomposition", criterion_5),
        ("6 contractions", criterion_6),
        ("7 property suites", criterion_7),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(()) => println!("PASS {name}"),
            Err(why) => {
                println!("FAIL {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
