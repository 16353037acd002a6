//! Acceptance criteria 1-9. Runs without the libtest harness and prints one
//! PASS/FAIL line per criterion; exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use gauduchon_lab::catalog::{all_builtins, random_family};
use gauduchon_lab::connection::{ConnectionParams, Geometry};
use gauduchon_lab::hermitian::ManifoldSpec;
use gauduchon_lab::identities::{check_transfer, run_suite, SuiteConfig};
use gauduchon_lab::kahler_like::{
    exceptional_only, gauduchon_locus, is_kahler_like, plane_locus, real_curvature_oracle, LineLocus, DEFAULT_TOL,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SPECIAL: [(f64, f64); 7] = [
    (1.0, 0.0),
    (-1.0, 0.0),
    (0.0, 0.0),
    (-1.0, 2.0),
    (1.0 / 3.0, -2.0),
    (0.0, 1.0),
    (0.0, -1.0),
];

fn builtins() -> Vec<ManifoldSpec> {
    all_builtins().into_iter().map(|e| e.spec).collect()
}

fn nilpotent(seed: u64, count: usize) -> Vec<ManifoldSpec> {
    random_family(seed, "nilpotent3", count).unwrap()
}

fn perturbed(seed: u64, count: usize) -> Vec<ManifoldSpec> {
    random_family(seed, "metric_perturbed", count).unwrap()
}

fn geo(s: &ManifoldSpec) -> Geometry {
    Geometry::from_spec(s).unwrap()
}

/// Random admissible `(r, s)` with `s ∉ {0, ±1}`.
fn random_params(rng: &mut ChaCha8Rng) -> ConnectionParams {
    loop {
        let r = rng.random_range(-2.0..2.0);
        let s = rng.random_range(-2.5..2.5);
        if (s - 1.0f64).abs() > 0.05 && (s + 1.0f64).abs() > 0.05 && s.abs() > 0.05 {
            return ConnectionParams::new(r, s).unwrap();
        }
    }
}

fn kl(g: &Geometry, r: f64, s: f64) -> bool {
    is_kahler_like(g, ConnectionParams::new(r, s).unwrap(), DEFAULT_TOL).kahler_like
}

fn criterion_1() -> String {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut specs = builtins();
    specs.extend(nilpotent(101, 100));
    let mut worst: f64 = 0.0;
    let mut checks = 0;
    for s in &specs {
        let g = geo(s);
        for _ in 0..10 {
            let r = rng.random_range(-3.0..3.0);
            let r2 = rng.random_range(-3.0..3.0);
            for rep in check_transfer(&g, r, r2, 1e-10) {
                worst = worst.max(rep.residual);
                checks += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    assert!(worst < 1e-10, "max transfer residual {worst:e}");
    assert!(secs < 30.0, "took {secs:.1} s");
    format!("{} specs, {checks} checks, max residual {worst:.2e}, {secs:.2} s", specs.len())
}

fn criterion_2() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut specs = nilpotent(202, 70);
    specs.extend(perturbed(203, 30));
    let mut worst: f64 = 0.0;
    let mut kl_true = 0;
    for s in &specs {
        let g = geo(s);
        let mut pts: Vec<ConnectionParams> = (0..10).map(|_| random_params(&mut rng)).collect();
        // the Strominger pair is a Ψ-orbit with non-trivial verdicts
        pts[0] = ConnectionParams::new(-1.0, 2.0).unwrap();
        for p in pts {
            let q = p.dual().unwrap();
            let a = g.curvature(p);
            let b = g.curvature(q);
            worst = worst.max(a.theta1.sub(&b.theta1).max_norm());
            worst = worst.max(a.theta2.add(&b.theta2).max_norm());
            let ka = is_kahler_like(&g, p, DEFAULT_TOL).kahler_like;
            let kb = is_kahler_like(&g, q, DEFAULT_TOL).kahler_like;
            assert_eq!(ka, kb, "{} at {p}", s.name);
            kl_true += ka as usize;
        }
    }
    assert!(worst < 1e-12, "max block difference {worst:e}");
    format!("{} specs x 10 points, max block difference {worst:.2e}, {kl_true} Kähler-like pairs", specs.len())
}

fn criterion_3() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut pool = builtins();
    pool.extend(nilpotent(303, 20));
    pool.extend(perturbed(304, 10));
    let geos: Vec<Geometry> = pool.iter().map(geo).collect();
    let (mut agree, mut both_true) = (0, 0);
    for _ in 0..200 {
        let g = &geos[rng.random_range(0..geos.len())];
        let p = if rng.random_bool(0.5) {
            let (r, s) = SPECIAL[rng.random_range(0..SPECIAL.len())];
            ConnectionParams::new(r, s).unwrap()
        } else {
            random_params(&mut rng)
        };
        let a = is_kahler_like(g, p, DEFAULT_TOL).kahler_like;
        let b = real_curvature_oracle(g, p, DEFAULT_TOL).kahler_like;
        assert_eq!(a, b, "disagreement at {p}");
        agree += 1;
        both_true += a as usize;
    }
    format!("{agree}/200 draws agree ({both_true} Kähler-like)")
}

fn criterion_4() -> String {
    let mut specs = builtins();
    specs.extend(nilpotent(404, 70));
    specs.extend(perturbed(405, 30));
    let mut all_true = 0;
    for s in &specs {
        let g = geo(s);
        let v = [kl(&g, -1.0, 0.0), kl(&g, -1.0, 2.0), kl(&g, 1.0 / 3.0, -2.0)];
        assert!(v[0] == v[1] && v[1] == v[2], "{}: {v:?}", s.name);
        all_true += v[0] as usize;
    }
    let hopf = geo(&gauduchon_lab::catalog::builtin("hopf").unwrap().spec);
    assert!(kl(&hopf, -1.0, 0.0) && kl(&hopf, -1.0, 2.0) && kl(&hopf, 1.0 / 3.0, -2.0));
    let flat = hopf.curvature(ConnectionParams::strominger()).theta1.max_norm();
    assert!(flat < 1e-10, "hopf Strominger curvature {flat:e}");
    format!("{} specs agree ({all_true} with all three true); hopf Strominger curvature {flat:.1e}", specs.len())
}

fn criterion_5() -> String {
    let mut specs = builtins();
    specs.extend(nilpotent(505, 70));
    specs.extend(perturbed(506, 30));
    let mut checked = 0;
    let mut with_points = 0;
    for s in &specs {
        let g = geo(s);
        if g.cd.is_kahler(DEFAULT_TOL) {
            continue;
        }
        checked += 1;
        let line = gauduchon_locus(&g, DEFAULT_TOL);
        assert!(!line.is_all() && line.roots().len() <= 1, "{}: {line:?}", s.name);
        let rep = plane_locus(&g, DEFAULT_TOL);
        assert!(rep.is_finite(), "{}: non-finite locus", s.name);
        let pts: Vec<(f64, f64)> = rep.points().iter().map(|p| (p.r, p.s)).collect();
        assert!(exceptional_only(&pts), "{}: {pts:?}", s.name);
        with_points += !pts.is_empty() as usize;
    }
    let iw = geo(&gauduchon_lab::catalog::builtin("iwasawa").unwrap().spec);
    match gauduchon_locus(&iw, DEFAULT_TOL) {
        LineLocus::Roots(r) => assert!(r.len() == 1 && r[0].r == 1.0, "{r:?}"),
        other => panic!("iwasawa line locus {other:?}"),
    }
    format!("{checked} non-Kähler specs ({with_points} with a non-empty locus); iwasawa line locus = {{1}}")
}

fn criterion_6() -> String {
    let names = ["torus2", "torus3", "iwasawa", "hopf", "kodaira"];
    let mut applicable = 0;
    let mut worst: f64 = 0.0;
    let mut seen = std::collections::BTreeSet::new();
    for name in names {
        let g = geo(&gauduchon_lab::catalog::builtin(name).unwrap().spec);
        for rep in run_suite(&g, &SuiteConfig::default()) {
            if rep.applicable {
                assert!(rep.residual < 1e-9, "{name} {} at {}: {:e}", rep.id, rep.at, rep.residual);
                worst = worst.max(rep.residual);
                applicable += 1;
                seen.insert(format!("{name}:{}@{}", rep.id, rep.at));
            }
        }
    }
    let must = [
        "iwasawa:gauduchon.dbar_torsion@r=1",
        "iwasawa:gauduchon.dbar_eta@r=1",
        "iwasawa:gauduchon.chi@r=1",
        "iwasawa:gauduchon.ddbar_volume@r=1",
        "iwasawa:plane.dbar_torsion@r=1,s=0",
        "iwasawa:plane.norm_balance@r=1,s=0",
        "hopf:gauduchon.d_torsion@r=-1",
        "hopf:gauduchon.cyclic@r=-1",
        "hopf:gauduchon.dbar_torsion@r=-1",
        "hopf:gauduchon.dbar_eta@r=-1",
        "hopf:gauduchon.chi@r=-1",
        "hopf:gauduchon.ddbar_volume@r=-1",
        "hopf:plane.cyclic_d_torsion@r=-1,s=2",
        "hopf:plane.d_torsion@r=-1,s=2",
        "hopf:plane.dbar_torsion_skew@r=-1,s=2",
        "hopf:plane.d_torsion_skew@r=-1,s=2",
        "hopf:plane.dbar_torsion_mixed@r=-1,s=2",
        "hopf:plane.dbar_torsion@r=-1,s=2",
        "hopf:plane.norm_balance@r=-1,s=2",
        "hopf:plane.dbar_torsion@r=0.3333333333333333,s=-2",
        "hopf:strominger.d_torsion@r=-1,s=2",
        "hopf:strominger.cyclic@r=-1,s=2",
        "hopf:strominger.dbar_torsion_skew@r=-1,s=2",
        "hopf:strominger.dbar_torsion@r=-1,s=2",
        "hopf:strominger.quadratic@r=-1,s=2",
        "hopf:strominger.parallel@r=-1,s=2",
        "torus3:plane.norm_balance@r=0,s=1",
        "torus3:gauduchon.half_rigidity@r=0.5",
    ];
    for m in must {
        assert!(seen.contains(m), "expected an applicable check {m}");
    }
    format!("{applicable} applicable checks, max residual {worst:.2e}")
}

fn criterion_7() -> String {
    let mut specs = builtins();
    specs.extend(nilpotent(707, 100));
    specs.extend(perturbed(708, 50));
    let mut kahler = 0;
    for s in &specs {
        let g = geo(s);
        let half = kl(&g, 0.5, 0.0);
        let norm = g.cd.norm_t2().sqrt();
        if half {
            assert!(norm < 1e-10, "{}: D^(1/2) Kähler-like with |T| = {norm:e}", s.name);
            kahler += 1;
        }
    }
    format!("{} specs, (1/2, 0) in the locus for {kahler}, all with T = 0", specs.len())
}

fn criterion_8() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut specs = builtins();
    specs.extend(nilpotent(808, 20));
    specs.extend(perturbed(809, 10));
    let mut compared = 0;
    for s in &specs {
        let base = geo(s);
        let scaled: Vec<Geometry> = [0.25, 4.0].iter().map(|&c| geo(&s.with_scaled_metric(c).unwrap())).collect();
        let mut pts: Vec<ConnectionParams> = SPECIAL.iter().map(|&(r, s)| ConnectionParams::new(r, s).unwrap()).collect();
        while pts.len() < 20 {
            pts.push(random_params(&mut rng));
        }
        for p in pts {
            let want = is_kahler_like(&base, p, DEFAULT_TOL).kahler_like;
            for g in &scaled {
                assert_eq!(is_kahler_like(g, p, DEFAULT_TOL).kahler_like, want, "{} at {p}", s.name);
                compared += 1;
            }
        }
    }
    format!("{} specs, {compared} rescaled verdicts unchanged", specs.len())
}

fn criterion_9() -> String {
    let bin = env!("CARGO_BIN_EXE_gauduchon-lab");
    let args = ["verify", "--random", "nilpotent3", "--seed", "5", "--count", "20"];
    let a = Command::new(bin).args(args).env_remove("GAUDUCHON_LAB_TOL").output().unwrap();
    let b = Command::new(bin).args(args).env_remove("GAUDUCHON_LAB_TOL").output().unwrap();
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(b.status.code(), Some(0));
    assert!(!a.stdout.is_empty());
    assert!(a.stdout == b.stdout, "reports differ");
    format!("two runs byte-identical ({} bytes), exit 0", a.stdout.len())
}

type Criterion = (&'static str, fn() -> String);

fn main() {
    let criteria: [Criterion; 9] = [
        ("transfer identities", criterion_1),
        ("Ψ-duality", criterion_2),
        ("obstructions agree with the real-tensor oracle", criterion_3),
        ("Strominger triple", criterion_4),
        ("locus finiteness and exceptional pairs", criterion_5),
        ("conditional identity suite", criterion_6),
        ("r = 1/2 rigidity", criterion_7),
        ("metric rescaling", criterion_8),
        ("verify determinism", criterion_9),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match catch_unwind(AssertUnwindSafe(f)) {
            Ok(detail) => println!("criterion {} [{name}]: PASS - {detail}", i + 1),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {} [{name}]: FAIL - {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
