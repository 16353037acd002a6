//! Built-in example manifolds and seeded random families.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::connection::{ConnectionParams, Geometry};
use crate::error::{Error, Result};
use crate::exterior::{Form, StructureConstants, C64};
use crate::hermitian::{ManifoldSpec, Metric};
use crate::kahler_like::is_kahler_like;

pub const BUILTIN_NAMES: [&str; 6] = ["torus2", "torus3", "iwasawa", "kodaira", "hopf", "nilpotent3_generic"];
pub const FAMILIES: [&str; 2] = ["nilpotent3", "metric_perturbed"];

/// Seed and family behind `nilpotent3_generic`.
const GENERIC_SEED: u64 = 42;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub spec: ManifoldSpec,
    pub provenance: &'static str,
    /// Facts recorded for regression tests; always re-derived, see
    /// [`evaluate_fact`].
    pub expected: Vec<(&'static str, bool)>,
}

pub fn builtin(name: &str) -> Result<CatalogEntry> {
    let c = |re: f64| C64::new(re, 0.0);
    let entry = match name {
        "torus2" | "torus3" => {
            let n = if name == "torus2" { 2 } else { 3 };
            CatalogEntry {
                spec: ManifoldSpec::new(name, StructureConstants::zero(n), Metric::Identity)?,
                provenance: "flat complex torus: abelian Lie algebra, identity metric",
                expected: vec![("kahler", true), ("chern_kahler_like", true), ("riemannian_kahler_like", true)],
            }
        }
        "iwasawa" => {
            let mut sc = StructureConstants::zero(3);
            sc.set_pp(2, 0, 1, c(-1.0))?;
            CatalogEntry {
                spec: ManifoldSpec::new(name, sc, Metric::Identity)?,
                provenance: "Iwasawa manifold: quotient of the complex Heisenberg group, dφ3 = −φ1∧φ2",
                expected: vec![
                    ("kahler", false),
                    ("balanced", true),
                    ("chern_flat", true),
                    ("chern_kahler_like", true),
                    ("strominger_kahler_like", false),
                    ("lichnerowicz_kahler_like", false),
                ],
            }
        }
        "kodaira" => {
            let mut sc = StructureConstants::zero(2);
            sc.set_pq(1, 0, 0, c(1.0))?;
            CatalogEntry {
                spec: ManifoldSpec::new(name, sc, Metric::Identity)?,
                provenance: "primary Kodaira surface: nilpotent, dφ2 = φ1∧φ̄1",
                expected: vec![("kahler", false), ("balanced", false), ("chern_flat", false)],
            }
        }
        "hopf" => CatalogEntry {
            spec: hopf_spec()?,
            provenance: "Hopf surface S³×S¹ from su(2)⊕u(1): J e1 = e2, J e3 = e4, product metric",
            expected: vec![
                ("kahler", false),
                ("strominger_flat", true),
                ("strominger_kahler_like", true),
                ("plus_kahler_like", true),
                ("minus_kahler_like", true),
            ],
        },
        "nilpotent3_generic" => {
            let mut spec = random_family(GENERIC_SEED, "nilpotent3", 1)?.remove(0);
            spec.name = name.to_string();
            CatalogEntry {
                spec,
                provenance: "member 0 of the nilpotent3 random family with seed 42",
                expected: vec![("kahler", false)],
            }
        }
        other => return Err(Error::UnknownCatalog(other.to_string())),
    };
    Ok(entry)
}

pub fn all_builtins() -> Vec<CatalogEntry> {
    BUILTIN_NAMES
        .iter()
        .map(|n| builtin(n).expect("builtin entries are valid"))
        .collect()
}

/// Structure constants of the invariant coframe `φ_i = f^{2i} + √−1 f^{2i+1}`
/// on a real Lie algebra with `[e_a, e_b] = Σ_k c[k][a][b] e_k`, where the
/// complex structure is `J e_{2i} = e_{2i+1}`.
pub fn from_real_lie_algebra(c: &[Vec<Vec<f64>>]) -> Result<StructureConstants> {
    let m = c.len();
    if !m.is_multiple_of(2) {
        return Err(Error::Schema("real Lie algebra must have even dimension".into()));
    }
    let n = m / 2;
    let half = C64::new(0.5, 0.0);
    let minus_half_i = C64::new(0.0, -0.5);
    // f^{2i} = (φ_i + φ̄_i)/2, f^{2i+1} = (φ_i − φ̄_i)/(2√−1)
    let f: Vec<Form> = (0..m)
        .map(|a| {
            let i = a / 2;
            if a % 2 == 0 {
                (&Form::phi(n, i) + &Form::phi_bar(n, i)).scale(half)
            } else {
                (&Form::phi(n, i) - &Form::phi_bar(n, i)).scale(minus_half_i)
            }
        })
        .collect();
    // df^k(X, Y) = −f^k([X, Y])
    let df: Vec<Form> = (0..m)
        .map(|k| {
            let mut acc = Form::zero(n, 2);
            for a in 0..m {
                for b in (a + 1)..m {
                    let v = c[k][a][b];
                    if v != 0.0 {
                        acc = &acc - &f[a].wedge(&f[b]).scale_re(v);
                    }
                }
            }
            acc
        })
        .collect();
    let d_phi: Vec<Form> = (0..n)
        .map(|i| &df[2 * i] + &df[2 * i + 1].scale(C64::new(0.0, 1.0)))
        .collect();
    StructureConstants::from_d_phi(&d_phi)
}

fn hopf_spec() -> Result<ManifoldSpec> {
    let mut c = vec![vec![vec![0.0; 4]; 4]; 4];
    let mut bracket = |a: usize, b: usize, k: usize| {
        c[k][a][b] = 1.0;
        c[k][b][a] = -1.0;
    };
    // su(2): [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e2; e4 central
    bracket(0, 1, 2);
    bracket(1, 2, 0);
    bracket(2, 0, 1);
    let sc = from_real_lie_algebra(&c)?;
    ManifoldSpec::new("hopf", sc, Metric::Identity)
}

fn unit_disc(rng: &mut ChaCha8Rng) -> C64 {
    let rad: f64 = rng.random::<f64>().sqrt();
    let ang: f64 = rng.random::<f64>() * std::f64::consts::TAU;
    C64::from_polar(rad, ang)
}

/// Seeded random specs.
///
/// * `nilpotent3`: `dφ3 = a φ1∧φ2 + Σ_{i,j≤2} b_{ij̄} φ_i∧φ̄_j`, coefficients
///   uniform on the unit disc.
/// * `metric_perturbed[:BASE]`: metric `I + 0.1·H` with `H` random
///   Hermitian on a fixed builtin `BASE`; without a base the members cycle
///   through iwasawa, kodaira, hopf, torus2, torus3.
pub fn random_family(seed: u64, family: &str, count: usize) -> Result<Vec<ManifoldSpec>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (fam, base) = match family.split_once(':') {
        Some((f, b)) => (f, Some(b)),
        None => (family, None),
    };
    match fam {
        "nilpotent3" if base.is_none() => (0..count)
            .map(|i| {
                let mut sc = StructureConstants::zero(3);
                sc.set_pp(2, 0, 1, unit_disc(&mut rng))?;
                for a in 0..2 {
                    for b in 0..2 {
                        sc.set_pq(2, a, b, unit_disc(&mut rng))?;
                    }
                }
                ManifoldSpec::new(format!("nilpotent3-s{seed}-{i}"), sc, Metric::Identity)
            })
            .collect(),
        "metric_perturbed" => {
            const CYCLE: [&str; 5] = ["iwasawa", "kodaira", "hopf", "torus2", "torus3"];
            (0..count)
                .map(|i| {
                    let base_name = base.unwrap_or(CYCLE[i % CYCLE.len()]);
                    let base_spec = builtin(base_name)?.spec;
                    let n = base_spec.n;
                    loop {
                        let mut h = DMatrix::<C64>::zeros(n, n);
                        for a in 0..n {
                            h[(a, a)] = C64::new(rng.random_range(-1.0..1.0), 0.0);
                            for b in (a + 1)..n {
                                let z = unit_disc(&mut rng);
                                h[(a, b)] = z;
                                h[(b, a)] = z.conj();
                            }
                        }
                        let g = DMatrix::identity(n, n) + h * C64::new(0.1, 0.0);
                        match ManifoldSpec::new(
                            format!("{base_name}-perturbed-s{seed}-{i}"),
                            base_spec.sc.clone(),
                            Metric::Hermitian(g),
                        ) {
                            Ok(s) => return Ok(s),
                            Err(Error::NotPositiveDefinite(_)) => continue,
                            Err(e) => return Err(e),
                        }
                    }
                })
                .collect()
        }
        _ => Err(Error::UnknownFamily(family.to_string())),
    }
}

/// Re-derive a recorded catalog fact. `None` for an unknown fact name.
pub fn evaluate_fact(geo: &Geometry, fact: &str, tol: f64) -> Option<bool> {
    let kl = |r: f64, s: f64| is_kahler_like(geo, ConnectionParams::new(r, s).expect("fixed point"), tol).kahler_like;
    let flat = |r: f64| geo.curvature(ConnectionParams::gauduchon(r).expect("fixed point")).theta1.max_norm() < tol;
    Some(match fact {
        "kahler" => geo.cd.is_kahler(tol),
        "balanced" => {
            let eta = crate::hermitian::torsion_invariants(&geo.cd).norm_eta2;
            eta.sqrt() < tol
        }
        "chern_flat" => flat(1.0),
        "strominger_flat" => flat(-1.0),
        "chern_kahler_like" => kl(1.0, 0.0),
        "strominger_kahler_like" => kl(-1.0, 0.0),
        "lichnerowicz_kahler_like" => kl(0.0, 0.0),
        "riemannian_kahler_like" => kl(0.0, 1.0),
        "plus_kahler_like" => kl(-1.0, 2.0),
        "minus_kahler_like" => kl(1.0 / 3.0, -2.0),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::check_integrability;
    use crate::hermitian::load_spec;

    #[test]
    fn builtins_validate_and_roundtrip() {
        for e in all_builtins() {
            let integ = check_integrability(&e.spec.sc, 1e-12);
            assert!(integ.pass, "{}", e.spec.name);
            let back = load_spec(&e.spec.to_json()).unwrap();
            assert_eq!(back, e.spec);
        }
        assert!(matches!(builtin("nope"), Err(Error::UnknownCatalog(_))));
    }

    #[test]
    fn hopf_structure_equations() {
        let sc = builtin("hopf").unwrap().spec.sc;
        let half_i = C64::new(0.0, 0.5);
        let want1 = &Form::phi(2, 0).wedge(&Form::phi(2, 1)).scale(half_i)
            + &Form::phi(2, 0).wedge(&Form::phi_bar(2, 1)).scale(half_i);
        let want2 = Form::phi(2, 0).wedge(&Form::phi_bar(2, 0)).scale(-half_i);
        assert!((sc.d_phi(0) - &want1).max_norm() < 1e-15);
        assert!((sc.d_phi(1) - &want2).max_norm() < 1e-15);
    }

    #[test]
    fn hopf_strominger_connection_vanishes() {
        let geo = Geometry::from_spec(&builtin("hopf").unwrap().spec).unwrap();
        let th = geo.blocks(ConnectionParams::strominger()).theta_t;
        assert!(th.max_norm() < 1e-15);
    }

    #[test]
    fn recorded_facts_hold() {
        for e in all_builtins() {
            let geo = Geometry::from_spec(&e.spec).unwrap();
            for (fact, want) in &e.expected {
                assert_eq!(evaluate_fact(&geo, fact, 1e-8), Some(*want), "{} {fact}", e.spec.name);
            }
        }
    }

    #[test]
    fn random_family_deterministic() {
        let a = random_family(42, "nilpotent3", 3).unwrap();
        let b = random_family(42, "nilpotent3", 3).unwrap();
        assert_eq!(a, b);
        assert_ne!(a[0], a[1]);
        assert_ne!(random_family(43, "nilpotent3", 1).unwrap()[0], a[0]);
        for s in &a {
            assert!(check_integrability(&s.sc, 1e-12).pass);
            for k in 0..2 {
                assert!(s.sc.d_phi(k).is_zero());
            }
        }
        let generic = builtin("nilpotent3_generic").unwrap().spec;
        assert_eq!(generic.sc, a[0].sc);
    }

    #[test]
    fn metric_perturbed_family() {
        let v = random_family(7, "metric_perturbed", 5).unwrap();
        assert_eq!(v.len(), 5);
        assert!(v.iter().all(|s| matches!(s.metric, Metric::Hermitian(_))));
        for s in random_family(3, "metric_perturbed:torus2", 4).unwrap() {
            let geo = Geometry::from_spec(&s).unwrap();
            assert!(geo.cd.is_kahler(1e-12));
        }
        assert!(random_family(1, "nope", 1).is_err());
        assert!(random_family(1, "metric_perturbed:nope", 1).is_err());
    }
}
