use gauduchon_lab::connection::{ConnectionParams, Geometry};
use gauduchon_lab::exterior::{StructureConstants, C64};
use gauduchon_lab::hermitian::{load_spec, ManifoldSpec, Metric};
use gauduchon_lab::identities::check_transfer;
use gauduchon_lab::kahler_like::{is_kahler_like, real_curvature_oracle, DEFAULT_TOL};
use proptest::prelude::*;

fn nilpotent3(v: [f64; 10]) -> ManifoldSpec {
    let c = |k: usize| C64::new(v[2 * k], v[2 * k + 1]);
    let mut sc = StructureConstants::zero(3);
    sc.set_pp(2, 0, 1, c(0)).unwrap();
    sc.set_pq(2, 0, 0, c(1)).unwrap();
    sc.set_pq(2, 0, 1, c(2)).unwrap();
    sc.set_pq(2, 1, 0, c(3)).unwrap();
    sc.set_pq(2, 1, 1, c(4)).unwrap();
    ManifoldSpec::new("prop", sc, Metric::Identity).unwrap()
}

fn coeffs() -> impl Strategy<Value = [f64; 10]> {
    prop::array::uniform10(-1.0f64..1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn spec_document_roundtrip(v in coeffs()) {
        let spec = nilpotent3(v);
        let back = load_spec(&spec.to_json()).unwrap();
        prop_assert_eq!(back.sc, spec.sc);
    }

    #[test]
    fn transfer_identities_hold(v in coeffs(), r in -3.0f64..3.0, r2 in -3.0f64..3.0) {
        let g = Geometry::from_spec(&nilpotent3(v)).unwrap();
        for rep in check_transfer(&g, r, r2, 1e-10) {
            prop_assert_eq!(rep.pass, Some(true), "{:?}", rep);
        }
    }

    #[test]
    fn oracle_matches(v in coeffs(), r in -2.0f64..2.0, s in -2.0f64..0.9) {
        let g = Geometry::from_spec(&nilpotent3(v)).unwrap();
        let p = ConnectionParams::new(r, s).unwrap();
        prop_assert_eq!(
            is_kahler_like(&g, p, DEFAULT_TOL).kahler_like,
            real_curvature_oracle(&g, p, DEFAULT_TOL).kahler_like
        );
    }

    #[test]
    fn psi_preserves_first_block(v in coeffs(), r in -2.0f64..2.0, s in 0.1f64..0.9) {
        let g = Geometry::from_spec(&nilpotent3(v)).unwrap();
        let p = ConnectionParams::new(r, s).unwrap();
        let a = g.curvature(p);
        let b = g.curvature(p.dual().unwrap());
        prop_assert!(a.theta1.sub(&b.theta1).max_norm() < 1e-12);
        prop_assert!(a.theta2.add(&b.theta2).max_norm() < 1e-12);
    }
}
