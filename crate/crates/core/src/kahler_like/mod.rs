//! Kähler-like obstructions, the real-tensor cross-check and locus solving.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::connection::{ConnectionParams, CurvatureBlocks, Geometry};
use crate::exterior::{FormMatrix, C64};

mod locus;

pub use locus::{exceptional_only, gauduchon_locus, plane_locus, Branch, LineLocus, LocusPoint, LocusReport, PlaneLocus, PlanePolynomials};

/// Default boolean tolerance on the obstruction norms.
pub const DEFAULT_TOL: f64 = 1e-8;

/// The three tensors whose joint vanishing is equivalent to Kähler-likeness:
/// `Θ^D_2`, `(Θ^D_1)^{2,0}` and `ᵗφ∧(Θ^D_1)^{1,1}`.
#[derive(Clone, Debug)]
pub struct Obstructions {
    pub o2: FormMatrix,
    pub o20: FormMatrix,
    /// `1 × n` row of 3-forms.
    pub o11: FormMatrix,
    pub norm_o2: f64,
    pub norm_o20: f64,
    pub norm_o11: f64,
}

/// Which obstruction tensor a coefficient belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tensor {
    O2,
    O20,
    O11,
}

/// `(tensor, row, col, multi-index mask)`.
pub type CoeffKey = (Tensor, usize, usize, u16);

impl Obstructions {
    pub fn from_blocks(n: usize, blocks: &CurvatureBlocks) -> Self {
        let o2 = blocks.theta2.clone();
        let o20 = blocks.theta1.type_part(2, 0);
        let o11 = FormMatrix::phi_row(n).wedge(&blocks.theta1.type_part(1, 1));
        Obstructions {
            norm_o2: o2.max_norm(),
            norm_o20: o20.max_norm(),
            norm_o11: o11.max_norm(),
            o2,
            o20,
            o11,
        }
    }

    pub fn max_norm(&self) -> f64 {
        self.norm_o2.max(self.norm_o20).max(self.norm_o11)
    }

    /// Every stored coefficient, keyed for interpolation across samples.
    pub fn coefficients(&self) -> BTreeMap<CoeffKey, C64> {
        let mut out = BTreeMap::new();
        for (tag, m) in [(Tensor::O2, &self.o2), (Tensor::O20, &self.o20), (Tensor::O11, &self.o11)] {
            for (i, j, f) in m.entries() {
                for (mask, c) in f.terms() {
                    out.insert((tag, i, j, mask), c);
                }
            }
        }
        out
    }
}

pub fn obstructions(geo: &Geometry, p: ConnectionParams) -> Obstructions {
    Obstructions::from_blocks(geo.n(), &geo.curvature(p))
}

/// Obstructions at a `(t, s)` point, preimage or not.
pub fn obstructions_ts(geo: &Geometry, t: f64, s: f64) -> Obstructions {
    Obstructions::from_blocks(geo.n(), &geo.curvature_ts(t, s))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub kahler_like: bool,
    pub residual: f64,
    pub norm_o2: f64,
    pub norm_o20: f64,
    pub norm_o11: f64,
}

pub fn is_kahler_like(geo: &Geometry, p: ConnectionParams, tol: f64) -> Verdict {
    let ob = obstructions(geo, p);
    let residual = ob.max_norm();
    Verdict {
        kahler_like: residual < tol,
        residual,
        norm_o2: ob.norm_o2,
        norm_o20: ob.norm_o20,
        norm_o11: ob.norm_o11,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OracleVerdict {
    pub kahler_like: bool,
    /// Max of `|R(x,y,z,w) + R(y,z,x,w) + R(z,x,y,w)|`.
    pub bianchi_residual: f64,
    /// Max of `|R(x,y,·,·)|` and `|R(·,·,z,w)|` over same-type pairs.
    pub type_residual: f64,
}

/// Kähler-likeness from the real curvature tensor itself.
///
/// `R(a,b,c,d) = g(R(E_a,E_b)E_c, E_d)` on the complex frame
/// `E = (e_1..e_n, ē_1..ē_n)` with `g(e_i, ē_j) = δ_ij`. The
/// J-invariance conditions say `R` vanishes whenever either pair consists
/// of two vectors of the same type; the Bianchi-type condition is checked
/// on all triples.
pub fn real_curvature_oracle(geo: &Geometry, p: ConnectionParams, tol: f64) -> OracleVerdict {
    let n = geo.n();
    let m = 2 * n;
    let full = geo.full_curvature(p);
    let partner = |d: usize| if d < n { d + n } else { d - n };
    let mut r = vec![C64::default(); m * m * m * m];
    let ix = |a: usize, b: usize, c: usize, d: usize| ((a * m + b) * m + c) * m + d;
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    r[ix(a, b, c, d)] = full.get(c, partner(d)).eval2(a, b);
                }
            }
        }
    }
    let same_type = |a: usize, b: usize| (a < n) == (b < n);
    let mut bianchi: f64 = 0.0;
    let mut typ: f64 = 0.0;
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    let v = r[ix(a, b, c, d)];
                    if same_type(a, b) || same_type(c, d) {
                        typ = typ.max(v.norm());
                    }
                    let cyc = v + r[ix(b, c, a, d)] + r[ix(c, a, b, d)];
                    bianchi = bianchi.max(cyc.norm());
                }
            }
        }
    }
    OracleVerdict {
        kahler_like: bianchi < tol && typ < tol,
        bianchi_residual: bianchi,
        type_residual: typ,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::StructureConstants;
    use crate::hermitian::solve_chern_sc;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn geo(sc: &StructureConstants) -> Geometry {
        Geometry::new(solve_chern_sc(sc))
    }

    fn iwasawa() -> StructureConstants {
        let mut sc = StructureConstants::zero(3);
        sc.set_pp(2, 0, 1, c(-1.0, 0.0)).unwrap();
        sc
    }

    #[test]
    fn torus_everywhere() {
        let g = geo(&StructureConstants::zero(2));
        for (r, s) in [(1.0, 0.0), (-1.0, 2.0), (0.3, -0.7), (0.0, 1.0)] {
            let p = ConnectionParams::new(r, s).unwrap();
            let v = is_kahler_like(&g, p, DEFAULT_TOL);
            assert!(v.kahler_like && v.residual == 0.0);
            assert!(real_curvature_oracle(&g, p, DEFAULT_TOL).kahler_like);
        }
    }

    #[test]
    fn iwasawa_points() {
        let g = geo(&iwasawa());
        assert!(is_kahler_like(&g, ConnectionParams::chern(), DEFAULT_TOL).kahler_like);
        assert!(!is_kahler_like(&g, ConnectionParams::strominger(), DEFAULT_TOL).kahler_like);
        assert!(!is_kahler_like(&g, ConnectionParams::lichnerowicz(), DEFAULT_TOL).kahler_like);
        assert!(real_curvature_oracle(&g, ConnectionParams::chern(), DEFAULT_TOL).kahler_like);
        assert!(!real_curvature_oracle(&g, ConnectionParams::lichnerowicz(), DEFAULT_TOL).kahler_like);
    }

    #[test]
    fn gauduchon_line_has_no_o2() {
        let g = geo(&iwasawa());
        let ob = obstructions(&g, ConnectionParams::gauduchon(0.4).unwrap());
        assert_eq!(ob.norm_o2, 0.0);
    }

    #[test]
    fn oracle_agrees_on_samples() {
        let mut sc = StructureConstants::zero(3);
        sc.set_pp(2, 0, 1, c(0.3, -0.7)).unwrap();
        sc.set_pq(2, 0, 1, c(-0.4, 0.5)).unwrap();
        let g = geo(&sc);
        for (r, s) in [(1.0, 0.0), (-1.0, 0.0), (0.2, 0.3), (-1.0, 2.0), (0.0, 1.0), (0.0, -1.0)] {
            let p = ConnectionParams::new(r, s).unwrap();
            let a = is_kahler_like(&g, p, DEFAULT_TOL).kahler_like;
            let b = real_curvature_oracle(&g, p, DEFAULT_TOL).kahler_like;
            assert_eq!(a, b, "at {p}");
        }
    }
}
