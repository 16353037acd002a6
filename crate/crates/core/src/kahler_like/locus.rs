//! Exact locus solving on the Gauduchon line and in the `(t, s)` plane.
//!
//! Every obstruction coefficient is a polynomial of degree at most two in
//! each of `t` and `s`, so nine samples determine it. Coefficients of
//! `(Θ^D_1)^{2,0}` and `ᵗφ∧(Θ^D_1)^{1,1}` have the shape `q0(t) + s²·q2(t)`,
//! those of `Θ^D_2` the shape `s·q1(t)`. Off the line `s = 0` the system is
//! solved in `(t, u = s²)` by eliminating `u` against a pivot coefficient,
//! which leaves real polynomials in `t` alone.

use std::collections::{BTreeMap, BTreeSet};

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use super::{obstructions, obstructions_ts, CoeffKey, Tensor};
use crate::connection::{ConnectionParams, Geometry};
use crate::exterior::C64;
use crate::poly::{cconj, cmul, csub, eval_complex, interp3, split, Poly, NODES};

/// Relative threshold below which an interpolated coefficient counts as 0.
const ZERO_REL: f64 = 1e-10;
/// Relative residual a candidate must meet before it is re-evaluated.
const CANDIDATE_REL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LocusPoint {
    pub r: f64,
    pub s: f64,
    pub t: f64,
    pub residual: f64,
}

impl LocusPoint {
    fn at(geo: &Geometry, p: ConnectionParams) -> Self {
        LocusPoint {
            r: p.r(),
            s: p.s(),
            t: p.t(),
            residual: obstructions(geo, p).max_norm(),
        }
    }
}

/// Kähler-like points of the Gauduchon line.
#[derive(Clone, Debug, PartialEq)]
pub enum LineLocus {
    /// Every `D^r` is Kähler-like; `residual` is the largest interpolated
    /// coefficient.
    All { residual: f64 },
    Roots(Vec<LocusPoint>),
}

impl LineLocus {
    pub fn is_all(&self) -> bool {
        matches!(self, LineLocus::All { .. })
    }

    pub fn roots(&self) -> &[LocusPoint] {
        match self {
            LineLocus::All { .. } => &[],
            LineLocus::Roots(v) => v,
        }
    }
}

impl Serialize for LineLocus {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut m = ser.serialize_map(Some(2))?;
        match self {
            LineLocus::All { residual } => {
                m.serialize_entry("line_roots", "all")?;
                m.serialize_entry("line_residual", residual)?;
            }
            LineLocus::Roots(pts) => {
                let rs: Vec<f64> = pts.iter().map(|p| p.r).collect();
                let res: Vec<f64> = pts.iter().map(|p| p.residual).collect();
                m.serialize_entry("line_roots", &rs)?;
                m.serialize_entry("line_residuals", &res)?;
            }
        }
        m.end()
    }
}

/// One-dimensional solution sets off the Gauduchon line.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Branch {
    /// `t = t0` for every `s ≠ 0`, i.e. `r = (1 − t0)/(1 − s)`.
    FixedT { t: f64, samples: Vec<LocusPoint> },
    /// `s² = num(t)/den(t)` wherever the right side is positive.
    Curve {
        num: Vec<f64>,
        den: Vec<f64>,
        samples: Vec<LocusPoint>,
    },
    /// Every point with `s ≠ 0`.
    OffLine { samples: Vec<LocusPoint> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlaneLocus {
    pub entire_plane: bool,
    /// Isolated solutions with `s ≠ 0`.
    pub points: Vec<LocusPoint>,
    pub branches: Vec<Branch>,
    /// Solutions `(t, s)` with `s = 1`, `t ≠ 1`, which have no `(r, s)`
    /// preimage.
    pub unreachable: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocusReport {
    #[serde(flatten)]
    pub line: LineLocus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plane: Option<PlaneLocus>,
}

impl LocusReport {
    /// All isolated points, line roots first.
    pub fn points(&self) -> Vec<LocusPoint> {
        let mut v = self.line.roots().to_vec();
        if let Some(p) = &self.plane {
            v.extend(p.points.iter().copied());
        }
        v
    }

    /// True when the locus is a finite set of points.
    pub fn is_finite(&self) -> bool {
        !self.line.is_all()
            && self
                .plane
                .as_ref()
                .is_none_or(|p| !p.entire_plane && p.branches.is_empty())
    }
}

/// Whether a finite set of `(r, s)` points is empty, a single point, or
/// made only of pairs that may be Kähler-like together on a non-Kähler
/// manifold: `{∇, ∇'}` or any two of `{∇^s, ∇^+, ∇^-}`.
pub fn exceptional_only(points: &[(f64, f64)]) -> bool {
    const EPS: f64 = 1e-7;
    let mut distinct: Vec<(f64, f64)> = Vec::new();
    for &(r, s) in points {
        if !distinct.iter().any(|&(a, b)| (a - r).abs() < EPS && (b - s).abs() < EPS) {
            distinct.push((r, s));
        }
    }
    if distinct.len() <= 1 {
        return true;
    }
    let within = |set: &[(f64, f64)]| {
        distinct
            .iter()
            .all(|&(r, s)| set.iter().any(|&(a, b)| (a - r).abs() < EPS && (b - s).abs() < EPS))
    };
    within(&[(0.0, 1.0), (0.0, -1.0)]) || within(&[(-1.0, 0.0), (-1.0, 2.0), (1.0 / 3.0, -2.0)])
}

fn collect_keys(samples: &[BTreeMap<CoeffKey, C64>]) -> BTreeSet<CoeffKey> {
    samples.iter().flat_map(|m| m.keys().copied()).collect()
}

fn get(m: &BTreeMap<CoeffKey, C64>, k: &CoeffKey) -> C64 {
    m.get(k).copied().unwrap_or_default()
}

/// Common real roots of `polys`, each confirmed by a direct evaluation.
/// `None` means every polynomial vanishes identically.
fn common_real_roots(polys: &[Poly], zero_tol: f64) -> Option<Vec<f64>> {
    let live: Vec<&Poly> = polys.iter().filter(|p| !p.is_zero(zero_tol)).collect();
    if live.is_empty() {
        return None;
    }
    let cand_tol = CANDIDATE_REL * zero_tol / ZERO_REL;
    if live.iter().any(|p| p.degree(zero_tol) == Some(0)) {
        return Some(Vec::new());
    }
    // roots of the lowest-degree live polynomial are the only candidates
    let pivot = live
        .iter()
        .min_by_key(|p| p.degree(zero_tol).unwrap_or(usize::MAX))
        .expect("nonempty");
    let mut out = Vec::new();
    for x in pivot.real_roots(ZERO_REL) {
        let scale = 1.0 + x.abs().powi(4);
        if live.iter().all(|p| p.eval(x).abs() <= cand_tol * scale) {
            out.push(x);
        }
    }
    Some(out)
}

/// Kähler-like points of the Gauduchon line `s = 0`.
pub fn gauduchon_locus(geo: &Geometry, tol: f64) -> LineLocus {
    let samples: Vec<_> = NODES
        .iter()
        .map(|&r| obstructions(geo, ConnectionParams::gauduchon(r).expect("finite r")).coefficients())
        .collect();
    let keys = collect_keys(&samples);
    let mut polys = Vec::new();
    let mut scale: f64 = 0.0;
    for k in &keys {
        let q = interp3([get(&samples[0], k), get(&samples[1], k), get(&samples[2], k)]);
        let (re, im) = split(&q);
        scale = scale.max(re.max_abs()).max(im.max_abs());
        polys.push(re);
        polys.push(im);
    }
    let zero_tol = ZERO_REL * scale.max(1.0);
    match common_real_roots(&polys, zero_tol) {
        None => LineLocus::All { residual: scale },
        Some(roots) => LineLocus::Roots(
            roots
                .into_iter()
                .map(|r| LocusPoint::at(geo, ConnectionParams::gauduchon(snap(r)).expect("finite root")))
                .filter(|p| p.residual < tol)
                .collect(),
        ),
    }
}

/// Interpolated obstruction coefficients as polynomials in `(t, s)`.
#[derive(Clone, Debug)]
pub struct PlanePolynomials {
    /// `coef[key][j][i]` multiplies `t^i s^j`.
    pub coef: BTreeMap<CoeffKey, [[C64; 3]; 3]>,
    pub scale: f64,
}

impl PlanePolynomials {
    pub fn new(geo: &Geometry) -> Self {
        // samples[ti][si]
        let samples: Vec<Vec<_>> = NODES
            .iter()
            .map(|&t| NODES.iter().map(|&s| obstructions_ts(geo, t, s).coefficients()).collect())
            .collect();
        let keys = collect_keys(&samples.iter().flatten().cloned().collect::<Vec<_>>());
        let mut coef = BTreeMap::new();
        let mut scale: f64 = 0.0;
        for k in keys {
            // interpolate in s for each sampled t, then in t
            let in_s: Vec<[C64; 3]> = (0..3)
                .map(|ti| interp3([get(&samples[ti][0], &k), get(&samples[ti][1], &k), get(&samples[ti][2], &k)]))
                .collect();
            let mut c = [[C64::default(); 3]; 3];
            for (j, row) in c.iter_mut().enumerate() {
                *row = interp3([in_s[0][j], in_s[1][j], in_s[2][j]]);
                for z in row.iter() {
                    scale = scale.max(z.norm());
                }
            }
            coef.insert(k, c);
        }
        PlanePolynomials { coef, scale }
    }

    pub fn eval(&self, key: &CoeffKey, t: f64, s: f64) -> C64 {
        let c = &self.coef[key];
        eval_complex(&c[0], t) + eval_complex(&c[1], t) * s + eval_complex(&c[2], t) * (s * s)
    }

    /// Largest interpolated coefficient magnitude at `(t, s)`.
    pub fn max_abs(&self, t: f64, s: f64) -> f64 {
        self.coef.keys().map(|k| self.eval(k, t, s).norm()).fold(0.0, f64::max)
    }

    fn zero_tol(&self) -> f64 {
        ZERO_REL * self.scale.max(1.0)
    }
}

fn sample_branch(geo: &Geometry, pts: impl IntoIterator<Item = (f64, f64)>) -> Vec<LocusPoint> {
    pts.into_iter()
        .filter_map(|(t, s)| {
            if s == 1.0 {
                return None;
            }
            let r = (1.0 - t) / (1.0 - s);
            ConnectionParams::new(r, s).ok().map(|p| LocusPoint::at(geo, p))
        })
        .collect()
}

const BRANCH_S: [f64; 3] = [-2.5, 0.5, 3.0];

/// Kähler-like points of the whole plane: the Gauduchon line plus every
/// solution with `s ≠ 0`, pulled back by `r = (1 − t)/(1 − s)`.
pub fn plane_locus(geo: &Geometry, tol: f64) -> LocusReport {
    let line = gauduchon_locus(geo, tol);
    let pp = PlanePolynomials::new(geo);
    let zero_tol = pp.zero_tol();
    let mut plane = PlaneLocus {
        entire_plane: false,
        points: Vec::new(),
        branches: Vec::new(),
        unreachable: Vec::new(),
    };

    let mut odd: Vec<Vec<C64>> = Vec::new();
    let mut even: Vec<(Vec<C64>, Vec<C64>)> = Vec::new();
    for (k, c) in &pp.coef {
        if k.0 == Tensor::O2 {
            odd.push(c[1].to_vec());
        } else {
            even.push((c[0].to_vec(), c[2].to_vec()));
        }
    }
    let cnorm = |p: &[C64]| p.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let mut real_eqs: Vec<Poly> = Vec::new();
    let push = |c: &[C64], eqs: &mut Vec<Poly>| {
        let (re, im) = split(c);
        eqs.push(re);
        eqs.push(im);
    };
    for q1 in &odd {
        push(q1, &mut real_eqs);
    }
    let pivot = even
        .iter()
        .enumerate()
        .max_by(|a, b| cnorm(&a.1 .1).total_cmp(&cnorm(&b.1 .1)))
        .map(|(i, _)| i)
        .filter(|&i| cnorm(&even[i].1) > zero_tol);

    match pivot {
        None => {
            // no coefficient depends on s²: solutions are whole lines t = t0
            for (q0, _) in &even {
                push(q0, &mut real_eqs);
            }
            match common_real_roots(&real_eqs, zero_tol) {
                None => {
                    if line.is_all() {
                        plane.entire_plane = true;
                    } else {
                        let samples = sample_branch(geo, [(0.3, -1.5), (-0.7, 0.5), (2.0, 2.5)]);
                        plane.branches.push(Branch::OffLine { samples });
                    }
                }
                Some(ts) => {
                    for t in ts {
                        let samples = sample_branch(geo, BRANCH_S.map(|s| (t, s)));
                        if samples.iter().all(|p| p.residual < tol) {
                            plane.branches.push(Branch::FixedT { t, samples });
                        }
                    }
                }
            }
        }
        Some(pv) => {
            let (q0p, q2p) = &even[pv];
            for (q0, q2) in &even {
                let e = csub(&cmul(q0, q2p), &cmul(q0p, q2));
                push(&e, &mut real_eqs);
            }
            // u = −q0p/q2p must be real: Im(q0p · conj(q2p)) = 0
            let (_, im_u) = split(&cmul(q0p, &cconj(q2p)));
            real_eqs.push(im_u);
            match common_real_roots(&real_eqs, zero_tol * pp.scale.max(1.0)) {
                None => {
                    // s² = num(t)/den(t)
                    let (num, _) = split(&cmul(q0p, &cconj(q2p)));
                    let num = num.scale(-1.0);
                    let den = Poly(cmul(q2p, &cconj(q2p)).iter().map(|z| z.re).collect());
                    let mut pts = Vec::new();
                    for i in -10..=10 {
                        let t = i as f64 * 0.5;
                        let d = den.eval(t);
                        if d.abs() <= zero_tol {
                            continue;
                        }
                        let u = num.eval(t) / d;
                        if u > 0.0 {
                            pts.push((t, u.sqrt()));
                            pts.push((t, -u.sqrt()));
                        }
                        if pts.len() >= 6 {
                            break;
                        }
                    }
                    let samples = sample_branch(geo, pts);
                    if !samples.is_empty() {
                        plane.branches.push(Branch::Curve {
                            num: num.0,
                            den: den.0,
                            samples,
                        });
                    }
                }
                Some(mut ts) => {
                    // the pivot's s² coefficient may vanish at isolated t
                    let (re2, im2) = split(q2p);
                    for p in [re2, im2] {
                        if !p.is_zero(zero_tol) {
                            ts.extend(p.real_roots(ZERO_REL));
                        }
                    }
                    ts.sort_by(f64::total_cmp);
                    ts.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
                    for t in ts {
                        solve_at_t(geo, &even, t, tol, zero_tol, &mut plane);
                    }
                }
            }
        }
    }
    plane.points.sort_by(|a, b| a.r.total_cmp(&b.r).then(a.s.total_cmp(&b.s)));
    plane
        .points
        .dedup_by(|a, b| (a.r - b.r).abs() < 1e-9 && (a.s - b.s).abs() < 1e-9);
    LocusReport {
        line,
        plane: Some(plane),
    }
}

/// Recover `u = s²` at a fixed `t` by least squares over the even
/// coefficients and record the verified solutions.
fn solve_at_t(geo: &Geometry, even: &[(Vec<C64>, Vec<C64>)], t: f64, tol: f64, zero_tol: f64, plane: &mut PlaneLocus) {
    let mut num = C64::default();
    let mut den = 0.0;
    for (q0, q2) in even {
        let a = eval_complex(q0, t);
        let b = eval_complex(q2, t);
        num -= b.conj() * a;
        den += b.norm_sqr();
    }
    if den <= zero_tol * zero_tol {
        let samples = sample_branch(geo, BRANCH_S.map(|s| (t, s)));
        if samples.iter().all(|p| p.residual < tol) {
            plane.branches.push(Branch::FixedT { t, samples });
        }
        return;
    }
    let u = num / den;
    if u.im.abs() > 1e-8 * (1.0 + u.re.abs()) || u.re <= 1e-14 {
        return;
    }
    let root = u.re.sqrt();
    for s in [root, -root] {
        if (s - 1.0).abs() < 1e-9 {
            if (t - 1.0).abs() < 1e-9 {
                let pt = LocusPoint::at(geo, ConnectionParams::riemannian());
                if pt.residual < tol {
                    plane.points.push(pt);
                }
            } else {
                plane.unreachable.push((t, 1.0));
            }
            continue;
        }
        let r = (1.0 - t) / (1.0 - s);
        let Ok(p) = ConnectionParams::new(snap(r), snap(s)) else {
            continue;
        };
        let pt = LocusPoint::at(geo, p);
        if pt.residual < tol {
            plane.points.push(pt);
        }
    }
}

/// Round to a nearby small-denominator rational when within 1e-9.
fn snap(x: f64) -> f64 {
    for d in 1..=12 {
        let n = (x * d as f64).round();
        let y = n / d as f64;
        if (x - y).abs() < 1e-9 {
            return y;
        }
    }
    x
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

    #[test]
    fn torus_entire() {
        let g = geo(&StructureConstants::zero(2));
        assert!(gauduchon_locus(&g, 1e-8).is_all());
        let rep = plane_locus(&g, 1e-8);
        assert!(rep.plane.as_ref().unwrap().entire_plane);
        assert!(!rep.is_finite());
        let js = serde_json::to_value(&rep).unwrap();
        assert_eq!(js["line_roots"], "all");
    }

    #[test]
    fn iwasawa_line_is_chern_only() {
        let mut sc = StructureConstants::zero(3);
        sc.set_pp(2, 0, 1, c(-1.0, 0.0)).unwrap();
        let g = geo(&sc);
        let line = gauduchon_locus(&g, 1e-8);
        let roots = line.roots();
        assert_eq!(roots.len(), 1);
        assert!((roots[0].r - 1.0).abs() < 1e-12);
        let js = serde_json::to_value(&line).unwrap();
        assert_eq!(js["line_roots"][0], 1.0);
        let rep = plane_locus(&g, 1e-8);
        assert!(rep.is_finite());
        let pts: Vec<_> = rep.points().iter().map(|p| (p.r, p.s)).collect();
        assert!(exceptional_only(&pts), "{pts:?}");
    }

    #[test]
    fn interpolation_reproduces_direct_values() {
        let mut sc = StructureConstants::zero(3);
        sc.set_pp(2, 0, 1, c(0.3, -0.7)).unwrap();
        sc.set_pq(2, 0, 1, c(-0.4, 0.5)).unwrap();
        sc.set_pq(2, 1, 1, c(0.2, 0.0)).unwrap();
        let g = geo(&sc);
        let pp = PlanePolynomials::new(&g);
        for (t, s) in [(0.37, -1.4), (2.5, 0.2), (-1.7, 3.1)] {
            let direct = obstructions_ts(&g, t, s).coefficients();
            for k in pp.coef.keys() {
                let want = direct.get(k).copied().unwrap_or_default();
                assert!((pp.eval(k, t, s) - want).norm() < 1e-9, "{k:?} at ({t},{s})");
            }
            for k in direct.keys() {
                assert!(pp.coef.contains_key(k));
            }
        }
    }

    #[test]
    fn exceptional_sets() {
        assert!(exceptional_only(&[]));
        assert!(exceptional_only(&[(0.4, 0.0)]));
        assert!(exceptional_only(&[(0.0, 1.0), (0.0, -1.0)]));
        assert!(exceptional_only(&[(-1.0, 0.0), (-1.0, 2.0), (1.0 / 3.0, -2.0)]));
        assert!(!exceptional_only(&[(1.0, 0.0), (0.0, 1.0)]));
        assert!(!exceptional_only(&[(-1.0, 0.0), (0.0, 1.0)]));
    }

    #[test]
    fn snapping() {
        assert_eq!(snap(0.33333333333), 1.0 / 3.0);
        assert_eq!(snap(-2.0000000000001), -2.0);
        assert_eq!(snap(0.123456789), 0.123456789);
    }
}
