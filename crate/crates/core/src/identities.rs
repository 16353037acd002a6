//! Pointwise torsion identities as executable residual checks.
//!
//! Conditional identities carry their hypothesis (usually Kähler-likeness
//! of some connection). When the hypothesis fails the report is marked not
//! applicable and `pass` is left empty; the residual is still recorded.

use serde::Serialize;

use crate::connection::{xi, ConnectionParams, CovariantDerivatives, Geometry};
use crate::exterior::C64;
use crate::hermitian::{kahler_form_data, torsion_invariants, KahlerFormData, TorsionInvariants};
use crate::kahler_like::{is_kahler_like, plane_locus};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub anchor: String,
    /// Parameters the check was run at, e.g. `r=-1` or `r=1,r'=-1`.
    pub at: String,
    pub applicable: bool,
    pub residual: f64,
    pub pass: Option<bool>,
    /// 1-based index tuple of the largest residual, when indexed.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub worst: Vec<usize>,
}

/// Running maximum of `|value|` with the index tuple where it occurred.
#[derive(Default)]
struct Acc {
    max: f64,
    worst: Vec<usize>,
}

impl Acc {
    fn push(&mut self, v: C64, idx: &[usize]) {
        let a = v.norm();
        if a > self.max || (self.worst.is_empty() && !idx.is_empty()) {
            if a > self.max {
                self.max = a;
            }
            self.worst = idx.iter().map(|i| i + 1).collect();
        }
    }
}

fn report(id: &str, anchor: &str, at: String, applicable: bool, acc: Acc, tol: f64) -> IdentityReport {
    IdentityReport {
        id: id.to_string(),
        anchor: anchor.to_string(),
        at,
        applicable,
        residual: acc.max,
        pass: applicable.then_some(acc.max < tol),
        worst: if acc.max > 0.0 { acc.worst } else { Vec::new() },
    }
}

fn fmt_r(r: f64) -> String {
    format!("{r}")
}

/// Shared per-manifold quantities.
struct Ctx<'a> {
    geo: &'a Geometry,
    n: usize,
    inv: TorsionInvariants,
}

impl<'a> Ctx<'a> {
    fn new(geo: &'a Geometry) -> Self {
        Ctx {
            geo,
            n: geo.n(),
            inv: torsion_invariants(&geo.cd),
        }
    }

    #[inline]
    fn t(&self, k: usize, i: usize, j: usize) -> C64 {
        self.geo.cd.t(k, i, j)
    }

    fn sum_q(&self, f: impl Fn(usize) -> C64) -> C64 {
        (0..self.n).map(f).sum()
    }

    /// `w = Σ_q T^q_{ik} conj(T^q_{jl})`
    fn w(&self, i: usize, j: usize, k: usize, l: usize) -> C64 {
        self.sum_q(|q| self.t(q, i, k) * self.t(q, j, l).conj())
    }
    /// `v^j_i = Σ_q T^j_{iq} conj(T^k_{lq})`
    fn v_ji(&self, i: usize, j: usize, k: usize, l: usize) -> C64 {
        self.sum_q(|q| self.t(j, i, q) * self.t(k, l, q).conj())
    }
    /// `v^l_k = Σ_q T^l_{kq} conj(T^i_{jq})`
    fn v_lk(&self, i: usize, j: usize, k: usize, l: usize) -> C64 {
        self.sum_q(|q| self.t(l, k, q) * self.t(i, j, q).conj())
    }
    /// `v^j_k = Σ_q T^j_{kq} conj(T^i_{lq})`
    fn v_jk(&self, i: usize, j: usize, k: usize, l: usize) -> C64 {
        self.sum_q(|q| self.t(j, k, q) * self.t(i, l, q).conj())
    }
    /// `v^l_i = Σ_q T^l_{iq} conj(T^k_{jq})`
    fn v_li(&self, i: usize, j: usize, k: usize, l: usize) -> C64 {
        self.sum_q(|q| self.t(l, i, q) * self.t(k, j, q).conj())
    }
    /// `Σ_q T^q_{ik} T^j_{lq}`
    fn tt(&self, i: usize, j: usize, k: usize, l: usize) -> C64 {
        self.sum_q(|q| self.t(q, i, k) * self.t(j, l, q))
    }

    fn quad(&self, mut f: impl FnMut(usize, usize, usize, usize) -> C64) -> Acc {
        let mut acc = Acc::default();
        let n = self.n;
        for j in 0..n {
            for i in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        acc.push(f(i, j, k, l), &[i, j, k, l]);
                    }
                }
            }
        }
        acc
    }

    fn pair(&self, mut f: impl FnMut(usize, usize) -> C64) -> Acc {
        let mut acc = Acc::default();
        for k in 0..self.n {
            for l in 0..self.n {
                acc.push(f(k, l), &[k, l]);
            }
        }
        acc
    }

    fn kl(&self, r: f64, s: f64, tol: f64) -> bool {
        match ConnectionParams::new(r, s) {
            Ok(p) => is_kahler_like(self.geo, p, tol).kahler_like,
            Err(_) => false,
        }
    }
}

/// The four unconditional transfer identities between `D^r` and `D^{r'}`.
pub fn check_transfer(geo: &Geometry, r: f64, r2: f64, tol: f64) -> Vec<IdentityReport> {
    let cx = Ctx::new(geo);
    let a = geo.covariant(r);
    let b = geo.covariant(r2);
    transfer_with(&cx, &a, &b, tol)
}

fn transfer_with(cx: &Ctx, a: &CovariantDerivatives, b: &CovariantDerivatives, tol: f64) -> Vec<IdentityReport> {
    let (r, r2) = (a.r, b.r);
    let at = format!("r={},r'={}", fmt_r(r), fmt_r(r2));
    let t = |k, i, j| cx.t(k, i, j);
    let dbar = cx.quad(|i, j, k, l| {
        let corr = cx.sum_q(|q| {
            t(j, q, k) * t(i, q, l).conj() + t(j, i, q) * t(k, q, l).conj() - t(q, i, k) * t(q, j, l).conj()
        });
        b.dtbar[[j, i, k, l]] - a.dtbar[[j, i, k, l]] - corr * (r - r2)
    });
    let d = cx.quad(|i, j, k, l| {
        let corr = cx.sum_q(|q| t(q, l, i) * t(j, k, q) + t(q, k, l) * t(j, i, q) + t(q, i, k) * t(j, l, q));
        b.dt[[j, i, k, l]] - a.dt[[j, i, k, l]] - corr * (r2 - r)
    });
    let eta = cx.pair(|k, l| b.detabar[[k, l]] - a.detabar[[k, l]] - cx.inv.phi[[l, k]].conj() * (r2 - r));
    let mut chi = Acc::default();
    chi.push(b.chi - a.chi - (r2 - r) * cx.inv.norm_eta2, &[]);
    vec![
        report(
            "transfer.dbar_torsion",
            "T^j_{ik|l̄} = T^j_{ik,l̄} + (r-r')(T^j_{qk}T̄^i_{ql} + T^j_{iq}T̄^k_{ql} - T^q_{ik}T̄^q_{jl})",
            at.clone(),
            true,
            dbar,
            tol,
        ),
        report(
            "transfer.d_torsion",
            "T^j_{ik|l} = T^j_{ik,l} + (r'-r)(T^q_{li}T^j_{kq} + T^q_{kl}T^j_{iq} + T^q_{ik}T^j_{lq})",
            at.clone(),
            true,
            d,
            tol,
        ),
        report("transfer.eta", "η_{k|l̄} = η_{k,l̄} + (r'-r) conj(φ^k_l)", at.clone(), true, eta, tol),
        report("transfer.chi", "χ' = χ + (r'-r)|η|²", at, true, chi, tol),
    ]
}

/// Identities implied by Kähler-likeness of a single Gauduchon connection.
pub fn check_gauduchon(geo: &Geometry, r: f64, tol: f64) -> Vec<IdentityReport> {
    let cx = Ctx::new(geo);
    let held = cx.kl(r, 0.0, tol);
    let cv = geo.covariant(r);
    let at = format!("r={}", fmt_r(r));
    let t = |k, i, j| cx.t(k, i, j);
    let inv = &cx.inv;
    let mut out = Vec::new();

    let d = cx.quad(|i, j, k, l| {
        // T^l_{ik,j} + (1+r) Σ_q T^q_{ik} T^l_{jq}
        cv.dt[[l, i, k, j]] + cx.tt(i, l, k, j) * (1.0 + r)
    });
    out.push(report(
        "gauduchon.d_torsion",
        "T^l_{ik,j} = -(1+r) Σ_q T^q_{ik} T^l_{jq}   (r ≠ 1)",
        at.clone(),
        held && r != 1.0,
        d,
        tol,
    ));
    let cyc = cx.quad(|i, j, k, l| {
        cx.sum_q(|q| t(q, i, j) * t(l, k, q) + t(q, k, i) * t(l, j, q) + t(q, j, k) * t(l, i, q)) * r
    });
    out.push(report(
        "gauduchon.cyclic",
        "r Σ_q (T^q_{ij}T^l_{kq} + T^q_{ki}T^l_{jq} + T^q_{jk}T^l_{iq}) = 0   (r ≠ 1)",
        at.clone(),
        held && r != 1.0,
        cyc,
        tol,
    ));

    let dbar = cx.quad(|i, j, k, l| {
        let rhs = cx.w(i, j, k, l) * (4.0 * r * r * (r - 1.0))
            + cx.sum_q(|q| t(j, i, q) * t(k, l, q).conj() - t(j, k, q) * t(i, l, q).conj()) * ((r - 1.0) * (5.0 * r * r - 1.0))
            - cx.sum_q(|q| t(l, i, q) * t(k, j, q).conj() - t(l, k, q) * t(i, j, q).conj()) * (r - 1.0).powi(3);
        cv.dtbar[[j, i, k, l]] * (4.0 * r * (2.0 * r - 1.0)) - rhs
    });
    out.push(report(
        "gauduchon.dbar_torsion",
        "4r(2r-1)T^j_{ik,l̄} = 4r²(r-1)w + (r-1)(5r²-1)Σ(T^j_{iq}T̄^k_{lq} - T^j_{kq}T̄^i_{lq}) - (r-1)³Σ(T^l_{iq}T̄^k_{jq} - T^l_{kq}T̄^i_{jq})",
        at.clone(),
        held,
        dbar,
        tol,
    ));
    let deta = cx.pair(|k, l| {
        let a = inv.a[[k, l]];
        let rhs = a * (4.0 * r * r * (r - 1.0)) + (inv.phi[[l, k]].conj() - a) * ((r - 1.0) * (5.0 * r * r - 1.0))
            - (inv.b[[k, l]] - inv.phi[[k, l]]) * (r - 1.0).powi(3);
        cv.detabar[[k, l]] * (4.0 * r * (2.0 * r - 1.0)) - rhs
    });
    out.push(report(
        "gauduchon.dbar_eta",
        "4r(2r-1)η_{k,l̄} = 4r²(r-1)A + (r-1)(5r²-1)(φ* - A) - (r-1)³(B - φ)",
        at.clone(),
        held,
        deta,
        tol,
    ));
    let mut chi = Acc::default();
    chi.push(
        cv.chi * (2.0 * (2.0 * r - 1.0))
            - ((r - 1.0) * (3.0 * r - 1.0) * inv.norm_eta2 - (r - 1.0).powi(2) * inv.norm_t2),
        &[],
    );
    out.push(report(
        "gauduchon.chi",
        "2(2r-1)χ = (r-1)(3r-1)|η|² - (r-1)²|T|²",
        at.clone(),
        held,
        chi,
        tol,
    ));
    let mut half = Acc::default();
    half.push(C64::new(inv.norm_t2.sqrt(), 0.0), &[]);
    out.push(report(
        "gauduchon.half_rigidity",
        "D^{1/2} Kähler-like ⇒ T = 0",
        at.clone(),
        held && r == 0.5,
        half,
        tol,
    ));
    out.push(check_ddbar_volume_with(&cx, r, held, tol));
    if r == 0.0 {
        out.extend(balanced_with(&cx, held, tol));
    }
    out
}

fn check_ddbar_volume_with(cx: &Ctx, r: f64, held: bool, tol: f64) -> IdentityReport {
    let n = cx.n;
    let kd = kahler_form_data(&cx.geo.cd);
    let lhs = KahlerFormData::top_coeff(&kd.i_ddbar_omega_pow) * (n as f64 * (2.0 * r - 1.0));
    let factor = (r - 1.0).powi(2) * cx.inv.norm_t2 + (r * r + 6.0 * r - 3.0) * cx.inv.norm_eta2;
    let rhs = KahlerFormData::top_coeff(&kd.omega_n) * factor;
    let mut acc = Acc::default();
    acc.push(lhs - rhs, &[]);
    report(
        "gauduchon.ddbar_volume",
        "n(2r-1)√-1 ∂∂̄ω^{n-1} = {(r-1)²|T|² + (r²+6r-3)|η|²} ω^n",
        format!("r={}", fmt_r(r)),
        held,
        acc,
        tol,
    )
}

/// `n(2r−1)√−1∂∂̄ω^{n−1}` against the torsion norms, under `D^r` Kähler-like.
pub fn check_ddbar_volume(geo: &Geometry, r: f64, tol: f64) -> IdentityReport {
    let cx = Ctx::new(geo);
    let held = cx.kl(r, 0.0, tol);
    check_ddbar_volume_with(&cx, r, held, tol)
}

fn balanced_with(cx: &Ctx, held: bool, tol: f64) -> Vec<IdentityReport> {
    let inv = &cx.inv;
    let mut eta = Acc::default();
    for k in 0..cx.n {
        eta.push(inv.eta[k], &[k]);
    }
    let ab = cx.pair(|k, l| inv.a[[k, l]] - inv.b[[k, l]]);
    let ph = cx.pair(|k, l| inv.phi[[k, l]] - inv.phi[[l, k]].conj());
    let at = "r=0".to_string();
    vec![
        report("lichnerowicz.balanced", "D^0 Kähler-like ⇒ η = 0", at.clone(), held, eta, tol),
        report("lichnerowicz.a_eq_b", "D^0 Kähler-like ⇒ A = B", at.clone(), held, ab, tol),
        report("lichnerowicz.phi_hermitian", "D^0 Kähler-like ⇒ φ = φ*", at, held, ph, tol),
    ]
}

/// Balancedness and `A = B`, `φ = φ*` under a Kähler-like `D^0`.
pub fn check_balanced(geo: &Geometry, tol: f64) -> Vec<IdentityReport> {
    let cx = Ctx::new(geo);
    let held = cx.kl(0.0, 0.0, tol);
    balanced_with(&cx, held, tol)
}

/// Identities needing two Kähler-like Gauduchon connections `D^r`, `D^{r'}`.
pub fn check_gauduchon_pair(geo: &Geometry, r: f64, r2: f64, tol: f64) -> Vec<IdentityReport> {
    let cx = Ctx::new(geo);
    let both = r != r2 && cx.kl(r, 0.0, tol) && cx.kl(r2, 0.0, tol);
    let at = format!("r={},r'={}", fmt_r(r), fmt_r(r2));
    let inv = &cx.inv;
    let mut out = Vec::new();

    let mut l6 = Acc::default();
    l6.push(C64::new((2.0 * r * r2 - r - r2) * (inv.norm_eta2 + inv.norm_t2), 0.0), &[]);
    out.push(report(
        "gauduchon_pair.norms",
        "(2rr'-r-r')(|η|² + |T|²) = 0",
        at.clone(),
        both,
        l6,
        tol,
    ));

    let a = cx.geo.covariant(r);
    let b = cx.geo.covariant(r2);
    let mut l7 = Acc::default();
    for (idx, v) in a.dt.indexed_iter() {
        l7.push(*v, &[idx.0, idx.1, idx.2, idx.3]);
    }
    for (idx, v) in b.dt.indexed_iter() {
        l7.push(*v, &[idx.0, idx.1, idx.2, idx.3]);
    }
    let tt = cx.quad(|i, j, k, l| cx.sum_q(|q| cx.t(q, i, k) * cx.t(j, q, l)));
    if tt.max > l7.max {
        l7 = tt;
    }
    for i in 0..cx.n {
        for j in 0..cx.n {
            l7.push(inv.c[[i, j]], &[i, j]);
        }
    }
    out.push(report(
        "gauduchon_pair.d_torsion_vanishes",
        "T^j_{ik,l} = T^j_{ik|l} = Σ_q T^q_{ik}T^j_{ql} = 0, C = 0   (r ≠ 0,1; r' ≠ 1)",
        at.clone(),
        both && r != 0.0 && r != 1.0 && r2 != 1.0,
        l7,
        tol,
    ));

    let dual = r != 0.5 && xi(r).is_ok_and(|x| (x - r2).abs() < 1e-12) && r2 != r;
    let ab = cx.pair(|k, l| inv.a[[k, l]] - inv.b[[k, l]]);
    let ph = cx.pair(|k, l| inv.phi[[k, l]] - inv.phi[[l, k]].conj());
    let den = 2.0 * (2.0 * r - 1.0);
    let de = cx.pair(|k, l| {
        a.detabar[[k, l]] - inv.phi[[k, l]] * ((r - 1.0) * (3.0 * r - 1.0) / den) + inv.a[[k, l]] * ((r - 1.0).powi(2) / den)
    });
    let mut l8 = ab;
    for acc in [ph, de] {
        if acc.max > l8.max {
            l8 = acc;
        }
    }
    out.push(report(
        "gauduchon_pair.dual",
        "r' = ξ(r): A = B, φ = φ*, η_{k,l̄} = (r-1)(3r-1)/(2(2r-1)) φ - (r-1)²/(2(2r-1)) A",
        at,
        both && dual,
        l8,
        tol,
    ));
    out
}

/// Identities implied by Kähler-likeness of `D^r_s`, with derivatives
/// taken for `D^{1−t}`.
pub fn check_plane(geo: &Geometry, p: ConnectionParams, tol: f64) -> Vec<IdentityReport> {
    let cx = Ctx::new(geo);
    let held = is_kahler_like(geo, p, tol).kahler_like;
    let (t, s) = (p.t(), p.s());
    let cv = geo.covariant(1.0 - t);
    let at = format!("r={},s={}", fmt_r(p.r()), fmt_r(s));
    let tf = |k, i, j| cx.t(k, i, j);
    let dt = |j: usize, i: usize, k: usize, l: usize| cv.dt[[j, i, k, l]];
    let dtb = |j: usize, i: usize, k: usize, l: usize| cv.dtbar[[j, i, k, l]];
    let mut out = Vec::new();

    let e = |i, j, k, l| dt(j, i, k, l) + cx.tt(i, j, k, l) * (3.0 * t - 2.0);
    let a = cx.quad(|i, j, k, l| e(i, j, k, l) + e(k, j, l, i) + e(l, j, i, k));
    out.push(report(
        "plane.cyclic_d_torsion",
        "S_{ikl}{T^j_{ik,l} + (3t-2)T^q_{ik}T^j_{lq}} = 0",
        at.clone(),
        held,
        a,
        tol,
    ));
    let a = cx.quad(|i, j, k, l| (dt(j, i, k, l) + cx.tt(i, j, k, l) * t) * s);
    out.push(report("plane.d_torsion", "s{T^j_{ik,l} + t T^q_{ik}T^j_{lq}} = 0", at.clone(), held, a, tol));
    let a = cx.quad(|i, j, k, l| (dtb(j, i, k, l) - dtb(l, i, k, j) + cx.w(i, j, k, l) * (2.0 * (t - 1.0))) * s);
    out.push(report(
        "plane.dbar_torsion_skew",
        "s{T^j_{ik,l̄} - T^l_{ik,j̄} + 2(t-1)w} = 0",
        at.clone(),
        held,
        a,
        tol,
    ));
    let a = cx.quad(|i, j, k, l| {
        (dt(j, i, k, l) - dt(j, i, l, k)
            + cx.sum_q(|q| tf(q, k, l) * tf(j, i, q)) * (2.0 * (t - 1.0))
            + cx.tt(i, j, k, l) * t
            + cx.sum_q(|q| tf(q, l, i) * tf(j, k, q)) * t)
            * t
    });
    out.push(report(
        "plane.d_torsion_skew",
        "t{T^j_{ik,l} - T^j_{il,k} + 2(t-1)T^q_{kl}T^j_{iq} + tT^q_{ik}T^j_{lq} + tT^q_{li}T^j_{kq}} = 0",
        at.clone(),
        held,
        a,
        tol,
    ));
    let a = cx.quad(|i, j, k, l| {
        let lhs = dtb(j, i, k, l) * (2.0 * (t - 1.0)) + (dtb(i, j, l, k).conj() - dtb(k, j, l, i).conj()) * t;
        let rhs = (cx.w(i, j, k, l) + cx.v_ji(i, j, k, l) - cx.v_jk(i, j, k, l)) * (-2.0 * t * (t - 1.0))
            + (cx.v_li(i, j, k, l) - cx.v_lk(i, j, k, l)) * (t * t - s * s);
        lhs - rhs
    });
    out.push(report(
        "plane.dbar_torsion_mixed",
        "2(t-1)T^j_{ik,l̄} + t(conj T^i_{jl,k̄} - conj T^k_{jl,ī}) = -2t(t-1)(w + v^j_i - v^j_k) + (t²-s²)(v^l_i - v^l_k)",
        at.clone(),
        held,
        a,
        tol,
    ));
    let a = cx.quad(|i, j, k, l| {
        let rhs = cx.w(i, j, k, l) * (-4.0 * t * (t - 1.0).powi(2))
            - (cx.v_ji(i, j, k, l) - cx.v_jk(i, j, k, l)) * (t * (5.0 * t * t - 10.0 * t + 4.0 + s * s))
            + (cx.v_li(i, j, k, l) - cx.v_lk(i, j, k, l)) * (t.powi(3) - 3.0 * s * s * t + 2.0 * s * s);
        dtb(j, i, k, l) * (4.0 * (t - 1.0) * (2.0 * t - 1.0)) - rhs
    });
    out.push(report(
        "plane.dbar_torsion",
        "4(t-1)(2t-1)T^j_{ik,l̄} = -4t(t-1)²w - t(5t²-10t+4+s²)(v^j_i - v^j_k) + (t³-3s²t+2s²)(v^l_i - v^l_k)",
        at.clone(),
        held,
        a,
        tol,
    ));
    let mut key = Acc::default();
    for i in 0..cx.n {
        for k in 0..cx.n {
            let lhs: f64 = (0..cx.n).map(|q| tf(q, i, k).norm_sqr()).sum();
            let bracket: f64 = (0..cx.n)
                .map(|q| 2.0 * (tf(i, i, q) * tf(k, k, q).conj()).re - tf(i, k, q).norm_sqr() - tf(k, i, q).norm_sqr())
                .sum();
            let v = if t == 0.5 {
                lhs - (0.25 + s * s) * bracket
            } else {
                4.0 * s * (t - 1.0).powi(2) * lhs - s * (3.0 * t * t - 2.0 * t - s * s) * bracket
            };
            key.push(C64::new(v, 0.0), &[i, k]);
        }
    }
    out.push(report(
        "plane.norm_balance",
        "4s(t-1)² Σ_q|T^q_{ik}|² = s(3t²-2t-s²) Σ_q{2Re(T^i_{iq}T̄^k_{kq}) - |T^i_{kq}|² - |T^k_{iq}|²}  (t = 1/2: without s)",
        at,
        held,
        key,
        tol,
    ));
    out
}

/// The system equivalent to `∇^+` Kähler-like, with Chern derivatives,
/// plus parallelism of `T` under the Strominger connection.
pub fn check_strominger_system(geo: &Geometry, tol: f64) -> Vec<IdentityReport> {
    let cx = Ctx::new(geo);
    let held = cx.kl(-1.0, 2.0, tol);
    let ch = geo.covariant(1.0);
    let st = geo.covariant(-1.0);
    let at = "r=-1,s=2".to_string();
    let tf = |k, i, j| cx.t(k, i, j);
    let mut out = Vec::new();
    let a = cx.quad(|i, j, k, l| ch.dt[[j, i, k, l]]);
    out.push(report("strominger.d_torsion", "T^j_{ik,l} = 0 (Chern)", at.clone(), held, a, tol));
    let a = cx.quad(|i, j, k, l| cx.sum_q(|q| tf(q, i, k) * tf(j, l, q) + tf(q, l, i) * tf(j, k, q) + tf(q, k, l) * tf(j, i, q)));
    out.push(report(
        "strominger.cyclic",
        "Σ_q (T^q_{ik}T^j_{lq} + T^q_{li}T^j_{kq} + T^q_{kl}T^j_{iq}) = 0",
        at.clone(),
        held,
        a,
        tol,
    ));
    let a = cx.quad(|i, j, k, l| ch.dtbar[[j, i, k, l]] - ch.dtbar[[l, i, k, j]] - cx.w(i, j, k, l) * 2.0);
    out.push(report(
        "strominger.dbar_torsion_skew",
        "T^j_{ik,l̄} - T^l_{ik,j̄} = 2w (Chern)",
        at.clone(),
        held,
        a,
        tol,
    ));
    let a = cx.quad(|i, j, k, l| ch.dtbar[[j, i, k, l]] - (cx.v_li(i, j, k, l) - cx.v_lk(i, j, k, l)) * 2.0);
    out.push(report(
        "strominger.dbar_torsion",
        "T^j_{ik,l̄} = 2(v^l_i - v^l_k) (Chern)",
        at.clone(),
        held,
        a,
        tol,
    ));
    let a = cx.quad(|i, j, k, l| {
        cx.w(i, j, k, l) + cx.v_ji(i, j, k, l) + cx.v_lk(i, j, k, l) - cx.v_li(i, j, k, l) - cx.v_jk(i, j, k, l)
    });
    out.push(report(
        "strominger.quadratic",
        "w + v^j_i + v^l_k - v^l_i - v^j_k = 0",
        at.clone(),
        held,
        a,
        tol,
    ));
    let mut par = cx.quad(|i, j, k, l| st.dtbar[[j, i, k, l]]);
    let d = cx.quad(|i, j, k, l| st.dt[[j, i, k, l]]);
    if d.max > par.max {
        par = d;
    }
    out.push(report(
        "strominger.parallel",
        "T^j_{ik|l} = T^j_{ik|l̄} = 0 (Strominger)",
        at,
        held,
        par,
        tol,
    ));
    out
}

/// What [`run_suite`] evaluates.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub tol: f64,
    /// Gauduchon parameters for the single-connection checks.
    pub gauduchon: Vec<f64>,
    /// Plane points for the `D^r_s` checks.
    pub plane: Vec<(f64, f64)>,
    /// Pairs for the transfer identities.
    pub transfer: Vec<(f64, f64)>,
    /// Add locus points found by the solver to the lists above.
    pub include_locus: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            tol: crate::kahler_like::DEFAULT_TOL,
            gauduchon: vec![1.0, -1.0, 0.0, 1.0 / 3.0, 0.5],
            plane: vec![(-1.0, 2.0), (1.0 / 3.0, -2.0), (0.0, 1.0), (0.0, -1.0), (1.0, 0.0), (-1.0, 0.0)],
            transfer: vec![(1.0, -1.0), (0.0, 1.0 / 3.0), (-0.7, 2.3)],
            include_locus: true,
        }
    }
}

fn push_unique(v: &mut Vec<f64>, x: f64) {
    if !v.iter().any(|y| (y - x).abs() < 1e-12) {
        v.push(x);
    }
}

/// Every check at the configured points, in a fixed order.
pub fn run_suite(geo: &Geometry, cfg: &SuiteConfig) -> Vec<IdentityReport> {
    let tol = cfg.tol;
    let mut rs = cfg.gauduchon.clone();
    let mut plane = cfg.plane.clone();
    if cfg.include_locus {
        let loc = plane_locus(geo, tol);
        for p in loc.points() {
            if p.s == 0.0 {
                push_unique(&mut rs, p.r);
            } else if !plane.iter().any(|&(r, s)| (r - p.r).abs() < 1e-12 && (s - p.s).abs() < 1e-12) {
                plane.push((p.r, p.s));
            }
        }
    }
    let cx = Ctx::new(geo);
    let mut out = Vec::new();
    for &(a, b) in &cfg.transfer {
        out.extend(transfer_with(&cx, &geo.covariant(a), &geo.covariant(b), tol));
    }
    for &r in &rs {
        out.extend(check_gauduchon(geo, r, tol));
    }
    if !rs.contains(&0.0) {
        out.extend(check_balanced(geo, tol));
    }
    for (ix, &r) in rs.iter().enumerate() {
        for &r2 in &rs[ix + 1..] {
            out.extend(check_gauduchon_pair(geo, r, r2, tol));
        }
        if let Ok(x) = xi(r) {
            if x != r && !rs.iter().any(|y| (y - x).abs() < 1e-12) {
                out.extend(check_gauduchon_pair(geo, r, x, tol));
            }
        }
    }
    for &(r, s) in &plane {
        if let Ok(p) = ConnectionParams::new(r, s) {
            out.extend(check_plane(geo, p, tol));
        }
    }
    out.extend(check_strominger_system(geo, tol));
    out
}

/// True when no applicable check failed.
pub fn all_pass(reports: &[IdentityReport]) -> bool {
    reports.iter().all(|r| r.pass != Some(false))
}
