//! The two-parameter plane of canonical connections `D^r_s`.

use std::fmt;

use ndarray::{Array2, Array4};

use crate::error::{Error, Result};
use crate::exterior::{Form, FormMatrix, C64};
use crate::hermitian::ChernData;

/// A point `(r, s)` of the connection plane.
///
/// `D^r_s = (1−s)·D^r + s·∇` with `D^r` on the Gauduchon line and `∇` the
/// Riemannian connection. Points with `s = 1, r ≠ 0` are rejected: every
/// such point is `∇` again, so only `(0, 1)` is kept.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConnectionParams {
    r: f64,
    s: f64,
}

impl ConnectionParams {
    pub fn new(r: f64, s: f64) -> Result<Self> {
        if !r.is_finite() || !s.is_finite() {
            return Err(Error::Params(format!("non-finite parameters ({r}, {s})")));
        }
        if s == 1.0 && r != 0.0 {
            return Err(Error::Params(format!(
                "(r, s) = ({r}, 1) lies on the excluded line s = 1, r != 0; use (0, 1) for the Riemannian connection"
            )));
        }
        Ok(ConnectionParams { r, s })
    }

    /// `D^r`, i.e. `s = 0`.
    pub fn gauduchon(r: f64) -> Result<Self> {
        Self::new(r, 0.0)
    }

    pub fn chern() -> Self {
        ConnectionParams { r: 1.0, s: 0.0 }
    }
    pub fn strominger() -> Self {
        ConnectionParams { r: -1.0, s: 0.0 }
    }
    pub fn lichnerowicz() -> Self {
        ConnectionParams { r: 0.0, s: 0.0 }
    }
    pub fn riemannian() -> Self {
        ConnectionParams { r: 0.0, s: 1.0 }
    }

    pub fn r(&self) -> f64 {
        self.r
    }
    pub fn s(&self) -> f64 {
        self.s
    }
    /// `t = 1 − r + rs`.
    pub fn t(&self) -> f64 {
        1.0 - self.r + self.r * self.s
    }

    /// Image under [`psi`].
    pub fn dual(&self) -> Result<Self> {
        let (r, s) = psi(self.r, self.s)?;
        Self::new(r, s)
    }
}

impl fmt::Display for ConnectionParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r={}, s={})", self.r, self.s)
    }
}

/// `ξ(r) = r / (2r − 1)`, the involution pairing Gauduchon connections.
pub fn xi(r: f64) -> Result<f64> {
    if r == 0.5 {
        return Err(Error::Params("xi is undefined at r = 1/2".into()));
    }
    Ok(r / (2.0 * r - 1.0))
}

/// `Ψ(r, s) = ((1−s)/(1+s)·r, −s)`; preserves `t`.
pub fn psi(r: f64, s: f64) -> Result<(f64, f64)> {
    if s == 0.0 || s == 1.0 || s == -1.0 {
        return Err(Error::Params(format!("psi requires s not in {{0, 1, -1}}, got s = {s}")));
    }
    Ok(((1.0 - s) / (1.0 + s) * r, -s))
}

#[derive(Clone, Debug)]
pub struct GammaTheta2 {
    /// `γ_{ij} = Σ_k { T^j_{ik} φ_k − conj(T^i_{jk}) φ̄_k }`
    pub gamma: FormMatrix,
    pub gamma10: FormMatrix,
    pub gamma01: FormMatrix,
    /// `(θ₂)_{ij} = Σ_k conj(T^k_{ij}) φ_k`
    pub theta2: FormMatrix,
}

pub fn gamma_theta2(cd: &ChernData) -> GammaTheta2 {
    let n = cd.n;
    let gamma10 = FormMatrix::from_fn(n, n, n, 1, |i, j| {
        let mut f = Form::zero(n, 1);
        for k in 0..n {
            f = &f + &Form::phi(n, k).scale(cd.t(j, i, k));
        }
        f
    });
    let gamma01 = FormMatrix::from_fn(n, n, n, 1, |i, j| {
        let mut f = Form::zero(n, 1);
        for k in 0..n {
            f = &f - &Form::phi_bar(n, k).scale(cd.t(i, j, k).conj());
        }
        f
    });
    let theta2 = FormMatrix::from_fn(n, n, n, 1, |i, j| {
        let mut f = Form::zero(n, 1);
        for k in 0..n {
            f = &f + &Form::phi(n, k).scale(cd.t(k, i, j).conj());
        }
        f
    });
    GammaTheta2 {
        gamma: gamma10.add(&gamma01),
        gamma10,
        gamma01,
        theta2,
    }
}

/// Chern data together with `γ` and `θ₂`, the inputs shared by every
/// point of the plane.
#[derive(Clone, Debug)]
pub struct Geometry {
    pub cd: ChernData,
    pub gt: GammaTheta2,
}

impl Geometry {
    pub fn new(cd: ChernData) -> Self {
        let gt = gamma_theta2(&cd);
        Geometry { cd, gt }
    }

    pub fn from_spec(spec: &crate::hermitian::ManifoldSpec) -> Result<Self> {
        Ok(Geometry::new(crate::hermitian::chern_data(spec)?))
    }

    pub fn n(&self) -> usize {
        self.cd.n
    }

    pub fn blocks(&self, p: ConnectionParams) -> ConnectionBlocks {
        connection_blocks(&self.cd, &self.gt, p)
    }

    pub fn curvature(&self, p: ConnectionParams) -> CurvatureBlocks {
        curvature_blocks(&self.cd, &self.gt, p)
    }

    pub fn curvature_ts(&self, t: f64, s: f64) -> CurvatureBlocks {
        curvature_blocks_ts(&self.cd, &self.gt, t, s)
    }

    pub fn full_curvature(&self, p: ConnectionParams) -> FormMatrix {
        full_curvature(&self.cd, &self.blocks(p))
    }

    pub fn covariant(&self, r: f64) -> CovariantDerivatives {
        covariant_derivative(&self.cd, &self.gt, r)
    }
}

/// `θ^r = θ + (1−r)γ`.
pub fn gauduchon_theta(cd: &ChernData, gt: &GammaTheta2, r: f64) -> FormMatrix {
    cd.theta.add(&gt.gamma.scale_re(1.0 - r))
}

/// `Θ^r = dθ^r − θ^r∧θ^r`, computed directly on the Gauduchon line.
pub fn gauduchon_curvature(cd: &ChernData, gt: &GammaTheta2, r: f64) -> FormMatrix {
    let th = gauduchon_theta(cd, gt, r);
    th.d(&cd.sc).sub(&th.wedge(&th))
}

#[derive(Clone, Debug)]
pub struct ConnectionBlocks {
    /// `θ^{(t)} = θ + tγ`
    pub theta_t: FormMatrix,
    /// `2n × 2n` matrix on the frame `(e, ē)`.
    pub full: FormMatrix,
}

pub fn connection_blocks(cd: &ChernData, gt: &GammaTheta2, p: ConnectionParams) -> ConnectionBlocks {
    let theta_t = cd.theta.add(&gt.gamma.scale_re(p.t()));
    let s = p.s();
    let full = FormMatrix::block2(
        &theta_t,
        &gt.theta2.conjugate().scale_re(s),
        &gt.theta2.scale_re(s),
        &theta_t.conjugate(),
    );
    ConnectionBlocks { theta_t, full }
}

#[derive(Clone, Debug)]
pub struct CurvatureBlocks {
    /// `Θ^D_1 = dθ^{(t)} − θ^{(t)}∧θ^{(t)} − s²·θ̄₂∧θ₂`
    pub theta1: FormMatrix,
    /// `Θ^D_2 = s·(dθ₂ − θ₂∧θ^{(t)} − conj(θ^{(t)})∧θ₂)`
    pub theta2: FormMatrix,
}

pub fn curvature_blocks(cd: &ChernData, gt: &GammaTheta2, p: ConnectionParams) -> CurvatureBlocks {
    curvature_blocks_ts(cd, gt, p.t(), p.s())
}

/// [`curvature_blocks`] addressed by `(t, s)` directly. Every `(t, s)` is
/// allowed here, including points with no `(r, s)` preimage.
pub fn curvature_blocks_ts(cd: &ChernData, gt: &GammaTheta2, t: f64, s: f64) -> CurvatureBlocks {
    let tt = cd.theta.add(&gt.gamma.scale_re(t));
    let t2 = &gt.theta2;
    let mut theta1 = tt.d(&cd.sc).sub(&tt.wedge(&tt));
    if s != 0.0 {
        theta1 = theta1.sub(&t2.conjugate().wedge(t2).scale_re(s * s));
    }
    let theta2 = if s == 0.0 {
        FormMatrix::zeros(cd.n, cd.n, cd.n, 2)
    } else {
        t2.d(&cd.sc)
            .sub(&t2.wedge(&tt))
            .sub(&tt.conjugate().wedge(t2))
            .scale_re(s)
    };
    CurvatureBlocks { theta1, theta2 }
}

/// `dθ^D − θ^D∧θ^D` on the whole `2n × 2n` block matrix.
pub fn full_curvature(cd: &ChernData, blocks: &ConnectionBlocks) -> FormMatrix {
    blocks.full.d(&cd.sc).sub(&blocks.full.wedge(&blocks.full))
}

/// Covariant derivatives of the Chern torsion under the Gauduchon
/// connection `D^r`, in the invariant unitary frame.
#[derive(Clone, Debug)]
pub struct CovariantDerivatives {
    pub r: f64,
    /// `dt[[j, i, k, l]] = T^j_{ik,l}`
    pub dt: Array4<C64>,
    /// `dtbar[[j, i, k, l]] = T^j_{ik,l̄}`
    pub dtbar: Array4<C64>,
    /// `deta[[k, l]] = η_{k,l}`
    pub deta: Array2<C64>,
    /// `detabar[[k, l]] = η_{k,l̄}`
    pub detabar: Array2<C64>,
    /// `χ = Σ_k η_{k,k̄}`
    pub chi: C64,
}

/// Pure contraction of `T` with the coefficients of `θ^r`: the components
/// are constant, so the directional-derivative term drops out.
pub fn covariant_derivative(cd: &ChernData, gt: &GammaTheta2, r: f64) -> CovariantDerivatives {
    let n = cd.n;
    let th = gauduchon_theta(cd, gt, r);
    // gam[[i, q, l]] = θ^r_{iq}(e_l), gamb[[i, q, l]] = θ^r_{iq}(ē_l)
    let gam = ndarray::Array3::from_shape_fn((n, n, n), |(i, q, l)| th.get(i, q).eval1(l));
    let gamb = ndarray::Array3::from_shape_fn((n, n, n), |(i, q, l)| th.get(i, q).eval1(n + l));
    let contract = |g: &ndarray::Array3<C64>| {
        Array4::from_shape_fn((n, n, n, n), |(j, i, k, l)| {
            let mut acc = C64::default();
            for q in 0..n {
                acc += cd.t(q, i, k) * g[[q, j, l]];
                acc -= g[[i, q, l]] * cd.t(j, q, k);
                acc -= g[[k, q, l]] * cd.t(j, i, q);
            }
            acc
        })
    };
    let dt = contract(&gam);
    let dtbar = contract(&gamb);
    let trace = |a: &Array4<C64>| Array2::from_shape_fn((n, n), |(k, l)| (0..n).map(|i| a[[i, i, k, l]]).sum());
    let deta = trace(&dt);
    let detabar = trace(&dtbar);
    let chi = (0..n).map(|k| detabar[[k, k]]).sum();
    CovariantDerivatives {
        r,
        dt,
        dtbar,
        deta,
        detabar,
        chi,
    }
}
