//! Small dense real polynomials: evaluation, interpolation on `{0, 1, −1}`
//! and real roots through the companion matrix.

use nalgebra::DMatrix;

use crate::exterior::C64;

/// Coefficients in ascending order, `c[0] + c[1] x + …`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly(pub Vec<f64>);

/// Sample points used by [`interp3`].
pub const NODES: [f64; 3] = [0.0, 1.0, -1.0];

impl Poly {
    pub fn zero() -> Self {
        Poly(vec![0.0])
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    /// Degree after dropping leading coefficients at or below `tol`.
    pub fn degree(&self, tol: f64) -> Option<usize> {
        self.0.iter().rposition(|c| c.abs() > tol)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![0.0; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let len = self.0.len().max(other.0.len());
        Poly(
            (0..len)
                .map(|i| self.0.get(i).copied().unwrap_or(0.0) - other.0.get(i).copied().unwrap_or(0.0))
                .collect(),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.sub(&other.scale(-1.0))
    }

    pub fn scale(&self, c: f64) -> Poly {
        Poly(self.0.iter().map(|x| x * c).collect())
    }

    fn derivative(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly::zero();
        }
        Poly(self.0.iter().enumerate().skip(1).map(|(i, c)| i as f64 * c).collect())
    }

    /// Real roots, after trimming leading coefficients below `rel_tol`
    /// times the largest one. A zero polynomial has no isolated roots and
    /// returns an empty list; callers test [`Poly::is_zero`] first.
    pub fn real_roots(&self, rel_tol: f64) -> Vec<f64> {
        let scale = self.max_abs();
        if scale == 0.0 {
            return Vec::new();
        }
        let Some(deg) = self.degree(rel_tol * scale) else {
            return Vec::new();
        };
        let c = &self.0[..=deg];
        let mut roots = match deg {
            0 => Vec::new(),
            1 => vec![-c[0] / c[1]],
            _ => {
                let lead = c[deg];
                let comp = DMatrix::from_fn(deg, deg, |i, j| {
                    if i == 0 {
                        -c[deg - 1 - j] / lead
                    } else if i == j + 1 {
                        1.0
                    } else {
                        0.0
                    }
                });
                comp.complex_eigenvalues()
                    .iter()
                    .filter(|z| z.im.abs() <= 1e-6 * (1.0 + z.re.abs()))
                    .map(|z| z.re)
                    .collect()
            }
        };
        let trimmed = Poly(c.to_vec());
        let der = trimmed.derivative();
        for x in roots.iter_mut() {
            for _ in 0..4 {
                let d = der.eval(*x);
                if d == 0.0 {
                    break;
                }
                let fx = trimmed.eval(*x);
                let next = *x - fx / d;
                if !next.is_finite() || trimmed.eval(next).abs() >= fx.abs() {
                    break;
                }
                *x = next;
            }
        }
        roots.sort_by(f64::total_cmp);
        roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-6 * (1.0 + b.abs()));
        roots
    }
}

/// Quadratic through the values at `x = 0, 1, −1`.
pub fn interp3(v: [C64; 3]) -> [C64; 3] {
    let [v0, v1, vm] = v;
    [v0, (v1 - vm) * 0.5, (v1 + vm) * 0.5 - v0]
}

/// Split a complex polynomial into real and imaginary parts.
pub fn split(c: &[C64]) -> (Poly, Poly) {
    (Poly(c.iter().map(|z| z.re).collect()), Poly(c.iter().map(|z| z.im).collect()))
}

/// Product of complex coefficient vectors.
pub fn cmul(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::default(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn csub(a: &[C64], b: &[C64]) -> Vec<C64> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| a.get(i).copied().unwrap_or_default() - b.get(i).copied().unwrap_or_default())
        .collect()
}

/// Coefficientwise conjugate; for real `x` this conjugates the value.
pub fn cconj(a: &[C64]) -> Vec<C64> {
    a.iter().map(|z| z.conj()).collect()
}

pub fn eval_complex(c: &[C64], x: f64) -> C64 {
    c.iter().rev().fold(C64::default(), |acc, z| acc * x + z)
}
