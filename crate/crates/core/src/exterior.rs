//! Complexified exterior algebra on an invariant coframe.
//!
//! A form lives on the `2n` coframe labels `φ_1..φ_n, φ̄_1..φ̄_n`. Multi-indices
//! are stored as bitmasks: bit `i` is `φ_{i+1}` and bit `n + i` is `φ̄_{i+1}`.
//! Reading the bits from low to high gives the canonical order (holomorphic
//! labels ascending, then antiholomorphic labels ascending), so every sign in
//! the crate is fixed by that single convention.
//!
//! Coefficients are constant, which is what makes the exterior derivative a
//! purely algebraic operation driven by [`StructureConstants`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Largest supported complex dimension (masks are `u16`).
pub const MAX_DIM: usize = 6;

/// Default absolute tolerance on max-norm coefficient comparisons.
pub const DEFAULT_TOL: f64 = 1e-10;

/// One coframe label, 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Holo(usize),
    Anti(usize),
}

impl Label {
    fn bit(self, dim: usize) -> u32 {
        match self {
            Label::Holo(i) => i as u32,
            Label::Anti(i) => (dim + i) as u32,
        }
    }

    fn index(self) -> usize {
        match self {
            Label::Holo(i) | Label::Anti(i) => i,
        }
    }
}

/// Sign of the shuffle that sorts the concatenation `a ++ b` of two disjoint
/// sorted index sets: `(-1)^{#pairs x∈a, y∈b with x > y}`.
fn shuffle_sign(a: u16, b: u16) -> f64 {
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let y = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (a >> (y + 1)).count_ones();
    }
    if inversions.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// A homogeneous complex differential form with constant coefficients.
#[derive(Clone, PartialEq)]
pub struct Form {
    dim: usize,
    degree: usize,
    terms: BTreeMap<u16, C64>,
}

impl Form {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(
            (1..=MAX_DIM).contains(&dim),
            "complex dimension {dim} out of range"
        );
        assert!(degree <= 2 * dim, "degree {degree} exceeds 2n = {}", 2 * dim);
        Form {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: usize, c: C64) -> Self {
        let mut f = Form::zero(dim, 0);
        f.insert(0, c);
        f
    }

    /// The holomorphic coframe element `φ_{i+1}`.
    pub fn phi(dim: usize, i: usize) -> Self {
        Form::from_labels(dim, &[Label::Holo(i)], C64::new(1.0, 0.0))
    }

    /// The antiholomorphic coframe element `φ̄_{i+1}`.
    pub fn phi_bar(dim: usize, i: usize) -> Self {
        Form::from_labels(dim, &[Label::Anti(i)], C64::new(1.0, 0.0))
    }

    /// `c · l_1 ∧ l_2 ∧ …` in the order given; re-sorted with the permutation
    /// sign. Repeated labels give zero.
    pub fn from_labels(dim: usize, labels: &[Label], c: C64) -> Self {
        let mut f = Form::zero(dim, labels.len());
        let mut mask = 0u16;
        let mut sign = 1.0;
        for l in labels {
            assert!(l.index() < dim, "label {l:?} out of range for n = {dim}");
            let b = 1u16 << l.bit(dim);
            if mask & b != 0 {
                return f;
            }
            sign *= shuffle_sign(mask, b);
            mask |= b;
        }
        f.insert(mask, c * sign);
        f
    }

    /// Build from raw `(mask, coefficient)` pairs; every mask must have
    /// `degree` bits.
    pub fn from_terms(dim: usize, degree: usize, terms: impl IntoIterator<Item = (u16, C64)>) -> Self {
        let mut f = Form::zero(dim, degree);
        for (m, c) in terms {
            assert_eq!(m.count_ones() as usize, degree, "mask degree mismatch");
            assert!((m as u32) < (1u32 << (2 * dim)), "mask out of range");
            f.insert(m, c);
        }
        f
    }

    fn insert(&mut self, mask: u16, c: C64) {
        if c == C64::new(0.0, 0.0) {
            return;
        }
        let e = self.terms.entry(mask).or_insert(C64::new(0.0, 0.0));
        *e += c;
        if *e == C64::new(0.0, 0.0) {
            self.terms.remove(&mask);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Raw `(mask, coefficient)` iterator in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (u16, C64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn coeff(&self, mask: u16) -> C64 {
        self.terms.get(&mask).copied().unwrap_or_default()
    }

    /// Coefficient of `l_1 ∧ l_2 ∧ …` (labels in any order).
    pub fn coeff_of(&self, labels: &[Label]) -> C64 {
        let basis = Form::from_labels(self.dim, labels, C64::new(1.0, 0.0));
        let first = basis.terms().next();
        match first {
            Some((m, sign)) => self.coeff(m) * sign,
            None => C64::new(0.0, 0.0),
        }
    }

    /// Labels of a mask in canonical order.
    pub fn labels_of(dim: usize, mask: u16) -> Vec<Label> {
        (0..2 * dim)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| if b < dim { Label::Holo(b) } else { Label::Anti(b - dim) })
            .collect()
    }

    /// Max coefficient magnitude (0 for the zero form).
    pub fn max_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Drop coefficients with magnitude `<= tol`.
    pub fn prune(&self, tol: f64) -> Form {
        Form {
            dim: self.dim,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.norm() > tol)
                .map(|(&m, &c)| (m, c))
                .collect(),
        }
    }

    pub fn approx_eq(&self, other: &Form, tol: f64) -> bool {
        (self - other).max_norm() <= tol
    }

    pub fn scale(&self, c: C64) -> Form {
        let mut f = Form::zero(self.dim, self.degree);
        for (&m, &v) in &self.terms {
            f.insert(m, v * c);
        }
        f
    }

    pub fn scale_re(&self, c: f64) -> Form {
        self.scale(C64::new(c, 0.0))
    }

    fn check_compatible(&self, other: &Form) {
        assert_eq!(self.dim, other.dim, "forms live on different coframes");
    }

    /// Exterior product. Bilinear, associative and graded-commutative.
    pub fn wedge(&self, other: &Form) -> Form {
        self.check_compatible(other);
        let mut f = Form::zero(self.dim, self.degree + other.degree);
        for (&ma, &ca) in &self.terms {
            for (&mb, &cb) in &other.terms {
                if ma & mb != 0 {
                    continue;
                }
                f.insert(ma | mb, ca * cb * shuffle_sign(ma, mb));
            }
        }
        f
    }

    /// Complex conjugation: swaps `φ_i ↔ φ̄_i`, conjugates coefficients and
    /// re-sorts to canonical order.
    pub fn conjugate(&self) -> Form {
        let n = self.dim;
        let low = (1u16 << n) - 1;
        let mut f = Form::zero(n, self.degree);
        for (&m, &c) in &self.terms {
            let holo = m & low;
            let anti = (m >> n) & low;
            let p = holo.count_ones();
            let q = anti.count_ones();
            // conj(φ_H ∧ φ̄_A) = φ̄_H ∧ φ_A = (-1)^{pq} φ_A ∧ φ̄_H
            let sign = if (p * q).is_multiple_of(2) { 1.0 } else { -1.0 };
            f.insert(anti | (holo << n), c.conj() * sign);
        }
        f
    }

    /// Bidegree `(p, q)` of a mask.
    pub fn bidegree_of(dim: usize, mask: u16) -> (usize, usize) {
        let low = (1u16 << dim) - 1;
        (
            (mask & low).count_ones() as usize,
            ((mask >> dim) & low).count_ones() as usize,
        )
    }

    /// The `(p, q)` component.
    pub fn type_part(&self, p: usize, q: usize) -> Form {
        Form {
            dim: self.dim,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(&m, _)| Form::bidegree_of(self.dim, m) == (p, q))
                .map(|(&m, &c)| (m, c))
                .collect(),
        }
    }

    /// Non-zero pure-type parts, ordered by decreasing `p`.
    pub fn type_split(&self) -> Vec<(usize, usize, Form)> {
        let mut parts: BTreeMap<usize, Form> = BTreeMap::new();
        for (&m, &c) in &self.terms {
            let (p, _) = Form::bidegree_of(self.dim, m);
            parts
                .entry(p)
                .or_insert_with(|| Form::zero(self.dim, self.degree))
                .insert(m, c);
        }
        parts
            .into_iter()
            .rev()
            .map(|(p, f)| (p, self.degree - p, f))
            .collect()
    }

    /// Value of a 1-form on the frame vector with bit index `a`
    /// (`e_{a+1}` for `a < n`, `ē_{a-n+1}` otherwise).
    pub fn eval1(&self, a: usize) -> C64 {
        assert_eq!(self.degree, 1);
        self.coeff(1 << a)
    }

    /// Value of a 2-form on a pair of frame vectors, with
    /// `(α∧β)(X, Y) = α(X)β(Y) − α(Y)β(X)`.
    pub fn eval2(&self, a: usize, b: usize) -> C64 {
        assert_eq!(self.degree, 2);
        if a == b {
            return C64::new(0.0, 0.0);
        }
        let c = self.coeff((1 << a) | (1 << b));
        if a < b {
            c
        } else {
            -c
        }
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:.6}{:+.6}i)", c.re, c.im)?;
            for l in Form::labels_of(self.dim, m) {
                match l {
                    Label::Holo(i) => write!(f, " φ{}", i + 1)?,
                    Label::Anti(i) => write!(f, " φ̄{}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

impl Add for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        self.check_compatible(rhs);
        assert_eq!(self.degree, rhs.degree, "adding forms of different degree");
        let mut f = self.clone();
        for (&m, &c) in &rhs.terms {
            f.insert(m, c);
        }
        f
    }
}

impl Sub for &Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        self.check_compatible(rhs);
        assert_eq!(self.degree, rhs.degree, "subtracting forms of different degree");
        let mut f = self.clone();
        for (&m, &c) in &rhs.terms {
            f.insert(m, -c);
        }
        f
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        self.scale_re(-1.0)
    }
}

impl Mul<C64> for &Form {
    type Output = Form;
    fn mul(self, rhs: C64) -> Form {
        self.scale(rhs)
    }
}

/// Structure constants of an invariant coframe:
/// `dφ_k = Σ_{i<j} pp[k][i][j] φ_i∧φ_j + Σ_{i,j} pq[k][i][j] φ_i∧φ̄_j`.
///
/// A `(0,2)` part cannot be represented, so integrability reduces to `d² = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants {
    n: usize,
    pp: Vec<C64>,
    pq: Vec<C64>,
    /// `dφ_1..dφ_n, dφ̄_1..dφ̄_n`
    d_labels: Vec<Form>,
}

impl StructureConstants {
    /// Abelian structure (complex torus).
    pub fn zero(n: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&n));
        let mut sc = StructureConstants {
            n,
            pp: vec![C64::default(); n * n * n],
            pq: vec![C64::default(); n * n * n],
            d_labels: Vec::new(),
        };
        sc.rebuild();
        sc
    }

    /// Read the constants off prescribed `dφ_k` 2-forms; rejects any `(0,2)`
    /// component.
    pub fn from_d_phi(d_phi: &[Form]) -> Result<Self> {
        let n = d_phi.len();
        if !(1..=MAX_DIM).contains(&n) {
            return Err(Error::Dimension(n));
        }
        let mut sc = StructureConstants::zero(n);
        for (k, f) in d_phi.iter().enumerate() {
            if f.dim() != n || f.degree() != 2 {
                return Err(Error::Schema(format!(
                    "dφ_{} must be a 2-form on the n = {n} coframe",
                    k + 1
                )));
            }
            let bad = f.type_part(0, 2).max_norm();
            if bad > 0.0 {
                return Err(Error::NotIntegrable { residual: bad });
            }
            for (m, c) in f.terms() {
                let labels = Form::labels_of(n, m);
                match (labels[0], labels[1]) {
                    (Label::Holo(i), Label::Holo(j)) => {
                        let at = sc.idx(k, i, j);
                        sc.pp[at] = c;
                    }
                    (Label::Holo(i), Label::Anti(j)) => {
                        let at = sc.idx(k, i, j);
                        sc.pq[at] = c;
                    }
                    _ => unreachable!("(0,2) part rejected above"),
                }
            }
        }
        sc.rebuild();
        Ok(sc)
    }

    fn idx(&self, k: usize, i: usize, j: usize) -> usize {
        (k * self.n + i) * self.n + j
    }

    fn rebuild(&mut self) {
        let n = self.n;
        let mut d = Vec::with_capacity(2 * n);
        for k in 0..n {
            let mut f = Form::zero(n, 2);
            for i in 0..n {
                for j in 0..n {
                    if i < j {
                        let c = self.pp[self.idx(k, i, j)];
                        f.insert((1 << i) | (1 << j), c);
                    }
                    let c = self.pq[self.idx(k, i, j)];
                    f.insert((1 << i) | (1 << (n + j)), c);
                }
            }
            d.push(f);
        }
        for k in 0..n {
            let c = d[k].conjugate();
            d.push(c);
        }
        self.d_labels = d;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficient of `φ_i∧φ_j` in `dφ_k` (0-based, antisymmetric in `i, j`).
    pub fn pp(&self, k: usize, i: usize, j: usize) -> C64 {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.pp[self.idx(k, i, j)],
            std::cmp::Ordering::Greater => -self.pp[self.idx(k, j, i)],
            std::cmp::Ordering::Equal => C64::default(),
        }
    }

    /// Coefficient of `φ_i∧φ̄_j` in `dφ_k` (0-based).
    pub fn pq(&self, k: usize, i: usize, j: usize) -> C64 {
        self.pq[self.idx(k, i, j)]
    }

    /// Set the coefficient of `φ_i∧φ_j` in `dφ_k`; `i > j` stores the negative.
    pub fn set_pp(&mut self, k: usize, i: usize, j: usize, c: C64) -> Result<()> {
        let n = self.n;
        for l in [k, i, j] {
            if l >= n {
                return Err(Error::LabelOutOfRange { label: l + 1, n });
            }
        }
        match i.cmp(&j) {
            std::cmp::Ordering::Less => {
                let ix = self.idx(k, i, j);
                self.pp[ix] = c;
            }
            std::cmp::Ordering::Greater => {
                let ix = self.idx(k, j, i);
                self.pp[ix] = -c;
            }
            std::cmp::Ordering::Equal => {
                return Err(Error::Schema(format!("pp entry with i = j = {}", i + 1)))
            }
        }
        self.rebuild();
        Ok(())
    }

    pub fn set_pq(&mut self, k: usize, i: usize, j: usize, c: C64) -> Result<()> {
        let n = self.n;
        for l in [k, i, j] {
            if l >= n {
                return Err(Error::LabelOutOfRange { label: l + 1, n });
            }
        }
        let ix = self.idx(k, i, j);
        self.pq[ix] = c;
        self.rebuild();
        Ok(())
    }

    /// `dφ_{k+1}`.
    pub fn d_phi(&self, k: usize) -> &Form {
        &self.d_labels[k]
    }

    /// All `dφ_k` as 2-forms.
    pub fn d_phi_all(&self) -> &[Form] {
        &self.d_labels[..self.n]
    }

    pub fn is_abelian(&self) -> bool {
        self.d_labels.iter().all(Form::is_zero)
    }

    /// Exterior derivative, extended from the coframe by the Leibniz rule.
    pub fn d(&self, form: &Form) -> Result<Form> {
        if form.dim() != self.n {
            return Err(Error::LabelOutOfRange {
                label: form.dim(),
                n: self.n,
            });
        }
        Ok(self.d_unchecked(form))
    }

    pub(crate) fn d_unchecked(&self, form: &Form) -> Form {
        let n = self.n;
        let mut out = Form::zero(n, form.degree() + 1);
        if form.degree() == 2 * n {
            return out;
        }
        for (m, c) in form.terms() {
            // d(l_0 ∧ … ∧ l_p) = Σ_m (-1)^m l_0 ∧ … ∧ d l_m ∧ … ∧ l_p
            let mut before = 0u16;
            let mut pos = 0usize;
            let mut rest = m;
            while rest != 0 {
                let b = rest.trailing_zeros();
                let bit = 1u16 << b;
                rest &= rest - 1;
                let dl = &self.d_labels[b as usize];
                if !dl.is_zero() {
                    let sign = if pos.is_multiple_of(2) { 1.0 } else { -1.0 };
                    let pre = Form::from_terms(n, before.count_ones() as usize, [(before, C64::new(1.0, 0.0))]);
                    let post = Form::from_terms(n, rest.count_ones() as usize, [(rest, C64::new(1.0, 0.0))]);
                    let term = pre.wedge(dl).wedge(&post);
                    for (tm, tc) in term.terms() {
                        out.insert(tm, tc * c * sign);
                    }
                }
                before |= bit;
                pos += 1;
            }
        }
        out
    }
}

/// Result of [`check_integrability`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integrability {
    pub pass: bool,
    pub residual: f64,
}

/// `d² = 0` on every `φ_k` (and hence on `φ̄_k`), with no `(0,2)` part in
/// any `dφ_k`.
pub fn check_integrability(sc: &StructureConstants, tol: f64) -> Integrability {
    let mut residual = 0.0f64;
    for k in 0..sc.n() {
        let dphi = sc.d_phi(k);
        residual = residual.max(dphi.type_part(0, 2).max_norm());
        residual = residual.max(sc.d_unchecked(dphi).max_norm());
    }
    Integrability {
        pass: residual <= tol,
        residual,
    }
}

/// A matrix of forms of one common degree.
#[derive(Clone, PartialEq)]
pub struct FormMatrix {
    rows: usize,
    cols: usize,
    dim: usize,
    degree: usize,
    entries: Vec<Form>,
}

impl fmt::Debug for FormMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FormMatrix {}x{} (degree {})", self.rows, self.cols, self.degree)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                writeln!(f, "  [{i},{j}] {}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

impl FormMatrix {
    pub fn zeros(rows: usize, cols: usize, dim: usize, degree: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        FormMatrix {
            rows,
            cols,
            dim,
            degree,
            entries: vec![Form::zero(dim, degree); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, dim: usize, degree: usize, mut f: impl FnMut(usize, usize) -> Form) -> Self {
        let mut m = FormMatrix::zeros(rows, cols, dim, degree);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert_eq!(e.degree(), degree, "entry ({i},{j}) has wrong degree");
                assert_eq!(e.dim(), dim);
                m.entries[i * cols + j] = e;
            }
        }
        m
    }

    /// The row vector `ᵗφ = (φ_1, …, φ_n)`.
    pub fn phi_row(dim: usize) -> Self {
        FormMatrix::from_fn(1, dim, dim, 1, |_, j| Form::phi(dim, j))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, i: usize, j: usize) -> &Form {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: Form) {
        assert_eq!(f.degree(), self.degree);
        self.entries[i * self.cols + j] = f;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Form)> {
        self.entries
            .iter()
            .enumerate()
            .map(move |(ix, f)| (ix / self.cols, ix % self.cols, f))
    }

    pub fn map(&self, f: impl Fn(&Form) -> Form) -> FormMatrix {
        let entries: Vec<Form> = self.entries.iter().map(f).collect();
        let degree = entries.first().map(Form::degree).unwrap_or(self.degree);
        FormMatrix {
            rows: self.rows,
            cols: self.cols,
            dim: self.dim,
            degree,
            entries,
        }
    }

    fn zip(&self, other: &FormMatrix, f: impl Fn(&Form, &Form) -> Form) -> FormMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        FormMatrix {
            rows: self.rows,
            cols: self.cols,
            dim: self.dim,
            degree: self.degree,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &FormMatrix) -> FormMatrix {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &FormMatrix) -> FormMatrix {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: C64) -> FormMatrix {
        self.map(|f| f.scale(c))
    }

    pub fn scale_re(&self, c: f64) -> FormMatrix {
        self.scale(C64::new(c, 0.0))
    }

    /// Entrywise conjugate (not the conjugate transpose).
    pub fn conjugate(&self) -> FormMatrix {
        self.map(Form::conjugate)
    }

    pub fn transpose(&self) -> FormMatrix {
        FormMatrix::from_fn(self.cols, self.rows, self.dim, self.degree, |i, j| self.get(j, i).clone())
    }

    /// Matrix product with entries multiplied by the wedge product.
    pub fn wedge(&self, other: &FormMatrix) -> FormMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let degree = self.degree + other.degree;
        FormMatrix::from_fn(self.rows, other.cols, self.dim, degree, |i, j| {
            let mut acc = Form::zero(self.dim, degree);
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = &acc + &a.wedge(b);
            }
            acc
        })
    }

    /// Entrywise exterior derivative.
    pub fn d(&self, sc: &StructureConstants) -> FormMatrix {
        assert_eq!(self.dim, sc.n());
        let degree = self.degree + 1;
        FormMatrix::from_fn(self.rows, self.cols, self.dim, degree, |i, j| sc.d_unchecked(self.get(i, j)))
    }

    pub fn type_part(&self, p: usize, q: usize) -> FormMatrix {
        self.map(|f| f.type_part(p, q))
    }

    pub fn max_norm(&self) -> f64 {
        self.entries.iter().map(Form::max_norm).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Form::is_zero)
    }

    /// `[[a, b], [c, d]]`.
    pub fn block2(a: &FormMatrix, b: &FormMatrix, c: &FormMatrix, d: &FormMatrix) -> FormMatrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let rows = a.rows + c.rows;
        let cols = a.cols + b.cols;
        FormMatrix::from_fn(rows, cols, a.dim, a.degree, |i, j| {
            let (blk, bi, bj) = match (i < a.rows, j < a.cols) {
                (true, true) => (a, i, j),
                (true, false) => (b, i, j - a.cols),
                (false, true) => (c, i - a.rows, j),
                (false, false) => (d, i - a.rows, j - a.cols),
            };
            blk.get(bi, bj).clone()
        })
    }

    pub fn block(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> FormMatrix {
        FormMatrix::from_fn(rows, cols, self.dim, self.degree, |i, j| self.get(row0 + i, col0 + j).clone())
    }
}
