//! Problem data: the quadratic objective, the binary feasible domain and the
//! tangent-plane cuts built on top of them.

use std::collections::HashSet;
use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for symmetry checks and row feasibility on binary points.
pub const FEAS_TOL: f64 = 1e-9;

/// A point of `{0,1}^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryPoint(Vec<u8>);

impl BinaryPoint {
    pub fn zeros(n: usize) -> Self {
        BinaryPoint(vec![0; n])
    }

    /// Point with ones at the given indices.
    pub fn from_indices(n: usize, ones: &[usize]) -> Result<Self> {
        let mut bits = vec![0u8; n];
        for &i in ones {
            if i >= n {
                return Err(Error::Usage(format!("index {i} out of range for n={n}")));
            }
            bits[i] = 1;
        }
        Ok(BinaryPoint(bits))
    }

    /// The default start: first `m` entries equal to one.
    pub fn leading_ones(n: usize, m: usize) -> Self {
        BinaryPoint((0..n).map(|i| u8::from(i < m)).collect())
    }

    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::Usage(format!("non-binary entry {b}")));
        }
        Ok(BinaryPoint(bits))
    }

    /// Rounds a real vector to the nearest binary point.
    pub fn round(values: &[f64]) -> Self {
        BinaryPoint(values.iter().map(|&v| u8::from(v >= 0.5)).collect())
    }

    /// Parses a `0/1` string such as `"0110"`.
    pub fn parse(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c {
                '0' => Ok(0u8),
                '1' => Ok(1u8),
                other => Err(Error::Usage(format!("invalid character {other:?} in 0/1 string"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BinaryPoint(bits))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i] == 1
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    /// Indices of the unit entries, in increasing order.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| (b == 1).then_some(i))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|&b| f64::from(b)).collect()
    }

    /// `<v, x>` for a real vector `v`.
    pub fn dot(&self, v: &[f64]) -> f64 {
        self.support().map(|i| v[i]).sum()
    }

    /// Hamming distance, which is both the l1 distance and the squared l2
    /// distance between binary points.
    pub fn hamming(&self, other: &BinaryPoint) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }
}

impl fmt::Display for BinaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryPoint({self})")
    }
}

impl Serialize for BinaryPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BinaryPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        BinaryPoint::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Record of an exact diagonal shift `Q + rho*I` applied on a cardinality
/// slice, where the objective moves by the constant `shift = rho*m/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Regularization {
    pub rho: f64,
    pub shift: f64,
}

/// `f(x) = 1/2 x^T Q x` with a dense symmetric `Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticObjective {
    n: usize,
    q: Vec<f64>,
    regularization: Option<Regularization>,
}

impl QuadraticObjective {
    /// Builds from a row-major `n*n` buffer. Entries that are symmetric up to
    /// [`FEAS_TOL`] are averaged so the stored matrix is exactly symmetric.
    pub fn new(n: usize, q: Vec<f64>) -> Result<Self> {
        if q.len() != n * n {
            return Err(Error::dim("matrix buffer", n * n, q.len()));
        }
        if let Some(v) = q.iter().find(|v| !v.is_finite()) {
            return Err(Error::Data(format!("non-finite matrix entry {v}")));
        }
        let mut q = q;
        for i in 0..n {
            for j in (i + 1)..n {
                let (a, b) = (q[i * n + j], q[j * n + i]);
                if (a - b).abs() > FEAS_TOL {
                    return Err(Error::Data(format!(
                        "matrix is not symmetric: Q[{i}][{j}]={a} but Q[{j}][{i}]={b}"
                    )));
                }
                let avg = 0.5 * (a + b);
                q[i * n + j] = avg;
                q[j * n + i] = avg;
            }
        }
        Ok(QuadraticObjective {
            n,
            q,
            regularization: None,
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::dim("matrix row", n, r.len()));
        }
        Self::new(n, rows.concat())
    }

    pub fn diagonal(d: &[f64]) -> Self {
        let n = d.len();
        let mut q = vec![0.0; n * n];
        for (i, &v) in d.iter().enumerate() {
            q[i * n + i] = v;
        }
        QuadraticObjective {
            n,
            q,
            regularization: None,
        }
    }

    pub fn zeros(n: usize) -> Self {
        Self::diagonal(&vec![0.0; n])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.q[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.q[i * self.n..(i + 1) * self.n]
    }

    /// Row-major matrix buffer.
    pub fn matrix(&self) -> &[f64] {
        &self.q
    }

    pub fn regularization(&self) -> Option<Regularization> {
        self.regularization
    }

    /// Constant separating this objective from the unregularized one on the
    /// feasible slice (zero when no shift was applied).
    pub fn shift(&self) -> f64 {
        self.regularization.map_or(0.0, |r| r.shift)
    }

    /// Maps a value of this objective back to the unregularized scale.
    pub fn to_original(&self, value: f64) -> f64 {
        value - self.shift()
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n {
            return Err(Error::dim("point", self.n, len));
        }
        Ok(())
    }

    /// `1/2 x^T Q x` on a binary point.
    pub fn value(&self, x: &BinaryPoint) -> Result<f64> {
        self.check_len(x.len())?;
        let support: Vec<usize> = x.support().collect();
        let mut total = 0.0;
        for &i in &support {
            let row = self.row(i);
            for &j in &support {
                total += row[j];
            }
        }
        Ok(0.5 * total)
    }

    /// `Q x` on a binary point.
    pub fn gradient(&self, x: &BinaryPoint) -> Result<Vec<f64>> {
        self.check_len(x.len())?;
        let mut g = vec![0.0; self.n];
        for j in x.support() {
            for (i, gi) in g.iter_mut().enumerate() {
                *gi += self.q[i * self.n + j];
            }
        }
        Ok(g)
    }

    /// `1/2 x^T Q x` extended to real vectors.
    pub fn value_real(&self, x: &[f64]) -> Result<f64> {
        self.check_len(x.len())?;
        let mut total = 0.0;
        for i in 0..self.n {
            let row = self.row(i);
            let mut acc = 0.0;
            for j in 0..self.n {
                acc += row[j] * x[j];
            }
            total += x[i] * acc;
        }
        Ok(0.5 * total)
    }

    pub fn gradient_real(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_len(x.len())?;
        Ok((0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Smallest `rho >= 0` for which `Q + rho*I` is diagonally dominant with
    /// nonnegative diagonal (Gershgorin bound).
    pub fn gershgorin_rho(&self) -> f64 {
        (0..self.n)
            .map(|i| {
                let off: f64 = (0..self.n)
                    .filter(|&j| j != i)
                    .map(|j| self.entry(i, j).abs())
                    .sum();
                off - self.entry(i, i)
            })
            .fold(0.0, f64::max)
    }

    /// Positive semidefiniteness test by Cholesky factorization of `Q + delta*I`
    /// with a tiny relative `delta`.
    pub fn is_psd(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let scale = self.q.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let delta = 1e-12 * (1.0 + scale) * self.n as f64;
        let mut m = DMatrix::from_row_slice(self.n, self.n, &self.q);
        for i in 0..self.n {
            m[(i, i)] += delta;
        }
        m.cholesky().is_some()
    }

    /// Exact diagonal shift onto a convex objective over the cardinality
    /// slice of `dom`. `argmin` over the feasible set is unchanged because
    /// `x_i^2 = x_i` and `sum x_i = m` make the shift a constant.
    pub fn regularized(&self, dom: &FeasibleDomain) -> Result<Self> {
        self.check_len(dom.dim())?;
        let rho = self.gershgorin_rho();
        let mut out = self.clone();
        if rho == 0.0 {
            return Ok(out);
        }
        for i in 0..self.n {
            out.q[i * self.n + i] += rho;
        }
        let total_rho = rho + self.regularization.map_or(0.0, |r| r.rho);
        out.regularization = Some(Regularization {
            rho: total_rho,
            shift: total_rho * dom.cardinality() as f64 / 2.0,
        });
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowSense {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

/// A dense linear constraint `<coeffs, x> (sense) rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearRow {
    pub coeffs: Vec<f64>,
    pub sense: RowSense,
    pub rhs: f64,
}

impl LinearRow {
    pub fn le(coeffs: Vec<f64>, rhs: f64) -> Self {
        LinearRow {
            coeffs,
            sense: RowSense::Le,
            rhs,
        }
    }

    pub fn activity(&self, x: &BinaryPoint) -> f64 {
        x.dot(&self.coeffs)
    }

    /// Satisfaction with an absolute slack scaled by the row magnitude.
    pub fn is_satisfied(&self, x: &BinaryPoint, tol: f64) -> bool {
        let lhs = self.activity(x);
        let slack = tol * (1.0 + self.rhs.abs());
        match self.sense {
            RowSense::Le => lhs <= self.rhs + slack,
            RowSense::Ge => lhs >= self.rhs - slack,
            RowSense::Eq => (lhs - self.rhs).abs() <= slack,
        }
    }
}

/// `{x in {0,1}^n : sum x = m, extra rows}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibleDomain {
    n: usize,
    m: usize,
    extra_rows: Vec<LinearRow>,
}

impl FeasibleDomain {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if m == 0 || m >= n {
            return Err(Error::Usage(format!(
                "cardinality must satisfy 0 < m < n, got m={m}, n={n}"
            )));
        }
        Ok(FeasibleDomain {
            n,
            m,
            extra_rows: Vec::new(),
        })
    }

    pub fn with_rows(mut self, rows: Vec<LinearRow>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.coeffs.len() != self.n) {
            return Err(Error::dim("constraint row", self.n, r.coeffs.len()));
        }
        self.extra_rows = rows;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn cardinality(&self) -> usize {
        self.m
    }

    pub fn extra_rows(&self) -> &[LinearRow] {
        &self.extra_rows
    }

    pub fn contains(&self, x: &BinaryPoint) -> bool {
        x.len() == self.n
            && x.count_ones() == self.m
            && self.extra_rows.iter().all(|r| r.is_satisfied(x, FEAS_TOL))
    }
}

/// Tangent plane `theta >= f(a) + <grad f(a), x - a>` anchored at `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cut {
    anchor: BinaryPoint,
    grad: Vec<f64>,
    value: f64,
}

impl Cut {
    pub fn new(obj: &QuadraticObjective, anchor: BinaryPoint) -> Result<Self> {
        let grad = obj.gradient(&anchor)?;
        let value = obj.value(&anchor)?;
        Ok(Cut {
            anchor,
            grad,
            value,
        })
    }

    pub fn anchor(&self) -> &BinaryPoint {
        &self.anchor
    }

    pub fn grad(&self) -> &[f64] {
        &self.grad
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// Constant term of the affine form: `value - <grad, anchor>`.
    pub fn intercept(&self) -> f64 {
        self.value - self.anchor.dot(&self.grad)
    }

    /// The affine underestimator evaluated at `x`.
    pub fn eval(&self, x: &BinaryPoint) -> f64 {
        x.dot(&self.grad) + self.intercept()
    }
}

/// The growing cut set, deduplicated by anchor.
#[derive(Debug, Clone, Default)]
pub struct CutOracle {
    cuts: Vec<Cut>,
    anchors: HashSet<BinaryPoint>,
}

impl CutOracle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Set-union insert. Returns `false` and leaves the oracle untouched when
    /// a cut with the same anchor is already present.
    pub fn add(&mut self, cut: Cut) -> bool {
        if !self.anchors.insert(cut.anchor.clone()) {
            return false;
        }
        self.cuts.push(cut);
        true
    }

    pub fn contains(&self, anchor: &BinaryPoint) -> bool {
        self.anchors.contains(anchor)
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn cuts(&self) -> &[Cut] {
        &self.cuts
    }

    /// Pointwise maximum of all cuts at `x`, i.e. the cutting-plane model.
    pub fn model_value(&self, x: &BinaryPoint) -> f64 {
        self.cuts
            .iter()
            .map(|c| c.eval(x))
            .fold(f64::NEG_INFINITY, f64::max)
    }
}
