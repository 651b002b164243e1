use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linear::{Field, Matrix};

/// A finite mixed complex `(D, b, d)`: spaces `D_0..=D_N`, a boundary
/// `b_n: D_n -> D_{n-1}` and a coboundary `d_n: D_n -> D_{n+1}`, both
/// squaring to zero. `d_N` is zero because `D_{N+1}` is not stored.
///
/// Maps leaving the stored range are zero matrices with the right shape, so
/// `b(0)`, `b(N+1)`, `d(N)` and `d_into(0)` are always available.
#[derive(Clone, PartialEq, Eq)]
pub struct MixedComplex {
    field: Field,
    dims: Vec<usize>,
    /// `b_store[n] = b_n` for `n` in `0..=N+1`.
    b_store: Vec<Matrix>,
    /// `d_store[k] = d_{k-1}` for `k` in `0..=N+1`.
    d_store: Vec<Matrix>,
    name: String,
    trusted_degree: Option<usize>,
}

/// One problem found by [`validate_parts`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub degree: usize,
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Shape,
    Field,
    BSquared,
    DSquared,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

/// Checks shapes, fields and both square-zero conditions of raw data.
/// `b[i]` is `b_{i+1}` and `d[i]` is `d_i`.
pub fn validate_parts(field: Field, dims: &[usize], b: &[Matrix], d: &[Matrix]) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut push = |degree, kind, detail: String| {
        report.violations.push(Violation { degree, kind, detail })
    };
    if dims.is_empty() {
        push(0, ViolationKind::Shape, "no degrees".into());
        return report;
    }
    let top = dims.len() - 1;
    if b.len() != top || d.len() != top {
        push(
            0,
            ViolationKind::Shape,
            format!("expected {top} boundary and {top} coboundary maps, got {} and {}", b.len(), d.len()),
        );
        return report;
    }
    let mut shapes_ok = true;
    for n in 1..=top {
        let m = &b[n - 1];
        if m.shape() != (dims[n - 1], dims[n]) {
            shapes_ok = false;
            push(n, ViolationKind::Shape, format!("b_{n} is {:?}, expected {:?}", m.shape(), (dims[n - 1], dims[n])));
        }
        if m.field() != field {
            shapes_ok = false;
            push(n, ViolationKind::Field, format!("b_{n} is over {}", m.field()));
        }
    }
    for n in 0..top {
        let m = &d[n];
        if m.shape() != (dims[n + 1], dims[n]) {
            shapes_ok = false;
            push(n, ViolationKind::Shape, format!("d_{n} is {:?}, expected {:?}", m.shape(), (dims[n + 1], dims[n])));
        }
        if m.field() != field {
            shapes_ok = false;
            push(n, ViolationKind::Field, format!("d_{n} is over {}", m.field()));
        }
    }
    if !shapes_ok {
        return report;
    }
    for n in 2..=top {
        if !(&b[n - 2] * &b[n - 1]).is_zero() {
            push(n, ViolationKind::BSquared, format!("b_{} b_{n} != 0", n - 1));
        }
    }
    for n in 0..top.saturating_sub(1) {
        if !(&d[n + 1] * &d[n]).is_zero() {
            push(n, ViolationKind::DSquared, format!("d_{} d_{n} != 0", n + 1));
        }
    }
    report
}

impl MixedComplex {
    /// Builds a complex from `b = [b_1, ..., b_N]` and `d = [d_0, ..., d_{N-1}]`.
    /// Shapes and square-zero conditions are checked.
    pub fn new(field: Field, dims: Vec<usize>, b: Vec<Matrix>, d: Vec<Matrix>) -> Result<MixedComplex> {
        let report = validate_parts(field, &dims, &b, &d);
        if let Some(v) = report.first() {
            return Err(Error::InvalidComplex(format!("degree {}: {}", v.degree, v.detail)));
        }
        Ok(Self::assemble(field, dims, b, d))
    }

    /// Same as [`MixedComplex::new`] but only shapes are checked; use
    /// [`MixedComplex::validate`] to inspect square-zero failures.
    pub fn new_unchecked_squares(
        field: Field,
        dims: Vec<usize>,
        b: Vec<Matrix>,
        d: Vec<Matrix>,
    ) -> Result<MixedComplex> {
        let report = validate_parts(field, &dims, &b, &d);
        if let Some(v) = report
            .violations
            .iter()
            .find(|v| matches!(v.kind, ViolationKind::Shape | ViolationKind::Field))
        {
            return Err(Error::InvalidComplex(format!("degree {}: {}", v.degree, v.detail)));
        }
        Ok(Self::assemble(field, dims, b, d))
    }

    fn assemble(field: Field, dims: Vec<usize>, b: Vec<Matrix>, d: Vec<Matrix>) -> MixedComplex {
        let top = dims.len() - 1;
        let mut b_store = Vec::with_capacity(top + 2);
        b_store.push(Matrix::zeros(field, 0, dims[0]));
        b_store.extend(b);
        b_store.push(Matrix::zeros(field, dims[top], 0));
        let mut d_store = Vec::with_capacity(top + 2);
        d_store.push(Matrix::zeros(field, dims[0], 0));
        d_store.extend(d);
        d_store.push(Matrix::zeros(field, 0, dims[top]));
        MixedComplex {
            field,
            dims,
            b_store,
            d_store,
            name: String::new(),
            trusted_degree: None,
        }
    }

    /// All maps zero.
    pub fn zero(field: Field, dims: Vec<usize>) -> MixedComplex {
        let top = dims.len() - 1;
        let b = (1..=top).map(|n| Matrix::zeros(field, dims[n - 1], dims[n])).collect();
        let d = (0..top).map(|n| Matrix::zeros(field, dims[n + 1], dims[n])).collect();
        Self::assemble(field, dims, b, d)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Marks the complex as a truncation that agrees with the untruncated one
    /// in total degrees up to `t`.
    pub fn with_trusted_degree(mut self, t: Option<usize>) -> Self {
        self.trusted_degree = t;
        self
    }

    /// The same spaces and boundary with a different coboundary
    /// `[c_0, ..., c_{N-1}]`.
    pub fn with_coboundary(&self, cob: Vec<Matrix>) -> Result<MixedComplex> {
        let b = self.b_store[1..=self.top()].to_vec();
        MixedComplex::new(self.field, self.dims.clone(), b, cob).map(|c| {
            c.with_name(self.name.clone())
                .with_trusted_degree(self.trusted_degree)
        })
    }

    /// The same spaces and coboundary with `b` replaced.
    pub fn with_boundary(&self, b: Vec<Matrix>) -> Result<MixedComplex> {
        let d = self.d_store[1..=self.top()].to_vec();
        MixedComplex::new(self.field, self.dims.clone(), b, d).map(|c| {
            c.with_name(self.name.clone())
                .with_trusted_degree(self.trusted_degree)
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `None` means the complex is exact as given (not a truncation).
    pub fn trusted_degree(&self) -> Option<usize> {
        self.trusted_degree
    }

    /// Whether results in total degree `n` reflect the untruncated complex.
    pub fn is_trusted(&self, n: usize) -> bool {
        self.trusted_degree.is_none_or(|t| n <= t)
    }

    /// Highest stored degree `N`.
    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `dim D_n`, zero outside `0..=N`.
    pub fn dim(&self, n: isize) -> usize {
        if n < 0 {
            0
        } else {
            self.dims.get(n as usize).copied().unwrap_or(0)
        }
    }

    /// `b_n: D_n -> D_{n-1}` for `n <= N+1`.
    pub fn b(&self, n: usize) -> &Matrix {
        &self.b_store[n]
    }

    /// `d_n: D_n -> D_{n+1}` for `n <= N`.
    pub fn d(&self, n: usize) -> &Matrix {
        &self.d_store[n + 1]
    }

    /// `d_{n-1}: D_{n-1} -> D_n` for `n <= N+1`.
    pub fn d_into(&self, n: usize) -> &Matrix {
        &self.d_store[n]
    }

    /// `b_n` for any `n`, zero with the right shape outside the stored range.
    pub fn b_any(&self, n: isize) -> Matrix {
        if (0..=self.top() as isize + 1).contains(&n) {
            self.b(n as usize).clone()
        } else {
            Matrix::zeros(self.field, self.dim(n - 1), self.dim(n))
        }
    }

    /// `d_n` for any `n`.
    pub fn d_any(&self, n: isize) -> Matrix {
        if (-1..=self.top() as isize).contains(&n) {
            self.d_store[(n + 1) as usize].clone()
        } else {
            Matrix::zeros(self.field, self.dim(n + 1), self.dim(n))
        }
    }

    /// `[b_1, ..., b_N]`.
    pub fn boundaries(&self) -> &[Matrix] {
        &self.b_store[1..=self.top()]
    }

    /// `[d_0, ..., d_{N-1}]`.
    pub fn coboundaries(&self) -> &[Matrix] {
        &self.d_store[1..=self.top()]
    }

    pub fn validate(&self) -> ValidationReport {
        validate_parts(self.field, &self.dims, self.boundaries(), self.coboundaries())
    }

    /// `xi = bd + db` and `kappa = id - xi`.
    pub fn xi_family(&self) -> (OperatorFamily, OperatorFamily) {
        let xi = self.xi();
        let kappa = xi.complement();
        (xi, kappa)
    }

    pub fn xi(&self) -> OperatorFamily {
        OperatorFamily::new(
            (0..=self.top())
                .map(|n| &(self.b(n + 1) * self.d(n)) + &(self.d_into(n) * self.b(n)))
                .collect(),
        )
    }

    /// Applies a degreewise operator on the left of both structure maps:
    /// returns the pair of failing degrees for `op b = b op` and `op d = d op`.
    pub fn commutation_failures(&self, op: &OperatorFamily) -> (Option<usize>, Option<usize>) {
        let mut fb = None;
        let mut fd = None;
        for n in 1..=self.top() {
            if &op.ops[n - 1] * self.b(n) != self.b(n) * &op.ops[n] {
                fb = Some(n);
                break;
            }
        }
        for n in 0..self.top() {
            if &op.ops[n + 1] * self.d(n) != self.d(n) * &op.ops[n] {
                fd = Some(n);
                break;
            }
        }
        (fb, fd)
    }

    /// Errors if `op` fails to commute with `b` or `d`.
    pub fn check_commutes(&self, op: &OperatorFamily) -> Result<()> {
        if op.len() != self.dims.len() {
            return Err(Error::InvalidParameter(format!(
                "operator family has {} degrees, complex has {}",
                op.len(),
                self.dims.len()
            )));
        }
        match self.commutation_failures(op) {
            (Some(n), _) => Err(Error::NotCommuting { degree: n, map: "b" }),
            (_, Some(n)) => Err(Error::NotCommuting { degree: n, map: "d" }),
            _ => Ok(()),
        }
    }
}

impl fmt::Debug for MixedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MixedComplex")
            .field("name", &self.name)
            .field("field", &self.field)
            .field("dims", &self.dims)
            .field("trusted_degree", &self.trusted_degree)
            .finish()
    }
}

/// A square matrix `op[n]` on each `D_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorFamily {
    ops: Vec<Matrix>,
}

impl OperatorFamily {
    pub fn new(ops: Vec<Matrix>) -> OperatorFamily {
        debug_assert!(ops.iter().all(Matrix::is_square));
        OperatorFamily { ops }
    }

    pub fn identity(field: Field, dims: &[usize]) -> OperatorFamily {
        OperatorFamily::new(dims.iter().map(|&n| Matrix::identity(field, n)).collect())
    }

    pub fn zero(field: Field, dims: &[usize]) -> OperatorFamily {
        OperatorFamily::new(dims.iter().map(|&n| Matrix::zeros(field, n, n)).collect())
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn get(&self, n: usize) -> &Matrix {
        &self.ops[n]
    }

    pub fn ops(&self) -> &[Matrix] {
        &self.ops
    }

    pub fn is_zero(&self) -> bool {
        self.ops.iter().all(Matrix::is_zero)
    }

    /// `id - op`.
    pub fn complement(&self) -> OperatorFamily {
        OperatorFamily::new(
            self.ops
                .iter()
                .map(|m| &Matrix::identity(m.field(), m.rows()) - m)
                .collect(),
        )
    }

    pub fn compose(&self, other: &OperatorFamily) -> OperatorFamily {
        OperatorFamily::new(self.ops.iter().zip(&other.ops).map(|(a, b)| a * b).collect())
    }

    pub fn map(&self, f: impl Fn(usize, &Matrix) -> Matrix) -> OperatorFamily {
        OperatorFamily::new(self.ops.iter().enumerate().map(|(n, m)| f(n, m)).collect())
    }
}
