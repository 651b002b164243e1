//! Normalized (twisted) Hochschild complex `D_n = A (x) (A/k)^{(x) n}` with
//! the De Rham coboundary.
//!
//! Basis of `D_n`: tuples `(a_0, a_1, ..., a_n)` with `a_0` any basis index
//! of `A` and `a_i >= 1` for `i >= 1`, ordered lexicographically. Interior
//! slots drop the `e_0` component of anything placed in them.

use crate::builders::Algebra;
use crate::complex::MixedComplex;
use crate::error::{Error, Result};
use crate::linear::{Matrix, Scalar};

type Sparse = Vec<(usize, Scalar)>;

struct Tensors<'a> {
    alg: &'a Algebra,
    m: usize,
}

impl<'a> Tensors<'a> {
    fn new(alg: &'a Algebra) -> Self {
        Tensors { alg, m: alg.dim() }
    }

    fn dim(&self, n: usize) -> usize {
        self.m * (self.m - 1).pow(n as u32)
    }

    fn decode(&self, n: usize, mut idx: usize) -> Vec<usize> {
        let mut slots = vec![0; n + 1];
        for i in (1..=n).rev() {
            slots[i] = idx % (self.m - 1) + 1;
            idx /= self.m - 1;
        }
        slots[0] = idx;
        slots
    }

    /// Expands the elementary tensor of coordinate vectors into `D_n`.
    fn expand(&self, slots: &[Vec<Scalar>]) -> Sparse {
        let mut acc: Sparse = slots[0]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        for slot in &slots[1..] {
            let mut next = Vec::new();
            for (idx, c) in &acc {
                for (j, s) in slot.iter().enumerate().skip(1) {
                    if !s.is_zero() {
                        next.push((idx * (self.m - 1) + (j - 1), c * s));
                    }
                }
            }
            acc = next;
            if acc.is_empty() {
                break;
            }
        }
        acc
    }

    fn e(&self, i: usize) -> Vec<Scalar> {
        self.alg.basis_vector(i)
    }

    /// Matrix `D_n -> D_target` from a per-basis-element list of signed
    /// elementary tensors.
    fn assemble(
        &self,
        n: usize,
        target: usize,
        terms: impl Fn(&[usize]) -> Vec<(i64, Vec<Vec<Scalar>>)>,
    ) -> Matrix {
        let field = self.alg.field();
        let mut out = Matrix::zeros(field, self.dim(target), self.dim(n));
        for col in 0..self.dim(n) {
            let a = self.decode(n, col);
            for (sign, slots) in terms(&a) {
                let s = field.from_i64(sign);
                for (row, c) in self.expand(&slots) {
                    let v = out.get(row, col) + &(&s * &c);
                    out.set(row, col, v);
                }
            }
        }
        out
    }

    fn b(&self, n: usize) -> Matrix {
        self.assemble(n, n - 1, |a| {
            let mut terms = Vec::with_capacity(n + 1);
            for i in 0..n {
                let mut slots: Vec<Vec<Scalar>> = Vec::with_capacity(n);
                for (j, &aj) in a.iter().enumerate() {
                    if j == i {
                        slots.push(self.alg.product(aj, a[j + 1]).to_vec());
                    } else if j != i + 1 {
                        slots.push(self.e(aj));
                    }
                }
                terms.push((if i % 2 == 0 { 1 } else { -1 }, slots));
            }
            let mut slots = vec![self.alg.mul(&self.alg.sigma_of(a[n]), &self.e(a[0]))];
            slots.extend(a[1..n].iter().map(|&aj| self.e(aj)));
            terms.push((if n.is_multiple_of(2) { 1 } else { -1 }, slots));
            terms
        })
    }

    fn d(&self, n: usize) -> Matrix {
        self.assemble(n, n + 1, |a| {
            let mut slots = vec![self.e(0)];
            slots.extend(a.iter().map(|&aj| self.e(aj)));
            vec![(1, slots)]
        })
    }

    fn t(&self, n: usize) -> Matrix {
        self.assemble(n, n, |a| {
            let mut slots = vec![self.alg.sigma_of(a[n])];
            slots.extend(a[..n].iter().map(|&aj| self.e(aj)));
            vec![(if n.is_multiple_of(2) { 1 } else { -1 }, slots)]
        })
    }

    fn sigma_tensor(&self, n: usize) -> Matrix {
        self.assemble(n, n, |a| vec![(1, a.iter().map(|&aj| self.alg.sigma_of(aj)).collect())])
    }

    /// The correction term `(-1)^n 1 (x) sigma(a_n) a_0 (x) a_1 ... a_{n-1}`.
    fn wrap_insert(&self, n: usize) -> Matrix {
        self.assemble(n, n, |a| {
            let mut slots = vec![self.e(0), self.alg.mul(&self.alg.sigma_of(a[n]), &self.e(a[0]))];
            slots.extend(a[1..n].iter().map(|&aj| self.e(aj)));
            vec![(if n.is_multiple_of(2) { 1 } else { -1 }, slots)]
        })
    }
}

/// Noncommutative differential forms over `alg` up to degree `top`
/// (at least 2). The coboundary out of degree `top` is cut off, so results
/// are reliable up to total degree `top - 2`.
pub fn ncforms_build(alg: &Algebra, top: usize) -> Result<MixedComplex> {
    if top < 2 {
        return Err(Error::InvalidParameter(
            "forms need a truncation degree of at least 2".into(),
        ));
    }
    if alg.dim() < 1 {
        return Err(Error::InvalidParameter("empty algebra".into()));
    }
    let t = Tensors::new(alg);
    let dims = (0..=top).map(|n| t.dim(n)).collect();
    let b = (1..=top).map(|n| t.b(n)).collect();
    let d = (0..top).map(|n| t.d(n)).collect();
    let name = if alg.sigma().is_some() { "twisted forms" } else { "forms" };
    Ok(MixedComplex::new(alg.field(), dims, b, d)?
        .with_name(name)
        .with_trusted_degree(Some(top - 2)))
}

/// `dim A * (dim A - 1)^n`.
pub fn forms_dim(alg: &Algebra, n: usize) -> usize {
    Tensors::new(alg).dim(n)
}

/// `t(a_0 (x) ... (x) a_n) = (-1)^n sigma(a_n) (x) a_0 (x) ... (x) a_{n-1}`.
pub fn cyclic_operator(alg: &Algebra, n: usize) -> Matrix {
    Tensors::new(alg).t(n)
}

/// `xi` predicted by the cyclic operator: `id - t` in degree 0 and
/// `id - t + (-1)^n 1 (x) sigma(a_n) a_0 (x) ...` above.
pub fn xi_by_formula(alg: &Algebra, n: usize) -> Matrix {
    let t = Tensors::new(alg);
    let id = Matrix::identity(alg.field(), t.dim(n));
    let base = &id - &t.t(n);
    if n == 0 {
        base
    } else {
        &base + &t.wrap_insert(n)
    }
}

/// Deformed coboundary for cyclic `c`, predicted as `sum_{i<=n} 1 (x) t^i`.
pub fn upsilon_by_formula(alg: &Algebra, n: usize) -> Matrix {
    let t = Tensors::new(alg);
    let tn = t.t(n);
    let mut sum = Matrix::zeros(alg.field(), t.dim(n), t.dim(n));
    let mut power = Matrix::identity(alg.field(), t.dim(n));
    for _ in 0..=n {
        sum = &sum + &power;
        power = &power * &tn;
    }
    &t.d(n) * &sum
}

/// `Xi` for cyclic `c`, predicted as `id - sigma (x) ... (x) sigma`.
pub fn big_xi_by_formula(alg: &Algebra, n: usize) -> Matrix {
    let t = Tensors::new(alg);
    &Matrix::identity(alg.field(), t.dim(n)) - &t.sigma_tensor(n)
}
