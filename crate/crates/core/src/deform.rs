//! Deformation of the coboundary by a polynomial sequence, and exact checks
//! of the identities relating `xi`, `Xi`, `kappa` and `T`.

use std::sync::Arc;

use serde::Serialize;

use crate::complex::{
    contracting_homotopy, images_of, kernels_of, quotient_complex, sub_complex, MixedComplex,
    OperatorFamily, QuotientComplex, SubComplex,
};
use crate::error::{Error, Result};
use crate::linear::{kernel_basis, Matrix, Scalar, Subspace};
use crate::poly::{Poly, PolySeq};

/// Witness for a failed matrix identity: a source basis vector and the
/// nonzero difference of both sides on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub basis_index: usize,
    pub difference: Vec<String>,
}

/// One verified identity in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub degree: usize,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl IdentityCheck {
    pub fn equal(identity: &str, degree: usize, lhs: &Matrix, rhs: &Matrix) -> IdentityCheck {
        let diff = lhs - rhs;
        let witness = diff.first_nonzero_column().map(|j| Witness {
            basis_index: j,
            difference: diff.column(j).iter().map(Scalar::to_string).collect(),
        });
        IdentityCheck {
            identity: identity.to_string(),
            degree,
            holds: witness.is_none(),
            witness,
        }
    }

    pub fn zero(identity: &str, degree: usize, m: &Matrix) -> IdentityCheck {
        IdentityCheck::equal(identity, degree, m, &Matrix::zeros(m.field(), m.rows(), m.cols()))
    }

    pub fn flag(identity: &str, degree: usize, holds: bool) -> IdentityCheck {
        IdentityCheck {
            identity: identity.to_string(),
            degree,
            holds,
            witness: None,
        }
    }
}

/// A list of identity checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn push(&mut self, c: IdentityCheck) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: IdentityReport) {
        self.checks.extend(other.checks);
    }

    /// Whether every check named `identity` holds (vacuously true if none).
    pub fn holds_for(&self, identity: &str) -> bool {
        self.checks.iter().filter(|c| c.identity == identity).all(|c| c.holds)
    }
}

/// `Upsilon_n = d_n c_n(xi_n)`, `Xi = b Upsilon + Upsilon b`, `T = id - Xi`
/// on a mixed complex, for a polynomial sequence `c`.
#[derive(Clone, Debug)]
pub struct DeformedStructure {
    pub base: Arc<MixedComplex>,
    pub c: PolySeq,
    pub xi: OperatorFamily,
    pub kappa: OperatorFamily,
    /// `Upsilon_0..Upsilon_N`; the last one is zero like `d_N`.
    pub upsilon: Vec<Matrix>,
    pub big_xi: OperatorFamily,
    pub t: OperatorFamily,
    pub beta: Vec<Scalar>,
    /// `(D, b, Upsilon)`.
    pub deformed: Arc<MixedComplex>,
}

impl DeformedStructure {
    pub fn new(base: Arc<MixedComplex>, c: &PolySeq) -> Result<DeformedStructure> {
        if let Some(v) = base.validate().first() {
            return Err(Error::InvalidComplex(v.detail.clone()));
        }
        if c.field() != base.field() {
            return Err(Error::FieldMismatch);
        }
        let (xi, kappa) = base.xi_family();
        let top = base.top();
        let mut upsilon = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let cn = c.c(n as isize)?;
            let after = base.d(n) * &cn.eval_at(xi.get(n))?;
            if n < top {
                let before = &cn.eval_at(xi.get(n + 1))? * base.d(n);
                if before != after {
                    return Err(Error::UpsilonOrderMismatch { degree: n });
                }
            }
            upsilon.push(after);
        }
        let deformed = Arc::new(base.with_coboundary(upsilon[..top].to_vec())?);
        let big_xi = deformed.xi();
        let t = big_xi.complement();
        let beta = (0..=top)
            .map(|n| c.beta(n as isize))
            .collect::<Result<Vec<_>>>()?;
        Ok(DeformedStructure {
            base,
            c: c.clone(),
            xi,
            kappa,
            upsilon,
            big_xi,
            t,
            beta,
            deformed,
        })
    }

    pub fn top(&self) -> usize {
        self.base.top()
    }

    /// `p(xi_n)` on `D_n`.
    pub fn poly_at_xi(&self, p: &Poly, n: usize) -> Matrix {
        p.eval_at(self.xi.get(n)).expect("xi is square")
    }
}

/// Free-function form of [`DeformedStructure::new`].
pub fn deformed_structure(d: Arc<MixedComplex>, c: &PolySeq) -> Result<DeformedStructure> {
    DeformedStructure::new(d, c)
}

pub const WATT_FIRST: &str = "Xi = xi c_n - d b f_n";
pub const WATT_SECOND: &str = "Xi = b d f_n + xi c_{n-1}";
pub const BREXIT: &str = "(Xi - xi c_n)(Xi - xi c_{n-1}) = 0";
pub const BREXIT_FIRST_FACTOR: &str = "Xi - xi c_n = -d b f_n";
pub const BREXIT_SECOND_FACTOR: &str = "Xi - xi c_{n-1} = b d f_n";

/// Both expressions for `Xi` in terms of `xi`, and the quadratic relation
/// with its two factors, in every degree.
pub fn verify_relazion(s: &DeformedStructure) -> Result<IdentityReport> {
    let base = &s.base;
    let mut report = IdentityReport::default();
    for n in 0..=s.top() {
        let xi = s.xi.get(n);
        let cn = s.poly_at_xi(&s.c.c(n as isize)?, n);
        let cprev = s.poly_at_xi(&s.c.c(n as isize - 1)?, n);
        let fn_ = s.poly_at_xi(&s.c.f(n as isize)?, n);
        let db = base.d_into(n) * base.b(n);
        let bd = base.b(n + 1) * base.d(n);
        let big = s.big_xi.get(n);
        let first = &(xi * &cn) - &(&db * &fn_);
        let second = &(&bd * &fn_) + &(xi * &cprev);
        report.push(IdentityCheck::equal(WATT_FIRST, n, big, &first));
        report.push(IdentityCheck::equal(WATT_SECOND, n, big, &second));
        let left = big - &(xi * &cn);
        let right = big - &(xi * &cprev);
        report.push(IdentityCheck::zero(BREXIT, n, &(&left * &right)));
        report.push(IdentityCheck::equal(BREXIT_FIRST_FACTOR, n, &left, &-&(&db * &fn_)));
        report.push(IdentityCheck::equal(BREXIT_SECOND_FACTOR, n, &right, &(&bd * &fn_)));
    }
    Ok(report)
}

pub const CUQU_T: &str = "T = (id - b d) kappa^n";
pub const CUQU_KAPPA: &str = "kappa^{n+1} = T (id - d b)";
pub const CUQU_PRODUCT: &str = "(T - kappa^{n+1})(T - kappa^n) = 0";

/// The Karoubi operator identities for the cyclic sequence.
pub fn verify_cuqu(d: Arc<MixedComplex>) -> Result<(DeformedStructure, IdentityReport)> {
    let field = d.field();
    let s = DeformedStructure::new(d, &PolySeq::cyclic(field))?;
    let base = &s.base;
    let mut report = IdentityReport::default();
    for n in 0..=s.top() {
        let kappa = s.kappa.get(n);
        let id = Matrix::identity(field, kappa.rows());
        let kn = kappa.pow(n as u32);
        let kn1 = &kn * kappa;
        let t = s.t.get(n);
        let bd = base.b(n + 1) * base.d(n);
        let db = base.d_into(n) * base.b(n);
        report.push(IdentityCheck::equal(CUQU_T, n, t, &(&(&id - &bd) * &kn)));
        report.push(IdentityCheck::equal(CUQU_KAPPA, n, &kn1, &(t * &(&id - &db))));
        report.push(IdentityCheck::zero(CUQU_PRODUCT, n, &(&(t - &kn1) * &(t - &kn))));
    }
    Ok((s, report))
}

/// `P_n = c_{n-1} c_n` for `n >= 1` and `P_0 = c_0`.
///
/// With `c_{-1} = 0` the product vanishes in degree 0; there `xi c_0 = Xi`
/// already, so `c_0` alone plays the role of the product.
pub fn projector_poly(c: &PolySeq, n: usize) -> Result<Poly> {
    let cn = c.c(n as isize)?;
    if n == 0 {
        Ok(cn)
    } else {
        Ok(c.c(n as isize - 1)?.mul(&cn))
    }
}

/// `eps^{-2} (eps - delta x) P_n` where `eps`, `delta` are the constant and
/// linear coefficients of `P_n`.
pub fn pbar_poly(c: &PolySeq, n: usize) -> Result<Poly> {
    let p = projector_poly(c, n)?;
    let eps = p.coeff(0);
    let inv = eps.inv().ok_or(Error::Hypothesis(format!(
        "constant coefficient of c_{{n-1}} c_n vanishes in degree {n}"
    )))?;
    let lin = Poly::new(p.field(), vec![eps.clone(), -p.coeff(1)]);
    Ok(lin.mul(&p).scale(&(&inv * &inv)))
}

pub const PBAR_IDEMPOTENT: &str = "pbar^2 = pbar";
pub const PBAR_IMAGE: &str = "im pbar = ker xibar^2";
pub const PBAR_KERNEL: &str = "ker pbar = im xibar^2";
pub const PBAR_COMMUTES_B: &str = "pbar b = b pbar";
pub const PBAR_COMMUTES_D: &str = "pbar d = d pbar";
pub const SCHOTTEN_LEFT: &str = "xibar^2 P(xibar) = 0";
pub const SCHOTTEN_RIGHT: &str = "P(xibar) xibar^2 = 0";
pub const XIBAR_BIG_VANISHES: &str = "Xibar = 0";
pub const TUESDAY: &str = "im xibar cap ker xibar^2 = im xibar cap ker xibar";
pub const DIRECT_SUM: &str = "ker xibar^2 + im xibar^2 = Dbar, direct";
pub const IM_XI2_CONTRACTIBLE: &str = "im xibar^2 is contractible";

/// `Dbar = D / im Xi` with its projector onto `ker xibar^2`.
#[derive(Clone, Debug)]
pub struct PbarDecomposition {
    pub dbar: QuotientComplex,
    pub xibar: OperatorFamily,
    pub pbar: OperatorFamily,
    pub ker_xi2: Vec<Subspace>,
    pub im_xi2: Vec<Subspace>,
    pub report: IdentityReport,
}

/// `D / im Xi`.
pub fn dbar(s: &DeformedStructure) -> Result<QuotientComplex> {
    quotient_complex(&s.base, images_of(&s.base, &[&s.big_xi])?)
}

/// `D / (im xi + im Xi)`.
pub fn dtilde(s: &DeformedStructure) -> Result<QuotientComplex> {
    quotient_complex(&s.base, images_of(&s.base, &[&s.xi, &s.big_xi])?)
}

pub fn pbar_decomposition(s: &DeformedStructure) -> Result<PbarDecomposition> {
    s.c.check_invertible(s.top())?;
    let dbar = dbar(s)?;
    let db = &dbar.complex;
    let xibar = db.xi();
    let mut report = IdentityReport::default();
    let reduced = DeformedStructure::new(db.clone(), &s.c)?;
    for n in 0..=db.top() {
        report.push(IdentityCheck::zero(XIBAR_BIG_VANISHES, n, reduced.big_xi.get(n)));
    }

    let mut pbar = Vec::with_capacity(db.top() + 1);
    let mut ker_xi2 = Vec::with_capacity(db.top() + 1);
    let mut im_xi2 = Vec::with_capacity(db.top() + 1);
    for n in 0..=db.top() {
        let x = xibar.get(n);
        let x2 = x * x;
        let p = pbar_poly(&s.c, n)?.eval_at(x)?;
        let prod = projector_poly(&s.c, n)?.eval_at(x)?;
        report.push(IdentityCheck::zero(SCHOTTEN_LEFT, n, &(&x2 * &prod)));
        report.push(IdentityCheck::zero(SCHOTTEN_RIGHT, n, &(&prod * &x2)));
        report.push(IdentityCheck::equal(PBAR_IDEMPOTENT, n, &(&p * &p), &p));
        let kernel = kernel_basis(&x2);
        let image = Subspace::column_space(&x2);
        report.push(IdentityCheck::flag(PBAR_IMAGE, n, Subspace::column_space(&p) == kernel));
        report.push(IdentityCheck::flag(PBAR_KERNEL, n, kernel_basis(&p) == image));
        let sum = kernel.sum(&image)?;
        report.push(IdentityCheck::flag(
            DIRECT_SUM,
            n,
            sum.is_full() && kernel.dim() + image.dim() == x.rows(),
        ));
        let im_x = Subspace::column_space(x);
        let ker_x = kernel_basis(x);
        report.push(IdentityCheck::flag(
            TUESDAY,
            n,
            im_x.intersect(&kernel)? == im_x.intersect(&ker_x)?,
        ));
        pbar.push(p);
        ker_xi2.push(kernel);
        im_xi2.push(image);
    }
    let pbar = OperatorFamily::new(pbar);
    let (fb, fd) = db.commutation_failures(&pbar);
    for n in 1..=db.top() {
        report.push(IdentityCheck::flag(PBAR_COMMUTES_B, n, fb != Some(n)));
    }
    for n in 0..db.top() {
        report.push(IdentityCheck::flag(PBAR_COMMUTES_D, n, fd != Some(n)));
    }
    // On im xibar^2 the operator xibar is invertible, which contracts (.., b).
    let summand = sub_complex(db, im_xi2.clone())?;
    let contraction = contracting_homotopy(&summand.complex)?;
    for n in 0..=db.top() {
        report.push(IdentityCheck::flag(
            IM_XI2_CONTRACTIBLE,
            n,
            !contraction.failing_degrees.contains(&n),
        ));
    }
    Ok(PbarDecomposition {
        dbar,
        xibar,
        pbar,
        ker_xi2,
        im_xi2,
        report,
    })
}

pub const IMISHOM_B_XI: &str = "b xi = 0 on ker xibar^2";
pub const IMISHOM_D_XI: &str = "d xi = 0 on ker xibar^2";
pub const IMISHOM_UPSILON: &str = "Upsilon_n = beta_n d_n on ker xibar^2";
pub const IMISHOM_XI_DB: &str = "xi_n = (1 - beta_{n-1}/beta_n) d b on ker xibar^2";
pub const IMISHOM_XI_BD: &str = "xi_n = (1 - beta_n/beta_{n-1}) b d on ker xibar^2";
pub const REDUCED_XI_SQUARED: &str = "xi^2 = 0 on ker xibar^2";
pub const REDUCED_BIG_XI: &str = "Xi = 0 on ker xibar^2";

/// The subcomplex `ker xibar^2` of `D / im Xi`, where `xi^2 = Xi = 0`.
#[derive(Clone, Debug)]
pub struct ReducedModel {
    pub sub: SubComplex,
    pub report: IdentityReport,
}

/// Checks the simplified structure of `ker xibar^2`.
///
/// The second formula for `xi_n` needs `beta_{n-1}` and is checked for
/// `n >= 1` only.
pub fn imishom_check(s: &DeformedStructure) -> Result<ReducedModel> {
    s.c.check_invertible(s.top())?;
    let dbar = dbar(s)?;
    let xibar = dbar.complex.xi();
    let xi2 = xibar.compose(&xibar);
    let sub = sub_complex(&dbar.complex, kernels_of(&dbar.complex, &xi2)?)?;
    let e = &sub.complex;
    let field = e.field();
    let xi = e.xi();
    let reduced = DeformedStructure::new(e.clone(), &s.c)?;
    let mut report = IdentityReport::default();
    let one = field.one();
    for n in 0..=e.top() {
        let x = xi.get(n);
        let beta = &s.beta[n];
        report.push(IdentityCheck::zero(REDUCED_XI_SQUARED, n, &(x * x)));
        report.push(IdentityCheck::zero(REDUCED_BIG_XI, n, reduced.big_xi.get(n)));
        report.push(IdentityCheck::zero(IMISHOM_B_XI, n, &(e.b(n) * x)));
        report.push(IdentityCheck::zero(IMISHOM_D_XI, n, &(e.d(n) * x)));
        report.push(IdentityCheck::equal(
            IMISHOM_UPSILON,
            n,
            &reduced.upsilon[n],
            &e.d(n).scale(beta),
        ));
        let beta_prev = if n == 0 { field.zero() } else { s.beta[n - 1].clone() };
        let ratio = beta_prev.checked_div(beta).expect("beta invertible");
        let db = e.d_into(n) * e.b(n);
        report.push(IdentityCheck::equal(IMISHOM_XI_DB, n, x, &db.scale(&(&one - &ratio))));
        if n >= 1 {
            let ratio = beta.checked_div(&beta_prev).expect("beta invertible");
            let bd = e.b(n + 1) * e.d(n);
            report.push(IdentityCheck::equal(IMISHOM_XI_BD, n, x, &bd.scale(&(&one - &ratio))));
        }
    }
    Ok(ReducedModel { sub, report })
}
