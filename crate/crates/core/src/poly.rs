//! Univariate polynomials over an exact field, the sequences `c_n` that
//! deform a coboundary, and evaluation at square matrices.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::Entry;
use crate::linear::{Field, Matrix, Scalar};

/// Polynomial with coefficients in ascending degree, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_i64(field: Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn constant(c: Scalar) -> Poly {
        Poly::new(c.field(), vec![c])
    }

    pub fn one(field: Field) -> Poly {
        Poly::constant(field.one())
    }

    pub fn x(field: Field) -> Poly {
        Poly::from_i64(field, &[0, 1])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(self.field, (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(self.field, (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j].add_product(a, b);
            }
        }
        Poly::new(self.field, out)
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(self.field), |acc, _| acc.mul(self))
    }

    /// Value at a scalar.
    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    /// `sum_i coeff_i M^i`, by Horner's rule.
    pub fn eval_at(&self, m: &Matrix) -> Result<Matrix> {
        if !m.is_square() {
            return Err(Error::NonSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let n = m.rows();
        let mut acc = Matrix::zeros(m.field(), n, n);
        for (step, c) in self.coeffs.iter().rev().enumerate() {
            if step > 0 {
                acc = &acc * m;
            }
            if !c.is_zero() {
                for i in 0..n {
                    let v = acc.get(i, i) + c;
                    acc.set(i, i, v);
                }
            }
        }
        Ok(acc)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}x")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

fn binomial(field: Field, n: usize, k: usize) -> Scalar {
    // Multiplicative formula over the integers, then mapped into the field.
    let mut acc = num_bigint::BigInt::from(1u32);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    field.from_bigint(&acc)
}

/// `c_n = sum_{i=0}^n (1-x)^i`, checked against `(1 - (1-x)^{n+1}) / x` and
/// `sum_i (-1)^i C(n+1, i+1) x^i`.
pub fn cyclic_c(field: Field, n: usize) -> Result<Poly> {
    let y = Poly::from_i64(field, &[1, -1]);
    let mut sum = Poly::zero(field);
    let mut power = Poly::one(field);
    for _ in 0..=n {
        sum = sum.add(&power);
        power = power.mul(&y);
    }
    // power = y^{n+1} now.
    let numerator = Poly::one(field).sub(&power);
    if !numerator.coeff(0).is_zero() || sum.mul(&Poly::x(field)) != numerator {
        return Err(Error::PolyInconsistent { degree: n });
    }
    let binomial_form = Poly::new(
        field,
        (0..=n)
            .map(|i| {
                let b = binomial(field, n + 1, i + 1);
                if i % 2 == 0 {
                    b
                } else {
                    -b
                }
            })
            .collect(),
    );
    if binomial_form != sum {
        return Err(Error::PolyInconsistent { degree: n });
    }
    Ok(sum)
}

/// Which family of polynomials a [`PolySeq`] holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqKind {
    /// `sum_{i=0}^n (1-x)^i`.
    Cyclic,
    /// `c_n = 1`, so the deformed coboundary is `d` itself.
    One,
    /// `c_n = q^n`.
    Geometric(Scalar),
    /// `c_0, c_1, ...` given explicitly.
    Explicit(Vec<Poly>),
}

/// Derived data of a sequence at one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqStats {
    pub degree: usize,
    pub c: Poly,
    pub f: Poly,
    pub beta: Scalar,
    pub eps: Scalar,
    pub delta: Scalar,
    pub gamma: Scalar,
    /// `beta != 0`, i.e. `c_n` is a unit in `k[[x]]`.
    pub invertible: bool,
}

/// A sequence `c_0, c_1, ...` of polynomials over a field, with `c_{-1} = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySeq {
    field: Field,
    kind: SeqKind,
}

impl PolySeq {
    pub fn cyclic(field: Field) -> PolySeq {
        PolySeq {
            field,
            kind: SeqKind::Cyclic,
        }
    }

    pub fn one(field: Field) -> PolySeq {
        PolySeq {
            field,
            kind: SeqKind::One,
        }
    }

    pub fn geometric(q: Scalar) -> PolySeq {
        PolySeq {
            field: q.field(),
            kind: SeqKind::Geometric(q),
        }
    }

    pub fn explicit(field: Field, polys: Vec<Poly>) -> Result<PolySeq> {
        if polys.iter().any(|p| p.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(PolySeq {
            field,
            kind: SeqKind::Explicit(polys),
        })
    }

    /// `len` polynomials of degree at most `max_degree` with entries drawn
    /// from `-range..=range`; constant terms are nonzero.
    pub fn random_explicit(
        field: Field,
        len: usize,
        max_degree: usize,
        range: i64,
        rng: &mut impl Rng,
    ) -> PolySeq {
        let polys = (0..len)
            .map(|_| {
                let mut coeffs: Vec<Scalar> = (0..=max_degree)
                    .map(|_| field.from_i64(rng.random_range(-range..=range)))
                    .collect();
                while coeffs[0].is_zero() {
                    coeffs[0] = field.from_i64(rng.random_range(1..=range.max(1)));
                }
                Poly::new(field, coeffs)
            })
            .collect();
        PolySeq {
            field,
            kind: SeqKind::Explicit(polys),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn kind(&self) -> &SeqKind {
        &self.kind
    }

    /// Short human-readable label.
    pub fn label(&self) -> String {
        match &self.kind {
            SeqKind::Cyclic => "cyclic".into(),
            SeqKind::One => "one".into(),
            SeqKind::Geometric(q) => format!("geometric(q={q})"),
            SeqKind::Explicit(p) => format!("explicit({} polys)", p.len()),
        }
    }

    /// `c_n`, with `c_n = 0` for negative `n`.
    pub fn c(&self, n: isize) -> Result<Poly> {
        if n < 0 {
            return Ok(Poly::zero(self.field));
        }
        let n = n as usize;
        match &self.kind {
            SeqKind::Cyclic => cyclic_c(self.field, n),
            SeqKind::One => Ok(Poly::one(self.field)),
            SeqKind::Geometric(q) => Ok(Poly::constant(q.pow(n as u32))),
            SeqKind::Explicit(polys) => polys
                .get(n)
                .cloned()
                .ok_or(Error::MissingPolynomial { degree: n }),
        }
    }

    /// `f_n = c_n - c_{n-1}`.
    pub fn f(&self, n: isize) -> Result<Poly> {
        Ok(self.c(n)?.sub(&self.c(n - 1)?))
    }

    /// Constant coefficient of `c_n`.
    pub fn beta(&self, n: isize) -> Result<Scalar> {
        Ok(self.c(n)?.coeff(0))
    }

    pub fn stats(&self, n: usize) -> Result<SeqStats> {
        let c = self.c(n as isize)?;
        let prod = self.c(n as isize - 1)?.mul(&c);
        let beta = c.coeff(0);
        Ok(SeqStats {
            degree: n,
            f: self.f(n as isize)?,
            invertible: !beta.is_zero(),
            beta,
            eps: prod.coeff(0),
            delta: prod.coeff(1),
            gamma: prod.coeff(2),
            c,
        })
    }

    /// Checks that `c_0..=c_max` are defined and have invertible constant
    /// terms. Fails for cyclic sequences over `F_p` with `p <= max + 1`.
    pub fn check_invertible(&self, max: usize) -> Result<()> {
        if let (SeqKind::Cyclic, Field::Prime(p)) = (&self.kind, self.field) {
            if p <= max as u64 + 1 {
                return Err(Error::InvalidParameter(format!(
                    "cyclic sequence over F_{p} needs p > {}, since beta_n = n+1 vanishes at n = p-1",
                    max + 1
                )));
            }
        }
        for n in 0..=max {
            if self.beta(n as isize)?.is_zero() {
                return Err(Error::Hypothesis(format!(
                    "c_{n} has zero constant term, so it is not a unit in k[[x]]"
                )));
            }
        }
        Ok(())
    }

    pub fn to_spec(&self) -> PolySeqSpec {
        match &self.kind {
            SeqKind::Cyclic => PolySeqSpec::Cyclic,
            SeqKind::One => PolySeqSpec::One,
            SeqKind::Geometric(q) => PolySeqSpec::Geometric { q: Entry::from(q) },
            SeqKind::Explicit(polys) => PolySeqSpec::Explicit {
                polys: polys
                    .iter()
                    .map(|p| p.coeffs().iter().map(Entry::from).collect())
                    .collect(),
            },
        }
    }

    pub fn from_spec(field: Field, spec: &PolySeqSpec) -> Result<PolySeq> {
        Ok(match spec {
            PolySeqSpec::Cyclic => PolySeq::cyclic(field),
            PolySeqSpec::One => PolySeq::one(field),
            PolySeqSpec::Geometric { q } => PolySeq::geometric(q.to_scalar(field)?),
            PolySeqSpec::Explicit { polys } => {
                let polys = polys
                    .iter()
                    .map(|coeffs| {
                        let cs = coeffs
                            .iter()
                            .map(|e| e.to_scalar(field))
                            .collect::<Result<Vec<_>>>()?;
                        Ok(Poly::new(field, cs))
                    })
                    .collect::<Result<Vec<_>>>()?;
                PolySeq::explicit(field, polys)?
            }
        })
    }
}

/// Serialized form of a [`PolySeq`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum PolySeqSpec {
    Cyclic,
    One,
    Geometric { q: Entry },
    Explicit { polys: Vec<Vec<Entry>> },
}
