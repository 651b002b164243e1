use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::{matrix_from_entries, matrix_to_entries, Entry};
use crate::linear::{Field, Matrix, Scalar};

/// A finite-dimensional unital algebra given by structure constants, with
/// `e_0` the unit and an optional twist endomorphism `sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    labels: Vec<String>,
    /// `table[i][j]` holds the coordinates of `e_i e_j`.
    table: Vec<Vec<Vec<Scalar>>>,
    sigma: Option<Matrix>,
}

/// `(i, j, [(k, c)])`: `e_i e_j = sum c e_k`.
pub type Product<'a> = (usize, usize, &'a [(usize, i64)]);

impl Algebra {
    /// Validates associativity, the unit `e_0`, and that `sigma` (if any) is
    /// a unital algebra map.
    pub fn new(
        field: Field,
        labels: Vec<String>,
        table: Vec<Vec<Vec<Scalar>>>,
        sigma: Option<Matrix>,
    ) -> Result<Algebra> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidParameter("an algebra needs a unit".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::InvalidParameter(format!(
                "structure table must be {n}x{n} with vectors of length {n}"
            )));
        }
        if let Some(s) = &sigma {
            if s.shape() != (n, n) {
                return Err(Error::Twist(format!("sigma must be {n}x{n}")));
            }
        }
        let a = Algebra {
            field,
            labels,
            table,
            sigma,
        };
        a.check_unit()?;
        a.check_associative()?;
        a.check_sigma()?;
        Ok(a)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn sigma(&self) -> Option<&Matrix> {
        self.sigma.as_ref()
    }

    pub fn with_sigma(&self, sigma: Option<Matrix>) -> Result<Algebra> {
        Algebra::new(self.field, self.labels.clone(), self.table.clone(), sigma)
    }

    /// `e_i e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i][j]
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.table[i][j].iter().enumerate() {
                    out[k].add_product(&ab, c);
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    /// `sigma(e_i)`, or `e_i` without a twist.
    pub fn sigma_of(&self, i: usize) -> Vec<Scalar> {
        match &self.sigma {
            Some(s) => s.column(i),
            None => self.basis_vector(i),
        }
    }

    fn check_unit(&self) -> Result<()> {
        for i in 0..self.dim() {
            let e = self.basis_vector(i);
            if self.table[0][i] != e || self.table[i][0] != e {
                return Err(Error::Unit(i));
            }
        }
        Ok(())
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = &self.table[i][j];
                for k in 0..n {
                    let left = self.mul(ij, &self.basis_vector(k));
                    let right = self.mul(&self.basis_vector(i), &self.table[j][k]);
                    if left != right {
                        return Err(Error::Associativity(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_sigma(&self) -> Result<()> {
        let Some(s) = &self.sigma else { return Ok(()) };
        if s.column(0) != self.basis_vector(0) {
            return Err(Error::Twist("sigma(1) != 1".into()));
        }
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let lhs = s.mul_vec(&self.table[i][j]);
                let rhs = self.mul(&s.column(i), &s.column(j));
                if lhs != rhs {
                    return Err(Error::Twist(format!(
                        "sigma(e_{i} e_{j}) != sigma(e_{i}) sigma(e_{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Builds the algebra from a list of nonzero products `(i, j, [(k, c)])`
    /// between non-unit basis elements; unit products are filled in.
    pub fn from_products(
        field: Field,
        labels: &[&str],
        products: &[Product<'_>],
        sigma: Option<Matrix>,
    ) -> Result<Algebra> {
        let n = labels.len();
        let mut table = vec![vec![vec![field.zero(); n]; n]; n];
        for i in 0..n {
            table[0][i][i] = field.one();
            table[i][0][i] = field.one();
        }
        for &(i, j, terms) in products {
            for &(k, c) in terms {
                table[i][j][k] = field.from_i64(c);
            }
        }
        Algebra::new(field, labels.iter().map(|s| s.to_string()).collect(), table, sigma)
    }

    pub fn to_spec(&self) -> AlgebraSpec {
        AlgebraSpec {
            field: Some(self.field),
            dim: self.dim(),
            labels: self.labels.clone(),
            table: self
                .table
                .iter()
                .map(|row| row.iter().map(|v| v.iter().map(Entry::from).collect()).collect())
                .collect(),
            sigma: self.sigma.as_ref().map(matrix_to_entries),
        }
    }

    pub fn from_spec(spec: &AlgebraSpec) -> Result<Algebra> {
        let field = spec.field.unwrap_or(Field::Rationals);
        let n = spec.dim;
        if spec.labels.len() != n {
            return Err(Error::InvalidParameter(format!("expected {n} labels")));
        }
        let table = spec
            .table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.iter().map(|e| e.to_scalar(field)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let sigma = spec
            .sigma
            .as_ref()
            .map(|s| matrix_from_entries(field, n, n, s, "sigma"))
            .transpose()?;
        Algebra::new(field, spec.labels.clone(), table, sigma)
    }
}

/// Algebra file format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<Field>,
    pub dim: usize,
    pub labels: Vec<String>,
    pub table: Vec<Vec<Vec<Entry>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<Vec<Entry>>>,
}

/// Exterior algebra on `x, y` with basis `1, x, y, xy`.
pub fn exterior_algebra(field: Field) -> Algebra {
    Algebra::from_products(
        field,
        &["1", "x", "y", "xy"],
        &[(1, 2, &[(3, 1)]), (2, 1, &[(3, -1)])],
        None,
    )
    .expect("exterior algebra is valid")
}

/// `sigma(x) = -x`, `sigma(y) = -y`, `sigma(xy) = xy` on the exterior algebra.
pub fn exterior_sign_flip(field: Field) -> Matrix {
    Matrix::from_i64(
        field,
        &[&[1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, 1]],
    )
}

/// `k<x, y> / (x^2, y^2, xy + q yx)` with basis `1, x, y, yx`.
pub fn quantum_plane_algebra(q: &Scalar) -> Algebra {
    let field = q.field();
    let n = 4;
    let mut table = vec![vec![vec![field.zero(); n]; n]; n];
    for i in 0..n {
        table[0][i][i] = field.one();
        table[i][0][i] = field.one();
    }
    table[1][2][3] = -q; // xy = -q yx
    table[2][1][3] = field.one(); // y x = yx
    Algebra::new(
        field,
        ["1", "x", "y", "yx"].iter().map(|s| s.to_string()).collect(),
        table,
        None,
    )
    .expect("quantum plane algebra is valid")
}

/// Algebra validation as a free function.
pub fn algebra_build(
    field: Field,
    labels: Vec<String>,
    table: Vec<Vec<Vec<Scalar>>>,
    sigma: Option<Matrix>,
) -> Result<Algebra> {
    Algebra::new(field, labels, table, sigma)
}
