//! Row reduction.
//!
//! Reduction runs on sparse rows. Over the rationals rows are cleared of
//! denominators and eliminated fraction-free: `row <- (p/g) row - (a/g) pivot`
//! followed by division by the row content, so entries stay primitive
//! integers; the final reduced rows are divided by their leading entry only
//! at the end. Over `F_p` plain elimination with monic pivots is used.
//!
//! The reduced row-echelon form of a matrix is unique, so the output does not
//! depend on the order in which pivots are discovered.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linear::{Field, Matrix, Scalar, Subspace};

type Row<E> = Vec<(usize, E)>;

/// A sparse row in reduced form: entries sorted by column, first entry 1.
pub(crate) type ReducedRow = Vec<(usize, Scalar)>;

trait RowArith {
    type Elem: Clone;

    fn normalize(&self, row: &mut Row<Self::Elem>);

    /// Clears column `col` of `target` using `pivot`, whose leading column is
    /// `col`.
    fn eliminate(
        &self,
        target: &Row<Self::Elem>,
        pivot: &Row<Self::Elem>,
        col: usize,
    ) -> Row<Self::Elem>;

    /// Converts to field elements with leading coefficient one.
    fn finish(&self, row: Row<Self::Elem>) -> ReducedRow;
}

fn entry<E>(row: &Row<E>, col: usize) -> Option<&E> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|i| &row[i].1)
}

/// Merges `x * a + y * b` for sparse rows, dropping zeros.
fn merge<E: Clone>(
    a: &Row<E>,
    b: &Row<E>,
    lin: impl Fn(Option<&E>, Option<&E>) -> E,
    is_zero: impl Fn(&E) -> bool,
) -> Row<E> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (col, v) = match (a.get(i), b.get(j)) {
            (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                i += 1;
                j += 1;
                (*ca, lin(Some(va), Some(vb)))
            }
            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                i += 1;
                (*ca, lin(Some(va), None))
            }
            (Some((ca, va)), None) => {
                i += 1;
                (*ca, lin(Some(va), None))
            }
            (_, Some((cb, vb))) => {
                j += 1;
                (*cb, lin(None, Some(vb)))
            }
            (None, None) => unreachable!(),
        };
        if !is_zero(&v) {
            out.push((col, v));
        }
    }
    out
}

struct IntegerRows;

impl RowArith for IntegerRows {
    type Elem = BigInt;

    fn normalize(&self, row: &mut Row<BigInt>) {
        let Some((_, lead)) = row.first() else { return };
        let negative = lead.is_negative();
        let mut g = BigInt::zero();
        for (_, v) in row.iter() {
            g = g.gcd(v);
            if g.is_one() {
                break;
            }
        }
        if g.is_one() && !negative {
            return;
        }
        if negative {
            g = -g;
        }
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }

    fn eliminate(&self, target: &Row<BigInt>, pivot: &Row<BigInt>, col: usize) -> Row<BigInt> {
        let a = entry(target, col).expect("target has the pivot column").clone();
        let p = pivot[0].1.clone();
        let g = a.gcd(&p);
        let (ts, ps) = (&p / &g, &a / &g);
        let mut out = merge(
            target,
            pivot,
            |x, y| {
                let x = x.map_or_else(BigInt::zero, |x| &ts * x);
                let y = y.map_or_else(BigInt::zero, |y| &ps * y);
                x - y
            },
            BigInt::is_zero,
        );
        self.normalize(&mut out);
        out
    }

    fn finish(&self, row: Row<BigInt>) -> ReducedRow {
        let lead = row[0].1.clone();
        row.into_iter()
            .map(|(c, v)| (c, Scalar::Rational(BigRational::new(v, lead.clone()))))
            .collect()
    }
}

struct ModularRows(u64);

impl RowArith for ModularRows {
    type Elem = u64;

    fn normalize(&self, row: &mut Row<u64>) {
        let p = self.0;
        let Some(&(_, lead)) = row.first() else { return };
        if lead == 1 {
            return;
        }
        let inv = Field::Prime(p)
            .from_i64(lead as i64)
            .inv()
            .and_then(|s| s.to_i64())
            .expect("nonzero lead") as u64;
        for (_, v) in row.iter_mut() {
            *v = *v * inv % p;
        }
    }

    fn eliminate(&self, target: &Row<u64>, pivot: &Row<u64>, col: usize) -> Row<u64> {
        let p = self.0;
        let a = *entry(target, col).expect("target has the pivot column");
        let mut out = merge(
            target,
            pivot,
            |x, y| {
                let x = x.copied().unwrap_or(0);
                let y = y.map_or(0, |y| a * y % p);
                (x + p - y) % p
            },
            |v| *v == 0,
        );
        self.normalize(&mut out);
        out
    }

    fn finish(&self, row: Row<u64>) -> ReducedRow {
        row.into_iter()
            .map(|(c, value)| (c, Scalar::Prime { value, modulus: self.0 }))
            .collect()
    }
}

fn reduce_generic<A: RowArith>(arith: &A, rows: Vec<Row<A::Elem>>) -> Vec<ReducedRow> {
    let mut pivots: BTreeMap<usize, Row<A::Elem>> = BTreeMap::new();
    for mut row in rows {
        arith.normalize(&mut row);
        while let Some(lead) = row.first().map(|(c, _)| *c) {
            match pivots.get(&lead) {
                Some(p) => row = arith.eliminate(&row, p, lead),
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    let cols: Vec<usize> = pivots.keys().copied().collect();
    for (idx, &c) in cols.iter().enumerate().rev() {
        let pivot = pivots[&c].clone();
        for &above in &cols[..idx] {
            let row = &pivots[&above];
            if entry(row, c).is_some() {
                let reduced = arith.eliminate(row, &pivot, c);
                pivots.insert(above, reduced);
            }
        }
    }
    pivots.into_values().map(|r| arith.finish(r)).collect()
}

fn integer_row(row: &[Scalar]) -> Row<BigInt> {
    let mut lcm = BigInt::one();
    for v in row {
        if let Scalar::Rational(r) = v {
            if !r.is_zero() {
                lcm = lcm.lcm(r.denom());
            }
        }
    }
    row.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| {
            let r = v.as_rational().expect("rational entry");
            (c, r.numer() * (&lcm / r.denom()))
        })
        .collect()
}

fn modular_row(row: &[Scalar]) -> Row<u64> {
    row.iter()
        .enumerate()
        .filter_map(|(c, v)| match v {
            Scalar::Prime { value, .. } if *value != 0 => Some((c, *value)),
            _ => None,
        })
        .collect()
}

/// Reduced nonzero rows (leading coefficient one, sorted by leading column)
/// spanning the row space of the given dense rows.
pub(crate) fn reduce_rows<'a>(
    field: Field,
    rows: impl IntoIterator<Item = &'a [Scalar]>,
) -> Vec<ReducedRow> {
    match field {
        Field::Rationals => {
            reduce_generic(&IntegerRows, rows.into_iter().map(integer_row).collect())
        }
        Field::Prime(p) => {
            reduce_generic(&ModularRows(p), rows.into_iter().map(modular_row).collect())
        }
    }
}

/// Dense vector of length `len` from a sparse row.
pub(crate) fn densify(field: Field, len: usize, row: &ReducedRow) -> Vec<Scalar> {
    let mut v = vec![field.zero(); len];
    for (c, x) in row {
        v[*c] = x.clone();
    }
    v
}

/// Reduced row-echelon form and its pivot columns (leftmost-first). The
/// result has the shape of the input with zero rows at the bottom.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let rows = reduce_rows(m.field(), (0..m.rows()).map(|i| m.row(i)));
    let pivots: Vec<usize> = rows.iter().map(|r| r[0].0).collect();
    let mut out = Matrix::zeros(m.field(), m.rows(), m.cols());
    for (i, row) in rows.iter().enumerate() {
        for (c, v) in row {
            out.set(i, *c, v.clone());
        }
    }
    (out, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    // Row and column rank agree; reduce along the shorter side.
    if m.cols() < m.rows() {
        let t = m.transpose();
        reduce_rows(t.field(), (0..t.rows()).map(|i| t.row(i))).len()
    } else {
        reduce_rows(m.field(), (0..m.rows()).map(|i| m.row(i))).len()
    }
}

/// Basis of `{v : M v = 0}`.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let field = m.field();
    let rows = reduce_rows(field, (0..m.rows()).map(|i| m.row(i)));
    let mut is_pivot = vec![false; m.cols()];
    for r in &rows {
        is_pivot[r[0].0] = true;
    }
    let vectors: Vec<Vec<Scalar>> = (0..m.cols())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![field.zero(); m.cols()];
            v[f] = field.one();
            for r in &rows {
                if let Some(x) = entry(r, f) {
                    v[r[0].0] = -x;
                }
            }
            v
        })
        .collect();
    Subspace::span(field, m.cols(), &vectors)
}

/// Basis of the column space.
pub fn image_basis(m: &Matrix) -> Subspace {
    Subspace::span(m.field(), m.rows(), &m.columns())
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let aug = Matrix::hstack(m.field(), n, &[m, &Matrix::identity(m.field(), n)]);
    let (r, pivots) = rref(&aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(r.block(0, n, n, n))
}
