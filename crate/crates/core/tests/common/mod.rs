//! Dense rational linear algebra written from scratch, used as an oracle
//! against the library's sparse-aware elimination and complex machinery.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type R = BigRational;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<Vec<R>>,
}

pub fn r(v: i64) -> R {
    R::from_integer(BigInt::from(v))
}

impl Dense {
    pub fn zeros(rows: usize, cols: usize) -> Dense {
        Dense { rows, cols, a: vec![vec![R::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Dense {
        let mut m = Dense::zeros(n, n);
        for i in 0..n {
            m.a[i][i] = R::one();
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Dense {
        let cols = rows.first().map_or(0, |r| r.len());
        Dense {
            rows: rows.len(),
            cols,
            a: rows.iter().map(|row| row.iter().map(|&v| r(v)).collect()).collect(),
        }
    }

    pub fn mul(&self, o: &Dense) -> Dense {
        assert_eq!(self.cols, o.rows);
        let mut out = Dense::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.a[i][k].is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    out.a[i][j] += &self.a[i][k] * &o.a[k][j];
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Dense) -> Dense {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.a[i][j] += &o.a[i][j];
            }
        }
        out
    }

    pub fn scale(&self, s: &R) -> Dense {
        let mut out = self.clone();
        for row in &mut out.a {
            for x in row {
                *x *= s;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().flatten().all(|x| x.is_zero())
    }

    /// Columns side by side; all parts must have `rows` rows.
    pub fn hstack(rows: usize, parts: &[&Dense]) -> Dense {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Dense::zeros(rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows);
            for i in 0..rows {
                for j in 0..p.cols {
                    out.a[i][off + j] = p.a[i][j].clone();
                }
            }
            off += p.cols;
        }
        out
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn put(&mut self, r0: usize, c0: usize, block: &Dense) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.a[r0 + i][c0 + j] = block.a[i][j].clone();
            }
        }
    }

    /// Row echelon form by plain Gaussian elimination; returns pivot columns.
    fn echelon(&self) -> (Dense, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            let Some(p) = (row..m.rows).find(|&i| !m.a[i][col].is_zero()) else {
                continue;
            };
            m.a.swap(row, p);
            let inv = m.a[row][col].recip();
            for j in 0..m.cols {
                m.a[row][j] *= &inv;
            }
            for i in 0..m.rows {
                if i != row && !m.a[i][col].is_zero() {
                    let f = m.a[i][col].clone();
                    for j in 0..m.cols {
                        let t = &f * &m.a[row][j];
                        m.a[i][j] -= t;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Columns spanning the null space.
    pub fn nullspace(&self) -> Dense {
        let (m, pivots) = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        let mut out = Dense::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.a[f][k] = R::one();
            for (i, &p) in pivots.iter().enumerate() {
                out.a[p][k] = -m.a[i][f].clone();
            }
        }
        out
    }

    pub fn top_rows(&self, n: usize) -> Dense {
        Dense { rows: n, cols: self.cols, a: self.a[..n].to_vec() }
    }
}

/// Copy of a library matrix over `Q`, read back through its printed entries.
pub fn dense(m: &mixhom_core::Matrix) -> Dense {
    let mut out = Dense::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.a[i][j] = m.get(i, j).to_string().parse().unwrap();
        }
    }
    out
}

/// A graded vector space with a boundary `b` and coboundary `cob`, both
/// given per degree: `b[n]: D_n -> D_{n-1}` (for `n >= 1`),
/// `cob[n]: D_n -> D_{n+1}` (for `n < top`).
pub struct Graded {
    pub dims: Vec<usize>,
    pub b: Vec<Dense>,
    pub cob: Vec<Dense>,
}

impl Graded {
    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn b_at(&self, n: usize) -> Dense {
        if n == 0 {
            Dense::zeros(0, self.dims[0])
        } else {
            self.b[n - 1].clone()
        }
    }

    pub fn cob_at(&self, n: usize) -> Dense {
        if n < self.top() {
            self.cob[n].clone()
        } else {
            Dense::zeros(0, self.dims[n])
        }
    }

    /// `b cob + cob b` on `D_n`.
    pub fn anticommutator(&self, n: usize) -> Dense {
        let d = self.dims[n];
        let mut out = Dense::zeros(d, d);
        if n < self.top() {
            out = out.add(&self.b_at(n + 1).mul(&self.cob_at(n)));
        }
        if n > 0 {
            out = out.add(&self.cob_at(n - 1).mul(&self.b_at(n)));
        }
        out
    }

    /// Degrees `n, n-2, ...` stored in `tot_n`, top slot first.
    pub fn slots(&self, n: isize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut k = n;
        while k >= 0 {
            if (k as usize) <= self.top() {
                out.push(k as usize);
            }
            k -= 2;
        }
        out
    }

    pub fn tot_dim(&self, n: isize) -> usize {
        self.slots(n).iter().map(|&k| self.dims[k]).sum()
    }

    /// `b + cob` from `tot_n` to `tot_{n-1}`; the coboundary out of the
    /// top slot (degree `n`) has nowhere to go and is dropped.
    pub fn tot_boundary(&self, n: isize) -> Dense {
        let src = self.slots(n);
        let tgt = self.slots(n - 1);
        let mut out = Dense::zeros(self.tot_dim(n - 1), self.tot_dim(n));
        let offset = |slots: &[usize], k: usize| {
            slots.iter().take_while(|&&s| s != k).map(|&s| self.dims[s]).sum::<usize>()
        };
        for &k in &src {
            let c0 = offset(&src, k);
            if k >= 1 && tgt.contains(&(k - 1)) {
                out.put(offset(&tgt, k - 1), c0, &self.b_at(k));
            }
            if k as isize != n && tgt.contains(&(k + 1)) {
                out.put(offset(&tgt, k + 1), c0, &self.cob_at(k));
            }
        }
        out
    }

    /// Block-diagonal spanning matrix of `tot_n(S)` for a degreewise
    /// family of spanning matrices `span[k]` (columns in `D_k`).
    pub fn tot_span(&self, n: isize, span: &[Dense]) -> Dense {
        let slots = self.slots(n);
        let cols: usize = slots.iter().map(|&k| span[k].cols).sum();
        let mut out = Dense::zeros(self.tot_dim(n), cols);
        let (mut r0, mut c0) = (0, 0);
        for &k in &slots {
            out.put(r0, c0, &span[k]);
            r0 += self.dims[k];
            c0 += span[k].cols;
        }
        out
    }
}

/// `dim H_n` of `tot(D) / tot(S)` with differential `b + cob`.
pub fn quotient_homology_dim(g: &Graded, span: &[Dense], n: isize) -> usize {
    let s = |m: isize| g.tot_span(m, span);
    let dim_s = |m: isize| s(m).rank();
    // rank of the induced map tot_m/S_m -> tot_{m-1}/S_{m-1}
    let rank_bar = |m: isize| {
        let rows = g.tot_dim(m - 1);
        Dense::hstack(rows, &[&g.tot_boundary(m), &s(m - 1)]).rank() - dim_s(m - 1)
    };
    g.tot_dim(n) - dim_s(n) - rank_bar(n) - rank_bar(n + 1)
}

/// `dim H_n` of the subcomplex `tot(S)` (requires `b + cob` to square to
/// zero on it).
pub fn sub_homology_dim(g: &Graded, span: &[Dense], n: isize) -> usize {
    let s = |m: isize| g.tot_span(m, span);
    let rank_on = |m: isize| g.tot_boundary(m).mul(&s(m)).rank();
    s(n).rank() - rank_on(n) - rank_on(n + 1)
}

/// Dimension of the kernel of `H_n(tot/S1) -> H_n(tot/S2)` for `S1 ⊂ S2`.
pub fn quotient_map_kernel_dim(g: &Graded, s1: &[Dense], s2: &[Dense], n: isize) -> usize {
    let rows = g.tot_dim(n);
    let dn = g.tot_boundary(n);
    let below = g.tot_span(n - 1, s1);
    let bounds = g.tot_boundary(n + 1);
    let w = Dense::hstack(rows, &[&bounds, &g.tot_span(n, s2)]);
    // x with (d w) x in S1: kernel of [d W | S1].
    let k = Dense::hstack(g.tot_dim(n - 1), &[&dn.mul(&w), &below]).nullspace();
    let cycles_in_w = w.mul(&k.top_rows(w.cols)).rank();
    let trivial = Dense::hstack(rows, &[&bounds, &g.tot_span(n, s1)]).rank();
    cycles_in_w - trivial
}


/// Concatenates degreewise spanning families.
pub fn sum(a: &[Dense], b: &[Dense]) -> Vec<Dense> {
    a.iter().zip(b).map(|(x, y)| Dense::hstack(x.rows, &[x, y])).collect()
}

/// The oracle's view of a library complex.
pub fn graded(c: &mixhom_core::MixedComplex) -> Graded {
    let top = c.top();
    Graded {
        dims: c.dims().to_vec(),
        b: (1..=top).map(|n| dense(c.b(n))).collect(),
        cob: (0..top).map(|n| dense(c.d(n))).collect(),
    }
}
