//! Total complexes `tot_n = (+)_i E_{n-2i}` and their parity-graded variant.

use serde::Serialize;

use crate::complex::MixedComplex;
use crate::error::{Error, Result};
use crate::linear::{Field, Matrix, Scalar};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Grading {
    /// `tot_n = E_n + E_{n-2} + ...`, with the coboundary cut off at `E_n`.
    #[default]
    Natural,
    /// `tot_s = E_s + E_{s+2} + ...` for `s = 0, 1`; needs a bounded complex.
    Parity,
}

/// One summand `E_degree` of a total space, at coordinates
/// `offset..offset + dim`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Slot {
    pub degree: usize,
    pub offset: usize,
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub struct TotalComplex {
    field: Field,
    grading: Grading,
    layouts: Vec<Vec<Slot>>,
    /// `differentials[n]` leaves index `n`.
    differentials: Vec<Matrix>,
}

/// Degrees making up index `n`, in slot order.
pub fn slot_degrees(grading: Grading, n: usize, top: usize) -> Vec<usize> {
    match grading {
        Grading::Natural => (0..=n / 2).map(|i| n - 2 * i).collect(),
        Grading::Parity => (n..=top).step_by(2).collect(),
    }
}

fn layout(e: &MixedComplex, degrees: Vec<usize>) -> Vec<Slot> {
    let mut offset = 0;
    degrees
        .into_iter()
        .map(|degree| {
            let dim = e.dim(degree as isize);
            let s = Slot { degree, offset, dim };
            offset += dim;
            s
        })
        .collect()
}

fn total_dim(slots: &[Slot]) -> usize {
    slots.iter().map(|s| s.dim).sum()
}

impl TotalComplex {
    /// Assembles `b + d` on the total spaces of `e` for indices `0..=max`
    /// (parity: `0..=1`) and checks that it squares to zero. `e` must have
    /// vanishing `xi`, as a hat complex does.
    pub fn new(e: &MixedComplex, grading: Grading, max: usize) -> Result<TotalComplex> {
        let field = e.field();
        let top = e.top();
        let count = match grading {
            Grading::Natural => max + 1,
            Grading::Parity => 2,
        };
        let layouts: Vec<Vec<Slot>> = (0..count)
            .map(|n| layout(e, slot_degrees(grading, n, top)))
            .collect();
        let mut differentials = Vec::with_capacity(count);
        for n in 0..count {
            let source = &layouts[n];
            let target_slots = match grading {
                Grading::Natural if n == 0 => Vec::new(),
                Grading::Natural => layouts[n - 1].clone(),
                Grading::Parity => layouts[1 - n].clone(),
            };
            let mut m = Matrix::zeros(field, total_dim(&target_slots), total_dim(source));
            for s in source {
                if s.dim == 0 {
                    continue;
                }
                for t in &target_slots {
                    if t.degree + 1 == s.degree {
                        m.set_block(t.offset, s.offset, e.b(s.degree));
                    } else if t.degree == s.degree + 1 && s.degree < top {
                        m.set_block(t.offset, s.offset, e.d(s.degree));
                    }
                }
            }
            differentials.push(m);
        }
        let tot = TotalComplex {
            field,
            grading,
            layouts,
            differentials,
        };
        tot.check_square_zero()?;
        Ok(tot)
    }

    fn check_square_zero(&self) -> Result<()> {
        for n in 0..self.differentials.len() {
            let (inner, outer) = match self.grading {
                Grading::Natural if n == 0 => continue,
                Grading::Natural => (&self.differentials[n], &self.differentials[n - 1]),
                Grading::Parity => (&self.differentials[n], &self.differentials[1 - n]),
            };
            if !(outer * inner).is_zero() {
                return Err(Error::NotAComplex);
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    /// Number of assembled indices.
    pub fn len(&self) -> usize {
        self.layouts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layouts.is_empty()
    }

    pub fn layout(&self, n: usize) -> &[Slot] {
        &self.layouts[n]
    }

    pub fn dim(&self, n: usize) -> usize {
        total_dim(&self.layouts[n])
    }

    /// The differential leaving index `n`.
    pub fn differential(&self, n: usize) -> &Matrix {
        &self.differentials[n]
    }

    /// The differential arriving at index `n`; `None` at the last natural
    /// index, where it was not assembled.
    pub fn differential_into(&self, n: usize) -> Option<&Matrix> {
        match self.grading {
            Grading::Natural => self.differentials.get(n + 1),
            Grading::Parity => Some(&self.differentials[1 - n]),
        }
    }

    /// Component of `v in tot_n` in the summand of the given degree.
    pub fn component(&self, n: usize, degree: usize, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.layouts[n]
            .iter()
            .find(|s| s.degree == degree)
            .map(|s| v[s.offset..s.offset + s.dim].to_vec())
    }
}

/// Block-diagonal map `tot_n(source) -> tot_n(target)` with blocks
/// `block(degree)`.
pub fn total_map(
    source: &TotalComplex,
    target: &TotalComplex,
    n: usize,
    block: impl Fn(usize) -> Matrix,
) -> Matrix {
    let mut m = Matrix::zeros(source.field, target.dim(n), source.dim(n));
    for s in source.layout(n) {
        if let Some(t) = target.layout(n).iter().find(|t| t.degree == s.degree) {
            if s.dim > 0 && t.dim > 0 {
                m.set_block(t.offset, s.offset, &block(s.degree));
            }
        }
    }
    m
}
