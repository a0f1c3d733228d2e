use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::EdError;
use crate::operator::SpinOperator;

/// Largest basis the solver accepts by default.
pub const DEFAULT_DIM_CAP: usize = 1 << 20;

/// Basis states of a fixed total `S^z` (or of the whole space), in ascending
/// bit-pattern order.
#[derive(Clone, Debug)]
pub struct SectorBasis {
    pub sites: usize,
    pub sz: Option<i64>,
    pub states: Vec<u64>,
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

impl SectorBasis {
    pub fn new(sites: usize, sz: Option<i64>, cap: usize) -> Result<Self, EdError> {
        let what = match sz {
            Some(s) => format!("L = {sites}, Sz = {s}"),
            None => format!("L = {sites}, all sectors"),
        };
        let up = match sz {
            Some(s) => {
                let up = s + sites as i64 / 2;
                if sites % 2 == 1 || !(0..=sites as i64).contains(&up) {
                    return Err(EdError::Invalid(format!("no sector Sz = {s} for L = {sites}")));
                }
                Some(up as usize)
            }
            None => None,
        };
        let dim = match up {
            Some(u) => binomial(sites, u),
            None => 1usize.checked_shl(sites as u32).unwrap_or(usize::MAX),
        };
        if dim > cap {
            return Err(EdError::TooLarge { what, dim, cap });
        }
        let states = match up {
            None => (0..dim as u64).collect(),
            Some(u) => {
                let mut v = Vec::with_capacity(dim);
                if u == 0 {
                    v.push(0);
                } else {
                    // Gosper's hack enumerates fixed-popcount patterns in order
                    let mut s: u64 = (1 << u) - 1;
                    while s < 1 << sites {
                        v.push(s);
                        let c = s & s.wrapping_neg();
                        let r = s + c;
                        s = (((r ^ s) >> 2) / c) | r;
                    }
                }
                v
            }
        };
        Ok(SectorBasis { sites, sz, states })
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn index(&self, state: u64) -> Option<usize> {
        self.states.binary_search(&state).ok()
    }
}

/// Row-compressed real matrix.
#[derive(Clone, Debug)]
pub struct SparseMatrix {
    pub dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl SparseMatrix {
    /// The operator restricted to a sector; terms leaving the sector are an error.
    pub fn restrict(op: &SpinOperator, basis: &SectorBasis) -> Result<Self, EdError> {
        let rows: Vec<Result<Vec<(usize, f64)>, EdError>> = basis
            .states
            .par_iter()
            .map(|&s| {
                let mut buf = Vec::new();
                op.act(s, &mut buf);
                buf.sort_unstable_by_key(|e| e.0);
                buf.dedup_by(|b, a| {
                    if a.0 == b.0 {
                        a.1 += b.1;
                        true
                    } else {
                        false
                    }
                });
                let mut row = Vec::with_capacity(buf.len());
                for (t, a) in buf {
                    if a == 0.0 {
                        continue;
                    }
                    let j = basis.index(t).ok_or_else(|| {
                        EdError::Invalid("operator does not preserve the total-Sz sector".into())
                    })?;
                    row.push((j, a));
                }
                Ok(row)
            })
            .collect();
        let mut row_ptr = vec![0];
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        for row in rows {
            for (j, a) in row? {
                cols.push(j);
                vals.push(a);
            }
            row_ptr.push(cols.len());
        }
        Ok(SparseMatrix { dim: basis.dim(), row_ptr, cols, vals })
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// `y = A x`, one row per task, so the result does not depend on threading.
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        y.par_iter_mut().enumerate().for_each(|(i, yi)| {
            let (lo, hi) = (self.row_ptr[i], self.row_ptr[i + 1]);
            *yi = self.cols[lo..hi].iter().zip(&self.vals[lo..hi]).map(|(j, a)| a * x[*j]).sum();
        });
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                m[(i, self.cols[k])] += self.vals[k];
            }
        }
        m
    }

    /// Largest `|A_ij - A_ji|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                let j = self.cols[k];
                let row = &self.cols[self.row_ptr[j]..self.row_ptr[j + 1]];
                let back = row.binary_search(&i).map_or(0.0, |p| self.vals[self.row_ptr[j] + p]);
                worst = worst.max((self.vals[k] - back).abs());
            }
        }
        worst
    }
}
