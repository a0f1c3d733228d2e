use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::EdError;
use crate::operator::SpinOperator;
use crate::sector::{SectorBasis, SparseMatrix, DEFAULT_DIM_CAP};

#[derive(Clone, Copy, Debug)]
pub struct SolverOptions {
    /// target for `‖Hv - Ev‖`
    pub tol: f64,
    pub krylov_dim: usize,
    pub max_restarts: usize,
    pub dim_cap: usize,
    pub seed: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { tol: 1e-10, krylov_dim: 120, max_restarts: 60, dim_cap: DEFAULT_DIM_CAP, seed: 7 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroundState {
    pub energy: f64,
    pub sz: Option<i64>,
    #[serde(skip)]
    pub basis: Vec<u64>,
    #[serde(skip)]
    pub vector: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

impl GroundState {
    /// Amplitude on a basis state, zero outside the sector.
    pub fn amplitude(&self, state: u64) -> f64 {
        self.basis.binary_search(&state).map_or(0.0, |i| self.vector[i])
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

fn residual(m: &SparseMatrix, v: &[f64], e: f64) -> f64 {
    let mut hv = vec![0.0; v.len()];
    m.matvec(v, &mut hv);
    axpy(&mut hv, -e, v);
    norm(&hv)
}

fn lowest(t: DMatrix<f64>) -> (f64, Vec<f64>) {
    let eig = SymmetricEigen::new(t);
    let k = eig.eigenvalues.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).map(|p| p.0).unwrap();
    (eig.eigenvalues[k], eig.eigenvectors.column(k).iter().copied().collect())
}

/// Lowest eigenpair of a symmetric sparse matrix by restarted Lanczos with
/// full reorthogonalisation.
fn lanczos(m: &SparseMatrix, opts: &SolverOptions) -> Result<(f64, Vec<f64>, f64, usize), EdError> {
    let n = m.dim;
    if n <= 64 {
        let (e, v) = lowest(m.to_dense());
        let r = residual(m, &v, e);
        return Ok((e, v, r, 1));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut start: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    let kmax = opts.krylov_dim.min(n);
    let mut iterations = 0;
    let mut last = f64::INFINITY;
    for _ in 0..=opts.max_restarts {
        let s = norm(&start);
        start.iter_mut().for_each(|x| *x /= s);
        let mut basis: Vec<Vec<f64>> = vec![start.clone()];
        let mut alpha = Vec::new();
        let mut beta: Vec<f64> = Vec::new();
        let mut w = vec![0.0; n];
        loop {
            let k = basis.len() - 1;
            m.matvec(&basis[k], &mut w);
            iterations += 1;
            let a = dot(&basis[k], &w);
            alpha.push(a);
            for _ in 0..2 {
                for v in &basis {
                    let c = dot(v, &w);
                    axpy(&mut w, -c, v);
                }
            }
            let b = norm(&w);
            if basis.len() == kmax || b < 1e-13 {
                break;
            }
            beta.push(b);
            basis.push(w.iter().map(|x| x / b).collect());
        }
        let k = alpha.len();
        let mut t = DMatrix::zeros(k, k);
        for i in 0..k {
            t[(i, i)] = alpha[i];
            if i + 1 < k {
                t[(i, i + 1)] = beta[i];
                t[(i + 1, i)] = beta[i];
            }
        }
        let (e, y) = lowest(t);
        let mut x = vec![0.0; n];
        for (yi, v) in y.iter().zip(&basis) {
            axpy(&mut x, *yi, v);
        }
        let s = norm(&x);
        x.iter_mut().for_each(|v| *v /= s);
        let r = residual(m, &x, e);
        if r < opts.tol {
            return Ok((e, x, r, iterations));
        }
        last = r;
        start = x;
    }
    Err(EdError::NoConvergence { residual: last, iterations })
}

/// Ground state of `op` within total `S^z = sz`, or over all sectors when
/// `sz` is `None`. Sign fixed so that the largest component is positive.
pub fn ground_state(op: &SpinOperator, sz: Option<i64>, opts: &SolverOptions) -> Result<GroundState, EdError> {
    match sz {
        Some(_) => solve_sector(op, sz, opts),
        None if op.conserves_sz() => {
            let all = sector_minima(op, opts)?;
            Ok(all.into_iter().min_by(|a, b| a.energy.total_cmp(&b.energy)).expect("at least one sector"))
        }
        None => solve_sector(op, None, opts),
    }
}

fn solve_sector(op: &SpinOperator, sz: Option<i64>, opts: &SolverOptions) -> Result<GroundState, EdError> {
    let basis = SectorBasis::new(op.sites, sz, opts.dim_cap)?;
    let m = SparseMatrix::restrict(op, &basis)?;
    let (energy, mut vector, residual, iterations) = lanczos(&m, opts)?;
    let big = vector.iter().copied().max_by(|a, b| a.abs().total_cmp(&b.abs())).unwrap_or(1.0);
    if big < 0.0 {
        vector.iter_mut().for_each(|x| *x = -*x);
    }
    Ok(GroundState { energy, sz, basis: basis.states, vector, residual, iterations })
}

/// The ground state of every total-`S^z` sector, from `-L/2` to `L/2`.
pub fn sector_minima(op: &SpinOperator, opts: &SolverOptions) -> Result<Vec<GroundState>, EdError> {
    let half = op.sites as i64 / 2;
    (-half..=half).map(|s| solve_sector(op, Some(s), opts)).collect()
}

/// Dense diagonalization, for checking the iterative solver on small chains.
pub fn dense_ground_state(op: &SpinOperator, sz: Option<i64>) -> Result<(f64, Vec<f64>), EdError> {
    let basis = SectorBasis::new(op.sites, sz, 1 << 12)?;
    let m = SparseMatrix::restrict(op, &basis)?;
    Ok(lowest(m.to_dense()))
}
