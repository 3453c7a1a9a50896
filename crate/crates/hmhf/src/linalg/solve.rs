//! Direct sparse factorization and solve.
//!
//! Narrow-band systems (the 1D schemes) go through the internal banded LU;
//! everything else is handed to faer's sparse LU with partial pivoting,
//! which copes with the indefinite systems produced by the reaction terms
//! and the saddle point blocks. Both paths are deterministic.

use faer::linalg::solvers::Solve;
use faer::sparse::{SparseColMat, Triplet};

use crate::error::{Error, Result};
use crate::linalg::band::BandLu;
use crate::linalg::CsrMatrix;

/// Bandwidth at or below which the banded path is used.
const BAND_LIMIT: usize = 48;

pub struct LuFactor {
    n: usize,
    kind: FactorKind,
}

enum FactorKind {
    Band(BandLu),
    General(faer::sparse::linalg::solvers::Lu<usize, f64>),
}

impl LuFactor {
    pub fn new(m: &CsrMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::InvalidArgument(format!(
                "cannot factor a {}x{} matrix",
                m.nrows(),
                m.ncols()
            )));
        }
        let n = m.nrows();
        if n == 0 {
            return Err(Error::InvalidArgument("empty matrix".into()));
        }
        let kind = if m.bandwidth() <= BAND_LIMIT {
            FactorKind::Band(BandLu::new(m)?)
        } else {
            let triplets: Vec<Triplet<usize, usize, f64>> = m
                .triplets()
                .map(|(r, c, v)| Triplet { row: r, col: c, val: v })
                .collect();
            let mat = SparseColMat::<usize, f64>::try_new_from_triplets(n, n, &triplets)
                .map_err(|e| Error::Singular(format!("sparse matrix construction: {e:?}")))?;
            let lu = mat
                .sp_lu()
                .map_err(|e| Error::Singular(format!("sparse LU: {e:?}")))?;
            FactorKind::General(lu)
        };
        Ok(LuFactor { n, kind })
    }

    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        assert_eq!(rhs.len(), self.n);
        match &self.kind {
            FactorKind::Band(b) => b.solve(rhs),
            FactorKind::General(lu) => {
                let b = faer::Mat::<f64>::from_fn(self.n, 1, |i, _| rhs[i]);
                let x = lu.solve(&b);
                (0..self.n).map(|i| x[(i, 0)]).collect()
            }
        }
    }
}

/// Scaled infinity-norm residual of M x = b.
pub fn residual_inf(m: &CsrMatrix, x: &[f64], b: &[f64]) -> f64 {
    let mx = m.matvec(x);
    let r = mx
        .iter()
        .zip(b)
        .map(|(a, bb)| (a - bb).abs())
        .fold(0.0, f64::max);
    let xmax = x.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let bmax = b.iter().map(|v| v.abs()).fold(0.0, f64::max);
    r / (m.norm_inf() * xmax + bmax).max(f64::MIN_POSITIVE)
}

/// Solves M x = b by direct factorization and verifies the residual.
pub fn solve_direct(m: &CsrMatrix, b: &[f64]) -> Result<Vec<f64>> {
    let x = LuFactor::new(m)?.solve(b);
    if !x.iter().all(|v| v.is_finite()) {
        return Err(Error::Singular("solution contains non-finite entries".into()));
    }
    let res = residual_inf(m, &x, b);
    if res > 1e-10 {
        return Err(Error::Singular(format!(
            "residual {res:.3e} exceeds tolerance"
        )));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_returns_rhs() {
        let m = CsrMatrix::identity(4);
        let b = vec![1.0, -2.0, 3.0, 0.5];
        assert_eq!(solve_direct(&m, &b).unwrap(), b);
    }

    #[test]
    fn two_by_two_hand_solution() {
        // [[2,1],[1,2]] x = (1,1) -> x = (1/3,1/3)
        let m = CsrMatrix::from_triplets(2, 2, &[(0, 0, 2.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, 2.0)]);
        let x = solve_direct(&m, &[1.0, 1.0]).unwrap();
        assert!((x[0] - 1.0 / 3.0).abs() < 1e-14);
        assert!((x[1] - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn general_path_used_above_band_limit() {
        // arrow matrix: dense last row/column forces the general path
        let n = 120;
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, 4.0));
            t.push((i, n - 1, 1.0));
            t.push((n - 1, i, 1.0));
        }
        let m = CsrMatrix::from_triplets(n, n, &t);
        assert!(m.bandwidth() > BAND_LIMIT);
        let b = vec![1.0; n];
        let x = solve_direct(&m, &b).unwrap();
        assert!(residual_inf(&m, &x, &b) < 1e-12);
    }

    #[test]
    fn singular_matrix_rejected() {
        let m = CsrMatrix::from_triplets(2, 2, &[(0, 0, 1.0), (1, 0, 1.0)]);
        assert!(solve_direct(&m, &[1.0, 1.0]).is_err());
    }
}
