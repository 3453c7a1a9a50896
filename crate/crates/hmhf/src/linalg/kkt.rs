//! Saddle point (KKT) systems.
//!
//! The tangential scheme produces systems of the form
//! ```text
//! [ A  B^T ] [ x ]   [ f ]
//! [ B   0  ] [ y ] = [ g ]
//! ```
//! with A symmetric positive definite on ker(B) and B of full row rank.
//! They are solved monolithically by sparse LU; the block matrix is
//! symmetric indefinite, which partial pivoting handles.

use crate::error::{Error, Result};
use crate::linalg::{solve::residual_inf, CsrMatrix, LuFactor};

#[derive(Debug, Clone)]
pub struct KktSystem {
    pub a: CsrMatrix,
    pub b: CsrMatrix,
    pub rhs_primal: Vec<f64>,
    pub rhs_dual: Vec<f64>,
}

impl KktSystem {
    pub fn new(a: CsrMatrix, b: CsrMatrix, rhs_primal: Vec<f64>, rhs_dual: Vec<f64>) -> Result<Self> {
        let n = a.nrows();
        let m = b.nrows();
        if a.ncols() != n {
            return Err(Error::InvalidArgument("A block must be square".into()));
        }
        if b.ncols() != n || rhs_primal.len() != n || rhs_dual.len() != m {
            return Err(Error::InvalidArgument("inconsistent KKT block dimensions".into()));
        }
        if m >= n && m > 0 {
            return Err(Error::InvalidArgument(format!(
                "multiplier space ({m}) must be smaller than primal space ({n})"
            )));
        }
        Ok(KktSystem { a, b, rhs_primal, rhs_dual })
    }

    /// Assembles the full symmetric indefinite block matrix.
    pub fn block_matrix(&self) -> CsrMatrix {
        let n = self.a.nrows();
        let m = self.b.nrows();
        let mut triplets: Vec<(usize, usize, f64)> =
            Vec::with_capacity(self.a.nnz() + 2 * self.b.nnz());
        triplets.extend(self.a.triplets());
        for (q, i, v) in self.b.triplets() {
            triplets.push((n + q, i, v));
            triplets.push((i, n + q, v));
        }
        CsrMatrix::from_triplets(n + m, n + m, &triplets)
    }
}

/// Solves the saddle point system, returning (primal, dual).
pub fn solve_kkt(sys: &KktSystem) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = sys.a.nrows();
    let m = sys.b.nrows();
    if m == 0 {
        let x = crate::linalg::solve_direct(&sys.a, &sys.rhs_primal)?;
        return Ok((x, Vec::new()));
    }
    let block = sys.block_matrix();
    let mut rhs = Vec::with_capacity(n + m);
    rhs.extend_from_slice(&sys.rhs_primal);
    rhs.extend_from_slice(&sys.rhs_dual);

    let factor = LuFactor::new(&block).map_err(|e| Error::InfSupFailure(e.to_string()))?;
    let z = factor.solve(&rhs);
    if !z.iter().all(|v| v.is_finite()) {
        return Err(Error::InfSupFailure("non-finite saddle point solution".into()));
    }
    let res = residual_inf(&block, &z, &rhs);
    if res > 1e-10 {
        return Err(Error::InfSupFailure(format!(
            "saddle point residual {res:.3e} exceeds tolerance"
        )));
    }
    let (x, y) = z.split_at(n);
    // constraint part: ||B x - g|| against the same scaling
    let bx = sys.b.matvec(x);
    let xmax = x.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let gmax = sys.rhs_dual.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let scale = (sys.b.norm_inf() * xmax + gmax).max(f64::MIN_POSITIVE);
    let cres = bx
        .iter()
        .zip(&sys.rhs_dual)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
        / scale;
    if cres > 1e-10 {
        return Err(Error::InfSupFailure(format!(
            "constraint residual {cres:.3e} exceeds tolerance"
        )));
    }
    Ok((x.to_vec(), y.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_kkt_example() {
        // A = I2, B = [1 0], f = (1,1), g = 0 -> x = (0,1), y = 1
        let a = CsrMatrix::identity(2);
        let b = CsrMatrix::from_triplets(1, 2, &[(0, 0, 1.0)]);
        let sys = KktSystem::new(a, b, vec![1.0, 1.0], vec![0.0]).unwrap();
        let (x, y) = solve_kkt(&sys).unwrap();
        assert!((x[0]).abs() < 1e-14 && (x[1] - 1.0).abs() < 1e-14);
        assert!((y[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn empty_multiplier_reduces_to_direct_solve() {
        let a = CsrMatrix::from_triplets(2, 2, &[(0, 0, 2.0), (1, 1, 4.0)]);
        let b = CsrMatrix::from_triplets(0, 2, &[]);
        let sys = KktSystem::new(a, b, vec![2.0, 4.0], vec![]).unwrap();
        let (x, y) = solve_kkt(&sys).unwrap();
        assert_eq!(x, vec![1.0, 1.0]);
        assert!(y.is_empty());
    }

    #[test]
    fn rank_deficient_constraint_fails() {
        // duplicated constraint rows make B rank deficient
        let a = CsrMatrix::identity(3);
        let b = CsrMatrix::from_triplets(2, 3, &[(0, 0, 1.0), (1, 0, 1.0)]);
        let sys = KktSystem::new(a, b, vec![1.0; 3], vec![0.0; 2]).unwrap();
        assert!(matches!(solve_kkt(&sys), Err(Error::InfSupFailure(_))));
    }

    #[test]
    fn manufactured_solution_recovered() {
        // random-ish SPD A, full rank B; rhs built from a known solution
        let n = 8;
        let m = 3;
        let mut at = Vec::new();
        for i in 0..n {
            at.push((i, i, 3.0 + (i as f64) * 0.1));
            if i + 1 < n {
                at.push((i, i + 1, -1.0));
                at.push((i + 1, i, -1.0));
            }
        }
        let a = CsrMatrix::from_triplets(n, n, &at);
        let mut bt = Vec::new();
        for q in 0..m {
            for j in 0..n {
                bt.push((q, j, ((q * 7 + j * 3 + 1) % 5) as f64 - 1.0));
            }
        }
        let b = CsrMatrix::from_triplets(m, n, &bt);
        let xs: Vec<f64> = (0..n).map(|i| (i as f64) * 0.3 - 1.0).collect();
        let ys: Vec<f64> = (0..m).map(|q| 0.5 - (q as f64) * 0.2).collect();
        let mut f = a.matvec(&xs);
        let bty = b.matvec_transpose(&ys);
        for i in 0..n {
            f[i] += bty[i];
        }
        let g = b.matvec(&xs);
        let sys = KktSystem::new(a, b, f, g).unwrap();
        let (x, y) = solve_kkt(&sys).unwrap();
        for (u, v) in x.iter().zip(&xs) {
            assert!((u - v).abs() < 1e-10);
        }
        for (u, v) in y.iter().zip(&ys) {
            assert!((u - v).abs() < 1e-10);
        }
    }
}
