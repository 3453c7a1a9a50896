//! Inf-sup constant estimation for the constraint form of the tangential
//! scheme.
//!
//! The discrete inf-sup constant of b(u; v, w) with respect to L^2 norms is
//! beta = sqrt(lambda_min) of the generalized eigenproblem
//! `(B Mv^{-1} B^T) y = lambda Mw y`. Only the smallest eigenpair is needed,
//! so it is computed by inverse iteration with shift zero; the inner solves
//! with the Schur-type operator use conjugate gradients with the operator
//! applied matrix-free (one Mv backsolve per application).

use crate::error::{Error, Result};
use crate::linalg::{CsrMatrix, LuFactor};

const EIG_TOL: f64 = 1e-8;
const MAX_OUTER: usize = 200;

struct SchurOp<'a> {
    b: &'a CsrMatrix,
    mv_factor: LuFactor,
}

impl SchurOp<'_> {
    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let btx = self.b.matvec_transpose(x);
        let w = self.mv_factor.solve(&btx);
        self.b.matvec(&w)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Preconditioned CG for S x = rhs with diagonal preconditioner `diag_inv`.
fn pcg(op: &SchurOp, rhs: &[f64], diag_inv: &[f64], tol: f64, max_iter: usize) -> Option<Vec<f64>> {
    let n = rhs.len();
    let mut x = vec![0.0; n];
    let mut r = rhs.to_vec();
    let rhs_norm = dot(rhs, rhs).sqrt().max(f64::MIN_POSITIVE);
    let mut z: Vec<f64> = r.iter().zip(diag_inv).map(|(a, d)| a * d).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    for _ in 0..max_iter {
        if dot(&r, &r).sqrt() <= tol * rhs_norm {
            return Some(x);
        }
        let sp = op.apply(&p);
        let psp = dot(&p, &sp);
        if psp <= 0.0 || !psp.is_finite() {
            return None; // operator not positive definite in this direction
        }
        let alpha = rz / psp;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * sp[i];
        }
        z = r.iter().zip(diag_inv).map(|(a, d)| a * d).collect();
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    if dot(&r, &r).sqrt() <= tol.max(1e-9) * rhs_norm {
        Some(x)
    } else {
        None
    }
}

/// Estimates the inf-sup constant beta for the constraint matrix `b` with
/// primal mass `mv` and multiplier mass `mw`.
pub fn estimate_inf_sup(b: &CsrMatrix, mv: &CsrMatrix, mw: &CsrMatrix) -> Result<f64> {
    let m = b.nrows();
    let n = b.ncols();
    if mv.nrows() != n || mv.ncols() != n || mw.nrows() != m || mw.ncols() != m {
        return Err(Error::InvalidArgument("inconsistent mass matrix dimensions".into()));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("empty multiplier space".into()));
    }
    // degenerate constraint field: B = 0 up to rounding
    if b.norm_inf() <= 1e-14 * mw.norm_inf().max(1.0) {
        return Ok(0.0);
    }
    let op = SchurOp {
        b,
        mv_factor: LuFactor::new(mv)?,
    };
    // diag(Mw) preconditioner: S is spectrally close to Mw for unit fields
    let diag_inv: Vec<f64> = (0..m)
        .map(|i| {
            let d = mw.get(i, i);
            if d > 0.0 {
                1.0 / d
            } else {
                1.0
            }
        })
        .collect();

    // inverse iteration on (S, Mw) with shift 0
    let mut y = vec![1.0; m];
    let ym = mw.matvec(&y);
    let nrm = dot(&y, &ym).sqrt();
    for v in &mut y {
        *v /= nrm;
    }
    let mut lambda_prev = f64::INFINITY;
    for _ in 0..MAX_OUTER {
        let rhs = mw.matvec(&y);
        let Some(w) = pcg(&op, &rhs, &diag_inv, 1e-12, 40 * m + 200) else {
            // S singular (or numerically so): the constraint is degenerate
            return Ok(0.0);
        };
        let wm = mw.matvec(&w);
        let nrm = dot(&w, &wm).sqrt();
        if nrm <= 0.0 || !nrm.is_finite() {
            return Ok(0.0);
        }
        y = w.iter().map(|v| v / nrm).collect();
        let sy = op.apply(&y);
        let my = mw.matvec(&y);
        let lambda = dot(&y, &sy) / dot(&y, &my);
        if !lambda.is_finite() {
            return Err(Error::Singular("inf-sup iteration produced non-finite value".into()));
        }
        if (lambda - lambda_prev).abs() <= EIG_TOL * lambda.abs().max(1e-30) {
            return Ok(if lambda <= EIG_TOL * EIG_TOL { 0.0 } else { lambda.sqrt() });
        }
        lambda_prev = lambda;
    }
    Err(Error::Singular("inf-sup inverse iteration did not converge".into()))
}
