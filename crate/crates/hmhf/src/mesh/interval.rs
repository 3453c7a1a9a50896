//! Uniform partitions of the unit interval.

use crate::error::{Error, Result};

/// Equidistant partition of [0, 1] into `n_elems` subintervals.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalMesh {
    n_elems: usize,
    nodes: Vec<f64>,
    h: f64,
}

/// Builds a uniform interval mesh with n >= 2 elements.
pub fn build_interval_mesh(n: usize) -> Result<IntervalMesh> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "interval mesh needs at least 2 elements, got {n}"
        )));
    }
    let nodes = (0..=n).map(|i| i as f64 / n as f64).collect();
    Ok(IntervalMesh {
        n_elems: n,
        nodes,
        h: 1.0 / n as f64,
    })
}

impl IntervalMesh {
    pub fn n_elems(&self) -> usize {
        self.n_elems
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Left endpoint of element `e`.
    pub fn elem_start(&self, e: usize) -> f64 {
        self.nodes[e]
    }

    /// Element index containing radius `r` (clamped to the mesh).
    pub fn elem_of(&self, r: f64) -> usize {
        ((r / self.h) as usize).min(self.n_elems - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_elements() {
        let m = build_interval_mesh(2).unwrap();
        assert_eq!(m.nodes(), &[0.0, 0.5, 1.0]);
        assert_eq!(m.h(), 0.5);
    }

    #[test]
    fn four_elements() {
        let m = build_interval_mesh(4).unwrap();
        assert_eq!(m.h(), 0.25);
        assert_eq!(m.nodes().len(), 5);
    }

    #[test]
    fn reference_resolution() {
        let m = build_interval_mesh(1 << 14).unwrap();
        assert_eq!(m.h(), 2f64.powi(-14));
    }

    #[test]
    fn uniform_spacing_invariant() {
        for n in [2usize, 3, 7, 100] {
            let m = build_interval_mesh(n).unwrap();
            assert_eq!(m.nodes()[0], 0.0);
            assert_eq!(*m.nodes().last().unwrap(), 1.0);
            for w in m.nodes().windows(2) {
                assert!((w[1] - w[0] - m.h()).abs() <= 1e-14);
                assert!(w[1] > w[0]);
            }
        }
    }

    #[test]
    fn too_few_elements_rejected() {
        assert!(build_interval_mesh(1).is_err());
        assert!(build_interval_mesh(0).is_err());
    }

    #[test]
    fn elem_lookup() {
        let m = build_interval_mesh(4).unwrap();
        assert_eq!(m.elem_of(0.0), 0);
        assert_eq!(m.elem_of(0.3), 1);
        assert_eq!(m.elem_of(1.0), 3);
    }
}
