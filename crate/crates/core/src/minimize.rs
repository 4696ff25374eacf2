//! Exact minimization by forward and backward subspace reduction.
//!
//! The forward pass finds an orthonormal basis `F` of `span{A_xᵀ α}` and
//! restricts the automaton to it; the backward pass does the same for
//! `span{A_x β}` on the result. Both subspaces are invariant under the
//! respective transition maps, so the restrictions compute the same function.
//! New directions are accepted only when their singular value, relative to
//! the candidate block they came from, exceeds the rank tolerance.

use crate::numerics::{self, Matrix, Vector, DEFAULT_RANK_TOL};
use crate::wfa::Wfa;

#[derive(Debug, Clone)]
pub struct MinimizationResult {
    pub minimal: Wfa,
    pub original_dim: usize,
    pub minimal_dim: usize,
    /// Orthonormal basis of the forward (reachable) space, `n × k`.
    pub forward_basis: Matrix,
    /// Orthonormal basis of the backward (observable) space of the forward
    /// reduction, `k × m`.
    pub backward_basis: Matrix,
    /// The input computes the zero function; `minimal` is the 1-state zero
    /// automaton.
    pub is_zero: bool,
}

pub fn minimize(a: &Wfa) -> MinimizationResult {
    minimize_with_tol(a, DEFAULT_RANK_TOL)
}

pub fn minimize_with_tol(a: &Wfa, rank_tol: f64) -> MinimizationResult {
    let n = a.states();
    let transposed: Vec<Matrix> = a.transitions().iter().map(|m| m.transpose()).collect();
    let forward = invariant_basis(a.alpha(), &transposed, rank_tol);
    if forward.ncols() == 0 {
        return zero_result(a, forward, Matrix::zeros(0, 0));
    }
    let reached = a.compress(&forward);
    let backward = invariant_basis(reached.beta(), reached.transitions(), rank_tol);
    if backward.ncols() == 0 {
        return zero_result(a, forward, backward);
    }
    let minimal = reached.compress(&backward);
    MinimizationResult {
        minimal_dim: minimal.states(),
        minimal,
        original_dim: n,
        forward_basis: forward,
        backward_basis: backward,
        is_zero: false,
    }
}

/// Rank of the function computed by `a` (1 for the zero function, which is
/// represented with one state).
pub fn rank(a: &Wfa, rank_tol: f64) -> usize {
    minimize_with_tol(a, rank_tol).minimal_dim
}

fn zero_result(a: &Wfa, forward: Matrix, backward: Matrix) -> MinimizationResult {
    MinimizationResult {
        minimal: Wfa::zero(a.alphabet().clone()),
        original_dim: a.states(),
        minimal_dim: 1,
        forward_basis: forward,
        backward_basis: backward,
        is_zero: true,
    }
}

/// Orthonormal basis of the smallest subspace containing `start` and
/// invariant under every map in `maps`.
fn invariant_basis(start: &Vector, maps: &[Matrix], rank_tol: f64) -> Matrix {
    let n = start.len();
    let mut basis = Matrix::zeros(n, 0);
    let seed = Matrix::from_column_slice(n, 1, start.as_slice());
    let mut frontier = absorb(&mut basis, &seed, rank_tol);
    while frontier.ncols() > 0 && basis.ncols() < n {
        let k = frontier.ncols();
        let mut candidates = Matrix::zeros(n, k * maps.len());
        for (s, m) in maps.iter().enumerate() {
            candidates.columns_mut(s * k, k).copy_from(&(m * &frontier));
        }
        frontier = absorb(&mut basis, &candidates, rank_tol);
    }
    basis
}

/// Appends to `basis` the directions of `candidates` not already spanned,
/// returning the newly added orthonormal columns.
fn absorb(basis: &mut Matrix, candidates: &Matrix, rank_tol: f64) -> Matrix {
    let n = candidates.nrows();
    let scale = numerics::norm_2(candidates).unwrap_or(0.0);
    if scale == 0.0 || !scale.is_finite() {
        return Matrix::zeros(n, 0);
    }
    let mut residual = candidates.clone();
    for _ in 0..2 {
        if basis.ncols() > 0 {
            residual -= &*basis * basis.tr_mul(&residual);
        }
    }
    let Ok(svd) = numerics::svd_full(&residual, rank_tol) else {
        return Matrix::zeros(n, 0);
    };
    let room = n - basis.ncols();
    let keep = svd
        .singular_values
        .iter()
        .take_while(|&&s| s > rank_tol * scale)
        .count()
        .min(room);
    let fresh = svd.u.columns(0, keep).into_owned();
    let old = basis.ncols();
    let mut grown = Matrix::zeros(n, old + keep);
    grown.columns_mut(0, old).copy_from(&*basis);
    grown.columns_mut(old, keep).copy_from(&fresh);
    *basis = grown;
    fresh
}
