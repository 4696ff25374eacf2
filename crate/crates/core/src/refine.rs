//! Stein equations `X = Q + Σ_a L_a X R_aᵀ` solved to double-double
//! accuracy by iterative refinement.
//!
//! Quadratic forms such as `αᵀ G α` for a difference automaton are tiny
//! differences of large terms, so a Gramian accurate to `1e-12 ‖G‖` gives
//! no correct digits when the two functions nearly agree. Here the first
//! solve is done in `f64`; each correction solves the same equation with the
//! residual, computed in double-double arithmetic, as right-hand side.

use twofloat::TwoFloat;

use crate::error::Result;
use crate::gramian::{stein_iteration, FixedPointOptions};
use crate::numerics::{Matrix, Vector};

const REFINEMENT_STEPS: usize = 3;

/// Square matrix of double-double entries, column-major like `Matrix`.
#[derive(Debug, Clone)]
pub(crate) struct DdMatrix {
    rows: usize,
    cols: usize,
    data: Vec<TwoFloat>,
}

impl DdMatrix {
    fn from_matrix(m: &Matrix) -> Self {
        DdMatrix {
            rows: m.nrows(),
            cols: m.ncols(),
            data: m.iter().map(|&x| TwoFloat::from(x)).collect(),
        }
    }

    pub(crate) fn get(&self, i: usize, j: usize) -> TwoFloat {
        self.data[j * self.rows + i]
    }

    fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| f64::from(self.get(i, j)))
    }

    fn add_assign(&mut self, e: &Matrix) {
        for (x, &y) in self.data.iter_mut().zip(e.iter()) {
            *x += y;
        }
    }

    /// `l · self · rᵀ`, accumulated in double-double.
    fn sandwich(&self, l: &Matrix, r: &Matrix) -> DdMatrix {
        let zero = TwoFloat::from(0.0);
        let (n, m) = (l.nrows(), r.nrows());
        // t = self · rᵀ  (rows × m)
        let mut t = vec![zero; self.rows * m];
        for j in 0..m {
            for k in 0..self.cols {
                let rjk = r[(j, k)];
                if rjk == 0.0 {
                    continue;
                }
                for i in 0..self.rows {
                    t[j * self.rows + i] += self.get(i, k) * rjk;
                }
            }
        }
        let mut out = vec![zero; n * m];
        for j in 0..m {
            for k in 0..self.rows {
                let tkj = t[j * self.rows + k];
                for i in 0..n {
                    let lik = l[(i, k)];
                    if lik != 0.0 {
                        out[j * n + i] += tkj * lik;
                    }
                }
            }
        }
        DdMatrix { rows: n, cols: m, data: out }
    }

    /// `uᵀ · self · v` in double-double.
    pub(crate) fn bilinear(&self, u: &Vector, v: &Vector) -> TwoFloat {
        let mut acc = TwoFloat::from(0.0);
        for j in 0..self.cols {
            let mut col = TwoFloat::from(0.0);
            for i in 0..self.rows {
                col += self.get(i, j) * u[i];
            }
            acc += col * v[j];
        }
        acc
    }
}

fn residual(q: &Matrix, left: &[Matrix], right: &[Matrix], x: &DdMatrix) -> Matrix {
    let mut acc = DdMatrix::from_matrix(q);
    for (l, r) in left.iter().zip(right) {
        let s = x.sandwich(l, r);
        for (a, b) in acc.data.iter_mut().zip(&s.data) {
            *a += *b;
        }
    }
    for (a, b) in acc.data.iter_mut().zip(&x.data) {
        *a -= *b;
    }
    acc.to_matrix()
}

fn solve_f64(q: &Matrix, left: &[Matrix], right: &[Matrix], what: &str) -> Result<Matrix> {
    let scale = q.norm();
    if scale == 0.0 {
        return Ok(Matrix::zeros(q.nrows(), q.ncols()));
    }
    // Normalizing keeps the stopping rule relative for tiny right-hand sides.
    let unit = q / scale;
    let step = |x: &Matrix| {
        left.iter()
            .zip(right)
            .fold(Matrix::zeros(x.nrows(), x.ncols()), |acc, (l, r)| acc + l * x * r.transpose())
    };
    let it = stein_iteration(&unit, step, FixedPointOptions::default(), what)?;
    Ok(it.value * scale)
}

/// Solution of `X = Q + Σ_i left[i] · X · right[i]ᵀ` with double-double
/// entries. Fails like the plain fixed-point iteration when it diverges.
pub(crate) fn solve_stein(q: &Matrix, left: &[Matrix], right: &[Matrix], what: &str) -> Result<DdMatrix> {
    let mut x = DdMatrix::from_matrix(&solve_f64(q, left, right, what)?);
    for _ in 0..REFINEMENT_STEPS {
        let r = residual(q, left, right, &x);
        if r.iter().all(|&v| v == 0.0) {
            break;
        }
        x.add_assign(&solve_f64(&r, left, right, what)?);
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn geometric_series_to_full_precision() {
        // X = 1 + x/4 has X = 4/3.
        let q = Matrix::from_element(1, 1, 1.0);
        let a = Matrix::from_element(1, 1, 0.5);
        let x = solve_stein(&q, std::slice::from_ref(&a), std::slice::from_ref(&a), "test").unwrap();
        let err = x.get(0, 0) * 3.0 - TwoFloat::from(4.0);
        assert!(f64::from(err).abs() < 1e-30, "{:?}", x.get(0, 0));
    }

    #[test]
    fn cancelling_quadratic_form_is_exact() {
        // f − f computed by a difference automaton: αᵀ G α must vanish to
        // double-double accuracy, not just to 1e-12.
        let a = catalog::dynamic_det_free();
        let d = a.difference(&a).unwrap();
        let q = d.beta() * d.beta().transpose();
        let g = solve_stein(&q, d.transitions(), d.transitions(), "test").unwrap();
        let v = g.bilinear(d.alpha(), d.alpha());
        assert!(f64::from(v).abs() < 1e-28, "{v:?}");
    }
}
