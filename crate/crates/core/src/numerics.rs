//! Dense linear algebra used throughout the crate.
//!
//! Everything here works on `nalgebra` dynamic matrices of `f64`; singular
//! value decompositions are computed by `faer`, which stays accurate on
//! rank-deficient input. The conventions that matter elsewhere:
//!
//! * [`vec`] stacks columns, so `vec(A X Bᵀ) = (B ⊗ A) vec(X)`.
//! * [`svd`] returns singular values in descending order with a deterministic
//!   sign per singular pair (largest-magnitude entry of each left vector is
//!   positive).
//! * Ranks are decided relative to the largest singular value, with an
//!   absolute floor of [`ABS_RANK_FLOOR`].

use nalgebra::{Cholesky as NaCholesky, DMatrix, DVector, Schur, SymmetricEigen};

use crate::error::{Error, Result};

pub type Matrix = DMatrix<f64>;
pub type Vector = DVector<f64>;

/// Default relative rank tolerance.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;
/// Singular values at or below this are always treated as zero.
pub const ABS_RANK_FLOOR: f64 = 1e-12;
/// Matrices whose smaller side exceeds this are first compressed by a
/// column-pivoted Gram-Schmidt pass before the dense SVD.
const DIRECT_SVD_LIMIT: usize = 96;

/// Compact singular value decomposition `M ≈ U diag(s) Vᵀ`.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: Matrix,
    pub singular_values: Vec<f64>,
    pub v: Matrix,
}

impl Svd {
    pub fn rank(&self) -> usize {
        self.singular_values.len()
    }

    pub fn reconstruct(&self) -> Matrix {
        let d = Matrix::from_diagonal(&Vector::from_column_slice(&self.singular_values));
        &self.u * d * self.v.transpose()
    }
}

fn check_finite(m: &Matrix, what: &str) -> Result<()> {
    if m.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what.to_string()))
    }
}

/// Compact SVD keeping singular values above `rank_tol · σ₁` and above
/// [`ABS_RANK_FLOOR`].
pub fn svd(m: &Matrix, rank_tol: f64) -> Result<Svd> {
    if rank_tol.is_nan() || rank_tol < 0.0 {
        return Err(Error::OutOfRange {
            what: "rank_tol",
            detail: format!("{rank_tol} < 0"),
        });
    }
    let full = svd_full(m, rank_tol)?;
    let sigma1 = full.singular_values.first().copied().unwrap_or(0.0);
    let cut = (rank_tol * sigma1).max(ABS_RANK_FLOOR);
    let r = full.singular_values.iter().take_while(|&&s| s > cut).count();
    Ok(Svd {
        u: full.u.columns(0, r).into_owned(),
        singular_values: full.singular_values[..r].to_vec(),
        v: full.v.columns(0, r).into_owned(),
    })
}

/// Thin SVD with every singular value kept (sorted descending, sign fixed).
///
/// For large matrices the input is first compressed with a column-pivoted
/// Gram-Schmidt pass that stops once the residual is negligible relative to
/// `rank_tol`; singular values lost this way are below the rank cut anyway.
pub fn svd_full(m: &Matrix, rank_tol: f64) -> Result<Svd> {
    check_finite(m, "svd input")?;
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return Ok(Svd {
            u: Matrix::zeros(rows, 0),
            singular_values: Vec::new(),
            v: Matrix::zeros(cols, 0),
        });
    }
    if rows.min(cols) > DIRECT_SVD_LIMIT {
        let (q, r) = pivoted_gram_schmidt(m, rank_tol);
        let inner = dense_svd(&r)?;
        return Ok(fix_signs(Svd {
            u: q * inner.u,
            singular_values: inner.singular_values,
            v: inner.v,
        }));
    }
    Ok(fix_signs(dense_svd(m)?))
}

/// Thin SVD of the whole matrix, sorted descending, no rank compression.
pub(crate) fn dense_svd(m: &Matrix) -> Result<Svd> {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return Ok(Svd {
            u: Matrix::zeros(rows, 0),
            singular_values: Vec::new(),
            v: Matrix::zeros(cols, 0),
        });
    }
    let fm = faer::Mat::<f64>::from_fn(rows, cols, |i, j| m[(i, j)]);
    let dec = fm
        .thin_svd()
        .map_err(|_| Error::NoConvergence("singular value decomposition".into()))?;
    let (u, v, d) = (dec.U(), dec.V(), dec.S().column_vector());
    let k = d.nrows();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| d[b].total_cmp(&d[a]));
    let su = Matrix::from_fn(rows, k, |i, j| u[(i, order[j])]);
    let sv = Matrix::from_fn(cols, k, |i, j| v[(i, order[j])]);
    let s = order.iter().map(|&j| d[j]).collect();
    Ok(Svd {
        u: su,
        singular_values: s,
        v: sv,
    })
}

fn fix_signs(mut svd: Svd) -> Svd {
    for j in 0..svd.singular_values.len() {
        let col = svd.u.column(j);
        let mut best = 0.0f64;
        let mut sign = 1.0;
        for &x in col.iter() {
            if x.abs() > best {
                best = x.abs();
                sign = x.signum();
            }
        }
        if sign < 0.0 {
            svd.u.column_mut(j).neg_mut();
            svd.v.column_mut(j).neg_mut();
        }
    }
    svd
}

/// Column-pivoted modified Gram-Schmidt with early termination. Returns
/// `(Q, R)` with orthonormal `Q` (rows × r) and `M ≈ Q R`.
fn pivoted_gram_schmidt(m: &Matrix, rank_tol: f64) -> (Matrix, Matrix) {
    let (rows, cols) = m.shape();
    let mut work: Vec<Vec<f64>> = (0..cols).map(|j| m.column(j).iter().copied().collect()).collect();
    let total_fro = m.norm();
    let sigma1_lower = total_fro / (rows.min(cols) as f64).sqrt();
    let stop = (0.01 * rank_tol * sigma1_lower).max(1e-13 * total_fro);
    let mut qs: Vec<Vec<f64>> = Vec::new();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    for _ in 0..rows.min(cols) {
        let norms: Vec<f64> = work.iter().map(|c| dot(c, c)).collect();
        let residual = norms.iter().sum::<f64>().sqrt();
        if residual <= stop {
            break;
        }
        let pivot = (0..cols)
            .max_by(|&a, &b| norms[a].total_cmp(&norms[b]))
            .expect("non-empty");
        let mut q = work[pivot].clone();
        for _ in 0..2 {
            for prev in &qs {
                let c = dot(prev, &q);
                q.iter_mut().zip(prev).for_each(|(x, p)| *x -= c * p);
            }
        }
        let qn = dot(&q, &q).sqrt();
        if qn == 0.0 {
            break;
        }
        q.iter_mut().for_each(|x| *x /= qn);
        for col in work.iter_mut() {
            let c = dot(&q, col);
            col.iter_mut().zip(&q).for_each(|(x, p)| *x -= c * p);
        }
        qs.push(q);
    }
    let qm = Matrix::from_fn(rows, qs.len(), |i, k| qs[k][i]);
    // Project the original columns rather than reuse the running coefficients.
    let rm = qm.transpose() * m;
    (qm, rm)
}

/// Result of [`cholesky_psd`].
#[derive(Debug, Clone)]
pub struct CholeskyFactor {
    /// Lower-triangular factor with `G ≈ L Lᵀ`.
    pub l: Matrix,
    /// Diagonal shift added before factorizing, if one was needed.
    pub jitter: Option<f64>,
}

/// Cholesky factorization of a (numerically) positive semi-definite matrix.
///
/// The input is symmetrized first. Eigenvalues below `-1e-8 ‖G‖₂` are an
/// error; a nearly singular input gets a single diagonal shift, reported in
/// [`CholeskyFactor::jitter`].
pub fn cholesky_psd(g: &Matrix) -> Result<CholeskyFactor> {
    check_finite(g, "cholesky input")?;
    if !g.is_square() {
        return Err(Error::Shape(format!("cholesky of {}x{} matrix", g.nrows(), g.ncols())));
    }
    let n = g.nrows();
    let gs = symmetrize(g);
    let eig = sym_eigenvalues(&gs)?;
    let norm2 = eig.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    let lmin = eig.first().copied().unwrap_or(0.0);
    if lmin < -1e-8 * norm2 {
        return Err(Error::NotPsd(lmin));
    }
    let mut jitter = None;
    let mut work = gs.clone();
    if lmin < 1e-12 {
        // A shift of 1e-12‖G‖ alone does not lift slightly negative
        // eigenvalues, so cover those too.
        let shift = (1e-12 * norm2).max(2.0 * (-lmin).max(0.0)).max(f64::MIN_POSITIVE);
        for i in 0..n {
            work[(i, i)] += shift;
        }
        jitter = Some(shift);
    }
    let chol = NaCholesky::new(work).ok_or(Error::NotPsd(lmin))?;
    Ok(CholeskyFactor { l: chol.l(), jitter })
}

/// Eigenvalues of a symmetric matrix in ascending order.
pub fn sym_eigenvalues(m: &Matrix) -> Result<Vec<f64>> {
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    let eig = SymmetricEigen::try_new(symmetrize(m), f64::EPSILON, 0)
        .ok_or_else(|| Error::NoConvergence("symmetric eigendecomposition".into()))?;
    let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Largest eigenvalue modulus of a general square matrix.
pub fn spectral_radius(m: &Matrix) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::Shape(format!("spectral radius of {}x{} matrix", m.nrows(), m.ncols())));
    }
    check_finite(m, "spectral radius input")?;
    if m.nrows() == 0 {
        return Ok(0.0);
    }
    let schur = Schur::try_new(m.clone(), f64::EPSILON, 100_000)
        .ok_or_else(|| Error::NoConvergence("Schur decomposition".into()))?;
    Ok(schur
        .complex_eigenvalues()
        .iter()
        .fold(0.0f64, |acc, z| acc.max(z.norm())))
}

/// Eigenvalues of a general square matrix as `(re, im)` pairs.
pub fn eigenvalues(m: &Matrix) -> Result<Vec<(f64, f64)>> {
    if !m.is_square() {
        return Err(Error::Shape(format!("eigenvalues of {}x{} matrix", m.nrows(), m.ncols())));
    }
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    let schur = Schur::try_new(m.clone(), f64::EPSILON, 100_000)
        .ok_or_else(|| Error::NoConvergence("Schur decomposition".into()))?;
    Ok(schur.complex_eigenvalues().iter().map(|z| (z.re, z.im)).collect())
}

/// Moore-Penrose pseudo-inverse with the default rank tolerance.
pub fn pinv(m: &Matrix) -> Result<Matrix> {
    pinv_tol(m, DEFAULT_RANK_TOL)
}

pub fn pinv_tol(m: &Matrix, rank_tol: f64) -> Result<Matrix> {
    let s = svd(m, rank_tol)?;
    let inv = Vector::from_iterator(s.rank(), s.singular_values.iter().map(|x| 1.0 / x));
    Ok(&s.v * Matrix::from_diagonal(&inv) * s.u.transpose())
}

/// Kronecker product `A ⊗ B`.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    a.kronecker(b)
}

/// Column-stacking vectorization.
pub fn vec(m: &Matrix) -> Vector {
    // nalgebra storage is column-major already.
    Vector::from_column_slice(m.as_slice())
}

/// Inverse of [`vec`].
pub fn unvec(v: &Vector, rows: usize, cols: usize) -> Result<Matrix> {
    if v.len() != rows * cols {
        return Err(Error::Shape(format!(
            "cannot reshape vector of length {} into {rows}x{cols}",
            v.len()
        )));
    }
    Ok(Matrix::from_column_slice(rows, cols, v.as_slice()))
}

pub fn symmetrize(m: &Matrix) -> Matrix {
    (m + m.transpose()) * 0.5
}

pub fn is_symmetric(m: &Matrix, tol: f64) -> bool {
    m.is_square() && (m - m.transpose()).amax() <= tol * (1.0 + m.amax())
}

/// Loewner order test `G1 ≥ G2` up to `tol`: `λ_min(G1 − G2) ≥ −tol`.
pub fn psd_geq(g1: &Matrix, g2: &Matrix, tol: f64) -> Result<bool> {
    if g1.shape() != g2.shape() {
        return Err(Error::Shape(format!(
            "psd comparison of {:?} and {:?}",
            g1.shape(),
            g2.shape()
        )));
    }
    if !is_symmetric(g1, 1e-8) || !is_symmetric(g2, 1e-8) {
        return Err(Error::Shape("psd comparison needs symmetric matrices".into()));
    }
    let lmin = sym_eigenvalues(&(g1 - g2))?.first().copied().unwrap_or(0.0);
    Ok(lmin >= -tol)
}

/// Induced 1-norm (max absolute column sum).
pub fn norm_1(m: &Matrix) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Induced ∞-norm (max absolute row sum).
pub fn norm_inf(m: &Matrix) -> f64 {
    m.row_iter()
        .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Spectral norm.
pub fn norm_2(m: &Matrix) -> Result<f64> {
    Ok(svd_full(m, 0.0)?.singular_values.first().copied().unwrap_or(0.0))
}

/// 2-norm condition number; infinite for singular matrices.
pub fn condition_number(m: &Matrix) -> Result<f64> {
    let s = svd_full(m, 0.0)?;
    let max = s.singular_values.first().copied().unwrap_or(0.0);
    let min = s.singular_values.last().copied().unwrap_or(0.0);
    Ok(if min == 0.0 { f64::INFINITY } else { max / min })
}

/// Solves the square system `M x = b` by LU with partial pivoting.
pub fn solve(m: &Matrix, b: &Vector, what: &str) -> Result<Vector> {
    if !m.is_square() || m.nrows() != b.len() {
        return Err(Error::Shape(format!("{what}: system {:?} with rhs {}", m.shape(), b.len())));
    }
    m.clone().lu().solve(b).ok_or_else(|| Error::Singular(what.to_string()))
}

/// Inverse of a lower-triangular matrix.
pub fn invert_lower(l: &Matrix) -> Result<Matrix> {
    let n = l.nrows();
    l.solve_lower_triangular(&Matrix::identity(n, n))
        .ok_or_else(|| Error::Singular("triangular factor".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(rng: &mut ChaCha8Rng, r: usize, c: usize) -> Matrix {
        Matrix::from_fn(r, c, |_, _| rng.gen_range(-1.0..1.0))
    }

    #[test]
    fn svd_reconstructs_rank_deficient_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let (r, c, k) = (rng.gen_range(1..7), rng.gen_range(1..9), rng.gen_range(1..3));
            let m = random(&mut rng, r, k) * random(&mut rng, k, c);
            let s = svd_full(&m, DEFAULT_RANK_TOL).unwrap();
            let d = Matrix::from_diagonal(&Vector::from_vec(s.singular_values.clone()));
            let back = &s.u * d * s.v.transpose();
            assert!((back - &m).norm() <= 1e-12 * (1.0 + m.norm()), "{r}x{c} rank {k}: {:?} {}", s.singular_values, (&s.u * Matrix::from_diagonal(&Vector::from_vec(s.singular_values.clone())) * s.v.transpose() - &m).norm());
            assert!((s.u.tr_mul(&s.u) - Matrix::identity(s.u.ncols(), s.u.ncols())).norm() < 1e-12);
        }
    }

    #[test]
    fn spectra_of_rank_deficient_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let n = rng.gen_range(2..9);
            let d: Vec<f64> = (0..n).map(|i| if i % 3 == 0 { 0.0 } else { rng.gen_range(-2.0..2.0) }).collect();
            let rho = d.iter().fold(0.0f64, |a, x| a.max(x.abs()));
            let q = Matrix::identity(n, n) + random(&mut rng, n, n) * (0.4 / n as f64);
            let qi = q.clone().try_inverse().unwrap();
            let m = &q * Matrix::from_diagonal(&Vector::from_vec(d.clone())) * qi;
            assert!((spectral_radius(&m).unwrap() - rho).abs() < 1e-9);
            let sym = random(&mut rng, n, 2);
            let ev = sym_eigenvalues(&(&sym * sym.transpose())).unwrap();
            let expect = (sym.transpose() * &sym).trace();
            assert!((ev.iter().sum::<f64>() - expect).abs() < 1e-10);
        }
    }

    #[test]
    fn svd_of_diagonal_drops_zero() {
        let m = Matrix::from_diagonal(&Vector::from_vec(vec![3.0, 1.0, 0.0]));
        let s = svd(&m, DEFAULT_RANK_TOL).unwrap();
        assert_eq!(s.rank(), 2);
        assert!((s.singular_values[0] - 3.0).abs() < 1e-14);
        assert!((s.singular_values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn svd_of_identity() {
        let s = svd(&Matrix::identity(4, 4), DEFAULT_RANK_TOL).unwrap();
        assert_eq!(s.singular_values, vec![1.0; 4]);
        for i in 0..4 {
            let dot = s.u.column(i).dot(&s.v.column(i));
            assert!((dot.abs() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn svd_reconstructs_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = random(&mut rng, 5, 3);
        let s = svd(&m, DEFAULT_RANK_TOL).unwrap();
        assert!((s.reconstruct() - &m).norm() <= 1e-10 * m.norm());
        let utu = s.u.transpose() * &s.u;
        assert!((utu - Matrix::identity(3, 3)).norm() < 1e-8);
    }

    #[test]
    fn svd_large_low_rank_goes_through_compression() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random(&mut rng, 300, 4);
        let b = random(&mut rng, 4, 250);
        let m = &a * &b;
        let s = svd(&m, DEFAULT_RANK_TOL).unwrap();
        assert_eq!(s.rank(), 4);
        assert!((s.reconstruct() - &m).norm() <= 1e-10 * m.norm());
        let reference = dense_svd(&m).unwrap();
        for i in 0..4 {
            let rel = (s.singular_values[i] - reference.singular_values[i]).abs() / reference.singular_values[0];
            assert!(rel < 1e-12);
        }
    }

    #[test]
    fn svd_rejects_nan() {
        let mut m = Matrix::identity(2, 2);
        m[(0, 1)] = f64::NAN;
        assert!(matches!(svd(&m, 0.0), Err(Error::NonFinite(_))));
    }

    #[test]
    fn cholesky_identity_and_hand_example() {
        let f = cholesky_psd(&Matrix::identity(3, 3)).unwrap();
        assert!((f.l - Matrix::identity(3, 3)).norm() < 1e-15);
        assert!(f.jitter.is_none());
        let g = Matrix::from_row_slice(2, 2, &[4.0, 2.0, 2.0, 2.0]);
        let f = cholesky_psd(&g).unwrap();
        let expected = Matrix::from_row_slice(2, 2, &[2.0, 0.0, 1.0, 1.0]);
        assert!((f.l - expected).norm() < 1e-14);
    }

    #[test]
    fn cholesky_random_gram() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = random(&mut rng, 6, 4);
        let g = p.transpose() * &p;
        let f = cholesky_psd(&g).unwrap();
        assert!((&f.l * f.l.transpose() - &g).norm() <= 1e-9);
    }

    #[test]
    fn cholesky_rejects_indefinite_and_jitters_singular() {
        let g = Matrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        match cholesky_psd(&g) {
            Err(Error::NotPsd(l)) => assert!((l + 1.0).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
        let g = Matrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        let f = cholesky_psd(&g).unwrap();
        assert!(f.jitter.is_some());
        assert!((&f.l * f.l.transpose() - &g).norm() <= 1e-7 * (1.0 + g.norm()));
    }

    #[test]
    fn spectral_radius_examples() {
        let m = Matrix::from_diagonal(&Vector::from_vec(vec![0.5, -0.75]));
        assert!((spectral_radius(&m).unwrap() - 0.75).abs() < 1e-14);
        let nil = Matrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(spectral_radius(&nil).unwrap() < 1e-12);
        let rot = Matrix::from_row_slice(2, 2, &[0.0, -2.0, 2.0, 0.0]);
        assert!((spectral_radius(&rot).unwrap() - 2.0).abs() < 1e-12);
        assert!(spectral_radius(&Matrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn pinv_examples() {
        let m = Matrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 3.0]);
        let inv = m.clone().try_inverse().unwrap();
        assert!((pinv(&m).unwrap() - inv).norm() < 1e-9);
        assert_eq!(pinv(&Matrix::zeros(3, 2)).unwrap(), Matrix::zeros(2, 3));
        // rank one: (u vᵀ)† = v uᵀ / (‖u‖² ‖v‖²)
        let u = Vector::from_vec(vec![1.0, -2.0, 0.5]);
        let v = Vector::from_vec(vec![3.0, 1.0]);
        let m = &u * v.transpose();
        let expected = &v * u.transpose() / (u.norm_squared() * v.norm_squared());
        let p = pinv(&m).unwrap();
        assert!((&p - expected).norm() < 1e-12);
        assert!((&m * &p * &m - &m).norm() < 1e-8);
        assert!((&p * &m * &p - &p).norm() < 1e-8);
    }

    #[test]
    fn kron_and_vec_conventions() {
        let m = Matrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(vec(&m).as_slice(), &[1.0, 3.0, 2.0, 4.0]);
        let k = kron(&Matrix::identity(2, 2), &m);
        let mut expected = Matrix::zeros(4, 4);
        expected.view_mut((0, 0), (2, 2)).copy_from(&m);
        expected.view_mut((2, 2), (2, 2)).copy_from(&m);
        assert_eq!(k, expected);
        assert_eq!(unvec(&vec(&m), 2, 2).unwrap(), m);
        // entry formula with 0-based indices
        let a = Matrix::from_row_slice(2, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let b = Matrix::from_row_slice(2, 2, &[7.0, 8.0, 9.0, 10.0]);
        let k = kron(&a, &b);
        for i in 0..2 {
            for j in 0..3 {
                for ip in 0..2 {
                    for jp in 0..2 {
                        assert_eq!(k[(i * 2 + ip, j * 2 + jp)], a[(i, j)] * b[(ip, jp)]);
                    }
                }
            }
        }
    }

    #[test]
    fn vec_kron_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let a = random(&mut rng, 3, 3);
            let x = random(&mut rng, 3, 3);
            let b = random(&mut rng, 3, 3);
            let lhs = vec(&(&a * &x * b.transpose()));
            let rhs = kron(&b, &a) * vec(&x);
            assert!((lhs - rhs).norm() < 1e-10);
        }
    }

    #[test]
    fn psd_order_and_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let p = random(&mut rng, 4, 4);
            let q = random(&mut rng, 4, 4);
            let g2 = &p * p.transpose();
            let g1 = &g2 + &q * q.transpose();
            assert!(psd_geq(&g1, &g2, 0.0).unwrap() || psd_geq(&g1, &g2, 1e-12).unwrap());
            assert!(g1.trace() >= g2.trace());
        }
        let a = Matrix::identity(2, 2);
        let b = Matrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(psd_geq(&a, &b, 0.0).is_err());
    }

    #[test]
    fn spectral_radius_below_induced_norms() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..20 {
            let m = random(&mut rng, 5, 5);
            let rho = spectral_radius(&m).unwrap();
            assert!(rho <= norm_1(&m) + 1e-12);
            assert!(rho <= norm_inf(&m) + 1e-12);
            assert!(rho <= norm_2(&m).unwrap() + 1e-12);
        }
    }
}
