//! Reachability and observability Gramians.
//!
//! `G_p` and `G_s` are the least positive semi-definite solutions of
//!
//! ```text
//! G_p = α αᵀ + Σ_a A_aᵀ G_p A_a        G_s = β βᵀ + Σ_a A_a G_s A_aᵀ
//! ```
//!
//! They are computed either by solving the vectorized linear system (valid
//! when `ρ(Σ_a A_a ⊗ A_a) < 1`, where the solution is unique) or by iterating
//! the maps from zero, which converges monotonically to the least solution
//! whenever it exists. [`SdpProblem`] exposes the trace-minimization
//! formulation of the same least solution so it can be checked independently.

use crate::error::{Error, Result};
use crate::numerics::{self, Matrix, Vector, DEFAULT_RANK_TOL};
use crate::wfa::Wfa;

pub const FIXED_POINT_TOL: f64 = 1e-12;
pub const FIXED_POINT_MAX_ITER: usize = 100_000;
/// Largest state count for which the `n² × n²` system is materialized.
pub const LINEAR_SYSTEM_LIMIT: usize = 64;
/// [`GramianRoute::Auto`] uses the linear system only up to this size; the
/// eigenvalue check on the Kronecker sum dominates the cost beyond it.
pub const AUTO_LINEAR_LIMIT: usize = 16;

const DIVERGENCE_WINDOW: usize = 1000;
const DIVERGENCE_GROWTH: f64 = 1e8;
const STALLED_DECAY: f64 = 1.0 - 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `G_p`, built from forward vectors `αᵀ A_x`.
    Reachability,
    /// `G_s`, built from backward vectors `A_x β`.
    Observability,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Reachability => "reachability",
            Side::Observability => "observability",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GramianMethod {
    LinearSystem,
    FixedPoint,
}

impl GramianMethod {
    pub fn name(self) -> &'static str {
        match self {
            GramianMethod::LinearSystem => "linear_system",
            GramianMethod::FixedPoint => "fixed_point",
        }
    }
}

/// Requested solution route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GramianRoute {
    #[default]
    Auto,
    LinearSystem,
    FixedPoint,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for FixedPointOptions {
    fn default() -> Self {
        FixedPointOptions { tol: FIXED_POINT_TOL, max_iter: FIXED_POINT_MAX_ITER }
    }
}

#[derive(Debug, Clone)]
pub struct GramianPair {
    pub gp: Matrix,
    pub gs: Matrix,
    pub method: GramianMethod,
    /// `‖F_p(G_p) − G_p‖_F`.
    pub residual_p: f64,
    /// `‖F_s(G_s) − G_s‖_F`.
    pub residual_s: f64,
    /// Iterations used by the slower side (0 for the linear system).
    pub iterations: usize,
}

fn check_square(a: &Wfa, x: &Matrix) -> Result<()> {
    let n = a.states();
    if x.shape() != (n, n) {
        return Err(Error::Shape(format!("expected {n}x{n} matrix, got {}x{}", x.nrows(), x.ncols())));
    }
    Ok(())
}

/// `F_p(X) = α αᵀ + Σ_a A_aᵀ X A_a`.
pub fn apply_fp(a: &Wfa, x: &Matrix) -> Result<Matrix> {
    check_square(a, x)?;
    Ok(a.alpha() * a.alpha().transpose() + sandwich_p(a, x))
}

/// `F_s(Y) = β βᵀ + Σ_a A_a Y A_aᵀ`.
pub fn apply_fs(a: &Wfa, y: &Matrix) -> Result<Matrix> {
    check_square(a, y)?;
    Ok(a.beta() * a.beta().transpose() + sandwich_s(a, y))
}

pub fn apply(a: &Wfa, side: Side, x: &Matrix) -> Result<Matrix> {
    match side {
        Side::Reachability => apply_fp(a, x),
        Side::Observability => apply_fs(a, x),
    }
}

fn sandwich_p(a: &Wfa, x: &Matrix) -> Matrix {
    let n = a.states();
    a.transitions().iter().fold(Matrix::zeros(n, n), |acc, m| acc + m.tr_mul(&(x * m)))
}

fn sandwich_s(a: &Wfa, y: &Matrix) -> Matrix {
    let n = a.states();
    a.transitions().iter().fold(Matrix::zeros(n, n), |acc, m| acc + m * y * m.transpose())
}

/// Outcome of a fixed-point iteration `X ← C + L(X)` started at zero.
#[derive(Debug, Clone)]
pub struct Iterate {
    pub value: Matrix,
    /// `‖C + L(X) − X‖_F` at the returned point.
    pub residual: f64,
    pub iterations: usize,
}

/// Iterates `X ← constant + step(X)` from zero until the update is below
/// `tol · (1 + ‖X‖_F)`.
///
/// Divergence is reported when the iterate grows by more than `1e8` within
/// the first thousand steps, when the update stops shrinking over a window
/// of a thousand steps while the iterate keeps growing, or when `max_iter`
/// is exhausted with the iterate still growing.
pub(crate) fn stein_iteration<F>(constant: &Matrix, step: F, opts: FixedPointOptions, what: &str) -> Result<Iterate>
where
    F: Fn(&Matrix) -> Matrix,
{
    let mut x = constant.clone();
    let base = x.norm();
    let mut checkpoint_inc = f64::INFINITY;
    let mut checkpoint_size = base;
    for t in 1..=opts.max_iter {
        let next = constant + step(&x);
        let inc = (&next - &x).norm();
        let size = next.norm();
        if !inc.is_finite() || !size.is_finite() {
            return Err(Error::Divergent(format!("{what}: iterate overflowed after {t} steps")));
        }
        x = next;
        if inc <= opts.tol * (1.0 + size) {
            let residual = (constant + step(&x) - &x).norm();
            return Ok(Iterate { value: x, residual, iterations: t });
        }
        if t <= DIVERGENCE_WINDOW && base > 0.0 && size > DIVERGENCE_GROWTH * base {
            return Err(Error::Divergent(format!(
                "{what}: iterate grew by more than {DIVERGENCE_GROWTH:e} within {t} steps"
            )));
        }
        if t % DIVERGENCE_WINDOW == 0 {
            if inc >= STALLED_DECAY * checkpoint_inc && size > checkpoint_size {
                return Err(Error::Divergent(format!(
                    "{what}: updates stopped shrinking (norm {inc:.3e} after {t} steps) while the iterate grows"
                )));
            }
            checkpoint_inc = inc;
            checkpoint_size = size;
        }
    }
    let size = x.norm();
    let last = (constant + step(&x) - &x).norm();
    if size > checkpoint_size && last > opts.tol * (1.0 + size) {
        Err(Error::Divergent(format!(
            "{what}: still growing after {} steps (norm {size:.3e})",
            opts.max_iter
        )))
    } else {
        Err(Error::NoConvergence(format!("{what}: {} steps, last update {last:.3e}", opts.max_iter)))
    }
}

/// One Gramian by fixed-point iteration.
pub fn gramian_fixed_point(a: &Wfa, side: Side, opts: FixedPointOptions) -> Result<Iterate> {
    let what = format!("{} gramian", side.name());
    let mut it = match side {
        Side::Reachability => {
            let c = a.alpha() * a.alpha().transpose();
            stein_iteration(&c, |x| sandwich_p(a, x), opts, &what)?
        }
        Side::Observability => {
            let c = a.beta() * a.beta().transpose();
            stein_iteration(&c, |y| sandwich_s(a, y), opts, &what)?
        }
    };
    it.value = numerics::symmetrize(&it.value);
    Ok(it)
}

pub fn gramians_fixed_point(a: &Wfa, opts: FixedPointOptions) -> Result<GramianPair> {
    let p = gramian_fixed_point(a, Side::Reachability, opts)?;
    let s = gramian_fixed_point(a, Side::Observability, opts)?;
    Ok(GramianPair {
        iterations: p.iterations.max(s.iterations),
        residual_p: p.residual,
        residual_s: s.residual,
        gp: p.value,
        gs: s.value,
        method: GramianMethod::FixedPoint,
    })
}

/// `(I − Σ_a B_a ⊗ B_a, rhs)` for the requested side, where `B_a = A_aᵀ`
/// for the reachability Gramian and `A_a` for the observability Gramian.
fn vectorized_system(a: &Wfa, side: Side) -> (Matrix, Vector) {
    let n = a.states();
    let k = match side {
        Side::Reachability => a.kron_transition_sum().transpose(),
        Side::Observability => a.kron_transition_sum(),
    };
    let m = Matrix::identity(n * n, n * n) - k;
    let rhs = match side {
        Side::Reachability => a.alpha().kronecker(a.alpha()),
        Side::Observability => a.beta().kronecker(a.beta()),
    };
    (m, rhs)
}

fn linear_precondition(a: &Wfa) -> Result<()> {
    let n = a.states();
    if n > LINEAR_SYSTEM_LIMIT {
        return Err(Error::OutOfRange {
            what: "state count",
            detail: format!("{n} > {LINEAR_SYSTEM_LIMIT}; use the fixed-point route"),
        });
    }
    let rho = numerics::spectral_radius(&a.kron_transition_sum())?;
    if rho >= 1.0 {
        return Err(Error::SpectralRadius { rho });
    }
    Ok(())
}

fn linear_side(a: &Wfa, side: Side) -> Result<Matrix> {
    let n = a.states();
    let (m, rhs) = vectorized_system(a, side);
    let x = numerics::solve(&m, &rhs, &format!("{} gramian system", side.name()))?;
    Ok(numerics::symmetrize(&numerics::unvec(&x, n, n)?))
}

/// One Gramian from the unique solution of its vectorized linear system.
pub fn gramian_linear(a: &Wfa, side: Side) -> Result<Matrix> {
    linear_precondition(a)?;
    linear_side(a, side)
}

pub fn gramians_linear(a: &Wfa) -> Result<GramianPair> {
    linear_precondition(a)?;
    let gp = linear_side(a, Side::Reachability)?;
    let gs = linear_side(a, Side::Observability)?;
    Ok(GramianPair {
        residual_p: (apply_fp(a, &gp)? - &gp).norm(),
        residual_s: (apply_fs(a, &gs)? - &gs).norm(),
        gp,
        gs,
        method: GramianMethod::LinearSystem,
        iterations: 0,
    })
}

/// Both Gramians by the requested route. `Auto` tries the linear system for
/// small automata and falls back to iteration when its precondition fails.
pub fn gramians(a: &Wfa, route: GramianRoute) -> Result<GramianPair> {
    match route {
        GramianRoute::LinearSystem => gramians_linear(a),
        GramianRoute::FixedPoint => gramians_fixed_point(a, FixedPointOptions::default()),
        GramianRoute::Auto => {
            if a.states() <= AUTO_LINEAR_LIMIT {
                match gramians_linear(a) {
                    Err(Error::SpectralRadius { .. }) | Err(Error::Singular(_)) => {}
                    other => return other,
                }
            }
            gramians_fixed_point(a, FixedPointOptions::default())
        }
    }
}

/// Data of the trace-minimization problem whose optimum is a Gramian.
///
/// Feasible points are `Y(t) = Y₀ + Σ tᵢ Yᵢ` with `π(Y(t)) ⪰ 0`, where
/// `vec(Y₀) = M† b`, the `vec(Yᵢ)` span the nullspace of the system matrix
/// `M` and `π(Y) = (Y + Yᵀ)/2`. The objective is `Tr(π(Y(t)))`.
#[derive(Debug, Clone)]
pub struct SdpProblem {
    pub side: Side,
    pub n: usize,
    /// System matrix `I − Σ_a B_a ⊗ B_a` (`n² × n²`).
    pub system: Matrix,
    /// Right-hand side `α ⊗ α` or `β ⊗ β`.
    pub rhs: Vector,
    pub y0: Vector,
    /// Orthonormal nullspace basis of `system`.
    pub basis: Vec<Vector>,
    /// `Tr(Yᵢ)` for each basis vector.
    pub objective_coeffs: Vec<f64>,
    pub objective_offset: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct Feasibility {
    /// `‖M vec(Y(t)) − b‖₂`.
    pub linear_residual: f64,
    /// Smallest eigenvalue of `π(Y(t))`.
    pub min_eigenvalue: f64,
}

impl Feasibility {
    pub fn holds(&self, tol: f64) -> bool {
        self.linear_residual <= tol && self.min_eigenvalue >= -tol
    }
}

fn trace_of_vec(v: &Vector, n: usize) -> f64 {
    (0..n).map(|i| v[i * n + i]).sum()
}

/// Builds the trace-minimization problem for one Gramian.
pub fn build_sdp(a: &Wfa, side: Side) -> Result<SdpProblem> {
    let n = a.states();
    if n > LINEAR_SYSTEM_LIMIT {
        return Err(Error::OutOfRange {
            what: "state count",
            detail: format!("{n} > {LINEAR_SYSTEM_LIMIT} for the vectorized system"),
        });
    }
    let (system, rhs) = vectorized_system(a, side);
    let dec = numerics::dense_svd(&system)?;
    let sigma_max = dec.singular_values.first().copied().unwrap_or(0.0);
    let cut = (DEFAULT_RANK_TOL * sigma_max).max(numerics::ABS_RANK_FLOOR);
    let mut y0 = Vector::zeros(n * n);
    let mut basis = Vec::new();
    for (i, &s) in dec.singular_values.iter().enumerate() {
        let v = dec.v.column(i).into_owned();
        if s > cut {
            y0 += v * (dec.u.column(i).dot(&rhs) / s);
        } else {
            basis.push(v);
        }
    }
    let residual = (&system * &y0 - &rhs).norm();
    if residual > 1e-7 * (1.0 + rhs.norm()) {
        return Err(Error::Inconsistent(residual));
    }
    let objective_coeffs = basis.iter().map(|y| trace_of_vec(y, n)).collect();
    Ok(SdpProblem {
        side,
        n,
        objective_offset: trace_of_vec(&y0, n),
        system,
        rhs,
        y0,
        basis,
        objective_coeffs,
    })
}

impl SdpProblem {
    /// Number of free coordinates.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn check_len(&self, t: &[f64]) -> Result<()> {
        if t.len() != self.dim() {
            return Err(Error::Shape(format!("{} coordinates for a {}-dimensional problem", t.len(), self.dim())));
        }
        Ok(())
    }

    fn point_vec(&self, t: &[f64]) -> Vector {
        self.basis.iter().zip(t).fold(self.y0.clone(), |acc, (y, &ti)| acc + y * ti)
    }

    /// `Y(t)` as an `n × n` matrix (not symmetrized).
    pub fn point(&self, t: &[f64]) -> Result<Matrix> {
        self.check_len(t)?;
        numerics::unvec(&self.point_vec(t), self.n, self.n)
    }

    pub fn objective(&self, t: &[f64]) -> Result<f64> {
        self.check_len(t)?;
        Ok(self.objective_offset + self.objective_coeffs.iter().zip(t).map(|(c, x)| c * x).sum::<f64>())
    }

    pub fn feasibility(&self, t: &[f64]) -> Result<Feasibility> {
        self.check_len(t)?;
        let y = self.point_vec(t);
        let linear_residual = (&self.system * &y - &self.rhs).norm();
        let m = numerics::unvec(&y, self.n, self.n)?;
        let min_eigenvalue = numerics::sym_eigenvalues(&m)?.first().copied().unwrap_or(0.0);
        Ok(Feasibility { linear_residual, min_eigenvalue })
    }

    /// Coordinates `tᵢ = ⟨vec(Yᵢ), vec(G)⟩` of a candidate solution `G`.
    pub fn coordinates(&self, g: &Matrix) -> Result<Vec<f64>> {
        if g.shape() != (self.n, self.n) {
            return Err(Error::Shape(format!("expected {0}x{0} matrix", self.n)));
        }
        let v = numerics::vec(g);
        Ok(self.basis.iter().map(|y| y.dot(&v)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::random;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn enumerate_words(k: usize, max_len: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        let mut layer = vec![vec![]];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w: &Vec<usize>| (0..k).map(move |s| [w.clone(), vec![s]].concat()))
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    fn random_psd(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
        let p = Matrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
        p.transpose() * p
    }

    #[test]
    fn apply_at_zero_is_rank_one_term() {
        let a = catalog::signed_two_state();
        let z = Matrix::zeros(2, 2);
        assert_eq!(apply_fp(&a, &z).unwrap(), a.alpha() * a.alpha().transpose());
        assert_eq!(apply_fs(&a, &z).unwrap(), a.beta() * a.beta().transpose());
        assert!(apply_fp(&a, &Matrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn maps_are_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let a = random::random_wfa(&mut rng, 3, 2, 1.0);
            let y = random_psd(&mut rng, 3);
            let x = &y + random_psd(&mut rng, 3);
            assert!(numerics::psd_geq(&apply_fp(&a, &x).unwrap(), &apply_fp(&a, &y).unwrap(), 1e-10).unwrap());
            assert!(numerics::psd_geq(&apply_fs(&a, &x).unwrap(), &apply_fs(&a, &y).unwrap(), 1e-10).unwrap());
        }
    }

    #[test]
    fn iterated_map_is_finite_gramian() {
        let a = catalog::signed_two_state();
        for t in 0..=4 {
            let mut x = Matrix::zeros(2, 2);
            let mut y = Matrix::zeros(2, 2);
            for _ in 0..=t {
                x = apply_fp(&a, &x).unwrap();
                y = apply_fs(&a, &y).unwrap();
            }
            let mut bx = Matrix::zeros(2, 2);
            let mut by = Matrix::zeros(2, 2);
            for w in enumerate_words(2, t) {
                let p = a.forward(&w);
                let s = a.backward(&w);
                bx += &p * p.transpose();
                by += &s * s.transpose();
            }
            assert!((x - bx).amax() < 1e-9, "t={t}");
            assert!((y - by).amax() < 1e-9, "t={t}");
        }
    }

    #[test]
    fn geometric_gramians() {
        let a = catalog::geometric_half();
        let lin = gramians_linear(&a).unwrap();
        let fp = gramians_fixed_point(&a, FixedPointOptions::default()).unwrap();
        for g in [&lin.gp, &lin.gs, &fp.gp, &fp.gs] {
            assert!((g[(0, 0)] - 4.0 / 3.0).abs() < 1e-11);
        }
    }

    #[test]
    fn det_free_dynamic_has_finite_gramians() {
        let a = catalog::dynamic_det_free();
        let g = gramians_linear(&a).unwrap();
        assert!(g.residual_p <= 1e-9 && g.residual_s <= 1e-9);
        let fp = gramians_fixed_point(&a, FixedPointOptions::default()).unwrap();
        assert!((&g.gp - &fp.gp).norm() < 1e-7);
        assert!((&g.gs - &fp.gs).norm() < 1e-7);
    }

    #[test]
    fn zero_final_weights_give_zero_observability() {
        let a = Wfa::from_rows(&["a"], &[1.0, 1.0], &[0.0, 0.0], &[&[0.3, 0.1, 0.2, 0.4]]).unwrap();
        assert_eq!(gramians_linear(&a).unwrap().gs, Matrix::zeros(2, 2));
    }

    #[test]
    fn redundant_state_forward_iteration_diverges() {
        let a = catalog::redundant_state();
        let err = gramian_fixed_point(&a, Side::Reachability, FixedPointOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Divergent(_)), "{err:?}");
        // The observability side is fine.
        gramian_fixed_point(&a, Side::Observability, FixedPointOptions::default()).unwrap();
        assert!(matches!(gramians_linear(&a), Err(Error::SpectralRadius { .. })));
    }

    #[test]
    fn absorbing_observability_iteration_diverges() {
        let a = catalog::dynamic_absorbing();
        let err = gramian_fixed_point(&a, Side::Observability, FixedPointOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Divergent(_)), "{err:?}");
    }

    #[test]
    fn exponential_growth_is_caught_early() {
        let a = Wfa::from_rows(&["a"], &[1.0], &[1.0], &[&[1.5]]).unwrap();
        let err = gramian_fixed_point(&a, Side::Reachability, FixedPointOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Divergent(_)));
    }

    #[test]
    fn gramian_is_least_solution_of_inequality() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let a = random::random_det_free_pdpa(&mut rng, 3, 2);
            let g = gramians_fixed_point(&a, FixedPointOptions::default()).unwrap();
            // X = c G_p + P with P = Q + Σ Aᵀ P A satisfies X ⪰ F_p(X).
            let c = rng.gen_range(1.0..3.0);
            let q = random_psd(&mut rng, 3);
            let p = stein_iteration(&q, |x| sandwich_p(&a, x), FixedPointOptions::default(), "p").unwrap().value;
            let x = numerics::symmetrize(&(&g.gp * c + p));
            assert!(numerics::psd_geq(&x, &apply_fp(&a, &x).unwrap(), 1e-9).unwrap());
            assert!(numerics::psd_geq(&x, &g.gp, 1e-7).unwrap());
        }
    }

    #[test]
    fn sdp_unique_case_reproduces_linear_solution() {
        let a = catalog::dynamic_det_free();
        let lin = gramians_linear(&a).unwrap();
        for (side, g) in [(Side::Reachability, &lin.gp), (Side::Observability, &lin.gs)] {
            let sdp = build_sdp(&a, side).unwrap();
            assert_eq!(sdp.dim(), 0);
            assert!((sdp.point(&[]).unwrap() - g).norm() < 1e-9);
        }
    }

    #[test]
    fn sdp_degenerate_case_is_minimized_by_fixed_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let a = random::random_degenerate_observable(&mut rng, 3, 1, 2);
        let sdp = build_sdp(&a, Side::Observability).unwrap();
        assert!(sdp.dim() >= 1);
        let g = gramian_fixed_point(&a, Side::Observability, FixedPointOptions::default()).unwrap().value;
        let t = sdp.coordinates(&g).unwrap();
        assert!(sdp.feasibility(&t).unwrap().holds(1e-7));
        assert!((sdp.point(&t).unwrap() - &g).norm() < 1e-7);
        let best = sdp.objective(&t).unwrap();
        let mut found = 0;
        while found < 20 {
            let s: Vec<f64> = t.iter().map(|x| x + rng.gen_range(-1.0..1.0)).collect();
            if sdp.feasibility(&s).unwrap().holds(1e-9) {
                assert!(sdp.objective(&s).unwrap() >= best - 1e-7);
                found += 1;
            }
        }
    }

    #[test]
    fn sdp_rejects_inconsistent_system() {
        // f ≡ 1 on a one-letter alphabet: 1 − 1 = 0 cannot equal β² = 1.
        assert!(matches!(build_sdp(&catalog::constant_one(), Side::Observability), Err(Error::Inconsistent(_))));
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]
        #[test]
        fn linear_and_fixed_point_agree(seed in 0u64..10_000, n in 1usize..6, k in 1usize..4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random::random_wfa(&mut rng, n, k, 0.9 / (k as f64).sqrt());
            let lin = gramians_linear(&a).unwrap();
            let fp = gramians_fixed_point(&a, FixedPointOptions::default()).unwrap();
            proptest::prop_assert!((&lin.gp - &fp.gp).norm() < 1e-7);
            proptest::prop_assert!((&lin.gs - &fp.gs).norm() < 1e-7);
            proptest::prop_assert!(fp.residual_p <= 1e-10 && fp.residual_s <= 1e-10);
            proptest::prop_assert!(numerics::is_symmetric(&fp.gp, 1e-8));
            proptest::prop_assert!(numerics::sym_eigenvalues(&fp.gs).unwrap()[0] >= -1e-9);
        }
    }
}
