//! Singular value automata and their truncation.
//!
//! A singular value automaton is a minimal realization whose reachability
//! and observability Gramians both equal `diag(σ₁, …, σ_n)`, the Hankel
//! singular values of the function. It is obtained from any minimal
//! realization by the balancing change of basis built from Cholesky factors
//! of the two Gramians.

use crate::error::{Error, Result};
use crate::gramian::{self, GramianPair, GramianRoute};
use crate::minimize::minimize;
use crate::numerics::{self, Matrix, Vector};
use crate::wfa::Wfa;

#[derive(Debug, Clone)]
pub struct SvaForm {
    /// The balanced automaton.
    pub automaton: Wfa,
    /// Hankel singular values, non-increasing and positive.
    pub sigmas: Vec<f64>,
    /// Change of basis from `realization` to `automaton`.
    pub q: Matrix,
    pub q_inv: Matrix,
    /// The minimal automaton `q` applies to (the input itself when it was
    /// already minimal).
    pub realization: Wfa,
    pub source_dim: usize,
    /// The input was not minimal and had to be reduced first.
    pub minimized: bool,
    /// Gramians of `realization` used for the factorization.
    pub gramians: GramianPair,
    /// Diagonal shifts applied by the two Cholesky factorizations.
    pub jitter: (Option<f64>, Option<f64>),
}

impl SvaForm {
    pub fn dim(&self) -> usize {
        self.sigmas.len()
    }
}

/// Balanced realization of the function computed by `a`.
///
/// Non-minimal inputs are minimized first. Fails with
/// [`Error::Divergent`] when a Gramian does not exist (the function is not
/// square summable).
pub fn compute_sva(a: &Wfa) -> Result<SvaForm> {
    compute_sva_with(a, GramianRoute::Auto)
}

pub fn compute_sva_with(a: &Wfa, route: GramianRoute) -> Result<SvaForm> {
    let reduced = minimize(a);
    if reduced.is_zero {
        return Err(Error::OutOfRange {
            what: "function",
            detail: "the zero function has no singular values".into(),
        });
    }
    let minimized = reduced.minimal_dim < a.states();
    let m = reduced.minimal;
    let g = gramian::gramians(&m, route)?;
    let cp = numerics::cholesky_psd(&g.gp)?;
    let cs = numerics::cholesky_psd(&g.gs)?;
    let svd = numerics::svd_full(&cp.l.tr_mul(&cs.l), 0.0)?;
    let n = m.states();
    if svd.singular_values.len() != n || svd.singular_values[n - 1] <= 0.0 {
        return Err(Error::Singular("product of Gramian factors".into()));
    }
    let root = Vector::from_iterator(n, svd.singular_values.iter().map(|s| s.sqrt()));
    let d_half = Matrix::from_diagonal(&root);
    let lp_inv = numerics::invert_lower(&cp.l)?;
    let ls_inv = numerics::invert_lower(&cs.l)?;
    let q = lp_inv.transpose() * &svd.u * &d_half;
    let q_inv = &d_half * svd.v.transpose() * ls_inv;
    Ok(SvaForm {
        automaton: m.conjugate_with_inverse(&q, &q_inv),
        sigmas: svd.singular_values,
        q,
        q_inv,
        realization: m,
        source_dim: a.states(),
        minimized,
        gramians: g,
        jitter: (cp.jitter, cs.jitter),
    })
}

/// Builds an [`SvaForm`] around an automaton already in balanced form,
/// trusting the supplied singular values (used when reading saved models).
pub fn from_balanced(automaton: Wfa, sigmas: Vec<f64>) -> Result<SvaForm> {
    let n = automaton.states();
    if sigmas.len() != n {
        return Err(Error::Shape(format!("{} singular values for {n} states", sigmas.len())));
    }
    if sigmas.windows(2).any(|w| w[1] > w[0]) || sigmas.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
        return Err(Error::InvalidModel("singular values must be positive and non-increasing".into()));
    }
    let d = Matrix::from_diagonal(&Vector::from_column_slice(&sigmas));
    Ok(SvaForm {
        realization: automaton.clone(),
        automaton,
        q: Matrix::identity(n, n),
        q_inv: Matrix::identity(n, n),
        source_dim: n,
        minimized: false,
        gramians: GramianPair {
            gp: d.clone(),
            gs: d,
            method: gramian::GramianMethod::LinearSystem,
            residual_p: f64::NAN,
            residual_s: f64::NAN,
            iterations: 0,
        },
        sigmas,
        jitter: (None, None),
    })
}

#[derive(Debug, Clone)]
pub struct TruncationResult {
    pub truncated: Wfa,
    pub kept: usize,
    pub dropped_sigmas: Vec<f64>,
    /// `Σ` of the squared dropped singular values.
    pub bound: f64,
    pub exact_error_sq: Option<f64>,
}

fn check_cut(s: &SvaForm, n_hat: usize, allow_full: bool) -> Result<()> {
    let n = s.dim();
    let upper = if allow_full { n } else { n.saturating_sub(1) };
    if n_hat < 1 || n_hat > upper {
        return Err(Error::OutOfRange {
            what: "states",
            detail: format!("{n_hat} not in [1, {upper}] for a {n}-state automaton"),
        });
    }
    Ok(())
}

fn leading_block(n: usize, n_hat: usize) -> Matrix {
    Matrix::from_fn(n, n_hat, |i, j| if i == j { 1.0 } else { 0.0 })
}

/// Keeps the leading `n_hat` states of the balanced automaton.
pub fn truncate(s: &SvaForm, n_hat: usize) -> Result<TruncationResult> {
    check_cut(s, n_hat, false)?;
    let dropped_sigmas = s.sigmas[n_hat..].to_vec();
    Ok(TruncationResult {
        truncated: s.automaton.compress(&leading_block(s.dim(), n_hat)),
        kept: n_hat,
        bound: dropped_sigmas.iter().map(|x| x * x).sum(),
        dropped_sigmas,
        exact_error_sq: None,
    })
}

/// [`truncate`] with the exact squared error filled in.
pub fn truncate_with_error(s: &SvaForm, n_hat: usize) -> Result<TruncationResult> {
    let mut r = truncate(s, n_hat)?;
    r.exact_error_sq = Some(crate::analysis::exact_truncation_error_sq(s, n_hat)?);
    Ok(r)
}

/// The `n`-state automaton `⟨Πα, β, {A_a Π}⟩` with `Π = diag(I_n̂, 0)`. It
/// computes the same function as the truncation; `n_hat = n` is allowed and
/// returns the automaton unchanged.
pub fn pad_truncation(s: &SvaForm, n_hat: usize) -> Result<Wfa> {
    check_cut(s, n_hat, true)?;
    let a = &s.automaton;
    let keep = |v: &Vector| Vector::from_fn(v.len(), |i, _| if i < n_hat { v[i] } else { 0.0 });
    let trans = a
        .transitions()
        .iter()
        .map(|m| Matrix::from_fn(m.nrows(), m.ncols(), |i, j| if j < n_hat { m[(i, j)] } else { 0.0 }))
        .collect();
    Wfa::new(a.alphabet().clone(), keep(a.alpha()), a.beta().clone(), trans)
}

#[derive(Debug, Clone)]
pub struct CoefficientViolation {
    pub symbol: String,
    pub row: usize,
    pub col: usize,
    pub value: f64,
    pub bound: f64,
}

#[derive(Debug, Clone)]
pub struct SvaDiagnostics {
    /// `|Σ_i σ_i Σ_a A_a(i,j)² − (σ_j − α_j²)|` for each `j`.
    pub reachability_residuals: Vec<f64>,
    /// `|Σ_j σ_j Σ_a A_a(i,j)² − (σ_i − β_i²)|` for each `i`.
    pub observability_residuals: Vec<f64>,
    /// Largest `|A_a(i,j)| − sqrt(min(σ_i,σ_j)/max(σ_i,σ_j))` over all entries.
    pub max_coefficient_excess: f64,
    /// Entries exceeding the coefficient bound by more than `1e-7`.
    pub violations: Vec<CoefficientViolation>,
}

impl SvaDiagnostics {
    pub fn max_residual(&self) -> f64 {
        self.reachability_residuals
            .iter()
            .chain(&self.observability_residuals)
            .fold(0.0, |a, &b| a.max(b))
    }
}

/// Checks the diagonal entries of both Gramian equations of a balanced
/// automaton, and the bound they imply on its transition weights.
pub fn sva_diagnostics(s: &SvaForm) -> SvaDiagnostics {
    let a = &s.automaton;
    let n = s.dim();
    let sig = &s.sigmas;
    let mut squares = Matrix::zeros(n, n);
    for m in a.transitions() {
        squares += m.component_mul(m);
    }
    let reachability_residuals = (0..n)
        .map(|j| {
            let lhs: f64 = (0..n).map(|i| sig[i] * squares[(i, j)]).sum();
            (lhs - (sig[j] - a.alpha()[j].powi(2))).abs()
        })
        .collect();
    let observability_residuals = (0..n)
        .map(|i| {
            let lhs: f64 = (0..n).map(|j| sig[j] * squares[(i, j)]).sum();
            (lhs - (sig[i] - a.beta()[i].powi(2))).abs()
        })
        .collect();
    let mut max_coefficient_excess = f64::NEG_INFINITY;
    let mut violations = Vec::new();
    for (k, m) in a.transitions().iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let bound = (sig[i].min(sig[j]) / sig[i].max(sig[j])).sqrt();
                let value = m[(i, j)];
                let excess = value.abs() - bound;
                max_coefficient_excess = max_coefficient_excess.max(excess);
                if excess > 1e-7 {
                    violations.push(CoefficientViolation {
                        symbol: a.alphabet().symbol(k).to_string(),
                        row: i,
                        col: j,
                        value,
                        bound,
                    });
                }
            }
        }
    }
    SvaDiagnostics {
        reachability_residuals,
        observability_residuals,
        max_coefficient_excess,
        violations,
    }
}
