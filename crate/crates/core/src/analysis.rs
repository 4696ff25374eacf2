//! Square-summability tests, norms and distances, the exact truncation
//! error, and brute-force Hankel blocks used as an independent oracle.

use crate::error::{Error, Result};
use crate::gramian::{self, FixedPointOptions, Side};
use crate::minimize::minimize;
use crate::numerics::{self, Matrix, Svd, Vector, DEFAULT_RANK_TOL};
use crate::refine;
use crate::sva::{pad_truncation, SvaForm};
use crate::wfa::Wfa;

/// Maximum number of entries of a [`HankelBlock`].
pub const HANKEL_ENTRY_CAP: u128 = 10_000_000;
/// Spectral radius margin used by [`check_l2`].
pub const L2_MARGIN: f64 = 1e-9;

/// Finite block of the Hankel matrix, `values[(i, j)] = f(prefixes[i] · suffixes[j])`.
#[derive(Debug, Clone)]
pub struct HankelBlock {
    /// Prefixes as symbol indices, in length-lexicographic order.
    pub prefixes: Vec<Vec<usize>>,
    pub suffixes: Vec<Vec<usize>>,
    pub values: Matrix,
}

/// All words of length at most `max_len` in length-lexicographic order.
pub fn words_up_to(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut start = 0;
    for _ in 0..max_len {
        let end = out.len();
        for i in start..end {
            for s in 0..k {
                let mut w = out[i].clone();
                w.push(s);
                out.push(w);
            }
        }
        start = end;
    }
    out
}

fn count_words(k: usize, max_len: usize) -> u128 {
    (0..=max_len as u32).map(|l| (k as u128).saturating_pow(l)).fold(0u128, |a, b| a.saturating_add(b))
}

/// Values `f(w)` for every word of each length up to `max_len`, indexed by
/// length and then by the base-`k` number the word spells.
fn values_by_length(a: &Wfa, max_len: usize) -> Vec<Vec<f64>> {
    let k = a.alphabet().len();
    let mut layer: Vec<Vector> = vec![a.alpha().clone()];
    let mut out = Vec::with_capacity(max_len + 1);
    out.push(vec![a.alpha().dot(a.beta())]);
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * k);
        for v in &layer {
            for m in a.transitions() {
                next.push(m.tr_mul(v));
            }
        }
        out.push(next.iter().map(|v| v.dot(a.beta())).collect());
        layer = next;
    }
    out
}

fn word_code(w: &[usize], k: usize) -> usize {
    w.iter().fold(0, |acc, &s| acc * k + s)
}

/// Brute-force Hankel block over `Σ^{≤max_len_p} × Σ^{≤max_len_s}`.
///
/// Each distinct word is evaluated once, so entries for different splittings
/// of the same word are identical.
pub fn hankel_block(a: &Wfa, max_len_p: usize, max_len_s: usize) -> Result<HankelBlock> {
    let k = a.alphabet().len();
    let (rows, cols) = (count_words(k, max_len_p), count_words(k, max_len_s));
    let entries = rows.saturating_mul(cols);
    if entries > HANKEL_ENTRY_CAP {
        return Err(Error::HankelCap { entries, cap: HANKEL_ENTRY_CAP });
    }
    let table = values_by_length(a, max_len_p + max_len_s);
    let prefixes = words_up_to(k, max_len_p);
    let suffixes = words_up_to(k, max_len_s);
    let values = Matrix::from_fn(prefixes.len(), suffixes.len(), |i, j| {
        let (p, s) = (&prefixes[i], &suffixes[j]);
        let code = word_code(p, k) * k.pow(s.len() as u32) + word_code(s, k);
        table[p.len() + s.len()][code]
    });
    Ok(HankelBlock { prefixes, suffixes, values })
}

impl HankelBlock {
    /// Entry for an explicit prefix and suffix, if both are in range.
    pub fn get(&self, prefix: &[usize], suffix: &[usize]) -> Option<f64> {
        let i = self.prefixes.iter().position(|p| p == prefix)?;
        let j = self.suffixes.iter().position(|s| s == suffix)?;
        Some(self.values[(i, j)])
    }
}

pub fn hankel_svd(hb: &HankelBlock) -> Result<Svd> {
    numerics::svd(&hb.values, DEFAULT_RANK_TOL)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum L2Method {
    /// Spectral radius of the summed transitions of a minimal realization
    /// of `f²`; decisive in both directions.
    MinimizedKronRadius,
}

impl L2Method {
    pub fn name(self) -> &'static str {
        match self {
            L2Method::MinimizedKronRadius => "minimized_kron_radius",
        }
    }
}

/// Cheap conditions that each imply square summability.
#[derive(Debug, Clone, Copy)]
pub struct SufficientConditions {
    /// `ρ(Σ_a A_a ⊗ A_a)`, when the Kronecker sum is small enough to form.
    pub kron_radius: Option<f64>,
    /// `‖Σ_a A_a ⊗ A_a‖₁`.
    pub kron_norm_1: Option<f64>,
    /// `‖Σ_a A_a ⊗ A_a‖_∞`.
    pub kron_norm_inf: Option<f64>,
    /// `‖Σ_a A_a A_aᵀ‖₂`.
    pub gram_norm_2: f64,
}

impl SufficientConditions {
    pub fn any_holds(&self) -> bool {
        [self.kron_radius, self.kron_norm_1, self.kron_norm_inf, Some(self.gram_norm_2)]
            .into_iter()
            .flatten()
            .any(|x| x < 1.0)
    }
}

#[derive(Debug, Clone)]
pub struct L2Report {
    pub member: bool,
    pub method: L2Method,
    /// Spectral radius of the minimized square automaton.
    pub witness: f64,
    pub minimized_square_dim: usize,
    pub sufficient: SufficientConditions,
}

const KRON_FORM_LIMIT: usize = 48;

/// Decides whether `f` is square summable.
pub fn check_l2(a: &Wfa) -> Result<L2Report> {
    let square = minimize(&a.kron_square());
    let rho = numerics::spectral_radius(&square.minimal.transition_sum())?;
    let n = a.states();
    let (kron_radius, kron_norm_1, kron_norm_inf) = if n <= KRON_FORM_LIMIT {
        let k = a.kron_transition_sum();
        let r = if n <= gramian::AUTO_LINEAR_LIMIT { Some(numerics::spectral_radius(&k)?) } else { None };
        (r, Some(numerics::norm_1(&k)), Some(numerics::norm_inf(&k)))
    } else {
        (None, None, None)
    };
    let gram = a
        .transitions()
        .iter()
        .fold(Matrix::zeros(n, n), |acc, m| acc + m * m.transpose());
    Ok(L2Report {
        member: rho < 1.0 - L2_MARGIN,
        method: L2Method::MinimizedKronRadius,
        witness: rho,
        minimized_square_dim: square.minimal_dim,
        sufficient: SufficientConditions {
            kron_radius,
            kron_norm_1,
            kron_norm_inf,
            gram_norm_2: numerics::norm_2(&gram)?,
        },
    })
}

/// Automata up to this size get their quadratic forms refined in
/// double-double arithmetic.
const REFINE_LIMIT: usize = 64;

/// `uᵀ G u` where `G` solves `G = u₀u₀ᵀ + Σ L G Lᵀ`, refined when small enough.
fn gramian_quadratic(a: &Wfa, side: Side) -> Result<f64> {
    let opts = FixedPointOptions::default();
    let g = gramian::gramian_fixed_point(a, side, opts)?;
    let (seed, probe) = match side {
        Side::Reachability => (a.alpha(), a.beta()),
        Side::Observability => (a.beta(), a.alpha()),
    };
    if a.states() > REFINE_LIMIT {
        return Ok(probe.dot(&(&g.value * probe)));
    }
    let maps: Vec<Matrix> = match side {
        Side::Reachability => a.transitions().iter().map(|m| m.transpose()).collect(),
        Side::Observability => a.transitions().to_vec(),
    };
    let what = format!("{} gramian", side.name());
    let refined = refine::solve_stein(&(seed * seed.transpose()), &maps, &maps, &what)?;
    Ok(f64::from(refined.bilinear(probe, probe)))
}

/// Squared ℓ² norm from whichever Gramian exists, cross-checked when both do.
fn norm_sq_from_gramians(a: &Wfa) -> Result<f64> {
    let via_s = gramian_quadratic(a, Side::Observability);
    let via_p = gramian_quadratic(a, Side::Reachability);
    match (via_s, via_p) {
        (Ok(s), Ok(p)) => {
            if (s - p).abs() > 1e-7 * (1.0 + s.abs().max(p.abs())) {
                return Err(Error::Inconsistent((s - p).abs()));
            }
            Ok(s.max(0.0))
        }
        (Ok(s), Err(_)) => Ok(s.max(0.0)),
        (Err(_), Ok(p)) => Ok(p.max(0.0)),
        (Err(e), Err(_)) => Err(e),
    }
}

/// `‖f‖₂²`. Fails with [`Error::Divergent`] when the norm is infinite.
pub fn norm_l2_sq(a: &Wfa) -> Result<f64> {
    match norm_sq_from_gramians(a) {
        Err(e) if e.is_analytic_negative() => {
            // Both Gramians can fail to exist for non-minimal automata of
            // square-summable functions.
            let m = minimize(a);
            if m.minimal_dim < a.states() {
                norm_sq_from_gramians(&m.minimal)
            } else {
                Err(e)
            }
        }
        other => other,
    }
}

pub fn norm_l2(a: &Wfa) -> Result<f64> {
    Ok(norm_l2_sq(a)?.sqrt())
}

/// `‖f_a − f_b‖₂`, from the Gramians of the difference automaton.
pub fn distance_l2(a: &Wfa, b: &Wfa) -> Result<f64> {
    Ok(distance_l2_sq(a, b)?.sqrt())
}

pub fn distance_l2_sq(a: &Wfa, b: &Wfa) -> Result<f64> {
    norm_l2_sq(&a.difference(b)?)
}

/// Exact `‖f − f̂‖₂²` for the truncation of `s` to `n_hat` states:
/// `Σ_{i>n̂} σ_i (2 C_ii − G̃_ii)` where `C = Sᵀ S̃` is the cross Gramian
/// between the balanced automaton and its padded truncation and `G̃` is the
/// observability Gramian of the padded truncation.
pub fn exact_truncation_error_sq(s: &SvaForm, n_hat: usize) -> Result<f64> {
    let padded = pad_truncation(s, n_hat)?;
    let a = &s.automaton;
    let n = s.dim();
    let bb = a.beta() * a.beta().transpose();
    let cross = refine::solve_stein(&bb, a.transitions(), padded.transitions(), "cross gramian")?;
    let tilde = refine::solve_stein(&bb, padded.transitions(), padded.transitions(), "truncated gramian")?;
    let mut total = twofloat::TwoFloat::from(0.0);
    for i in n_hat..n {
        total += (cross.get(i, i) * 2.0 - tilde.get(i, i)) * s.sigmas[i];
    }
    Ok(f64::from(total))
}

/// `Σ_{|x| ≤ max_len} f(x)²` by enumerating words.
pub fn truncated_square_sum(a: &Wfa, max_len: usize) -> f64 {
    values_by_length(a, max_len).iter().flatten().map(|v| v * v).sum()
}

/// Upper bound on `Σ_{|x| > max_len} f(x)²` from a minimal realization
/// `B` of `f²`: with `M = Σ_a B_a`, the level sums are `α_Bᵀ Mᵗ β_B`, and
/// `Σ_{t>L} ‖Mᵗ‖₂ ≤ ‖M^{L+1}‖₂ · Σ_{r<m} ‖Mʳ‖₂ / (1 − ‖Mᵐ‖₂)` for any `m`
/// with `‖Mᵐ‖₂ < 1`. Infinite when no such `m ≤ 1000` exists.
pub fn square_sum_tail_bound(a: &Wfa, max_len: usize) -> Result<f64> {
    let b = minimize(&a.kron_square()).minimal;
    let m = b.transition_sum();
    let c = b.alpha().norm() * b.beta().norm();
    if c == 0.0 {
        return Ok(0.0);
    }
    let size = m.nrows();
    let mut power = Matrix::identity(size, size);
    let mut partial = 0.0;
    let mut geometric = None;
    for _ in 0..1000 {
        partial += numerics::norm_2(&power)?;
        power = &power * &m;
        let q = numerics::norm_2(&power)?;
        if q < 1.0 {
            geometric = Some(partial / (1.0 - q));
            break;
        }
    }
    let Some(series) = geometric else {
        return Ok(f64::INFINITY);
    };
    let mut lead = Matrix::identity(size, size);
    for _ in 0..=max_len {
        lead = &lead * &m;
    }
    Ok(c * numerics::norm_2(&lead)? * series)
}

#[derive(Debug, Clone, Copy)]
pub struct KronInequality {
    /// `‖Σ_a A_a ⊗ A_a‖_∞`.
    pub lhs: f64,
    /// `‖[A_1 … A_m]‖_∞ · ‖[A_1ᵀ … A_mᵀ]‖₁`.
    pub rhs: f64,
}

impl KronInequality {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs + 1e-9
    }
}

pub fn kron_inf_inequality_check(a: &Wfa) -> KronInequality {
    let n = a.states();
    let stacked_rows = (0..n)
        .map(|i| a.transitions().iter().map(|m| m.row(i).iter().map(|x| x.abs()).sum::<f64>()).sum::<f64>())
        .fold(0.0, f64::max);
    // Columns of [A_1ᵀ … A_mᵀ] are the rows of the individual A_a.
    let transposed_cols = a.transitions().iter().map(numerics::norm_inf).fold(0.0, f64::max);
    KronInequality {
        lhs: numerics::norm_inf(&a.kron_transition_sum()),
        rhs: stacked_rows * transposed_cols,
    }
}
