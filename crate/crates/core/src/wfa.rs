//! The weighted automaton model and its algebra.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::numerics::{self, kron, Matrix, Vector};

/// Largest accepted 2-norm condition number for a change of basis.
pub const MAX_CONDITION: f64 = 1e12;
/// Tolerance on stochasticity sums in the probabilistic validators.
pub const STOCHASTIC_TOL: f64 = 1e-9;

/// Ordered set of distinct, non-empty symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidModel("alphabet is empty".into()));
        }
        let mut seen = HashSet::new();
        for s in &symbols {
            if s.is_empty() {
                return Err(Error::InvalidModel("alphabet contains an empty symbol".into()));
            }
            if !seen.insert(s.as_str()) {
                return Err(Error::InvalidModel(format!("duplicate symbol `{s}`")));
            }
        }
        Ok(Self { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == symbol)
    }

    pub fn symbol(&self, index: usize) -> &str {
        &self.symbols[index]
    }

    /// True when every symbol is a single character, so words can be written
    /// without separators.
    pub fn is_single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Splits `text` into symbols by greedy longest match.
    pub fn tokenize(&self, text: &str) -> Result<Word> {
        let mut out = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let best = self
                .symbols
                .iter()
                .filter(|s| rest.starts_with(s.as_str()))
                .max_by_key(|s| s.len())
                .ok_or_else(|| {
                    let next: String = rest.chars().next().into_iter().collect();
                    Error::UnknownSymbol(next)
                })?;
            out.push(best.clone());
            rest = &rest[best.len()..];
        }
        Ok(Word(out))
    }

    /// Renders a word of symbol indices, using `.` as separator for
    /// multi-character alphabets.
    pub fn render(&self, word: &[usize]) -> String {
        let sep = if self.is_single_char() { "" } else { "." };
        word.iter()
            .map(|&i| self.symbols[i].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }
}

/// A finite word, possibly empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<String>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<S: Into<String>> FromIterator<S> for Word {
    fn from_iter<T: IntoIterator<Item = S>>(iter: T) -> Self {
        Word(iter.into_iter().map(Into::into).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "ε")
        } else {
            write!(f, "{}", self.0.join(""))
        }
    }
}

/// A weighted finite automaton `⟨α, β, {A_a}⟩` with real weights.
///
/// Transition matrices are stored in alphabet order. Instances are immutable
/// and always satisfy the shape and finiteness invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct Wfa {
    alphabet: Alphabet,
    alpha: Vector,
    beta: Vector,
    trans: Vec<Matrix>,
}

impl Wfa {
    pub fn new(alphabet: Alphabet, alpha: Vector, beta: Vector, trans: Vec<Matrix>) -> Result<Self> {
        let n = alpha.len();
        if n == 0 {
            return Err(Error::InvalidModel("automaton needs at least one state".into()));
        }
        if beta.len() != n {
            return Err(Error::Shape(format!("beta has length {}, expected {n}", beta.len())));
        }
        if trans.len() != alphabet.len() {
            return Err(Error::InvalidModel(format!(
                "{} transition matrices for {} symbols",
                trans.len(),
                alphabet.len()
            )));
        }
        for (sym, m) in alphabet.symbols().iter().zip(&trans) {
            if m.shape() != (n, n) {
                return Err(Error::Shape(format!(
                    "transition matrix for `{sym}` is {}x{}, expected {n}x{n}",
                    m.nrows(),
                    m.ncols()
                )));
            }
            if !m.iter().all(|x| x.is_finite()) {
                return Err(Error::NonFinite(format!("transitions.{sym}")));
            }
        }
        if !alpha.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite("alpha".into()));
        }
        if !beta.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite("beta".into()));
        }
        Ok(Self {
            alphabet,
            alpha,
            beta,
            trans,
        })
    }

    /// Convenience constructor from row-major slices.
    pub fn from_rows(symbols: &[&str], alpha: &[f64], beta: &[f64], trans: &[&[f64]]) -> Result<Self> {
        let n = alpha.len();
        let mats = trans
            .iter()
            .map(|rows| {
                if rows.len() != n * n {
                    return Err(Error::Shape(format!(
                        "transition matrix has {} entries, expected {}",
                        rows.len(),
                        n * n
                    )));
                }
                Ok(Matrix::from_row_slice(n, n, rows))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            Alphabet::new(symbols.iter().copied())?,
            Vector::from_column_slice(alpha),
            Vector::from_column_slice(beta),
            mats,
        )
    }

    /// The 1-state automaton computing the zero function.
    pub fn zero(alphabet: Alphabet) -> Self {
        let trans = vec![Matrix::zeros(1, 1); alphabet.len()];
        Self {
            alphabet,
            alpha: Vector::zeros(1),
            beta: Vector::zeros(1),
            trans,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &Vector {
        &self.alpha
    }

    pub fn beta(&self) -> &Vector {
        &self.beta
    }

    pub fn transitions(&self) -> &[Matrix] {
        &self.trans
    }

    pub fn transition(&self, symbol: &str) -> Option<&Matrix> {
        self.alphabet.index_of(symbol).map(|i| &self.trans[i])
    }

    /// Maps symbol names to indices, naming the first unknown symbol.
    pub fn word_indices(&self, word: &Word) -> Result<Vec<usize>> {
        word.0
            .iter()
            .map(|s| self.alphabet.index_of(s).ok_or_else(|| Error::UnknownSymbol(s.clone())))
            .collect()
    }

    /// `f(x) = αᵀ A_{x₁} ⋯ A_{x_t} β`.
    pub fn evaluate(&self, word: &Word) -> Result<f64> {
        Ok(self.evaluate_indices(&self.word_indices(word)?))
    }

    /// Same as [`Wfa::evaluate`] for a word given as symbol indices.
    ///
    /// # Panics
    /// If an index is out of range for the alphabet.
    pub fn evaluate_indices(&self, word: &[usize]) -> f64 {
        self.forward(word).dot(&self.beta)
    }

    /// Row vector `αᵀ A_x`, returned as a column.
    pub fn forward(&self, word: &[usize]) -> Vector {
        let mut row = self.alpha.clone();
        for &s in word {
            row = self.trans[s].tr_mul(&row);
        }
        row
    }

    /// Column vector `A_x β`.
    pub fn backward(&self, word: &[usize]) -> Vector {
        let mut col = self.beta.clone();
        for &s in word.iter().rev() {
            col = &self.trans[s] * col;
        }
        col
    }

    /// `A^Q = ⟨Qᵀα, Q⁻¹β, {Q⁻¹ A_a Q}⟩`. Rejects singular or badly
    /// conditioned `Q`.
    pub fn conjugate(&self, q: &Matrix) -> Result<Wfa> {
        let n = self.states();
        if q.shape() != (n, n) {
            return Err(Error::Shape(format!("change of basis is {:?}, expected {n}x{n}", q.shape())));
        }
        let cond = numerics::condition_number(q)?;
        if !cond.is_finite() {
            return Err(Error::Singular("change of basis Q".into()));
        }
        if cond > MAX_CONDITION {
            return Err(Error::IllConditioned(cond));
        }
        let q_inv = q
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Singular("change of basis Q".into()))?;
        Ok(self.conjugate_with_inverse(q, &q_inv))
    }

    /// Conjugation when the inverse is already known. No checks.
    pub(crate) fn conjugate_with_inverse(&self, q: &Matrix, q_inv: &Matrix) -> Wfa {
        Wfa {
            alphabet: self.alphabet.clone(),
            alpha: q.tr_mul(&self.alpha),
            beta: q_inv * &self.beta,
            trans: self.trans.iter().map(|a| q_inv * a * q).collect(),
        }
    }

    /// `⟨Wᵀα, Wᵀβ, {Wᵀ A_a W}⟩` for an n×k matrix `W`. With orthonormal
    /// columns spanning an invariant subspace this is a restriction; with
    /// `W = [I; 0]` it keeps the leading block.
    pub(crate) fn compress(&self, w: &Matrix) -> Wfa {
        Wfa {
            alphabet: self.alphabet.clone(),
            alpha: w.tr_mul(&self.alpha),
            beta: w.tr_mul(&self.beta),
            trans: self.trans.iter().map(|a| w.tr_mul(&(a * w))).collect(),
        }
    }

    /// The n²-state automaton computing `f(x)²`.
    pub fn kron_square(&self) -> Wfa {
        Wfa {
            alphabet: self.alphabet.clone(),
            alpha: self.alpha.kronecker(&self.alpha),
            beta: self.beta.kronecker(&self.beta),
            trans: self.trans.iter().map(|a| kron(a, a)).collect(),
        }
    }

    /// `Σ_a A_a ⊗ A_a`.
    pub fn kron_transition_sum(&self) -> Matrix {
        let n = self.states();
        self.trans
            .iter()
            .fold(Matrix::zeros(n * n, n * n), |acc, a| acc + kron(a, a))
    }

    /// `Σ_a A_a`.
    pub fn transition_sum(&self) -> Matrix {
        let n = self.states();
        self.trans.iter().fold(Matrix::zeros(n, n), |acc, a| acc + a)
    }

    /// Block-diagonal automaton computing `f_self − f_other`.
    pub fn difference(&self, other: &Wfa) -> Result<Wfa> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{:?} vs {:?}",
                self.alphabet.symbols(),
                other.alphabet.symbols()
            )));
        }
        let (n, m) = (self.states(), other.states());
        let mut alpha = Vector::zeros(n + m);
        alpha.rows_mut(0, n).copy_from(&self.alpha);
        alpha.rows_mut(n, m).copy_from(&other.alpha);
        let mut beta = Vector::zeros(n + m);
        beta.rows_mut(0, n).copy_from(&self.beta);
        beta.rows_mut(n, m).copy_from(&(-&other.beta));
        let trans = self
            .trans
            .iter()
            .zip(&other.trans)
            .map(|(a, b)| {
                let mut t = Matrix::zeros(n + m, n + m);
                t.view_mut((0, 0), (n, n)).copy_from(a);
                t.view_mut((n, n), (m, m)).copy_from(b);
                t
            })
            .collect();
        Ok(Wfa {
            alphabet: self.alphabet.clone(),
            alpha,
            beta,
            trans,
        })
    }

    /// Checks the proper generative probabilistic automaton conditions.
    pub fn validate_pgpa(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        self.check_initial_distribution(&mut report);
        self.check_nonnegative_transitions(&mut report);
        for (i, &b) in self.beta.iter().enumerate() {
            if b < 0.0 {
                report.push(format!("beta[{i}] = {b} is negative"));
            }
        }
        let row_sums = self.transition_sum().column_sum();
        for i in 0..self.states() {
            let total = row_sums[i] + self.beta[i];
            if (total - 1.0).abs() > STOCHASTIC_TOL {
                report.push(format!("row {i}: transitions plus final weight sum to {total}, expected 1"));
            }
        }
        report
    }

    /// Checks the proper dynamic probabilistic automaton conditions.
    pub fn validate_pdpa(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        self.check_initial_distribution(&mut report);
        self.check_nonnegative_transitions(&mut report);
        for (i, &b) in self.beta.iter().enumerate() {
            if (b - 1.0).abs() > STOCHASTIC_TOL {
                report.push(format!("beta[{i}] = {b}, expected 1"));
            }
        }
        let row_sums = self.transition_sum().column_sum();
        for i in 0..self.states() {
            if (row_sums[i] - 1.0).abs() > STOCHASTIC_TOL {
                report.push(format!("row {i}: transitions sum to {}, expected 1", row_sums[i]));
            }
        }
        report
    }

    /// Every symbol's transition matrix has ∞-norm strictly below 1.
    pub fn is_det_free(&self) -> bool {
        self.trans.iter().all(|a| numerics::norm_inf(a) < 1.0)
    }

    fn check_initial_distribution(&self, report: &mut ValidationReport) {
        for (i, &a) in self.alpha.iter().enumerate() {
            if a < 0.0 {
                report.push(format!("alpha[{i}] = {a} is negative"));
            }
        }
        let total = self.alpha.sum();
        if (total - 1.0).abs() > STOCHASTIC_TOL {
            report.push(format!("alpha sums to {total}, expected 1"));
        }
    }

    fn check_nonnegative_transitions(&self, report: &mut ValidationReport) {
        for (sym, m) in self.alphabet.symbols().iter().zip(&self.trans) {
            for i in 0..m.nrows() {
                for j in 0..m.ncols() {
                    if m[(i, j)] < 0.0 {
                        report.push(format!("transitions.{sym}[{i}][{j}] = {} is negative", m[(i, j)]));
                    }
                }
            }
        }
    }
}

/// Violations found by the probabilistic-automaton validators.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, v: String) {
        self.violations.push(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn word(s: &str) -> Word {
        s.chars().map(|c| c.to_string()).collect()
    }

    /// Sum over all state paths, straight from the path-weight semantics.
    fn path_sum(a: &Wfa, x: &[usize]) -> f64 {
        let n = a.states();
        let t = x.len();
        let mut total = 0.0;
        let mut states = vec![0usize; t + 1];
        loop {
            let mut w = a.alpha()[states[0]];
            for (k, &s) in x.iter().enumerate() {
                w *= a.transitions()[s][(states[k], states[k + 1])];
            }
            total += w * a.beta()[states[t]];
            let mut pos = 0;
            loop {
                if pos > t {
                    return total;
                }
                states[pos] += 1;
                if states[pos] < n {
                    break;
                }
                states[pos] = 0;
                pos += 1;
            }
        }
    }

    fn random_word(rng: &mut ChaCha8Rng, k: usize, max_len: usize) -> Vec<usize> {
        let len = rng.gen_range(0..=max_len);
        (0..len).map(|_| rng.gen_range(0..k)).collect()
    }

    #[test]
    fn signed_two_state_value() {
        let a = catalog::signed_two_state();
        assert_eq!(a.evaluate(&word("ba")).unwrap(), 60.0);
        assert_eq!(path_sum(&a, &[1, 0]), 60.0);
    }

    #[test]
    fn empty_word_is_alpha_dot_beta() {
        let a = catalog::signed_two_state();
        assert_eq!(a.evaluate(&Word::empty()).unwrap(), a.alpha().dot(a.beta()));
    }

    #[test]
    fn generative_value_matches_path_sum() {
        let a = catalog::generative_two_state();
        let v = a.evaluate(&word("a")).unwrap();
        assert!((v - path_sum(&a, &[0])).abs() < 1e-15);
        assert!((v - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn unknown_symbol_is_named() {
        let a = catalog::signed_two_state();
        assert_eq!(a.evaluate(&word("bc")), Err(Error::UnknownSymbol("c".into())));
    }

    #[test]
    fn constructor_rejects_bad_shapes() {
        assert!(Wfa::from_rows(&["a"], &[1.0, 0.0], &[1.0], &[&[1.0, 0.0, 0.0, 1.0]]).is_err());
        assert!(Wfa::from_rows(&["a"], &[1.0], &[1.0], &[&[1.0, 2.0]]).is_err());
        assert!(Wfa::from_rows(&["a", "a"], &[1.0], &[1.0], &[&[1.0], &[1.0]]).is_err());
        assert!(Wfa::from_rows(&["a"], &[f64::NAN], &[1.0], &[&[1.0]]).is_err());
        assert!(Wfa::from_rows(&[], &[1.0], &[1.0], &[]).is_err());
    }

    #[test]
    fn conjugation_examples() {
        let a = catalog::signed_two_state();
        let id = a.conjugate(&Matrix::identity(2, 2)).unwrap();
        assert_eq!(id, a);
        let q = Matrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 0.5]);
        let b = a.conjugate(&q).unwrap();
        assert!((b.evaluate(&word("ba")).unwrap() - 60.0).abs() < 1e-12);
        let singular = Matrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert!(matches!(a.conjugate(&singular), Err(Error::Singular(_))));
        let ill = Matrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1e-13]);
        assert!(matches!(a.conjugate(&ill), Err(Error::IllConditioned(_))));
    }

    #[test]
    fn conjugation_preserves_values_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let a = crate::random::random_wfa(&mut rng, 3, 2, 0.6);
        let q = Matrix::identity(3, 3) + Matrix::from_fn(3, 3, |_, _| rng.gen_range(-0.4..0.4));
        let b = a.conjugate(&q).unwrap();
        for _ in 0..100 {
            let x = random_word(&mut rng, 2, 8);
            let (va, vb) = (a.evaluate_indices(&x), b.evaluate_indices(&x));
            assert!((va - vb).abs() <= 1e-9 * (1.0 + va.abs()));
        }
    }

    #[test]
    fn kron_square_examples() {
        let a = catalog::signed_two_state();
        assert_eq!(a.kron_square().evaluate(&word("ba")).unwrap(), 3600.0);
        let g = catalog::geometric_half();
        assert_eq!(g.kron_square().transitions()[0][(0, 0)], 0.25);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let r = crate::random::random_wfa(&mut rng, 3, 2, 0.7);
        let k = r.kron_square();
        for _ in 0..50 {
            let x = random_word(&mut rng, 2, 7);
            let v = r.evaluate_indices(&x);
            assert!((k.evaluate_indices(&x) - v * v).abs() <= 1e-9 * (1.0 + v * v));
        }
    }

    #[test]
    fn difference_examples() {
        let a = catalog::signed_two_state();
        let d = a.difference(&a).unwrap();
        let z = Wfa::zero(a.alphabet().clone());
        let dz = a.difference(&z).unwrap();
        for w in ["", "a", "ab", "bba", "abab"] {
            assert_eq!(d.evaluate(&word(w)).unwrap(), 0.0);
            assert_eq!(dz.evaluate(&word(w)).unwrap(), a.evaluate(&word(w)).unwrap());
        }
        let g = catalog::generative_two_state();
        let p = catalog::dynamic_det_free();
        let expected = g.evaluate(&word("a")).unwrap() - p.evaluate(&word("a")).unwrap();
        assert!((expected - (1.0 / 12.0 - 0.5)).abs() < 1e-15);
        let v = g.difference(&p).unwrap().evaluate(&word("a")).unwrap();
        assert!((v - (-5.0 / 12.0)).abs() < 1e-15);
        let other = Wfa::from_rows(&["x"], &[1.0], &[1.0], &[&[0.5]]).unwrap();
        assert!(matches!(a.difference(&other), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn probabilistic_validators() {
        assert!(catalog::generative_two_state().validate_pgpa().is_valid());
        let p = catalog::dynamic_det_free();
        assert!(p.validate_pdpa().is_valid());
        assert!(p.is_det_free());
        let q = catalog::dynamic_absorbing();
        assert!(q.validate_pdpa().is_valid());
        assert!(!q.is_det_free());
        let bad = catalog::signed_two_state().validate_pdpa();
        assert!(!bad.is_valid());
        assert!(bad.violations.iter().any(|v| v.contains("alpha[1]")));
        assert!(bad.violations.iter().any(|v| v.contains("transitions.a[0][1]")));
    }

    #[test]
    fn tokenizer() {
        let ab = Alphabet::new(["aa", "b", "a"]).unwrap();
        assert_eq!(ab.tokenize("aab").unwrap(), Word::from_iter(["aa", "b"]));
        assert_eq!(ab.tokenize("").unwrap(), Word::empty());
        assert!(ab.tokenize("c").is_err());
    }

    #[test]
    fn difference_soundness_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let a = crate::random::random_wfa(&mut rng, 3, 2, 0.6);
        let b = crate::random::random_wfa(&mut rng, 2, 2, 0.6);
        let d = a.difference(&b).unwrap();
        for _ in 0..50 {
            let x = random_word(&mut rng, 2, 6);
            let want = a.evaluate_indices(&x) - b.evaluate_indices(&x);
            assert!((d.evaluate_indices(&x) - want).abs() <= 1e-9 * (1.0 + want.abs()));
        }
    }
}
