//! Random instance generators for tests, benchmarks and the acceptance suite.

use rand::Rng;

use crate::numerics::{Matrix, Vector};
use crate::wfa::{Alphabet, Wfa};

fn alphabet(k: usize) -> Alphabet {
    Alphabet::new((0..k).map(|i| ((b'a' + i as u8) as char).to_string())).expect("k in 1..=26")
}

/// Dense automaton with entries uniform in `[-1, 1]`, transitions scaled by
/// `scale / n` so the Kronecker transition sum stays contractive for small
/// `scale`.
pub fn random_wfa<R: Rng>(rng: &mut R, n: usize, k: usize, scale: f64) -> Wfa {
    let alpha = Vector::from_fn(n, |_, _| rng.gen_range(-1.0..1.0));
    let beta = Vector::from_fn(n, |_, _| rng.gen_range(-1.0..1.0));
    let trans = (0..k)
        .map(|_| Matrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0) * scale / n as f64))
        .collect();
    Wfa::new(alphabet(k), alpha, beta, trans).expect("valid by construction")
}

/// Random det-free proper dynamic probabilistic automaton: every row of the
/// stacked transitions `[A_a ...]` is a probability vector with all entries
/// positive, so each per-symbol row sum is strictly below 1.
pub fn random_det_free_pdpa<R: Rng>(rng: &mut R, n: usize, k: usize) -> Wfa {
    assert!(k >= 2, "a det-free automaton needs at least two symbols");
    let raw_alpha: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw_alpha.iter().sum();
    let alpha = Vector::from_iterator(n, raw_alpha.iter().map(|x| x / total));
    let beta = Vector::from_element(n, 1.0);
    let mut trans = vec![Matrix::zeros(n, n); k];
    for i in 0..n {
        let weights: Vec<f64> = (0..k * n).map(|_| rng.gen_range(0.05..1.0)).collect();
        let total: f64 = weights.iter().sum();
        for a in 0..k {
            for j in 0..n {
                trans[a][(i, j)] = weights[a * n + j] / total;
            }
        }
    }
    Wfa::new(alphabet(k), alpha, beta, trans).expect("valid by construction")
}

/// Change of basis `I + E` with a small random perturbation `E`; condition
/// number stays modest.
pub fn random_well_conditioned<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let e = Matrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0)) * (0.5 / n as f64);
    Matrix::identity(n, n) + e
}

/// Automaton whose observability Gramian exists but whose Kronecker
/// transition sum has eigenvalue 1, so the Gramian equation has many
/// solutions.
///
/// The first `live` states form a contractive block; the last `dead` states
/// carry identity self-loops on symbol `a`, have zero final weight and never
/// lead back into the live block.
pub fn random_degenerate_observable<R: Rng>(rng: &mut R, live: usize, dead: usize, k: usize) -> Wfa {
    let n = live + dead;
    let alpha = Vector::from_fn(n, |_, _| rng.gen_range(-1.0..1.0));
    let mut beta = Vector::zeros(n);
    for i in 0..live {
        beta[i] = rng.gen_range(-1.0..1.0);
    }
    let trans = (0..k)
        .map(|a| {
            let mut m = Matrix::zeros(n, n);
            let scale = 0.8 / (live as f64 * k as f64);
            for i in 0..live {
                for j in 0..n {
                    m[(i, j)] = rng.gen_range(-1.0..1.0) * scale;
                }
            }
            if a == 0 {
                for d in live..n {
                    m[(d, d)] = 1.0;
                }
            }
            m
        })
        .collect();
    Wfa::new(alphabet(k), alpha, beta, trans).expect("valid by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pdpa_generator_is_valid_and_det_free() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 2..=6 {
            for k in 2..=4 {
                let a = random_det_free_pdpa(&mut rng, n, k);
                assert!(a.validate_pdpa().is_valid(), "{:?}", a.validate_pdpa());
                assert!(a.is_det_free());
            }
        }
    }

    #[test]
    fn degenerate_instance_has_unit_eigenvalue() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_degenerate_observable(&mut rng, 3, 1, 2);
        let rho = crate::numerics::spectral_radius(&a.kron_transition_sum()).unwrap();
        assert!((rho - 1.0).abs() < 1e-9);
    }
}
