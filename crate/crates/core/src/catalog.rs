//! Small reference automata with hand-checkable behaviour.
//!
//! These double as golden test vectors and as the model files shipped under
//! `models/`.

use crate::wfa::Wfa;

/// Two states, signed integer weights; `f(ba) = 60`.
pub fn signed_two_state() -> Wfa {
    Wfa::from_rows(
        &["a", "b"],
        &[1.0, -2.0],
        &[1.0, -1.0],
        &[&[1.0, -1.0, -2.0, 3.0], &[0.0, -2.0, 0.0, 5.0]],
    )
    .expect("valid")
}

/// A proper generative probabilistic automaton with two states.
pub fn generative_two_state() -> Wfa {
    Wfa::from_rows(
        &["a", "b"],
        &[1.0, 0.0],
        &[0.0, 1.0 / 3.0],
        &[
            &[0.25, 0.25, 0.0, 1.0 / 3.0],
            &[0.0, 0.5, 1.0 / 3.0, 0.0],
        ],
    )
    .expect("valid")
}

/// A det-free proper dynamic probabilistic automaton with two states.
pub fn dynamic_det_free() -> Wfa {
    Wfa::from_rows(
        &["a", "b"],
        &[1.0, 0.0],
        &[1.0, 1.0],
        &[
            &[0.25, 0.25, 0.0, 1.0 / 3.0],
            &[0.0, 0.5, 2.0 / 3.0, 0.0],
        ],
    )
    .expect("valid")
}

/// A proper dynamic automaton whose second state always emits `a`; its
/// function is not square summable (`f(b aᵏ) = 1/2`).
pub fn dynamic_absorbing() -> Wfa {
    Wfa::from_rows(
        &["a", "b"],
        &[1.0, 0.0],
        &[1.0, 1.0],
        &[&[0.5, 0.0, 0.0, 1.0], &[0.0, 0.5, 0.0, 0.0]],
    )
    .expect("valid")
}

/// Non-minimal automaton computing a square-summable function whose
/// reachability Gramian does not exist.
pub fn redundant_state() -> Wfa {
    Wfa::from_rows(
        &["a", "b"],
        &[1.0, 0.0],
        &[1.0, 0.0],
        &[&[0.5, 0.0, 0.0, 1.0], &[0.0, 0.5, 0.0, 0.0]],
    )
    .expect("valid")
}

/// Two decoupled states where dropping the second one increases the norm:
/// `‖f‖² = 1/3` while the one-state truncation has norm² `4/3`.
pub fn norm_increasing_truncation() -> Wfa {
    Wfa::from_rows(&["a"], &[1.0, -0.5], &[1.0, 1.0], &[&[0.5, 0.0, 0.0, 0.5]]).expect("valid")
}

/// One state, one symbol, weight 1/2: `f(aᵏ) = 2⁻ᵏ`.
pub fn geometric_half() -> Wfa {
    Wfa::from_rows(&["a"], &[1.0], &[1.0], &[&[0.5]]).expect("valid")
}

/// One state, weight 1: the constant function 1.
pub fn constant_one() -> Wfa {
    Wfa::from_rows(&["a"], &[1.0], &[1.0], &[&[1.0]]).expect("valid")
}

/// All named automata, keyed by the file stem used under `models/`.
pub fn all() -> Vec<(&'static str, Wfa)> {
    vec![
        ("signed_two_state", signed_two_state()),
        ("generative_two_state", generative_two_state()),
        ("dynamic_det_free", dynamic_det_free()),
        ("dynamic_absorbing", dynamic_absorbing()),
        ("redundant_state", redundant_state()),
        ("norm_increasing_truncation", norm_increasing_truncation()),
        ("geometric_half", geometric_half()),
        ("constant_one", constant_one()),
    ]
}
