//! Negative (Hirzebruch) continued fractions.
//!
//! A finite sequence `[c1, ..., cn]` encodes the extended rational
//!
//! ```text
//! c1 - 1/(c2 - 1/(... - 1/cn))
//! ```
//!
//! These expansions translate between surgery coefficients on a chain of
//! unknots and the single rational coefficient of the lens space it
//! describes. Expansion always uses ceilings, which for values greater than
//! one yields the classical canonical form with every entry at least 2.

use crate::slope::Slope;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CfError {
    /// Only nonzero finite rationals have a negative expansion.
    #[error("cannot expand `{0}` as a negative continued fraction")]
    Unexpandable(Slope),
    /// The fold hit `inf - inf`, so the chain has no well-defined value.
    #[error("indeterminate chain")]
    Indeterminate,
    #[error("empty coefficient sequence")]
    Empty,
}

/// Expands a nonzero finite rational into its ceiling-based negative
/// continued fraction.
///
/// ```
/// use dehn::cf::expand_negative;
/// use num_bigint::BigInt;
///
/// let cf = expand_negative(&"7/3".parse().unwrap()).unwrap();
/// assert_eq!(cf, [3, 2, 2].map(BigInt::from));
/// ```
pub fn expand_negative(r: &Slope) -> Result<Vec<BigInt>, CfError> {
    if r.is_infinity() || r.is_zero() {
        return Err(CfError::Unexpandable(r.clone()));
    }
    let mut p = r.numerator().clone();
    let mut q = r.denominator().clone();
    let mut out = Vec::new();
    loop {
        let (c, rem) = p.div_mod_floor(&q);
        if rem.is_zero() {
            out.push(c);
            return Ok(out);
        }
        // Ceiling, since the remainder is nonzero.
        let c = c + 1u32;
        // Tail value is q / (c q - p); its denominator c q - p lies in
        // [1, q - 1], so the loop terminates.
        let next_q = &c * &q - &p;
        out.push(c);
        p = q;
        q = next_q;
    }
}

/// Folds coefficients from the right through `prev - 1/acc`.
///
/// Rational (not just integral) coefficients are allowed; a trailing `inf`
/// contributes nothing and a zero denominator mid-chain propagates to `inf`
/// in the next step. The only failure mode besides an empty input is the
/// indeterminate combination `inf - 1/0`.
///
/// ```
/// use dehn::cf::evaluate_chain;
/// use dehn::Slope;
///
/// let half = "1/2".parse::<Slope>().unwrap();
/// let one = Slope::integer(1);
/// let value = evaluate_chain(&[half.clone(), one, half]).unwrap();
/// assert_eq!(value, "3/2".parse().unwrap());
/// ```
pub fn evaluate_chain(coefficients: &[Slope]) -> Result<Slope, CfError> {
    let (last, front) = coefficients.split_last().ok_or(CfError::Empty)?;
    let mut acc = last.clone();
    for prev in front.iter().rev() {
        acc = step(prev, &acc)?;
    }
    Ok(acc)
}

/// One fold step: `prev - 1/acc` in extended rationals.
fn step(prev: &Slope, acc: &Slope) -> Result<Slope, CfError> {
    if acc.is_infinity() {
        return Ok(prev.clone());
    }
    if acc.is_zero() {
        return if prev.is_infinity() {
            Err(CfError::Indeterminate)
        } else {
            Ok(Slope::infinity())
        };
    }
    let (a, b) = (prev.numerator(), prev.denominator());
    let (s, t) = (acc.numerator(), acc.denominator());
    Slope::new(a * s - t * b, b * s).map_err(|_| CfError::Indeterminate)
}
