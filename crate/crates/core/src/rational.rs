//! Exact rational scalars and their text renderings.
//!
//! All counts in this crate are exact: per-element quantities on periodic
//! meshes are ratios of integers, and every table cell is either printed in
//! full precision (`135/2`) or rounded to one decimal place on demand.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Signed;

/// Exact rational number used throughout the crate.
///
/// `i128` leaves ample headroom: the largest values that occur are
/// non-zero-entry counts for degree 50 polynomials, far below `i128::MAX`.
pub type Rational = Ratio<i128>;

/// Shorthand for `n/d`.
pub fn rat(numer: i128, denom: i128) -> Rational {
    Rational::new(numer, denom)
}

/// Shorthand for an integral rational.
pub fn int(value: i128) -> Rational {
    Rational::from_integer(value)
}

/// Binomial coefficient `C(n, r)` with the combinatorial convention
/// `C(n, r) = 0` for `n < r` (in particular for negative `n`).
pub fn binomial(n: i128, r: i128) -> i128 {
    if r < 0 || n < r {
        return 0;
    }
    let mut acc: i128 = 1;
    for j in 1..=r {
        acc = acc * (n - r + j) / j;
    }
    acc
}

/// Renders a rational exactly: `36`, `3/2`, `-21/4`.
pub fn render_exact(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Renders a non-negative rational rounded half-up to one decimal place.
///
/// Integers drop the trailing `.0`, matching the table style used by the
/// reference data: `1/6` renders as `0.2`, `135/2` as `67.5`, `3` as `3`.
pub fn render_decimal(value: &Rational) -> String {
    assert!(
        !value.is_negative(),
        "decimal rendering is defined for non-negative counts"
    );
    // floor(10*x + 1/2) implements round-half-up exactly.
    let scaled = *value * int(10) + rat(1, 2);
    let tenths = scaled.numer().div_floor(scaled.denom());
    let (whole, frac) = tenths.div_rem(&10);
    if frac == 0 {
        whole.to_string()
    } else {
        format!("{whole}.{frac}")
    }
}

/// Parses the exact renderings produced by [`render_exact`] plus decimal
/// literals with an exact binary-free meaning (`4.5` is exactly `9/2`).
pub fn parse_exact(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: i128 = n.trim().parse().ok()?;
        let d: i128 = d.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        return Some(rat(n, d));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let whole: i128 = whole.trim().parse().ok()?;
        let digits = frac.len() as u32;
        let frac_value: i128 = frac.parse().ok()?;
        if frac_value < 0 {
            return None;
        }
        let denom = 10i128.checked_pow(digits)?;
        let magnitude = whole.unsigned_abs() as i128 * denom + frac_value;
        return Some(rat(if negative { -magnitude } else { magnitude }, denom));
    }
    text.parse::<i128>().ok().map(int)
}
