//! Univariate polynomials in the discretization degree `k` with exact
//! rational coefficients.
//!
//! These carry every closed-form count produced by the crate. Arithmetic is
//! exact, equality is coefficient-wise, and the canonical rendering lists
//! terms by descending power: `3/2*k + 3/2`, `5/12*k^6 + 5*k^5 + 15`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::Zero;

use crate::rational::{int, rat, Rational};

/// Polynomial in `k`, stored low power first, normalized (no trailing zeros).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    /// Builds a polynomial from coefficients indexed by power of `k`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut poly = Self { coeffs };
        poly.normalize();
        poly
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(value: Rational) -> Self {
        Self::new(vec![value])
    }

    /// The monomial `c * k^power`.
    pub fn monomial(coeff: Rational, power: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = coeff;
        Self::new(coeffs)
    }

    /// The binomial coefficient `C(k + shift, r)` expanded as a polynomial,
    /// i.e. the degree-`r` falling factorial `(k+shift)(k+shift-1)...  / r!`.
    pub fn binomial_in_k(shift: i128, r: u32) -> Self {
        let mut acc = Self::constant(int(1));
        for j in 0..r as i128 {
            acc = &acc * &Self::new(vec![int(shift - j), int(1)]);
        }
        &acc * &Self::constant(rat(1, (1..=r as i128).product::<i128>().max(1)))
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; the zero polynomial reports degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Coefficient of `k^power` (zero beyond the stored degree).
    pub fn coeff(&self, power: usize) -> Rational {
        self.coeffs
            .get(power)
            .copied()
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, factor: Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| *c * factor).collect())
    }

    /// Exact Horner evaluation at an integer `k`.
    pub fn eval(&self, k: i128) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * int(k) + *c;
        }
        acc
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let mut coeffs = vec![Rational::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += *c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += *c;
        }
        RationalPolynomial::new(coeffs)
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        self + &rhs.scale(int(-1))
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += *a * *b;
            }
        }
        RationalPolynomial::new(coeffs)
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for power in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[power];
            if c.is_zero() {
                continue;
            }
            let negative = c < Rational::zero();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = if negative { -c } else { c };
            let unit = abs == int(1);
            match power {
                0 => write!(f, "{}", render_coeff(&abs))?,
                _ if unit => {}
                _ => write!(f, "{}*", render_coeff(&abs))?,
            }
            match power {
                0 => {}
                1 => write!(f, "k")?,
                _ => write!(f, "k^{power}")?,
            }
        }
        Ok(())
    }
}

fn render_coeff(c: &Rational) -> String {
    crate::rational::render_exact(c)
}

/// Parses the canonical rendering produced by [`RationalPolynomial`]'s
/// `Display` impl. Intended for tests and fixtures; returns `None` on any
/// token it does not recognize.
pub fn parse_polynomial(text: &str) -> Option<RationalPolynomial> {
    let text = text.trim();
    if text == "0" {
        return Some(RationalPolynomial::zero());
    }
    let mut result = RationalPolynomial::zero();
    // normalize leading sign, then split on " + " / " - "
    let (mut rest, mut sign) = match text.strip_prefix('-') {
        Some(r) => (r.trim_start(), -1i128),
        None => (text, 1i128),
    };
    loop {
        let (term, next) = match (rest.find(" + "), rest.find(" - ")) {
            (Some(p), Some(m)) if p < m => (&rest[..p], Some((&rest[p + 3..], 1))),
            (_, Some(m)) => (&rest[..m], Some((&rest[m + 3..], -1))),
            (Some(p), None) => (&rest[..p], Some((&rest[p + 3..], 1))),
            (None, None) => (rest, None),
        };
        let term = term.trim();
        let (coeff_text, power) = match term.find('k') {
            None => (term, 0usize),
            Some(pos) => {
                let coeff = term[..pos].trim_end_matches('*').trim();
                let power = match term[pos + 1..].strip_prefix('^') {
                    Some(p) => p.trim().parse().ok()?,
                    None if term[pos + 1..].trim().is_empty() => 1,
                    None => return None,
                };
                (coeff, power)
            }
        };
        let coeff = if coeff_text.is_empty() {
            int(1)
        } else {
            crate::rational::parse_exact(coeff_text)?
        };
        result = &result + &RationalPolynomial::monomial(coeff * int(sign), power);
        match next {
            Some((n, s)) => {
                rest = n;
                sign = s;
            }
            None => break,
        }
    }
    Some(result)
}
