//! The six discretization methods as interchangeable strategies.
//!
//! Each method answers two questions: which geometric entities carry its
//! globally coupled unknowns (the carrier), and how many unknowns sit on one
//! such entity for a given degree `k` and ambient dimension `d`. Everything
//! downstream -- closed-form counts, the brute-force oracle, the CLI -- works
//! against the [`Method`] trait and picks implementations from the registry
//! by name.

use std::fmt;

use thiserror::Error;

use crate::poly::RationalPolynomial;
use crate::rational::binomial;

/// Which entities carry the globally coupled unknowns after condensation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Carrier {
    /// All unknowns live on elements (no condensation possible).
    Elements,
    /// Element unknowns condense onto facets.
    Facets,
    /// Unknowns on every entity of dimension below `d`; element interiors
    /// condense away.
    Skeleton,
}

/// Entity role a local dof count refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DofRole {
    Element,
    Facet,
    /// Entity of dimension `m < d`.
    Sub(usize),
}

impl fmt::Display for DofRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DofRole::Element => write!(f, "element"),
            DofRole::Facet => write!(f, "facet"),
            DofRole::Sub(m) => write!(f, "sub({m})"),
        }
    }
}

#[derive(Debug, Error)]
pub enum DofError {
    #[error("method {method} has no {role} unknowns")]
    RoleMismatch { method: &'static str, role: String },
    #[error("degree k must be at least 1, got {0}")]
    DegreeOutOfRange(i64),
    #[error("ambient dimension must be 2 or 3, got {0}")]
    DimensionOutOfRange(usize),
}

/// A discretization method, seen purely through its coupling structure.
pub trait Method: Sync {
    fn name(&self) -> &'static str;

    fn carrier(&self) -> Carrier;

    /// Coupled unknowns on one entity of the given role, exact count.
    /// Binomials with upper argument below the lower truncate to zero.
    fn local_ndof(&self, role: DofRole, d: usize, k: i64) -> Result<i64, DofError>;

    /// The same count as a polynomial in `k`.
    ///
    /// For every role defined here the polynomial agrees with
    /// [`Method::local_ndof`] for all `k >= 1`: the truncated binomials
    /// vanish polynomially at the degrees where truncation would bite
    /// (checked by tests), so no per-entry validity threshold beyond
    /// `k >= 1` is needed.
    fn local_ndof_poly(&self, role: DofRole, d: usize) -> Result<RationalPolynomial, DofError>;

    /// Polynomial count of condensed element-interior unknowns, for
    /// pre-condensation totals. `None` when the method leaves the interior
    /// degree unspecified.
    fn volume_ndof_poly(&self, d: usize) -> Option<RationalPolynomial>;
}

fn check_kd(d: usize, k: i64) -> Result<(), DofError> {
    check_d(d)?;
    if k < 1 {
        return Err(DofError::DegreeOutOfRange(k));
    }
    Ok(())
}

fn check_d(d: usize) -> Result<(), DofError> {
    if !(2..=3).contains(&d) {
        return Err(DofError::DimensionOutOfRange(d));
    }
    Ok(())
}

fn role_mismatch(method: &'static str, role: DofRole) -> DofError {
    DofError::RoleMismatch {
        method,
        role: role.to_string(),
    }
}

/// Standard DG: full polynomial space on each element.
pub struct Dg;

impl Method for Dg {
    fn name(&self) -> &'static str {
        "DG"
    }
    fn carrier(&self) -> Carrier {
        Carrier::Elements
    }
    fn local_ndof(&self, role: DofRole, d: usize, k: i64) -> Result<i64, DofError> {
        check_kd(d, k)?;
        match role {
            DofRole::Element => Ok(binomial(k as i128 + d as i128, d as i128) as i64),
            other => Err(role_mismatch(self.name(), other)),
        }
    }
    fn local_ndof_poly(&self, role: DofRole, d: usize) -> Result<RationalPolynomial, DofError> {
        check_d(d)?;
        match role {
            DofRole::Element => Ok(RationalPolynomial::binomial_in_k(d as i128, d as u32)),
            other => Err(role_mismatch(self.name(), other)),
        }
    }
    fn volume_ndof_poly(&self, _d: usize) -> Option<RationalPolynomial> {
        // element unknowns are the coupled unknowns; nothing extra condenses
        Some(RationalPolynomial::zero())
    }
}

/// Trefftz DG for second-order operators: the element space shrinks to the
/// kernel of the operator, of dimension `C(k+d,d) - C(k-2+d,d)`.
pub struct Tdg2;

impl Method for Tdg2 {
    fn name(&self) -> &'static str {
        "TDG2"
    }
    fn carrier(&self) -> Carrier {
        Carrier::Elements
    }
    fn local_ndof(&self, role: DofRole, d: usize, k: i64) -> Result<i64, DofError> {
        check_kd(d, k)?;
        match role {
            DofRole::Element => {
                let (k, d) = (k as i128, d as i128);
                Ok((binomial(k + d, d) - binomial(k - 2 + d, d)) as i64)
            }
            other => Err(role_mismatch(self.name(), other)),
        }
    }
    fn local_ndof_poly(&self, role: DofRole, d: usize) -> Result<RationalPolynomial, DofError> {
        check_d(d)?;
        match role {
            DofRole::Element => {
                let full = RationalPolynomial::binomial_in_k(d as i128, d as u32);
                let removed = RationalPolynomial::binomial_in_k(d as i128 - 2, d as u32);
                Ok(&full - &removed)
            }
            other => Err(role_mismatch(self.name(), other)),
        }
    }
    fn volume_ndof_poly(&self, _d: usize) -> Option<RationalPolynomial> {
        Some(RationalPolynomial::zero())
    }
}

/// Trefftz DG for first-order operators: kernel dimension
/// `C(k+d,d) - C(k-1+d,d)`.
pub struct Tdg1;

impl Method for Tdg1 {
    fn name(&self) -> &'static str {
        "TDG1"
    }
    fn carrier(&self) -> Carrier {
        Carrier::Elements
    }
    fn local_ndof(&self, role: DofRole, d: usize, k: i64) -> Result<i64, DofError> {
        check_kd(d, k)?;
        match role {
            DofRole::Element => {
                let (k, d) = (k as i128, d as i128);
                Ok((binomial(k + d, d) - binomial(k - 1 + d, d)) as i64)
            }
            other => Err(role_mismatch(self.name(), other)),
        }
    }
    fn local_ndof_poly(&self, role: DofRole, d: usize) -> Result<RationalPolynomial, DofError> {
        check_d(d)?;
        match role {
            DofRole::Element => {
                let full = RationalPolynomial::binomial_in_k(d as i128, d as u32);
                let removed = RationalPolynomial::binomial_in_k(d as i128 - 1, d as u32);
                Ok(&full - &removed)
            }
            other => Err(role_mismatch(self.name(), other)),
        }
    }
    fn volume_ndof_poly(&self, _d: usize) -> Option<RationalPolynomial> {
        Some(RationalPolynomial::zero())
    }
}

/// Hybrid DG: facet unknowns of degree `k`, element unknowns condensed.
pub struct Hdg;

impl Method for Hdg {
    fn name(&self) -> &'static str {
        "HDG"
    }
    fn carrier(&self) -> Carrier {
        Carrier::Facets
    }
    fn local_ndof(&self, role: DofRole, d: usize, k: i64) -> Result<i64, DofError> {
        check_kd(d, k)?;
        match role {
            DofRole::Facet => Ok(binomial(k as i128 + d as i128 - 1, d as i128 - 1) as i64),
            other => Err(role_mismatch(self.name(), other)),
        }
    }
    fn local_ndof_poly(&self, role: DofRole, d: usize) -> Result<RationalPolynomial, DofError> {
        check_d(d)?;
        match role {
            DofRole::Facet => Ok(RationalPolynomial::binomial_in_k(
                d as i128 - 1,
                d as u32 - 1,
            )),
            other => Err(role_mismatch(self.name(), other)),
        }
    }
    fn volume_ndof_poly(&self, d: usize) -> Option<RationalPolynomial> {
        Some(RationalPolynomial::binomial_in_k(d as i128, d as u32))
    }
}

/// HDG with facet unknowns one degree lower (the hybrid high-order variant).
pub struct Hho;

impl Method for Hho {
    fn name(&self) -> &'static str {
        "HHO"
    }
    fn carrier(&self) -> Carrier {
        Carrier::Facets
    }
    fn local_ndof(&self, role: DofRole, d: usize, k: i64) -> Result<i64, DofError> {
        check_kd(d, k)?;
        match role {
            DofRole::Facet => Ok(binomial(k as i128 - 1 + d as i128 - 1, d as i128 - 1) as i64),
            other => Err(role_mismatch(self.name(), other)),
        }
    }
    fn local_ndof_poly(&self, role: DofRole, d: usize) -> Result<RationalPolynomial, DofError> {
        check_d(d)?;
        match role {
            DofRole::Facet => Ok(RationalPolynomial::binomial_in_k(
                d as i128 - 2,
                d as u32 - 1,
            )),
            other => Err(role_mismatch(self.name(), other)),
        }
    }
    fn volume_ndof_poly(&self, _d: usize) -> Option<RationalPolynomial> {
        // the degree of the cell unknowns is not pinned down here, so
        // pre-condensation totals stay undefined
        None
    }
}

/// Virtual element method: one value per vertex, `k-1` moments per edge,
/// `C(k-2+m, m)` moments per dim-`m` sub-entity; element interiors condense.
pub struct Vem;

impl Method for Vem {
    fn name(&self) -> &'static str {
        "VEM"
    }
    fn carrier(&self) -> Carrier {
        Carrier::Skeleton
    }
    fn local_ndof(&self, role: DofRole, d: usize, k: i64) -> Result<i64, DofError> {
        check_kd(d, k)?;
        match role {
            DofRole::Sub(0) => Ok(1),
            DofRole::Sub(m) if m < d => Ok(binomial(k as i128 - 2 + m as i128, m as i128) as i64),
            other => Err(role_mismatch(self.name(), other)),
        }
    }
    fn local_ndof_poly(&self, role: DofRole, d: usize) -> Result<RationalPolynomial, DofError> {
        check_d(d)?;
        match role {
            DofRole::Sub(0) => Ok(RationalPolynomial::constant(crate::rational::int(1))),
            DofRole::Sub(m) if m < d => {
                Ok(RationalPolynomial::binomial_in_k(m as i128 - 2, m as u32))
            }
            other => Err(role_mismatch(self.name(), other)),
        }
    }
    fn volume_ndof_poly(&self, d: usize) -> Option<RationalPolynomial> {
        Some(RationalPolynomial::binomial_in_k(d as i128 - 2, d as u32))
    }
}

/// All methods in presentation order.
pub fn registry() -> [&'static dyn Method; 6] {
    [&Dg, &Tdg2, &Tdg1, &Hdg, &Hho, &Vem]
}

/// Selects a method by name, case-insensitively.
pub fn lookup(name: &str) -> Option<&'static dyn Method> {
    registry()
        .into_iter()
        .find(|m| m.name().eq_ignore_ascii_case(name))
}

/// Dof role of a dim-`dim` entity under a carrier, `None` when such entities
/// carry no coupled unknowns (this encodes the condensed element interior of
/// skeleton methods: `ndof_sub(d) = 0`).
pub fn coupling_role(carrier: Carrier, dim: usize, d: usize) -> Option<DofRole> {
    match carrier {
        Carrier::Elements => (dim == d).then_some(DofRole::Element),
        Carrier::Facets => (d >= 1 && dim == d - 1).then_some(DofRole::Facet),
        Carrier::Skeleton => (dim < d).then_some(DofRole::Sub(dim)),
    }
}

/// Coupled unknowns on one dim-`dim` entity, zero for non-carrier entities.
pub fn coupling_ndof(method: &dyn Method, d: usize, dim: usize, k: i64) -> Result<i64, DofError> {
    match coupling_role(method.carrier(), dim, d) {
        Some(role) => method.local_ndof(role, d, k),
        None => Ok(0),
    }
}

/// Same as [`coupling_ndof`], as a polynomial in `k`.
pub fn coupling_ndof_poly(
    method: &dyn Method,
    d: usize,
    dim: usize,
) -> Result<RationalPolynomial, DofError> {
    match coupling_role(method.carrier(), dim, d) {
        Some(role) => method.local_ndof_poly(role, d),
        None => Ok(RationalPolynomial::zero()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    #[test]
    fn local_counts_match_reference_rows() {
        assert_eq!(Dg.local_ndof(DofRole::Element, 3, 2).unwrap(), 10);
        assert_eq!(Tdg2.local_ndof(DofRole::Element, 2, 5).unwrap(), 11);
        assert_eq!(Vem.local_ndof(DofRole::Sub(1), 2, 1).unwrap(), 0);
        assert_eq!(Hho.local_ndof(DofRole::Facet, 3, 1).unwrap(), 1);
        assert_eq!(Hdg.local_ndof(DofRole::Facet, 2, 3).unwrap(), 4);
        assert_eq!(Vem.local_ndof(DofRole::Sub(2), 3, 3).unwrap(), 3);
    }

    #[test]
    fn polynomial_forms_match_reference_rows() {
        let cases: [(&dyn Method, DofRole, usize, &str); 5] = [
            (&Hdg, DofRole::Facet, 2, "k + 1"),
            (&Tdg2, DofRole::Element, 3, "k^2 + 2*k + 1"),
            (&Tdg1, DofRole::Element, 3, "1/2*k^2 + 3/2*k + 1"),
            (&Hho, DofRole::Facet, 2, "k"),
            (&Vem, DofRole::Sub(2), 3, "1/2*k^2 - 1/2*k"),
        ];
        for (method, role, d, expected) in cases {
            assert_eq!(
                method.local_ndof_poly(role, d).unwrap(),
                parse_polynomial(expected).unwrap(),
                "{} {role} d={d}",
                method.name()
            );
        }
    }

    /// Second-order Trefftz counts are the kernel dimension of the Laplacian:
    /// the drop from degree k to degree k-2 polynomial spaces.
    #[test]
    fn tdg2_equals_dg_difference() {
        for d in [2usize, 3] {
            for k in 1..=10i64 {
                let full = Dg.local_ndof(DofRole::Element, d, k).unwrap();
                let lower = if k > 2 {
                    Dg.local_ndof(DofRole::Element, d, k - 2).unwrap()
                } else {
                    binomial(k as i128 - 2 + d as i128, d as i128) as i64
                };
                assert_eq!(
                    Tdg2.local_ndof(DofRole::Element, d, k).unwrap(),
                    full - lower
                );
            }
        }
    }

    #[test]
    fn hho_is_hdg_one_degree_lower() {
        for d in [2usize, 3] {
            for k in 1..=9i64 {
                assert_eq!(
                    Hho.local_ndof(DofRole::Facet, d, k + 1).unwrap(),
                    Hdg.local_ndof(DofRole::Facet, d, k).unwrap()
                );
            }
        }
    }

    #[test]
    fn element_count_ordering() {
        for d in [2usize, 3] {
            for k in 1..=10i64 {
                let dg = Dg.local_ndof(DofRole::Element, d, k).unwrap();
                let t2 = Tdg2.local_ndof(DofRole::Element, d, k).unwrap();
                let t1 = Tdg1.local_ndof(DofRole::Element, d, k).unwrap();
                assert!(t1 <= t2 && t2 <= dg, "d={d} k={k}");
            }
        }
    }

    /// Polynomial and truncated-binomial routes agree on every role for all
    /// k >= 1, including the degrees where truncation kicks in.
    #[test]
    fn polynomials_agree_with_counts() {
        for method in registry() {
            for d in [2usize, 3] {
                let roles: Vec<DofRole> = match method.carrier() {
                    Carrier::Elements => vec![DofRole::Element],
                    Carrier::Facets => vec![DofRole::Facet],
                    Carrier::Skeleton => (0..d).map(DofRole::Sub).collect(),
                };
                for role in roles {
                    let poly = method.local_ndof_poly(role, d).unwrap();
                    for k in 1..=10i64 {
                        let exact = method.local_ndof(role, d, k).unwrap();
                        assert_eq!(
                            poly.eval(k as i128),
                            crate::rational::int(exact as i128),
                            "{} {role} d={d} k={k}",
                            method.name()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn role_and_degree_errors() {
        assert!(Dg.local_ndof(DofRole::Facet, 2, 1).is_err());
        assert!(Vem.local_ndof(DofRole::Element, 2, 1).is_err());
        assert!(Vem.local_ndof(DofRole::Sub(2), 2, 1).is_err());
        assert!(Hdg.local_ndof(DofRole::Facet, 2, 0).is_err());
        assert!(Dg.local_ndof(DofRole::Element, 4, 1).is_err());
    }

    #[test]
    fn registry_order_and_lookup() {
        let names: Vec<&str> = registry().into_iter().map(|m| m.name()).collect();
        assert_eq!(names, ["DG", "TDG2", "TDG1", "HDG", "HHO", "VEM"]);
        assert_eq!(lookup("hdg").unwrap().name(), "HDG");
        assert!(lookup("CG").is_none());
    }
}
