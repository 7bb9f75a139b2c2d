//! Counting the 4-dimensional irreducible components of the representation
//! variety of `<a, b | a^p = b^t>`, three independent ways, together with
//! the full product decomposition of the central locus and the torus-knot
//! genus correspondence.
//!
//! The three counting routes are kept as distinct code paths on purpose:
//! the simplified closed form, the unsimplified per-parity expressions it
//! was derived from, and a direct census of orbit-pair products. Collapsing
//! them would make their agreement a tautology instead of a check.
//! Everything here is integer arithmetic; no floats.

use std::fmt;

use thiserror::Error;

use crate::omega::{enumerate_omega, gcd, ComponentKind, OmegaComponent};
use crate::sl2::Sign;

#[derive(Debug, Error)]
pub enum CountingError {
    #[error("group parameters must both be at least 2, got p = {p}, t = {t}")]
    InvalidParams { p: u32, t: u32 },
    #[error("genus is defined for coprime exponents only, gcd({p}, {t}) = {gcd}")]
    NotCoprime { p: u32, t: u32, gcd: u64 },
}

/// The exponents (p, t) of the relator a^p = b^t, both at least 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupParams {
    p: u32,
    t: u32,
}

impl GroupParams {
    pub fn new(p: u32, t: u32) -> Result<Self, CountingError> {
        if p < 2 || t < 2 {
            return Err(CountingError::InvalidParams { p, t });
        }
        Ok(Self { p, t })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// Swap the two exponents (the presentation is symmetric in them).
    pub fn swapped(&self) -> Self {
        Self {
            p: self.t,
            t: self.p,
        }
    }

    pub fn parity_case(&self) -> ParityCase {
        if self.p.is_multiple_of(2) && self.t.is_multiple_of(2) {
            ParityCase::BothEven
        } else {
            ParityCase::OddCase
        }
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p = {}, t = {})", self.p, self.t)
    }
}

/// Which branch of the closed-form count applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityCase {
    BothEven,
    OddCase,
}

impl ParityCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            ParityCase::BothEven => "both-even",
            ParityCase::OddCase => "odd-case",
        }
    }
}

/// Closed-form number of 4-dimensional irreducible components:
/// ((p−2)(t−2) + pt)/4 when both exponents are even, (p−1)(t−1)/2 when at
/// least one is odd. Divisibility is asserted, never floored away.
pub fn c4(params: GroupParams) -> u64 {
    // u128 intermediates: the numerators overflow u64 near the top of u32
    let (p, t) = (params.p as u128, params.t as u128);
    let count = match params.parity_case() {
        ParityCase::BothEven => {
            let numerator = (p - 2) * (t - 2) + p * t;
            assert!(
                numerator.is_multiple_of(4),
                "both-even numerator {numerator} not divisible by 4"
            );
            numerator / 4
        }
        ParityCase::OddCase => {
            let numerator = (p - 1) * (t - 1);
            assert!(
                numerator.is_multiple_of(2),
                "odd-case numerator {numerator} not divisible by 2"
            );
            numerator / 2
        }
    };
    u64::try_from(count).expect("component count fits in u64")
}

/// The unsimplified per-parity component sums the closed form condenses:
/// each term is (number of orbits of the first factor) × (number of orbits
/// of the second), one term per central sign. Kept verbatim so the
/// "elementary algebra" simplification is machine-checked against [`c4`]
/// rather than trusted. The even/odd mixed case reuses the odd/even
/// expression with the exponents relabelled, as the symmetry of the
/// presentation allows.
pub fn c4_case_expressions(params: GroupParams) -> u64 {
    let (p, t) = (params.p as u128, params.t as u128);
    let count = match (p % 2, t % 2) {
        (0, 0) => ((p - 2) / 2) * ((t - 2) / 2) + (p / 2) * (t / 2),
        (1, 1) => ((p - 1) / 2) * ((t - 1) / 2) + ((p - 1) / 2) * ((t - 1) / 2),
        (1, 0) => ((p - 1) / 2) * ((t - 2) / 2) + ((p - 1) / 2) * (t / 2),
        (0, 1) => ((t - 1) / 2) * ((p - 2) / 2) + ((t - 1) / 2) * (p / 2),
        _ => unreachable!(),
    };
    u64::try_from(count).expect("component count fits in u64")
}

/// Enumeration oracle: count the dimension-4 products directly from the
/// explicit component lists of the power equations, with no closed form
/// anywhere on the path.
pub fn c4_oracle(params: GroupParams) -> u64 {
    let orbit_count = |n: u32, sign: Sign| {
        enumerate_omega(n, sign)
            .iter()
            .filter(|comp| matches!(comp.kind, ComponentKind::Orbit(_)))
            .count() as u64
    };
    orbit_count(params.p, Sign::Plus) * orbit_count(params.t, Sign::Plus)
        + orbit_count(params.p, Sign::Minus) * orbit_count(params.t, Sign::Minus)
}

/// Whether a product piece is one of the components the count asserts to be
/// 4-dimensional and maximal, or a lower-dimensional piece whose maximality
/// inside the full variety is left open.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Maximality {
    Asserted4Dim,
    Unknown,
}

/// One product piece of the central locus {(m1, m2) : m1^p = ±I}:
/// a pair of components of the two power equations sharing a sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductComponent {
    pub sign: Sign,
    pub left: OmegaComponent,
    pub right: OmegaComponent,
}

impl ProductComponent {
    pub fn dim(&self) -> u32 {
        self.left.dim() + self.right.dim()
    }

    pub fn maximality(&self) -> Maximality {
        if self.dim() == 4 {
            Maximality::Asserted4Dim
        } else {
            Maximality::Unknown
        }
    }
}

/// An ordered pair of 2-dimensional orbit components with a shared sign:
/// one 4-dimensional component of the representation variety.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FourDimComponent {
    pub sign: Sign,
    pub left: OmegaComponent,
    pub right: OmegaComponent,
}

impl fmt::Display for FourDimComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} x {} (sign {})", self.left, self.right, self.sign)
    }
}

/// The full product decomposition of the central locus: the Cartesian
/// product of component lists for each sign, the +1 block first, factors in
/// enumeration order (isolated points before orbits, orbits by increasing
/// trace fraction). Exactly [`c4`] of the entries have dimension 4.
pub fn decompose_central_locus(params: GroupParams) -> Vec<ProductComponent> {
    let mut out = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        let left = enumerate_omega(params.p, sign);
        let right = enumerate_omega(params.t, sign);
        for l in &left {
            for r in &right {
                out.push(ProductComponent {
                    sign,
                    left: *l,
                    right: *r,
                });
            }
        }
    }
    out
}

/// The dimension-4 entries of [`decompose_central_locus`], in the same order.
pub fn four_dim_components(params: GroupParams) -> Vec<FourDimComponent> {
    decompose_central_locus(params)
        .into_iter()
        .filter(|sc| sc.dim() == 4)
        .map(|sc| FourDimComponent {
            sign: sc.sign,
            left: sc.left,
            right: sc.right,
        })
        .collect()
}

/// Genus of the (p, t) torus knot, (p−1)(t−1)/2, defined when the exponents
/// are coprime. Coprimality forces at least one exponent odd, so this always
/// coincides with the odd-case component count.
pub fn genus(params: GroupParams) -> Result<u64, CountingError> {
    let g = gcd(params.p as u64, params.t as u64);
    if g != 1 {
        return Err(CountingError::NotCoprime {
            p: params.p,
            t: params.t,
            gcd: g,
        });
    }
    let (p, t) = (params.p as u128, params.t as u128);
    Ok(u64::try_from((p - 1) * (t - 1) / 2).expect("genus fits in u64"))
}
