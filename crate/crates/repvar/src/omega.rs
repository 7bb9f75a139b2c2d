//! The solution sets Omega(n, ±I) = {A in SL2(C) : A^n = ±I}: exact
//! enumeration of their irreducible components, point sampling on each
//! component, and the finite solver for x^t = m.
//!
//! Component identity is exact: each 2-dimensional component is a
//! conjugation orbit labelled by a reduced rational multiple of pi (the
//! eigenvalue angle), compared as integers. Floats appear only in sampled
//! points.

use std::fmt;

use num_complex::Complex64;

use crate::sl2::{eigen, random_sl2, EigenStructure, Mat2C, Sign, Sl2Error, Tolerances};

type C64 = Complex64;

/// A reduced fraction q = num/den in [0, 1], encoding the eigenvalue
/// ζ = exp(iπq) on the unit circle and hence the trace value 2·cos(πq).
///
/// q = 0 is trace 2 (eigenvalue 1) and q = 1 is trace −2 (eigenvalue −1);
/// everything strictly between labels a regular conjugacy class. Two trace
/// classes are equal iff their reduced fractions are equal — no floats.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TraceClass {
    num: u64,
    den: u64,
}

impl TraceClass {
    /// Reduce num/den. Requires den ≥ 1 and num ≤ den.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den >= 1, "denominator must be positive");
        assert!(num <= den, "angle fraction must lie in [0, 1]");
        let g = gcd(num, den);
        Self {
            num: num / g,
            den: den / g,
        }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    /// The fraction as a float, for sampling and display only.
    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// ζ = exp(iπ·num/den).
    pub fn eigenvalue(&self) -> C64 {
        let theta = std::f64::consts::PI * self.as_f64();
        C64::new(theta.cos(), theta.sin())
    }

    /// tr = ζ + ζ⁻¹ = 2·cos(π·num/den).
    pub fn trace_value(&self) -> f64 {
        2.0 * (std::f64::consts::PI * self.as_f64()).cos()
    }
}

impl PartialOrd for TraceClass {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TraceClass {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // compare num/den exactly by cross-multiplication
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for TraceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// One irreducible piece of Omega(n, ±I): an isolated central point or a
/// 2-dimensional conjugation orbit labelled by its trace class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    IsolatedPlusI,
    IsolatedMinusI,
    Orbit(TraceClass),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OmegaComponent {
    /// The exponent n in A^n = sign·I.
    pub order: u32,
    /// The sign of the central target.
    pub sign: Sign,
    pub kind: ComponentKind,
}

impl OmegaComponent {
    /// Complex dimension: 0 for the central points, 2 for orbits.
    pub fn dim(&self) -> u32 {
        match self.kind {
            ComponentKind::IsolatedPlusI | ComponentKind::IsolatedMinusI => 0,
            ComponentKind::Orbit(_) => 2,
        }
    }

    /// Trace class of the component, with the central points at 0/1 and 1/1.
    pub fn trace_class(&self) -> TraceClass {
        match self.kind {
            ComponentKind::IsolatedPlusI => TraceClass::new(0, 1),
            ComponentKind::IsolatedMinusI => TraceClass::new(1, 1),
            ComponentKind::Orbit(tc) => tc,
        }
    }
}

impl fmt::Display for OmegaComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ComponentKind::IsolatedPlusI => write!(f, "{{+I}}"),
            ComponentKind::IsolatedMinusI => write!(f, "{{-I}}"),
            ComponentKind::Orbit(tc) => write!(f, "Orb({tc})"),
        }
    }
}

/// The complete, exact component list of Omega(n, sign·I), n ≥ 2.
///
/// For sign +1 the admissible eigenvalues are exp(2πik/n): k = 0 is the
/// isolated point +I, 2k = n (n even) the isolated point −I, and the rest
/// pair up under k ↔ n−k into orbits. For sign −1 they are
/// exp(iπ(2k+1)/n): 2k+1 = n (n odd) is the isolated point −I and the rest
/// pair up likewise. The canonical label is the smaller angle in [0, 1],
/// so deduplication keeps exponents below n before reducing the fraction.
/// Isolated points come first, then orbits by increasing fraction.
pub fn enumerate_omega(n: u32, sign: Sign) -> Vec<OmegaComponent> {
    assert!(n >= 2, "order must be at least 2");
    let mut components = Vec::new();
    let mut push = |kind| {
        components.push(OmegaComponent {
            order: n,
            sign,
            kind,
        })
    };
    match sign {
        Sign::Plus => {
            push(ComponentKind::IsolatedPlusI);
            if n.is_multiple_of(2) {
                push(ComponentKind::IsolatedMinusI);
            }
            for k in 1..=((n - 1) / 2) {
                push(ComponentKind::Orbit(TraceClass::new(
                    2 * k as u64,
                    n as u64,
                )));
            }
        }
        Sign::Minus => {
            if !n.is_multiple_of(2) {
                push(ComponentKind::IsolatedMinusI);
            }
            for m in (1..n).step_by(2) {
                push(ComponentKind::Orbit(TraceClass::new(m as u64, n as u64)));
            }
        }
    }
    components
}

/// Closed-form count of the 2-dimensional components of Omega(n, sign·I):
/// (n−1)/2 for odd n with either sign, (n−2)/2 for even n with sign +1,
/// and n/2 for even n with sign −1. Equals the number of orbit entries of
/// [`enumerate_omega`], which the tests check against this formula.
pub fn count_orbit_components(n: u32, sign: Sign) -> u64 {
    assert!(n >= 2, "order must be at least 2");
    let n = n as u64;
    match (sign, n % 2) {
        (Sign::Plus, 1) => (n - 1) / 2,
        (Sign::Plus, 0) => (n - 2) / 2,
        (Sign::Minus, 1) => (n - 1) / 2,
        (Sign::Minus, 0) => n / 2,
        _ => unreachable!(),
    }
}

/// A point on the component: ±I exactly for the isolated kinds, and a
/// seeded random conjugate g·diag(ζ, ζ⁻¹)·g⁻¹ of the model diagonal matrix
/// for orbits.
pub fn sample_point(component: &OmegaComponent, seed: u64) -> Mat2C {
    match component.kind {
        ComponentKind::IsolatedPlusI => Mat2C::identity(),
        ComponentKind::IsolatedMinusI => Sign::Minus.center(),
        ComponentKind::Orbit(tc) => {
            let zeta = tc.eigenvalue();
            let model = Mat2C::diagonal(zeta, zeta.conj());
            model.conjugate_by(&random_sl2(seed, 1.0))
        }
    }
}

/// The solution set of x^t = m in SL2(C).
#[derive(Clone, Debug)]
pub struct PowerFiber {
    pub base: Mat2C,
    pub exponent: u32,
    pub solutions: FiberSolutions,
}

#[derive(Clone, Debug)]
pub enum FiberSolutions {
    /// m = ±I: the solutions are whole Omega sets, positive-dimensional for
    /// exponents above 2.
    Infinite,
    /// At most t + 1 isolated solutions.
    Finite(Vec<Mat2C>),
}

impl PowerFiber {
    pub fn solution_count(&self) -> Option<usize> {
        match &self.solutions {
            FiberSolutions::Infinite => None,
            FiberSolutions::Finite(xs) => Some(xs.len()),
        }
    }
}

/// Solve x^t = m for an SL2 element m, t ≥ 1.
///
/// Central m (within residual tolerance of ±I) yields the `Infinite`
/// marker — those fibers are the Omega sets and are enumerated, not listed.
/// Diagonalizable m = P·diag(λ, λ⁻¹)·P⁻¹ with λ ≠ ±1 has exactly the t
/// solutions P·diag(μ, μ⁻¹)·P⁻¹ over the t-th roots μ of λ.
///
/// Parabolic m = sign·(I + sign·N) with N² = 0 reduces to the unipotent
/// power identity (I + M)^t = I + tM for M² = 0: every solution commutes
/// with m, so x = ε(I + sign·N/t) with ε^t = sign. That gives one solution
/// for odd t, two for even t with trace +2, and — since ε^t = −1 has no
/// solution ε = ±1 for even t — the empty set for even t with trace −2.
pub fn solve_power(m: &Mat2C, t: u32, tol: &Tolerances) -> Result<PowerFiber, Sl2Error> {
    assert!(t >= 1, "exponent must be at least 1");
    let fiber = |solutions| PowerFiber {
        base: *m,
        exponent: t,
        solutions,
    };
    if m.dist(&Sign::Plus.center()) <= tol.residual || m.dist(&Sign::Minus.center()) <= tol.residual
    {
        return Ok(fiber(FiberSolutions::Infinite));
    }
    let solutions = match eigen(m, tol)? {
        EigenStructure::Central { .. } => return Ok(fiber(FiberSolutions::Infinite)),
        EigenStructure::Diagonalizable { lambda, basis } => {
            let root_modulus = lambda.norm().powf(1.0 / t as f64);
            let base_angle = lambda.arg() / t as f64;
            let step = 2.0 * std::f64::consts::PI / t as f64;
            (0..t)
                .map(|j| {
                    let mu = C64::from_polar(root_modulus, base_angle + j as f64 * step);
                    Mat2C::diagonal(mu, mu.inv()).conjugate_by(&basis)
                })
                .collect()
        }
        EigenStructure::Parabolic { sign, nilpart } => {
            let unipotent_root =
                Mat2C::identity() + nilpart.scale(C64::new(sign.scalar() / t as f64, 0.0));
            match (sign, t % 2) {
                (Sign::Plus, 1) => vec![unipotent_root],
                (Sign::Plus, 0) => vec![unipotent_root, -unipotent_root],
                (Sign::Minus, 1) => vec![-unipotent_root],
                (Sign::Minus, 0) => Vec::new(),
                _ => unreachable!(),
            }
        }
    };
    Ok(fiber(FiberSolutions::Finite(solutions)))
}
