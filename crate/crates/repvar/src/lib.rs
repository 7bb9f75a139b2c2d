//! Component counting and numerical dimension probes for the SL2(C)
//! representation varieties of the one-relator groups `<a, b | a^p = b^t>`.
//!
//! The variety R(G) of a two-generator one-relator group sits inside
//! SL2(C) x SL2(C) cut out by the relator equation `m1^p = m2^t`. This
//! crate enumerates the solution sets `Omega(n, ±I) = {A : A^n = ±I}`
//! exactly (by rational eigenvalue angles), derives from them the number
//! of four-dimensional irreducible components of R(G), and checks the
//! dimension claims numerically by sampling points and estimating local
//! dimension from the corank of the Jacobian of the defining equations.

pub mod cli;
pub mod counting;
pub mod omega;
pub mod probe;
pub mod report;
pub mod sl2;
