//! Landau's function g(n) — the maximal order of a permutation of S_n —
//! together with its largest prime factor P⁺(g(n)), the champion tables of
//! the prime-distribution step functions θ_min, θ_d, η_k and δ_3, the
//! greedy y-admissible g-sequence construction, ℓ-superchampion numbers,
//! and a verification suite that reproduces the effective bounds at desk
//! scale.

pub mod analytic;
pub mod champions;
pub mod error;
pub mod gseq;
pub mod primes;
pub mod scalar;
pub mod store;
pub mod superchampions;
pub mod table;
pub mod verify;

pub use error::{Error, Result};
pub use primes::PrimeTable;
pub use table::{Factorization, LandauTable};
