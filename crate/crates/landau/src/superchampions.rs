//! ℓ-superchampion numbers N_P and their arguments n_P = ℓ(N_P).
//!
//! For a prime P ≥ 5 and ρ = P/log P, the exponent of each prime p in N_P
//! is the largest i with (p^i − p^{i−1})/log p ≤ ρ (0 for p > P). N_P
//! minimizes ℓ(M) − ρ·log M over all integers, which forces g(n_P) = N_P.

use crate::error::{Error, Result};
use crate::primes::PrimeTable;
use crate::table::{Factorization, LandauTable};

/// Relative slack below which the exponent boundary test switches from
/// binary64 to the exact integer comparison P^(p^i − p^{i−1}) vs p^P.
const GUARD: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct Superchampion {
    pub p: u64,
    /// ρ = P/log P.
    pub rho: f64,
    pub exponents: Factorization,
    /// log N_P = Σ α_p log p.
    pub log_n: f64,
    /// n_P = ℓ(N_P) = Σ p^{α_p}.
    pub n_p: u64,
}

/// Does (p^i − p^{i-1})/log p ≤ P/log P hold? Exactly decided: near the
/// float boundary the test becomes the integer comparison P^A ≤ p^P with
/// A = p^i − p^{i-1}.
fn increment_within_rho(p: u64, i: u32, big_p: u64) -> bool {
    let a = pow_u64(p, i) - pow_u64(p, i - 1);
    let lhs = a as f64 / (p as f64).ln();
    let rho = big_p as f64 / (big_p as f64).ln();
    if (lhs - rho).abs() > GUARD * rho.max(1.0) {
        return lhs <= rho;
    }
    // A·log P ≤ P·log p  ⇔  P^A ≤ p^P
    use num_bigint::BigUint;
    BigUint::from(big_p).pow(a as u32) <= BigUint::from(p).pow(big_p as u32)
}

fn pow_u64(b: u64, e: u32) -> u64 {
    let mut acc = 1u64;
    for _ in 0..e {
        acc = acc.checked_mul(b).expect("superchampion exponent overflow");
    }
    acc
}

/// Build N_P for a prime P ≥ 5.
pub fn build_superchampion(primes: &PrimeTable, p: u64) -> Result<Superchampion> {
    if p < 5 || primes.index_of(p).is_none() {
        return Err(Error::Domain(format!(
            "superchampions need a prime P ≥ 5, got {p}"
        )));
    }
    let mut pairs: Vec<(u64, u32)> = Vec::new();
    for &q in primes.primes() {
        if q > p {
            break;
        }
        let mut alpha = 1u32;
        while increment_within_rho(q, alpha + 1, p) {
            alpha += 1;
        }
        pairs.push((q, alpha));
    }
    let exponents = Factorization::from_pairs(&pairs)?;
    let log_n = exponents.log();
    let n_p = exponents.ell();
    Ok(Superchampion {
        p,
        rho: p as f64 / (p as f64).ln(),
        exponents,
        log_n,
        n_p,
    })
}

/// One record per prime 5 ≤ P ≤ p_max.
pub fn enumerate_superchampions(primes: &PrimeTable, p_max: u64) -> Result<Vec<Superchampion>> {
    if primes.limit() < p_max {
        return Err(Error::InsufficientSieve {
            needed: p_max,
            limit: primes.limit(),
        });
    }
    let mut out = Vec::new();
    for &p in primes.primes() {
        if p > p_max {
            break;
        }
        if p >= 5 {
            out.push(build_superchampion(primes, p)?);
        }
    }
    Ok(out)
}

/// All superchampions with n_P ≤ n_max.
pub fn superchampions_up_to_n(primes: &PrimeTable, n_max: u64) -> Result<Vec<Superchampion>> {
    let mut out = Vec::new();
    for &p in primes.primes() {
        if p >= 5 {
            let sc = build_superchampion(primes, p)?;
            if sc.n_p > n_max {
                break;
            }
            out.push(sc);
        }
    }
    Ok(out)
}

/// g(n_P) = N_P (exact factorization match) and θ(P) ≤ log N_P ≤ ψ(P).
pub fn verify_is_g_value(
    sc: &Superchampion,
    table: &LandauTable,
    primes: &PrimeTable,
) -> Result<bool> {
    if sc.n_p > table.n_max() as u64 {
        return Err(Error::Domain(format!(
            "n_P = {} exceeds the table's n_max",
            sc.n_p
        )));
    }
    let n = sc.n_p as usize;
    if (table.log_g(n) - sc.log_n).abs() > 1e-9 {
        return Ok(false);
    }
    let theta = primes.theta_u64(sc.p)?;
    let psi = primes.psi(sc.p as f64)?;
    if !(theta <= sc.log_n + 1e-9 && sc.log_n <= psi + 1e-9) {
        return Ok(false);
    }
    Ok(table.factorization_of_g(n)? == sc.exponents)
}

/// Sign row of the oscillation table.
#[derive(Clone, Copy, Debug)]
pub struct OscillationRow {
    pub p: u64,
    pub n_p: u64,
    pub sign_p_minus_log_n: i8,
    pub sign_p_minus_theta: i8,
    pub sign_psi_minus_p: i8,
}

/// Empirical signs of P − log N_P, P − θ(P) and ψ(P) − P. At desk scale
/// P > log N_P throughout; no sign change is claimed.
pub fn oscillation_signs(
    scs: &[Superchampion],
    primes: &PrimeTable,
) -> Result<Vec<OscillationRow>> {
    scs.iter()
        .map(|sc| {
            let theta = primes.theta_u64(sc.p)?;
            let psi = primes.psi(sc.p as f64)?;
            let pf = sc.p as f64;
            Ok(OscillationRow {
                p: sc.p,
                n_p: sc.n_p,
                sign_p_minus_log_n: sign(pf - sc.log_n),
                sign_p_minus_theta: sign(pf - theta),
                sign_psi_minus_p: sign(psi - pf),
            })
        })
        .collect()
}

fn sign(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}
