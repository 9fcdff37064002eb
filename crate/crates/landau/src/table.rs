//! Landau's function g(n) via dynamic programming.
//!
//! g(n) = max{M : ℓ(M) ≤ n}, where ℓ is the additive function with
//! ℓ(p^α) = p^α and ℓ(1) = 0. The table stores log g(n) and the largest
//! prime factor P⁺(g(n)) for every n up to a bound; factorizations are
//! reconstructed on demand rather than stored.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Two float candidates closer than this are re-compared exactly with big
/// integers. Accumulated rounding along a DP path stays below 4e-10, so a
/// float gap larger than the band is trustworthy.
const TIE_EPS: f64 = 1e-9;

/// Safety factor over Grantham's 1.328 for the default prime budget.
const BUDGET_FACTOR: f64 = 1.4;

/// A prime factorization with strictly increasing primes and exponents ≥ 1.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Factorization {
    entries: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn new() -> Self {
        Factorization::default()
    }

    pub fn from_pairs(pairs: &[(u64, u32)]) -> Result<Self> {
        for w in pairs.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::Domain("primes must be strictly increasing".into()));
            }
        }
        if pairs.iter().any(|&(_, a)| a == 0) {
            return Err(Error::Domain("exponents must be ≥ 1".into()));
        }
        Ok(Factorization {
            entries: pairs.to_vec(),
        })
    }

    pub fn entries(&self) -> &[(u64, u32)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// ℓ = Σ p^α over the entries; ℓ of the empty factorization is 0.
    pub fn ell(&self) -> u64 {
        self.entries
            .iter()
            .map(|&(p, a)| pow_u128(p, a))
            .sum::<u128>()
            .try_into()
            .expect("ell overflows u64")
    }

    /// The represented integer as an exact big integer.
    pub fn product(&self) -> BigUint {
        let mut acc = BigUint::one();
        for &(p, a) in &self.entries {
            acc *= BigUint::from(p).pow(a);
        }
        acc
    }

    /// Natural log of the represented integer, compensated summation.
    pub fn log(&self) -> f64 {
        let mut sum = 0.0f64;
        let mut carry = 0.0f64;
        for &(p, a) in &self.entries {
            let term = a as f64 * (p as f64).ln() - carry;
            let t = sum + term;
            carry = (t - sum) - term;
            sum = t;
        }
        sum
    }

    /// Largest prime factor; 1 for the empty factorization.
    pub fn p_plus(&self) -> u64 {
        self.entries.last().map_or(1, |&(p, _)| p)
    }
}

impl std::fmt::Display for Factorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, a)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if a == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{a}")?;
            }
        }
        Ok(())
    }
}

fn pow_u128(b: u64, e: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc *= b as u128;
    }
    acc
}

/// Per-n records of log g(n) and P⁺(g(n)).
pub struct LandauTable {
    n_max: usize,
    prime_budget: u64,
    dp_primes: Vec<u64>,
    log_g: Vec<f64>,
    p_plus: Vec<u32>,
    tie_events: usize,
}

impl LandauTable {
    /// Build the table for 0 ≤ n ≤ n_max with the default prime budget
    /// (least prime above 1.4·√(n_max log n_max)) and no memory cap.
    pub fn build(n_max: usize) -> Result<Self> {
        Self::build_with(n_max, u64::MAX)
    }

    pub fn build_with(n_max: usize, budget_bytes: u64) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::Domain("n_max must be ≥ 1".into()));
        }
        let required = Self::estimated_bytes(n_max);
        if required > budget_bytes {
            return Err(Error::MemoryBudget {
                required_bytes: required,
                budget_bytes,
            });
        }

        let bound = default_budget_bound(n_max);
        let dp_primes = primes_up_to_with_one_past(bound);
        let prime_budget = *dp_primes.last().unwrap();

        let mut prev = vec![0.0f64; n_max + 1];
        let mut curr = vec![0.0f64; n_max + 1];
        let mut prevq = vec![1u32; n_max + 1];
        let mut currq = vec![1u32; n_max + 1];
        let mut alphas = vec![0u8; n_max + 1];
        let mut tie_events = 0usize;

        for i in 0..dp_primes.len() {
            let p = dp_primes[i];
            if p > n_max as u64 {
                break;
            }
            layer_pass(
                &dp_primes[..=i],
                &prev,
                &mut curr,
                &mut alphas,
                &mut tie_events,
                0,
            );
            for n in 0..=n_max {
                currq[n] = if alphas[n] >= 1 { p as u32 } else { prevq[n] };
            }
            std::mem::swap(&mut prev, &mut curr);
            std::mem::swap(&mut prevq, &mut currq);
        }

        let table = LandauTable {
            n_max,
            prime_budget,
            dp_primes,
            log_g: prev,
            p_plus: prevq,
            tie_events,
        };
        // If the largest prime of some g(n) reached the budget, the DP was
        // truncated too early. This must never happen.
        let max_used = table.p_plus.iter().copied().max().unwrap_or(1);
        if u64::from(max_used) >= table.prime_budget {
            return Err(Error::Domain(format!(
                "prime budget {} too small: P⁺(g(n)) reached {max_used}",
                table.prime_budget
            )));
        }
        Ok(table)
    }

    pub fn estimated_bytes(n_max: usize) -> u64 {
        (n_max as u64 + 1) * 33
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn prime_budget(&self) -> u64 {
        self.prime_budget
    }

    /// log g(n); 0 for n = 0, 1.
    pub fn log_g(&self, n: usize) -> f64 {
        self.log_g[n]
    }

    pub fn log_g_all(&self) -> &[f64] {
        &self.log_g
    }

    /// P⁺(g(n)); sentinel 1 for n = 0, 1.
    pub fn p_plus(&self, n: usize) -> u64 {
        u64::from(self.p_plus[n])
    }

    pub fn p_plus_all(&self) -> &[u32] {
        &self.p_plus
    }

    /// How many float comparisons needed an exact big-integer re-check.
    pub fn tie_events(&self) -> usize {
        self.tie_events
    }

    pub(crate) fn from_arrays(
        n_max: usize,
        prime_budget: u64,
        log_g: Vec<f64>,
        p_plus: Vec<u32>,
    ) -> Self {
        let bound = default_budget_bound(n_max);
        let dp_primes = primes_up_to_with_one_past(bound.max(prime_budget));
        LandauTable {
            n_max,
            prime_budget,
            dp_primes,
            log_g,
            p_plus,
            tie_events: 0,
        }
    }

    /// Reconstruct the factorization of g(n) by re-running the DP with
    /// backtracking restricted to the query (checkpointed; no full choice
    /// matrix is ever stored).
    pub fn factorization_of_g(&self, n: usize) -> Result<Factorization> {
        Ok(self.factorizations_of(&[n])?.pop().unwrap())
    }

    /// Batch reconstruction: one checkpointed re-run shared by all targets.
    pub fn factorizations_of(&self, targets: &[usize]) -> Result<Vec<Factorization>> {
        if targets.iter().any(|&t| t > self.n_max) {
            return Err(Error::Domain("reconstruction target beyond n_max".into()));
        }
        let max_t = targets.iter().copied().max().unwrap_or(0);
        let bound = default_budget_bound(max_t.max(1));
        let k = self.dp_primes.partition_point(|&p| p <= bound);
        let prefix = &self.dp_primes[..k.max(1)];
        let facts = reconstruct_raw(prefix, targets, 0);
        // Cross-check against the stored table.
        for (f, &t) in facts.iter().zip(targets) {
            debug_assert!(f.ell() <= t as u64);
            debug_assert!((f.log() - self.log_g[t]).abs() < 1e-6);
        }
        Ok(facts)
    }

    /// g(n) as an exact big integer.
    pub fn g_big(&self, n: usize) -> Result<BigUint> {
        Ok(self.factorization_of_g(n)?.product())
    }

    /// log g(n) recomputed from the reconstructed factorization with
    /// compensated summation (tighter than the DP accumulation).
    pub fn log_g_exact(&self, n: usize) -> Result<f64> {
        Ok(self.factorization_of_g(n)?.log())
    }

    /// Argmax and max of P⁺(g(n))/√(n log n) over [n_lo, n_hi];
    /// ties resolve to the smallest n.
    pub fn p_plus_ratio_max(&self, n_lo: usize, n_hi: usize) -> Result<(usize, f64)> {
        if n_lo < 4 || n_lo > n_hi || n_hi > self.n_max {
            return Err(Error::Domain(format!(
                "ratio scan needs 4 ≤ lo ≤ hi ≤ n_max, got [{n_lo}, {n_hi}]"
            )));
        }
        let mut best_n = n_lo;
        let mut best = f64::MIN;
        for n in n_lo..=n_hi {
            let r = self.p_plus(n) as f64 / sqrt_n_log_n(n);
            if r > best {
                best = r;
                best_n = n;
            }
        }
        Ok((best_n, best))
    }
}

pub fn sqrt_n_log_n(n: usize) -> f64 {
    let x = n as f64;
    (x * x.ln()).sqrt()
}

fn default_budget_bound(n_max: usize) -> u64 {
    let x = n_max as f64;
    let s = if n_max >= 2 { (x * x.ln()).sqrt() } else { 1.0 };
    (BUDGET_FACTOR * s).ceil() as u64 + 1
}

/// All primes ≤ bound plus one more past it (the budget sentinel).
fn primes_up_to_with_one_past(bound: u64) -> Vec<u64> {
    let mut lim = bound + bound / 2 + 64;
    loop {
        let mut primes = sieve_simple(lim);
        if let Some(pos) = primes.iter().position(|&p| p > bound) {
            primes.truncate(pos + 1);
            return primes;
        }
        lim *= 2;
    }
}

fn sieve_simple(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut comp = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !comp[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                comp[j] = true;
                j += i;
            }
        }
    }
    out
}

/// One DP layer: `curr[n] = max over α ≥ 0 with ℓ(p^α) ≤ n of
/// prev[n − ℓ(p^α)] + α log p`, where p is the last prime of the prefix.
/// `alphas` records the chosen exponent per cell. Candidates inside the tie
/// band are compared exactly as big integers.
fn layer_pass(
    prefix: &[u64],
    prev: &[f64],
    curr: &mut [f64],
    alphas: &mut [u8],
    tie_events: &mut usize,
    depth: u8,
) {
    let p = *prefix.last().unwrap();
    let w = (p as f64).ln();
    let n_max = prev.len() - 1;
    curr.copy_from_slice(prev);
    alphas.fill(0);

    let mut cost = p as usize;
    let mut add = w;
    let mut alpha: u32 = 1;
    loop {
        for n in cost..=n_max {
            let cand = prev[n - cost] + add;
            let cur = curr[n];
            if cand > cur + TIE_EPS {
                curr[n] = cand;
                alphas[n] = alpha as u8;
            } else if cand > cur - TIE_EPS {
                *tie_events += 1;
                if exact_prefers_candidate(prefix, n, alphas[n] as u32, alpha, depth) {
                    curr[n] = cand;
                    alphas[n] = alpha as u8;
                }
            }
        }
        alpha += 1;
        add += w;
        match (cost as u64).checked_mul(p) {
            Some(c) if c <= n_max as u64 => cost = c as usize,
            _ => break,
        }
    }
}

/// Exact comparison of two same-layer candidates that tied in floating
/// point. Both are reconstructed as big integers; the larger one wins.
/// g(n) is a unique integer, so distinct candidates always separate.
fn exact_prefers_candidate(prefix: &[u64], n: usize, a_cur: u32, a_new: u32, depth: u8) -> bool {
    assert!(depth < 4, "tie resolution recursed too deep");
    let p = *prefix.last().unwrap();
    let sub = &prefix[..prefix.len() - 1];
    // ℓ(p^0) = 0: exponent 0 keeps the whole budget.
    let cost = |a: u32| {
        if a == 0 {
            0usize
        } else {
            pow_u128(p, a) as usize
        }
    };
    let cells = [n - cost(a_cur), n - cost(a_new)];
    let facts = reconstruct_raw(sub, &cells, depth + 1);
    let v_cur = facts[0].product() * BigUint::from(p).pow(a_cur);
    let v_new = facts[1].product() * BigUint::from(p).pow(a_new);
    v_new > v_cur
}

/// Re-run the DP over exactly `primes` and backtrack the given targets.
///
/// Checkpoint rows are kept every S layers; each segment is recomputed once
/// while its per-cell exponent choices are held, so the total cost is about
/// twice the forward DP and memory stays O(√L · n).
fn reconstruct_raw(primes: &[u64], targets: &[usize], depth: u8) -> Vec<Factorization> {
    let max_t = targets.iter().copied().max().unwrap_or(0);
    let l = primes.partition_point(|&p| p <= max_t as u64);
    let primes = &primes[..l];
    if primes.is_empty() || max_t < 2 {
        return targets.iter().map(|_| Factorization::new()).collect();
    }

    let stride = ((8 * l) as f64).sqrt().ceil() as usize;
    let stride = stride.clamp(1, l);

    // Forward pass saving a checkpoint row before layers 1, S+1, 2S+1, ...
    let mut checkpoints: Vec<Vec<f64>> = Vec::with_capacity(l / stride + 1);
    let mut prev = vec![0.0f64; max_t + 1];
    let mut curr = vec![0.0f64; max_t + 1];
    let mut alphas = vec![0u8; max_t + 1];
    let mut ties = 0usize;
    for i in 0..l {
        if i % stride == 0 {
            checkpoints.push(prev.clone());
        }
        layer_pass(
            &primes[..=i],
            &prev,
            &mut curr,
            &mut alphas,
            &mut ties,
            depth,
        );
        std::mem::swap(&mut prev, &mut curr);
    }

    // Backward pass, one segment at a time.
    let mut cells: Vec<usize> = targets.to_vec();
    let mut rev_entries: Vec<Vec<(u64, u32)>> = vec![Vec::new(); targets.len()];
    let mut seg_alphas: Vec<Vec<u8>> = Vec::new();
    for seg in (0..checkpoints.len()).rev() {
        let base = seg * stride;
        let top = (base + stride).min(l);
        seg_alphas.clear();
        prev.copy_from_slice(&checkpoints[seg]);
        for i in base..top {
            layer_pass(
                &primes[..=i],
                &prev,
                &mut curr,
                &mut alphas,
                &mut ties,
                depth,
            );
            seg_alphas.push(alphas.clone());
            std::mem::swap(&mut prev, &mut curr);
        }
        for i in (base..top).rev() {
            let p = primes[i];
            let row = &seg_alphas[i - base];
            for (t, cell) in cells.iter_mut().enumerate() {
                let a = row[*cell] as u32;
                if a >= 1 {
                    rev_entries[t].push((p, a));
                    *cell -= pow_u128(p, a) as usize;
                }
            }
        }
    }

    rev_entries
        .into_iter()
        .map(|mut e| {
            e.reverse();
            Factorization { entries: e }
        })
        .collect()
}
