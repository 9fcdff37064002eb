//! Prime generation and the Chebyshev functions θ and ψ.
//!
//! A [`PrimeTable`] holds every prime up to a limit together with the prefix
//! sums of their natural logarithms, so that θ(x) is a binary search plus a
//! lookup and ψ(x) is a short sum of θ at k-th roots.

use crate::error::{Error, Result};

/// Segment length of the sieve, in odd numbers (1 MiB of flags per segment).
const SEGMENT: usize = 1 << 23;

/// Sieved primes with indexed access and prefix sums of `ln p`.
///
/// Immutable once built; all queries are pure and safe to share across
/// threads.
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
    /// `theta_prefix[i]` = Σ_{j ≤ i} ln primes[j], compensated summation.
    theta_prefix: Vec<f64>,
}

impl PrimeTable {
    /// Sieve all primes ≤ `limit` with an unlimited memory budget.
    pub fn sieve(limit: u64) -> Result<Self> {
        Self::sieve_with(limit, u64::MAX, 1)
    }

    /// Sieve with an explicit memory budget (bytes) and worker thread count.
    ///
    /// Segments are independent once the base primes (≤ √limit) are known,
    /// so they can be sieved in parallel and stitched back in order.
    pub fn sieve_with(limit: u64, budget_bytes: u64, threads: usize) -> Result<Self> {
        if limit < 2 {
            return Err(Error::Domain(format!(
                "sieve limit must be ≥ 2, got {limit}"
            )));
        }
        let required = Self::estimated_bytes(limit);
        if required > budget_bytes {
            return Err(Error::MemoryBudget {
                required_bytes: required,
                budget_bytes,
            });
        }

        let root = limit.isqrt();
        let base = simple_sieve(root.max(2));

        // Odd-only segments over (root, limit].
        let seg_count = {
            let span = limit.saturating_sub(root);
            ((span / 2) as usize).div_ceil(SEGMENT)
        };
        let threads = threads.max(1);
        let mut segments: Vec<Vec<u64>> = Vec::new();
        if seg_count > 0 {
            segments.resize_with(seg_count, Vec::new);
            let next = std::sync::atomic::AtomicUsize::new(0);
            let slots = std::sync::Mutex::new(&mut segments);
            std::thread::scope(|scope| {
                for _ in 0..threads.min(seg_count) {
                    scope.spawn(|| loop {
                        let s = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                        if s >= seg_count {
                            break;
                        }
                        let found = sieve_segment(&base, root, limit, s);
                        slots.lock().unwrap()[s] = found;
                    });
                }
            });
        }

        let mut primes: Vec<u64> = base.iter().copied().filter(|&p| p <= limit).collect();
        for seg in segments {
            primes.extend(seg);
        }

        // Kahan summation keeps the accumulated error of the prefix within a
        // few ulp even for the ~6·10^6 terms of a 10^8 sieve.
        let mut theta_prefix = Vec::with_capacity(primes.len());
        let mut sum = 0.0f64;
        let mut carry = 0.0f64;
        for &p in &primes {
            let term = (p as f64).ln() - carry;
            let t = sum + term;
            carry = (t - sum) - term;
            sum = t;
            theta_prefix.push(sum);
        }

        Ok(PrimeTable {
            limit,
            primes,
            theta_prefix,
        })
    }

    /// Rough memory requirement of a table with the given limit.
    pub fn estimated_bytes(limit: u64) -> u64 {
        let n = limit as f64;
        let pi = if n > 20.0 { n / (n.ln() - 1.1) } else { 10.0 };
        (pi as u64) * 16 + (SEGMENT as u64) / 4
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn prime_count(&self) -> usize {
        self.primes.len()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// theta_prefix[i] = θ(primes[i]).
    pub fn theta_prefix(&self) -> &[f64] {
        &self.theta_prefix
    }

    /// Build a table directly from a raw prime list (cache loading path).
    pub(crate) fn from_primes(limit: u64, primes: Vec<u64>) -> Self {
        let mut theta_prefix = Vec::with_capacity(primes.len());
        let mut sum = 0.0f64;
        let mut carry = 0.0f64;
        for &p in &primes {
            let term = (p as f64).ln() - carry;
            let t = sum + term;
            carry = (t - sum) - term;
            sum = t;
            theta_prefix.push(sum);
        }
        PrimeTable {
            limit,
            primes,
            theta_prefix,
        }
    }

    /// The i-th prime, 1-based: `nth_prime(1)` = 2.
    pub fn nth_prime(&self, i: usize) -> Result<u64> {
        if i == 0 {
            return Err(Error::Domain("prime index is 1-based".into()));
        }
        self.primes
            .get(i - 1)
            .copied()
            .ok_or(Error::InsufficientSieve {
                needed: 0,
                limit: self.limit,
            })
    }

    /// Number of primes ≤ x. x equal to a prime is counted.
    pub fn pi_count(&self, x: f64) -> Result<usize> {
        self.check_range(x)?;
        Ok(self.primes.partition_point(|&p| (p as f64) <= x))
    }

    /// θ(x) = Σ_{p ≤ x} ln p, 0 for x < 2.
    pub fn theta(&self, x: f64) -> Result<f64> {
        self.check_range(x)?;
        let k = self.primes.partition_point(|&p| (p as f64) <= x);
        Ok(if k == 0 {
            0.0
        } else {
            self.theta_prefix[k - 1]
        })
    }

    /// θ at an integer argument, without float comparisons.
    pub fn theta_u64(&self, x: u64) -> Result<f64> {
        if x > self.limit {
            return Err(Error::InsufficientSieve {
                needed: x,
                limit: self.limit,
            });
        }
        let k = self.primes.partition_point(|&p| p <= x);
        Ok(if k == 0 {
            0.0
        } else {
            self.theta_prefix[k - 1]
        })
    }

    /// ψ(x) = Σ_{k ≥ 1, x^{1/k} ≥ 2} θ(x^{1/k}).
    ///
    /// Computed on demand from θ at k-th roots; the roots are nudged onto
    /// the exact integer boundary so that prime powers sitting exactly at
    /// x^{1/k} are classified correctly.
    pub fn psi(&self, x: f64) -> Result<f64> {
        self.check_range(x)?;
        if x < 2.0 {
            return Ok(0.0);
        }
        let mut sum = self.theta(x)?;
        let mut k = 2u32;
        loop {
            let r = kth_root(x, k);
            if r < 2.0 {
                break;
            }
            sum += self.theta(r)?;
            k += 1;
        }
        Ok(sum)
    }

    /// Largest prime ≤ x, if any.
    pub fn prev_prime(&self, x: u64) -> Option<u64> {
        let k = self.primes.partition_point(|&p| p <= x);
        if k == 0 {
            None
        } else {
            Some(self.primes[k - 1])
        }
    }

    /// Smallest prime > x.
    pub fn next_prime(&self, x: u64) -> Result<u64> {
        let k = self.primes.partition_point(|&p| p <= x);
        self.primes.get(k).copied().ok_or(Error::InsufficientSieve {
            needed: x + 1,
            limit: self.limit,
        })
    }

    /// 0-based index of a prime in the table, if present.
    pub fn index_of(&self, p: u64) -> Option<usize> {
        self.primes.binary_search(&p).ok()
    }

    fn check_range(&self, x: f64) -> Result<()> {
        if !x.is_finite() || x < 0.0 {
            return Err(Error::Domain(format!(
                "argument must be finite and ≥ 0, got {x}"
            )));
        }
        if x > self.limit as f64 {
            return Err(Error::InsufficientSieve {
                needed: x.ceil() as u64,
                limit: self.limit,
            });
        }
        Ok(())
    }
}

/// Floating k-th root snapped to the integer boundary: if round(r)^k ≤ x
/// for the rounded integer candidate, the root is taken as that integer.
pub(crate) fn kth_root(x: f64, k: u32) -> f64 {
    let r = x.powf(1.0 / k as f64);
    let c = r.round();
    if c >= 2.0 && c <= (1u64 << 40) as f64 {
        let ci = c as u64;
        if pow_checked(ci, k).map(|v| v as f64 <= x).unwrap_or(false) {
            return c;
        }
        if pow_checked(ci - 1, k)
            .map(|v| v as f64 > x)
            .unwrap_or(false)
        {
            return (ci - 1) as f64 - 0.5;
        }
    }
    r
}

pub(crate) fn pow_checked(b: u64, e: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(b)?;
    }
    Some(acc)
}

/// Plain sieve of Eratosthenes for the base primes.
fn simple_sieve(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut is_comp = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !is_comp[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                is_comp[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Sieve the s-th odd-only segment of (root, limit].
fn sieve_segment(base: &[u64], root: u64, limit: u64, s: usize) -> Vec<u64> {
    // Segment covers odd values in (lo, hi].
    let start = root + 1 + (2 * SEGMENT as u64) * s as u64;
    let hi = (start + 2 * SEGMENT as u64 - 1).min(limit);
    if start > limit {
        return Vec::new();
    }
    // First odd candidate ≥ start.
    let first = if start.is_multiple_of(2) {
        start + 1
    } else {
        start
    };
    let len = ((hi.saturating_sub(first)) / 2 + 1) as usize;
    let mut flags = vec![true; len];
    for &p in base.iter().skip(1) {
        // odd base primes only
        let p2 = p * p;
        let mut m = if p2 >= first {
            p2
        } else {
            let mut m = first.div_ceil(p) * p;
            if m % 2 == 0 {
                m += p;
            }
            m
        };
        while m <= hi {
            flags[((m - first) / 2) as usize] = false;
            m += 2 * p;
        }
    }
    let mut out = Vec::new();
    for (i, &f) in flags.iter().enumerate() {
        if f {
            out.push(first + 2 * i as u64);
        }
    }
    out
}
