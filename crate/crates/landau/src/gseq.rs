//! g-couples, y-admissible g-sequences and the greedy optimal construction.
//!
//! A g-sequence is a chain γ_0 = 0 < γ_1 = 1/2 < γ_2 < … with
//! γ_{k+1} < (1 + γ_k²)/2; it induces interval pairs I_k = (α_k, β_k] and
//! J_k = (γ_k, γ_{k+1}] with α_k = 2γ_{k+1} − 1 and β_k = γ_k². The chain is
//! y-admissible when every scaled I_k holds one more prime than the number
//! m_k of J-intervals it meets, which reduces to α_k ≤ η_{m_k+1}(β_k·y)·β_k.
//!
//! Terms are stored as certified rational enclosures ([`RatInterval`]):
//! hand-built sequences are exact (zero width), while the greedy
//! construction works in dyadic interval arithmetic because its terms
//! double in bit size at every step and exact rationals become intractable
//! past length ~22. The η ratios it consumes stay exact throughout.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

use crate::champions::{EtaFamily, RealChampions};
use crate::error::{Error, Result};
use crate::primes::PrimeTable;
use crate::scalar::Dy;

/// Certified enclosure of one sequence term; exact terms have lo = hi.
#[derive(Clone, Debug)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn exact(r: BigRational) -> Self {
        RatInterval {
            lo: r.clone(),
            hi: r,
        }
    }

    fn from_dy(d: &Dy) -> Self {
        let (lo, hi) = d.bounds();
        RatInterval { lo, hi }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn to_f64(&self) -> f64 {
        crate::scalar::ratio_to_f64(&((&self.lo + &self.hi) / BigRational::from(BigInt::from(2))))
    }

    /// ⌊x·10^d⌋ when the enclosure pins it — the truncated decimal digits.
    pub fn trunc_decimals(&self, d: u32) -> Option<i64> {
        use num_traits::ToPrimitive;
        let pow = BigRational::from(BigInt::from(10u32).pow(d));
        let a = (&self.lo * &pow).floor().to_integer();
        let b = (&self.hi * &pow).floor().to_integer();
        if a == b {
            a.to_i64()
        } else {
            None
        }
    }

    fn cmp(&self, other: &RatInterval) -> Option<Ordering> {
        if self.hi < other.lo {
            return Some(Ordering::Less);
        }
        if self.lo > other.hi {
            return Some(Ordering::Greater);
        }
        if self.is_exact() && other.is_exact() {
            return Some(Ordering::Equal);
        }
        None
    }
}

fn undecided(context: &str) -> Error {
    Error::PrecisionExhausted {
        bits: 0,
        context: context.to_string(),
    }
}

/// A couple (I, J) built from 0 < γ < γ' < 1 with γ' < (1 + γ²)/2;
/// I = (2γ'−1, γ²] and J = (γ, γ'].
#[derive(Clone, Debug)]
pub struct GCouple {
    pub gamma: BigRational,
    pub gamma_prime: BigRational,
    pub alpha: BigRational,
    pub beta: BigRational,
}

impl GCouple {
    pub fn new(gamma: BigRational, gamma_prime: BigRational) -> Result<Self> {
        let one = BigRational::one();
        let two = BigRational::from(BigInt::from(2));
        if !(gamma > BigRational::zero() && gamma < gamma_prime && gamma_prime < one) {
            return Err(Error::Domain("need 0 < γ < γ' < 1".into()));
        }
        let cap = (&one + &gamma * &gamma) / &two;
        if gamma_prime >= cap {
            return Err(Error::Domain("need γ' < (1 + γ²)/2".into()));
        }
        let alpha = &two * &gamma_prime - &one;
        let beta = &gamma * &gamma;
        Ok(GCouple {
            gamma,
            gamma_prime,
            alpha,
            beta,
        })
    }
}

/// γ_0, …, γ_{ℓ+1} plus the per-step overlap counts m_k; sequences built by
/// [`algorithm1`] also carry the exact η ratio chosen at each step.
#[derive(Clone, Debug)]
pub struct GSequence {
    gammas: Vec<RatInterval>,
    /// η_{m+1} ratio used to define α_k, for k = 1..=len (greedy runs only).
    ratios: Vec<Ratio<u64>>,
    y: Option<BigRational>,
}

impl GSequence {
    /// Validate and wrap an exact γ-chain (γ_0 = 0 and γ_1 = 1/2 included).
    pub fn from_exact_gammas(gammas: Vec<BigRational>) -> Result<Self> {
        if gammas.len() < 3 {
            return Err(Error::Domain("need at least γ_0, γ_1, γ_2".into()));
        }
        if !gammas[0].is_zero() {
            return Err(Error::Domain("γ_0 must be 0".into()));
        }
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        if gammas[1] != half {
            return Err(Error::Domain("γ_1 must be 1/2".into()));
        }
        let one = BigRational::one();
        let two = BigRational::from(BigInt::from(2));
        for k in 1..gammas.len() - 1 {
            let g = &gammas[k];
            let next = &gammas[k + 1];
            let cap = (&one + g * g) / &two;
            if !(g > &BigRational::zero() && g < &one && g < next && next < &cap) {
                return Err(Error::Domain(format!(
                    "γ_{} violates γ_k < γ_{{k+1}} < (1+γ_k²)/2",
                    k + 1
                )));
            }
        }
        Ok(GSequence {
            gammas: gammas.into_iter().map(RatInterval::exact).collect(),
            ratios: Vec::new(),
            y: None,
        })
    }

    /// Length ℓ: the number of I_k/J_k pairs (gammas run 0..=ℓ+1).
    pub fn len(&self) -> usize {
        self.gammas.len() - 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn y(&self) -> Option<&BigRational> {
        self.y.as_ref()
    }

    pub fn gamma(&self, j: usize) -> &RatInterval {
        &self.gammas[j]
    }

    pub fn gamma_f64(&self, j: usize) -> f64 {
        self.gammas[j].to_f64()
    }

    /// α_k = 2γ_{k+1} − 1.
    pub fn alpha(&self, k: usize) -> RatInterval {
        let two = BigRational::from(BigInt::from(2));
        let one = BigRational::one();
        RatInterval {
            lo: &two * &self.gammas[k + 1].lo - &one,
            hi: &two * &self.gammas[k + 1].hi - &one,
        }
    }

    /// β_k = γ_k².
    pub fn beta(&self, k: usize) -> RatInterval {
        RatInterval {
            lo: &self.gammas[k].lo * &self.gammas[k].lo,
            hi: &self.gammas[k].hi * &self.gammas[k].hi,
        }
    }

    /// The η ratio that defined α_k, when built by the greedy construction.
    pub fn ratio(&self, k: usize) -> Option<Ratio<u64>> {
        self.ratios.get(k - 1).copied()
    }

    /// Indices j with I_k ∩ J_j ≠ ∅ (half-open intersection).
    pub fn overlap_set(&self, k: usize) -> Result<Vec<usize>> {
        let alpha = self.alpha(k);
        let beta = self.beta(k);
        let mut out = Vec::new();
        for j in 0..=self.len() {
            if self.meets(&alpha, &beta, j)? {
                out.push(j);
            }
        }
        Ok(out)
    }

    /// m_k = |overlap_set(k)|.
    pub fn m_k(&self, k: usize) -> Result<u32> {
        Ok(self.overlap_set(k)?.len() as u32)
    }

    /// Does (α, β] meet J_j = (γ_j, γ_{j+1}]? Intersection of half-open
    /// intervals: max(α, γ_j) < min(β, γ_{j+1}).
    fn meets(&self, alpha: &RatInterval, beta: &RatInterval, j: usize) -> Result<bool> {
        let gj = &self.gammas[j];
        let gj1 = &self.gammas[j + 1];
        let left_max = RatInterval {
            lo: alpha.lo.clone().max(gj.lo.clone()),
            hi: alpha.hi.clone().max(gj.hi.clone()),
        };
        let right_min = RatInterval {
            lo: beta.lo.clone().min(gj1.lo.clone()),
            hi: beta.hi.clone().min(gj1.hi.clone()),
        };
        match left_max.cmp(&right_min) {
            Some(Ordering::Less) => Ok(true),
            Some(_) => Ok(false),
            None => Err(undecided(&format!("interval overlap test at j = {j}"))),
        }
    }

    /// No J_j ⊆ I_k, and every I_k meets at most two J_j. Holds for every
    /// uniform sequence; a hand-built sequence may violate it.
    pub fn overlap_at_most_two(&self) -> Result<bool> {
        for k in 1..=self.len() {
            let alpha = self.alpha(k);
            let beta = self.beta(k);
            let mut count = 0;
            for j in 0..=self.len() {
                if self.meets(&alpha, &beta, j)? {
                    count += 1;
                    // J_j ⊆ I_k ⇔ α_k ≤ γ_j and γ_{j+1} ≤ β_k.
                    let a_le = alpha
                        .cmp(&self.gammas[j])
                        .ok_or_else(|| undecided("subset test α_k vs γ_j"))?
                        != Ordering::Greater;
                    let b_ge = self.gammas[j + 1]
                        .cmp(&beta)
                        .ok_or_else(|| undecided("subset test γ_{j+1} vs β_k"))?
                        != Ordering::Greater;
                    if a_le && b_ge {
                        return Ok(false);
                    }
                }
            }
            if count > 2 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Outcome of [`check_admissible`]: either admissible or the first k that
/// fails α_k ≤ η_{m_k+1}(β_k y)·β_k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Admissibility {
    Admissible,
    Fails { k: u32 },
}

/// Definition-level admissibility test at y ≥ 12.
pub fn check_admissible(
    seq: &GSequence,
    y: &BigRational,
    primes: &PrimeTable,
    etas: &mut EtaFamily,
) -> Result<Admissibility> {
    if y < &BigRational::from(BigInt::from(12)) {
        return Err(Error::Domain("admissibility needs y ≥ 12".into()));
    }
    for k in 1..=seq.len() {
        let m = seq.m_k(k)?;
        let table = etas.get_or_build(primes, m + 1)?;
        let beta = seq.beta(k);
        let arg_lo = &beta.lo * y;
        let arg_hi = &beta.hi * y;
        let idx = table.step_index_for(&arg_lo, &arg_hi)?;
        let r = *table.value_at(idx);
        let bound = RatInterval {
            lo: &beta.lo * BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            hi: &beta.hi * BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
        };
        let alpha = seq.alpha(k);
        let ok = match alpha.cmp(&bound) {
            Some(Ordering::Less) | Some(Ordering::Equal) => true,
            Some(Ordering::Greater) => false,
            None => {
                // The greedy construction sets α_k = β_k·r_k exactly; the
                // test then reduces to the exact ratio comparison r_k ≤ r.
                match seq.ratio(k) {
                    Some(rk) => rk <= r,
                    None => return Err(undecided(&format!("admissibility at k = {k}"))),
                }
            }
        };
        if !ok {
            return Ok(Admissibility::Fails { k: k as u32 });
        }
    }
    Ok(Admissibility::Admissible)
}

/// Result of the greedy construction: the longest sequence built, plus the
/// step at which α_k ≤ α_{k−1} stopped it (expected behavior, not an error).
#[derive(Debug)]
pub struct Algorithm1Run {
    pub seq: GSequence,
    pub failure_at: Option<u32>,
}

/// Greedy optimal y-admissible g-sequence (exact η thresholds, dyadic
/// interval terms, precision escalated until every comparison separates).
pub fn algorithm1(
    primes: &PrimeTable,
    etas: &mut EtaFamily,
    y: &BigRational,
    max_len: u32,
) -> Result<Algorithm1Run> {
    let mut scale = 512u32;
    loop {
        match algorithm1_at_scale(primes, etas, y, max_len, scale) {
            Err(Error::PrecisionExhausted { .. }) if scale < 8192 => scale *= 2,
            other => return other,
        }
    }
}

fn algorithm1_at_scale(
    primes: &PrimeTable,
    etas: &mut EtaFamily,
    y: &BigRational,
    max_len: u32,
    scale: u32,
) -> Result<Algorithm1Run> {
    if y < &BigRational::from(BigInt::from(12)) {
        return Err(Error::Domain("algorithm 1 needs y ≥ 12".into()));
    }
    const M_CAP: u32 = 64;

    let mut gammas: Vec<Dy> = vec![Dy::zero(scale), Dy::one_half(scale)];
    let mut ratios: Vec<Ratio<u64>> = Vec::new();
    let mut alpha_prev = Dy::zero(scale); // α_0 = 0
    let mut failure_at = None;

    'steps: for k in 1..=max_len {
        let beta = gammas[k as usize].square();
        let (beta_lo, beta_hi) = beta.bounds();
        let arg_lo = &beta_lo * y;
        let arg_hi = &beta_hi * y;

        let mut m = 1u32;
        loop {
            if m > M_CAP {
                return Err(Error::Domain(format!(
                    "overlap count m exceeded {M_CAP} at step {k}"
                )));
            }
            let table = etas.get_or_build(primes, m + 1)?;
            let idx = table.step_index_for(&arg_lo, &arg_hi)?;
            let r = *table.value_at(idx);
            let alpha = beta.mul_ratio_u64(r);

            match alpha.cmp_dy(&alpha_prev) {
                Some(Ordering::Greater) => {}
                Some(_) => {
                    failure_at = Some(k);
                    break 'steps;
                }
                None => return Err(undecided(&format!("α_{k} vs α_{} separation", k - 1))),
            }

            // Count the J_j = (γ_j, γ_{j+1}] met by (α_k, β_k].
            let mut count = 0u32;
            for j in 0..k as usize {
                let left = alpha.max_with(&gammas[j]);
                let right = beta.min_with(&gammas[j + 1]);
                match left.cmp_dy(&right) {
                    Some(Ordering::Less) => count += 1,
                    Some(_) => {}
                    None => return Err(undecided(&format!("overlap count at step {k}"))),
                }
            }

            if count <= m {
                gammas.push(alpha.add_one_halve());
                ratios.push(r);
                alpha_prev = alpha;
                break;
            }
            m += 1;
        }
    }

    let seq = GSequence {
        gammas: gammas.iter().map(RatInterval::from_dy).collect(),
        ratios,
        y: Some(y.clone()),
    };
    Ok(Algorithm1Run { seq, failure_at })
}

/// D_k = γ_{k+1}·θ_min(y·γ_{k+1}) − k·log(y)/y − (Σ_{j=1}^{k+1} log γ_j)/y,
/// evaluated in binary64.
pub fn compute_dk(seq: &GSequence, y: f64, k: usize, theta_min: &RealChampions) -> Result<f64> {
    if k > seq.len() {
        return Err(Error::Domain(format!("D_{k} needs sequence length ≥ {k}")));
    }
    let g_next = seq.gamma_f64(k + 1);
    let tm = *theta_min.eval_step(y * g_next)?;
    let mut log_sum = 0.0;
    for j in 1..=k + 1 {
        log_sum += seq.gamma_f64(j).ln();
    }
    Ok(g_next * tm - k as f64 * y.ln() / y - log_sum / y)
}

/// Coefficients bounding P⁺(g(n))/√(n log n) for n ≥ n₀ from an
/// admissible sequence: b = 1.05314/D_k always, and
/// b' = (1/D_k)(1 + (log₂ n₀ − 0.975)/(2 log n₀)) once n₀ ≥ 68 745 487.
/// The implied theorem is P⁺(g(n)) ≤ max(a, b)·√(n log n) for n ≥ n₀.
#[derive(Clone, Copy, Debug)]
pub struct PPlusBound {
    pub d_k: f64,
    pub b: f64,
    pub b_prime: Option<f64>,
}

pub fn p_plus_bound_coefficients(
    n0: u64,
    a: f64,
    y: f64,
    seq: &GSequence,
    k: usize,
    theta_min: &RealChampions,
) -> Result<PPlusBound> {
    let x = n0 as f64;
    if !(12.0 <= y && y <= a * (x * x.ln()).sqrt()) {
        return Err(Error::Domain(format!(
            "the coefficient bound needs 12 ≤ y ≤ a·√(n₀ log n₀), got y = {y}"
        )));
    }
    let d_k = compute_dk(seq, y, k, theta_min)?;
    if d_k <= 0.0 {
        return Err(Error::Domain(format!(
            "the coefficient bound needs D_k > 0, got {d_k}"
        )));
    }
    let b = 1.05314 / d_k;
    let b_prime = if n0 >= 68_745_487 {
        Some((1.0 + (x.ln().ln() - 0.975) / (2.0 * x.ln())) / d_k)
    } else {
        None
    };
    Ok(PPlusBound { d_k, b, b_prime })
}

/// Pointwise bound at a known q = P⁺(g(n)): log g(n) divided by
/// θ(qγ_{k+1})/q − k·log(q)/q [− Σ_{j ≤ k+1} log γ_j / q in the strong form].
/// The proposition asserts q = P⁺(g(n)) ≤ this value.
pub fn p_plus_bound_at_q(
    primes: &PrimeTable,
    seq: &GSequence,
    k: usize,
    q: u64,
    log_g_n: f64,
    strong: bool,
) -> Result<f64> {
    let qf = q as f64;
    let g_next = seq.gamma_f64(k + 1);
    let theta = primes.theta(qf * g_next)?;
    let mut den = theta / qf - k as f64 * qf.ln() / qf;
    if strong {
        let mut log_sum = 0.0;
        for j in 1..=k + 1 {
            log_sum += seq.gamma_f64(j).ln();
        }
        den -= log_sum / qf;
    }
    if den <= 0.0 {
        return Err(Error::Domain("bound denominator not positive".into()));
    }
    Ok(log_g_n / den)
}

/// Uniform g-sequence γ_j = (1 + η·γ_{j−1}²)/2 with γ_0 = 0.
///
/// Terms are exact rationals up to `UNIFORM_EXACT_CAP` and certified
/// dyadic enclosures beyond: the term size doubles every step, and past
/// ~12 steps the gcd work inside exact rational arithmetic dominates
/// everything else.
pub const UNIFORM_EXACT_CAP: usize = 12;

pub fn uniform_sequence(eta: &BigRational, j_max: usize) -> Result<GSequence> {
    if !(eta > &BigRational::zero() && eta < &BigRational::one()) {
        return Err(Error::Domain("uniform sequence needs 0 < η < 1".into()));
    }
    let scale = 768u32;
    let two = BigRational::from(BigInt::from(2));
    let mut gammas: Vec<RatInterval> = vec![RatInterval::exact(BigRational::zero())];
    let mut exact = Some(BigRational::zero());
    let mut dy: Option<Dy> = None;
    for j in 1..=j_max + 1 {
        if j <= UNIFORM_EXACT_CAP {
            let g = exact.as_ref().unwrap();
            let next = (BigRational::one() + eta * g * g) / &two;
            gammas.push(RatInterval::exact(next.clone()));
            exact = Some(next);
        } else {
            let cur = dy.get_or_insert_with(|| Dy::from_ratio(exact.as_ref().unwrap(), scale));
            let next = cur.square().mul_big_ratio(eta).add_one_halve();
            gammas.push(RatInterval::from_dy(&next));
            *cur = next;
        }
    }
    Ok(GSequence {
        gammas,
        ratios: Vec::new(),
        y: None,
    })
}

/// Exact uniform γ_0..γ_{j_max} (feasible only for small j_max).
pub fn uniform_gammas_exact(eta: &BigRational, j_max: usize) -> Vec<BigRational> {
    let two = BigRational::from(BigInt::from(2));
    let mut out = vec![BigRational::zero()];
    for _ in 1..=j_max {
        let g = out.last().unwrap();
        out.push((BigRational::one() + eta * g * g) / &two);
    }
    out
}

/// Limit L_ε = 1/(1 + √ε) of the uniform sequence with ε = 1 − η.
pub fn uniform_limit(eta: f64) -> f64 {
    1.0 / (1.0 + (1.0 - eta).sqrt())
}

/// Overlap bound for uniform sequences: every I_k meets at most
/// two J_j and swallows none.
pub fn uniform_overlap_check(eta: &BigRational, j_max: usize) -> Result<bool> {
    let seq = uniform_sequence(eta, j_max)?;
    seq.overlap_at_most_two()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use std::sync::OnceLock;

    fn primes() -> &'static PrimeTable {
        static T: OnceLock<PrimeTable> = OnceLock::new();
        T.get_or_init(|| PrimeTable::sieve(1_100_000).unwrap())
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn gcouple_validation_and_swap_identity() {
        let c = GCouple::new(rat(1, 2), rat(31, 50)).unwrap();
        assert_eq!(c.alpha, rat(12, 50));
        assert_eq!(c.beta, rat(1, 4));
        assert!(GCouple::new(rat(1, 2), rat(7, 10)).is_err()); // γ' ≥ (1+γ²)/2

        // The exchange behind the couple lemma: q' ∈ qI, p < p' ∈ qJ gives
        // ℓ(M) − ℓ(g) = p + p' − q − q' ≤ 0 and M/g = pp'/(qq') > 1.
        // q = 397: qI = (95.28, 99.25] ∋ 97, qJ = (198.5, 246.14] ∋ 199, 211.
        let (q, qp, p1, p2) = (397u64, 97u64, 199u64, 211u64);
        assert!(c.alpha.to_f64().unwrap() * (q as f64) < qp as f64);
        assert!(qp as f64 <= c.beta.to_f64().unwrap() * q as f64);
        assert!(p1 + p2 <= q + qp);
        assert!(p1 * p2 > q * qp);
        let g = crate::table::Factorization::from_pairs(&[(97, 1), (397, 1)]).unwrap();
        let m = crate::table::Factorization::from_pairs(&[(199, 1), (211, 1)]).unwrap();
        let diff = (p1 + p2) as i64 - (q + qp) as i64;
        assert_eq!(m.ell() as i64 - g.ell() as i64, diff);
        assert!(m.product() > g.product());
    }

    #[test]
    fn length_one_sequence_admissibility() {
        let mut etas = EtaFamily::new(1_000_000);
        let y = rat(12, 1);
        // α_1 = η_2(y/4)/4 = η_2(3)/4 = (2/5)/4 = 1/10; γ_2 = 11/20.
        let seq = GSequence::from_exact_gammas(vec![rat(0, 1), rat(1, 2), rat(11, 20)]).unwrap();
        assert_eq!(seq.m_k(1).unwrap(), 1);
        assert_eq!(
            check_admissible(&seq, &y, primes(), &mut etas).unwrap(),
            Admissibility::Admissible
        );
        // Any positive bump of α_1 loses admissibility.
        let seq2 =
            GSequence::from_exact_gammas(vec![rat(0, 1), rat(1, 2), rat(11, 20) + rat(1, 100_000)])
                .unwrap();
        assert_eq!(
            check_admissible(&seq2, &y, primes(), &mut etas).unwrap(),
            Admissibility::Fails { k: 1 }
        );
    }

    #[test]
    fn admissibility_monotone_in_y() {
        let mut etas = EtaFamily::new(1_000_000);
        let seq = GSequence::from_exact_gammas(vec![rat(0, 1), rat(1, 2), rat(11, 20)]).unwrap();
        for dy in [0i64, 7, 100, 5000] {
            let y = rat(12 + dy, 1);
            assert_eq!(
                check_admissible(&seq, &y, primes(), &mut etas).unwrap(),
                Admissibility::Admissible,
                "y = {y}"
            );
        }
    }

    #[test]
    fn algorithm1_first_steps_match_exact_rationals() {
        let mut etas = EtaFamily::new(1_000_000);
        let y = rat(470_339, 100);
        let run = algorithm1(primes(), &mut etas, &y, 6).unwrap();
        assert!(run.failure_at.is_none());
        // Exact recomputation of the first two steps:
        // α_1 = (1/4)·η_2(y/4) = (1/4)·(1321/1361); γ_2 = (1+α_1)/2.
        let a1 = rat(1321, 1361 * 4);
        let g2 = (BigRational::one() + &a1) / rat(2, 1);
        let got = run.seq.gamma(2);
        assert!(got.lo <= g2 && g2 <= got.hi);
        assert_eq!(run.seq.ratio(1).unwrap(), Ratio::new(1321u64, 1361u64));
        // The full exact chain for 6 steps (bit sizes still small) encloses.
        let mut gam = vec![rat(0, 1), rat(1, 2)];
        let mut alpha_prev = rat(0, 1);
        for k in 1..=6usize {
            let beta = &gam[k] * &gam[k];
            let r = run.seq.ratio(k).unwrap();
            let alpha = &beta * rat(*r.numer() as i64, *r.denom() as i64);
            assert!(alpha > alpha_prev);
            gam.push((BigRational::one() + &alpha) / rat(2, 1));
            alpha_prev = alpha;
        }
        for (j, g) in gam.iter().enumerate() {
            let enc = run.seq.gamma(j);
            assert!(&enc.lo <= g && g <= &enc.hi, "γ_{j} enclosure");
        }
        // Its own output passes the definition-level admissibility check.
        assert_eq!(
            check_admissible(&run.seq, &y, primes(), &mut etas).unwrap(),
            Admissibility::Admissible
        );
    }

    #[test]
    fn algorithm1_deterministic() {
        let mut etas = EtaFamily::new(1_000_000);
        let y = rat(470_339, 100);
        let a = algorithm1(primes(), &mut etas, &y, 10).unwrap();
        let b = algorithm1(primes(), &mut etas, &y, 10).unwrap();
        for j in 0..=11 {
            assert_eq!(a.seq.gamma(j).lo, b.seq.gamma(j).lo);
            assert_eq!(a.seq.gamma(j).hi, b.seq.gamma(j).hi);
        }
    }

    #[test]
    fn uniform_sequence_basics() {
        // γ_1 = 1/2 for every η.
        for eta in [rat(1, 2), rat(3, 4), rat(9632, 10_000)] {
            let s = uniform_sequence(&eta, 5).unwrap();
            assert_eq!(s.gamma(1).lo, rat(1, 2));
        }
        // η = 3/4: L = 2/3 and L − γ_j ≤ (2/3)(1/2)^j, exactly in rationals
        // while sizes allow, then via enclosures.
        let eta = rat(3, 4);
        let l = rat(2, 3);
        let exact = uniform_gammas_exact(&eta, UNIFORM_EXACT_CAP);
        for (j, g) in exact.iter().enumerate() {
            let bound = &l * rat(1, 1 << j.min(62));
            assert!(&l - g <= bound, "j = {j}");
        }
        let s = uniform_sequence(&eta, 30).unwrap();
        for j in [20usize, 25, 30] {
            let g = s.gamma(j);
            let bound = l.to_f64().unwrap() * 0.5f64.powi(j as i32);
            assert!(
                l.to_f64().unwrap() - g.to_f64() <= bound * 1.000001,
                "j = {j}"
            );
        }
        // γ_24(0.9632) > 0.8378.
        let s = uniform_sequence(&rat(9632, 10_000), 24).unwrap();
        assert!(s.gamma(24).lo > rat(8378, 10_000));
    }

    #[test]
    fn uniform_increments_identity() {
        // 2(γ_{j+1} − γ_j) = 2√ε·u_j + (1−ε)u_j² with u_j = L − γ_j,
        // exact in rationals when √ε is rational (ε = 1/4 here).
        let eta = rat(3, 4);
        let sqrt_eps = rat(1, 2);
        let l = rat(2, 3);
        let g = uniform_gammas_exact(&eta, UNIFORM_EXACT_CAP);
        for j in 0..g.len() - 1 {
            let u = &l - &g[j];
            let lhs = rat(2, 1) * (&g[j + 1] - &g[j]);
            let rhs = rat(2, 1) * &sqrt_eps * &u + (BigRational::one() - rat(1, 4)) * &u * &u;
            assert_eq!(lhs, rhs, "j = {j}");
        }
        // Beyond the exact cap: certified to interval width at scale 768.
        let s = uniform_sequence(&eta, 30).unwrap();
        for j in 24..30 {
            let u = l.to_f64().unwrap() - s.gamma(j).to_f64();
            let lhs = 2.0 * (s.gamma(j + 1).to_f64() - s.gamma(j).to_f64());
            let rhs = 2.0 * 0.5 * u + 0.75 * u * u;
            assert!((lhs - rhs).abs() < 1e-12, "j = {j}");
        }
    }

    #[test]
    fn uniform_overlap_bound() {
        assert!(uniform_overlap_check(&rat(9632, 10_000), 50).unwrap());
        assert!(uniform_overlap_check(&rat(1, 2), 50).unwrap());
        // Negative control: a legal but non-uniform sequence whose I_7
        // swallows J_2 = (0.53, 0.55].
        let gam = vec![
            rat(0, 1),
            rat(1, 2),
            rat(53, 100),
            rat(55, 100),
            rat(63, 100),
            rat(69, 100),
            rat(73, 100),
            rat(75, 100),
            rat(76, 100),
        ];
        let seq = GSequence::from_exact_gammas(gam).unwrap();
        assert!(!seq.overlap_at_most_two().unwrap());
    }

    #[test]
    fn coefficient_bound_rejects_nonpositive_dk() {
        // A near-stationary chain at y = 12 drives D_3 below zero: the
        // k·log(y)/y term dominates.
        let seq = GSequence::from_exact_gammas(vec![
            rat(0, 1),
            rat(1, 2),
            rat(5_000_001, 10_000_000),
            rat(5_000_002, 10_000_000),
            rat(5_000_003, 10_000_000),
        ])
        .unwrap();
        let tm = crate::champions::build_theta_min(primes(), 10_000).unwrap();
        let d3 = compute_dk(&seq, 12.0, 3, &tm).unwrap();
        assert!(d3 < 0.0, "D_3 = {d3}");
        let err = p_plus_bound_coefficients(100, 1.2, 12.0, &seq, 3, &tm);
        assert!(matches!(err, Err(Error::Domain(_))));
        // Precondition on y itself.
        let err = p_plus_bound_coefficients(100, 1.2, 1.0e9, &seq, 1, &tm);
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn bound_at_q_k0_shape() {
        // k = 0 collapses the sum: bound = log g · q/θ(q/2); at q = 43,
        // n = 215 the proposition's inequality q ≤ bound holds.
        let seq = GSequence::from_exact_gammas(vec![rat(0, 1), rat(1, 2), rat(11, 20)]).unwrap();
        let t = crate::table::LandauTable::build(215).unwrap();
        let b = p_plus_bound_at_q(primes(), &seq, 0, 43, t.log_g(215), false).unwrap();
        let direct = t.log_g(215) * 43.0 / primes().theta(21.5).unwrap();
        assert!((b - direct).abs() < 1e-12);
        assert!(43.0 <= b);
        // The strong form is at least as tight a statement (larger denom).
        let bs = p_plus_bound_at_q(primes(), &seq, 0, 43, t.log_g(215), true).unwrap();
        assert!(bs <= b);
        assert!(43.0 <= bs);
    }
}
