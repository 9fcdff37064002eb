//! Champion tables for the prime-distribution step functions.
//!
//! Four step functions drive the effective bounds: θ_min (inf of θ(x)/x on
//! tails), θ_d (sup of (1-θ(x)/x)·log²x), η_k (largest λ with ≥ k primes in
//! every (λy, y]), and δ_3 (sup of (1-η_3(x))·log²x). Each one is constant
//! between consecutive "champion" primes, so a table of (champion, value)
//! pairs evaluates the function everywhere below its bootstrap frontier.
//!
//! The frontiers themselves come from effective prime-counting bounds: the
//! builders recompute them from the stated inequalities instead of
//! hard-coding the anchors.

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::primes::PrimeTable;

/// A nondecreasing or nonincreasing step function tabulated by champions.
///
/// `entries[i]` = (champion, value on [champion, next champion)). The last
/// champion (`frontier`) is stored separately: its own step value lies
/// beyond the bootstrap's reach and only the conservative `beyond` bound is
/// known there.
#[derive(Clone, Debug)]
pub struct ChampionTable<V> {
    kind: &'static str,
    entries: Vec<(u64, V)>,
    valid_from: u64,
    frontier: u64,
    bootstrap_bound: u64,
    /// Bound valid at and past the frontier: a floor for increasing kinds,
    /// a cap for decreasing kinds.
    beyond: f64,
}

pub type RealChampions = ChampionTable<f64>;
pub type RatioChampions = ChampionTable<Ratio<u64>>;

impl<V: Clone> ChampionTable<V> {
    pub fn kind(&self) -> &'static str {
        self.kind
    }

    pub fn entries(&self) -> &[(u64, V)] {
        &self.entries
    }

    pub fn valid_from(&self) -> u64 {
        self.valid_from
    }

    /// Last champion found; the step value on [frontier, ∞) is not pinned
    /// by the bootstrap, only bounded by [`Self::beyond_frontier_bound`].
    pub fn frontier(&self) -> u64 {
        self.frontier
    }

    pub fn bootstrap_bound(&self) -> u64 {
        self.bootstrap_bound
    }

    pub fn beyond_frontier_bound(&self) -> f64 {
        self.beyond
    }

    /// Step value at y: the value of the largest champion ≤ y.
    pub fn eval_step(&self, y: f64) -> Result<&V> {
        if y.is_nan() || y < self.valid_from as f64 {
            return Err(self.outside(y));
        }
        if y >= self.frontier as f64 {
            return Err(self.outside(y));
        }
        let k = self.entries.partition_point(|&(c, _)| c as f64 <= y);
        debug_assert!(k > 0);
        Ok(&self.entries[k - 1].1)
    }

    fn outside(&self, at: f64) -> Error {
        Error::OutsideTable {
            kind: self.kind,
            at,
            lo: self.valid_from,
            hi: self.frontier,
        }
    }

    /// Index of the step interval [champion_i, champion_{i+1}) containing a
    /// value known only as a rational interval [lo, hi]. Fails if the
    /// interval straddles a champion.
    pub fn step_index_for(
        &self,
        lo: &num_rational::BigRational,
        hi: &num_rational::BigRational,
    ) -> Result<usize> {
        use num_bigint::BigInt;
        let cmp_c = |c: u64, r: &num_rational::BigRational| {
            // c vs num/den  ⇔  c·den vs num
            (BigInt::from(c) * r.denom()).cmp(r.numer())
        };
        if cmp_c(self.valid_from, lo) == std::cmp::Ordering::Greater {
            return Err(self.outside(ratio_f64(lo)));
        }
        if cmp_c(self.frontier, hi) != std::cmp::Ordering::Greater {
            return Err(self.outside(ratio_f64(hi)));
        }
        let i_lo = self
            .entries
            .partition_point(|&(c, _)| cmp_c(c, lo) != std::cmp::Ordering::Greater);
        let i_hi = self
            .entries
            .partition_point(|&(c, _)| cmp_c(c, hi) != std::cmp::Ordering::Greater);
        if i_lo != i_hi || i_lo == 0 {
            return Err(Error::PrecisionExhausted {
                bits: 0,
                context: format!(
                    "argument interval [{}, {}] straddles a {} champion",
                    ratio_f64(lo),
                    ratio_f64(hi),
                    self.kind
                ),
            });
        }
        Ok(i_lo - 1)
    }

    pub fn value_at(&self, idx: usize) -> &V {
        &self.entries[idx].1
    }
}

fn ratio_f64(r: &num_rational::BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// θ_min(y) = inf_{x ≥ y} θ(x)/x, tabulated on [2, frontier).
///
/// Bootstrap: θ(x)/x ≥ 1 − 2.06/√cutoff for cutoff ≤ x ≤ 10^8 and
/// ≥ 1 − 0.2/log²(10^8) past 10^8, so the infimum below that floor is
/// attained below the cutoff; the champions then follow by descending
/// recurrence on θ(*p)/p.
pub fn build_theta_min(primes: &PrimeTable, cutoff: u64) -> Result<RealChampions> {
    if !(10_000..=100_000_000).contains(&cutoff) {
        return Err(Error::Domain(format!(
            "theta_min cutoff must lie in [10^4, 10^8], got {cutoff}"
        )));
    }
    if primes.limit() < cutoff {
        return Err(Error::InsufficientSieve {
            needed: cutoff,
            limit: primes.limit(),
        });
    }
    let floor_t3 = 1.0 - 2.06 / (cutoff as f64).sqrt();
    let floor_t4 = 1.0 - 0.2 / (1e8f64).ln().powi(2);
    debug_assert!(floor_t3 <= floor_t4);
    let m0 = floor_t3;

    let ps = primes.primes();
    let n_below = ps.partition_point(|&p| p < cutoff);
    // ratio(i) = θ(p before ps[i]) / ps[i]
    let ratio = |i: usize| -> f64 {
        let th = if i == 0 {
            0.0
        } else {
            primes.theta_u64(ps[i - 1]).unwrap()
        };
        th / ps[i] as f64
    };

    let mut idx = None;
    for i in (0..n_below).rev() {
        if ratio(i) < m0 {
            idx = Some(i);
            break;
        }
    }
    let mut cur =
        idx.ok_or_else(|| Error::Domain(format!("no prime below {cutoff} has θ(*p)/p < {m0}")))?;

    let mut rev: Vec<(u64, f64)> = Vec::new();
    let frontier = ps[cur];
    loop {
        let r_cur = ratio(cur);
        let mut found = None;
        for i in (0..cur).rev() {
            if ratio(i) < r_cur {
                found = Some(i);
                break;
            }
        }
        match found {
            Some(i) => {
                rev.push((ps[i], r_cur));
                cur = i;
            }
            None => break,
        }
    }
    rev.reverse();
    Ok(ChampionTable {
        kind: "theta_min",
        entries: rev,
        valid_from: 2,
        frontier,
        bootstrap_bound: cutoff,
        beyond: m0,
    })
}

/// θ_d(y) = sup_{x ≥ y} (1 − θ(x)/x)·log²x, tabulated on [1, frontier).
///
/// On [p_{i-1}, p_i) the sup is H(p_i) = (1 − θ(p_{i-1})/p_i)·log²(p_i), so
/// θ_d(y) = max_{p_i > y} H(p_i). Past the cutoff 3 594 641 the effective
/// bound |θ(x) − x| ≤ 0.2x/log²x caps H at 0.2; champion 1 is the
/// conventional first champion.
pub fn build_theta_d(primes: &PrimeTable, cutoff: u64) -> Result<RealChampions> {
    if cutoff < 3_594_641 {
        return Err(Error::Domain(
            "theta_d cutoff must be ≥ 3594641 for the 0.2/log²x cap".into(),
        ));
    }
    if primes.limit() < cutoff {
        return Err(Error::InsufficientSieve {
            needed: cutoff,
            limit: primes.limit(),
        });
    }
    const CAP: f64 = 0.2;
    let ps = primes.primes();
    let n_below = ps.partition_point(|&p| p < cutoff);
    let h = |i: usize| -> f64 {
        let th = if i == 0 {
            0.0
        } else {
            primes.theta_u64(ps[i - 1]).unwrap()
        };
        let lp = (ps[i] as f64).ln();
        (1.0 - th / ps[i] as f64) * lp * lp
    };

    let mut idx = None;
    for i in (0..n_below).rev() {
        if h(i) > CAP {
            idx = Some(i);
            break;
        }
    }
    let mut cur =
        idx.ok_or_else(|| Error::Domain(format!("no prime below {cutoff} has H > {CAP}")))?;
    let frontier = ps[cur];

    let mut rev: Vec<(u64, f64)> = Vec::new();
    loop {
        let h_cur = h(cur);
        let mut found = None;
        for i in (0..cur).rev() {
            if h(i) > h_cur {
                found = Some(i);
                break;
            }
        }
        match found {
            Some(i) => {
                rev.push((ps[i], h_cur));
                cur = i;
            }
            None => {
                // Conventional first champion 1 carries the value up to the
                // first prime champion.
                rev.push((1, h_cur));
                break;
            }
        }
    }
    rev.reverse();
    Ok(ChampionTable {
        kind: "theta_d",
        entries: rev,
        valid_from: 1,
        frontier,
        bootstrap_bound: cutoff,
        beyond: CAP,
    })
}

/// η_k(x) = min{ p_{i-k}/p_i : p_i > x }, exact rationals, on [p_k, frontier).
///
/// Bootstrap: for x ≥ p_{33609+k-1} the Dusart gap bound gives
/// η_k(x) ≥ 1 − k/(25 log²x); with x0 past that anchor, any ratio at or
/// below the floor (truncated downward to 5 decimals, as a valid rational
/// lower bound) must occur below x0, which pins the frontier champion.
pub fn build_eta(primes: &PrimeTable, k: u32, x0: u64) -> Result<RatioChampions> {
    if k < 1 {
        return Err(Error::Domain("eta requires k ≥ 1".into()));
    }
    if primes.limit() < x0 {
        return Err(Error::InsufficientSieve {
            needed: x0,
            limit: primes.limit(),
        });
    }
    let anchor = primes.nth_prime(33_609 + k as usize - 1)?;
    if x0 < anchor {
        return Err(Error::Domain(format!(
            "eta_{k} bootstrap needs x0 ≥ p_{} = {anchor}, got {x0}",
            33_609 + k as usize - 1
        )));
    }

    let lx = (x0 as f64).ln();
    let floor_f = 1.0 - k as f64 / (25.0 * lx * lx);
    let floor: Ratio<u64> = Ratio::new((floor_f * 1e5).floor() as u64, 100_000);

    let ps = primes.primes();
    let kk = k as usize;
    let n_below = ps.partition_point(|&p| p < x0);
    // 0-based: ratio at position j (prime ps[j], j ≥ k) is ps[j-k]/ps[j].
    let ratio = |j: usize| Ratio::new(ps[j - kk], ps[j]);

    let mut j0 = None;
    for j in (kk..n_below).rev() {
        if ratio(j) <= floor {
            j0 = Some(j);
            break;
        }
    }
    let j0 = j0.ok_or_else(|| {
        Error::Domain(format!(
            "no prime below {x0} has p_{{i-{k}}}/p_i ≤ {floor} — raise x0"
        ))
    })?;
    let frontier = ps[j0];

    // Backward recurrence η(ps[i]) = min(ratio(i+1), η(ps[i+1])) from the
    // frontier predecessor down to p_k.
    let mut eta = vec![Ratio::new(1u64, 1u64); j0];
    eta[j0 - 1] = ratio(j0);
    for i in (kk - 1..j0 - 1).rev() {
        let r = ratio(i + 1);
        eta[i] = if r < eta[i + 1] { r } else { eta[i + 1] };
    }

    let mut entries: Vec<(u64, Ratio<u64>)> = Vec::new();
    entries.push((ps[kk - 1], eta[kk - 1]));
    for i in kk..j0 {
        if eta[i] > eta[i - 1] {
            entries.push((ps[i], eta[i]));
        }
    }

    let kind: &'static str = match k {
        1 => "eta_1",
        2 => "eta_2",
        3 => "eta_3",
        4 => "eta_4",
        5 => "eta_5",
        6 => "eta_6",
        7 => "eta_7",
        8 => "eta_8",
        _ => "eta_k",
    };
    use num_traits::ToPrimitive;
    Ok(ChampionTable {
        kind,
        entries,
        valid_from: ps[kk - 1],
        frontier,
        bootstrap_bound: x0,
        beyond: floor.to_f64().unwrap(),
    })
}

/// δ_3(y) = sup_{x ≥ y} (1 − η_3(x))·log²x = max_{p_i > y} G(p_i) with
/// G(p_i) = (1 − η_3(p_{i-1}))·log²(p_i), on [5, frontier).
///
/// Beyond the η_3 frontier, G is capped by the Dusart bound 3/25 (past the
/// gap anchor) and by (1 − η_3 floor)·log²(anchor) in between.
pub fn build_delta3(primes: &PrimeTable, eta3: &RatioChampions) -> Result<RealChampions> {
    use num_traits::ToPrimitive;
    if eta3.kind() != "eta_3" {
        return Err(Error::Domain("delta3 needs an eta_3 table".into()));
    }
    let anchor = primes.nth_prime(33_609 + 2)?; // p_{33609+3-1} = 396 881
    let cap_dusart = 3.0f64 / 25.0;
    let la = (anchor as f64).ln();
    let cap_mid = (1.0 - eta3.beyond_frontier_bound()) * la * la;
    let cap = cap_dusart.max(cap_mid);

    let ps = primes.primes();
    let e_frontier = eta3.frontier();
    // G is computable for primes p_i with 5 ≤ p_{i-1} < eta3 frontier.
    let n_scan = ps.partition_point(|&p| p <= e_frontier);
    let g = |i: usize| -> Result<f64> {
        let prev = ps[i - 1];
        let eta = eta3.eval_step(prev as f64)?;
        let one_minus = 1.0 - eta.to_f64().unwrap();
        let lp = (ps[i] as f64).ln();
        Ok(one_minus * lp * lp)
    };

    let mut idx = None;
    for i in (3..n_scan).rev() {
        if g(i)? > cap {
            idx = Some(i);
            break;
        }
    }
    let mut cur = idx.ok_or_else(|| Error::Domain("no prime with G above the cap".into()))?;
    let frontier = ps[cur];

    let mut rev: Vec<(u64, f64)> = Vec::new();
    loop {
        let g_cur = g(cur)?;
        let mut found = None;
        for i in (3..cur).rev() {
            if g(i)? > g_cur {
                found = Some(i);
                break;
            }
        }
        match found {
            Some(i) => {
                rev.push((ps[i], g_cur));
                cur = i;
            }
            None => {
                // p_3 = 5 is the conventional first champion.
                if ps[cur] != 5 {
                    rev.push((5, g_cur));
                }
                break;
            }
        }
    }
    rev.reverse();
    Ok(ChampionTable {
        kind: "delta3",
        entries: rev,
        valid_from: 5,
        frontier,
        bootstrap_bound: e_frontier,
        beyond: cap,
    })
}

/// Lazily built family of η_k tables sharing one bootstrap cutoff.
pub struct EtaFamily {
    x0: u64,
    tables: BTreeMap<u32, RatioChampions>,
}

impl EtaFamily {
    pub fn new(x0: u64) -> Self {
        EtaFamily {
            x0,
            tables: BTreeMap::new(),
        }
    }

    pub fn x0(&self) -> u64 {
        self.x0
    }

    pub fn get_or_build(&mut self, primes: &PrimeTable, k: u32) -> Result<&RatioChampions> {
        if !self.tables.contains_key(&k) {
            let t = build_eta(primes, k, self.x0)?;
            self.tables.insert(k, t);
        }
        Ok(&self.tables[&k])
    }

    pub fn get(&self, k: u32) -> Option<&RatioChampions> {
        self.tables.get(&k)
    }
}

/// Prime-gap regime behind a closed-form lower bound for η_k.
#[derive(Clone, Copy, Debug)]
pub enum GapRegime {
    /// Unconditional (Dusart): valid for x ≥ p_{33609+k-1}.
    Dusart,
    /// Under the Riemann hypothesis: valid for x ≥ max(p_k, e²).
    Rh,
    /// Under Cramér's conjecture with constant a: x ≥ max(p_k, e²).
    Cramer(f64),
}

/// Closed-form lower bound on η_k(x) in the given regime.
pub fn eta_lower_bound(primes: &PrimeTable, k: u32, x: f64, regime: GapRegime) -> Result<f64> {
    if k < 1 {
        return Err(Error::Domain("eta requires k ≥ 1".into()));
    }
    let p_k = primes.nth_prime(k as usize)? as f64;
    match regime {
        GapRegime::Dusart => {
            let anchor = primes.nth_prime(33_609 + k as usize - 1)? as f64;
            if x < anchor {
                return Err(Error::Domain(format!(
                    "Dusart bound for eta_{k} needs x ≥ {anchor}, got {x}"
                )));
            }
            let l = x.ln();
            Ok(1.0 - k as f64 / (25.0 * l * l))
        }
        GapRegime::Rh => {
            let lo = p_k.max(std::f64::consts::E * std::f64::consts::E);
            if x < lo {
                return Err(Error::Domain(format!(
                    "RH bound for eta_{k} needs x ≥ {lo}, got {x}"
                )));
            }
            Ok(1.0 - (8.0 * k as f64 / 5.0) * x.ln() / x.sqrt())
        }
        GapRegime::Cramer(a) => {
            if a <= 0.0 {
                return Err(Error::Domain("Cramér constant must be positive".into()));
            }
            let lo = p_k.max(std::f64::consts::E * std::f64::consts::E);
            if x < lo {
                return Err(Error::Domain(format!(
                    "Cramér bound for eta_{k} needs x ≥ {lo}, got {x}"
                )));
            }
            let l = x.ln();
            Ok(1.0 - k as f64 * a * l * l / x)
        }
    }
}

/// Round x down to `d` decimals (matches a table printed "arrondies par
/// défaut").
pub fn round_down(x: f64, d: u32) -> f64 {
    let m = 10f64.powi(d as i32);
    (x * m).floor() / m
}

/// Round x up to `d` decimals ("arrondies par excès").
pub fn round_up(x: f64, d: u32) -> f64 {
    let m = 10f64.powi(d as i32);
    (x * m).ceil() / m
}
