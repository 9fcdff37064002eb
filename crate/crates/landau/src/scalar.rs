//! Fixed-scale dyadic interval arithmetic.
//!
//! The g-sequence recurrences square their terms at every step, so exact
//! rationals double in size per step and become unusable after ~22 steps.
//! A [`Dy`] keeps a certified enclosure [lo, hi]/2^scale instead: every
//! operation rounds lo down and hi up, mantissas stay a few hundred bits,
//! and a comparison is accepted only when the enclosures separate.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Interval [lo, hi]/2^scale with 0 ≤ lo ≤ hi.
#[derive(Clone, Debug)]
pub struct Dy {
    lo: BigInt,
    hi: BigInt,
    scale: u32,
}

impl Dy {
    pub fn zero(scale: u32) -> Self {
        Dy {
            lo: BigInt::zero(),
            hi: BigInt::zero(),
            scale,
        }
    }

    pub fn one_half(scale: u32) -> Self {
        let m = BigInt::one() << (scale - 1);
        Dy {
            lo: m.clone(),
            hi: m,
            scale,
        }
    }

    /// Tightest enclosure of a nonnegative rational.
    pub fn from_ratio(r: &BigRational, scale: u32) -> Self {
        assert!(!r.is_negative());
        let num = r.numer() << scale;
        let lo = num.div_floor(r.denom());
        let hi = num.div_ceil(r.denom());
        Dy { lo, hi, scale }
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// Exact width of the enclosure as a float (for diagnostics).
    pub fn width_f64(&self) -> f64 {
        ratio_to_f64(&Ratio::new(
            &self.hi - &self.lo,
            BigInt::one() << self.scale,
        ))
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&Ratio::new(
            &self.lo + &self.hi,
            BigInt::one() << (self.scale + 1),
        ))
    }

    pub fn bounds(&self) -> (BigRational, BigRational) {
        let den: BigInt = BigInt::one() << self.scale;
        (
            Ratio::new(self.lo.clone(), den.clone()),
            Ratio::new(self.hi.clone(), den),
        )
    }

    /// self², operands nonnegative.
    pub fn square(&self) -> Self {
        debug_assert!(!self.lo.is_negative());
        Dy {
            lo: (&self.lo * &self.lo) >> self.scale,
            hi: ceil_shr(&self.hi * &self.hi, self.scale),
            scale: self.scale,
        }
    }

    /// self · (p/q) with p, q > 0.
    pub fn mul_ratio_u64(&self, r: Ratio<u64>) -> Self {
        let p = BigInt::from(*r.numer());
        let q = BigInt::from(*r.denom());
        Dy {
            lo: (&self.lo * &p).div_floor(&q),
            hi: (&self.hi * &p).div_ceil(&q),
            scale: self.scale,
        }
    }

    /// self · r for a nonnegative big rational.
    pub fn mul_big_ratio(&self, r: &BigRational) -> Self {
        assert!(!r.is_negative());
        Dy {
            lo: (&self.lo * r.numer()).div_floor(r.denom()),
            hi: (&self.hi * r.numer()).div_ceil(r.denom()),
            scale: self.scale,
        }
    }

    /// (1 + self)/2 — the γ-from-α step.
    pub fn add_one_halve(&self) -> Self {
        let one = BigInt::one() << self.scale;
        Dy {
            lo: (&self.lo + &one) >> 1,
            hi: ceil_shr(&self.hi + &one, 1),
            scale: self.scale,
        }
    }

    /// 2·self − 1 — the α-from-γ step (exact at fixed scale).
    pub fn double_minus_one(&self) -> Self {
        let one = BigInt::one() << self.scale;
        Dy {
            lo: (&self.lo << 1) - &one,
            hi: (&self.hi << 1) - &one,
            scale: self.scale,
        }
    }

    /// Interval extension of max: [max(lo), max(hi)].
    pub fn max_with(&self, other: &Dy) -> Dy {
        debug_assert_eq!(self.scale, other.scale);
        Dy {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            scale: self.scale,
        }
    }

    /// Interval extension of min: [min(lo), min(hi)].
    pub fn min_with(&self, other: &Dy) -> Dy {
        debug_assert_eq!(self.scale, other.scale);
        Dy {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().min(other.hi.clone()),
            scale: self.scale,
        }
    }

    /// Certified three-way comparison; `None` when the enclosures overlap
    /// without being the same point.
    pub fn cmp_dy(&self, other: &Dy) -> Option<Ordering> {
        debug_assert_eq!(self.scale, other.scale);
        if self.hi < other.lo {
            return Some(Ordering::Less);
        }
        if self.lo > other.hi {
            return Some(Ordering::Greater);
        }
        if self.lo == self.hi && other.lo == other.hi && self.lo == other.lo {
            return Some(Ordering::Equal);
        }
        None
    }

    /// Decimal truncation to `d` digits, when the enclosure pins it.
    pub fn trunc_decimals(&self, d: u32) -> Option<String> {
        let pow10 = BigInt::from(10u32).pow(d);
        let a = (&self.lo * &pow10) >> self.scale;
        let b = (&self.hi * &pow10) >> self.scale;
        if a != b {
            return None;
        }
        let (int, frac) = a.div_rem(&pow10);
        Some(format!(
            "{int}.{frac:0width$}",
            width = d as usize,
            frac = frac
        ))
    }
}

fn ceil_shr(x: BigInt, s: u32) -> BigInt {
    let mask = (BigInt::one() << s) - 1;
    (x + mask) >> s
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn enclosures_round_outward() {
        let x = Dy::from_ratio(&rat(1, 3), 64);
        let (lo, hi) = x.bounds();
        assert!(lo <= rat(1, 3) && rat(1, 3) <= hi);
        assert!(x.width_f64() <= 2.0 / 2f64.powi(64));
    }

    #[test]
    fn ops_enclose_exact_values() {
        let s = 128;
        let third = Dy::from_ratio(&rat(1, 3), s);
        let sq = third.square();
        let (lo, hi) = sq.bounds();
        assert!(lo <= rat(1, 9) && rat(1, 9) <= hi);

        let g = third.add_one_halve();
        let (lo, hi) = g.bounds();
        assert!(lo <= rat(2, 3) && rat(2, 3) <= hi);

        let a = g.double_minus_one();
        let (lo, hi) = a.bounds();
        assert!(lo <= rat(1, 3) && rat(1, 3) <= hi);

        let m = third.mul_ratio_u64(Ratio::new(7, 11));
        let (lo, hi) = m.bounds();
        assert!(lo <= rat(7, 33) && rat(7, 33) <= hi);
    }

    #[test]
    fn comparisons_certify() {
        let s = 96;
        let a = Dy::from_ratio(&rat(1, 3), s);
        let b = Dy::from_ratio(&rat(1, 2), s);
        assert_eq!(a.cmp_dy(&b), Some(Ordering::Less));
        assert_eq!(b.cmp_dy(&a), Some(Ordering::Greater));
        let h = Dy::one_half(s);
        assert_eq!(h.cmp_dy(&Dy::one_half(s)), Some(Ordering::Equal));
        // 1/3 against itself: overlapping non-point enclosures stay honest.
        assert_eq!(a.cmp_dy(&Dy::from_ratio(&rat(1, 3), s)), None);
    }

    #[test]
    fn truncated_digits() {
        let x = Dy::from_ratio(&rat(2, 3), 128);
        assert_eq!(x.trunc_decimals(4).unwrap(), "0.6666");
        let h = Dy::one_half(64);
        assert_eq!(h.trunc_decimals(6).unwrap(), "0.500000");
    }

    #[test]
    fn error_stays_bounded_over_iteration() {
        // 100 squaring/affine rounds at scale 256 keep the width tiny.
        let mut x = Dy::from_ratio(&rat(1, 2), 256);
        for _ in 0..100 {
            x = x
                .square()
                .mul_ratio_u64(Ratio::new(999_983, 1_000_003))
                .add_one_halve();
        }
        assert!(x.width_f64() < 2f64.powi(-150));
    }
}
