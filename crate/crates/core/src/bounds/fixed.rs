use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

const FRAC_BITS: u32 = 64;

/// A real number enclosed in `[lo, hi] / 2^64`.
///
/// Roots are truncated into `lo` and rounded up into `hi`, so comparisons against a
/// threshold can pick the conservative end: [`ceil`](Self::ceil) never undershoots.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Fixed {
    lo: u128,
    hi: u128,
}

impl Fixed {
    pub fn from_int(v: u64) -> Self {
        let raw = (v as u128) << FRAC_BITS;
        Fixed { lo: raw, hi: raw }
    }

    /// Encloses `(scaled / n)^{1/root}` where `scaled = 2^{64·root}`.
    fn root_of_reciprocal(n: u64, root: u32) -> Self {
        let scaled = BigUint::from(1u32) << (FRAC_BITS * root) as usize;
        let num = &scaled / n;
        let lo = num.nth_root(root);
        let exact = lo.pow(root) * n == scaled;
        let lo = lo.to_u128().expect("n >= 1 keeps the root below 2^64+1");
        Fixed { lo, hi: if exact { lo } else { lo + 1 } }
    }

    /// `n^{-1/4}`.
    pub fn inv_fourth_root(n: u64) -> Self {
        Self::root_of_reciprocal(n, 4)
    }

    /// `n^{-1/2}`.
    pub fn inv_sqrt(n: u64) -> Self {
        Self::root_of_reciprocal(n, 2)
    }

    /// `√n`.
    pub fn sqrt(n: u64) -> Self {
        let scaled = BigUint::from(n) << (2 * FRAC_BITS) as usize;
        let lo = scaled.sqrt();
        let exact = &lo * &lo == scaled;
        let lo = lo.to_u128().expect("sqrt of u64 fits");
        Fixed { lo, hi: if exact { lo } else { lo + 1 } }
    }

    /// `n^{1/4}`.
    pub fn fourth_root(n: u64) -> Self {
        let scaled = BigUint::from(n) << (4 * FRAC_BITS) as usize;
        let lo = scaled.nth_root(4);
        let exact = lo.pow(4) == scaled;
        let lo = lo.to_u128().expect("fourth root of u64 fits");
        Fixed { lo, hi: if exact { lo } else { lo + 1 } }
    }

    pub fn add(&self, other: &Fixed) -> Fixed {
        Fixed { lo: self.lo + other.lo, hi: self.hi + other.hi }
    }

    pub fn scale(&self, k: u64) -> Fixed {
        Fixed { lo: self.lo * k as u128, hi: self.hi * k as u128 }
    }

    pub fn mul(&self, other: &Fixed) -> Fixed {
        let prod = |a: u128, b: u128| BigUint::from(a) * BigUint::from(b);
        let lo = prod(self.lo, other.lo) >> FRAC_BITS as usize;
        let hi_full = prod(self.hi, other.hi);
        let hi_floor = &hi_full >> FRAC_BITS as usize;
        let hi = if (&hi_floor << FRAC_BITS as usize) == hi_full { hi_floor } else { hi_floor + 1u32 };
        Fixed {
            lo: lo.to_u128().expect("product fits in 64 integer bits"),
            hi: hi.to_u128().expect("product fits in 64 integer bits"),
        }
    }

    /// Smallest integer `>=` the upper end of the enclosure.
    pub fn ceil(&self) -> u128 {
        let whole = self.hi >> FRAC_BITS;
        if self.hi & ((1u128 << FRAC_BITS) - 1) == 0 {
            whole
        } else {
            whole + 1
        }
    }

    /// Largest integer `<=` the lower end of the enclosure.
    pub fn floor(&self) -> u128 {
        self.lo >> FRAC_BITS
    }

    pub fn lower_f64(&self) -> f64 {
        self.lo as f64 / 2f64.powi(FRAC_BITS as i32)
    }

    pub fn upper_f64(&self) -> f64 {
        self.hi as f64 / 2f64.powi(FRAC_BITS as i32)
    }

    pub fn to_f64(&self) -> f64 {
        (self.lower_f64() + self.upper_f64()) / 2.0
    }

    /// Enclosure width in units of `2^-64`.
    pub fn width_raw(&self) -> u128 {
        self.hi - self.lo
    }

    /// True when certainly `value <= self`.
    pub fn certainly_at_least(&self, value: u64) -> bool {
        self.lo >= (value as u128) << FRAC_BITS
    }

    /// True when certainly `value >= self`.
    pub fn certainly_at_most(&self, value: u64) -> bool {
        self.hi <= (value as u128) << FRAC_BITS
    }
}

impl fmt::Debug for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fixed[{:.12}, {:.12}]", self.lower_f64(), self.upper_f64())
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.12}", self.to_f64())
    }
}
