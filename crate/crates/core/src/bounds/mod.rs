//! The sequences `n_k`, `α_k`, the bound functions `f`, `f'`, `f₂`, `f₃`, `f₄`, and the
//! Kneser / theorem-bound checkers that the rest of the crate uses as oracles.
//!
//! Everything except `f₃`/`f₄` is exact: big integers for `n_k`, big rationals for the
//! rest. `f₃`/`f₄` involve `n^{1/4}` and come back as [`Fixed`] enclosures.

mod fixed;

pub use fixed::Fixed;

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::setops::{has_trivial_stabilizer, is_antisymmetric, sigma, stabilizer, sumset, ElementSet};

pub const K_MIN: u64 = 9;

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `n_9 = 1`, `n_k = 2^{k²}` for `k >= 10`.
pub fn n_k(k: u64) -> Result<BigUint> {
    match k {
        k if k < K_MIN => Err(Error::UndefinedIndex(k)),
        K_MIN => Ok(BigUint::one()),
        k => Ok(BigUint::one() << (k * k)),
    }
}

/// `α_9 = 1/64`, `α_k = min{(6/5) α_{k-1}, 1/2 - 1/2^{k-1}}`.
pub fn alpha(k: u64) -> Result<BigRational> {
    if k < K_MIN {
        return Err(Error::UndefinedIndex(k));
    }
    let mut a = rat(1, 64);
    for j in (K_MIN + 1)..=k {
        let grown = &a * rat(6, 5);
        let cap = rat(1, 2) - BigRational::new(BigInt::one(), BigInt::one() << (j - 1));
        a = if grown < cap { grown } else { cap };
    }
    Ok(a)
}

/// Largest `k >= 9` with `n >= 2 n_k`.
pub fn k_of_n(n: &BigUint) -> Result<u64> {
    if *n < BigUint::from(2u32) {
        return Err(Error::BelowDomain(format!("k(n) needs n >= 2, got {n}")));
    }
    // n >= 2 * 2^{k²} iff bits(n) >= k² + 2
    let bits = n.bits();
    let mut k = K_MIN;
    while bits >= (k + 1) * (k + 1) + 2 {
        k += 1;
    }
    Ok(k)
}

pub fn k_of(n: u64) -> Result<u64> {
    k_of_n(&BigUint::from(n))
}

/// `f(n) = α_{k(n)}/2 - 1/n²`.
pub fn f(n: u64) -> Result<BigRational> {
    let k = k_of(n)?;
    let n2 = BigInt::from(n) * BigInt::from(n);
    Ok(alpha(k)? / BigInt::from(2) - BigRational::new(BigInt::one(), n2))
}

/// `f'(n) = f(n) - 1/n²`.
pub fn f_prime(n: u64) -> Result<BigRational> {
    let n2 = BigInt::from(n) * BigInt::from(n);
    Ok(f(n)? - BigRational::new(BigInt::one(), n2))
}

/// `m(n) = ⌊√n⌋`.
pub fn m_of(n: u64) -> u64 {
    n.sqrt()
}

/// `f₂(n) = (1 - 1/m)² f'(m)` with `m = ⌊√n⌋`; needs `m >= 2`.
pub fn f2(n: u64) -> Result<BigRational> {
    let m = m_of(n);
    if m < 2 {
        return Err(Error::BelowDomain(format!("f2 needs floor(sqrt(n)) >= 2, got n={n}")));
    }
    let factor = BigRational::one() - rat(1, m as i64);
    Ok(&factor * &factor * f_prime(m)?)
}

/// `f₄(n) = 1 + 15 n^{-1/4}`.
pub fn f4(n: u64) -> Result<Fixed> {
    if n == 0 {
        return Err(Error::BelowDomain("f4 needs n >= 1".into()));
    }
    Ok(Fixed::from_int(1).add(&Fixed::inv_fourth_root(n).scale(15)))
}

/// `f₃(n) = 2 (f₄(n) + n^{-1/2}) = 2 + 30 n^{-1/4} + 2 n^{-1/2}`.
pub fn f3(n: u64) -> Result<Fixed> {
    Ok(f4(n)?.add(&Fixed::inv_sqrt(n)).scale(2))
}

/// `√n >= 160 n^{1/4}` and `log_{3/2} n <= n^{1/4}`.
pub fn n0_check(n: u64) -> bool {
    // √n >= 160 n^{1/4}  <=>  n >= 160^4, exactly
    if n < 160u64.pow(4) {
        return false;
    }
    log_three_halves_le_fourth_root(n)
}

/// `log_{3/2} n <= n^{1/4}`, i.e. `n <= (3/2)^{n^{1/4}}`.
fn log_three_halves_le_fourth_root(n: u64) -> bool {
    let q = n.nth_root(4) as u32;
    let nb = BigUint::from(n);
    let pow = |e: u32| (BigUint::from(3u32).pow(e), BigUint::from(2u32).pow(e));
    // n^{1/4} >= q: enough that n <= (3/2)^q
    let (t, b) = pow(q);
    if &nb * &b <= t {
        return true;
    }
    // n^{1/4} < q + 1: hopeless when n > (3/2)^{q+1}
    let (t, b) = pow(q + 1);
    if &nb * &b > t {
        return false;
    }
    (n as f64).ln() / 1.5f64.ln() <= (n as f64).powf(0.25)
}

/// Points where `f'(n+1) < f'(n)` on `[lo, hi]`; the growth argument assumes there are none.
pub fn fprime_monotonicity_violations(lo: u64, hi: u64) -> Result<Vec<u64>> {
    let lo = lo.max(2);
    let mut out = Vec::new();
    let mut prev = f_prime(lo)?;
    for n in lo + 1..=hi {
        let cur = f_prime(n)?;
        if cur < prev {
            out.push(n - 1);
        }
        prev = cur;
    }
    Ok(out)
}

/// Cached `(k, n_k, α_k)` rows.
#[derive(Debug, Clone)]
pub struct BoundTable {
    pub k_min: u64,
    pub n_seq: Vec<BigUint>,
    pub alpha_seq: Vec<BigRational>,
}

impl BoundTable {
    pub fn up_to(k_max: u64) -> Result<Self> {
        if k_max < K_MIN {
            return Err(Error::UndefinedIndex(k_max));
        }
        let n_seq = (K_MIN..=k_max).map(n_k).collect::<Result<Vec<_>>>()?;
        let mut alpha_seq = vec![rat(1, 64)];
        for j in (K_MIN + 1)..=k_max {
            let prev = alpha_seq.last().expect("seeded");
            let grown = prev * rat(6, 5);
            let cap = rat(1, 2) - BigRational::new(BigInt::one(), BigInt::one() << (j - 1));
            alpha_seq.push(if grown < cap { grown } else { cap });
        }
        Ok(BoundTable { k_min: K_MIN, n_seq, alpha_seq })
    }

    pub fn k_max(&self) -> u64 {
        self.k_min + self.n_seq.len() as u64 - 1
    }

    pub fn n(&self, k: u64) -> Option<&BigUint> {
        k.checked_sub(self.k_min).and_then(|i| self.n_seq.get(i as usize))
    }

    pub fn alpha(&self, k: u64) -> Option<&BigRational> {
        k.checked_sub(self.k_min).and_then(|i| self.alpha_seq.get(i as usize))
    }

    /// Checks the table invariants: `α_k` nondecreasing and below `1/2`,
    /// `n_k / 2^k >= n_{k-1}` and `n_k > 2^{5k+15}` for `k >= 10`.
    pub fn invariant_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        let half = rat(1, 2);
        for (i, a) in self.alpha_seq.iter().enumerate() {
            let k = self.k_min + i as u64;
            if *a >= half {
                out.push(format!("alpha_{k} >= 1/2"));
            }
            if i > 0 && *a < self.alpha_seq[i - 1] {
                out.push(format!("alpha_{k} < alpha_{}", k - 1));
            }
            if k >= 10 {
                let n = &self.n_seq[i];
                if (n >> k) < self.n_seq[i - 1] {
                    out.push(format!("n_{k}/2^{k} < n_{}", k - 1));
                }
                if *n <= BigUint::one() << (5 * k + 15) {
                    out.push(format!("n_{k} <= 2^(5k+15)"));
                }
            }
        }
        out
    }
}

/// Exact decimal-free rendering `p/q`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone)]
pub struct KneserOutcome {
    pub holds: bool,
    /// `|A_1 + ... + A_r|`
    pub lhs: usize,
    /// `Σ|A_i| - (r-1)|H|`; may be negative.
    pub rhs: i64,
    /// Stabilizer of the full sumset.
    pub h: Subgroup,
    pub sumset: ElementSet,
}

/// Evaluates both sides of `|Σ A_i| >= Σ|A_i| - (r-1)|H|`, `H = stab(Σ A_i)`.
///
/// `holds == false` can only mean a bug in the set machinery.
pub fn kneser_check(sets: &[ElementSet]) -> Result<KneserOutcome> {
    let (first, rest) = sets
        .split_first()
        .ok_or_else(|| Error::KneserHypothesis("no sets given".into()))?;
    if let Some(i) = sets.iter().position(ElementSet::is_empty) {
        return Err(Error::KneserHypothesis(format!("set #{} is empty", i + 1)));
    }
    let mut total = first.clone();
    for s in rest {
        total = sumset(&total, s)?;
    }
    let h = stabilizer(&total);
    let r = sets.len() as i64;
    let sizes: i64 = sets.iter().map(|s| s.len() as i64).sum();
    let rhs = sizes - (r - 1) * h.order() as i64;
    let lhs = total.len();
    Ok(KneserOutcome { holds: lhs as i64 >= rhs, lhs, rhs, h, sumset: total })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    /// `|Σ(A)| >= |A|²/64`
    Thm1,
    /// `|Σ(A)| >= f(|A|) |A|²`
    Thm2,
    /// `|Σ(A)| >= α_k |A|²` for antisymmetric `A` with `|A| >= n_k`
    Thm5 { k: u64 },
}

impl Theorem {
    pub fn name(&self) -> String {
        match self {
            Theorem::Thm1 => "thm1".into(),
            Theorem::Thm2 => "thm2".into(),
            Theorem::Thm5 { k } => format!("thm5(k={k})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremCheck {
    pub applicable: bool,
    pub satisfied: bool,
    pub card: usize,
    pub sigma_size: usize,
    /// `|Σ(A)| / |A|²`; `None` for empty `A`.
    pub ratio: Option<BigRational>,
}

/// Checks one of the quadratic lower bounds on `|Σ(A)|` and whether its hypotheses hold.
pub fn theorem_bound_check(a: &ElementSet, which: Theorem) -> Result<TheoremCheck> {
    let span = sigma(a);
    let card = a.len();
    let size = span.len();
    let base = !a.contains(a.group().zero()) && has_trivial_stabilizer(&span);
    let sq = BigInt::from(card) * BigInt::from(card);
    let lhs = BigRational::from_integer(BigInt::from(size));
    let (applicable, satisfied) = match which {
        Theorem::Thm1 => (base, lhs >= BigRational::new(sq, BigInt::from(64))),
        Theorem::Thm2 => {
            if card < 2 {
                (false, true)
            } else {
                (base, lhs >= f(card as u64)? * sq)
            }
        }
        Theorem::Thm5 { k } => {
            let nk = n_k(k)?;
            let hyp = base && is_antisymmetric(a) && BigUint::from(card) >= nk;
            (hyp, lhs >= alpha(k)? * sq)
        }
    };
    let ratio = (card > 0).then(|| BigRational::new(BigInt::from(size), BigInt::from(card * card)));
    Ok(TheoremCheck { applicable, satisfied, card, sigma_size: size, ratio })
}

impl TheoremCheck {
    pub fn ratio_f64(&self) -> Option<f64> {
        self.ratio.as_ref().map(rational_to_f64)
    }
}
