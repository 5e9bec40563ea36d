//! Finite abelian groups `Z_{n_1} x ... x Z_{n_k}`, their elements, subgroups and quotients.
//!
//! Elements are addressed by a dense mixed-radix index, coordinate 0 varying fastest:
//! `index = sum_i coords[i] * prod_{j<i} n_j`. Every set in the crate is a bitset over
//! this index space.

mod subgroup;

pub use subgroup::{all_subgroups, generated_subgroup, quotient, QuotientView, Subgroup};

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default cap on `|G|`; bitsets stay at or below 2 MiB.
pub const DEFAULT_MAX_ORDER: usize = 1 << 24;

#[derive(Debug)]
struct Inner {
    factors: Vec<u64>,
    strides: Vec<usize>,
    order: usize,
}

/// A finite abelian group given as an ordered product of cyclic factors.
///
/// Cheap to clone; all clones share the same factor table.
#[derive(Clone)]
pub struct GroupSpec(Arc<Inner>);

/// An element of a [`GroupSpec`], identified by its mixed-radix index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(pub(crate) usize);

impl Element {
    pub const ZERO: Element = Element(0);

    pub fn index(self) -> usize {
        self.0
    }
}

/// Builds a group with the default order cap.
pub fn make_group(factors: &[u64]) -> Result<GroupSpec> {
    GroupSpec::with_cap(factors, DEFAULT_MAX_ORDER)
}

impl GroupSpec {
    pub fn new(factors: &[u64]) -> Result<Self> {
        make_group(factors)
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        make_group(&[n])
    }

    pub fn with_cap(factors: &[u64], cap: usize) -> Result<Self> {
        let mut order: u128 = 1;
        let mut strides = Vec::with_capacity(factors.len());
        for &n in factors {
            if n == 0 {
                return Err(Error::InvalidFactor(n));
            }
            strides.push(order as usize);
            order = order.saturating_mul(n as u128);
            if order > cap as u128 {
                return Err(Error::GroupTooLarge { order, cap });
            }
        }
        Ok(GroupSpec(Arc::new(Inner {
            factors: factors.to_vec(),
            strides,
            order: order as usize,
        })))
    }

    pub fn factors(&self) -> &[u64] {
        &self.0.factors
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn rank(&self) -> usize {
        self.0.factors.len()
    }

    pub(crate) fn strides(&self) -> &[usize] {
        &self.0.strides
    }

    pub fn zero(&self) -> Element {
        Element(0)
    }

    pub fn is_cyclic(&self) -> bool {
        self.rank() <= 1
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.order()).map(Element)
    }

    pub fn element(&self, index: usize) -> Result<Element> {
        if index < self.order() {
            Ok(Element(index))
        } else {
            Err(Error::InvalidElement(format!(
                "index {index} out of range for group of order {}",
                self.order()
            )))
        }
    }

    pub fn check(&self, x: Element) -> Result<Element> {
        self.element(x.0)
    }

    /// Element with the given coordinates; each must lie in `[0, n_i)`.
    pub fn from_coords(&self, coords: &[u64]) -> Result<Element> {
        if coords.len() != self.rank() {
            return Err(Error::InvalidElement(format!(
                "expected {} coordinates, got {}",
                self.rank(),
                coords.len()
            )));
        }
        let mut index = 0usize;
        for ((&c, &n), &s) in coords.iter().zip(self.factors()).zip(self.strides()) {
            if c >= n {
                return Err(Error::InvalidElement(format!("coordinate {c} not in [0, {n})")));
            }
            index += c as usize * s;
        }
        Ok(Element(index))
    }

    /// Like [`from_coords`](Self::from_coords) but reduces arbitrary integers mod `n_i`.
    pub fn from_residues(&self, coords: &[i64]) -> Result<Element> {
        if coords.len() != self.rank() {
            return Err(Error::InvalidElement(format!(
                "expected {} coordinates, got {}",
                self.rank(),
                coords.len()
            )));
        }
        let reduced: Vec<u64> = coords
            .iter()
            .zip(self.factors())
            .map(|(&c, &n)| c.rem_euclid(n as i64) as u64)
            .collect();
        self.from_coords(&reduced)
    }

    pub fn coords(&self, x: Element) -> Vec<u64> {
        let mut rest = x.0;
        self.factors()
            .iter()
            .map(|&n| {
                let c = rest % n as usize;
                rest /= n as usize;
                c as u64
            })
            .collect()
    }

    #[inline]
    pub fn add(&self, x: Element, y: Element) -> Element {
        if let [n] = self.factors() {
            let n = *n as usize;
            let s = x.0 + y.0;
            return Element(if s >= n { s - n } else { s });
        }
        let (mut a, mut b, mut out) = (x.0, y.0, 0usize);
        for (&n, &s) in self.factors().iter().zip(self.strides()) {
            let n = n as usize;
            let mut c = a % n + b % n;
            if c >= n {
                c -= n;
            }
            out += c * s;
            a /= n;
            b /= n;
        }
        Element(out)
    }

    #[inline]
    pub fn neg(&self, x: Element) -> Element {
        if let [n] = self.factors() {
            let n = *n as usize;
            return Element(if x.0 == 0 { 0 } else { n - x.0 });
        }
        let (mut a, mut out) = (x.0, 0usize);
        for (&n, &s) in self.factors().iter().zip(self.strides()) {
            let n = n as usize;
            let c = a % n;
            out += ((n - c) % n) * s;
            a /= n;
        }
        Element(out)
    }

    #[inline]
    pub fn sub(&self, x: Element, y: Element) -> Element {
        self.add(x, self.neg(y))
    }

    /// `k * x` for any integer `k`; negative multiples go through negation.
    pub fn smul(&self, k: i64, x: Element) -> Element {
        let coords = self.coords(x);
        let scaled: Vec<u64> = coords
            .iter()
            .zip(self.factors())
            .map(|(&c, &n)| {
                let n = n as i128;
                ((k as i128).rem_euclid(n) * c as i128 % n) as u64
            })
            .collect();
        // factors always accept reduced residues
        self.from_coords(&scaled).expect("reduced coordinates are in range")
    }

    /// Least `m >= 1` with `m * x = 0`: the lcm of the coordinate orders.
    pub fn element_order(&self, x: Element) -> u64 {
        self.coords(x)
            .iter()
            .zip(self.factors())
            .map(|(&c, &n)| n / num_integer::gcd(c, n))
            .fold(1u64, num_integer::lcm)
    }

    pub fn parse_element(&self, literal: &str) -> Result<Element> {
        let parts: Vec<&str> = literal.split(',').map(str::trim).collect();
        let mut coords = Vec::with_capacity(parts.len());
        for p in &parts {
            let v: i64 = p
                .parse()
                .map_err(|_| Error::InvalidElement(format!("bad coordinate {p:?} in {literal:?}")))?;
            coords.push(v);
        }
        if self.rank() == 0 && coords == [0] {
            return Ok(Element(0));
        }
        self.from_residues(&coords)
    }

    pub fn format_element(&self, x: Element) -> String {
        if self.rank() == 0 {
            return "0".to_string();
        }
        self.coords(x)
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn same_as(&self, other: &GroupSpec) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.factors() == other.factors()
    }

    /// Parses `"Z12"`, `"z2xZ4"`; `"1"` or `"trivial"` is the trivial group.
    pub fn parse_with_cap(spec: &str, cap: usize) -> Result<Self> {
        let s = spec.trim();
        if s.is_empty() || s == "1" || s.eq_ignore_ascii_case("trivial") {
            return GroupSpec::with_cap(&[], cap);
        }
        let mut factors = Vec::new();
        for part in s.split(['x', 'X']) {
            let part = part.trim();
            let digits = part
                .strip_prefix('Z')
                .or_else(|| part.strip_prefix('z'))
                .ok_or_else(|| Error::Parse(format!("group factor {part:?} must look like Z<n>")))?;
            let n: u64 = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad cyclic order {digits:?} in {spec:?}")))?;
            factors.push(n);
        }
        GroupSpec::with_cap(&factors, cap)
    }
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for GroupSpec {}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupSpec({self})")
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank() == 0 {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors().iter().map(|n| format!("Z{n}")).collect();
        f.write_str(&parts.join("x"))
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupSpec::parse_with_cap(s, DEFAULT_MAX_ORDER)
    }
}
