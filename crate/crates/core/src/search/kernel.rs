use crate::group::{Element, GroupSpec};
use crate::setops::ElementSet;

pub(crate) const KERNEL_MAX_ORDER: usize = 128;

/// Sets of a group of order at most 128 packed in one `u128`, for enumeration loops.
pub(crate) struct SmallKernel {
    group: GroupSpec,
    order: usize,
    full: u128,
    cyclic: bool,
    chunks: usize,
    /// `table[(c * chunks + b) * 256 + v]`: image of byte `v` at chunk `b` under `+c`.
    table: Vec<u128>,
    neg: Vec<u8>,
    add: Vec<u8>,
}

impl SmallKernel {
    pub(crate) fn new(g: &GroupSpec) -> Option<Self> {
        let order = g.order();
        if order > KERNEL_MAX_ORDER {
            return None;
        }
        let full = if order == 128 { u128::MAX } else { (1u128 << order) - 1 };
        let cyclic = g.is_cyclic();
        let chunks = order.div_ceil(8);
        let mut add = vec![0u8; order * order];
        for x in 0..order {
            for y in 0..order {
                add[x * order + y] = g.add(Element(x), Element(y)).index() as u8;
            }
        }
        let neg = (0..order).map(|x| g.neg(Element(x)).index() as u8).collect();
        let mut table = Vec::new();
        if !cyclic {
            table = vec![0u128; order * chunks * 256];
            for c in 0..order {
                for b in 0..chunks {
                    for v in 0..256usize {
                        let mut img = 0u128;
                        for k in 0..8 {
                            let x = 8 * b + k;
                            if v >> k & 1 == 1 && x < order {
                                img |= 1u128 << add[x * order + c];
                            }
                        }
                        table[(c * chunks + b) * 256 + v] = img;
                    }
                }
            }
        }
        Some(SmallKernel { group: g.clone(), order, full, cyclic, chunks, table, neg, add })
    }

    pub(crate) fn order(&self) -> usize {
        self.order
    }

    pub(crate) fn full(&self) -> u128 {
        self.full
    }

    pub(crate) fn neg(&self, x: usize) -> usize {
        self.neg[x] as usize
    }

    pub(crate) fn shift(&self, s: u128, c: usize) -> u128 {
        if c == 0 {
            return s;
        }
        if self.cyclic {
            let n = self.order;
            return ((s << c) | (s >> (n - c))) & self.full;
        }
        let base = c * self.chunks * 256;
        (0..self.chunks).fold(0, |acc, b| acc | self.table[base + b * 256 + ((s >> (8 * b)) & 0xff) as usize])
    }

    /// `S ∪ (S + c)`
    pub(crate) fn absorb(&self, s: u128, c: usize) -> u128 {
        s | self.shift(s, c)
    }

    /// Candidate periods `x - s0` for `x ∈ S`, `s0 = min S`.
    fn periods(&self, s: u128) -> impl Iterator<Item = usize> + '_ {
        let s0 = s.trailing_zeros() as usize;
        let ns0 = self.neg[s0] as usize;
        bits(s).map(move |x| self.add[x * self.order + ns0] as usize).filter(move |&d| self.shift(s, d) == s)
    }

    pub(crate) fn trivial_stab(&self, s: u128) -> bool {
        if s == 0 {
            return self.order == 1;
        }
        !self.periods(s).any(|d| d != 0)
    }

    pub(crate) fn stab_size(&self, s: u128) -> usize {
        if s == 0 {
            return self.order;
        }
        self.periods(s).count()
    }

    pub(crate) fn to_set(&self, s: u128) -> ElementSet {
        ElementSet::from_elements(&self.group, bits(s).map(Element))
    }
}

pub(crate) fn bits(mut s: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (s != 0).then(|| {
            let i = s.trailing_zeros() as usize;
            s &= s - 1;
            i
        })
    })
}

/// Next mask with the same popcount (Gosper), or `None` past `limit` bits.
pub(crate) fn next_same_popcount(x: u64, width: u32) -> Option<u64> {
    if x == 0 {
        return None;
    }
    let c = x & x.wrapping_neg();
    let r = x + c;
    let next = (((r ^ x) >> 2) / c) | r;
    (width >= 64 || next < 1u64 << width).then_some(next)
}
