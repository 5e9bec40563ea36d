use std::fmt;

use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec};

const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// Reads `len <= 64` bits starting at bit `pos`.
#[inline]
fn read_bits(src: &[u64], pos: usize, len: usize) -> u64 {
    debug_assert!((1..=WORD).contains(&len));
    let (w, o) = (pos / WORD, pos % WORD);
    let mut v = src[w] >> o;
    if o != 0 && o + len > WORD {
        v |= src[w + 1] << (WORD - o);
    }
    if len == WORD {
        v
    } else {
        v & ((1u64 << len) - 1)
    }
}

/// ORs `src[src_pos .. src_pos+len)` into `dst[dst_pos ..)`.
fn or_bit_range(src: &[u64], src_pos: usize, dst: &mut [u64], dst_pos: usize, len: usize) {
    let mut done = 0;
    while done < len {
        let p = dst_pos + done;
        let take = (WORD - p % WORD).min(len - done);
        let v = read_bits(src, src_pos + done, take);
        dst[p / WORD] |= v << (p % WORD);
        done += take;
    }
}

/// Rotates every block of `block` bits "upward" by `r` positions.
fn rotate_blocks(src: &[u64], dst: &mut [u64], total: usize, block: usize, r: usize) {
    dst.iter_mut().for_each(|w| *w = 0);
    if r == 0 {
        dst.copy_from_slice(src);
        return;
    }
    let mut b = 0;
    while b < total {
        or_bit_range(src, b, dst, b + r, block - r);
        or_bit_range(src, b + block - r, dst, b, r);
        b += block;
    }
}

/// A subset of a finite abelian group stored as a dense bitset over element indices.
#[derive(Clone)]
pub struct ElementSet {
    group: GroupSpec,
    bits: Vec<u64>,
    card: usize,
}

impl ElementSet {
    pub fn empty(group: &GroupSpec) -> Self {
        ElementSet {
            group: group.clone(),
            bits: vec![0; words_for(group.order())],
            card: 0,
        }
    }

    pub fn full(group: &GroupSpec) -> Self {
        let mut s = ElementSet {
            group: group.clone(),
            bits: vec![!0; words_for(group.order())],
            card: group.order(),
        };
        s.trim();
        s
    }

    pub fn singleton(group: &GroupSpec, x: Element) -> Self {
        let mut s = Self::empty(group);
        s.insert(x);
        s
    }

    pub fn from_elements(group: &GroupSpec, elements: impl IntoIterator<Item = Element>) -> Self {
        let mut s = Self::empty(group);
        for x in elements {
            s.insert(x);
        }
        s
    }

    pub fn from_indices(group: &GroupSpec, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(group);
        for i in indices {
            s.insert(group.element(i)?);
        }
        Ok(s)
    }

    /// Integers reduced modulo a cyclic group's order; handy for `Z_n` literals like `-3`.
    pub fn from_residues(group: &GroupSpec, residues: impl IntoIterator<Item = i64>) -> Result<Self> {
        let mut s = Self::empty(group);
        for r in residues {
            s.insert(group.from_residues(&[r])?);
        }
        Ok(s)
    }

    pub(crate) fn from_words(group: &GroupSpec, bits: Vec<u64>) -> Self {
        debug_assert_eq!(bits.len(), words_for(group.order()));
        let mut s = ElementSet { group: group.clone(), bits, card: 0 };
        s.trim();
        s.recount();
        s
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.card
    }

    pub fn is_empty(&self) -> bool {
        self.card == 0
    }

    pub fn is_full(&self) -> bool {
        self.card == self.group.order()
    }

    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    #[inline]
    pub fn contains(&self, x: Element) -> bool {
        let i = x.index();
        i < self.group.order() && self.bits[i / WORD] >> (i % WORD) & 1 == 1
    }

    /// Returns whether the element was newly inserted. Panics on an index outside the group.
    pub fn insert(&mut self, x: Element) -> bool {
        let i = x.index();
        assert!(i < self.group.order(), "element {i} outside group {}", self.group);
        let mask = 1u64 << (i % WORD);
        let w = &mut self.bits[i / WORD];
        let fresh = *w & mask == 0;
        *w |= mask;
        self.card += fresh as usize;
        fresh
    }

    pub fn remove(&mut self, x: Element) -> bool {
        let i = x.index();
        if i >= self.group.order() {
            return false;
        }
        let mask = 1u64 << (i % WORD);
        let w = &mut self.bits[i / WORD];
        let present = *w & mask != 0;
        *w &= !mask;
        self.card -= present as usize;
        present
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.bits.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(Element(wi * WORD + b))
            })
        })
    }

    pub fn elements(&self) -> Vec<Element> {
        self.iter().collect()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().map(Element::index).collect()
    }

    pub fn min_element(&self) -> Option<Element> {
        self.iter().next()
    }

    pub(crate) fn check_same_group(&self, other: &ElementSet) -> Result<()> {
        if self.group.same_as(&other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(self.group.to_string(), other.group.to_string()))
        }
    }

    fn trim(&mut self) {
        let rem = self.group.order() % WORD;
        if rem != 0 {
            if let Some(last) = self.bits.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub(crate) fn recount(&mut self) {
        self.card = self.bits.iter().map(|w| w.count_ones() as usize).sum();
    }

    fn zip_with(&self, other: &ElementSet, op: impl Fn(u64, u64) -> u64) -> ElementSet {
        assert!(self.group.same_as(&other.group), "set operation across different groups");
        let bits = self.bits.iter().zip(&other.bits).map(|(&a, &b)| op(a, b)).collect();
        ElementSet::from_words(&self.group, bits)
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> ElementSet {
        let bits = self.bits.iter().map(|&a| !a).collect();
        ElementSet::from_words(&self.group, bits)
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        assert!(self.group.same_as(&other.group), "set operation across different groups");
        for (a, &b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
        self.recount();
    }

    pub fn intersection_len(&self, other: &ElementSet) -> usize {
        self.bits.iter().zip(&other.bits).map(|(&a, &b)| (a & b).count_ones() as usize).sum()
    }

    pub fn difference_len(&self, other: &ElementSet) -> usize {
        self.bits.iter().zip(&other.bits).map(|(&a, &b)| (a & !b).count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| a & b == 0)
    }

    /// `-S = {-s : s in S}`.
    pub fn negate(&self) -> ElementSet {
        ElementSet::from_elements(&self.group, self.iter().map(|x| self.group.neg(x)))
    }

    /// `S + c`, computed as one block rotation per nonzero coordinate of `c`.
    pub fn shift(&self, c: Element) -> ElementSet {
        let mut out = vec![0u64; self.bits.len()];
        self.shift_words_into(c, &mut out);
        ElementSet { group: self.group.clone(), bits: out, card: self.card }
    }

    /// Writes the words of `S + c` into `out`, which must have the set's word length.
    pub(crate) fn shift_words_into(&self, c: Element, out: &mut [u64]) {
        let g = &self.group;
        let order = g.order();
        assert!(c.index() < order, "shift by element outside the group");
        let coords = g.coords(c);
        let mut current: Option<Vec<u64>> = None;
        let mut pending = coords
            .iter()
            .zip(g.factors())
            .zip(g.strides())
            .filter(|((&ci, _), _)| ci != 0)
            .peekable();
        if pending.peek().is_none() {
            out.copy_from_slice(&self.bits);
            return;
        }
        while let Some(((&ci, &n), &stride)) = pending.next() {
            let block = stride * n as usize;
            let r = stride * ci as usize;
            let last = pending.peek().is_none();
            let src: &[u64] = current.as_deref().unwrap_or(&self.bits);
            if last {
                rotate_blocks(src, out, order, block, r);
            } else {
                let mut tmp = vec![0u64; self.bits.len()];
                rotate_blocks(src, &mut tmp, order, block, r);
                current = Some(tmp);
            }
        }
    }

    /// In place `S <- S ∪ (S + c)`.
    pub(crate) fn absorb_shift(&mut self, c: Element, scratch: &mut Vec<u64>) {
        scratch.resize(self.bits.len(), 0);
        self.shift_words_into(c, scratch);
        for (a, &b) in self.bits.iter_mut().zip(scratch.iter()) {
            *a |= b;
        }
        self.recount();
    }

    /// Little-endian hex bitmap: byte `j` holds element indices `8j..8j+8`, low bit first.
    pub fn to_hex(&self) -> String {
        let nbytes = self.group.order().div_ceil(8);
        let bytes: Vec<u8> = self
            .bits
            .iter()
            .flat_map(|w| w.to_le_bytes())
            .take(nbytes)
            .collect();
        hex::encode(bytes)
    }

    pub fn from_hex(group: &GroupSpec, text: &str) -> Result<Self> {
        let bytes = hex::decode(text.trim()).map_err(|e| Error::Parse(format!("bad hex bitmap: {e}")))?;
        let nbytes = group.order().div_ceil(8);
        if bytes.len() != nbytes {
            return Err(Error::Parse(format!(
                "hex bitmap has {} bytes, group {group} needs {nbytes}",
                bytes.len()
            )));
        }
        let mut bits = vec![0u64; words_for(group.order())];
        for (j, b) in bytes.iter().enumerate() {
            bits[j / 8] |= (*b as u64) << (8 * (j % 8));
        }
        let s = ElementSet::from_words(group, bits.clone());
        if s.bits != bits {
            return Err(Error::Parse("hex bitmap sets bits beyond the group order".into()));
        }
        Ok(s)
    }

    pub fn format_elements(&self) -> String {
        let parts: Vec<String> = self.iter().map(|x| self.group.format_element(x)).collect();
        format!("{{{}}}", parts.join(" "))
    }
}

impl PartialEq for ElementSet {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_as(&other.group) && self.bits == other.bits
    }
}

impl Eq for ElementSet {}

impl std::hash::Hash for ElementSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ElementSet({} {})", self.group, self.format_elements())
    }
}
