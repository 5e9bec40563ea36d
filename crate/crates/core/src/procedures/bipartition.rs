use crate::error::{Error, Result};
use crate::setops::ElementSet;

/// Splits `A` into `A₁ ∪ A₂` with `|A₁| = ⌊|A|/2⌋` and `Aᵢ ∩ (-Aᵢ) = ∅`.
///
/// Pairs `{x, -x} ⊆ A` are split with the smaller index going to `A₁`; the remaining
/// elements (whose negation is absent) fill `A₁` up to size in increasing index order
/// and the rest go to `A₂`. Self-inverse elements cannot be placed and are refused.
pub fn antisymmetric_bipartition(a: &ElementSet) -> Result<(ElementSet, ElementSet)> {
    let g = a.group();
    if a.contains(g.zero()) {
        return Err(Error::ZeroNotAllowed);
    }
    let mut first = ElementSet::empty(g);
    let mut second = ElementSet::empty(g);
    let mut lone = Vec::new();
    for x in a.iter() {
        let nx = g.neg(x);
        if nx == x {
            return Err(Error::SelfInverse(g.format_element(x)));
        }
        if a.contains(nx) {
            if x < nx {
                first.insert(x);
                second.insert(nx);
            }
        } else {
            lone.push(x);
        }
    }
    let want = a.len() / 2;
    for x in lone {
        if first.len() < want {
            first.insert(x);
        } else {
            second.insert(x);
        }
    }
    debug_assert_eq!(first.len(), want);
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_group, Element};
    use crate::setops::is_antisymmetric;

    #[test]
    fn examples() {
        let g = make_group(&[7]).unwrap();
        let a = ElementSet::from_indices(&g, [1, 2, 6]).unwrap();
        let (a1, a2) = antisymmetric_bipartition(&a).unwrap();
        assert_eq!(a1.indices(), vec![1]);
        assert_eq!(a2.indices(), vec![2, 6]);
        assert!(is_antisymmetric(&a1) && is_antisymmetric(&a2));

        let a = ElementSet::from_indices(&g, [1, 2]).unwrap();
        let (a1, a2) = antisymmetric_bipartition(&a).unwrap();
        assert_eq!((a1.len(), a2.len()), (1, 1));

        let g = make_group(&[8]).unwrap();
        let a = ElementSet::singleton(&g, Element(4));
        assert!(matches!(antisymmetric_bipartition(&a), Err(Error::SelfInverse(_))));
        let a = ElementSet::from_indices(&g, [0, 1]).unwrap();
        assert!(matches!(antisymmetric_bipartition(&a), Err(Error::ZeroNotAllowed)));
    }

    #[test]
    fn exhaustive_over_z11() {
        let g = make_group(&[11]).unwrap();
        for mask in 0u32..(1 << 10) {
            let a = ElementSet::from_indices(&g, (1..11).filter(|i| mask >> (i - 1) & 1 == 1)).unwrap();
            let (a1, a2) = antisymmetric_bipartition(&a).unwrap();
            assert!(a1.is_disjoint(&a2));
            assert_eq!(a1.union(&a2), a);
            assert_eq!(a1.len(), a.len() / 2);
            assert!(is_antisymmetric(&a1) && is_antisymmetric(&a2), "{a:?}");
        }
    }

    #[test]
    fn products_with_order_two_elements() {
        let g = make_group(&[2, 3]).unwrap();
        let a = ElementSet::from_elements(&g, [g.from_coords(&[0, 1]).unwrap(), g.from_coords(&[0, 2]).unwrap()]);
        let (a1, a2) = antisymmetric_bipartition(&a).unwrap();
        assert_eq!((a1.len(), a2.len()), (1, 1));
        let a = ElementSet::singleton(&g, g.from_coords(&[1, 0]).unwrap());
        assert!(antisymmetric_bipartition(&a).is_err());
    }
}
