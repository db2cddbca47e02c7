use std::collections::BTreeSet;

use serde::Serialize;

use super::{require_prime, FiniteGroup};
use crate::error::Result;

/// An elementary abelian `p`-subgroup together with a chosen basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElemAbSubgroup {
    /// Sorted element indices.
    pub elements: Vec<u32>,
    pub basis: Vec<u32>,
    pub rank: usize,
    pub prime: u32,
    /// `by_coords[v]` is the element with exponent vector `v` in the basis,
    /// vectors indexed base `p` with the first coordinate most significant.
    #[serde(skip)]
    by_coords: Vec<u32>,
    /// Exponent vector index of `elements[i]`.
    #[serde(skip)]
    coord_of: Vec<usize>,
}

impl ElemAbSubgroup {
    fn from_elements(group: &FiniteGroup, p: u32, mut elements: Vec<u32>) -> Self {
        elements.sort_unstable();
        let mut basis = Vec::new();
        let mut span: BTreeSet<u32> = BTreeSet::from([group.identity()]);
        for &x in &elements {
            if !span.contains(&x) {
                basis.push(x);
                let old: Vec<u32> = span.iter().copied().collect();
                let mut power = group.identity();
                for _ in 1..p {
                    power = group.mul(power, x);
                    for &s in &old {
                        span.insert(group.mul(s, power));
                    }
                }
            }
        }
        let rank = basis.len();
        let size = (p as usize).pow(rank as u32);
        let mut by_coords = vec![0u32; size];
        for (v, slot) in by_coords.iter_mut().enumerate() {
            let digits = digits_of(v, p, rank);
            *slot = digits
                .iter()
                .zip(&basis)
                .fold(group.identity(), |acc, (&e, &b)| group.mul(acc, group.pow(b, e)));
        }
        let mut coord_of = vec![usize::MAX; elements.len()];
        for (v, &x) in by_coords.iter().enumerate() {
            let i = elements.binary_search(&x).expect("basis spans subgroup");
            coord_of[i] = v;
        }
        ElemAbSubgroup { elements, basis, rank, prime: p, by_coords, coord_of }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn position(&self, x: u32) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    /// Element with the given exponent-vector index.
    pub fn element_at(&self, coords_index: usize) -> u32 {
        self.by_coords[coords_index]
    }

    /// Exponent vector of `x` in the chosen basis.
    pub fn coordinates(&self, x: u32) -> Option<Vec<u32>> {
        self.position(x).map(|i| digits_of(self.coord_of[i], self.prime, self.rank))
    }

    /// Check closure, exponent, commutativity, size and the basis property.
    pub fn verify(&self, group: &FiniteGroup) -> bool {
        let p = self.prime;
        let closed = self
            .elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| self.contains(group.mul(a, b))));
        let exponent = self
            .elements
            .iter()
            .all(|&a| a == group.identity() || group.element_order(a) == p);
        let abelian = self
            .elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| group.commute(a, b)));
        let size = self.elements.len() == (p as usize).pow(self.rank as u32) && self.basis.len() == self.rank;
        let mut coords = self.by_coords.clone();
        coords.sort_unstable();
        coords.dedup();
        closed && exponent && abelian && size && coords == self.elements
    }
}

pub(crate) fn digits_of(mut v: usize, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for slot in out.iter_mut().rev() {
        *slot = (v % p as usize) as u32;
        v /= p as usize;
    }
    out
}

/// All elementary abelian `p`-subgroups, trivial one included, ordered by
/// rank and then by sorted element list.
pub fn elem_abelian_subgroups(group: &FiniteGroup, p: u32) -> Result<Vec<ElemAbSubgroup>> {
    require_prime(p)?;
    let order_p: Vec<u32> = group.elements().filter(|&x| group.element_order(x) == p).collect();
    let mut all: Vec<Vec<u32>> = Vec::new();
    let mut layer: BTreeSet<Vec<u32>> = BTreeSet::from([vec![group.identity()]]);
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for sub in &layer {
            for &x in &order_p {
                if sub.binary_search(&x).is_ok() || !sub.iter().all(|&s| group.commute(s, x)) {
                    continue;
                }
                let mut grown = Vec::with_capacity(sub.len() * p as usize);
                let mut power = group.identity();
                for _ in 0..p {
                    grown.extend(sub.iter().map(|&s| group.mul(s, power)));
                    power = group.mul(power, x);
                }
                grown.sort_unstable();
                next.insert(grown);
            }
        }
        all.extend(std::mem::take(&mut layer));
        layer = next;
    }
    Ok(all.into_iter().map(|els| ElemAbSubgroup::from_elements(group, p, els)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;

    /// Brute force over all subsets, usable for groups of order <= 12.
    fn brute_force_count(group: &FiniteGroup, p: u32) -> usize {
        let n = group.order();
        (0u32..(1 << n))
            .filter(|mask| {
                let set: Vec<u32> = (0..n as u32).filter(|i| mask & (1 << i) != 0).collect();
                set.contains(&group.identity())
                    && set.iter().all(|&a| set.iter().all(|&b| set.contains(&group.mul(a, b)) && group.commute(a, b)))
                    && set.iter().all(|&a| p % group.element_order(a) == 0)
            })
            .count()
    }

    #[test]
    fn sym3() {
        let g = named::symmetric3();
        let subs = elem_abelian_subgroups(&g, 2).unwrap();
        assert_eq!(subs.len(), 4);
        assert_eq!(subs[0].rank, 0);
        assert!(subs[1..].iter().all(|s| s.rank == 1 && s.order() == 2));
        assert_eq!(elem_abelian_subgroups(&g, 5).unwrap().len(), 1);
        assert_eq!(elem_abelian_subgroups(&g, 3).unwrap().len(), 2);
        assert!(elem_abelian_subgroups(&g, 4).is_err());
    }

    #[test]
    fn quaternion_has_center_only() {
        let g = named::quaternion8();
        let subs = elem_abelian_subgroups(&g, 2).unwrap();
        assert_eq!(subs.len(), 2);
        assert_eq!(subs[1].elements, g.center());
    }

    #[test]
    fn matches_brute_force_and_invariants() {
        for g in named::battery() {
            for p in [2, 3] {
                let subs = elem_abelian_subgroups(&g, p).unwrap();
                assert_eq!(subs.len(), brute_force_count(&g, p));
                for s in &subs {
                    assert!(s.verify(&g));
                    for (i, &x) in s.elements.iter().enumerate() {
                        let c = s.coordinates(x).unwrap();
                        let idx = c.iter().fold(0usize, |a, &d| a * p as usize + d as usize);
                        assert_eq!(s.element_at(idx), s.elements[i]);
                    }
                }
                // closed under conjugation
                for s in &subs {
                    for h in g.elements() {
                        let mut conj: Vec<u32> = s.elements.iter().map(|&x| g.conj(h, x)).collect();
                        conj.sort_unstable();
                        assert!(subs.iter().any(|t| t.elements == conj));
                    }
                }
                // sorted by rank then elements
                for w in subs.windows(2) {
                    assert!((w[0].rank, &w[0].elements) < (w[1].rank, &w[1].elements));
                }
            }
        }
    }

    #[test]
    fn dihedral_and_a4_counts() {
        // D8: trivial, five of order 2, two Klein four-groups
        let d = elem_abelian_subgroups(&named::dihedral8(), 2).unwrap();
        assert_eq!(d.iter().map(|s| s.rank).collect::<Vec<_>>(), vec![0, 1, 1, 1, 1, 1, 2, 2]);
        // A4: trivial, three of order 2, the normal Klein four-group
        let a = elem_abelian_subgroups(&named::alternating4(), 2).unwrap();
        assert_eq!(a.iter().map(|s| s.rank).collect::<Vec<_>>(), vec![0, 1, 1, 1, 2]);
    }
}
