use std::collections::HashMap;

use serde::Serialize;

use super::{require_prime, FiniteGroup};
use crate::caps::{pow_u128, Caps};
use crate::error::{Error, Result};
use crate::linalg::FpMatrix;
use crate::quotient::{QuotientWitness, UnionFind};

/// A homomorphism `F_p^n -> G`, recorded by the images of the standard basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupHom {
    pub source_rank: usize,
    pub prime: u32,
    pub images: Vec<u32>,
}

impl GroupHom {
    pub fn new(prime: u32, images: Vec<u32>) -> Self {
        GroupHom { source_rank: images.len(), prime, images }
    }

    /// Images have order dividing `p` and commute pairwise.
    pub fn is_valid(&self, group: &FiniteGroup) -> bool {
        self.images.len() == self.source_rank
            && self.images.iter().all(|&x| (x as usize) < group.order() && self.prime % group.element_order(x) == 0)
            && self
                .images
                .iter()
                .enumerate()
                .all(|(i, &a)| self.images[i + 1..].iter().all(|&b| group.commute(a, b)))
    }

    /// Image of the vector with coordinates `v`.
    pub fn apply(&self, group: &FiniteGroup, v: &[u32]) -> u32 {
        v.iter()
            .zip(&self.images)
            .fold(group.identity(), |acc, (&e, &x)| group.mul(acc, group.pow(x, e)))
    }

    /// The full map on all `p^n` vectors, in base-`p` order.
    pub fn materialize(&self, group: &FiniteGroup) -> Vec<u32> {
        let n = self.source_rank;
        let size = (self.prime as usize).pow(n as u32);
        (0..size)
            .map(|v| self.apply(group, &super::subgroups::digits_of(v, self.prime, n)))
            .collect()
    }

    /// `self ∘ A` for `A: F_p^j -> F_p^n`, an `n x j` matrix.
    pub fn precompose(&self, group: &FiniteGroup, a: &FpMatrix) -> GroupHom {
        debug_assert_eq!(a.rows(), self.source_rank);
        let images = (0..a.cols()).map(|c| self.apply(group, &a.column(c))).collect();
        GroupHom::new(self.prime, images)
    }

    /// `g α g^-1`.
    pub fn conjugate(&self, group: &FiniteGroup, g: u32) -> GroupHom {
        GroupHom::new(self.prime, self.images.iter().map(|&x| group.conj(g, x)).collect())
    }

    /// Sorted elements of the image subgroup.
    pub fn image(&self, group: &FiniteGroup) -> Vec<u32> {
        let mask = group.generated_by(&self.images);
        (0..group.order() as u32).filter(|&x| mask[x as usize]).collect()
    }
}

fn check_tuple_cap(n: usize, group: &FiniteGroup, caps: &Caps) -> Result<()> {
    caps.check_enum("tuple search space |G|^n", pow_u128(group.order() as u128, n as u32))
}

/// Pairwise-commuting `n`-tuples drawn from `candidates`, lexicographic.
fn commuting_tuples(group: &FiniteGroup, candidates: &[u32], n: usize) -> Vec<Vec<u32>> {
    fn go(group: &FiniteGroup, cand: &[u32], n: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for &x in cand {
            if cur.iter().all(|&y| group.commute(x, y)) {
                cur.push(x);
                go(group, cand, n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(group, candidates, n, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Every homomorphism `F_p^n -> G`, lexicographic in the image tuple.
pub fn enumerate_homs(n: usize, p: u32, group: &FiniteGroup, caps: &Caps) -> Result<Vec<GroupHom>> {
    require_prime(p)?;
    check_tuple_cap(n, group, caps)?;
    let torsion = group.p_torsion(p);
    Ok(commuting_tuples(group, &torsion, n).into_iter().map(|t| GroupHom::new(p, t)).collect())
}

/// Pairwise-commuting `n`-tuples of `p`-power-order elements: the continuous
/// homomorphisms `Z_p^n -> G`.
pub fn commuting_p_power_tuples(n: usize, p: u32, group: &FiniteGroup, caps: &Caps) -> Result<Vec<Vec<u32>>> {
    require_prime(p)?;
    check_tuple_cap(n, group, caps)?;
    Ok(commuting_tuples(group, &group.p_power_elements(p), n))
}

/// Conjugacy classes of homomorphisms `F_p^n -> G`.
#[derive(Clone, Debug)]
pub struct RepOrbits {
    pub homs: Vec<GroupHom>,
    pub witness: QuotientWitness,
    index: HashMap<Vec<u32>, usize>,
}

impl RepOrbits {
    pub fn index_of(&self, images: &[u32]) -> Option<usize> {
        self.index.get(images).copied()
    }

    /// Class of a homomorphism given by its basis images.
    pub fn class_of(&self, images: &[u32]) -> Result<usize> {
        self.index_of(images)
            .map(|i| self.witness.class(i))
            .ok_or_else(|| Error::internal(format!("{:?} is not an enumerated homomorphism", images)))
    }

    pub fn num_classes(&self) -> usize {
        self.witness.num_classes()
    }

    pub fn representative(&self, class: usize) -> &GroupHom {
        &self.homs[self.witness.representative(class)]
    }
}

/// `Rep(F_p^n, G)`: homomorphisms modulo conjugation. The representative of
/// each class is its lexicographically least image tuple.
pub fn rep_orbits(n: usize, p: u32, group: &FiniteGroup, caps: &Caps) -> Result<RepOrbits> {
    let homs = enumerate_homs(n, p, group, caps)?;
    let index: HashMap<Vec<u32>, usize> = homs.iter().enumerate().map(|(i, h)| (h.images.clone(), i)).collect();
    let mut uf = UnionFind::new(homs.len());
    for (i, h) in homs.iter().enumerate() {
        for &g in group.generators() {
            let c = h.conjugate(group, g);
            uf.union(i, index[&c.images]);
        }
    }
    Ok(RepOrbits { homs, witness: uf.into_witness(), index })
}
