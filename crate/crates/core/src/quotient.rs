//! Union-find and the partition record shared by every quotient operation.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Returns `true` if `a` and `b` were in different classes.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }

    pub fn into_witness(mut self) -> QuotientWitness {
        let roots: Vec<usize> = (0..self.len()).map(|i| self.find(i)).collect();
        QuotientWitness::from_keys(&roots)
    }
}

/// A partition of `0..ambient` into dense classes `0..num_classes()`.
///
/// Classes are numbered in order of their least member, and that least member
/// is the class representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientWitness {
    pub class_of: Vec<usize>,
    pub representatives: Vec<usize>,
}

impl QuotientWitness {
    /// Partition where `i ~ j` iff `keys[i] == keys[j]`.
    pub fn from_keys<K: std::hash::Hash + Eq + Clone>(keys: &[K]) -> Self {
        let mut seen = std::collections::HashMap::new();
        let mut class_of = Vec::with_capacity(keys.len());
        let mut representatives = Vec::new();
        for (i, k) in keys.iter().enumerate() {
            let c = *seen.entry(k.clone()).or_insert_with(|| {
                representatives.push(i);
                representatives.len() - 1
            });
            class_of.push(c);
        }
        QuotientWitness { class_of, representatives }
    }

    pub fn discrete(n: usize) -> Self {
        QuotientWitness { class_of: (0..n).collect(), representatives: (0..n).collect() }
    }

    pub fn ambient_size(&self) -> usize {
        self.class_of.len()
    }

    pub fn num_classes(&self) -> usize {
        self.representatives.len()
    }

    pub fn class(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn representative(&self, c: usize) -> usize {
        self.representatives[c]
    }

    /// Members of every class, each list ascending.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_classes()];
        for (i, &c) in self.class_of.iter().enumerate() {
            out[c].push(i);
        }
        out
    }

    /// True if both witnesses describe the same partition.
    pub fn same_partition(&self, other: &QuotientWitness) -> bool {
        self.class_of == other.class_of
    }

    pub fn check_invariants(&self) -> bool {
        self.representatives.iter().enumerate().all(|(c, &r)| {
            r < self.class_of.len()
                && self.class_of[r] == c
                && self.class_of[..r].iter().all(|&x| x != c)
        }) && self.class_of.iter().all(|&c| c < self.representatives.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn union_find_basic() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 3));
        assert!(uf.union(3, 4));
        assert!(!uf.union(0, 4));
        let w = uf.into_witness();
        assert_eq!(w.class_of, vec![0, 1, 2, 0, 0]);
        assert_eq!(w.representatives, vec![0, 1, 2]);
        assert!(w.check_invariants());
    }

    #[test]
    fn empty() {
        let w = UnionFind::new(0).into_witness();
        assert_eq!(w.num_classes(), 0);
        assert!(w.check_invariants());
    }

    proptest! {
        #[test]
        fn witness_is_dense_and_canonical(pairs in proptest::collection::vec((0usize..30, 0usize..30), 0..40)) {
            let mut uf = UnionFind::new(30);
            for &(a, b) in &pairs {
                uf.union(a, b);
            }
            let w = uf.clone().into_witness();
            prop_assert!(w.check_invariants());
            for &(a, b) in &pairs {
                prop_assert_eq!(w.class(a), w.class(b));
            }
            let keyed = QuotientWitness::from_keys(&w.class_of);
            prop_assert!(keyed.same_partition(&w));
        }
    }
}
