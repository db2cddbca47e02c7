//! Finite groups stored as full Cayley tables.
//!
//! Elements are indices `0..order`. Groups built from permutation generators
//! are closed breadth-first: element `i` is expanded by right multiplication
//! with each generator in turn, so the ordering depends only on the
//! generator list.

mod homs;
pub mod named;
pub mod perm;
mod subgroups;

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};

pub use homs::{
    commuting_p_power_tuples, enumerate_homs, rep_orbits, GroupHom, RepOrbits,
};
pub use subgroups::{elem_abelian_subgroups, ElemAbSubgroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: u32,
    inverse: Vec<u32>,
    labels: Vec<String>,
    generators: Vec<u32>,
    element_orders: Vec<u32>,
    /// Permutation realizing each element, for permutation-built groups.
    perms: Option<Vec<perm::Perm>>,
}

/// On-disk group description.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct GroupSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    /// 1-based image lists.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<u32>>>,
    /// 0-based Cayley table, `table[a][b] = a * b`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<u32>>>,
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Build a group from its description.
pub fn load_group(spec: &GroupSpec, caps: &Caps) -> Result<FiniteGroup> {
    match (&spec.generators, &spec.table) {
        (Some(_), Some(_)) => Err(Error::invalid("group spec has both generators and table")),
        (Some(gens), None) => {
            let degree = spec
                .degree
                .ok_or_else(|| Error::invalid("permutation group spec needs a degree"))?;
            let zero_based = gens
                .iter()
                .map(|g| {
                    g.iter()
                        .map(|&x| {
                            x.checked_sub(1).ok_or_else(|| {
                                Error::invalid("generator images are 1-based; found 0")
                            })
                        })
                        .collect::<Result<Vec<u32>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            FiniteGroup::from_permutations(degree, &zero_based, caps)
        }
        (None, Some(table)) => FiniteGroup::from_table(table),
        (None, None) => {
            // No generators and no table: trivial group on `degree` letters.
            FiniteGroup::from_permutations(spec.degree.unwrap_or(0), &[], caps)
        }
    }
}

impl FiniteGroup {
    /// Closure of 0-based permutation generators on `0..degree`.
    pub fn from_permutations(degree: usize, generators: &[perm::Perm], caps: &Caps) -> Result<Self> {
        for g in generators {
            perm::validate(degree, g)?;
        }
        let id = perm::identity(degree);
        let mut elems: Vec<perm::Perm> = vec![id.clone()];
        let mut index: HashMap<perm::Perm, u32> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let prod = perm::compose(&elems[i], g);
                if !index.contains_key(&prod) {
                    if elems.len() >= caps.max_group_order {
                        return Err(Error::cap(
                            "group order",
                            elems.len() as u128 + 1,
                            caps.max_group_order as u128,
                        ));
                    }
                    index.insert(prod.clone(), elems.len() as u32);
                    queue.push_back(elems.len());
                    elems.push(prod);
                }
            }
        }
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&perm::compose(&elems[a], &elems[b])];
            }
        }
        let gen_idx = generators.iter().map(|g| index[g]).collect();
        let labels = elems.iter().map(|p| perm::cycle_label(p)).collect();
        let mut group = Self::assemble(table, 0, labels, gen_idx)?;
        group.perms = Some(elems);
        Ok(group)
    }

    /// Group from an explicit 0-based Cayley table; axioms are checked exhaustively.
    pub fn from_table(rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::GroupAxiom("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::GroupAxiom(format!("row {} has length {}, expected {}", a, row.len(), n)));
            }
            for &x in row {
                if x as usize >= n {
                    return Err(Error::GroupAxiom(format!("entry {} in row {} out of range", x, a)));
                }
            }
            table.extend_from_slice(row);
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x))
            .ok_or_else(|| Error::GroupAxiom("no two-sided identity".into()))?;
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b] as usize;
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c] as usize] {
                        return Err(Error::GroupAxiom(format!("not associative at ({}, {}, {})", a, b, c)));
                    }
                }
            }
        }
        let labels = (0..n).map(|i| format!("g{}", i)).collect();
        let mut group = Self::assemble(table, identity as u32, labels, Vec::new())?;
        group.generators = group.greedy_generators();
        Ok(group)
    }

    fn assemble(table: Vec<u32>, identity: u32, labels: Vec<String>, generators: Vec<u32>) -> Result<Self> {
        let n = labels.len();
        let mut inverse = vec![u32::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == identity && table[b * n + a] == identity {
                    inverse[a] = b as u32;
                    break;
                }
            }
            if inverse[a] == u32::MAX {
                return Err(Error::GroupAxiom(format!("element {} has no two-sided inverse", a)));
            }
        }
        let mut element_orders = vec![0u32; n];
        for (a, ord) in element_orders.iter_mut().enumerate() {
            let mut x = a as u32;
            let mut k = 1;
            while x != identity {
                x = table[x as usize * n + a];
                k += 1;
            }
            *ord = k;
        }
        Ok(FiniteGroup { order: n, table, identity, inverse, labels, generators, element_orders, perms: None })
    }

    fn greedy_generators(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut span = self.generated_by(&gens);
        for x in 0..self.order as u32 {
            if !span[x as usize] {
                gens.push(x);
                span = self.generated_by(&gens);
            }
        }
        gens
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn generated_by(&self, gens: &[u32]) -> Vec<bool> {
        let mut inside = vec![false; self.order];
        inside[self.identity as usize] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y as usize] {
                    inside[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        inside
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: u32) -> &str {
        &self.labels[x as usize]
    }

    pub fn permutation(&self, x: u32) -> Option<&[u32]> {
        self.perms.as_ref().map(|p| p[x as usize].as_slice())
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inverse[g as usize])
    }

    pub fn pow(&self, x: u32, e: u32) -> u32 {
        let e = e % self.element_orders[x as usize];
        let mut acc = self.identity;
        for _ in 0..e {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn element_order(&self, x: u32) -> u32 {
        self.element_orders[x as usize]
    }

    #[inline]
    pub fn commute(&self, a: u32, b: u32) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn check_index(&self, x: u32) -> Result<()> {
        if x as usize >= self.order {
            return Err(Error::IndexOutOfRange { index: x as usize, size: self.order });
        }
        Ok(())
    }

    /// `{ g : g s = s g for all s in S }`, ascending.
    pub fn centralizer(&self, set: &[u32]) -> Result<Vec<u32>> {
        for &s in set {
            self.check_index(s)?;
        }
        Ok(self.elements().filter(|&g| set.iter().all(|&s| self.commute(g, s))).collect())
    }

    pub fn center(&self) -> Vec<u32> {
        let all: Vec<u32> = self.elements().collect();
        self.centralizer(&all).expect("indices in range")
    }

    /// Elements whose order divides `p`, ascending (includes the identity).
    pub fn p_torsion(&self, p: u32) -> Vec<u32> {
        self.elements().filter(|&x| p % self.element_order(x) == 0).collect()
    }

    /// Elements whose order is a power of `p`, ascending (includes the identity).
    pub fn p_power_elements(&self, p: u32) -> Vec<u32> {
        self.elements().filter(|&x| is_power_of(self.element_order(x), p)).collect()
    }

    /// Check every group axiom on the stored table.
    pub fn verify_axioms(&self) -> Result<()> {
        let n = self.order as u32;
        for a in 0..n {
            if self.mul(a, self.identity) != a || self.mul(self.identity, a) != a {
                return Err(Error::GroupAxiom(format!("identity fails at {}", a)));
            }
            if self.mul(a, self.inv(a)) != self.identity || self.mul(self.inv(a), a) != self.identity {
                return Err(Error::GroupAxiom(format!("inverse fails at {}", a)));
            }
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::GroupAxiom(format!("not associative at ({}, {}, {})", a, b, c)));
                    }
                }
            }
        }
        if self.generated_by(&self.generators).iter().any(|&x| !x) {
            return Err(Error::GroupAxiom("generators do not generate".into()));
        }
        Ok(())
    }
}

pub(crate) fn is_power_of(mut x: u32, p: u32) -> bool {
    while x > 1 {
        if x % p != 0 {
            return false;
        }
        x /= p;
    }
    x == 1
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub(crate) fn require_prime(p: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{} is not prime", p)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;

    #[test]
    fn sym3_closure() {
        let spec = GroupSpec {
            name: Some("S3".into()),
            degree: Some(3),
            generators: Some(vec![vec![2, 1, 3], vec![2, 3, 1]]),
            table: None,
        };
        let g = load_group(&spec, &Caps::default()).unwrap();
        assert_eq!(g.order(), 6);
        g.verify_axioms().unwrap();
        assert_eq!(g.label(0), "()");
        // breadth-first: e, e*(1 2), e*(1 2 3), then (1 2)*(1 2) = e, (1 2)(1 2 3), ...
        assert_eq!(g.label(1), "(1 2)");
        assert_eq!(g.label(2), "(1 2 3)");
        assert_eq!(g.generators(), &[1, 2]);
    }

    #[test]
    fn trivial_from_empty_generators() {
        let spec = GroupSpec { degree: Some(3), generators: Some(vec![]), ..Default::default() };
        let g = load_group(&spec, &Caps::default()).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.center(), vec![0]);
    }

    #[test]
    fn dihedral_order_8() {
        let spec = GroupSpec {
            degree: Some(4),
            generators: Some(vec![vec![2, 3, 4, 1], vec![3, 2, 1, 4]]),
            ..Default::default()
        };
        assert_eq!(load_group(&spec, &Caps::default()).unwrap().order(), 8);
    }

    #[test]
    fn rejects_bad_input() {
        let caps = Caps::default();
        let bad = GroupSpec { degree: Some(3), generators: Some(vec![vec![1, 1, 2]]), ..Default::default() };
        assert!(load_group(&bad, &caps).is_err());
        let zero = GroupSpec { degree: Some(2), generators: Some(vec![vec![0, 1]]), ..Default::default() };
        assert!(load_group(&zero, &caps).is_err());
        let small = Caps { max_group_order: 5, ..caps };
        let s3 = GroupSpec { degree: Some(3), generators: Some(vec![vec![2, 1, 3], vec![2, 3, 1]]), ..Default::default() };
        assert!(matches!(load_group(&s3, &small), Err(Error::CapExceeded { .. })));
        // not associative: a Latin square that is not a group
        let table = vec![vec![0, 1, 2, 3, 4], vec![1, 0, 3, 4, 2], vec![2, 4, 0, 1, 3], vec![3, 2, 4, 0, 1], vec![4, 3, 1, 2, 0]];
        assert!(matches!(FiniteGroup::from_table(&table), Err(Error::GroupAxiom(_))));
    }

    #[test]
    fn table_round_trip() {
        let s3 = named::symmetric3();
        let rows: Vec<Vec<u32>> = (0..6).map(|a| (0..6).map(|b| s3.mul(a, b)).collect()).collect();
        let t = FiniteGroup::from_table(&rows).unwrap();
        t.verify_axioms().unwrap();
        assert_eq!(t.order(), 6);
        assert_eq!(t.label(3), "g3");
    }

    #[test]
    fn centralizers() {
        let s3 = named::symmetric3();
        let t = s3.elements().find(|&x| s3.label(x) == "(1 2)").unwrap();
        let c = s3.centralizer(&[t]).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.contains(&s3.identity()) && c.contains(&t));
        assert_eq!(s3.centralizer(&[s3.identity()]).unwrap().len(), 6);
        assert!(s3.centralizer(&[17]).is_err());

        let q8 = named::quaternion8();
        let minus_one: Vec<u32> = q8.elements().filter(|&x| q8.element_order(x) == 2).collect();
        assert_eq!(minus_one.len(), 1);
        assert_eq!(q8.centralizer(&minus_one).unwrap().len(), 8);
    }

    #[test]
    fn centralizer_is_subgroup_containing_center() {
        for g in named::battery() {
            let center = g.center();
            for x in g.elements() {
                let c = g.centralizer(&[x]).unwrap();
                assert!(center.iter().all(|z| c.contains(z)));
                for &a in &c {
                    for &b in &c {
                        assert!(c.contains(&g.mul(a, b)));
                    }
                }
            }
        }
    }
}

#[cfg(test)]
pub(crate) fn subgroups_digits(v: usize, p: u32, len: usize) -> Vec<u32> {
    subgroups::digits_of(v, p, len)
}
