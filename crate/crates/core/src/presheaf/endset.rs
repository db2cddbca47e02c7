//! Right `End(F_p^d)`-sets, evaluation `e_d` at `F_p^d` and its left
//! adjoint `i_d S = S x_{End(F^d)} hom(-, F^d)`.

use serde::Serialize;

use super::{enumerate_maps, FinitePresheaf, PresheafMap};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, HomSpace};
use crate::quotient::{QuotientWitness, UnionFind};

/// A finite set with a right action of the monoid of `d x d` matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndMSet {
    p: u32,
    d: usize,
    labels: Vec<String>,
    /// `action[a][s] = s . A` for the `a`-th endomorphism.
    action: Vec<Vec<u32>>,
}

impl EndMSet {
    pub fn new(p: u32, d: usize, labels: Vec<String>, action: Vec<Vec<u32>>) -> Result<Self> {
        let expected = crate::linalg::count_matrices(p, d, d);
        if action.len() as u128 != expected {
            return Err(Error::invalid(format!("expected {} endomorphisms, got {}", expected, action.len())));
        }
        let n = labels.len();
        if action.iter().any(|row| row.len() != n || row.iter().any(|&s| s as usize >= n)) {
            return Err(Error::invalid("action table has the wrong shape"));
        }
        Ok(EndMSet { p, d, labels, action })
    }

    pub fn singleton(homs: &HomSpace, d: usize) -> Self {
        let ends = homs.endomorphisms(d).len();
        EndMSet { p: homs.prime(), d, labels: vec!["*".into()], action: vec![vec![0]; ends] }
    }

    /// `End(F_p^d)` acting on itself by right multiplication.
    pub fn free(homs: &HomSpace, d: usize) -> Self {
        let ends = homs.endomorphisms(d);
        let labels = ends.iter().map(FpMatrix::key).collect();
        let action = ends
            .iter()
            .map(|a| ends.iter().map(|s| s.mul(a).index() as u32).collect())
            .collect();
        EndMSet { p: homs.prime(), d, labels, action }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn act(&self, s: usize, a: usize) -> usize {
        self.action[a][s] as usize
    }

    /// `s . I = s` and `s . (AB) = (s . A) . B`.
    pub fn verify(&self, homs: &HomSpace) -> bool {
        let ends = homs.endomorphisms(self.d);
        let id = FpMatrix::identity(self.p, self.d).index();
        (0..self.len()).all(|s| self.act(s, id) == s)
            && ends.iter().all(|a| {
                ends.iter().all(|b| {
                    let ab = a.mul(b).index();
                    (0..self.len()).all(|s| self.act(s, ab) == self.act(self.act(s, a.index()), b.index()))
                })
            })
    }

    /// `beta_n` on the `End(F^d)`-set: `s ~ t` iff `s . A = t . A` for every
    /// endomorphism `A` of rank `<= n`.
    pub fn beta(&self, n: usize, homs: &HomSpace) -> EndMSetBeta {
        let low: Vec<usize> = homs
            .endomorphisms(self.d)
            .iter()
            .filter(|a| a.rank() <= n)
            .map(FpMatrix::index)
            .collect();
        let keys: Vec<Vec<u32>> = (0..self.len())
            .map(|s| low.iter().map(|&a| self.action[a][s]).collect())
            .collect();
        let witness = QuotientWitness::from_keys(&keys);
        let action = self
            .action
            .iter()
            .map(|row| witness.representatives.iter().map(|&r| witness.class(row[r] as usize) as u32).collect())
            .collect();
        let labels = witness.representatives.iter().map(|&r| self.labels[r].clone()).collect();
        EndMSetBeta { set: EndMSet { p: self.p, d: self.d, labels, action }, witness }
    }
}

#[derive(Clone, Debug)]
pub struct EndMSetBeta {
    pub set: EndMSet,
    pub witness: QuotientWitness,
}

/// `e_d F`: the level-`d` set of `F` with `s . A = A^* s`.
pub fn e_d_evaluate(f: &FinitePresheaf, d: usize) -> Result<EndMSet> {
    if d > f.top() {
        return Err(Error::invalid(format!("cannot evaluate at dimension {} above top {}", d, f.top())));
    }
    let action = (0..f.num_maps(d, d)).map(|a| f.restriction(d, d, a).to_vec()).collect();
    EndMSet::new(f.prime(), d, f.labels(d).to_vec(), action)
}

/// `i_d S` truncated at `homs.top()`, with the quotient of pairs at each level.
#[derive(Clone, Debug)]
pub struct Induced {
    pub presheaf: FinitePresheaf,
    /// Over pairs `(s, M)` indexed `s * |hom(F^k, F^d)| + index(M)`.
    pub witnesses: Vec<QuotientWitness>,
}

impl Induced {
    /// Class of `(s, M)` at level `k` for the `m`-th `d x k` matrix `M`.
    pub fn class(&self, k: usize, s: usize, m: usize) -> usize {
        let per_s = self.witnesses[k].ambient_size() / self.carrier_size().max(1);
        self.witnesses[k].class(s * per_s + m)
    }

    fn carrier_size(&self) -> usize {
        // level-0 pairs are (s, empty matrix)
        self.witnesses[0].ambient_size()
    }
}

pub fn i_d_induce(s: &EndMSet, homs: &HomSpace) -> Result<Induced> {
    if s.p != homs.prime() {
        return Err(Error::Mismatch(format!("End-set over F_{} with hom space over F_{}", s.p, homs.prime())));
    }
    let d = s.d;
    let top = homs.top();
    if d > top {
        return Err(Error::invalid(format!("d = {} exceeds truncation {}", d, top)));
    }
    let ends = homs.endomorphisms(d);
    let n = s.len();
    let mut witnesses = Vec::with_capacity(top + 1);
    let mut pair_labels = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let maps = homs.maps(k, d);
        let nm = maps.len();
        let mut uf = UnionFind::new(n * nm);
        for a in ends {
            let ai = a.index();
            let composed: Vec<usize> = maps.iter().map(|m| a.mul(m).index()).collect();
            for x in 0..n {
                let xa = s.act(x, ai);
                for (mi, &am) in composed.iter().enumerate() {
                    // (x . A, M) ~ (x, A M)
                    uf.union(xa * nm + mi, x * nm + am);
                }
            }
        }
        let w = uf.into_witness();
        pair_labels.push(
            w.representatives
                .iter()
                .map(|&r| format!("{}|{}", s.labels[r / nm], maps[r % nm].key()))
                .collect::<Vec<String>>(),
        );
        witnesses.push(w);
    }
    let presheaf = FinitePresheaf::from_rule(homs, pair_labels, |k, _j, a, c| {
        let nm = homs.maps(k, d).len();
        let r = witnesses[k].representative(c);
        let (x, m) = (r / nm, r % nm);
        let mj = FpMatrix::from_index(s.p, d, k, m).mul(a);
        let nj = homs.maps(a.cols(), d).len();
        Ok(witnesses[a.cols()].class(x * nj + mj.index()))
    })?;
    // restriction must not depend on the representative
    for k in 0..=top {
        let nm = homs.maps(k, d).len();
        for j in 0..=top {
            let nj = homs.maps(j, d).len();
            for a in homs.maps(j, k) {
                for pair in 0..n * nm {
                    let (x, m) = (pair / nm, pair % nm);
                    let mj = FpMatrix::from_index(s.p, d, k, m).mul(a).index();
                    let direct = witnesses[j].class(x * nj + mj);
                    if presheaf.restrict(k, j, a.index(), witnesses[k].class(pair)) != direct {
                        return Err(Error::internal("induced presheaf restriction is not well defined"));
                    }
                }
            }
        }
    }
    Ok(Induced { presheaf, witnesses })
}

/// The counit `i_d e_d F -> F`, `(s, M) -> M^* s`.
pub fn counit(f: &FinitePresheaf, d: usize, homs: &HomSpace) -> Result<(Induced, PresheafMap)> {
    let s = e_d_evaluate(f, d)?;
    let induced = i_d_induce(&s, homs)?;
    induced.presheaf.same_shape(f)?;
    let mut components = Vec::with_capacity(f.top() + 1);
    for k in 0..=f.top() {
        let nm = homs.maps(k, d).len();
        let mut comp = vec![u32::MAX; induced.presheaf.level_size(k)];
        for pair in 0..s.len() * nm {
            let (x, m) = (pair / nm, pair % nm);
            let y = f.restrict(d, k, m, x) as u32;
            let c = induced.witnesses[k].class(pair);
            if comp[c] == u32::MAX {
                comp[c] = y;
            } else if comp[c] != y {
                return Err(Error::internal("counit is not well defined on classes"));
            }
        }
        components.push(comp);
    }
    Ok((induced, PresheafMap { components }))
}

/// Check `i_d(beta_n S) -> beta_n(i_d S)` is an isomorphism. Both sides are
/// quotients of `i_d S`; the comparison is built on representatives and then
/// tested for well-definedness, naturality and bijectivity.
pub fn id_beta_commute_check(s: &EndMSet, n: usize, homs: &HomSpace) -> Result<bool> {
    let beta_s = s.beta(n, homs);
    let lhs = i_d_induce(&beta_s.set, homs)?;
    let induced = i_d_induce(s, homs)?;
    let rhs = super::beta_quotient(&induced.presheaf, n)?;
    let d = s.d;
    let mut components = Vec::with_capacity(homs.top() + 1);
    for k in 0..=homs.top() {
        let nm = homs.maps(k, d).len();
        let mut comp = vec![u32::MAX; lhs.presheaf.level_size(k)];
        for x in 0..s.len() {
            let bx = beta_s.witness.class(x);
            for m in 0..nm {
                let lc = lhs.witnesses[k].class(bx * nm + m);
                let rc = rhs.witnesses[k].class(induced.witnesses[k].class(x * nm + m)) as u32;
                if comp[lc] == u32::MAX {
                    comp[lc] = rc;
                } else if comp[lc] != rc {
                    return Ok(false);
                }
            }
        }
        components.push(comp);
    }
    let cmp = PresheafMap { components };
    Ok(cmp.is_natural(&lhs.presheaf, &rhs.presheaf) && cmp.is_bijective(&rhs.presheaf))
}

/// All equivariant maps `S -> T`, lexicographic.
pub fn enumerate_equivariant_maps(s: &EndMSet, t: &EndMSet, limit: usize) -> Result<Vec<Vec<u32>>> {
    if s.p != t.p || s.d != t.d {
        return Err(Error::Mismatch("End-sets over different monoids".into()));
    }
    fn go(s: &EndMSet, t: &EndMSet, f: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        let Some(x) = f.iter().position(|&y| y == u32::MAX) else {
            out.push(f.clone());
            return;
        };
        for y in 0..t.len() {
            let saved = f.clone();
            let mut ok = true;
            let mut work = vec![(x, y)];
            f[x] = y as u32;
            while let Some((x, y)) = work.pop() {
                for a in 0..s.action.len() {
                    let (xa, ya) = (s.act(x, a), t.act(y, a));
                    if f[xa] == u32::MAX {
                        f[xa] = ya as u32;
                        work.push((xa, ya));
                    } else if f[xa] as usize != ya {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    break;
                }
            }
            if ok {
                go(s, t, f, out, limit);
            }
            *f = saved;
        }
    }
    let mut out = Vec::new();
    go(s, t, &mut vec![u32::MAX; s.len()], &mut out, limit);
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjunctionReport {
    pub equivariant_maps: usize,
    pub presheaf_maps: usize,
    /// `f -> (s, M) -> M^* f(s)` is a bijection onto the natural maps and
    /// restriction to `(s, I)` inverts it.
    pub bijection: bool,
}

/// Verify `Hom(S, e_d F) = Hom(i_d S, F)` by enumerating both sides.
pub fn adjunction_check(s: &EndMSet, f: &FinitePresheaf, homs: &HomSpace, caps: &Caps) -> Result<AdjunctionReport> {
    let d = s.d;
    let ef = e_d_evaluate(f, d)?;
    let left = enumerate_equivariant_maps(s, &ef, usize::MAX)?;
    let induced = i_d_induce(s, homs)?;
    let right = enumerate_maps(&induced.presheaf, f, usize::MAX, caps)?;
    let id = FpMatrix::identity(s.p, d).index();
    let nd = homs.maps(d, d).len();
    let mut transposes = Vec::with_capacity(left.len());
    for eq in &left {
        let mut components = Vec::with_capacity(f.top() + 1);
        for k in 0..=f.top() {
            let nm = homs.maps(k, d).len();
            let mut comp = vec![u32::MAX; induced.presheaf.level_size(k)];
            for pair in 0..s.len() * nm {
                let (x, m) = (pair / nm, pair % nm);
                let y = f.restrict(d, k, m, eq[x] as usize) as u32;
                let c = induced.witnesses[k].class(pair);
                if comp[c] != u32::MAX && comp[c] != y {
                    return Err(Error::internal("adjoint transpose is not well defined"));
                }
                comp[c] = y;
            }
            components.push(comp);
        }
        transposes.push(PresheafMap { components });
    }
    let mut bijection = left.len() == right.len();
    for (eq, t) in left.iter().zip(&transposes) {
        bijection &= t.is_natural(&induced.presheaf, f) && right.contains(t);
        let back: Vec<u32> = (0..s.len())
            .map(|x| t.apply(d, induced.witnesses[d].class(x * nd + id)) as u32)
            .collect();
        bijection &= &back == eq;
    }
    let mut sorted = transposes.clone();
    sorted.sort_by(|a, b| a.components.cmp(&b.components));
    sorted.dedup();
    bijection &= sorted.len() == transposes.len();
    Ok(AdjunctionReport { equivariant_maps: left.len(), presheaf_maps: right.len(), bijection })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presheaf::presheaf_iso_check;

    fn homs(p: u32, d: usize) -> HomSpace {
        HomSpace::new(p, d, &Caps::default()).unwrap()
    }

    #[test]
    fn evaluation_of_representable() {
        let h = homs(2, 1);
        let f = FinitePresheaf::representable(&h, 1, &Caps::default()).unwrap();
        let s = e_d_evaluate(&f, 1).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.verify(&h));
        // s . a = s a for 1x1 matrices
        for a in 0..2 {
            for x in 0..2 {
                assert_eq!(s.act(x, a), x * a);
            }
        }
        let t = e_d_evaluate(&FinitePresheaf::terminal(&h).unwrap(), 1).unwrap();
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn induced_from_free_and_singleton() {
        let h = homs(2, 1);
        let free = EndMSet::free(&h, 1);
        assert!(free.verify(&h));
        let ind = i_d_induce(&free, &h).unwrap();
        assert_eq!(ind.presheaf.level_sizes(), vec![1, 2]);
        let rep = FinitePresheaf::representable(&h, 1, &Caps::default()).unwrap();
        assert!(presheaf_iso_check(&ind.presheaf, &rep, &Caps::default()).unwrap().is_some());

        let h2 = homs(3, 2);
        let single = i_d_induce(&EndMSet::singleton(&h2, 2), &h2).unwrap();
        assert_eq!(single.presheaf.level_sizes(), vec![1, 1, 1]);
    }

    #[test]
    fn induction_above_d() {
        // i_1 of the free End(F_2)-set is hom(-, F^1) at every level
        let h = homs(2, 3);
        let ind = i_d_induce(&EndMSet::free(&h, 1), &h).unwrap();
        assert_eq!(ind.presheaf.level_sizes(), vec![1, 2, 4, 8]);
        assert!(ind.presheaf.check_functoriality(&h).passed());
    }

    #[test]
    fn counit_injective_on_representables() {
        let caps = Caps::default();
        let h = homs(2, 2);
        for r in 0..=2 {
            let f = FinitePresheaf::representable(&h, r, &caps).unwrap();
            for d in 0..=2 {
                let (ind, c) = counit(&f, d, &h).unwrap();
                assert!(c.is_natural(&ind.presheaf, &f));
                assert!(c.is_injective());
            }
        }
    }

    #[test]
    fn beta_on_end_sets() {
        let h = homs(2, 2);
        let free = EndMSet::free(&h, 2);
        let b0 = free.beta(0, &h);
        assert_eq!(b0.set.len(), 1);
        assert!(b0.set.verify(&h));
        let b2 = free.beta(2, &h);
        assert_eq!(b2.set.len(), free.len());
        for n in 0..=2 {
            assert!(id_beta_commute_check(&free, n, &h).unwrap());
            assert!(id_beta_commute_check(&EndMSet::singleton(&h, 2), n, &h).unwrap());
        }
    }

    #[test]
    fn adjunction_on_small_sets() {
        let caps = Caps::default();
        let h = homs(2, 1);
        let f = FinitePresheaf::representable(&h, 1, &caps).unwrap();
        let s = EndMSet::free(&h, 1);
        let rep = adjunction_check(&s, &f, &h, &caps).unwrap();
        // Hom(End, e_1 F) = F(1) has 2 elements
        assert_eq!(rep.equivariant_maps, 2);
        assert!(rep.bijection);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(EndMSet::new(2, 1, vec!["a".into()], vec![vec![0]]).is_err());
        assert!(EndMSet::new(2, 1, vec!["a".into()], vec![vec![0], vec![1]]).is_err());
    }
}
