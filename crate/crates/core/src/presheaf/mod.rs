//! Finite set-valued presheaves on `F_p`-vector spaces of dimension `<= d`.
//!
//! A presheaf stores one finite level set per dimension `0..=d` and, for
//! every matrix `A: F_p^j -> F_p^k`, the restriction `A^*: F(k) -> F(j)`.
//! Restrictions are addressed by `(k, j, index of A)` using the matrix
//! indexing of [`crate::linalg`].

mod beta;
mod endset;
mod io;
mod search;

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, HomSpace};

pub use beta::{
    beta_laws, beta_of_map, beta_product_check, beta_quotient, tower_surjection, BetaLaws, BetaQuotient,
    ProductCheck,
};
pub use endset::{
    adjunction_check, counit, e_d_evaluate, enumerate_equivariant_maps, i_d_induce,
    id_beta_commute_check, AdjunctionReport, EndMSet, EndMSetBeta, Induced,
};
pub use io::PresheafFile;
pub use search::{enumerate_maps, presheaf_iso_check};


#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePresheaf {
    p: u32,
    d: usize,
    labels: Vec<Vec<String>>,
    /// `restrictions[k][j][a]` is `A^*: F(k) -> F(j)` for the `a`-th `k x j` matrix.
    restrictions: Vec<Vec<Vec<Vec<u32>>>>,
}

/// A composable pair whose restrictions disagree: `(A B)^* != B^* A^*` at `element`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctorialityViolation {
    /// `A: F^j -> F^k`.
    pub outer: String,
    /// `B: F^i -> F^j`; empty when the identity law fails for `outer`.
    pub inner: String,
    pub level: usize,
    pub element: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FunctorialityReport {
    pub violations: Vec<FunctorialityViolation>,
}

impl FunctorialityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

const MAX_REPORTED_VIOLATIONS: usize = 16;

impl FinitePresheaf {
    /// Build from level labels and a restriction rule
    /// `rule(k, j, A, x) -> A^*(x)` for `A: F^j -> F^k`.
    pub fn from_rule<R>(homs: &HomSpace, labels: Vec<Vec<String>>, mut rule: R) -> Result<Self>
    where
        R: FnMut(usize, usize, &FpMatrix, usize) -> Result<usize>,
    {
        let d = homs.top();
        if labels.len() != d + 1 {
            return Err(Error::invalid(format!("expected {} levels, got {}", d + 1, labels.len())));
        }
        let mut restrictions = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let mut per_j = Vec::with_capacity(d + 1);
            for j in 0..=d {
                let mut per_a = Vec::with_capacity(homs.maps(j, k).len());
                for a in homs.maps(j, k) {
                    let mut images = Vec::with_capacity(labels[k].len());
                    for x in 0..labels[k].len() {
                        let y = rule(k, j, a, x)?;
                        if y >= labels[j].len() {
                            return Err(Error::internal(format!(
                                "restriction along {} sends element {} of level {} outside level {}",
                                a, x, k, j
                            )));
                        }
                        images.push(y as u32);
                    }
                    per_a.push(images);
                }
                per_j.push(per_a);
            }
            restrictions.push(per_j);
        }
        Ok(FinitePresheaf { p: homs.prime(), d, labels, restrictions })
    }

    pub(crate) fn from_parts(p: u32, d: usize, labels: Vec<Vec<String>>, restrictions: Vec<Vec<Vec<Vec<u32>>>>) -> Self {
        FinitePresheaf { p, d, labels, restrictions }
    }

    /// The presheaf with a single point at every level.
    pub fn terminal(homs: &HomSpace) -> Result<Self> {
        let labels = vec![vec!["*".to_string()]; homs.top() + 1];
        Self::from_rule(homs, labels, |_, _, _, _| Ok(0))
    }

    /// `hom(-, F_p^r)`: level `k` is the set of `r x k` matrices, restriction is
    /// precomposition.
    pub fn representable(homs: &HomSpace, r: usize, caps: &Caps) -> Result<Self> {
        let p = homs.prime();
        let mut labels = Vec::with_capacity(homs.top() + 1);
        for k in 0..=homs.top() {
            let count = crate::linalg::enumerate_linear_maps(p, k, r, caps)?;
            labels.push(count.iter().map(FpMatrix::key).collect());
        }
        Self::from_rule(homs, labels, |k, _j, a, x| Ok(FpMatrix::from_index(p, r, k, x).mul(a).index()))
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    /// Top dimension `d`.
    pub fn top(&self) -> usize {
        self.d
    }

    pub fn level_size(&self, k: usize) -> usize {
        self.labels[k].len()
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn labels(&self, k: usize) -> &[String] {
        &self.labels[k]
    }

    /// Number of `k x j` matrices.
    pub fn num_maps(&self, j: usize, k: usize) -> usize {
        self.restrictions[k][j].len()
    }

    /// `A^*: F(k) -> F(j)` for the `a`-th matrix `A: F^j -> F^k`.
    pub fn restriction(&self, k: usize, j: usize, a: usize) -> &[u32] {
        &self.restrictions[k][j][a]
    }

    #[inline]
    pub fn restrict(&self, k: usize, j: usize, a: usize, x: usize) -> usize {
        self.restrictions[k][j][a][x] as usize
    }

    pub fn restrict_along(&self, a: &FpMatrix, x: usize) -> usize {
        self.restrict(a.rows(), a.cols(), a.index(), x)
    }

    /// Overwrite a single restriction value. Used for fault injection; the
    /// result is generally not functorial.
    pub fn set_restriction_image(&mut self, k: usize, j: usize, a: usize, x: usize, y: usize) -> Result<()> {
        if y >= self.level_size(j) || x >= self.level_size(k) || a >= self.num_maps(j, k) {
            return Err(Error::invalid("restriction override out of range"));
        }
        self.restrictions[k][j][a][x] = y as u32;
        Ok(())
    }

    pub fn same_shape(&self, other: &FinitePresheaf) -> Result<()> {
        if self.p != other.p || self.d != other.d {
            return Err(Error::Mismatch(format!(
                "presheaves over (p={}, d={}) and (p={}, d={})",
                self.p, self.d, other.p, other.d
            )));
        }
        Ok(())
    }

    /// Exhaustive check of `id^* = id` and `(A B)^* = B^* A^*`.
    pub fn check_functoriality(&self, homs: &HomSpace) -> FunctorialityReport {
        let mut report = FunctorialityReport::default();
        let d = self.d;
        'outer: for k in 0..=d {
            let id = FpMatrix::identity(self.p, k).index();
            for x in 0..self.level_size(k) {
                if self.restrict(k, k, id, x) != x {
                    report.violations.push(FunctorialityViolation {
                        outer: FpMatrix::identity(self.p, k).key(),
                        inner: String::new(),
                        level: k,
                        element: x,
                    });
                    if report.violations.len() >= MAX_REPORTED_VIOLATIONS {
                        break 'outer;
                    }
                }
            }
            for j in 0..=d {
                for a in homs.maps(j, k) {
                    let ra = self.restriction(k, j, a.index());
                    for i in 0..=d {
                        for b in homs.maps(i, j) {
                            let rb = self.restriction(j, i, b.index());
                            let rab = self.restriction(k, i, a.mul(b).index());
                            for x in 0..self.level_size(k) {
                                if rab[x] != rb[ra[x] as usize] {
                                    report.violations.push(FunctorialityViolation {
                                        outer: a.key(),
                                        inner: b.key(),
                                        level: k,
                                        element: x,
                                    });
                                    if report.violations.len() >= MAX_REPORTED_VIOLATIONS {
                                        break 'outer;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        report
    }
}

/// Levelwise product with diagonal restrictions; `(x, y)` at level `k` has
/// index `x * |G(k)| + y`.
pub fn product_presheaf(f: &FinitePresheaf, g: &FinitePresheaf) -> Result<FinitePresheaf> {
    f.same_shape(g)?;
    let d = f.d;
    let labels = (0..=d)
        .map(|k| {
            f.labels[k]
                .iter()
                .flat_map(|a| g.labels[k].iter().map(move |b| format!("({},{})", a, b)))
                .collect()
        })
        .collect();
    let mut restrictions = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let mut per_j = Vec::with_capacity(d + 1);
        for j in 0..=d {
            let gj = g.level_size(j);
            let per_a = (0..f.num_maps(j, k))
                .map(|a| {
                    let (rf, rg) = (f.restriction(k, j, a), g.restriction(k, j, a));
                    rf.iter()
                        .flat_map(|&x| rg.iter().map(move |&y| x * gj as u32 + y))
                        .collect()
                })
                .collect();
            per_j.push(per_a);
        }
        restrictions.push(per_j);
    }
    Ok(FinitePresheaf { p: f.p, d, labels, restrictions })
}

/// A morphism of presheaves, given by its per-level components. The source
/// and target are supplied to the methods that need them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresheafMap {
    pub components: Vec<Vec<u32>>,
}

/// A naturality square that fails to commute.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NaturalityViolation {
    pub from_level: usize,
    pub to_level: usize,
    pub matrix_index: usize,
    pub element: usize,
}

impl PresheafMap {
    pub fn identity(f: &FinitePresheaf) -> Self {
        PresheafMap { components: f.level_sizes().into_iter().map(|n| (0..n as u32).collect()).collect() }
    }

    pub fn apply(&self, k: usize, x: usize) -> usize {
        self.components[k][x] as usize
    }

    /// First non-commuting square, if any; also rejects components with the
    /// wrong shape or out-of-range values.
    pub fn naturality_violation(&self, src: &FinitePresheaf, tgt: &FinitePresheaf) -> Option<NaturalityViolation> {
        let bad = NaturalityViolation { from_level: 0, to_level: 0, matrix_index: usize::MAX, element: 0 };
        if src.same_shape(tgt).is_err() || self.components.len() != src.d + 1 {
            return Some(bad);
        }
        for k in 0..=src.d {
            if self.components[k].len() != src.level_size(k)
                || self.components[k].iter().any(|&y| y as usize >= tgt.level_size(k))
            {
                return Some(NaturalityViolation { from_level: k, to_level: k, ..bad });
            }
        }
        for k in 0..=src.d {
            for j in 0..=src.d {
                for a in 0..src.num_maps(j, k) {
                    for x in 0..src.level_size(k) {
                        let lhs = self.apply(j, src.restrict(k, j, a, x));
                        let rhs = tgt.restrict(k, j, a, self.apply(k, x));
                        if lhs != rhs {
                            return Some(NaturalityViolation { from_level: k, to_level: j, matrix_index: a, element: x });
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_natural(&self, src: &FinitePresheaf, tgt: &FinitePresheaf) -> bool {
        self.naturality_violation(src, tgt).is_none()
    }

    pub fn is_injective(&self) -> bool {
        self.components.iter().all(|c| {
            let mut seen = std::collections::HashSet::new();
            c.iter().all(|y| seen.insert(*y))
        })
    }

    pub fn is_surjective(&self, tgt: &FinitePresheaf) -> bool {
        self.components.iter().enumerate().all(|(k, c)| {
            let mut hit = vec![false; tgt.level_size(k)];
            for &y in c {
                hit[y as usize] = true;
            }
            hit.into_iter().all(|h| h)
        })
    }

    /// Levelwise surjective and injective.
    pub fn is_bijective(&self, tgt: &FinitePresheaf) -> bool {
        self.is_injective() && self.is_surjective(tgt)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &PresheafMap) -> PresheafMap {
        PresheafMap {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(c, o)| c.iter().map(|&x| o[x as usize]).collect())
                .collect(),
        }
    }
}

/// The two projections out of `product_presheaf(f, g)`.
pub fn product_projections(f: &FinitePresheaf, g: &FinitePresheaf) -> (PresheafMap, PresheafMap) {
    let mut left = Vec::with_capacity(f.d + 1);
    let mut right = Vec::with_capacity(f.d + 1);
    for k in 0..=f.d {
        let (fk, gk) = (f.level_size(k) as u32, g.level_size(k) as u32);
        left.push((0..fk * gk).map(|xy| xy / gk).collect());
        right.push((0..fk * gk).map(|xy| xy % gk).collect());
    }
    (PresheafMap { components: left }, PresheafMap { components: right })
}

/// `x -> (x, x)` into `product_presheaf(f, f)`.
pub fn diagonal(f: &FinitePresheaf) -> PresheafMap {
    let components = (0..=f.d)
        .map(|k| {
            let n = f.level_size(k) as u32;
            (0..n).map(|x| x * n + x).collect()
        })
        .collect();
    PresheafMap { components }
}

/// `hom(-, F^s) -> hom(-, F^r)`, `M -> A M`, for an `r x s` matrix `A`.
pub fn representable_map(homs: &HomSpace, a: &FpMatrix) -> PresheafMap {
    let components = (0..=homs.top())
        .map(|k| homs.maps(k, a.cols()).iter().map(|m| a.mul(m).index() as u32).collect())
        .collect();
    PresheafMap { components }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn homs(p: u32, d: usize) -> HomSpace {
        HomSpace::new(p, d, &Caps::default()).unwrap()
    }

    #[test]
    fn representable_level_sizes() {
        let caps = Caps::default();
        let r = FinitePresheaf::representable(&homs(2, 2), 1, &caps).unwrap();
        assert_eq!(r.level_sizes(), vec![1, 2, 4]);
        let z = FinitePresheaf::representable(&homs(2, 2), 0, &caps).unwrap();
        assert_eq!(z.level_sizes(), vec![1, 1, 1]);
        let t = FinitePresheaf::representable(&homs(3, 1), 2, &caps).unwrap();
        assert_eq!(t.level_sizes(), vec![1, 9]);
    }

    #[test]
    fn functoriality_of_basic_presheaves() {
        let caps = Caps::default();
        for (p, d) in [(2, 2), (3, 2), (2, 3)] {
            let h = homs(p, d);
            for r in 0..=2 {
                assert!(FinitePresheaf::representable(&h, r, &caps).unwrap().check_functoriality(&h).passed());
            }
            assert!(FinitePresheaf::terminal(&h).unwrap().check_functoriality(&h).passed());
        }
    }

    #[test]
    fn corrupted_restriction_is_reported() {
        let caps = Caps::default();
        let h = homs(2, 2);
        let mut r = FinitePresheaf::representable(&h, 1, &caps).unwrap();
        // A = [1 0]^T : F^1 -> F^2, element 3 of level 2 is the matrix [1 1]
        let a = FpMatrix::new(2, 2, 1, vec![1, 0]).unwrap();
        let a_idx = a.index();
        let old = r.restrict(2, 1, a_idx, 3);
        r.set_restriction_image(2, 1, a_idx, 3, 1 - old).unwrap();
        let report = r.check_functoriality(&h);
        assert!(!report.passed());
        assert!(report.violations.iter().any(|v| v.outer == a.key() || v.inner == a.key()));
    }

    #[test]
    fn product_with_terminal() {
        let caps = Caps::default();
        let h = homs(2, 2);
        let f = FinitePresheaf::representable(&h, 1, &caps).unwrap();
        let t = FinitePresheaf::terminal(&h).unwrap();
        let ft = product_presheaf(&f, &t).unwrap();
        assert!(ft.check_functoriality(&h).passed());
        let iso = presheaf_iso_check(&ft, &f, &caps).unwrap();
        assert!(iso.is_some());
        let other = FinitePresheaf::terminal(&homs(3, 2)).unwrap();
        assert!(product_presheaf(&f, &other).is_err());
    }

    #[test]
    fn map_predicates() {
        let caps = Caps::default();
        let h = homs(2, 2);
        let f = FinitePresheaf::representable(&h, 1, &caps).unwrap();
        let t = FinitePresheaf::terminal(&h).unwrap();
        let to_point = PresheafMap { components: f.level_sizes().iter().map(|&n| vec![0; n]).collect() };
        assert!(to_point.is_natural(&f, &t));
        assert!(to_point.is_surjective(&t));
        assert!(!to_point.is_injective());
        let id = PresheafMap::identity(&f);
        assert!(id.is_natural(&f, &f) && id.is_bijective(&f));
        let mut broken = id.clone();
        broken.components[1].swap(0, 1);
        assert!(!broken.is_natural(&f, &f));
        assert_eq!(id.then(&to_point), to_point);
    }
}
