//! The quotient functors `beta_n`: sections at level `k` are identified when
//! all their restrictions to levels `<= n` agree.

use serde::Serialize;

use super::{product_presheaf, FinitePresheaf, PresheafMap};
use crate::error::{Error, Result};
use crate::quotient::QuotientWitness;

#[derive(Clone, Debug)]
pub struct BetaQuotient {
    pub presheaf: FinitePresheaf,
    pub witnesses: Vec<QuotientWitness>,
    /// The canonical surjection `F -> beta_n F`.
    pub map: PresheafMap,
}

/// Presheaf induced on the classes of a levelwise partition that is
/// compatible with the restrictions. Fails if it is not.
pub(crate) fn induced_quotient(f: &FinitePresheaf, witnesses: &[QuotientWitness]) -> Result<FinitePresheaf> {
    let d = f.top();
    let labels = (0..=d)
        .map(|k| witnesses[k].representatives.iter().map(|&r| f.labels(k)[r].clone()).collect())
        .collect();
    let mut restrictions = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let mut per_j = Vec::with_capacity(d + 1);
        for j in 0..=d {
            let mut per_a = Vec::with_capacity(f.num_maps(j, k));
            for a in 0..f.num_maps(j, k) {
                let r = f.restriction(k, j, a);
                let induced: Vec<u32> = witnesses[k]
                    .representatives
                    .iter()
                    .map(|&x| witnesses[j].class(r[x] as usize) as u32)
                    .collect();
                for (x, &y) in r.iter().enumerate() {
                    if induced[witnesses[k].class(x)] as usize != witnesses[j].class(y as usize) {
                        return Err(Error::internal(format!(
                            "partition at level {} is not compatible with restriction {} -> {} (matrix {})",
                            k, k, j, a
                        )));
                    }
                }
                per_a.push(induced);
            }
            per_j.push(per_a);
        }
        restrictions.push(per_j);
    }
    Ok(FinitePresheaf::from_parts(f.prime(), d, labels, restrictions))
}

/// The profile of `x` at level `k`: its restrictions along every map from a
/// space of dimension `<= n`.
fn profile(f: &FinitePresheaf, n: usize, k: usize, x: usize) -> Vec<u32> {
    let top = n.min(f.top());
    (0..=top)
        .flat_map(|m| (0..f.num_maps(m, k)).map(move |a| f.restrict(k, m, a, x) as u32))
        .collect()
}

/// `beta_n F`. Any `n >= d` (including `usize::MAX` for infinity) gives `F`.
pub fn beta_quotient(f: &FinitePresheaf, n: usize) -> Result<BetaQuotient> {
    let witnesses: Vec<QuotientWitness> = (0..=f.top())
        .map(|k| {
            let keys: Vec<Vec<u32>> = (0..f.level_size(k)).map(|x| profile(f, n, k, x)).collect();
            QuotientWitness::from_keys(&keys)
        })
        .collect();
    let presheaf = induced_quotient(f, &witnesses)?;
    let map = PresheafMap {
        components: witnesses.iter().map(|w| w.class_of.iter().map(|&c| c as u32).collect()).collect(),
    };
    Ok(BetaQuotient { presheaf, witnesses, map })
}

/// `beta_{n+1} F -> beta_n F`, defined on representatives. Checks that it is
/// well defined and that `F -> beta_{n+1} F -> beta_n F` is `F -> beta_n F`.
pub fn tower_surjection(f: &FinitePresheaf, n: usize) -> Result<PresheafMap> {
    let upper = beta_quotient(f, n.saturating_add(1))?;
    let lower = beta_quotient(f, n)?;
    let components: Vec<Vec<u32>> = (0..=f.top())
        .map(|k| {
            upper.witnesses[k]
                .representatives
                .iter()
                .map(|&r| lower.witnesses[k].class(r) as u32)
                .collect()
        })
        .collect();
    let tower = PresheafMap { components };
    if upper.map.then(&tower) != lower.map {
        return Err(Error::internal(format!("beta_{} does not factor through beta_{}", n, n + 1)));
    }
    Ok(tower)
}

/// `beta_n` of a natural transformation `phi: F -> G`.
pub fn beta_of_map(
    phi: &PresheafMap,
    src: &BetaQuotient,
    tgt: &BetaQuotient,
) -> Result<PresheafMap> {
    let components: Vec<Vec<u32>> = src
        .witnesses
        .iter()
        .enumerate()
        .map(|(k, w)| {
            w.representatives
                .iter()
                .map(|&r| tgt.witnesses[k].class(phi.apply(k, r)) as u32)
                .collect()
        })
        .collect();
    let induced = PresheafMap { components };
    if src.map.then(&induced) != phi.then(&tgt.map) {
        return Err(Error::internal("beta_n of a map is not well defined"));
    }
    Ok(induced)
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductCheck {
    pub holds: bool,
    pub lhs_sizes: Vec<usize>,
    pub rhs_sizes: Vec<usize>,
}

/// Compare `beta_n (F x G)` with `beta_n F x beta_n G` along the canonical
/// map `[(x, y)] -> ([x], [y])`.
pub fn beta_product_check(f: &FinitePresheaf, g: &FinitePresheaf, n: usize) -> Result<ProductCheck> {
    let fg = product_presheaf(f, g)?;
    let lhs = beta_quotient(&fg, n)?;
    let bf = beta_quotient(f, n)?;
    let bg = beta_quotient(g, n)?;
    let rhs = product_presheaf(&bf.presheaf, &bg.presheaf)?;
    let mut components = Vec::with_capacity(f.top() + 1);
    let mut well_defined = true;
    for k in 0..=f.top() {
        let gk = g.level_size(k);
        let bgk = bg.presheaf.level_size(k);
        let mut comp = vec![u32::MAX; lhs.presheaf.level_size(k)];
        for xy in 0..fg.level_size(k) {
            let (x, y) = (xy / gk, xy % gk);
            let target = (bf.witnesses[k].class(x) * bgk + bg.witnesses[k].class(y)) as u32;
            let c = lhs.witnesses[k].class(xy);
            if comp[c] == u32::MAX {
                comp[c] = target;
            } else if comp[c] != target {
                well_defined = false;
            }
        }
        components.push(comp);
    }
    let canonical = PresheafMap { components };
    let holds = well_defined
        && canonical.is_natural(&lhs.presheaf, &rhs)
        && canonical.is_bijective(&rhs);
    Ok(ProductCheck { holds, lhs_sizes: lhs.presheaf.level_sizes(), rhs_sizes: rhs.level_sizes() })
}

/// The structural laws of `beta_n` on a single presheaf.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaLaws {
    /// `beta_n beta_n F -> beta_n F` is a bijection.
    pub idempotent: bool,
    /// `F -> beta_n F` is levelwise surjective.
    pub surjective: bool,
    /// `F -> beta_n F` is bijective at levels `<= n`.
    pub bijective_below: bool,
    /// `beta_{n+1} F -> beta_n F` exists, is natural and is surjective.
    pub tower: bool,
}

impl BetaLaws {
    pub fn hold(&self) -> bool {
        self.idempotent && self.surjective && self.bijective_below && self.tower
    }
}

pub fn beta_laws(f: &FinitePresheaf, n: usize) -> Result<BetaLaws> {
    let b = beta_quotient(f, n)?;
    let bb = beta_quotient(&b.presheaf, n)?;
    let idempotent = bb.map.is_bijective(&bb.presheaf);
    let surjective = b.map.is_natural(f, &b.presheaf) && b.map.is_surjective(&b.presheaf);
    let bijective_below = (0..=n.min(f.top())).all(|k| b.witnesses[k].num_classes() == f.level_size(k));
    let tower = match tower_surjection(f, n) {
        Ok(t) => {
            let upper = beta_quotient(f, n.saturating_add(1))?;
            t.is_natural(&upper.presheaf, &b.presheaf) && t.is_surjective(&b.presheaf)
        }
        Err(Error::Internal(_)) => false,
        Err(e) => return Err(e),
    };
    Ok(BetaLaws { idempotent, surjective, bijective_below, tower })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::linalg::HomSpace;
    use crate::presheaf::presheaf_iso_check;

    fn setup(p: u32, d: usize) -> (HomSpace, Caps) {
        let caps = Caps::default();
        (HomSpace::new(p, d, &caps).unwrap(), caps)
    }

    #[test]
    fn representables_do_not_collapse() {
        let (h, caps) = setup(2, 2);
        for r in 0..=2 {
            let f = FinitePresheaf::representable(&h, r, &caps).unwrap();
            for n in 1..=3 {
                let b = beta_quotient(&f, n).unwrap();
                assert_eq!(b.presheaf.level_sizes(), f.level_sizes());
                assert!(presheaf_iso_check(&b.presheaf, &f, &caps).unwrap().is_some());
            }
        }
    }

    #[test]
    fn beta_zero_collapses_representable() {
        // only the zero map leaves F^0, so beta_0 of anything with a point
        // at level 0 is terminal
        let (h, caps) = setup(2, 2);
        let f = FinitePresheaf::representable(&h, 1, &caps).unwrap();
        let b = beta_quotient(&f, 0).unwrap();
        assert_eq!(b.presheaf.level_sizes(), vec![1, 1, 1]);
    }

    #[test]
    fn top_level_is_identity() {
        let (h, caps) = setup(3, 2);
        let f = FinitePresheaf::representable(&h, 1, &caps).unwrap();
        for n in [2, 5, usize::MAX] {
            let b = beta_quotient(&f, n).unwrap();
            assert_eq!(b.map, PresheafMap::identity(&f));
            assert_eq!(b.presheaf, f);
        }
    }

    #[test]
    fn tower_and_products_on_representables() {
        let (h, caps) = setup(2, 2);
        let f = FinitePresheaf::representable(&h, 1, &caps).unwrap();
        let g = FinitePresheaf::representable(&h, 2, &caps).unwrap();
        for n in 0..2 {
            let t = tower_surjection(&f, n).unwrap();
            let upper = beta_quotient(&f, n + 1).unwrap();
            let lower = beta_quotient(&f, n).unwrap();
            assert!(t.is_natural(&upper.presheaf, &lower.presheaf));
            assert!(t.is_surjective(&lower.presheaf));
        }
        assert!(beta_product_check(&f, &f, 1).unwrap().holds);
        assert!(beta_product_check(&f, &g, 0).unwrap().holds);
    }

    #[test]
    fn map_of_betas() {
        let (h, caps) = setup(2, 2);
        let f = FinitePresheaf::representable(&h, 1, &caps).unwrap();
        let t = FinitePresheaf::terminal(&h).unwrap();
        let phi = PresheafMap { components: f.level_sizes().iter().map(|&n| vec![0; n]).collect() };
        let bf = beta_quotient(&f, 1).unwrap();
        let bt = beta_quotient(&t, 1).unwrap();
        let induced = beta_of_map(&phi, &bf, &bt).unwrap();
        assert!(induced.is_natural(&bf.presheaf, &bt.presheaf));
    }
}
