use serde::Serialize;

use super::coend::{coend_presheaf, Coend};
use super::{build_green_leary_category, build_quillen_category, FiniteSetFunctor};
use crate::caps::Caps;
use crate::error::Result;
use crate::group::{rep_orbits, FiniteGroup, RepOrbits};
use crate::linalg::HomSpace;
use crate::presheaf::{beta_quotient, presheaf_iso_check, FinitePresheaf, PresheafMap};

/// `Rep(-, G)` truncated at `homs.top()`.
#[derive(Clone, Debug)]
pub struct RepPresheaf {
    pub presheaf: FinitePresheaf,
    pub orbits: Vec<RepOrbits>,
}

impl RepPresheaf {
    /// Class of a homomorphism `F^k -> G` given by basis images.
    pub fn class_of(&self, k: usize, images: &[u32]) -> Result<usize> {
        self.orbits[k].class_of(images)
    }
}

/// Level `k` is `Rep(F^k, G)`; restriction along `A` is `[α] -> [α A]`.
pub fn rep_presheaf(group: &FiniteGroup, homs: &HomSpace, caps: &Caps) -> Result<RepPresheaf> {
    let p = homs.prime();
    let orbits: Vec<RepOrbits> = (0..=homs.top()).map(|k| rep_orbits(k, p, group, caps)).collect::<Result<_>>()?;
    let labels = orbits
        .iter()
        .map(|o| {
            (0..o.num_classes())
                .map(|c| {
                    let rep = o.representative(c);
                    let parts: Vec<&str> = rep.images.iter().map(|&x| group.label(x)).collect();
                    format!("[{}]", parts.join(", "))
                })
                .collect()
        })
        .collect();
    let presheaf = FinitePresheaf::from_rule(homs, labels, |k, j, a, c| {
        let alpha = orbits[k].representative(c);
        orbits[j].class_of(&alpha.precompose(group, a).images)
    })?;
    Ok(RepPresheaf { presheaf, orbits })
}

/// Outcome of comparing two presheaves: the canonical comparison map, and an
/// independent isomorphism search.
#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    /// The search found an isomorphism.
    pub isomorphic: bool,
    /// The canonical map is well defined, natural and bijective.
    pub canonical_bijective: bool,
    pub lhs_sizes: Vec<usize>,
    pub rhs_sizes: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<PresheafMap>,
}

impl Comparison {
    pub fn holds(&self) -> bool {
        self.isomorphic && self.canonical_bijective
    }
}

/// The canonical map from a singleton coend to a quotient of `Rep(-, G)`:
/// `(E, M) -> class of (inclusion ∘ M)`, followed by `to_target`.
fn canonical_from_coend(
    coend: &Coend,
    functor: &FiniteSetFunctor,
    rep: &RepPresheaf,
    to_target: &PresheafMap,
) -> Option<PresheafMap> {
    let mut components = Vec::with_capacity(coend.levels.len());
    for (k, lv) in coend.levels.iter().enumerate() {
        let mut comp = vec![u32::MAX; lv.witness.num_classes()];
        for idx in 0..lv.witness.ambient_size() {
            let (obj, _s, m) = lv.decode(idx);
            let images = super::coend::hom_images(functor, obj, k, m);
            let target = to_target.apply(k, rep.class_of(k, &images).ok()?) as u32;
            let c = lv.witness.class(idx);
            if comp[c] != u32::MAX && comp[c] != target {
                return None;
            }
            comp[c] = target;
        }
        components.push(comp);
    }
    Some(PresheafMap { components })
}

fn compare(coend: &Coend, functor: &FiniteSetFunctor, rep: &RepPresheaf, target: &FinitePresheaf, to_target: &PresheafMap, caps: &Caps) -> Result<Comparison> {
    let witness = presheaf_iso_check(&coend.presheaf, target, caps)?;
    let canonical_bijective = canonical_from_coend(coend, functor, rep, to_target)
        .map_or(false, |m| m.is_natural(&coend.presheaf, target) && m.is_bijective(target));
    Ok(Comparison {
        isomorphic: witness.is_some(),
        canonical_bijective,
        lhs_sizes: coend.presheaf.level_sizes(),
        rhs_sizes: target.level_sizes(),
        witness,
    })
}

/// Coend of the constant singleton over `A_p(G)` against `Rep(-, G)`.
pub fn quillen_comparison(group: &FiniteGroup, homs: &HomSpace, caps: &Caps) -> Result<Comparison> {
    let functor = FiniteSetFunctor::constant_singleton(build_quillen_category(group, homs.prime())?);
    let coend = coend_presheaf(&functor, homs, caps)?;
    let rep = rep_presheaf(group, homs, caps)?;
    compare(&coend, &functor, &rep, &rep.presheaf, &PresheafMap::identity(&rep.presheaf), caps)
}

/// `colim_{W in A_n(G)} hom(-, W)`, the singleton coend over `A_n(G)`.
pub fn gl_colimit_presheaf(group: &FiniteGroup, n: usize, homs: &HomSpace, caps: &Caps) -> Result<(FiniteSetFunctor, Coend)> {
    let functor = FiniteSetFunctor::constant_singleton(build_green_leary_category(group, homs.prime(), n, caps)?);
    let coend = coend_presheaf(&functor, homs, caps)?;
    Ok((functor, coend))
}

/// The Green-Leary colimit against `beta_n Rep(-, G)`.
pub fn compare_gl_beta(group: &FiniteGroup, n: usize, homs: &HomSpace, caps: &Caps) -> Result<Comparison> {
    let (functor, coend) = gl_colimit_presheaf(group, n, homs, caps)?;
    let rep = rep_presheaf(group, homs, caps)?;
    let beta = beta_quotient(&rep.presheaf, n)?;
    compare(&coend, &functor, &rep, &beta.presheaf, &beta.map, caps)
}
