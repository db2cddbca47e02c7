//! Standard collections of presheaves, maps, End-sets and complexes that the
//! verification suites run over.

use crate::caps::Caps;
use crate::equivariant::{named as complexes, GComplex};
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::linalg::{FpMatrix, HomSpace};
use crate::presheaf::{diagonal, e_d_evaluate, product_presheaf, product_projections, representable_map, EndMSet, FinitePresheaf, PresheafMap};
use crate::quillen::rep_presheaf;

#[derive(Clone, Debug)]
pub struct NamedPresheaf {
    pub name: String,
    pub presheaf: FinitePresheaf,
}

/// A natural map between two entries of a [`PresheafBattery`].
#[derive(Clone, Debug)]
pub struct NamedMap {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub map: PresheafMap,
}

#[derive(Clone, Debug, Default)]
pub struct PresheafBattery {
    pub presheaves: Vec<NamedPresheaf>,
    /// Levelwise injective maps.
    pub injections: Vec<NamedMap>,
    /// Levelwise surjective maps.
    pub surjections: Vec<NamedMap>,
}

impl PresheafBattery {
    fn push(&mut self, name: impl Into<String>, presheaf: FinitePresheaf) -> usize {
        self.presheaves.push(NamedPresheaf { name: name.into(), presheaf });
        self.presheaves.len() - 1
    }

    fn add_product(&mut self, a: usize, b: usize) -> Result<usize> {
        let (fa, fb) = (&self.presheaves[a], &self.presheaves[b]);
        let name = format!("{} x {}", fa.name, fb.name);
        let prod = product_presheaf(&fa.presheaf, &fb.presheaf)?;
        let (left, right) = product_projections(&fa.presheaf, &fb.presheaf);
        let idx = self.push(name.clone(), prod);
        self.surjections.push(NamedMap { name: format!("{} -> first factor", name), source: idx, target: a, map: left });
        self.surjections.push(NamedMap { name: format!("{} -> second factor", name), source: idx, target: b, map: right });
        Ok(idx)
    }
}

fn divides(p: u32, g: &FiniteGroup) -> bool {
    g.order() % p as usize == 0
}

/// Representables `hom(-, F^r)` for `r <= 2`, `Rep(-, G)` for the groups of
/// order divisible by `p`, and products of these, with inclusions,
/// projections and diagonals between them.
pub fn presheaf_battery(homs: &HomSpace, groups: &[(String, FiniteGroup)], caps: &Caps) -> Result<PresheafBattery> {
    let p = homs.prime();
    let mut b = PresheafBattery::default();
    let reps: Vec<usize> = (0..=2)
        .map(|r| Ok(b.push(format!("hom(-,F^{})", r), FinitePresheaf::representable(homs, r, caps)?)))
        .collect::<Result<_>>()?;
    b.injections.push(NamedMap {
        name: "hom(-,F^1) -> hom(-,F^2) by inclusion".into(),
        source: reps[1],
        target: reps[2],
        map: representable_map(homs, &FpMatrix::inclusion(p, 1, 2)),
    });
    b.surjections.push(NamedMap {
        name: "hom(-,F^2) -> hom(-,F^1) by projection".into(),
        source: reps[2],
        target: reps[1],
        map: representable_map(homs, &FpMatrix::projection(p, 2, 1)),
    });
    let square = b.add_product(reps[1], reps[1])?;
    b.injections.push(NamedMap {
        name: "diagonal of hom(-,F^1)".into(),
        source: reps[1],
        target: square,
        map: diagonal(&b.presheaves[reps[1]].presheaf),
    });
    for (name, g) in groups.iter().filter(|(_, g)| divides(p, g)) {
        let rep = b.push(format!("Rep(-,{})", name), rep_presheaf(g, homs, caps)?.presheaf);
        b.add_product(rep, reps[1])?;
        let square = b.add_product(rep, rep)?;
        b.injections.push(NamedMap {
            name: format!("diagonal of Rep(-,{})", name),
            source: rep,
            target: square,
            map: diagonal(&b.presheaves[rep].presheaf),
        });
    }
    Ok(b)
}

/// Singleton, `End(F^d)` itself, and the top levels of the representables and
/// of `Rep(-, G)`, all at dimension `d = homs.top()`.
pub fn endset_battery(homs: &HomSpace, groups: &[(String, FiniteGroup)], caps: &Caps) -> Result<Vec<(String, EndMSet)>> {
    let d = homs.top();
    let mut out = vec![("singleton".to_string(), EndMSet::singleton(homs, d)), (format!("End(F^{})", d), EndMSet::free(homs, d))];
    for r in 0..=2 {
        out.push((format!("e_d hom(-,F^{})", r), e_d_evaluate(&FinitePresheaf::representable(homs, r, caps)?, d)?));
    }
    for (name, g) in groups.iter().filter(|(_, g)| divides(homs.prime(), g)) {
        out.push((format!("e_d Rep(-,{})", name), e_d_evaluate(&rep_presheaf(g, homs, caps)?.presheaf, d)?));
    }
    Ok(out)
}

/// The complexes attached to a group: always the point, plus whichever of
/// the standard permutation-built complexes the group admits.
pub fn complex_battery(group: &FiniteGroup) -> Vec<(String, GComplex)> {
    let mut out = vec![("point".to_string(), GComplex::point(group))];
    if group.permutation(group.identity()).is_none() {
        return out;
    }
    let candidates: [(&str, fn(&FiniteGroup) -> Result<GComplex>); 3] = [
        ("points", complexes::permutation_action),
        ("sign path", complexes::flipped_path),
        ("subdivided cycle", complexes::subdivided_cycle),
    ];
    for (name, build) in candidates {
        if let Ok(x) = build(group) {
            out.push((name.to_string(), x));
        }
    }
    out
}
