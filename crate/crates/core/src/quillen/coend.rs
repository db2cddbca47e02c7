//! Coends `∫ F(E) x hom(V, E)` over a category of elementary abelian
//! subgroups, computed levelwise by union-find over the generating relations
//! `(F(j) s, M) ~ (s, j M)`.

use super::category::vector_index;
use super::FiniteSetFunctor;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::linalg::{count_matrices, FpMatrix, HomSpace};
use crate::presheaf::FinitePresheaf;
use crate::quotient::{QuotientWitness, UnionFind};

/// The coend at `V = F_p^k`, over triples `(object, s, M)` with `M` a
/// `rank x k` coordinate matrix.
#[derive(Clone, Debug)]
pub struct CoendLevel {
    pub k: usize,
    pub witness: QuotientWitness,
    /// Start of each object's block in the ambient index.
    pub offsets: Vec<usize>,
    /// Number of linear maps `F^k -> E` per object.
    pub hom_sizes: Vec<usize>,
}

impl CoendLevel {
    pub fn index(&self, obj: usize, s: usize, m: usize) -> usize {
        self.offsets[obj] + s * self.hom_sizes[obj] + m
    }

    /// `(object, s, matrix index)` of an ambient index.
    pub fn decode(&self, idx: usize) -> (usize, usize, usize) {
        let obj = self.offsets.partition_point(|&o| o <= idx) - 1;
        let rel = idx - self.offsets[obj];
        (obj, rel / self.hom_sizes[obj], rel % self.hom_sizes[obj])
    }
}

/// Quotient of `⨿_E F(E) x hom(F^k, E)`.
pub fn coend_evaluate(f: &FiniteSetFunctor, k: usize, caps: &Caps) -> Result<CoendLevel> {
    let cat = &f.base;
    let p = cat.prime;
    let mut offsets = Vec::with_capacity(cat.num_objects());
    let mut hom_sizes = Vec::with_capacity(cat.num_objects());
    let mut total: u128 = 0;
    for (o, obj) in cat.objects.iter().enumerate() {
        let h = count_matrices(p, obj.rank, k);
        offsets.push(total as usize);
        hom_sizes.push(h as usize);
        total += h * f.value_size(o) as u128;
        caps.check_enum("coend ambient set", total)?;
    }
    let mut uf = UnionFind::new(total as usize);
    let level = CoendLevel { k, witness: QuotientWitness::discrete(0), offsets, hom_sizes };
    for a in 0..cat.num_objects() {
        let ra = cat.objects[a].rank;
        for b in 0..cat.num_objects() {
            for (ji, j) in cat.hom(a, b).iter().enumerate() {
                for m in 0..level.hom_sizes[a] {
                    let jm = j.matrix.mul(&FpMatrix::from_index(p, ra, k, m)).index();
                    for s in 0..f.value_size(b) {
                        uf.union(level.index(a, f.pull(a, b, ji, s), m), level.index(b, s, jm));
                    }
                }
            }
        }
    }
    Ok(CoendLevel { witness: uf.into_witness(), ..level })
}

/// The coend as a presheaf truncated at `homs.top()`, with per-level data.
#[derive(Clone, Debug)]
pub struct Coend {
    pub presheaf: FinitePresheaf,
    pub levels: Vec<CoendLevel>,
}

impl Coend {
    /// Homomorphism `F^k -> G` and object of the representative triple
    /// `(object, s, M)` of a class: returns `(object, s, images)`.
    pub fn representative(&self, f: &FiniteSetFunctor, k: usize, class: usize) -> (usize, usize, Vec<u32>) {
        let level = &self.levels[k];
        let (obj, s, m) = level.decode(level.witness.representative(class));
        (obj, s, hom_images(f, obj, k, m))
    }
}

/// Images of the standard basis under the `m`-th linear map `F^k -> E`.
pub(crate) fn hom_images(f: &FiniteSetFunctor, obj: usize, k: usize, m: usize) -> Vec<u32> {
    let e = &f.base.objects[obj];
    let mat = FpMatrix::from_index(e.prime, e.rank, k, m);
    (0..k).map(|c| e.element_at(vector_index(&mat.column(c), e.prime))).collect()
}

pub fn coend_presheaf(f: &FiniteSetFunctor, homs: &HomSpace, caps: &Caps) -> Result<Coend> {
    let p = f.base.prime;
    if homs.prime() != p {
        return Err(Error::Mismatch(format!("category over F_{} with hom space over F_{}", p, homs.prime())));
    }
    let levels: Vec<CoendLevel> = (0..=homs.top()).map(|k| coend_evaluate(f, k, caps)).collect::<Result<_>>()?;
    let labels = levels
        .iter()
        .map(|lv| {
            lv.witness
                .representatives
                .iter()
                .map(|&r| {
                    let (obj, s, m) = lv.decode(r);
                    let rank = f.base.objects[obj].rank;
                    format!("E{}|{}|{}", obj, f.labels[obj][s], FpMatrix::from_index(p, rank, lv.k, m).key())
                })
                .collect()
        })
        .collect();
    let restrict = |k: usize, j: usize, a: &FpMatrix, idx: usize| -> usize {
        let (obj, s, m) = levels[k].decode(idx);
        let rank = f.base.objects[obj].rank;
        let ma = FpMatrix::from_index(p, rank, k, m).mul(a).index();
        levels[j].witness.class(levels[j].index(obj, s, ma))
    };
    let presheaf = FinitePresheaf::from_rule(homs, labels, |k, j, a, c| Ok(restrict(k, j, a, levels[k].witness.representative(c))))?;
    for k in 0..=homs.top() {
        for j in 0..=homs.top() {
            for a in homs.maps(j, k) {
                for idx in 0..levels[k].witness.ambient_size() {
                    if restrict(k, j, a, idx) != presheaf.restrict(k, j, a.index(), levels[k].witness.class(idx)) {
                        return Err(Error::internal(format!(
                            "coend restriction along {} is not well defined at level {}",
                            a, k
                        )));
                    }
                }
            }
        }
    }
    Ok(Coend { presheaf, levels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;
    use crate::quillen::build_quillen_category;

    #[test]
    fn singleton_coend_counts() {
        let caps = Caps::default();
        let f = FiniteSetFunctor::constant_singleton(build_quillen_category(&named::symmetric3(), 2).unwrap());
        assert_eq!(coend_evaluate(&f, 1, &caps).unwrap().witness.num_classes(), 2);
        assert_eq!(coend_evaluate(&f, 0, &caps).unwrap().witness.num_classes(), 1);
        assert_eq!(coend_evaluate(&f, 2, &caps).unwrap().witness.num_classes(), 4);
    }

    #[test]
    fn decode_round_trip() {
        let caps = Caps::default();
        let f = FiniteSetFunctor::constant_singleton(build_quillen_category(&named::dihedral8(), 2).unwrap());
        let lv = coend_evaluate(&f, 2, &caps).unwrap();
        for idx in 0..lv.witness.ambient_size() {
            let (o, s, m) = lv.decode(idx);
            assert_eq!(lv.index(o, s, m), idx);
        }
    }

    #[test]
    fn trivial_group_gives_terminal() {
        let caps = Caps::default();
        let homs = HomSpace::new(2, 2, &caps).unwrap();
        let f = FiniteSetFunctor::constant_singleton(build_quillen_category(&named::trivial(), 2).unwrap());
        let c = coend_presheaf(&f, &homs, &caps).unwrap();
        assert_eq!(c.presheaf.level_sizes(), vec![1, 1, 1]);
        assert!(c.presheaf.check_functoriality(&homs).passed());
    }
}
