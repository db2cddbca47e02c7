use std::collections::HashMap;

use serde::Serialize;

use crate::caps::Caps;
use crate::error::Result;
use crate::group::{elem_abelian_subgroups, ElemAbSubgroup, FiniteGroup};
use crate::linalg::{enumerate_linear_maps, FpMatrix};

/// An injective homomorphism between two objects, stored as a set map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Morphism {
    /// Image of each element of the source, in the source's element order.
    pub images: Vec<u32>,
    /// Target-basis coordinates of the images of the source basis.
    #[serde(skip)]
    pub matrix: FpMatrix,
    /// Some `g` with `x -> g x g^-1`, when the map is a global conjugation.
    pub realizer: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CategoryInstance {
    pub prime: u32,
    pub objects: Vec<ElemAbSubgroup>,
    /// `morphisms[src][tgt]`, deduplicated as set maps.
    pub morphisms: Vec<Vec<Vec<Morphism>>>,
}

fn morphism_from_matrix(src: &ElemAbSubgroup, tgt: &ElemAbSubgroup, matrix: FpMatrix, realizer: Option<u32>) -> Morphism {
    let p = src.prime;
    let images = src
        .elements
        .iter()
        .map(|&x| {
            let v = src.coordinates(x).expect("element of source");
            tgt.element_at(vector_index(&matrix.apply(&v), p))
        })
        .collect();
    Morphism { images, matrix, realizer }
}

pub(crate) fn vector_index(v: &[u32], p: u32) -> usize {
    v.iter().fold(0usize, |acc, &e| acc * p as usize + e as usize)
}

fn conjugation_matrix(group: &FiniteGroup, g: u32, src: &ElemAbSubgroup, tgt: &ElemAbSubgroup) -> Option<FpMatrix> {
    let mut entries = vec![0u32; tgt.rank * src.rank];
    for (c, &b) in src.basis.iter().enumerate() {
        let coords = tgt.coordinates(group.conj(g, b))?;
        for (r, e) in coords.into_iter().enumerate() {
            entries[r * src.rank + c] = e;
        }
    }
    Some(FpMatrix::new(src.prime, tgt.rank, src.rank, entries).expect("reduced coordinates"))
}

/// `A_p(G)`: morphisms are the maps `x -> g x g^-1` landing in the target.
pub fn build_quillen_category(group: &FiniteGroup, p: u32) -> Result<CategoryInstance> {
    let objects = elem_abelian_subgroups(group, p)?;
    let mut morphisms = Vec::with_capacity(objects.len());
    for src in &objects {
        let mut row = Vec::with_capacity(objects.len());
        for tgt in &objects {
            let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
            let mut maps = Vec::new();
            if src.rank <= tgt.rank {
                for g in group.elements() {
                    if let Some(m) = conjugation_matrix(group, g, src, tgt) {
                        let mor = morphism_from_matrix(src, tgt, m, Some(g));
                        if seen.insert(mor.images.clone(), ()).is_none() {
                            maps.push(mor);
                        }
                    }
                }
            }
            row.push(maps);
        }
        morphisms.push(row);
    }
    Ok(CategoryInstance { prime: p, objects, morphisms })
}

/// `A_n(G)`: injective homomorphisms `phi: V -> W` such that for every
/// linear `psi: F^n -> V` some `g` satisfies `phi(psi(x)) = g psi(x) g^-1`.
pub fn build_green_leary_category(group: &FiniteGroup, p: u32, n: usize, caps: &Caps) -> Result<CategoryInstance> {
    let objects = elem_abelian_subgroups(group, p)?;
    let mut morphisms = Vec::with_capacity(objects.len());
    for src in &objects {
        let probes: Vec<Vec<u32>> = enumerate_linear_maps(p, n, src.rank, caps)?
            .iter()
            .map(|psi| (0..n).map(|c| src.element_at(vector_index(&psi.column(c), p))).collect())
            .collect();
        let mut row = Vec::with_capacity(objects.len());
        for tgt in &objects {
            let mut maps = Vec::new();
            if src.rank <= tgt.rank {
                for m in enumerate_linear_maps(p, src.rank, tgt.rank, caps)? {
                    if m.rank() != src.rank {
                        continue;
                    }
                    let realizer = group
                        .elements()
                        .find(|&g| conjugation_matrix(group, g, src, tgt).as_ref() == Some(&m));
                    let mor = morphism_from_matrix(src, tgt, m, realizer);
                    let locally_conjugate = probes.iter().all(|ys| {
                        let targets: Vec<u32> = ys.iter().map(|&y| mor.images[src.position(y).expect("in source")]).collect();
                        group
                            .elements()
                            .any(|g| ys.iter().zip(&targets).all(|(&y, &t)| group.conj(g, y) == t))
                    });
                    if locally_conjugate {
                        maps.push(mor);
                    }
                }
            }
            row.push(maps);
        }
        morphisms.push(row);
    }
    Ok(CategoryInstance { prime: p, objects, morphisms })
}

impl CategoryInstance {
    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn hom(&self, src: usize, tgt: usize) -> &[Morphism] {
        &self.morphisms[src][tgt]
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.iter().flatten().map(Vec::len).sum()
    }

    /// Morphism counts per ordered pair of objects.
    pub fn hom_counts(&self) -> Vec<Vec<usize>> {
        self.morphisms.iter().map(|row| row.iter().map(Vec::len).collect()).collect()
    }

    pub fn identity_index(&self, obj: usize) -> Option<usize> {
        let els = &self.objects[obj].elements;
        self.morphisms[obj][obj].iter().position(|m| &m.images == els)
    }

    pub fn find(&self, src: usize, tgt: usize, images: &[u32]) -> Option<usize> {
        self.morphisms[src][tgt].iter().position(|m| m.images == images)
    }

    /// Index of `second ∘ first` in `hom(a, c)`, if present.
    pub fn compose(&self, a: usize, b: usize, c: usize, first: usize, second: usize) -> Option<usize> {
        let f = &self.morphisms[a][b][first];
        let g = &self.morphisms[b][c][second];
        let mid = &self.objects[b];
        let images: Vec<u32> = f.images.iter().map(|&y| g.images[mid.position(y).expect("image in middle object")]).collect();
        self.find(a, c, &images)
    }

    /// Identities, closure under composition, and that every morphism is an
    /// injective homomorphism consistent with its matrix.
    pub fn verify(&self, group: &FiniteGroup) -> bool {
        let n = self.num_objects();
        let ids = (0..n).all(|o| self.identity_index(o).is_some());
        let homs_ok = (0..n).all(|a| {
            (0..n).all(|b| {
                let (src, tgt) = (&self.objects[a], &self.objects[b]);
                self.morphisms[a][b].iter().all(|m| {
                    let mut sorted = m.images.clone();
                    sorted.sort_unstable();
                    sorted.dedup();
                    let injective = sorted.len() == m.images.len();
                    let lands = m.images.iter().all(|&y| tgt.contains(y));
                    let hom = src.elements.iter().enumerate().all(|(i, &x)| {
                        src.elements.iter().enumerate().all(|(j, &y)| {
                            let xy = src.position(group.mul(x, y)).expect("closed");
                            m.images[xy] == group.mul(m.images[i], m.images[j])
                        })
                    });
                    let realized = m.realizer.map_or(true, |g| {
                        src.elements.iter().zip(&m.images).all(|(&x, &y)| group.conj(g, x) == y)
                    });
                    injective && lands && hom && realized && *m == morphism_from_matrix(src, tgt, m.matrix.clone(), m.realizer)
                })
            })
        });
        let closed = (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    (0..self.morphisms[a][b].len())
                        .all(|f| (0..self.morphisms[b][c].len()).all(|g| self.compose(a, b, c, f, g).is_some()))
                })
            })
        });
        ids && homs_ok && closed
    }

    /// Every morphism of `self` is a morphism of `other` (same objects).
    pub fn is_subcategory_of(&self, other: &CategoryInstance) -> bool {
        self.objects == other.objects
            && (0..self.num_objects()).all(|a| {
                (0..self.num_objects()).all(|b| self.morphisms[a][b].iter().all(|m| other.find(a, b, &m.images).is_some()))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;

    #[test]
    fn quillen_sym3() {
        let g = named::symmetric3();
        let cat = build_quillen_category(&g, 2).unwrap();
        assert_eq!(cat.num_objects(), 4);
        assert!(cat.verify(&g));
        for o in 1..4 {
            assert_eq!(cat.hom(0, o).len(), 1);
            for o2 in 1..4 {
                assert_eq!(cat.hom(o, o2).len(), 1);
            }
        }
        assert_eq!(cat.hom(1, 0).len(), 0);
    }

    #[test]
    fn quillen_trivial_and_q8() {
        let t = named::trivial();
        let cat = build_quillen_category(&t, 2).unwrap();
        assert_eq!(cat.num_objects(), 1);
        assert_eq!(cat.num_morphisms(), 1);
        let q = named::quaternion8();
        let cat = build_quillen_category(&q, 2).unwrap();
        assert_eq!(cat.num_objects(), 2);
        assert_eq!(cat.hom(1, 1).len(), 1);
        assert!(cat.verify(&q));
    }

    #[test]
    fn green_leary_contains_quillen_and_shrinks_with_n() {
        let caps = Caps::default();
        for g in named::battery() {
            for p in [2, 3] {
                let q = build_quillen_category(&g, p).unwrap();
                let mut prev: Option<CategoryInstance> = None;
                for n in 0..=3 {
                    let gl = build_green_leary_category(&g, p, n, &caps).unwrap();
                    assert!(gl.verify(&g));
                    assert!(q.is_subcategory_of(&gl));
                    if let Some(prev) = &prev {
                        assert!(gl.is_subcategory_of(prev));
                    }
                    prev = Some(gl);
                }
                // once n reaches the largest rank, local conjugation is global
                let top = q.objects.iter().map(|o| o.rank).max().unwrap();
                let gl = build_green_leary_category(&g, p, top.max(1), &caps).unwrap();
                assert_eq!(gl.hom_counts(), q.hom_counts());
            }
        }
    }

    #[test]
    fn green_leary_sym3_rank_one() {
        let g = named::symmetric3();
        let gl = build_green_leary_category(&g, 2, 1, &Caps::default()).unwrap();
        for a in 1..4 {
            for b in 1..4 {
                assert_eq!(gl.hom(a, b).len(), 1);
            }
        }
    }

    #[test]
    fn green_leary_zero_is_all_injections() {
        // D8 at p = 2: Aut(V_4) = GL_2(F_2) has 6 elements, all allowed at n = 0
        let g = named::dihedral8();
        let gl = build_green_leary_category(&g, 2, 0, &Caps::default()).unwrap();
        let v4 = gl.objects.iter().position(|o| o.rank == 2).unwrap();
        assert_eq!(gl.hom(v4, v4).len(), 6);
        let q = build_quillen_category(&g, 2).unwrap();
        assert_eq!(q.hom(v4, v4).len(), 2);
    }
}
