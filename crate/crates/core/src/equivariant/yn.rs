use std::collections::HashMap;

use serde::Serialize;

use super::complex::{pi0, GComplex, Subcomplex};
use super::fx::fx_functor;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{commuting_p_power_tuples, enumerate_homs, FiniteGroup, GroupHom};
use crate::linalg::{enumerate_linear_maps, FpMatrix};
use crate::quillen::coend_evaluate;
use crate::quotient::{QuotientWitness, UnionFind};

/// A pair `(α, [x])` with `x` a vertex of `X^{Im α}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YnElement {
    pub hom: GroupHom,
    pub component: usize,
}

/// All pairs `(α, [x])` for `α: F^n -> G`, listed hom by hom.
#[derive(Clone, Debug)]
pub struct YnSet {
    pub n: usize,
    pub elements: Vec<YnElement>,
    homs: Vec<GroupHom>,
    hom_index: HashMap<Vec<u32>, usize>,
    fixed: Vec<Subcomplex>,
    components: Vec<QuotientWitness>,
    offsets: Vec<usize>,
}

impl YnSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn hom_of(&self, i: usize) -> usize {
        self.offsets.partition_point(|&o| o <= i) - 1
    }

    /// Index of `(α, component of v)`, where `v` is fixed by `Im α`.
    pub fn index_of(&self, images: &[u32], v: u32) -> Option<usize> {
        let h = *self.hom_index.get(images)?;
        let pos = self.fixed[h].position(v)?;
        Some(self.offsets[h] + self.components[h].class(pos))
    }

    fn vertex(&self, i: usize) -> (usize, u32) {
        let h = self.hom_of(i);
        let rep = self.components[h].representative(i - self.offsets[h]);
        (h, self.fixed[h].vertices[rep])
    }

    /// `g . (α, [x]) = (g α g^-1, [g x])`.
    pub fn act_left(&self, group: &FiniteGroup, x: &GComplex, g: u32, i: usize) -> usize {
        let (h, v) = self.vertex(i);
        let conj = self.homs[h].conjugate(group, g);
        self.index_of(&conj.images, x.act(g, v)).expect("conjugate pair lies in Y_n")
    }

    /// `(α, [x]) . φ = (α ∘ φ, [x])` for invertible `φ`.
    pub fn act_right(&self, group: &FiniteGroup, phi: &FpMatrix, i: usize) -> usize {
        let (h, v) = self.vertex(i);
        let composed = self.homs[h].precompose(group, phi);
        self.index_of(&composed.images, v).expect("precomposed pair lies in Y_n")
    }
}

pub fn yn_set(group: &FiniteGroup, p: u32, n: usize, x: &GComplex, caps: &Caps) -> Result<YnSet> {
    let homs = enumerate_homs(n, p, group, caps)?;
    let mut hom_index = HashMap::with_capacity(homs.len());
    let mut fixed = Vec::with_capacity(homs.len());
    let mut components = Vec::with_capacity(homs.len());
    let mut offsets = Vec::with_capacity(homs.len());
    let mut elements = Vec::new();
    for (h, alpha) in homs.iter().enumerate() {
        hom_index.insert(alpha.images.clone(), h);
        let sub = x.fixed_subcomplex(&alpha.image(group));
        let comps = pi0(&sub);
        offsets.push(elements.len());
        elements.extend((0..comps.num_classes()).map(|c| YnElement { hom: alpha.clone(), component: c }));
        caps.check_enum("Y_n", elements.len() as u128)?;
        fixed.push(sub);
        components.push(comps);
    }
    Ok(YnSet { n, elements, homs, hom_index, fixed, components, offsets })
}

/// `Y_n / G` with the residual right action of `GL_n(F_p)` on orbits.
#[derive(Clone, Debug)]
pub struct YnOrbits {
    pub set: YnSet,
    pub witness: QuotientWitness,
    /// Invertible `n x n` matrices in index order.
    pub automorphisms: Vec<FpMatrix>,
    /// `right_action[a][orbit]`.
    pub right_action: Vec<Vec<usize>>,
}

pub fn yn_mod_g(group: &FiniteGroup, p: u32, n: usize, x: &GComplex, caps: &Caps) -> Result<YnOrbits> {
    let set = yn_set(group, p, n, x, caps)?;
    let mut uf = UnionFind::new(set.len());
    for &g in group.generators() {
        for i in 0..set.len() {
            uf.union(i, set.act_left(group, x, g, i));
        }
    }
    let witness = uf.into_witness();
    let automorphisms: Vec<FpMatrix> = enumerate_linear_maps(p, n, n, caps)?.into_iter().filter(|m| m.rank() == n).collect();
    let mut right_action = Vec::with_capacity(automorphisms.len());
    for phi in &automorphisms {
        let mut on_orbits = vec![usize::MAX; witness.num_classes()];
        for i in 0..set.len() {
            let o = witness.class(i);
            let image = witness.class(set.act_right(group, phi, i));
            if on_orbits[o] != usize::MAX && on_orbits[o] != image {
                return Err(Error::internal("right action does not descend to G-orbits"));
            }
            on_orbits[o] = image;
        }
        right_action.push(on_orbits);
    }
    Ok(YnOrbits { set, witness, automorphisms, right_action })
}

/// Comparison of the coend of `F_X` at `F^n` with `Y_n / G`.
#[derive(Clone, Debug, Serialize)]
pub struct HurewiczCheck {
    pub coend_classes: usize,
    pub orbits: usize,
    /// The map `(E, [x], M) -> orbit of (incl ∘ M, [x])` is constant on
    /// coend classes.
    pub well_defined: bool,
    pub bijective: bool,
    /// The map commutes with the right action of `GL_n(F_p)`.
    pub equivariant: bool,
}

impl HurewiczCheck {
    pub fn holds(&self) -> bool {
        self.well_defined && self.bijective && self.equivariant
    }
}

pub fn hurewicz_model_check(group: &FiniteGroup, p: u32, n: usize, x: &GComplex, caps: &Caps) -> Result<HurewiczCheck> {
    let fx = fx_functor(group, p, x)?;
    let level = coend_evaluate(&fx.functor, n, caps)?;
    let orbits = yn_mod_g(group, p, n, x, caps)?;
    let cat = &fx.functor.base;
    let mut map = vec![usize::MAX; level.witness.num_classes()];
    let mut well_defined = true;
    for idx in 0..level.witness.ambient_size() {
        let (obj, s, m) = level.decode(idx);
        let e = &cat.objects[obj];
        let mat = FpMatrix::from_index(p, e.rank, n, m);
        let images: Vec<u32> = (0..n).map(|c| e.element_at(crate::quillen::vector_index(&mat.column(c), p))).collect();
        for (i, &v) in fx.fixed[obj].vertices.iter().enumerate() {
            if fx.classes[obj].class(i) != s {
                continue;
            }
            let Some(y) = orbits.set.index_of(&images, v) else {
                well_defined = false;
                continue;
            };
            let target = orbits.witness.class(y);
            let c = level.witness.class(idx);
            if map[c] != usize::MAX && map[c] != target {
                well_defined = false;
            }
            map[c] = target;
        }
    }
    let mut hit = vec![false; orbits.witness.num_classes()];
    let mut bijective = well_defined && map.len() == hit.len();
    for &t in &map {
        if t == usize::MAX || hit[t] {
            bijective = false;
            break;
        }
        hit[t] = true;
    }
    let mut equivariant = well_defined;
    if well_defined {
        'outer: for (a, phi) in orbits.automorphisms.iter().enumerate() {
            for idx in 0..level.witness.ambient_size() {
                let (obj, s, m) = level.decode(idx);
                let rank = cat.objects[obj].rank;
                let moved = FpMatrix::from_index(p, rank, n, m).mul(phi).index();
                let lhs = map[level.witness.class(level.index(obj, s, moved))];
                let rhs = orbits.right_action[a][map[level.witness.class(idx)]];
                if lhs != rhs {
                    equivariant = false;
                    break 'outer;
                }
            }
        }
    }
    Ok(HurewiczCheck {
        coend_classes: level.witness.num_classes(),
        orbits: orbits.witness.num_classes(),
        well_defined,
        bijective,
        equivariant,
    })
}

/// Number of `G`-orbits of pairs `(a, [x])` with `a` a commuting `n`-tuple
/// of `p`-power order elements and `x` a vertex of `X^{<a>}`.
pub fn hkr_rank(group: &FiniteGroup, p: u32, n: usize, x: &GComplex, caps: &Caps) -> Result<usize> {
    let tuples = commuting_p_power_tuples(n, p, group, caps)?;
    let index: HashMap<&[u32], usize> = tuples.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let mut fixed = Vec::with_capacity(tuples.len());
    let mut comps = Vec::with_capacity(tuples.len());
    let mut offsets = Vec::with_capacity(tuples.len());
    let mut total = 0usize;
    for t in &tuples {
        let mask = group.generated_by(t);
        let subgroup: Vec<u32> = group.elements().filter(|&g| mask[g as usize]).collect();
        let sub = x.fixed_subcomplex(&subgroup);
        let w = pi0(&sub);
        offsets.push(total);
        total += w.num_classes();
        caps.check_enum("tuple-component pairs", total as u128)?;
        fixed.push(sub);
        comps.push(w);
    }
    let mut uf = UnionFind::new(total);
    for &g in group.generators() {
        for (i, t) in tuples.iter().enumerate() {
            let conj: Vec<u32> = t.iter().map(|&a| group.conj(g, a)).collect();
            let j = index[conj.as_slice()];
            for (pos, &v) in fixed[i].vertices.iter().enumerate() {
                let moved = fixed[j].position(x.act(g, v)).expect("translate of a fixed vertex is fixed");
                uf.union(offsets[i] + comps[i].class(pos), offsets[j] + comps[j].class(moved));
            }
        }
    }
    Ok(uf.into_witness().num_classes())
}
