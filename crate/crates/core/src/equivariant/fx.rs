use super::complex::{components_modulo, GComplex, Subcomplex};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::quillen::{build_quillen_category, FiniteSetFunctor};
use crate::quotient::QuotientWitness;

/// `E -> pi_0(X^E) / C_G(E)` over `A_p(G)`, with the per-object data used
/// to build it.
#[derive(Clone, Debug)]
pub struct FxFunctor {
    pub functor: FiniteSetFunctor,
    pub fixed: Vec<Subcomplex>,
    /// Classes over positions in `fixed[obj].vertices`.
    pub classes: Vec<QuotientWitness>,
}

impl FxFunctor {
    /// Class of a vertex of `X^E`, if it is fixed by `E`.
    pub fn class_of_vertex(&self, obj: usize, v: u32) -> Option<usize> {
        self.fixed[obj].position(v).map(|i| self.classes[obj].class(i))
    }
}

pub fn fx_functor(group: &FiniteGroup, p: u32, x: &GComplex) -> Result<FxFunctor> {
    let cat = build_quillen_category(group, p)?;
    let mut fixed = Vec::with_capacity(cat.num_objects());
    let mut classes = Vec::with_capacity(cat.num_objects());
    for e in &cat.objects {
        let sub = x.fixed_subcomplex(&e.elements);
        let cent = group.centralizer(&e.elements)?;
        classes.push(components_modulo(x, &sub, &cent));
        fixed.push(sub);
    }
    let labels = (0..cat.num_objects())
        .map(|o| {
            classes[o]
                .representatives
                .iter()
                .map(|&r| format!("[{}]", x.labels()[fixed[o].vertices[r] as usize]))
                .collect()
        })
        .collect();
    let n = cat.num_objects();
    let mut maps = vec![vec![Vec::new(); n]; n];
    for src in 0..n {
        for tgt in 0..n {
            for mor in cat.hom(src, tgt) {
                let sources = &cat.objects[src].elements;
                let realizers: Vec<u32> = group
                    .elements()
                    .filter(|&g| sources.iter().zip(&mor.images).all(|(&e, &t)| group.conj(g, e) == t))
                    .collect();
                let mut map = vec![u32::MAX; classes[tgt].num_classes()];
                for g in realizers {
                    let ginv = group.inv(g);
                    for (i, &v) in fixed[tgt].vertices.iter().enumerate() {
                        let c = classes[tgt].class(i);
                        let image = fixed[src]
                            .position(x.act(ginv, v))
                            .map(|j| classes[src].class(j) as u32)
                            .ok_or_else(|| Error::internal("translate of a fixed vertex is not fixed"))?;
                        if map[c] != u32::MAX && map[c] != image {
                            return Err(Error::internal(format!(
                                "structure map {} -> {} depends on the realizer or representative",
                                src, tgt
                            )));
                        }
                        map[c] = image;
                    }
                }
                maps[src][tgt].push(map);
            }
        }
    }
    let functor = FiniteSetFunctor::new(cat, labels, maps)?;
    Ok(FxFunctor { functor, fixed, classes })
}
