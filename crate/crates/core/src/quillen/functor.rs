use super::CategoryInstance;
use crate::error::{Error, Result};

/// A contravariant functor from a [`CategoryInstance`] to finite sets.
#[derive(Clone, Debug)]
pub struct FiniteSetFunctor {
    pub base: CategoryInstance,
    pub labels: Vec<Vec<String>>,
    /// `maps[src][tgt][m]` sends `value(tgt)` to `value(src)` for the `m`-th
    /// morphism `src -> tgt`.
    pub maps: Vec<Vec<Vec<Vec<u32>>>>,
}

impl FiniteSetFunctor {
    pub fn new(base: CategoryInstance, labels: Vec<Vec<String>>, maps: Vec<Vec<Vec<Vec<u32>>>>) -> Result<Self> {
        let n = base.num_objects();
        if labels.len() != n || maps.len() != n {
            return Err(Error::invalid("functor data does not match the object count"));
        }
        for a in 0..n {
            if maps[a].len() != n {
                return Err(Error::invalid("functor data does not match the object count"));
            }
            for b in 0..n {
                if maps[a][b].len() != base.hom(a, b).len() {
                    return Err(Error::invalid(format!("wrong number of structure maps for {} -> {}", a, b)));
                }
                for m in &maps[a][b] {
                    if m.len() != labels[b].len() || m.iter().any(|&x| x as usize >= labels[a].len()) {
                        return Err(Error::invalid(format!("structure map for {} -> {} has the wrong shape", a, b)));
                    }
                }
            }
        }
        Ok(FiniteSetFunctor { base, labels, maps })
    }

    /// The functor with a single point at every object.
    pub fn constant_singleton(base: CategoryInstance) -> Self {
        let n = base.num_objects();
        let labels = vec![vec!["*".to_string()]; n];
        let maps = (0..n)
            .map(|a| (0..n).map(|b| vec![vec![0u32]; base.hom(a, b).len()]).collect())
            .collect();
        FiniteSetFunctor { base, labels, maps }
    }

    pub fn value_size(&self, obj: usize) -> usize {
        self.labels[obj].len()
    }

    pub fn value_sizes(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    /// Structure map of the `m`-th morphism `src -> tgt` applied to `s`.
    pub fn pull(&self, src: usize, tgt: usize, m: usize, s: usize) -> usize {
        self.maps[src][tgt][m][s] as usize
    }

    /// `F(id) = id` and `F(g f) = F(f) F(g)` over all composable pairs.
    pub fn check_functoriality(&self) -> bool {
        let cat = &self.base;
        let n = cat.num_objects();
        for a in 0..n {
            let Some(id) = cat.identity_index(a) else { return false };
            if self.maps[a][a][id].iter().enumerate().any(|(i, &x)| x as usize != i) {
                return false;
            }
        }
        for a in 0..n {
            for b in 0..n {
                for f in 0..cat.hom(a, b).len() {
                    for c in 0..n {
                        for g in 0..cat.hom(b, c).len() {
                            let Some(gf) = cat.compose(a, b, c, f, g) else { return false };
                            for s in 0..self.value_size(c) {
                                if self.pull(a, c, gf, s) != self.pull(a, b, f, self.pull(b, c, g, s)) {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;
    use crate::quillen::build_quillen_category;

    #[test]
    fn singleton_is_functorial() {
        for g in named::battery() {
            let f = FiniteSetFunctor::constant_singleton(build_quillen_category(&g, 2).unwrap());
            assert!(f.check_functoriality());
        }
    }

    #[test]
    fn shape_errors() {
        let cat = build_quillen_category(&named::symmetric3(), 2).unwrap();
        let bad = FiniteSetFunctor::new(cat, vec![vec!["*".into()]], vec![]);
        assert!(bad.is_err());
    }
}
