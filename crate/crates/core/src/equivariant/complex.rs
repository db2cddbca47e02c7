//! Finite one-dimensional `G`-complexes: graphs with an admissible action.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::quotient::{QuotientWitness, UnionFind};

/// A graph with a left action of a finite group by automorphisms such that
/// an element stabilizing an edge fixes both of its endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GComplex {
    labels: Vec<String>,
    /// Normalized `(a, b)` with `a < b`, sorted, no duplicates.
    edges: Vec<(u32, u32)>,
    /// `action[g][v] = g . v` for every group element.
    action: Vec<Vec<u32>>,
}

/// On-disk form; `action` lists one 0-based vertex image list per generator
/// of the group.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GComplexFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<[u32; 2]>,
    pub action: Vec<Vec<u32>>,
}

impl GComplexFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build(&self, group: &FiniteGroup) -> Result<GComplex> {
        let edges: Vec<(u32, u32)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        GComplex::new(group, self.vertices.clone(), &edges, &self.action)
    }
}

/// A subcomplex, by original vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subcomplex {
    pub vertices: Vec<u32>,
    pub edges: Vec<(u32, u32)>,
}

impl Subcomplex {
    pub fn position(&self, v: u32) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }
}

impl GComplex {
    /// Validates the generator actions, extends them to the whole group and
    /// checks that the result is an admissible action by graph automorphisms.
    pub fn new(group: &FiniteGroup, labels: Vec<String>, edges: &[(u32, u32)], generator_action: &[Vec<u32>]) -> Result<Self> {
        let nv = labels.len();
        let mut edge_set = BTreeSet::new();
        for &(a, b) in edges {
            if a as usize >= nv || b as usize >= nv {
                return Err(Error::invalid(format!("edge ({}, {}) references a missing vertex", a, b)));
            }
            if a == b {
                return Err(Error::invalid(format!("edge ({}, {}) is a loop", a, b)));
            }
            edge_set.insert((a.min(b), a.max(b)));
        }
        let edges: Vec<(u32, u32)> = edge_set.into_iter().collect();
        if generator_action.len() != group.generators().len() {
            return Err(Error::invalid(format!(
                "action lists {} generators, group has {}",
                generator_action.len(),
                group.generators().len()
            )));
        }
        for (i, images) in generator_action.iter().enumerate() {
            crate::group::perm::validate(nv, images)
                .map_err(|_| Error::invalid(format!("action of generator {} is not a permutation of the vertices", i)))?;
        }
        let mut action: Vec<Option<Vec<u32>>> = vec![None; group.order()];
        action[group.identity() as usize] = Some((0..nv as u32).collect());
        let mut queue = std::collections::VecDeque::from([group.identity()]);
        while let Some(g) = queue.pop_front() {
            let ag = action[g as usize].clone().expect("visited");
            for (&s, images) in group.generators().iter().zip(generator_action) {
                let gs = group.mul(g, s) as usize;
                let composed: Vec<u32> = images.iter().map(|&v| ag[v as usize]).collect();
                match &action[gs] {
                    None => {
                        action[gs] = Some(composed);
                        queue.push_back(gs as u32);
                    }
                    Some(existing) if *existing != composed => {
                        return Err(Error::invalid("generator actions do not define a group action"));
                    }
                    Some(_) => {}
                }
            }
        }
        let action: Vec<Vec<u32>> = action
            .into_iter()
            .map(|a| a.ok_or_else(|| Error::internal("generators do not reach every element")))
            .collect::<Result<_>>()?;
        let complex = GComplex { labels, edges, action };
        for g in group.elements() {
            for &(a, b) in &complex.edges {
                let (ga, gb) = (complex.act(g, a), complex.act(g, b));
                if complex.edges.binary_search(&(ga.min(gb), ga.max(gb))).is_err() {
                    return Err(Error::invalid(format!("element {} does not preserve edge ({}, {})", group.label(g), a, b)));
                }
                if ga == b && gb == a {
                    return Err(Error::invalid(format!(
                        "element {} inverts edge ({}, {}); subdivide it",
                        group.label(g),
                        a,
                        b
                    )));
                }
            }
        }
        Ok(complex)
    }

    /// A single vertex with the trivial action.
    pub fn point(group: &FiniteGroup) -> Self {
        GComplex { labels: vec!["pt".into()], edges: Vec::new(), action: vec![vec![0]; group.order()] }
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    #[inline]
    pub fn act(&self, g: u32, v: u32) -> u32 {
        self.action[g as usize][v as usize]
    }

    /// Vertices and edges fixed pointwise by every element of `set`.
    pub fn fixed_subcomplex(&self, set: &[u32]) -> Subcomplex {
        let vertices: Vec<u32> = (0..self.num_vertices() as u32)
            .filter(|&v| set.iter().all(|&g| self.act(g, v) == v))
            .collect();
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|&(a, b)| vertices.binary_search(&a).is_ok() && vertices.binary_search(&b).is_ok())
            .collect();
        Subcomplex { vertices, edges }
    }

    pub fn whole(&self) -> Subcomplex {
        Subcomplex { vertices: (0..self.num_vertices() as u32).collect(), edges: self.edges.clone() }
    }
}

/// Connected components, over positions in `sub.vertices`.
pub fn pi0(sub: &Subcomplex) -> QuotientWitness {
    let mut uf = UnionFind::new(sub.vertices.len());
    for &(a, b) in &sub.edges {
        uf.union(sub.position(a).expect("edge in subcomplex"), sub.position(b).expect("edge in subcomplex"));
    }
    uf.into_witness()
}

/// Components of `sub` modulo the action of `elements`, which must preserve
/// `sub`. Over positions in `sub.vertices`.
pub fn components_modulo(x: &GComplex, sub: &Subcomplex, elements: &[u32]) -> QuotientWitness {
    let mut uf = UnionFind::new(sub.vertices.len());
    for &(a, b) in &sub.edges {
        uf.union(sub.position(a).expect("in sub"), sub.position(b).expect("in sub"));
    }
    for &g in elements {
        for (i, &v) in sub.vertices.iter().enumerate() {
            uf.union(i, sub.position(x.act(g, v)).expect("action preserves subcomplex"));
        }
    }
    uf.into_witness()
}
