//! Backtracking search for natural transformations between finite presheaves.
//!
//! Assigning `x -> y` at level `k` forces `A^* x -> A^* y` for every matrix
//! `A` into `F^k`; forced values are propagated before the next branch, so
//! every complete assignment is natural. Isomorphism search additionally
//! restricts candidates by a joint colour refinement of both presheaves:
//! colours are refined by the colours of all restrictions, which any
//! isomorphism must preserve.

use std::collections::HashMap;

use super::{FinitePresheaf, PresheafMap};
use crate::caps::Caps;
use crate::error::Result;

/// Colour classes of elements of `f` and `g`, refined to a fixed point.
fn joint_colours(f: &FinitePresheaf, g: &FinitePresheaf) -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
    let d = f.top();
    let mut cf: Vec<Vec<u32>> = (0..=d).map(|k| vec![k as u32; f.level_size(k)]).collect();
    let mut cg: Vec<Vec<u32>> = (0..=d).map(|k| vec![k as u32; g.level_size(k)]).collect();
    let mut count = distinct(&cf, &cg);
    loop {
        let mut table: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut recolour = |p: &FinitePresheaf, c: &Vec<Vec<u32>>| -> Vec<Vec<u32>> {
            (0..=d)
                .map(|k| {
                    (0..p.level_size(k))
                        .map(|x| {
                            let mut sig = vec![c[k][x]];
                            for j in 0..=d {
                                for a in 0..p.num_maps(j, k) {
                                    sig.push(c[j][p.restrict(k, j, a, x)]);
                                }
                            }
                            let next = table.len() as u32;
                            *table.entry(sig).or_insert(next)
                        })
                        .collect()
                })
                .collect()
        };
        let nf = recolour(f, &cf);
        let ng = recolour(g, &cg);
        let new_count = distinct(&nf, &ng);
        cf = nf;
        cg = ng;
        if new_count == count {
            return (cf, cg);
        }
        count = new_count;
    }
}

fn distinct(a: &[Vec<u32>], b: &[Vec<u32>]) -> usize {
    let mut all: Vec<u32> = a.iter().chain(b).flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

struct Search<'a> {
    src: &'a FinitePresheaf,
    tgt: &'a FinitePresheaf,
    bijective: bool,
    colours: Option<(Vec<Vec<u32>>, Vec<Vec<u32>>)>,
    assign: Vec<Vec<u32>>,
    used: Vec<Vec<bool>>,
    trail: Vec<(usize, usize)>,
    order: Vec<(usize, usize)>,
    limit: usize,
    found: Vec<PresheafMap>,
}

const UNSET: u32 = u32::MAX;

impl<'a> Search<'a> {
    fn compatible(&self, k: usize, x: usize, y: usize) -> bool {
        if self.bijective && self.used[k][y] {
            return false;
        }
        match &self.colours {
            Some((cf, cg)) => cf[k][x] == cg[k][y],
            None => true,
        }
    }

    fn set(&mut self, k: usize, x: usize, y: usize) {
        self.assign[k][x] = y as u32;
        if self.bijective {
            self.used[k][y] = true;
        }
        self.trail.push((k, x));
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (k, x) = self.trail.pop().expect("trail entry");
            let y = self.assign[k][x] as usize;
            if self.bijective {
                self.used[k][y] = false;
            }
            self.assign[k][x] = UNSET;
        }
    }

    /// Assign and propagate; false on conflict (caller undoes).
    fn assign_and_propagate(&mut self, k: usize, x: usize, y: usize) -> bool {
        if !self.compatible(k, x, y) {
            return false;
        }
        self.set(k, x, y);
        let mut work = vec![(k, x)];
        let d = self.src.top();
        while let Some((k, x)) = work.pop() {
            let y = self.assign[k][x] as usize;
            for j in 0..=d {
                for a in 0..self.src.num_maps(j, k) {
                    let xs = self.src.restrict(k, j, a, x);
                    let ys = self.tgt.restrict(k, j, a, y);
                    let cur = self.assign[j][xs];
                    if cur == UNSET {
                        if !self.compatible(j, xs, ys) {
                            return false;
                        }
                        self.set(j, xs, ys);
                        work.push((j, xs));
                    } else if cur as usize != ys {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, pos: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        let Some(&(k, x)) = self.order[pos..].iter().find(|&&(k, x)| self.assign[k][x] == UNSET) else {
            self.found.push(PresheafMap { components: self.assign.clone() });
            return;
        };
        let next = pos + self.order[pos..].iter().position(|&e| e == (k, x)).expect("present");
        for y in 0..self.tgt.level_size(k) {
            let mark = self.trail.len();
            if self.assign_and_propagate(k, x, y) {
                self.run(next + 1);
            }
            self.undo_to(mark);
            if self.found.len() >= self.limit {
                return;
            }
        }
    }
}

fn search(src: &FinitePresheaf, tgt: &FinitePresheaf, bijective: bool, limit: usize, caps: &Caps) -> Result<Vec<PresheafMap>> {
    src.same_shape(tgt)?;
    for k in 0..=src.top() {
        caps.check_level(&format!("source level {} size", k), src.level_size(k))?;
        caps.check_level(&format!("target level {} size", k), tgt.level_size(k))?;
    }
    let colours = if bijective {
        if src.level_sizes() != tgt.level_sizes() {
            return Ok(Vec::new());
        }
        let (cf, cg) = joint_colours(src, tgt);
        for k in 0..=src.top() {
            let (mut a, mut b) = (cf[k].clone(), cg[k].clone());
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return Ok(Vec::new());
            }
        }
        Some((cf, cg))
    } else {
        None
    };
    let d = src.top();
    // top level first: its restrictions reach the most elements
    let order: Vec<(usize, usize)> = (0..=d).rev().flat_map(|k| (0..src.level_size(k)).map(move |x| (k, x))).collect();
    let mut s = Search {
        src,
        tgt,
        bijective,
        colours,
        assign: src.level_sizes().iter().map(|&n| vec![UNSET; n]).collect(),
        used: tgt.level_sizes().iter().map(|&n| vec![false; n]).collect(),
        trail: Vec::new(),
        order,
        limit,
        found: Vec::new(),
    };
    s.run(0);
    Ok(s.found)
}

/// An isomorphism `F -> G` if one exists. The witness is re-checked for
/// naturality and bijectivity before it is returned.
pub fn presheaf_iso_check(f: &FinitePresheaf, g: &FinitePresheaf, caps: &Caps) -> Result<Option<PresheafMap>> {
    let found = search(f, g, true, 1, caps)?;
    Ok(found.into_iter().next().filter(|m| m.is_natural(f, g) && m.is_bijective(g)))
}

/// All natural transformations `F -> G`, at most `limit` of them, in
/// lexicographic order of the top-down assignment.
pub fn enumerate_maps(f: &FinitePresheaf, g: &FinitePresheaf, limit: usize, caps: &Caps) -> Result<Vec<PresheafMap>> {
    search(f, g, false, limit, caps)
}
