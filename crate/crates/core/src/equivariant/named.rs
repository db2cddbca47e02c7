//! Small `G`-complexes built from a permutation group's own action.

use super::GComplex;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

fn generator_perms(group: &FiniteGroup) -> Result<Vec<&[u32]>> {
    group
        .generators()
        .iter()
        .map(|&g| {
            group
                .permutation(g)
                .ok_or_else(|| Error::invalid("group has no permutation representation"))
        })
        .collect()
}

fn is_odd(perm: &[u32]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for start in 0..perm.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i] as usize;
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 1
}

/// The points `1..=degree` with no edges, permuted by the group.
pub fn permutation_action(group: &FiniteGroup) -> Result<GComplex> {
    let perms = generator_perms(group)?;
    let degree = perms.first().map_or(0, |p| p.len());
    let labels = (1..=degree).map(|i| i.to_string()).collect();
    let action: Vec<Vec<u32>> = perms.iter().map(|p| p.to_vec()).collect();
    GComplex::new(group, labels, &[], &action)
}

/// Two isolated points exchanged by every generator.
pub fn swapped_pair(group: &FiniteGroup) -> Result<GComplex> {
    let action = vec![vec![1, 0]; group.generators().len()];
    GComplex::new(group, vec!["a".into(), "b".into()], &[], &action)
}

/// The path `a - b - c`; odd permutations exchange `a` and `c`.
pub fn flipped_path(group: &FiniteGroup) -> Result<GComplex> {
    let action = generator_perms(group)?
        .into_iter()
        .map(|p| if is_odd(p) { vec![2, 1, 0] } else { vec![0, 1, 2] })
        .collect::<Vec<_>>();
    GComplex::new(group, vec!["a".into(), "b".into(), "c".into()], &[(0, 1), (1, 2)], &action)
}

/// The cycle `1 - 2 - ... - m - 1` with every edge subdivided, for a
/// permutation group of degree `m` preserving the cycle.
pub fn subdivided_cycle(group: &FiniteGroup) -> Result<GComplex> {
    let perms = generator_perms(group)?;
    let m = perms.first().map_or(0, |p| p.len());
    if m < 3 {
        return Err(Error::invalid("a cycle needs at least three corners"));
    }
    let side = |a: usize, b: usize| -> Option<usize> {
        if (a + 1) % m == b {
            Some(a)
        } else if (b + 1) % m == a {
            Some(b)
        } else {
            None
        }
    };
    let mut labels: Vec<String> = (1..=m).map(|i| i.to_string()).collect();
    labels.extend((0..m).map(|i| format!("{}{}", i + 1, (i + 1) % m + 1)));
    let edges: Vec<(u32, u32)> = (0..m)
        .flat_map(|i| [(i as u32, (m + i) as u32), (((i + 1) % m) as u32, (m + i) as u32)])
        .collect();
    let mut action = Vec::with_capacity(perms.len());
    for p in perms {
        let mut images: Vec<u32> = p.to_vec();
        for i in 0..m {
            let s = side(p[i] as usize, p[(i + 1) % m] as usize)
                .ok_or_else(|| Error::invalid("permutation does not preserve the cycle"))?;
            images.push((m + s) as u32);
        }
        action.push(images);
    }
    GComplex::new(group, labels, &edges, &action)
}

/// The subdivided square with the dihedral group of order 8.
pub fn subdivided_square(group: &FiniteGroup) -> Result<GComplex> {
    subdivided_cycle(group)
}
