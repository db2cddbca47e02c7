//! Permutations on `0..degree` and cycle-notation labels.

use crate::error::{Error, Result};

/// Image list of a permutation on `0..degree`.
pub type Perm = Vec<u32>;

pub fn identity(degree: usize) -> Perm {
    (0..degree as u32).collect()
}

/// `(a * b)(x) = a(b(x))`.
pub fn compose(a: &[u32], b: &[u32]) -> Perm {
    b.iter().map(|&x| a[x as usize]).collect()
}

pub fn validate(degree: usize, images: &[u32]) -> Result<()> {
    if images.len() != degree {
        return Err(Error::invalid(format!(
            "permutation has {} images, expected degree {}",
            images.len(),
            degree
        )));
    }
    let mut seen = vec![false; degree];
    for &x in images {
        let x = x as usize;
        if x >= degree || seen[x] {
            return Err(Error::invalid(format!("{:?} is not a permutation of 1..{}", one_based(images), degree)));
        }
        seen[x] = true;
    }
    Ok(())
}

fn one_based(images: &[u32]) -> Vec<u32> {
    images.iter().map(|x| x + 1).collect()
}

/// Build a permutation of `0..degree` from 1-based cycles, e.g. `[[1, 2, 3]]`.
pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Perm> {
    let mut p = identity(degree);
    let mut touched = vec![false; degree];
    for cycle in cycles {
        for (i, &x) in cycle.iter().enumerate() {
            let y = cycle[(i + 1) % cycle.len()];
            if x == 0 || y == 0 || x as usize > degree || y as usize > degree {
                return Err(Error::invalid(format!("cycle entry out of range 1..{}", degree)));
            }
            if touched[x as usize - 1] {
                return Err(Error::invalid(format!("point {} appears twice in cycles", x)));
            }
            touched[x as usize - 1] = true;
            p[x as usize - 1] = y - 1;
        }
    }
    Ok(p)
}

/// Cycle notation with 1-based points; the identity is `()`.
pub fn cycle_label(p: &[u32]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            first = false;
            out.push_str(&(x + 1).to_string());
            x = p[x] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels() {
        assert_eq!(cycle_label(&identity(4)), "()");
        let p = from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(cycle_label(&p), "(1 2)(3 4)");
        let q = from_cycles(3, &[&[1, 2, 3]]).unwrap();
        assert_eq!(q, vec![1, 2, 0]);
        assert_eq!(cycle_label(&q), "(1 2 3)");
    }

    #[test]
    fn compose_applies_right_first() {
        let a = from_cycles(3, &[&[1, 2]]).unwrap();
        let b = from_cycles(3, &[&[2, 3]]).unwrap();
        // a*b sends 2 -> 3 -> 3, 3 -> 2 -> 1
        assert_eq!(cycle_label(&compose(&a, &b)), "(1 2 3)");
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(validate(3, &[0, 0, 1]).is_err());
        assert!(validate(3, &[0, 1]).is_err());
        assert!(validate(2, &[0, 2]).is_err());
        assert!(from_cycles(3, &[&[1, 4]]).is_err());
        assert!(from_cycles(3, &[&[1, 2], &[2, 3]]).is_err());
    }
}
