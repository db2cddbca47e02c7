//! Small groups used throughout the tests and the default battery.

use super::{perm, FiniteGroup};
use crate::caps::Caps;

fn build(degree: usize, gens: &[&[&[u32]]]) -> FiniteGroup {
    let gens: Vec<perm::Perm> = gens
        .iter()
        .map(|cycles| perm::from_cycles(degree, cycles).expect("valid cycles"))
        .collect();
    FiniteGroup::from_permutations(degree, &gens, &Caps::default()).expect("small group")
}

pub fn trivial() -> FiniteGroup {
    build(1, &[])
}

/// `Z/n` as the regular action of an `n`-cycle.
pub fn cyclic(n: u32) -> FiniteGroup {
    let cycle: Vec<u32> = (1..=n).collect();
    if n <= 1 {
        return trivial();
    }
    build(n as usize, &[&[&cycle]])
}

pub fn symmetric3() -> FiniteGroup {
    build(3, &[&[&[1, 2]], &[&[1, 2, 3]]])
}

/// Symmetries of a square with vertices 1..4 in cyclic order.
pub fn dihedral8() -> FiniteGroup {
    build(4, &[&[&[1, 2, 3, 4]], &[&[1, 3]]])
}

pub fn quaternion8() -> FiniteGroup {
    build(8, &[&[&[1, 2, 3, 4], &[5, 6, 7, 8]], &[&[1, 5, 3, 7], &[2, 8, 4, 6]]])
}

pub fn alternating4() -> FiniteGroup {
    build(4, &[&[&[1, 2, 3]], &[&[1, 2], &[3, 4]]])
}

/// `(name, group)` for the default verification battery.
pub fn battery_named() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("Z2", cyclic(2)),
        ("Z3", cyclic(3)),
        ("S3", symmetric3()),
        ("D8", dihedral8()),
        ("Q8", quaternion8()),
        ("A4", alternating4()),
    ]
}

pub fn battery() -> Vec<FiniteGroup> {
    battery_named().into_iter().map(|(_, g)| g).collect()
}
