//! One line per acceptance criterion. Each criterion recomputes its claim
//! through the library and checks it against an oracle written here.

use std::process::Command;
use std::time::{Duration, Instant};

use chromavar_core::battery::{endset_battery, presheaf_battery};
use chromavar_core::equivariant::{hkr_rank, hurewicz_model_check, named as complexes, yn_set};
use chromavar_core::group::{commuting_p_power_tuples, enumerate_homs, named};
use chromavar_core::linalg::HomSpace;
use chromavar_core::presheaf::{
    adjunction_check, beta_laws, beta_of_map, beta_product_check, beta_quotient, counit, id_beta_commute_check,
};
use chromavar_core::quillen::{compare_gl_beta, quillen_comparison, rep_presheaf};
use chromavar_core::{Caps, FiniteGroup, FinitePresheaf, GComplex};

type Failures = Vec<String>;

fn groups() -> Vec<(String, FiniteGroup)> {
    named::battery_named().into_iter().map(|(n, g)| (n.to_string(), g)).collect()
}

fn primes(g: &FiniteGroup) -> Vec<u32> {
    [2, 3].into_iter().filter(|&p| g.order() % p as usize == 0).collect()
}

fn expect(failures: &mut Failures, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        failures.push(what());
    }
}

/// Conjugacy classes of homomorphisms `F^k -> G`, by orbit sweeping with
/// every group element.
fn rep_count(g: &FiniteGroup, p: u32, k: usize) -> usize {
    let homs = enumerate_homs(k, p, g, &Caps::default()).unwrap();
    let mut seen = std::collections::HashSet::new();
    let mut classes = 0;
    for h in &homs {
        if seen.contains(&h.images) {
            continue;
        }
        classes += 1;
        for x in g.elements() {
            seen.insert(h.images.iter().map(|&a| g.conj(x, a)).collect::<Vec<u32>>());
        }
    }
    classes
}

/// `beta_n` level sizes by pairwise comparison of restrictions.
fn naive_beta_sizes(f: &FinitePresheaf, homs: &HomSpace, n: usize) -> Vec<usize> {
    (0..=f.top())
        .map(|k| {
            let same = |x: usize, y: usize| {
                (0..=n.min(f.top())).all(|m| homs.maps(m, k).iter().all(|a| f.restrict_along(a, x) == f.restrict_along(a, y)))
            };
            let mut reps: Vec<usize> = Vec::new();
            for x in 0..f.level_size(k) {
                if !reps.iter().any(|&r| same(r, x)) {
                    reps.push(x);
                }
            }
            reps.len()
        })
        .collect()
}

fn criterion_1(caps: &Caps) -> Failures {
    let mut f = Failures::new();
    for (name, g) in groups() {
        for p in primes(&g) {
            let d = if name == "A4" && p == 2 { 3 } else { 2 };
            let homs = HomSpace::new(p, d, caps).unwrap();
            let c = quillen_comparison(&g, &homs, caps).unwrap();
            let oracle: Vec<usize> = (0..=d).map(|k| rep_count(&g, p, k)).collect();
            expect(&mut f, c.holds() && c.witness.is_some(), || format!("{} p={}: no isomorphism", name, p));
            expect(&mut f, c.rhs_sizes == oracle, || format!("{} p={}: Rep sizes {:?}, oracle {:?}", name, p, c.rhs_sizes, oracle));
            if let Some(w) = &c.witness {
                println!("    {} p={} d={}: sizes {:?}, witness {:?}", name, p, d, c.lhs_sizes, w.components);
            }
        }
    }
    f
}

fn criterion_2(caps: &Caps) -> Failures {
    let mut f = Failures::new();
    for p in [2, 3] {
        let homs = HomSpace::new(p, 2, caps).unwrap();
        let b = presheaf_battery(&homs, &groups(), caps).unwrap();
        let base: Vec<usize> = (0..b.presheaves.len()).filter(|&i| !b.presheaves[i].name.contains(" x ")).collect();
        for n in 0..=2 {
            for fp in &b.presheaves {
                let laws = beta_laws(&fp.presheaf, n).unwrap();
                expect(&mut f, laws.hold(), || format!("p={} n={} {}: {:?}", p, n, fp.name, laws));
                let sizes = beta_quotient(&fp.presheaf, n).unwrap().presheaf.level_sizes();
                let oracle = naive_beta_sizes(&fp.presheaf, &homs, n);
                expect(&mut f, sizes == oracle, || format!("p={} n={} {}: sizes {:?}, oracle {:?}", p, n, fp.name, sizes, oracle));
            }
            for &i in &base {
                for &j in &base {
                    let (x, y) = (&b.presheaves[i], &b.presheaves[j]);
                    let c = beta_product_check(&x.presheaf, &y.presheaf, n).unwrap();
                    expect(&mut f, c.holds, || format!("p={} n={} {} x {}: {:?}", p, n, x.name, y.name, c));
                }
            }
            let beta = |i: usize| beta_quotient(&b.presheaves[i].presheaf, n).unwrap();
            for m in &b.injections {
                let ok = beta_of_map(&m.map, &beta(m.source), &beta(m.target)).unwrap().is_injective();
                expect(&mut f, ok, || format!("p={} n={} {}: not injective", p, n, m.name));
            }
            for m in &b.surjections {
                let t = beta(m.target);
                let ok = beta_of_map(&m.map, &beta(m.source), &t).unwrap().is_surjective(&t.presheaf);
                expect(&mut f, ok, || format!("p={} n={} {}: not surjective", p, n, m.name));
            }
        }
    }
    f
}

fn criterion_3(caps: &Caps) -> Failures {
    let mut f = Failures::new();
    for p in [2, 3] {
        let homs = HomSpace::new(p, 2, caps).unwrap();
        let b = presheaf_battery(&homs, &groups(), caps).unwrap();
        for fp in &b.presheaves {
            // e = 1 induces above its own dimension
            for e in [1, 2] {
                let (induced, eps) = counit(&fp.presheaf, e, &homs).unwrap();
                let ok = eps.is_natural(&induced.presheaf, &fp.presheaf) && eps.is_injective();
                expect(&mut f, ok, || format!("p={} e={} {}: counit not injective", p, e, fp.name));
            }
        }
        let endsets = endset_battery(&homs, &groups(), caps).unwrap();
        for (sname, s) in endsets.iter().filter(|(_, s)| s.len() <= 8) {
            for fp in b.presheaves.iter().filter(|fp| fp.presheaf.level_size(2) <= 16) {
                let r = adjunction_check(s, &fp.presheaf, &homs, caps).unwrap();
                expect(&mut f, r.bijection && r.equivariant_maps == r.presheaf_maps, || {
                    format!("p={} {} vs {}: {:?}", p, sname, fp.name, r)
                });
            }
        }
        for (sname, s) in &endsets {
            for n in 0..=2 {
                let ok = id_beta_commute_check(s, n, &homs).unwrap();
                expect(&mut f, ok, || format!("p={} n={} {}: i_d and beta_n do not commute", p, n, sname));
            }
        }
    }
    f
}

fn criterion_4(caps: &Caps) -> Failures {
    let mut f = Failures::new();
    for (name, g) in groups() {
        for p in primes(&g) {
            let homs = HomSpace::new(p, 2, caps).unwrap();
            let rep = rep_presheaf(&g, &homs, caps).unwrap().presheaf;
            for n in 1..=2 {
                let c = compare_gl_beta(&g, n, &homs, caps).unwrap();
                let oracle = naive_beta_sizes(&rep, &homs, n);
                expect(&mut f, c.holds(), || format!("{} p={} n={}: {:?}", name, p, n, c));
                expect(&mut f, c.lhs_sizes == oracle, || format!("{} p={} n={}: sizes {:?}, oracle {:?}", name, p, n, c.lhs_sizes, oracle));
            }
        }
    }
    f
}

/// `|Y_n / G|` by sweeping orbits with every group element.
fn orbit_count(g: &FiniteGroup, p: u32, n: usize, x: &GComplex) -> usize {
    let set = yn_set(g, p, n, x, &Caps::default()).unwrap();
    let mut seen = vec![false; set.len()];
    let mut orbits = 0;
    for i in 0..set.len() {
        if seen[i] {
            continue;
        }
        orbits += 1;
        for h in g.elements() {
            seen[set.act_left(g, x, h, i)] = true;
        }
    }
    orbits
}

fn criterion_5(caps: &Caps) -> Failures {
    let mut f = Failures::new();
    let z2 = named::cyclic(2);
    let s3 = named::symmetric3();
    let d8 = named::dihedral8();
    let mut cases = vec![
        ("Z2", z2.clone(), "two swapped points", complexes::swapped_pair(&z2).unwrap()),
        ("S3", s3.clone(), "three points", complexes::permutation_action(&s3).unwrap()),
        ("S3", s3.clone(), "path a-b-c flipped by odd permutations", complexes::flipped_path(&s3).unwrap()),
        ("D8", d8.clone(), "subdivided square", complexes::subdivided_square(&d8).unwrap()),
    ];
    for (name, g) in named::battery_named() {
        cases.push((name, g.clone(), "point", GComplex::point(&g)));
    }
    for (name, g, xname, x) in &cases {
        for p in primes(g) {
            for n in 0..=2 {
                let h = hurewicz_model_check(g, p, n, x, caps).unwrap();
                let oracle = orbit_count(g, p, n, x);
                expect(&mut f, h.holds(), || format!("{} {} p={} n={}: {:?}", name, xname, p, n, h));
                expect(&mut f, h.orbits == oracle, || format!("{} {} p={} n={}: {} orbits, oracle {}", name, xname, p, n, h.orbits, oracle));
            }
        }
    }
    f
}

/// Burnside: orbits = (1/|G|) sum over g of tuples fixed by conjugation by g.
fn burnside(g: &FiniteGroup, p: u32, n: usize) -> usize {
    let tuples = commuting_p_power_tuples(n, p, g, &Caps::default()).unwrap();
    let fixed: usize = g
        .elements()
        .map(|h| tuples.iter().filter(|t| t.iter().all(|&a| g.mul(h, a) == g.mul(a, h))).count())
        .sum();
    assert_eq!(fixed % g.order(), 0);
    fixed / g.order()
}

fn criterion_6(caps: &Caps) -> Failures {
    let mut f = Failures::new();
    for (name, g) in groups() {
        for p in primes(&g) {
            for n in 1..=2 {
                let rank = hkr_rank(&g, p, n, &GComplex::point(&g), caps).unwrap();
                let oracle = burnside(&g, p, n);
                expect(&mut f, rank == oracle, || format!("{} p={} n={}: rank {}, Burnside {}", name, p, n, rank, oracle));
            }
        }
    }
    let s3 = named::symmetric3();
    for (n, want) in [(1, 2), (2, 4)] {
        let rank = hkr_rank(&s3, 2, n, &GComplex::point(&s3), caps).unwrap();
        expect(&mut f, rank == want, || format!("S3 p=2 n={}: rank {}, expected {}", n, rank, want));
    }
    f
}

fn criterion_7(_: &Caps) -> Failures {
    let mut f = Failures::new();
    for format in ["json", "tsv"] {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_chromavar"))
                .args(["verify", "--format", format])
                .env_remove("CHROMAVAR_BATTERY_DIR")
                .output()
                .expect("binary runs")
        };
        let (a, b) = (run(), run());
        expect(&mut f, a.status.code() == Some(0), || format!("{}: exit {:?}", format, a.status.code()));
        expect(&mut f, !a.stdout.is_empty() && a.stdout == b.stdout, || format!("{}: reports differ", format));
    }
    f
}

fn main() {
    let caps = Caps::default();
    let criteria: [(&str, u64, fn(&Caps) -> Failures); 7] = [
        ("Quillen coend is isomorphic to Rep", 10, criterion_1),
        ("beta_n laws, products and maps", 30, criterion_2),
        ("counit injective, adjunction, induction commutes with beta_n", 60, criterion_3),
        ("Green-Leary colimit is beta_n Rep", 60, criterion_4),
        ("Borel model: coend of fixed-point components is Y_n/G", 30, criterion_5),
        ("HKR rank equals Burnside count", 10, criterion_6),
        ("verify reports are byte-identical across runs", 60, criterion_7),
    ];
    let mut failed = 0;
    for (i, (title, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let failures = run(&caps);
        let elapsed = start.elapsed();
        let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
        let slow = if elapsed > Duration::from_secs(*budget) { " (over budget)" } else { "" };
        println!("criterion {}: {} - {} [{:.2}s of {}s{}]", i + 1, verdict, title, elapsed.as_secs_f64(), budget, slow);
        for line in failures.iter().take(10) {
            println!("    {}", line);
        }
        if !failures.is_empty() {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{} criteria failed", failed);
        std::process::exit(1);
    }
}
