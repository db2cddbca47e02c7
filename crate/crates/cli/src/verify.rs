use std::time::Instant;

use chromavar_core::equivariant::{fx_functor, hurewicz_model_check};
use chromavar_core::linalg::HomSpace;
use chromavar_core::presheaf::{beta_laws, beta_product_check, counit};
use chromavar_core::quillen::{compare_gl_beta, quillen_comparison, rep_presheaf, Comparison};
use chromavar_core::{Caps, FiniteGroup, FinitePresheaf, GComplex, PresheafMap};

use crate::inputs::Battery;
use crate::report::{Check, Verdict, VerificationReport};
use crate::{CliError, CliResult, RunConfig};

type Outcome = chromavar_core::Result<Result<String, String>>;

struct Runner<'a> {
    config: &'a RunConfig,
    checks: Vec<Check>,
}

struct Key<'a> {
    group: &'a str,
    p: u32,
    n: Option<usize>,
    d: usize,
    input: &'a str,
}

impl Runner<'_> {
    fn run(&mut self, key: Key, name: &str, statement: &str, body: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let outcome = body();
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        let (verdict, detail) = match outcome {
            Ok(Ok(w)) => (Verdict::Pass, w),
            Ok(Err(c)) => (Verdict::Fail, c),
            Err(e) => (Verdict::Fail, format!("error: {}", e)),
        };
        self.checks.push(Check {
            group: key.group.to_string(),
            p: key.p,
            n: key.n,
            d: key.d,
            name: name.to_string(),
            statement: statement.to_string(),
            input: key.input.to_string(),
            verdict,
            detail,
            wall_ms: self.config.timings.then_some(elapsed),
        });
    }
}

fn compact(map: &PresheafMap) -> String {
    serde_json::to_string(&map.components).expect("serializes")
}

fn comparison_outcome(c: Comparison) -> Result<String, String> {
    let sizes = format!("sizes {:?} vs {:?}", c.lhs_sizes, c.rhs_sizes);
    if c.holds() {
        Ok(format!("{}; witness {}", sizes, c.witness.as_ref().map(compact).unwrap_or_default()))
    } else {
        Err(format!("{}; isomorphic={} canonical map bijective={}", sizes, c.isomorphic, c.canonical_bijective))
    }
}

fn functoriality_outcome(f: &FinitePresheaf, homs: &HomSpace) -> Result<String, String> {
    let report = f.check_functoriality(homs);
    match report.violations.first() {
        None => Ok(format!("sizes {:?}", f.level_sizes())),
        Some(v) if v.inner.is_empty() => Err(format!("identity {} moves element {} of level {}", v.outer, v.element, v.level)),
        Some(v) => Err(format!(
            "(A B)^* != B^* A^* for A = {}, B = {} at element {} of level {}",
            v.outer, v.inner, v.element, v.level
        )),
    }
}

fn beta_outcome(f: &FinitePresheaf, n: usize) -> Outcome {
    let laws = beta_laws(f, n)?;
    Ok(if laws.hold() { Ok("all laws hold".into()) } else { Err(serde_json::to_string(&laws).expect("serializes")) })
}

fn counit_outcome(f: &FinitePresheaf, homs: &HomSpace) -> Outcome {
    for e in 1..=f.top() {
        let (induced, eps) = counit(f, e, homs)?;
        if !eps.is_natural(&induced.presheaf, f) {
            return Ok(Err(format!("counit through dimension {} is not natural", e)));
        }
        if !eps.is_injective() {
            let k = (0..=f.top()).find(|&k| {
                let mut seen = eps.components[k].clone();
                seen.sort_unstable();
                seen.windows(2).any(|w| w[0] == w[1])
            });
            return Ok(Err(format!("counit through dimension {} identifies elements at level {:?}", e, k)));
        }
    }
    Ok(Ok(format!("injective through dimensions 1..={}", f.top())))
}

fn borrowed(r: &chromavar_core::Result<FinitePresheaf>) -> chromavar_core::Result<&FinitePresheaf> {
    r.as_ref().map_err(|e| chromavar_core::Error::InvalidInput(e.to_string()))
}

fn primes_for(config: &RunConfig, g: &FiniteGroup) -> Vec<u32> {
    match config.p {
        Some(p) => vec![p],
        None => [2, 3].into_iter().filter(|&p| g.order() % p as usize == 0).collect(),
    }
}

fn levels_for(config: &RunConfig, d: usize) -> CliResult<Vec<usize>> {
    match config.n {
        Some(usize::MAX) => Err(CliError::Usage("verify needs a finite -n".into())),
        Some(n) => Ok(vec![n]),
        None => Ok((0..=d.min(2)).collect()),
    }
}

fn verify_group(run: &mut Runner, name: &str, g: &FiniteGroup, complexes: &[(&str, &GComplex)], caps: &Caps) -> CliResult<()> {
    let d = run.config.d.unwrap_or(2);
    let ns = levels_for(run.config, d)?;
    for p in primes_for(run.config, g) {
        let key = |n: Option<usize>, input: &'static str| Key { group: name, p, n, d, input };
        let homs = match HomSpace::new(p, d, caps) {
            Ok(h) => h,
            Err(e) => {
                run.run(key(None, ""), "setup", "hom spaces fit within the caps", || Err(e));
                continue;
            }
        };
        run.run(key(None, ""), "group axioms", "the multiplication table defines a group", || {
            g.verify_axioms()?;
            Ok(Ok(format!("order {}", g.order())))
        });
        run.run(key(None, ""), "quillen coend", "the coend of the point over A_p(G) is isomorphic to Rep(-,G)", || {
            Ok(comparison_outcome(quillen_comparison(g, &homs, caps)?))
        });
        let rep = rep_presheaf(g, &homs, caps).map(|r| r.presheaf);
        let hom1 = FinitePresheaf::representable(&homs, 1, caps);
        run.run(key(None, ""), "counit injective", "the counit from the induced presheaf to Rep(-,G) is levelwise injective", || {
            counit_outcome(borrowed(&rep)?, &homs)
        });
        for &n in &ns {
            if n >= 1 {
                run.run(key(Some(n), ""), "green-leary colimit", "the colimit of hom(-,W) over A_n(G) is isomorphic to beta_n Rep(-,G)", || {
                    Ok(comparison_outcome(compare_gl_beta(g, n, &homs, caps)?))
                });
            }
            run.run(key(Some(n), ""), "beta laws", "beta_n Rep(-,G) is idempotent, surjective, bijective up to level n and fits the tower", || {
                beta_outcome(borrowed(&rep)?, n)
            });
            run.run(key(Some(n), ""), "beta products", "beta_n commutes with the product Rep(-,G) x hom(-,F^1)", || {
                let c = beta_product_check(borrowed(&rep)?, borrowed(&hom1)?, n)?;
                let sizes = format!("sizes {:?} vs {:?}", c.lhs_sizes, c.rhs_sizes);
                Ok(if c.holds { Ok(sizes) } else { Err(sizes) })
            });
        }
        for &(cname, x) in complexes {
            let ckey = |n: Option<usize>| Key { group: name, p, n, d, input: cname };
            run.run(ckey(None), "fixed point functor", "E -> pi_0(X^E)/C_G(E) is a functor on A_p(G)", || {
                let fx = fx_functor(g, p, x)?;
                Ok(if fx.functor.check_functoriality() {
                    Ok(format!("values {:?}", fx.functor.value_sizes()))
                } else {
                    Err("composition or identity law fails".into())
                })
            });
            for &n in &ns {
                run.run(ckey(Some(n)), "borel model", "the coend of pi_0(X^E)/C_G(E) at F^n is Y_n/G as a right Aut(F^n)-set", || {
                    let h = hurewicz_model_check(g, p, n, x, caps)?;
                    let sizes = format!("{} coend classes, {} orbits", h.coend_classes, h.orbits);
                    Ok(if h.holds() { Ok(sizes) } else { Err(format!("{}; {}", sizes, serde_json::to_string(&h).expect("serializes"))) })
                });
            }
        }
    }
    Ok(())
}

fn verify_presheaf(run: &mut Runner, name: &str, f: &FinitePresheaf, homs: &HomSpace) -> CliResult<()> {
    let (p, d) = (f.prime(), f.top());
    let key = |n: Option<usize>| Key { group: name, p, n, d, input: "" };
    run.run(key(None), "presheaf functoriality", "id^* = id and (A B)^* = B^* A^* for all composable matrices", || {
        Ok(functoriality_outcome(f, homs))
    });
    if !f.check_functoriality(homs).passed() {
        return Ok(());
    }
    run.run(key(None), "counit injective", "the counit from the induced presheaf is levelwise injective", || counit_outcome(f, homs));
    for n in levels_for(run.config, d)? {
        run.run(key(Some(n)), "beta laws", "beta_n is idempotent, surjective, bijective up to level n and fits the tower", || {
            beta_outcome(f, n)
        });
    }
    Ok(())
}

/// Run every check over the battery. Failing checks are verdicts, not
/// errors; only malformed configuration is an error.
pub fn verify_battery(config: &RunConfig, battery: &Battery) -> CliResult<VerificationReport> {
    config.validate()?;
    let mut run = Runner { config, checks: Vec::new() };
    for (name, g) in &battery.groups {
        let point = GComplex::point(g);
        let mut complexes: Vec<(&str, &GComplex)> = vec![("point", &point)];
        complexes.extend(battery.complexes.iter().filter(|c| c.group == *name).map(|c| (c.name.as_str(), &c.complex)));
        verify_group(&mut run, name, g, &complexes, &config.caps)?;
    }
    for (name, f, homs) in &battery.presheaves {
        verify_presheaf(&mut run, name, f, homs)?;
    }
    let mut report = VerificationReport { checks: run.checks };
    report.sort();
    Ok(report)
}
