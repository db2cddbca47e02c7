//! Argument parsing and the individual subcommands.

use std::path::PathBuf;

use chromavar_core::equivariant::{fx_functor, hkr_rank, hurewicz_model_check, yn_mod_g};
use chromavar_core::group::{elem_abelian_subgroups, rep_orbits};
use chromavar_core::linalg::HomSpace;
use chromavar_core::presheaf::beta_quotient;
use chromavar_core::quillen::{
    build_green_leary_category, build_quillen_category, coend_presheaf, compare_gl_beta, gl_colimit_presheaf, rep_presheaf,
    CategoryInstance, FiniteSetFunctor,
};
use chromavar_core::{Caps, FiniteGroup, GComplex};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::config::parse_level;
use crate::inputs::{load_complex_file, load_group_file, load_presheaf_file, Battery, NamedComplex};
use crate::verify::verify_battery;
use crate::{CliError, CliResult, Format, RunConfig};

pub const BATTERY_DIR_VAR: &str = "CHROMAVAR_BATTERY_DIR";

#[derive(Debug, Parser)]
#[command(name = "chromavar", version, about = "Finite models of group cohomology varieties and their verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Args)]
pub struct Opts {
    /// Group file (JSON).
    #[arg(long, global = true)]
    pub group: Option<PathBuf>,
    /// G-complex file (JSON), acted on by the generators of --group.
    #[arg(long, global = true)]
    pub complex: Option<PathBuf>,
    /// Presheaf file (JSON).
    #[arg(long, global = true)]
    pub presheaf: Option<PathBuf>,
    #[arg(short = 'p', global = true)]
    pub p: Option<u32>,
    /// Level n; `inf` is accepted where it makes sense.
    #[arg(short = 'n', global = true, value_parser = parse_level)]
    pub n: Option<usize>,
    /// Truncation dimension.
    #[arg(short = 'd', global = true)]
    pub d: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long = "cap-order", global = true)]
    pub cap_order: Option<usize>,
    #[arg(long = "cap-enum", global = true)]
    pub cap_enum: Option<u128>,
    #[arg(long = "cap-level", global = true)]
    pub cap_level: Option<usize>,
    /// Record wall time per verification check.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, elements and element orders.
    GroupInfo,
    /// Elementary abelian p-subgroups.
    Subgroups,
    /// Rep(F^k, G) for k <= n.
    Rep,
    /// The Quillen category A_p(G).
    QuillenCat,
    /// The Green-Leary category A_n(G).
    GreenLeary,
    /// beta_n of a presheaf file, or of Rep(-, G).
    Beta,
    /// Coend of the point (or of pi_0 of fixed points of --complex) over A_p(G).
    Coend,
    /// Colimit over A_n(G) compared with beta_n Rep(-, G).
    GlColimit,
    /// The pair set Y_n, its G-orbits and the comparison with the coend.
    Yn,
    /// Orbits of commuting tuples with fixed-point components.
    HkrRank,
    /// Run the verification battery.
    Verify,
}

impl Opts {
    pub fn config(&self) -> RunConfig {
        let mut caps = Caps::default();
        if let Some(v) = self.cap_order {
            caps.max_group_order = v;
        }
        if let Some(v) = self.cap_enum {
            caps.max_enum = v;
        }
        if let Some(v) = self.cap_level {
            caps.max_level = v;
        }
        RunConfig {
            p: self.p,
            n: self.n,
            d: self.d,
            caps,
            group: self.group.clone(),
            complex: self.complex.clone(),
            presheaf: self.presheaf.clone(),
            format: self.format,
            timings: self.timings,
        }
    }
}

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parse `argv` (including the program name) and run. Exit codes: 0 success,
/// 1 verification failure, 2 input error.
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CommandOutput { stdout: text, stderr: String::new(), code }
            } else {
                CommandOutput { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let config = cli.opts.config();
    match execute(&cli.command, &config) {
        Ok((stdout, code)) => CommandOutput { stdout, stderr: String::new(), code },
        Err(e) => CommandOutput { stdout: String::new(), stderr: format!("error: {}\n", e), code: 2 },
    }
}

fn render(value: Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
            s.push('\n');
            s
        }
        Format::Tsv => {
            let mut out = String::from("key\tvalue\n");
            if let Value::Object(map) = value {
                for (k, v) in map {
                    let v = match v {
                        Value::String(s) => s,
                        other => other.to_string(),
                    };
                    out.push_str(&format!("{}\t{}\n", k, v));
                }
            }
            out
        }
    }
}

fn group(config: &RunConfig) -> CliResult<(String, FiniteGroup)> {
    let path = config.group.as_ref().ok_or_else(|| CliError::Usage("missing --group".into()))?;
    load_group_file(path, &config.caps)
}

fn complex(config: &RunConfig, g: &FiniteGroup) -> CliResult<(String, GComplex)> {
    match &config.complex {
        Some(path) => Ok((path.display().to_string(), load_complex_file(path, g)?.1)),
        None => Ok(("point".into(), GComplex::point(g))),
    }
}

fn homs(config: &RunConfig, p: u32, default_d: usize) -> CliResult<HomSpace> {
    Ok(HomSpace::new(p, config.d.unwrap_or(default_d), &config.caps)?)
}

fn hom_label(g: &FiniteGroup, images: &[u32]) -> String {
    let parts: Vec<&str> = images.iter().map(|&x| g.label(x)).collect();
    format!("[{}]", parts.join(", "))
}

fn category_json(g: &FiniteGroup, cat: &CategoryInstance) -> Value {
    let objects: Vec<Value> = cat
        .objects
        .iter()
        .map(|e| json!({ "rank": e.rank, "elements": e.elements.iter().map(|&x| g.label(x)).collect::<Vec<_>>() }))
        .collect();
    json!({
        "p": cat.prime,
        "objects": objects,
        "hom_counts": cat.hom_counts(),
        "morphisms": cat.num_morphisms(),
    })
}

fn functor_values(f: &FiniteSetFunctor) -> Vec<usize> {
    f.value_sizes()
}

fn execute(command: &Command, config: &RunConfig) -> CliResult<(String, i32)> {
    config.validate()?;
    let caps = &config.caps;
    let value = match command {
        Command::GroupInfo => {
            let (name, g) = group(config)?;
            let elements: Vec<Value> = g.elements().map(|x| json!({ "label": g.label(x), "order": g.element_order(x) })).collect();
            json!({
                "name": name,
                "order": g.order(),
                "generators": g.generators().iter().map(|&x| g.label(x)).collect::<Vec<_>>(),
                "center_order": g.center().len(),
                "elements": elements,
            })
        }
        Command::Subgroups => {
            let (_, g) = group(config)?;
            let p = config.require_p()?;
            let subs = elem_abelian_subgroups(&g, p)?;
            let max_rank = subs.iter().map(|e| e.rank).max().unwrap_or(0);
            let by_rank: Vec<usize> = (0..=max_rank).map(|r| subs.iter().filter(|e| e.rank == r).count()).collect();
            let list: Vec<Value> = subs
                .iter()
                .map(|e| json!({ "rank": e.rank, "elements": e.elements.iter().map(|&x| g.label(x)).collect::<Vec<_>>() }))
                .collect();
            json!({ "p": p, "count": subs.len(), "count_by_rank": by_rank, "subgroups": list })
        }
        Command::Rep => {
            let (_, g) = group(config)?;
            let (p, n) = (config.require_p()?, config.finite_n()?);
            let orbits = (0..=n).map(|k| rep_orbits(k, p, &g, caps)).collect::<chromavar_core::Result<Vec<_>>>()?;
            let reps: Vec<Vec<String>> = orbits
                .iter()
                .map(|o| (0..o.num_classes()).map(|c| hom_label(&g, &o.representative(c).images)).collect())
                .collect();
            json!({
                "p": p,
                "n": n,
                "level_sizes": orbits.iter().map(|o| o.num_classes()).collect::<Vec<_>>(),
                "representatives": reps,
            })
        }
        Command::QuillenCat => {
            let (_, g) = group(config)?;
            let cat = build_quillen_category(&g, config.require_p()?)?;
            category_json(&g, &cat)
        }
        Command::GreenLeary => {
            let (_, g) = group(config)?;
            let (p, n) = (config.require_p()?, config.finite_n()?);
            let cat = build_green_leary_category(&g, p, n, caps)?;
            let quillen = build_quillen_category(&g, p)?;
            let mut v = category_json(&g, &cat);
            v["n"] = json!(n);
            v["equals_quillen"] = json!(cat.is_subcategory_of(&quillen) && quillen.is_subcategory_of(&cat));
            v
        }
        Command::Beta => {
            let n = config.require_n()?;
            let (f, source) = match &config.presheaf {
                Some(path) => (load_presheaf_file(path, caps)?.0, path.display().to_string()),
                None => {
                    let (name, g) = group(config)?;
                    let h = homs(config, config.require_p()?, 2)?;
                    (rep_presheaf(&g, &h, caps)?.presheaf, format!("Rep(-,{})", name))
                }
            };
            let b = beta_quotient(&f, n)?;
            let classes: Vec<&Vec<usize>> = b.witnesses.iter().map(|w| &w.class_of).collect();
            json!({
                "source": source,
                "n": if n == usize::MAX { json!("inf") } else { json!(n) },
                "source_sizes": f.level_sizes(),
                "beta_sizes": b.presheaf.level_sizes(),
                "classes": classes,
            })
        }
        Command::Coend => {
            let (_, g) = group(config)?;
            let p = config.require_p()?;
            let h = homs(config, p, 2)?;
            let (xname, x) = complex(config, &g)?;
            let fx = fx_functor(&g, p, &x)?;
            let coend = coend_presheaf(&fx.functor, &h, caps)?;
            let labels: Vec<&[String]> = (0..=h.top()).map(|k| coend.presheaf.labels(k)).collect();
            json!({
                "p": p,
                "d": h.top(),
                "complex": xname,
                "functor_values": functor_values(&fx.functor),
                "level_sizes": coend.presheaf.level_sizes(),
                "classes": labels,
            })
        }
        Command::GlColimit => {
            let (_, g) = group(config)?;
            let (p, n) = (config.require_p()?, config.finite_n()?);
            let h = homs(config, p, 2)?;
            let (functor, coend) = gl_colimit_presheaf(&g, n, &h, caps)?;
            let cmp = compare_gl_beta(&g, n, &h, caps)?;
            json!({
                "p": p,
                "n": n,
                "d": h.top(),
                "objects": functor.base.num_objects(),
                "level_sizes": coend.presheaf.level_sizes(),
                "beta_rep_sizes": cmp.rhs_sizes,
                "isomorphic": cmp.isomorphic,
                "canonical_bijective": cmp.canonical_bijective,
            })
        }
        Command::Yn => {
            let (_, g) = group(config)?;
            let (p, n) = (config.require_p()?, config.finite_n()?);
            let (xname, x) = complex(config, &g)?;
            let orbits = yn_mod_g(&g, p, n, &x, caps)?;
            let check = hurewicz_model_check(&g, p, n, &x, caps)?;
            json!({
                "p": p,
                "n": n,
                "complex": xname,
                "yn_size": orbits.set.len(),
                "orbits": orbits.witness.num_classes(),
                "coend_classes": check.coend_classes,
                "model_holds": check.holds(),
            })
        }
        Command::HkrRank => {
            let (_, g) = group(config)?;
            let (p, n) = (config.require_p()?, config.finite_n()?);
            let (xname, x) = complex(config, &g)?;
            json!({ "p": p, "n": n, "complex": xname, "rank": hkr_rank(&g, p, n, &x, caps)? })
        }
        Command::Verify => {
            let battery = verify_inputs(config)?;
            let report = verify_battery(config, &battery)?;
            let text = match config.format {
                Format::Json => report.to_json(),
                Format::Tsv => report.to_tsv(config.timings),
            };
            return Ok((text, if report.passed() { 0 } else { 1 }));
        }
    };
    Ok((render(value, config.format), 0))
}

/// Explicit files win; otherwise the battery directory from the
/// environment; otherwise the standard battery.
fn verify_inputs(config: &RunConfig) -> CliResult<Battery> {
    if config.group.is_some() || config.presheaf.is_some() {
        let mut b = Battery::default();
        if config.group.is_some() {
            let (name, g) = group(config)?;
            if let Some(path) = &config.complex {
                let (_, x) = load_complex_file(path, &g)?;
                let cname = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                b.complexes.push(NamedComplex { name: cname, group: name.clone(), complex: x });
            }
            b.groups.push((name, g));
        }
        if let Some(path) = &config.presheaf {
            let (f, h) = load_presheaf_file(path, &config.caps)?;
            let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            b.presheaves.push((name, f, h));
        }
        return Ok(b);
    }
    match std::env::var_os(BATTERY_DIR_VAR) {
        Some(dir) => Battery::from_dir(std::path::Path::new(&dir), &config.caps),
        None => Ok(Battery::standard()),
    }
}
