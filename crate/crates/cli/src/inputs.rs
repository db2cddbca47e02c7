use std::fs;
use std::path::{Path, PathBuf};

use chromavar_core::battery::complex_battery;
use chromavar_core::equivariant::GComplexFile;
use chromavar_core::group::{load_group, named, GroupSpec};
use chromavar_core::linalg::HomSpace;
use chromavar_core::presheaf::PresheafFile;
use chromavar_core::{Caps, FiniteGroup, FinitePresheaf, GComplex};

use crate::{CliError, CliResult};

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn in_file<T>(path: &Path, r: chromavar_core::Result<T>) -> CliResult<T> {
    r.map_err(|source| CliError::File { path: path.to_path_buf(), source })
}

/// File name without the given suffix, e.g. `s3` for `s3.group.json`.
fn stem(path: &Path, suffix: &str) -> String {
    let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    name.strip_suffix(suffix).map(str::to_string).unwrap_or(name)
}

/// Group and its display name: the `name` field, else the file stem.
pub fn load_group_file(path: &Path, caps: &Caps) -> CliResult<(String, FiniteGroup)> {
    let spec = in_file(path, GroupSpec::from_json(&read(path)?))?;
    let group = in_file(path, load_group(&spec, caps))?;
    let name = spec.name.clone().unwrap_or_else(|| stem(path, ".group.json").trim_end_matches(".json").to_string());
    Ok((name, group))
}

pub fn load_complex_file(path: &Path, group: &FiniteGroup) -> CliResult<(Option<String>, GComplex)> {
    let file = in_file(path, GComplexFile::from_json(&read(path)?))?;
    let complex = in_file(path, file.build(group))?;
    Ok((file.group.clone(), complex))
}

pub fn load_presheaf_file(path: &Path, caps: &Caps) -> CliResult<(FinitePresheaf, HomSpace)> {
    let file = in_file(path, PresheafFile::from_json(&read(path)?))?;
    let homs = in_file(path, HomSpace::new(file.p, file.d, caps))?;
    let presheaf = in_file(path, file.to_presheaf(&homs))?;
    Ok((presheaf, homs))
}

#[derive(Clone, Debug)]
pub struct NamedComplex {
    pub name: String,
    pub group: String,
    pub complex: GComplex,
}

/// Inputs of a verification run. The point complex is implicit for every
/// group and is not listed in `complexes`.
#[derive(Clone, Debug, Default)]
pub struct Battery {
    pub groups: Vec<(String, FiniteGroup)>,
    pub complexes: Vec<NamedComplex>,
    pub presheaves: Vec<(String, FinitePresheaf, HomSpace)>,
}

impl Battery {
    /// The named groups with every standard complex each admits.
    pub fn standard() -> Self {
        let mut b = Battery::default();
        for (name, g) in named::battery_named() {
            for (cname, x) in complex_battery(&g).into_iter().skip(1) {
                b.complexes.push(NamedComplex { name: cname, group: name.to_string(), complex: x });
            }
            b.groups.push((name.to_string(), g));
        }
        b
    }

    /// `*.group.json`, `*.complex.json` (whose `group` field names a group
    /// file stem) and `*.presheaf.json` files in `dir`, in file name order.
    pub fn from_dir(dir: &Path, caps: &Caps) -> CliResult<Self> {
        let entries = fs::read_dir(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
        let mut paths: Vec<PathBuf> = entries
            .map(|e| e.map(|e| e.path()).map_err(|source| CliError::Io { path: dir.to_path_buf(), source }))
            .collect::<CliResult<_>>()?;
        paths.sort();
        let has = |p: &PathBuf, suffix: &str| p.file_name().map_or(false, |n| n.to_string_lossy().ends_with(suffix));
        let mut b = Battery::default();
        for path in paths.iter().filter(|p| has(p, ".group.json")) {
            let (_, g) = load_group_file(path, caps)?;
            b.groups.push((stem(path, ".group.json"), g));
        }
        for path in paths.iter().filter(|p| has(p, ".complex.json")) {
            let file = in_file(path, GComplexFile::from_json(&read(path)?))?;
            let gname = file.group.clone().ok_or_else(|| CliError::Usage(format!("{}: complex needs a \"group\" field", path.display())))?;
            let (_, g) = b
                .groups
                .iter()
                .find(|(n, _)| *n == gname)
                .ok_or_else(|| CliError::Usage(format!("{}: unknown group {}", path.display(), gname)))?;
            let complex = in_file(path, file.build(g))?;
            b.complexes.push(NamedComplex { name: stem(path, ".complex.json"), group: gname, complex });
        }
        for path in paths.iter().filter(|p| has(p, ".presheaf.json")) {
            let (f, homs) = load_presheaf_file(path, caps)?;
            b.presheaves.push((stem(path, ".presheaf.json"), f, homs));
        }
        Ok(b)
    }
}
