//! File-backed catalog: named algebras with expected properties, closed-form
//! actions, degeneration arrow sets, torus crystallographic families, and an
//! errata ledger for the published tables the data was transcribed from.
//!
//! Data lives under `data/` next to the crate manifest; set `AFFINE_DATA_DIR`
//! to point somewhere else. Loading is strict: malformed files, duplicate
//! names, bad cross-references, and non-commutative or non-associative
//! products are hard failures.

use std::collections::BTreeMap;
use std::env;
use std::fs;
use std::path::{Path, PathBuf};

use num::Zero;
use serde::Deserialize;
use thiserror::Error;

use crate::action::{ClosedFormAction, Domain};
use crate::algebra::Algebra;
use crate::cohomology::SymmetricCochain;
use crate::deformation::DegenerationFamily;
use crate::exact::ratfun::RfMatrix;
use crate::exact::rational::{parse_rational, rat_int, Rational};
use crate::expr::Expr;
use crate::lattice::{CompositionLaw, CrystalDomain, CrystalFamily};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("failed to parse {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("duplicate catalog name `{0}`")]
    DuplicateName(String),
    #[error("invalid entry `{name}`: {message}")]
    BadEntry { name: String, message: String },
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
}

/// Directory the catalog data is loaded from: `AFFINE_DATA_DIR` when set,
/// otherwise `data/` next to this crate's manifest.
pub fn data_dir() -> PathBuf {
    if let Ok(dir) = env::var("AFFINE_DATA_DIR") {
        return PathBuf::from(dir);
    }
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

/// Canonical lookup key: lowercased, with `μ` and `Γ` spelled out.
pub fn normalize_name(raw: &str) -> String {
    let mut s = String::with_capacity(raw.len());
    for ch in raw.trim().chars() {
        match ch {
            'μ' => s.push_str("mu"),
            'Γ' | 'γ' => s.push_str("gamma"),
            c => s.extend(c.to_lowercase()),
        }
    }
    s
}

/// Algebra names for one dimension, in table order.
pub fn algebra_names(dim: usize) -> Vec<String> {
    let count = match dim {
        2 => 6,
        3 => 15,
        _ => 0,
    };
    (1..=count).map(|i| format!("mu{i}_{dim}d")).collect()
}

/// Action names for one dimension, in table order.
pub fn action_names(dim: usize) -> Vec<String> {
    let count = match dim {
        2 => 6,
        3 => 15,
        _ => 0,
    };
    (1..=count).map(|i| format!("a{i}_{dim}d")).collect()
}

/// Torus family names in catalog order: the two plane families, then the
/// seven three-dimensional holonomy groups.
pub fn torus_names() -> Vec<String> {
    let mut names = vec!["t2_a4".to_string(), "t2_a5".to_string()];
    names.extend((1..=7).map(|i| format!("gamma{i}")));
    names
}

/// Properties the source tables assert for one algebra. `None` means the
/// tables do not state the value for this entry.
#[derive(Debug, Clone)]
pub struct Expected {
    pub unital: bool,
    pub nilpotent: bool,
    pub complete: bool,
    pub dim_h2s: Option<usize>,
    pub dim_h2_full: Option<usize>,
    pub rigid: Option<bool>,
    /// Representative cocycles as printed, when the tables list a basis.
    pub h2s_representatives: Option<Vec<SymmetricCochain>>,
    /// Corrected representative set, present only where the printed set is
    /// defective (see the errata ledger).
    pub h2s_representatives_corrected: Option<Vec<SymmetricCochain>>,
}

/// One catalog algebra with its asserted properties and provenance.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub algebra: Algebra,
    pub expected: Expected,
    pub citation: String,
}

/// One closed-form affine action tied to a catalog algebra.
#[derive(Debug, Clone)]
pub struct ActionEntry {
    pub name: String,
    /// Name of the algebra whose exponentiated representation this is.
    pub algebra: String,
    /// The action in corrected form (passes comparison against `exp`).
    pub action: ClosedFormAction,
    /// The action exactly as printed, when it differs from the corrected one.
    pub printed: Option<ClosedFormAction>,
    /// An independently rewritten equivalent form, stored where the printed
    /// formula groups terms unusually and deserves a cross-check.
    pub regenerated: Option<ClosedFormAction>,
    /// Translation-image domain, stated for two-dimensional entries only.
    pub domain: Option<Domain>,
    pub citation: String,
}

/// A shipped degeneration family plus bookkeeping flags.
#[derive(Debug, Clone)]
pub struct ArrowRecord {
    pub family: DegenerationFamily,
    /// Extra families beyond the published diagram (kept out of its count).
    pub supplementary: bool,
    pub citation: String,
}

/// A published arrow that cannot be realized, with the obstruction that
/// proves it.
#[derive(Debug, Clone)]
pub struct UnrealizedArrow {
    /// Algebra whose orbit closure would have to contain the target.
    pub source: String,
    /// The would-be limit algebra.
    pub target: String,
    pub obstruction: String,
    pub note: String,
    pub citation: String,
}

/// All degeneration arrows for one dimension.
#[derive(Debug, Clone)]
pub struct ArrowSet {
    pub dim: usize,
    pub families: Vec<ArrowRecord>,
    pub unrealized: Vec<UnrealizedArrow>,
    pub citation: String,
}

/// One torus crystallographic family with its verified composition law.
#[derive(Debug, Clone)]
pub struct TorusEntry {
    pub family: CrystalFamily,
    pub law: CompositionLaw,
    /// Alternative translation pattern generated directly by the exponential,
    /// recorded where it differs from the stored integral pattern.
    pub alternate_translation: Option<Vec<Expr>>,
    pub citation: String,
}

/// Kind of defect a ledger entry records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErratumKind {
    /// A component of a printed closed-form action.
    ActionComponent,
    /// An excluded point of a printed translation-image domain.
    ExcludedPoint,
    /// A printed second-cohomology dimension.
    H2sDimension,
    /// A printed second-cohomology representative set.
    H2sBasis,
}

/// One defect in the published tables: what was printed, what the
/// computation requires, and why.
#[derive(Debug, Clone, Deserialize)]
pub struct Erratum {
    pub id: String,
    pub kind: ErratumKind,
    pub location: String,
    pub printed: String,
    pub corrected: String,
    pub justification: String,
}

/// The full loaded catalog. Read-only after load.
#[derive(Debug, Clone)]
pub struct Catalog {
    algebras: BTreeMap<String, CatalogEntry>,
    actions: BTreeMap<String, ActionEntry>,
    arrows: BTreeMap<usize, ArrowSet>,
    tori: BTreeMap<String, TorusEntry>,
    errata: Vec<Erratum>,
}

impl Catalog {
    /// Loads the catalog from [`data_dir`].
    pub fn load() -> Result<Catalog, CatalogError> {
        Catalog::load_from(&data_dir())
    }

    /// Loads a catalog from an explicit directory. The `algebras/` directory
    /// is required; `actions/`, `arrows/`, `tori/`, and `errata.json` are
    /// loaded when present.
    pub fn load_from(dir: &Path) -> Result<Catalog, CatalogError> {
        let mut catalog = Catalog {
            algebras: BTreeMap::new(),
            actions: BTreeMap::new(),
            arrows: BTreeMap::new(),
            tori: BTreeMap::new(),
            errata: Vec::new(),
        };

        for path in json_files(&dir.join("algebras"), true)? {
            let file: AlgebraFile = read_json(&path)?;
            let entry = build_algebra(file, &path)?;
            let key = entry.algebra.name().to_string();
            if catalog.algebras.contains_key(&key) {
                return Err(CatalogError::DuplicateName(key));
            }
            catalog.algebras.insert(key, entry);
        }

        for path in json_files(&dir.join("actions"), false)? {
            let file: ActionFile = read_json(&path)?;
            let entry = build_action(file, &catalog.algebras)?;
            let key = entry.name.clone();
            if catalog.actions.contains_key(&key) {
                return Err(CatalogError::DuplicateName(key));
            }
            catalog.actions.insert(key, entry);
        }

        for path in json_files(&dir.join("arrows"), false)? {
            let file: ArrowsFile = read_json(&path)?;
            let set = build_arrows(file, &catalog.algebras)?;
            if catalog.arrows.contains_key(&set.dim) {
                return Err(CatalogError::DuplicateName(format!(
                    "arrow set for dimension {}",
                    set.dim
                )));
            }
            catalog.arrows.insert(set.dim, set);
        }

        for path in json_files(&dir.join("tori"), false)? {
            let file: TorusFile = read_json(&path)?;
            let entry = build_torus(file)?;
            let key = entry.family.name.clone();
            if catalog.tori.contains_key(&key) {
                return Err(CatalogError::DuplicateName(key));
            }
            catalog.tori.insert(key, entry);
        }

        let errata_path = dir.join("errata.json");
        if errata_path.exists() {
            catalog.errata = read_json(&errata_path)?;
        }

        Ok(catalog)
    }

    pub fn algebra(&self, name: &str) -> Result<&CatalogEntry, CatalogError> {
        self.algebras
            .get(&normalize_name(name))
            .ok_or_else(|| CatalogError::UnknownName(name.to_string()))
    }

    pub fn action(&self, name: &str) -> Result<&ActionEntry, CatalogError> {
        self.actions
            .get(&normalize_name(name))
            .ok_or_else(|| CatalogError::UnknownName(name.to_string()))
    }

    pub fn torus(&self, name: &str) -> Result<&TorusEntry, CatalogError> {
        self.tori
            .get(&normalize_name(name))
            .ok_or_else(|| CatalogError::UnknownName(name.to_string()))
    }

    pub fn arrows(&self, dim: usize) -> Result<&ArrowSet, CatalogError> {
        self.arrows
            .get(&dim)
            .ok_or_else(|| CatalogError::UnknownName(format!("arrow set for dimension {dim}")))
    }

    /// The action entry attached to an algebra, if one is loaded.
    pub fn action_for_algebra(&self, algebra_name: &str) -> Option<&ActionEntry> {
        let key = normalize_name(algebra_name);
        self.actions.values().find(|a| a.algebra == key)
    }

    /// Algebras in canonical table order (2D rows, then 3D rows), followed by
    /// any names outside the canonical roster in sorted order.
    pub fn algebras(&self) -> Vec<&CatalogEntry> {
        canonical_order(&self.algebras, |dim| algebra_names(dim))
    }

    /// Actions in canonical table order, same convention as [`algebras`].
    ///
    /// [`algebras`]: Catalog::algebras
    pub fn actions(&self) -> Vec<&ActionEntry> {
        canonical_order(&self.actions, |dim| action_names(dim))
    }

    /// Torus families in catalog order.
    pub fn tori(&self) -> Vec<&TorusEntry> {
        let mut out = Vec::new();
        let mut seen = Vec::new();
        for name in torus_names() {
            if let Some(entry) = self.tori.get(&name) {
                out.push(entry);
                seen.push(name);
            }
        }
        for (name, entry) in &self.tori {
            if !seen.contains(name) {
                out.push(entry);
            }
        }
        out
    }

    /// Arrow sets by ascending dimension.
    pub fn arrow_sets(&self) -> Vec<&ArrowSet> {
        self.arrows.values().collect()
    }

    pub fn errata(&self) -> &[Erratum] {
        &self.errata
    }

    pub fn erratum(&self, id: &str) -> Option<&Erratum> {
        self.errata.iter().find(|e| e.id.eq_ignore_ascii_case(id))
    }
}

/// Orders map values by the canonical per-dimension rosters, then appends
/// anything else (synthetic test entries) in key order.
fn canonical_order<'c, T>(
    map: &'c BTreeMap<String, T>,
    roster: impl Fn(usize) -> Vec<String>,
) -> Vec<&'c T> {
    let mut out = Vec::with_capacity(map.len());
    let mut seen: Vec<String> = Vec::new();
    for dim in [2usize, 3] {
        for name in roster(dim) {
            if let Some(entry) = map.get(&name) {
                out.push(entry);
                seen.push(name);
            }
        }
    }
    for (name, entry) in map {
        if !seen.contains(name) {
            out.push(entry);
        }
    }
    out
}

fn json_files(dir: &Path, required: bool) -> Result<Vec<PathBuf>, CatalogError> {
    if !dir.exists() {
        if required {
            return Err(CatalogError::Io {
                path: dir.to_path_buf(),
                source: std::io::Error::new(std::io::ErrorKind::NotFound, "directory not found"),
            });
        }
        return Ok(Vec::new());
    }
    let entries = fs::read_dir(dir).map_err(|source| CatalogError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().map(|x| x == "json").unwrap_or(false))
        .collect();
    paths.sort();
    Ok(paths)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CatalogError> {
    let text = fs::read_to_string(path).map_err(|source| CatalogError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CatalogError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// Sparse row shared by products and cochain entries: `[i, j, [[k, coeff]]]`
/// with 1-based indices `i ≤ j` and rational coefficient strings.
type SparseRow = (usize, usize, Vec<(usize, String)>);

#[derive(Deserialize)]
struct AlgebraFile {
    name: String,
    dim: usize,
    products: Vec<SparseRow>,
    expected: ExpectedFile,
    citation: String,
}

#[derive(Deserialize)]
struct ExpectedFile {
    unital: bool,
    nilpotent: bool,
    complete: bool,
    #[serde(default)]
    dim_h2s: Option<usize>,
    #[serde(default)]
    dim_h2_full: Option<usize>,
    #[serde(default)]
    rigid: Option<bool>,
    #[serde(default)]
    h2s_representatives: Option<Vec<Vec<SparseRow>>>,
    #[serde(default)]
    h2s_representatives_corrected: Option<Vec<Vec<SparseRow>>>,
}

#[derive(Deserialize)]
struct ActionFile {
    name: String,
    algebra: String,
    params: Vec<String>,
    coords: Vec<String>,
    components: Vec<String>,
    #[serde(default)]
    printed_components: Option<Vec<String>>,
    #[serde(default)]
    regenerated_components: Option<Vec<String>>,
    #[serde(default)]
    domain: Option<DomainFile>,
    citation: String,
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case")]
enum DomainFile {
    All,
    XAboveMinusOne,
    Punctured { exclude: (f64, f64) },
}

#[derive(Deserialize)]
struct ArrowsFile {
    dim: usize,
    citation: String,
    families: Vec<FamilyFile>,
    #[serde(default)]
    unrealized: Vec<UnrealizedFile>,
}

#[derive(Deserialize)]
struct FamilyFile {
    source: String,
    target: String,
    matrix: Vec<Vec<String>>,
    #[serde(default)]
    note: Option<String>,
    #[serde(default)]
    supplementary: bool,
    citation: String,
}

#[derive(Deserialize)]
struct UnrealizedFile {
    source: String,
    target: String,
    obstruction: String,
    note: String,
    citation: String,
}

#[derive(Deserialize)]
struct TorusFile {
    name: String,
    dim: usize,
    params: Vec<String>,
    linear: Vec<Vec<String>>,
    translation: Vec<String>,
    domain: TorusDomainFile,
    /// Quadratic composition coefficients `quad[k][i][j]`, integer.
    law: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    alternate_translation: Option<Vec<String>>,
    citation: String,
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case")]
enum TorusDomainFile {
    All,
    XAboveMinusOne,
}

fn bad(name: &str, message: impl Into<String>) -> CatalogError {
    CatalogError::BadEntry {
        name: name.to_string(),
        message: message.into(),
    }
}

/// Expands sparse `[i, j, [[k, coeff]]]` rows into a dense symmetric tensor.
fn dense_tensor(
    name: &str,
    dim: usize,
    rows: &[SparseRow],
    what: &str,
) -> Result<Vec<Vec<Vec<Rational>>>, CatalogError> {
    let mut c = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
    let mut seen = Vec::new();
    for (i, j, values) in rows {
        if *i < 1 || *j < 1 || *i > *j || *j > dim {
            return Err(bad(
                name,
                format!("{what} row ({i}, {j}) violates 1 ≤ i ≤ j ≤ {dim}"),
            ));
        }
        if seen.contains(&(*i, *j)) {
            return Err(bad(name, format!("{what} row ({i}, {j}) appears twice")));
        }
        seen.push((*i, *j));
        for (k, coeff) in values {
            if *k < 1 || *k > dim {
                return Err(bad(
                    name,
                    format!("{what} row ({i}, {j}) has component index {k} out of range"),
                ));
            }
            let value = parse_rational(coeff)
                .map_err(|e| bad(name, format!("{what} row ({i}, {j}): {e}")))?;
            if !c[*i - 1][*j - 1][*k - 1].is_zero() {
                return Err(bad(
                    name,
                    format!("{what} row ({i}, {j}) repeats component {k}"),
                ));
            }
            c[*i - 1][*j - 1][*k - 1] = value.clone();
            c[*j - 1][*i - 1][*k - 1] = value;
        }
    }
    Ok(c)
}

fn cochains_from_rows(
    name: &str,
    dim: usize,
    sets: &[Vec<SparseRow>],
    what: &str,
) -> Result<Vec<SymmetricCochain>, CatalogError> {
    let mut out = Vec::with_capacity(sets.len());
    for (idx, rows) in sets.iter().enumerate() {
        let label = format!("{what} {}", idx + 1);
        let tensor = dense_tensor(name, dim, rows, &label)?;
        let mut entries = Vec::new();
        for i in 0..dim {
            for j in i..dim {
                if tensor[i][j].iter().any(|v| !v.is_zero()) {
                    entries.push((i, j, tensor[i][j].clone()));
                }
            }
        }
        let cochain = SymmetricCochain::from_entries(dim, &entries)
            .map_err(|e| bad(name, format!("{label}: {e}")))?;
        out.push(cochain);
    }
    Ok(out)
}

fn build_algebra(file: AlgebraFile, path: &Path) -> Result<CatalogEntry, CatalogError> {
    let name = normalize_name(&file.name);
    if file.dim == 0 {
        return Err(bad(&name, "dimension must be positive"));
    }
    let tensor = dense_tensor(&name, file.dim, &file.products, "product")?;
    let algebra = Algebra::new(name.clone(), file.dim, tensor)
        .map_err(|e| bad(&name, e.to_string()))?;
    if let Some((i, j)) = algebra.check_commutative() {
        return Err(bad(
            &name,
            format!("product is not commutative at basis pair ({}, {})", i + 1, j + 1),
        ));
    }
    if let Some((i, j, k)) = algebra.check_associative() {
        return Err(bad(
            &name,
            format!(
                "product is not associative at basis triple ({}, {}, {})",
                i + 1,
                j + 1,
                k + 1
            ),
        ));
    }
    let _ = path;
    let expected = Expected {
        unital: file.expected.unital,
        nilpotent: file.expected.nilpotent,
        complete: file.expected.complete,
        dim_h2s: file.expected.dim_h2s,
        dim_h2_full: file.expected.dim_h2_full,
        rigid: file.expected.rigid,
        h2s_representatives: file
            .expected
            .h2s_representatives
            .as_deref()
            .map(|sets| cochains_from_rows(&name, file.dim, sets, "representative"))
            .transpose()?,
        h2s_representatives_corrected: file
            .expected
            .h2s_representatives_corrected
            .as_deref()
            .map(|sets| cochains_from_rows(&name, file.dim, sets, "corrected representative"))
            .transpose()?,
    };
    Ok(CatalogEntry {
        algebra,
        expected,
        citation: file.citation,
    })
}

fn parse_components(
    name: &str,
    label: &str,
    texts: &[String],
) -> Result<Vec<Expr>, CatalogError> {
    texts
        .iter()
        .enumerate()
        .map(|(i, text)| {
            Expr::parse(text).map_err(|e| bad(name, format!("{label} component {}: {e}", i + 1)))
        })
        .collect()
}

fn build_action(
    file: ActionFile,
    algebras: &BTreeMap<String, CatalogEntry>,
) -> Result<ActionEntry, CatalogError> {
    let name = normalize_name(&file.name);
    let algebra_name = normalize_name(&file.algebra);
    let entry = algebras
        .get(&algebra_name)
        .ok_or_else(|| bad(&name, format!("references unknown algebra `{algebra_name}`")))?;
    let dim = entry.algebra.dim();
    if file.coords.len() != dim {
        return Err(bad(
            &name,
            format!("has {} coordinates but the algebra has dimension {dim}", file.coords.len()),
        ));
    }

    let make = |label: &str, action_name: String, texts: &[String]| -> Result<ClosedFormAction, CatalogError> {
        let components = parse_components(&name, label, texts)?;
        ClosedFormAction::new(action_name, file.params.clone(), file.coords.clone(), components)
            .map_err(|e| bad(&name, format!("{label}: {e}")))
    };

    let action = make("corrected", name.clone(), &file.components)?;
    let printed = file
        .printed_components
        .as_deref()
        .map(|texts| make("printed", format!("{name}_printed"), texts))
        .transpose()?;
    let regenerated = file
        .regenerated_components
        .as_deref()
        .map(|texts| make("regenerated", format!("{name}_regenerated"), texts))
        .transpose()?;

    let domain = file.domain.map(|d| match d {
        DomainFile::All => Domain::All,
        DomainFile::XAboveMinusOne => Domain::HalfPlaneXAboveMinusOne,
        DomainFile::Punctured { exclude } => Domain::Punctured { exclude },
    });

    Ok(ActionEntry {
        name,
        algebra: algebra_name,
        action,
        printed,
        regenerated,
        domain,
        citation: file.citation,
    })
}

fn build_arrows(
    file: ArrowsFile,
    algebras: &BTreeMap<String, CatalogEntry>,
) -> Result<ArrowSet, CatalogError> {
    let set_name = format!("arrows_{}d", file.dim);
    let check_name = |raw: &str| -> Result<String, CatalogError> {
        let key = normalize_name(raw);
        let entry = algebras
            .get(&key)
            .ok_or_else(|| bad(&set_name, format!("references unknown algebra `{key}`")))?;
        if entry.algebra.dim() != file.dim {
            return Err(bad(
                &set_name,
                format!("algebra `{key}` has dimension {}, expected {}", entry.algebra.dim(), file.dim),
            ));
        }
        Ok(key)
    };

    let mut families = Vec::with_capacity(file.families.len());
    for fam in &file.families {
        let source = check_name(&fam.source)?;
        let target = check_name(&fam.target)?;
        let label = format!("{set_name} family {source}→{target}");
        if fam.matrix.len() != file.dim || fam.matrix.iter().any(|row| row.len() != file.dim) {
            return Err(bad(&label, format!("matrix must be {0}×{0}", file.dim)));
        }
        let mut entries = Vec::with_capacity(file.dim * file.dim);
        for (r, row) in fam.matrix.iter().enumerate() {
            for (c, text) in row.iter().enumerate() {
                let expr = Expr::parse(text)
                    .map_err(|e| bad(&label, format!("matrix entry ({}, {}): {e}", r + 1, c + 1)))?;
                let rf = expr
                    .to_ratfun()
                    .map_err(|e| bad(&label, format!("matrix entry ({}, {}): {e}", r + 1, c + 1)))?;
                entries.push(rf);
            }
        }
        let matrix = RfMatrix::new(file.dim, file.dim, entries)
            .map_err(|e| bad(&label, e.to_string()))?;
        families.push(ArrowRecord {
            family: DegenerationFamily {
                source,
                target,
                matrix,
                note: fam.note.clone(),
            },
            supplementary: fam.supplementary,
            citation: fam.citation.clone(),
        });
    }

    let mut unrealized = Vec::with_capacity(file.unrealized.len());
    for u in &file.unrealized {
        unrealized.push(UnrealizedArrow {
            source: check_name(&u.source)?,
            target: check_name(&u.target)?,
            obstruction: u.obstruction.clone(),
            note: u.note.clone(),
            citation: u.citation.clone(),
        });
    }

    Ok(ArrowSet {
        dim: file.dim,
        families,
        unrealized,
        citation: file.citation,
    })
}

fn build_torus(file: TorusFile) -> Result<TorusEntry, CatalogError> {
    let name = normalize_name(&file.name);
    let parse_grid = |label: &str, rows: &[Vec<String>]| -> Result<Vec<Vec<Expr>>, CatalogError> {
        rows.iter()
            .enumerate()
            .map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .map(|(c, text)| {
                        Expr::parse(text).map_err(|e| {
                            bad(&name, format!("{label} entry ({}, {}): {e}", r + 1, c + 1))
                        })
                    })
                    .collect()
            })
            .collect()
    };

    let linear = parse_grid("linear", &file.linear)?;
    let translation = parse_components(&name, "translation", &file.translation)?;
    let domain = match file.domain {
        TorusDomainFile::All => CrystalDomain::All,
        TorusDomainFile::XAboveMinusOne => CrystalDomain::HalfSpaceXAboveMinusOne,
    };
    let family = CrystalFamily::new(
        name.clone(),
        file.dim,
        file.params.clone(),
        linear,
        translation,
        domain,
    )
    .map_err(|e| bad(&name, e.to_string()))?;

    let p = file.params.len();
    if file.law.len() != p
        || file
            .law
            .iter()
            .any(|plane| plane.len() != p || plane.iter().any(|row| row.len() != p))
    {
        return Err(bad(&name, format!("law tensor must be {p}×{p}×{p}")));
    }
    let quad = file
        .law
        .iter()
        .map(|plane| {
            plane
                .iter()
                .map(|row| row.iter().map(|v| rat_int(*v)).collect())
                .collect()
        })
        .collect();

    let alternate_translation = file
        .alternate_translation
        .as_deref()
        .map(|texts| parse_components(&name, "alternate translation", texts))
        .transpose()?;
    if let Some(alt) = &alternate_translation {
        if alt.len() != file.dim {
            return Err(bad(&name, "alternate translation has wrong length"));
        }
    }

    Ok(TorusEntry {
        family,
        law: CompositionLaw { quad },
        alternate_translation,
        citation: file.citation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::One;
    use std::fs;

    fn write(dir: &Path, rel: &str, text: &str) {
        let path = dir.join(rel);
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(path, text).unwrap();
    }

    const SHEAR_2D: &str = r#"{
        "name": "mu4_2d",
        "dim": 2,
        "products": [[1, 1, [[2, "1"]]]],
        "expected": { "unital": false, "nilpotent": true, "complete": true },
        "citation": "synthetic"
    }"#;

    fn minimal_dir() -> tempfile::TempDir {
        let tmp = tempfile::tempdir().unwrap();
        write(tmp.path(), "algebras/mu4_2d.json", SHEAR_2D);
        write(
            tmp.path(),
            "actions/a4_2d.json",
            r#"{
                "name": "a4_2d",
                "algebra": "mu4_2d",
                "params": ["a", "b"],
                "coords": ["x", "y"],
                "components": ["x + a", "a*x + y + a^2/2 + b"],
                "domain": "all",
                "citation": "synthetic"
            }"#,
        );
        write(
            tmp.path(),
            "arrows/dim2.json",
            r#"{
                "dim": 2,
                "citation": "synthetic",
                "families": [
                    {
                        "source": "mu4_2d",
                        "target": "mu4_2d",
                        "matrix": [["t", "0"], ["0", "t^2"]],
                        "citation": "synthetic"
                    }
                ]
            }"#,
        );
        write(
            tmp.path(),
            "tori/t2_a4.json",
            r#"{
                "name": "t2_a4",
                "dim": 2,
                "params": ["p", "q"],
                "linear": [["1", "0"], ["p", "1"]],
                "translation": ["p", "q + p^2"],
                "domain": "all",
                "law": [[[0, 0], [0, 0]], [[-1, 0], [0, 0]]],
                "alternate_translation": ["p", "q + p^2/2"],
                "citation": "synthetic"
            }"#,
        );
        write(
            tmp.path(),
            "errata.json",
            r#"[
                {
                    "id": "X1",
                    "kind": "action_component",
                    "location": "synthetic",
                    "printed": "1 - exp(a)",
                    "corrected": "exp(a) - 1",
                    "justification": "synthetic"
                }
            ]"#,
        );
        tmp
    }

    #[test]
    fn minimal_catalog_loads_and_resolves_names() {
        let tmp = minimal_dir();
        let catalog = Catalog::load_from(tmp.path()).unwrap();

        assert_eq!(catalog.algebras().len(), 1);
        assert_eq!(catalog.actions().len(), 1);
        assert_eq!(catalog.tori().len(), 1);
        assert_eq!(catalog.errata().len(), 1);

        let entry = catalog.algebra("μ4_2d").unwrap();
        assert_eq!(entry.algebra.name(), "mu4_2d");
        assert_eq!(
            entry.algebra.basis_product(0, 0),
            &[Rational::zero(), Rational::one()]
        );
        assert!(entry.expected.complete);
        assert!(entry.expected.dim_h2s.is_none());

        let action = catalog.action("A4_2d").unwrap();
        assert_eq!(action.algebra, "mu4_2d");
        assert_eq!(action.domain, Some(Domain::All));
        assert!(catalog.action_for_algebra("mu4_2d").is_some());

        let arrows = catalog.arrows(2).unwrap();
        assert_eq!(arrows.families.len(), 1);
        assert!(!arrows.families[0].supplementary);

        let torus = catalog.torus("t2_a4").unwrap();
        assert_eq!(torus.family.param_count(), 2);
        assert_eq!(torus.law.quad[1][0][0], rat_int(-1));
        assert!(torus.alternate_translation.is_some());

        assert!(matches!(
            catalog.algebra("mu9_2d"),
            Err(CatalogError::UnknownName(_))
        ));
        assert_eq!(catalog.erratum("x1").unwrap().id, "X1");
    }

    #[test]
    fn duplicate_algebra_name_is_rejected() {
        let tmp = tempfile::tempdir().unwrap();
        write(tmp.path(), "algebras/a.json", SHEAR_2D);
        write(tmp.path(), "algebras/b.json", SHEAR_2D);
        match Catalog::load_from(tmp.path()) {
            Err(CatalogError::DuplicateName(name)) => assert_eq!(name, "mu4_2d"),
            other => panic!("expected duplicate-name error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_json_is_rejected() {
        let tmp = tempfile::tempdir().unwrap();
        write(tmp.path(), "algebras/broken.json", "{ not json");
        assert!(matches!(
            Catalog::load_from(tmp.path()),
            Err(CatalogError::Parse { .. })
        ));
    }

    #[test]
    fn non_associative_product_is_rejected() {
        let tmp = tempfile::tempdir().unwrap();
        write(
            tmp.path(),
            "algebras/bad.json",
            r#"{
                "name": "bad",
                "dim": 2,
                "products": [[1, 1, [[2, "1"]]], [1, 2, [[1, "1"]]]],
                "expected": { "unital": false, "nilpotent": false, "complete": false },
                "citation": "synthetic"
            }"#,
        );
        match Catalog::load_from(tmp.path()) {
            Err(CatalogError::BadEntry { message, .. }) => {
                assert!(message.contains("associative"), "{message}");
            }
            other => panic!("expected bad-entry error, got {other:?}"),
        }
    }

    #[test]
    fn zero_denominator_is_rejected() {
        let tmp = tempfile::tempdir().unwrap();
        write(
            tmp.path(),
            "algebras/bad.json",
            r#"{
                "name": "bad",
                "dim": 2,
                "products": [[1, 1, [[2, "1/0"]]]],
                "expected": { "unital": false, "nilpotent": false, "complete": false },
                "citation": "synthetic"
            }"#,
        );
        assert!(matches!(
            Catalog::load_from(tmp.path()),
            Err(CatalogError::BadEntry { .. })
        ));
    }

    #[test]
    fn out_of_range_product_row_is_rejected() {
        let tmp = tempfile::tempdir().unwrap();
        write(
            tmp.path(),
            "algebras/bad.json",
            r#"{
                "name": "bad",
                "dim": 2,
                "products": [[2, 1, [[1, "1"]]]],
                "expected": { "unital": false, "nilpotent": false, "complete": false },
                "citation": "synthetic"
            }"#,
        );
        match Catalog::load_from(tmp.path()) {
            Err(CatalogError::BadEntry { message, .. }) => {
                assert!(message.contains("1 ≤ i ≤ j"), "{message}");
            }
            other => panic!("expected bad-entry error, got {other:?}"),
        }
    }

    #[test]
    fn action_with_unknown_algebra_is_rejected() {
        let tmp = tempfile::tempdir().unwrap();
        write(tmp.path(), "algebras/mu4_2d.json", SHEAR_2D);
        write(
            tmp.path(),
            "actions/a9_2d.json",
            r#"{
                "name": "a9_2d",
                "algebra": "mu9_2d",
                "params": ["a", "b"],
                "coords": ["x", "y"],
                "components": ["x + a", "y + b"],
                "citation": "synthetic"
            }"#,
        );
        match Catalog::load_from(tmp.path()) {
            Err(CatalogError::BadEntry { message, .. }) => {
                assert!(message.contains("unknown algebra"), "{message}");
            }
            other => panic!("expected bad-entry error, got {other:?}"),
        }
    }

    #[test]
    fn missing_algebras_directory_is_an_error() {
        let tmp = tempfile::tempdir().unwrap();
        assert!(matches!(
            Catalog::load_from(tmp.path()),
            Err(CatalogError::Io { .. })
        ));
    }

    #[test]
    fn representative_rows_become_cochains() {
        let tmp = tempfile::tempdir().unwrap();
        write(
            tmp.path(),
            "algebras/mu13_3d.json",
            r#"{
                "name": "mu13_3d",
                "dim": 3,
                "products": [[1, 1, [[2, "1"]]]],
                "expected": {
                    "unital": false,
                    "nilpotent": true,
                    "complete": true,
                    "dim_h2s": 7,
                    "h2s_representatives": [
                        [[1, 2, [[1, "1"]]], [2, 2, [[2, "1"]]]],
                        [[1, 2, [[2, "1"]]]]
                    ]
                },
                "citation": "synthetic"
            }"#,
        );
        let catalog = Catalog::load_from(tmp.path()).unwrap();
        let entry = catalog.algebra("mu13_3d").unwrap();
        let reps = entry.expected.h2s_representatives.as_ref().unwrap();
        assert_eq!(reps.len(), 2);
        assert_eq!(
            reps[0].value(0, 1),
            vec![Rational::one(), Rational::zero(), Rational::zero()]
        );
        assert_eq!(
            reps[0].value(1, 1),
            vec![Rational::zero(), Rational::one(), Rational::zero()]
        );
        assert_eq!(entry.expected.dim_h2s, Some(7));
    }

    #[test]
    fn name_normalization_handles_aliases() {
        assert_eq!(normalize_name("μ13_3d"), "mu13_3d");
        assert_eq!(normalize_name("A4_2D"), "a4_2d");
        assert_eq!(normalize_name("Γ6"), "gamma6");
        assert_eq!(normalize_name(" mu1_2d "), "mu1_2d");
    }

    #[test]
    fn rosters_have_expected_shape() {
        assert_eq!(algebra_names(2).len(), 6);
        assert_eq!(algebra_names(3).len(), 15);
        assert_eq!(action_names(2).first().map(String::as_str), Some("a1_2d"));
        assert_eq!(action_names(3).last().map(String::as_str), Some("a15_3d"));
        let tori = torus_names();
        assert_eq!(tori.len(), 9);
        assert_eq!(tori[0], "t2_a4");
        assert_eq!(tori[8], "gamma7");
    }
}
