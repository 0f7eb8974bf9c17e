//! The scenario document: schema, parsing and validation.

use crate::{CliError, CliResult};
use serde::Deserialize;
use std::collections::{BTreeMap, BTreeSet};
use workbench_core::{Elem, Matrix, Ring};

pub const SCHEMA_VERSION: u64 = 1;
/// Guards against untrusted inputs demanding unbounded work.
pub const MAX_DEPTH: usize = 64;
pub const MAX_DIM: usize = 64;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub version: u64,
    pub ring: RingSpec,
    #[serde(default)]
    pub objects: BTreeMap<String, ObjectSpec>,
    #[serde(default)]
    pub pipeline: Vec<Step>,
    #[serde(default)]
    pub settings: Settings,
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub depth: Option<usize>,
    pub horizon: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingSpec {
    Integers,
    Rationals,
    Modular {
        modulus: u64,
    },
    PrimeField {
        p: u64,
    },
    Poly {
        coefficients: Box<RingSpec>,
        variable: String,
    },
    PolyQuot {
        coefficients: Box<RingSpec>,
        variable: String,
        modulus: String,
    },
}

impl RingSpec {
    pub fn build(&self) -> CliResult<Ring> {
        let ring = match self {
            RingSpec::Integers => Ring::integers(),
            RingSpec::Rationals => Ring::rationals(),
            RingSpec::Modular { modulus } => Ring::modular(*modulus).map_err(scenario_err)?,
            RingSpec::PrimeField { p } => Ring::prime_field(*p).map_err(scenario_err)?,
            RingSpec::Poly {
                coefficients,
                variable,
            } => {
                let coeff = coefficients.build()?;
                Ring::poly(coeff, variable.clone()).map_err(scenario_err)?
            }
            RingSpec::PolyQuot {
                coefficients,
                variable,
                modulus,
            } => {
                let coeff = coefficients.build()?;
                let base = Ring::poly(coeff, variable.clone()).map_err(scenario_err)?;
                let m = base.parse(modulus).map_err(scenario_err)?;
                Ring::poly_quot(base, m).map_err(scenario_err)?
            }
        };
        Ok(ring)
    }
}

fn scenario_err(e: workbench_core::Error) -> CliError {
    CliError::Scenario(e.to_string())
}

/// Matrices in scenarios are arrays of rows of entry strings, parsed by the
/// scenario ring.
pub type MatrixSpec = Vec<Vec<String>>;

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ObjectSpec {
    /// Cokernel of the relation columns: `relations` lists columns, each of
    /// length `generators`.
    Module {
        generators: usize,
        #[serde(default)]
        relations: Vec<Vec<String>>,
    },
    FreeModule {
        rank: usize,
    },
    CyclicModule {
        annihilator: String,
    },
    Ideal {
        generators: Vec<String>,
    },
    Matrix {
        rows: MatrixSpec,
    },
    Morphism {
        source: String,
        target: String,
        matrix: MatrixSpec,
    },
    Complex {
        lo: i64,
        ranks: Vec<usize>,
        #[serde(default)]
        differentials: Vec<MatrixSpec>,
    },
    StalkComplex {
        degree: i64,
        rank: usize,
    },
    TwoTermComplex {
        lo: i64,
        matrix: MatrixSpec,
    },
    ChainMap {
        source: String,
        target: String,
        lo: i64,
        components: Vec<MatrixSpec>,
    },
    WindowedComplex {
        complex: String,
        /// `perfect` (the window is everything) or `resolve`.
        rule: String,
    },
    Resolution {
        module: String,
    },
    Sequence {
        rule: String,
        #[serde(default)]
        item: Option<String>,
        #[serde(default)]
        module: Option<String>,
        #[serde(default)]
        complex: Option<String>,
        #[serde(default)]
        ideal: Option<String>,
        #[serde(default)]
        element: Option<String>,
        #[serde(default)]
        horizon: Option<usize>,
    },
    Tower {
        rule: String,
        #[serde(default)]
        module: Option<String>,
        #[serde(default)]
        ideal: Option<String>,
        #[serde(default)]
        element: Option<String>,
        #[serde(default)]
        depth: Option<usize>,
    },
    TestSet {
        items: Vec<String>,
    },
    FiniteAlgebra {
        p: u64,
        dim: usize,
        table: Vec<Vec<Vec<u64>>>,
        unit: Vec<u64>,
        radical: Vec<Vec<u64>>,
    },
    AlgebraModule {
        algebra: String,
        action: Vec<Vec<Vec<u64>>>,
    },
    FormalMorphism {
        source: String,
        target: String,
        /// Stage representatives: `reps[i]` maps `X_i` to `Y_{target_stage}`.
        reps: Vec<FormalRep>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormalRep {
    pub target_stage: usize,
    pub matrix: MatrixSpec,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Step {
    pub label: String,
    pub op: String,
    /// When set, an undetermined verdict in this step's result is a failure
    /// with exit code 3.
    #[serde(default)]
    pub require_certificate: bool,
    #[serde(flatten)]
    pub args: BTreeMap<String, serde_json::Value>,
}

/// Parses and structurally validates a scenario document.
pub fn parse_scenario(text: &str) -> CliResult<Scenario> {
    let scenario: Scenario = serde_json::from_str(text)
        .map_err(|e| CliError::Scenario(format!("malformed scenario JSON: {e}")))?;
    if scenario.version != SCHEMA_VERSION {
        return Err(CliError::Scenario(format!(
            "unknown schema version {} (supported: {SCHEMA_VERSION})",
            scenario.version
        )));
    }
    if scenario.settings.depth.is_some_and(|d| d > MAX_DEPTH)
        || scenario.settings.horizon.is_some_and(|h| h > MAX_DEPTH)
    {
        return Err(CliError::Scenario(format!(
            "depth/horizon settings are capped at {MAX_DEPTH}"
        )));
    }
    scenario.validate()?;
    Ok(scenario)
}

pub fn parse_matrix(ring: &Ring, rows: &MatrixSpec) -> CliResult<Matrix> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if r > MAX_DIM || c > MAX_DIM {
        return Err(CliError::Scenario(format!(
            "matrix exceeds {MAX_DIM}x{MAX_DIM}"
        )));
    }
    let mut entries: Vec<Elem> = Vec::with_capacity(r * c);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != c {
            return Err(CliError::Scenario(format!(
                "matrix is not rectangular: row {i} has {} entries, expected {c}",
                row.len()
            )));
        }
        for cell in row {
            entries.push(ring.parse(cell).map_err(|e| {
                CliError::Scenario(format!("bad matrix entry {cell:?} in row {i}: {e}"))
            })?);
        }
    }
    Matrix::new(ring.clone(), r, c, entries).map_err(scenario_err)
}

/// Columns-of-relations form used by module specs.
pub fn parse_relation_columns(
    ring: &Ring,
    generators: usize,
    columns: &[Vec<String>],
) -> CliResult<Matrix> {
    if generators > MAX_DIM || columns.len() > MAX_DIM * MAX_DIM {
        return Err(CliError::Scenario("module size cap exceeded".into()));
    }
    let mut m = Matrix::zero(ring.clone(), generators, columns.len());
    for (j, col) in columns.iter().enumerate() {
        if col.len() != generators {
            return Err(CliError::Scenario(format!(
                "relation column {j} has {} entries for {generators} generators",
                col.len()
            )));
        }
        for (i, cell) in col.iter().enumerate() {
            let e = ring.parse(cell).map_err(|e| {
                CliError::Scenario(format!("bad relation entry {cell:?} in column {j}: {e}"))
            })?;
            m.set(i, j, e);
        }
    }
    Ok(m)
}

impl Scenario {
    fn validate(&self) -> CliResult<()> {
        let mut names: BTreeSet<&str> = BTreeSet::new();
        for name in self.objects.keys() {
            names.insert(name);
        }
        // object cross-references
        for (name, spec) in &self.objects {
            for referenced in spec.references() {
                if !self.objects.contains_key(&referenced) {
                    return Err(CliError::Scenario(format!(
                        "object {name:?} references undefined object {referenced:?}"
                    )));
                }
            }
        }
        for step in &self.pipeline {
            if names.contains(step.label.as_str()) {
                return Err(CliError::Scenario(format!(
                    "step label {:?} is already defined",
                    step.label
                )));
            }
            names.insert(&step.label);
            let spec = crate::runner::op_spec(&step.op).ok_or_else(|| {
                CliError::Scenario(format!(
                    "unknown operation {:?} at step {:?}",
                    step.op, step.label
                ))
            })?;
            spec.check_args(step, &names)?;
        }
        Ok(())
    }
}

impl ObjectSpec {
    /// Names of other objects this spec refers to.
    pub fn references(&self) -> Vec<String> {
        let opt = |o: &Option<String>| o.iter().cloned().collect::<Vec<_>>();
        match self {
            ObjectSpec::Morphism { source, target, .. }
            | ObjectSpec::ChainMap { source, target, .. }
            | ObjectSpec::FormalMorphism { source, target, .. } => {
                vec![source.clone(), target.clone()]
            }
            ObjectSpec::WindowedComplex { complex, .. } => vec![complex.clone()],
            ObjectSpec::Resolution { module } => vec![module.clone()],
            ObjectSpec::Sequence {
                item,
                module,
                complex,
                ideal,
                ..
            } => {
                let mut v = opt(item);
                v.extend(opt(module));
                v.extend(opt(complex));
                v.extend(opt(ideal));
                v
            }
            ObjectSpec::Tower { module, ideal, .. } => {
                let mut v = opt(module);
                v.extend(opt(ideal));
                v
            }
            ObjectSpec::TestSet { items } => items.clone(),
            ObjectSpec::AlgebraModule { algebra, .. } => vec![algebra.clone()],
            _ => Vec::new(),
        }
    }
}
