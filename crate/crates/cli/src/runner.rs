//! Pipeline execution: one dispatch arm per public operation, a declared
//! argument table shared with validation, and an optional parallel mode that
//! schedules independent steps by their name references.

use crate::report::{
    describe_complex, describe_matrix, describe_module, describe_morphism, homology_table,
    json_string, length_json, ml_json, shape_json, verdict_json, Report, StepRecord,
};
use crate::scenario::{Scenario, Step, MAX_DEPTH};
use crate::value::{build_env, Env, Value};
use crate::{CliError, CliResult};
use serde_json::{json, Value as Json};
use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;
use workbench_core::koszul::{self, Stabilization, TowerMode};
use workbench_core::linalg;
use workbench_core::matlis::{self, ArtModule, ArtinianRing};
use workbench_core::module::{
    adic_stage, factors_through_projective, hom_module, socle, socle_series,
};
use workbench_core::seq::{
    self, eventually_invertible, fd_intersect, fd_subgroup, fd_sum, hocolim_finite, hom_formal,
    is_cauchy, lim_lim1, phantom_check, phantomless_check, restricted_yoneda_check, MlVerdict,
    WindowVerdict,
};
use workbench_core::Error as CoreError;

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum ArgKind {
    /// Reference to a named object or an earlier step result.
    Name,
    Uint,
    Int,
    Str,
    StrList,
    NameList,
}

pub struct OpSpec {
    pub name: &'static str,
    /// `(key, kind, required)`
    pub args: &'static [(&'static str, ArgKind, bool)],
}

macro_rules! ops {
    ($(($name:literal, [$(($k:literal, $kind:ident, $req:literal)),*])),* $(,)?) => {
        &[$(OpSpec { name: $name, args: &[$(($k, ArgKind::$kind, $req)),*] }),*]
    };
}

pub const OPS: &[OpSpec] = ops![
    ("ring_make", []),
    ("smith_normal_form", [("matrix", Name, true)]),
    (
        "solve_linear",
        [("matrix", Name, true), ("rhs", Name, true)]
    ),
    (
        "hom_module",
        [("source", Name, true), ("target", Name, true)]
    ),
    ("kernel", [("morphism", Name, true)]),
    ("cokernel", [("morphism", Name, true)]),
    ("image", [("morphism", Name, true)]),
    ("length", [("module", Name, true)]),
    ("socle", [("module", Name, true), ("ideal", Name, true)]),
    (
        "socle_series",
        [
            ("module", Name, true),
            ("ideal", Name, true),
            ("steps", Uint, true)
        ]
    ),
    (
        "adic_stage",
        [
            ("module", Name, true),
            ("ideal", Name, true),
            ("stage", Uint, true)
        ]
    ),
    ("factors_through_projective", [("morphism", Name, true)]),
    ("shift", [("complex", Name, true), ("by", Int, true)]),
    ("cone", [("chain_map", Name, true)]),
    (
        "tensor_complex",
        [("left", Name, true), ("right", Name, true)]
    ),
    (
        "hom_complex",
        [("source", Name, true), ("target", Name, true)]
    ),
    (
        "homology",
        [("complex", Name, true), ("degree", Int, false)]
    ),
    (
        "homotopy_hom",
        [("source", Name, true), ("target", Name, true)]
    ),
    (
        "truncate_ge",
        [("complex", Name, true), ("degree", Int, true)]
    ),
    ("is_acyclic", [("complex", Name, true)]),
    ("quasi_iso_check", [("chain_map", Name, true)]),
    ("koszul", [("elements", StrList, true)]),
    ("koszul_dual", [("complex", Name, true)]),
    (
        "lambda_stage",
        [
            ("complex", Name, true),
            ("ideal", Name, true),
            ("stage", Uint, true)
        ]
    ),
    (
        "gamma_stage",
        [
            ("complex", Name, true),
            ("ideal", Name, true),
            ("stage", Uint, true)
        ]
    ),
    (
        "tower_report",
        [
            ("complex", Name, true),
            ("ideal", Name, true),
            ("stages", Uint, false),
            ("mode", Str, true)
        ]
    ),
    (
        "adjunction_check",
        [
            ("left", Name, true),
            ("right", Name, true),
            ("ideal", Name, true),
            ("stage", Uint, true)
        ]
    ),
    ("injective_envelope_simple", [("algebra", Name, false)]),
    (
        "matlis_dual",
        [("module", Name, true), ("algebra", Name, false)]
    ),
    (
        "double_dual_check",
        [("module", Name, true), ("algebra", Name, false)]
    ),
    (
        "e_filtration",
        [("stage", Uint, true), ("algebra", Name, false)]
    ),
    (
        "end_e_compare",
        [("stage", Uint, true), ("algebra", Name, false)]
    ),
    (
        "hom_formal",
        [
            ("source", Name, true),
            ("target", Name, true),
            ("depth", Uint, false)
        ]
    ),
    (
        "is_cauchy",
        [
            ("sequence", Name, true),
            ("tests", Name, true),
            ("horizon", Uint, false)
        ]
    ),
    (
        "eventually_invertible",
        [
            ("formal", Name, true),
            ("tests", Name, true),
            ("horizon", Uint, false)
        ]
    ),
    ("lim_lim1", [("tower", Name, true)]),
    (
        "hocolim_finite",
        [("sequence", Name, true), ("stage", Uint, false)]
    ),
    (
        "phantom_check",
        [("chain_map", Name, true), ("tests", Name, true)]
    ),
    (
        "phantomless_check",
        [
            ("source", Name, true),
            ("target", Name, true),
            ("depth", Uint, false)
        ]
    ),
    (
        "truncation_tower",
        [("complex", Name, true), ("horizon", Uint, false)]
    ),
    (
        "restricted_yoneda_check",
        [
            ("source", Name, true),
            ("target", Name, true),
            ("horizon", Uint, false)
        ]
    ),
    (
        "fd_subgroup",
        [
            ("test_object", Name, true),
            ("object", Name, true),
            ("via", Name, true)
        ]
    ),
    ("fd_sum", [("left", Name, true), ("right", Name, true)]),
    (
        "fd_intersect",
        [("left", Name, true), ("right", Name, true)]
    ),
];

pub fn op_spec(name: &str) -> Option<&'static OpSpec> {
    OPS.iter().find(|s| s.name == name)
}

impl OpSpec {
    pub fn check_args(&self, step: &Step, known_names: &BTreeSet<&str>) -> CliResult<()> {
        for (key, kind, required) in self.args {
            match step.args.get(*key) {
                None if *required => {
                    return Err(CliError::Scenario(format!(
                        "step {:?}: operation {:?} requires argument {key:?}",
                        step.label, self.name
                    )));
                }
                None => {}
                Some(value) => check_kind(step, key, *kind, value, known_names)?,
            }
        }
        for key in step.args.keys() {
            if !self.args.iter().any(|(k, _, _)| k == key) {
                return Err(CliError::Scenario(format!(
                    "step {:?}: unknown argument {key:?} for operation {:?}",
                    step.label, self.name
                )));
            }
        }
        Ok(())
    }
}

fn check_kind(
    step: &Step,
    key: &str,
    kind: ArgKind,
    value: &Json,
    known: &BTreeSet<&str>,
) -> CliResult<()> {
    let bad = |want: &str| {
        Err(CliError::Scenario(format!(
            "step {:?}: argument {key:?} must be {want}",
            step.label
        )))
    };
    match kind {
        ArgKind::Name => match value.as_str() {
            Some(name) if known.contains(name) => Ok(()),
            Some(name) => Err(CliError::Scenario(format!(
                "step {:?}: argument {key:?} names undefined {name:?}",
                step.label
            ))),
            None => bad("a name string"),
        },
        ArgKind::Uint => match value.as_u64() {
            Some(n) if n as usize <= MAX_DEPTH => Ok(()),
            Some(_) => bad(&format!("at most {MAX_DEPTH}")),
            None => bad("a nonnegative integer"),
        },
        ArgKind::Int => {
            if value.as_i64().is_some() {
                Ok(())
            } else {
                bad("an integer")
            }
        }
        ArgKind::Str => {
            if value.is_string() {
                Ok(())
            } else {
                bad("a string")
            }
        }
        ArgKind::StrList => match value.as_array() {
            Some(items) if items.iter().all(Json::is_string) => Ok(()),
            _ => bad("a list of strings"),
        },
        ArgKind::NameList => match value.as_array() {
            Some(items)
                if items
                    .iter()
                    .all(|i| i.as_str().is_some_and(|n| known.contains(n))) =>
            {
                Ok(())
            }
            _ => bad("a list of defined names"),
        },
    }
}

pub struct StepOutcome {
    pub result: Json,
    pub certificates: Json,
    /// Some operation results are objects later steps may reference.
    pub stored: Option<Value>,
    /// False when a verdict is undetermined; with `require_certificate` this
    /// aborts with exit code 3.
    pub certificate_ok: bool,
}

struct StepArgs<'a> {
    step: &'a Step,
}

impl<'a> StepArgs<'a> {
    fn name(&self, key: &str) -> CliResult<&str> {
        self.step
            .args
            .get(key)
            .and_then(Json::as_str)
            .ok_or_else(|| CliError::Scenario(format!("missing argument {key:?}")))
    }

    fn opt_name(&self, key: &str) -> Option<&str> {
        self.step.args.get(key).and_then(Json::as_str)
    }

    fn uint(&self, key: &str) -> CliResult<usize> {
        self.step
            .args
            .get(key)
            .and_then(Json::as_u64)
            .map(|n| n as usize)
            .ok_or_else(|| CliError::Scenario(format!("missing argument {key:?}")))
    }

    fn opt_uint(&self, key: &str, default: usize) -> usize {
        self.step
            .args
            .get(key)
            .and_then(Json::as_u64)
            .map(|n| n as usize)
            .unwrap_or(default)
            .min(MAX_DEPTH)
    }

    fn int(&self, key: &str) -> CliResult<i64> {
        self.step
            .args
            .get(key)
            .and_then(Json::as_i64)
            .ok_or_else(|| CliError::Scenario(format!("missing argument {key:?}")))
    }

    fn str_list(&self, key: &str) -> CliResult<Vec<String>> {
        self.step
            .args
            .get(key)
            .and_then(Json::as_array)
            .map(|a| {
                a.iter()
                    .filter_map(Json::as_str)
                    .map(String::from)
                    .collect()
            })
            .ok_or_else(|| CliError::Scenario(format!("missing argument {key:?}")))
    }
}

fn op_err(label: &str, e: CoreError) -> CliError {
    CliError::Operation {
        label: label.to_string(),
        source: e,
    }
}

/// The artinian ring for Matlis operations: a named table algebra, or the
/// scenario ring itself.
fn artinian(env: &Env, args: &StepArgs) -> CliResult<ArtinianRing> {
    match args.opt_name("algebra") {
        Some(name) => Ok(ArtinianRing::table(env.algebra(name)?.clone())),
        None => {
            ArtinianRing::from_ring(env.ring.clone()).map_err(|e| CliError::Scenario(e.to_string()))
        }
    }
}

fn art_module(env: &Env, name: &str) -> CliResult<ArtModule> {
    match env.get(name)? {
        Value::Module(m) => Ok(ArtModule::Presented(m.clone())),
        Value::AlgebraModule(m) => Ok(ArtModule::Table(m.clone())),
        v => Err(CliError::Scenario(format!(
            "{name:?} is a {}, expected a module",
            v.kind()
        ))),
    }
}

fn art_json(m: &ArtModule) -> CliResult<Json> {
    Ok(match m {
        ArtModule::Presented(m) => {
            describe_module(m).map_err(|e| CliError::Scenario(e.to_string()))?
        }
        ArtModule::Table(m) => json!({
            "representation": "algebra_module",
            "dimension": m.dim(),
            "length": m.length(),
        }),
    })
}

pub fn execute_step(env: &Env, step: &Step) -> CliResult<StepOutcome> {
    let args = StepArgs { step };
    let label = step.label.as_str();
    let core = |e: CoreError| op_err(label, e);
    let mut stored = None;
    let mut certificates = Json::Null;
    let mut certificate_ok = true;
    let result: Json = match step.op.as_str() {
        "ring_make" => {
            json!({
                "ring": env.ring.to_string(),
                "euclidean": env.ring.is_euclidean(),
                "size": env.ring.size().map(|s| s.to_string()),
            })
        }
        "smith_normal_form" => {
            let m = env.matrix(args.name("matrix")?)?;
            let snf = linalg::smith_normal_form(m).map_err(core)?;
            json!({
                "diagonal": snf.diagonal().iter().map(|d| env.ring.fmt_elem(d)).collect::<Vec<_>>(),
                "d": describe_matrix(&snf.d),
                "u": describe_matrix(&snf.u),
                "v": describe_matrix(&snf.v),
            })
        }
        "solve_linear" => {
            let a = env.matrix(args.name("matrix")?)?;
            let b = env.matrix(args.name("rhs")?)?;
            let sol = linalg::solve(a, b).map_err(core)?;
            json!({
                "solvable": sol.is_some(),
                "solution": sol.map(|x| describe_matrix(&x)),
            })
        }
        "hom_module" => {
            let h = hom_module(
                env.module(args.name("source")?)?,
                env.module(args.name("target")?)?,
            )
            .map_err(core)?;
            let out = json!({
                "hom": describe_module(h.module()).map_err(core)?,
                "generators": h.rank(),
            });
            stored = Some(Value::Module(h.module().clone()));
            out
        }
        "kernel" => {
            let (ker, incl) = env
                .morphism(args.name("morphism")?)?
                .kernel()
                .map_err(core)?;
            let out = json!({
                "kernel": describe_module(&ker).map_err(core)?,
                "inclusion": describe_matrix(incl.matrix()),
            });
            stored = Some(Value::Module(ker));
            out
        }
        "cokernel" => {
            let (coker, proj) = env
                .morphism(args.name("morphism")?)?
                .cokernel()
                .map_err(core)?;
            let out = json!({
                "cokernel": describe_module(&coker).map_err(core)?,
                "projection": describe_matrix(proj.matrix()),
            });
            stored = Some(Value::Module(coker));
            out
        }
        "image" => {
            let (im, incl, _) = env
                .morphism(args.name("morphism")?)?
                .image()
                .map_err(core)?;
            let out = json!({
                "image": describe_module(&im).map_err(core)?,
                "inclusion": describe_matrix(incl.matrix()),
            });
            stored = Some(Value::Module(im));
            out
        }
        "length" => {
            let l = env.module(args.name("module")?)?.length().map_err(core)?;
            json!({ "length": length_json(l) })
        }
        "socle" => {
            let (soc, incl) = socle(
                env.module(args.name("module")?)?,
                env.ideal(args.name("ideal")?)?,
            )
            .map_err(core)?;
            let out = json!({
                "socle": describe_module(&soc).map_err(core)?,
                "inclusion": describe_matrix(incl.matrix()),
            });
            stored = Some(Value::Module(soc));
            out
        }
        "socle_series" => {
            let series = socle_series(
                env.module(args.name("module")?)?,
                env.ideal(args.name("ideal")?)?,
                args.uint("steps")?,
            )
            .map_err(core)?;
            let mut stages = Vec::new();
            for (m, _) in &series {
                stages.push(describe_module(m).map_err(core)?);
            }
            json!({ "stages": stages })
        }
        "adic_stage" => {
            let (stage, proj) = adic_stage(
                env.module(args.name("module")?)?,
                env.ideal(args.name("ideal")?)?,
                args.uint("stage")?,
            )
            .map_err(core)?;
            let out = json!({
                "stage": describe_module(&stage).map_err(core)?,
                "projection": describe_matrix(proj.matrix()),
            });
            stored = Some(Value::Module(stage));
            out
        }
        "factors_through_projective" => {
            let witness =
                factors_through_projective(env.morphism(args.name("morphism")?)?).map_err(core)?;
            match witness {
                None => json!({ "factors": false }),
                Some((lift, cover)) => json!({
                    "factors": true,
                    "lift": describe_morphism(&lift).map_err(core)?,
                    "cover": describe_morphism(&cover).map_err(core)?,
                }),
            }
        }
        "shift" => {
            let c = env.complex(args.name("complex")?)?.shift(args.int("by")?);
            let out = describe_complex(&c);
            stored = Some(Value::Complex(c));
            out
        }
        "cone" => {
            let (c, _, _) = workbench_core::complex::cone(env.chain_map(args.name("chain_map")?)?)
                .map_err(core)?;
            let out = json!({
                "cone": describe_complex(&c),
                "homology": homology_table(&c).map_err(core)?,
            });
            stored = Some(Value::Complex(c));
            out
        }
        "tensor_complex" => {
            let c = env
                .complex(args.name("left")?)?
                .tensor(env.complex(args.name("right")?)?)
                .map_err(core)?;
            let out = describe_complex(&c);
            stored = Some(Value::Complex(c));
            out
        }
        "hom_complex" => {
            let c = env
                .complex(args.name("source")?)?
                .hom_from(env.complex(args.name("target")?)?)
                .map_err(core)?;
            let out = describe_complex(&c);
            stored = Some(Value::Complex(c));
            out
        }
        "homology" => {
            let c = env.complex(args.name("complex")?)?;
            match args.step.args.get("degree").and_then(Json::as_i64) {
                Some(n) => {
                    let h = c.homology(n).map_err(core)?;
                    let out = json!({
                        "degree": n,
                        "module": describe_module(&h.module).map_err(core)?,
                    });
                    stored = Some(Value::Module(h.module));
                    out
                }
                None => json!({ "table": homology_table(c).map_err(core)? }),
            }
        }
        "homotopy_hom" => {
            let h = env
                .complex(args.name("source")?)?
                .homotopy_hom(env.complex(args.name("target")?)?)
                .map_err(core)?;
            let out = json!({
                "hom": describe_module(h.module()).map_err(core)?,
                "generators": h.rank(),
            });
            stored = Some(Value::Module(h.module().clone()));
            out
        }
        "truncate_ge" => {
            let (t, _) = env
                .complex(args.name("complex")?)?
                .truncate_ge(args.int("degree")?);
            let out = describe_complex(&t);
            stored = Some(Value::Complex(t));
            out
        }
        "is_acyclic" => {
            json!({ "acyclic": env.complex(args.name("complex")?)?.is_acyclic().map_err(core)? })
        }
        "quasi_iso_check" => {
            json!({ "quasi_isomorphism": env.chain_map(args.name("chain_map")?)?.is_quasi_iso().map_err(core)? })
        }
        "koszul" => {
            let elems = args
                .str_list("elements")?
                .iter()
                .map(|s| env.ring.parse(s))
                .collect::<Result<Vec<_>, _>>()
                .map_err(core)?;
            let k = koszul::koszul(&env.ring, &elems).map_err(core)?;
            let out = describe_complex(&k);
            stored = Some(Value::Complex(k));
            out
        }
        "koszul_dual" => {
            let d = koszul::koszul_dual(env.complex(args.name("complex")?)?).map_err(core)?;
            let out = describe_complex(&d);
            stored = Some(Value::Complex(d));
            out
        }
        "lambda_stage" | "gamma_stage" => {
            let x = env.complex(args.name("complex")?)?;
            let ideal = env.ideal(args.name("ideal")?)?;
            let t = args.uint("stage")?;
            let c = if step.op == "lambda_stage" {
                koszul::lambda_stage(x, ideal, t).map_err(core)?
            } else {
                koszul::gamma_stage(x, ideal, t).map_err(core)?
            };
            let out = json!({
                "stage": describe_complex(&c),
                "homology": homology_table(&c).map_err(core)?,
            });
            stored = Some(Value::Complex(c));
            out
        }
        "tower_report" => {
            let mode = match args.name("mode")? {
                "gamma" => TowerMode::Gamma,
                "lambda" => TowerMode::Lambda,
                other => {
                    return Err(CliError::Scenario(format!(
                        "mode must be \"gamma\" or \"lambda\", got {other:?}"
                    )))
                }
            };
            let report = koszul::tower_report(
                env.complex(args.name("complex")?)?,
                env.ideal(args.name("ideal")?)?,
                args.opt_uint("stages", env.default_depth).max(1),
                mode,
            )
            .map_err(core)?;
            let mut rows = Vec::new();
            let mut verdicts = Vec::new();
            for row in &report.rows {
                let mut modules = Vec::new();
                for m in &row.modules {
                    modules.push(shape_json(m).map_err(core)?);
                }
                let verdict = match row.verdict {
                    Stabilization::StabilizedAt(t) => json!({ "stabilized_at": t }),
                    Stabilization::NotByHorizon => {
                        certificate_ok = false;
                        json!("not_stabilized_by_horizon")
                    }
                };
                verdicts.push(json!({ "degree": row.degree, "verdict": verdict.clone() }));
                rows.push(json!({
                    "degree": row.degree,
                    "modules": modules,
                    "verdict": verdict,
                }));
            }
            certificates = json!({
                "per_degree": verdicts,
                "adic_match": report.adic_match,
            });
            json!({
                "mode": args.name("mode")?,
                "stages": report.horizon,
                "rows": rows,
                "adic_match": report.adic_match,
            })
        }
        "adjunction_check" => {
            let out = koszul::adjunction_check(
                env.complex(args.name("left")?)?,
                env.complex(args.name("right")?)?,
                env.ideal(args.name("ideal")?)?,
                args.uint("stage")?,
            )
            .map_err(core)?;
            json!({
                "holds": out.holds,
                "left": shape_json(&out.left).map_err(core)?,
                "right": shape_json(&out.right).map_err(core)?,
            })
        }
        "injective_envelope_simple" => {
            let art = artinian(env, &args)?;
            let e = matlis::injective_envelope_simple(&art).map_err(core)?;
            let out = json!({
                "envelope": art_json(&e)?,
                "length": e.length().map_err(core)?,
            });
            stored = Some(match e {
                ArtModule::Presented(m) => Value::Module(m),
                ArtModule::Table(m) => Value::AlgebraModule(m),
            });
            out
        }
        "matlis_dual" => {
            let art = artinian(env, &args)?;
            let m = art_module(env, args.name("module")?)?;
            let d = matlis::matlis_dual(&art, &m).map_err(core)?;
            let out = json!({ "dual": art_json(&d)? });
            stored = Some(match d {
                ArtModule::Presented(m) => Value::Module(m),
                ArtModule::Table(m) => Value::AlgebraModule(m),
            });
            out
        }
        "double_dual_check" => {
            let art = artinian(env, &args)?;
            let m = art_module(env, args.name("module")?)?;
            json!({ "natural_map_is_isomorphism": matlis::double_dual_check(&art, &m).map_err(core)? })
        }
        "e_filtration" => {
            let art = artinian(env, &args)?;
            let n = args.uint("stage")?;
            let mut lengths = Vec::new();
            for k in 0..=n {
                let (stage, _) = matlis::e_filtration(&art, k).map_err(core)?;
                lengths.push(stage.length().map_err(core)?);
            }
            let (stage, _) = matlis::e_filtration(&art, n).map_err(core)?;
            let out = json!({
                "stage": art_json(&stage)?,
                "lengths": lengths,
            });
            if let ArtModule::Presented(m) = stage {
                stored = Some(Value::Module(m));
            }
            out
        }
        "end_e_compare" => {
            let art = artinian(env, &args)?;
            let out = matlis::end_e_compare(&art, args.uint("stage")?).map_err(core)?;
            json!({
                "iso": out.iso,
                "end_stage": art_json(&out.end_stage)?,
                "adic_stage": art_json(&out.adic)?,
            })
        }
        "hom_formal" => {
            let out = hom_formal(
                env.sequence(args.name("source")?)?,
                env.sequence(args.name("target")?)?,
                args.opt_uint("depth", env.default_depth),
            )
            .map_err(core)?;
            let mut certs = Vec::new();
            for (i, c) in out.certificates.iter().enumerate() {
                if c.verdict == WindowVerdict::NotByHorizon {
                    certificate_ok = false;
                }
                certs.push(json!({
                    "column": i,
                    "colimit": shape_json(&c.module).map_err(core)?,
                    "verdict": verdict_json(c.verdict),
                }));
            }
            certificates = json!({
                "columns": certs,
                "tower": ml_json(out.lim_outcome.verdict),
            });
            if out.lim_outcome.verdict == MlVerdict::Undetermined {
                certificate_ok = false;
            }
            let res = json!({
                "limit": describe_module(&out.limit).map_err(core)?,
            });
            stored = Some(Value::Module(out.limit));
            res
        }
        "is_cauchy" => {
            let verdicts = is_cauchy(
                env.sequence(args.name("sequence")?)?,
                env.tests(args.name("tests")?)?,
                args.opt_uint("horizon", env.sequence(args.name("sequence")?)?.horizon()),
            )
            .map_err(core)?;
            let rows: Vec<Json> = verdicts
                .iter()
                .map(|(label, v)| {
                    if *v == WindowVerdict::NotByHorizon {
                        certificate_ok = false;
                    }
                    json!({ "test": label, "verdict": verdict_json(*v) })
                })
                .collect();
            certificates = json!(rows.clone());
            json!({ "per_test": rows })
        }
        "eventually_invertible" => {
            let f = env.formal(args.name("formal")?)?;
            let verdicts = eventually_invertible(
                f,
                env.tests(args.name("tests")?)?,
                args.opt_uint("horizon", f.depth()),
            )
            .map_err(core)?;
            let rows: Vec<Json> = verdicts
                .iter()
                .map(|(label, v)| {
                    if *v == WindowVerdict::NotByHorizon {
                        certificate_ok = false;
                    }
                    json!({ "test": label, "verdict": verdict_json(*v) })
                })
                .collect();
            certificates = json!(rows.clone());
            json!({ "per_test": rows })
        }
        "lim_lim1" => {
            let out = lim_lim1(env.tower(args.name("tower")?)?).map_err(core)?;
            if out.verdict == MlVerdict::Undetermined {
                certificate_ok = false;
            }
            certificates = ml_json(out.verdict);
            let chains: Vec<Vec<Json>> = out
                .image_chain_lengths
                .iter()
                .map(|chain| chain.iter().map(|l| length_json(*l)).collect())
                .collect();
            let res = json!({
                "limit": describe_module(&out.limit).map_err(core)?,
                "image_chain_lengths": chains,
                "verdict": ml_json(out.verdict),
            });
            stored = Some(Value::Module(out.limit));
            res
        }
        "hocolim_finite" => {
            let seq = env.sequence(args.name("sequence")?)?;
            let (tel, _) =
                hocolim_finite(seq, args.opt_uint("stage", seq.horizon())).map_err(core)?;
            let out = json!({
                "telescope": describe_complex(&tel),
                "homology": homology_table(&tel).map_err(core)?,
            });
            stored = Some(Value::Complex(tel));
            out
        }
        "phantom_check" => {
            json!({
                "phantom": phantom_check(
                    env.chain_map(args.name("chain_map")?)?,
                    env.tests(args.name("tests")?)?,
                )
                .map_err(core)?,
            })
        }
        "phantomless_check" => {
            let v = phantomless_check(
                env.sequence(args.name("source")?)?,
                env.sequence(args.name("target")?)?,
                args.opt_uint("depth", env.default_depth),
            )
            .map_err(core)?;
            if v == MlVerdict::Undetermined {
                certificate_ok = false;
            }
            certificates = ml_json(v);
            json!({ "verdict": ml_json(v) })
        }
        "truncation_tower" => {
            let seq = seq::ObjectSequence::truncation_tower(
                env.windowed(args.name("complex")?)?,
                args.opt_uint("horizon", env.default_horizon),
            )
            .map_err(core)?;
            let mut items = Vec::new();
            for i in 0..seq.len() {
                if let workbench_core::seq::Obj::Complex(c) = seq.item(i).map_err(core)? {
                    items.push(describe_complex(c));
                }
            }
            let out = json!({ "items": items });
            stored = Some(Value::Sequence(seq));
            out
        }
        "restricted_yoneda_check" => {
            let report = restricted_yoneda_check(
                env.windowed(args.name("source")?)?,
                env.windowed(args.name("target")?)?,
                args.opt_uint("horizon", env.default_horizon),
            )
            .map_err(core)?;
            if !report.mittag_leffler {
                certificate_ok = false;
            }
            certificates = json!({
                "stabilized_at": report.stabilized_at,
                "mittag_leffler": report.mittag_leffler,
                "phantoms_vanish": report.phantom_vanishes,
            });
            let res = json!({
                "stabilized_at": report.stabilized_at,
                "mittag_leffler": report.mittag_leffler,
                "phantoms_vanish": report.phantom_vanishes,
                "limit": describe_module(&report.limit).map_err(core)?,
                "limit_equals_direct_hom": report.lim_equals_direct_hom,
            });
            stored = Some(Value::Module(report.limit));
            res
        }
        "fd_subgroup" => {
            let u = fd_subgroup(
                &env.obj(args.name("test_object")?)?,
                &env.obj(args.name("object")?)?,
                &env.map(args.name("via")?)?,
            )
            .map_err(core)?;
            let out = json!({
                "subgroup": describe_module(&u.subgroup).map_err(core)?,
                "ambient": describe_module(u.ambient.module()).map_err(core)?,
            });
            stored = Some(Value::Fd(Box::new(u)));
            out
        }
        "fd_sum" | "fd_intersect" => {
            let a = env.fd(args.name("left")?)?;
            let b = env.fd(args.name("right")?)?;
            let u = if step.op == "fd_sum" {
                fd_sum(a, b).map_err(core)?
            } else {
                fd_intersect(a, b).map_err(core)?
            };
            let out = json!({
                "subgroup": describe_module(&u.subgroup).map_err(core)?,
            });
            stored = Some(Value::Fd(Box::new(u)));
            out
        }
        other => {
            return Err(CliError::Scenario(format!("unknown operation {other:?}")));
        }
    };
    Ok(StepOutcome {
        result,
        certificates,
        stored,
        certificate_ok,
    })
}

/// Runs the pipeline in order; `parallel` schedules independent steps
/// together, with the dependency graph derived from name references.
pub fn run(scenario: &Scenario, source_text: &str, parallel: bool) -> CliResult<Report> {
    let mut env = build_env(scenario)?;
    let mut records: BTreeMap<String, StepRecord> = BTreeMap::new();
    let levels = schedule(scenario, parallel);
    for level in levels {
        let steps: Vec<&Step> = level.iter().map(|&i| &scenario.pipeline[i]).collect();
        let outcomes: Vec<(String, CliResult<StepOutcome>, u128)> = if steps.len() > 1 {
            std::thread::scope(|scope| {
                let env_ref = &env;
                let handles: Vec<_> = steps
                    .iter()
                    .map(|step| {
                        scope.spawn(move || {
                            let start = Instant::now();
                            let out = execute_step(env_ref, step);
                            (step.label.clone(), out, start.elapsed().as_micros())
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().unwrap()).collect()
            })
        } else {
            steps
                .iter()
                .map(|step| {
                    let start = Instant::now();
                    let out = execute_step(&env, step);
                    (step.label.clone(), out, start.elapsed().as_micros())
                })
                .collect()
        };
        for ((label, outcome, micros), step) in outcomes.into_iter().zip(&steps) {
            let outcome = outcome?;
            if step.require_certificate && !outcome.certificate_ok {
                return Err(CliError::Horizon(label));
            }
            if let Some(value) = outcome.stored {
                env.values.insert(label.clone(), value);
            }
            records.insert(
                label.clone(),
                StepRecord {
                    label,
                    op: step.op.clone(),
                    result: outcome.result,
                    certificates: outcome.certificates,
                    micros,
                },
            );
        }
    }
    let ordered: Vec<StepRecord> = scenario
        .pipeline
        .iter()
        .map(|s| records.remove(&s.label).expect("every step ran"))
        .collect();
    Ok(Report::new(source_text, ordered))
}

/// Topological levels; sequential mode is one step per level.
fn schedule(scenario: &Scenario, parallel: bool) -> Vec<Vec<usize>> {
    if !parallel {
        return (0..scenario.pipeline.len()).map(|i| vec![i]).collect();
    }
    let labels: BTreeMap<&str, usize> = scenario
        .pipeline
        .iter()
        .enumerate()
        .map(|(i, s)| (s.label.as_str(), i))
        .collect();
    let mut level_of = vec![0usize; scenario.pipeline.len()];
    for (i, step) in scenario.pipeline.iter().enumerate() {
        let mut level = 0;
        for value in step.args.values() {
            let mut names: Vec<&str> = Vec::new();
            if let Some(s) = value.as_str() {
                names.push(s);
            }
            if let Some(arr) = value.as_array() {
                names.extend(arr.iter().filter_map(Json::as_str));
            }
            for name in names {
                if let Some(&j) = labels.get(name) {
                    if j < i {
                        level = level.max(level_of[j] + 1);
                    }
                }
            }
        }
        level_of[i] = level;
    }
    let max_level = level_of.iter().copied().max().unwrap_or(0);
    let mut levels = vec![Vec::new(); max_level + 1];
    for (i, &l) in level_of.iter().enumerate() {
        levels[l].push(i);
    }
    levels.retain(|l| !l.is_empty());
    levels
}

/// A terse textual summary of a JSON result, one line per key.
pub fn summarize(value: &Json) -> String {
    json_string(value)
}
