//! Runtime values bound to scenario names.

use crate::scenario::{
    parse_matrix, parse_relation_columns, ObjectSpec, Scenario, MAX_DEPTH, MAX_DIM,
};
use crate::{CliError, CliResult};
use std::collections::BTreeMap;
use workbench_core::complex::{ChainMap, Complex, WindowedComplex};
use workbench_core::matlis::{AlgebraModule, FiniteAlgebra, GfMatrix};
use workbench_core::module::{Ideal, ModuleMorphism, PresentedModule};
use workbench_core::seq::{
    FiniteDefinitionSubgroup, FormalMorphism, Map, ModuleTower, Obj, ObjectSequence, TestSet,
};
use workbench_core::{Matrix, Ring};

pub enum Value {
    Module(PresentedModule),
    Morphism(ModuleMorphism),
    Matrix(Matrix),
    Ideal(Ideal),
    Complex(Complex),
    ChainMap(ChainMap),
    Windowed(WindowedComplex),
    Sequence(ObjectSequence),
    Formal(FormalMorphism),
    Tower(ModuleTower),
    Tests(TestSet),
    Algebra(FiniteAlgebra),
    AlgebraModule(AlgebraModule),
    Fd(Box<FiniteDefinitionSubgroup>),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Module(_) => "module",
            Value::Morphism(_) => "morphism",
            Value::Matrix(_) => "matrix",
            Value::Ideal(_) => "ideal",
            Value::Complex(_) => "complex",
            Value::ChainMap(_) => "chain_map",
            Value::Windowed(_) => "windowed_complex",
            Value::Sequence(_) => "sequence",
            Value::Formal(_) => "formal_morphism",
            Value::Tower(_) => "tower",
            Value::Tests(_) => "test_set",
            Value::Algebra(_) => "finite_algebra",
            Value::AlgebraModule(_) => "algebra_module",
            Value::Fd(_) => "finite_definition_subgroup",
        }
    }
}

pub struct Env {
    pub ring: Ring,
    pub values: BTreeMap<String, Value>,
    pub default_depth: usize,
    pub default_horizon: usize,
}

impl Env {
    pub fn get(&self, name: &str) -> CliResult<&Value> {
        self.values
            .get(name)
            .ok_or_else(|| CliError::Scenario(format!("undefined name {name:?}")))
    }

    pub fn module(&self, name: &str) -> CliResult<&PresentedModule> {
        match self.get(name)? {
            Value::Module(m) => Ok(m),
            v => Err(type_err(name, "module", v)),
        }
    }

    pub fn morphism(&self, name: &str) -> CliResult<&ModuleMorphism> {
        match self.get(name)? {
            Value::Morphism(m) => Ok(m),
            v => Err(type_err(name, "morphism", v)),
        }
    }

    pub fn matrix(&self, name: &str) -> CliResult<&Matrix> {
        match self.get(name)? {
            Value::Matrix(m) => Ok(m),
            v => Err(type_err(name, "matrix", v)),
        }
    }

    pub fn ideal(&self, name: &str) -> CliResult<&Ideal> {
        match self.get(name)? {
            Value::Ideal(m) => Ok(m),
            v => Err(type_err(name, "ideal", v)),
        }
    }

    pub fn complex(&self, name: &str) -> CliResult<&Complex> {
        match self.get(name)? {
            Value::Complex(m) => Ok(m),
            v => Err(type_err(name, "complex", v)),
        }
    }

    pub fn chain_map(&self, name: &str) -> CliResult<&ChainMap> {
        match self.get(name)? {
            Value::ChainMap(m) => Ok(m),
            v => Err(type_err(name, "chain_map", v)),
        }
    }

    pub fn windowed(&self, name: &str) -> CliResult<&WindowedComplex> {
        match self.get(name)? {
            Value::Windowed(m) => Ok(m),
            v => Err(type_err(name, "windowed_complex", v)),
        }
    }

    pub fn sequence(&self, name: &str) -> CliResult<&ObjectSequence> {
        match self.get(name)? {
            Value::Sequence(m) => Ok(m),
            v => Err(type_err(name, "sequence", v)),
        }
    }

    pub fn formal(&self, name: &str) -> CliResult<&FormalMorphism> {
        match self.get(name)? {
            Value::Formal(m) => Ok(m),
            v => Err(type_err(name, "formal_morphism", v)),
        }
    }

    pub fn tower(&self, name: &str) -> CliResult<&ModuleTower> {
        match self.get(name)? {
            Value::Tower(m) => Ok(m),
            v => Err(type_err(name, "tower", v)),
        }
    }

    pub fn tests(&self, name: &str) -> CliResult<&TestSet> {
        match self.get(name)? {
            Value::Tests(m) => Ok(m),
            v => Err(type_err(name, "test_set", v)),
        }
    }

    pub fn algebra(&self, name: &str) -> CliResult<&FiniteAlgebra> {
        match self.get(name)? {
            Value::Algebra(m) => Ok(m),
            v => Err(type_err(name, "finite_algebra", v)),
        }
    }

    pub fn algebra_module(&self, name: &str) -> CliResult<&AlgebraModule> {
        match self.get(name)? {
            Value::AlgebraModule(m) => Ok(m),
            v => Err(type_err(name, "algebra_module", v)),
        }
    }

    pub fn fd(&self, name: &str) -> CliResult<&FiniteDefinitionSubgroup> {
        match self.get(name)? {
            Value::Fd(m) => Ok(m),
            v => Err(type_err(name, "finite_definition_subgroup", v)),
        }
    }

    /// Module or complex, for operations over either base.
    pub fn obj(&self, name: &str) -> CliResult<Obj> {
        match self.get(name)? {
            Value::Module(m) => Ok(Obj::Module(m.clone())),
            Value::Complex(c) => Ok(Obj::Complex(c.clone())),
            v => Err(type_err(name, "module or complex", v)),
        }
    }

    pub fn map(&self, name: &str) -> CliResult<Map> {
        match self.get(name)? {
            Value::Morphism(m) => Ok(Map::Module(m.clone())),
            Value::ChainMap(c) => Ok(Map::Chain(c.clone())),
            v => Err(type_err(name, "morphism or chain_map", v)),
        }
    }
}

fn type_err(name: &str, wanted: &str, got: &Value) -> CliError {
    CliError::Scenario(format!("{name:?} is a {}, expected a {wanted}", got.kind()))
}

fn core_err(e: workbench_core::Error) -> CliError {
    CliError::Scenario(e.to_string())
}

/// Builds all named objects. Specs are processed in dependency order; the
/// validation pass has already ruled out undefined references.
pub fn build_env(scenario: &Scenario) -> CliResult<Env> {
    let ring = scenario.ring.build()?;
    let mut env = Env {
        ring: ring.clone(),
        values: BTreeMap::new(),
        default_depth: scenario.settings.depth.unwrap_or(4).min(MAX_DEPTH),
        default_horizon: scenario.settings.horizon.unwrap_or(6).min(MAX_DEPTH),
    };
    let mut pending: Vec<(&String, &ObjectSpec)> = scenario.objects.iter().collect();
    let mut progress = true;
    while !pending.is_empty() && progress {
        progress = false;
        let mut next = Vec::new();
        for (name, spec) in pending {
            let ready = spec.references().iter().all(|r| env.values.contains_key(r));
            if !ready {
                next.push((name, spec));
                continue;
            }
            let value = build_object(&env, spec).map_err(|e| match e {
                CliError::Scenario(msg) => CliError::Scenario(format!("object {name:?}: {msg}")),
                other => other,
            })?;
            env.values.insert(name.clone(), value);
            progress = true;
        }
        pending = next;
    }
    if !pending.is_empty() {
        let names: Vec<&str> = pending.iter().map(|(n, _)| n.as_str()).collect();
        return Err(CliError::Scenario(format!(
            "circular object definitions: {names:?}"
        )));
    }
    Ok(env)
}

fn build_object(env: &Env, spec: &ObjectSpec) -> CliResult<Value> {
    let ring = &env.ring;
    Ok(match spec {
        ObjectSpec::Module {
            generators,
            relations,
        } => {
            let m = parse_relation_columns(ring, *generators, relations)?;
            Value::Module(PresentedModule::new(ring.clone(), *generators, m).map_err(core_err)?)
        }
        ObjectSpec::FreeModule { rank } => {
            if *rank > MAX_DIM {
                return Err(CliError::Scenario("rank cap exceeded".into()));
            }
            Value::Module(PresentedModule::free(ring.clone(), *rank))
        }
        ObjectSpec::CyclicModule { annihilator } => {
            let a = ring.parse(annihilator).map_err(core_err)?;
            Value::Module(PresentedModule::cyclic(ring.clone(), a).map_err(core_err)?)
        }
        ObjectSpec::Ideal { generators } => {
            let gens = generators
                .iter()
                .map(|g| ring.parse(g).map_err(core_err))
                .collect::<CliResult<Vec<_>>>()?;
            Value::Ideal(Ideal::new(ring.clone(), gens).map_err(core_err)?)
        }
        ObjectSpec::Matrix { rows } => Value::Matrix(parse_matrix(ring, rows)?),
        ObjectSpec::Morphism {
            source,
            target,
            matrix,
        } => {
            let m = parse_matrix(ring, matrix)?;
            Value::Morphism(
                ModuleMorphism::new(env.module(source)?.clone(), env.module(target)?.clone(), m)
                    .map_err(core_err)?,
            )
        }
        ObjectSpec::Complex {
            lo,
            ranks,
            differentials,
        } => {
            if ranks.iter().any(|&r| r > MAX_DIM) || ranks.len() > MAX_DEPTH {
                return Err(CliError::Scenario("complex size cap exceeded".into()));
            }
            let diffs = differentials
                .iter()
                .map(|d| parse_matrix(ring, d))
                .collect::<CliResult<Vec<_>>>()?;
            Value::Complex(Complex::new(ring.clone(), *lo, ranks.clone(), diffs).map_err(core_err)?)
        }
        ObjectSpec::StalkComplex { degree, rank } => {
            if *rank > MAX_DIM {
                return Err(CliError::Scenario("rank cap exceeded".into()));
            }
            Value::Complex(Complex::stalk(ring.clone(), *degree, *rank))
        }
        ObjectSpec::TwoTermComplex { lo, matrix } => {
            Value::Complex(Complex::two_term(*lo, parse_matrix(ring, matrix)?))
        }
        ObjectSpec::ChainMap {
            source,
            target,
            lo,
            components,
        } => {
            let comps = components
                .iter()
                .map(|c| parse_matrix(ring, c))
                .collect::<CliResult<Vec<_>>>()?;
            Value::ChainMap(
                ChainMap::new(
                    env.complex(source)?.clone(),
                    env.complex(target)?.clone(),
                    *lo,
                    comps,
                )
                .map_err(core_err)?,
            )
        }
        ObjectSpec::WindowedComplex { complex, rule } => {
            let c = env.complex(complex)?.clone();
            let w = match rule.as_str() {
                "perfect" => WindowedComplex::perfect(c),
                "resolve" => WindowedComplex::resolving(c),
                other => {
                    return Err(CliError::Scenario(format!(
                        "unknown window rule {other:?} (use \"perfect\" or \"resolve\")"
                    )))
                }
            };
            Value::Windowed(w)
        }
        ObjectSpec::Resolution { module } => {
            Value::Windowed(WindowedComplex::resolution_of(env.module(module)?))
        }
        ObjectSpec::Sequence {
            rule,
            item,
            module,
            complex,
            ideal,
            element,
            horizon,
        } => {
            let h = horizon.unwrap_or(env.default_horizon).min(MAX_DEPTH);
            let need = |o: &Option<String>, what: &str| -> CliResult<String> {
                o.clone().ok_or_else(|| {
                    CliError::Scenario(format!("sequence rule {rule:?} needs {what:?}"))
                })
            };
            let seq = match rule.as_str() {
                "constant" => ObjectSequence::constant(env.obj(&need(item, "item")?)?, h),
                "scalar" => {
                    let e = ring.parse(&need(element, "element")?).map_err(core_err)?;
                    ObjectSequence::scalar_tower(env.obj(&need(item, "item")?)?, &e, h)
                        .map_err(core_err)?
                }
                "prufer" => {
                    let e = ring.parse(&need(element, "element")?).map_err(core_err)?;
                    ObjectSequence::prufer(ring, &e, h).map_err(core_err)?
                }
                "socle" => ObjectSequence::socle_tower(
                    env.module(&need(module, "module")?)?,
                    env.ideal(&need(ideal, "ideal")?)?,
                    h,
                )
                .map_err(core_err)?,
                "truncation" => {
                    ObjectSequence::truncation_tower(env.windowed(&need(complex, "complex")?)?, h)
                        .map_err(core_err)?
                }
                "gamma" => ObjectSequence::gamma_tower(
                    env.complex(&need(complex, "complex")?)?,
                    env.ideal(&need(ideal, "ideal")?)?,
                    h.max(1),
                )
                .map_err(core_err)?,
                other => {
                    return Err(CliError::Scenario(format!(
                        "unknown sequence rule {other:?}"
                    )))
                }
            };
            Value::Sequence(seq)
        }
        ObjectSpec::Tower {
            rule,
            module,
            ideal,
            element,
            depth,
        } => {
            let d = depth.unwrap_or(env.default_depth).min(MAX_DEPTH);
            let need = |o: &Option<String>, what: &str| -> CliResult<String> {
                o.clone().ok_or_else(|| {
                    CliError::Scenario(format!("tower rule {rule:?} needs {what:?}"))
                })
            };
            let tower = match rule.as_str() {
                "constant" => {
                    ModuleTower::constant(env.module(&need(module, "module")?)?.clone(), d)
                }
                "adic" => ModuleTower::adic(
                    env.module(&need(module, "module")?)?,
                    env.ideal(&need(ideal, "ideal")?)?,
                    d.max(1),
                )
                .map_err(core_err)?,
                "scalar" => {
                    let e = ring.parse(&need(element, "element")?).map_err(core_err)?;
                    ModuleTower::scalar(env.module(&need(module, "module")?)?, &e, d)
                }
                other => return Err(CliError::Scenario(format!("unknown tower rule {other:?}"))),
            };
            Value::Tower(tower)
        }
        ObjectSpec::TestSet { items } => {
            let objs = items
                .iter()
                .map(|n| Ok((n.clone(), env.obj(n)?)))
                .collect::<CliResult<Vec<_>>>()?;
            Value::Tests(TestSet::new(objs).map_err(core_err)?)
        }
        ObjectSpec::FiniteAlgebra {
            p,
            dim,
            table,
            unit,
            radical,
        } => Value::Algebra(FiniteAlgebra::new(*p, *dim, table, unit, radical).map_err(core_err)?),
        ObjectSpec::AlgebraModule { algebra, action } => {
            let alg = env.algebra(algebra)?;
            let mats = action
                .iter()
                .map(|rows| {
                    let n = rows.len();
                    let data: Vec<u64> = rows.iter().flatten().copied().collect();
                    GfMatrix::new(alg.p(), n, rows.first().map_or(0, Vec::len), data)
                        .map_err(core_err)
                })
                .collect::<CliResult<Vec<_>>>()?;
            Value::AlgebraModule(AlgebraModule::new(alg, mats).map_err(core_err)?)
        }
        ObjectSpec::FormalMorphism {
            source,
            target,
            reps,
        } => {
            let src = env.sequence(source)?.clone();
            let dst = env.sequence(target)?.clone();
            let mut built = Vec::new();
            for (i, rep) in reps.iter().enumerate() {
                let m = parse_matrix(ring, &rep.matrix)?;
                let (Obj::Module(a), Obj::Module(b)) = (
                    src.item(i).map_err(core_err)?.clone(),
                    dst.item(rep.target_stage).map_err(core_err)?.clone(),
                ) else {
                    return Err(CliError::Scenario(
                        "formal morphisms are specified over module sequences".into(),
                    ));
                };
                built.push((
                    rep.target_stage,
                    Map::Module(ModuleMorphism::new(a, b, m).map_err(core_err)?),
                ));
            }
            Value::Formal(FormalMorphism::new(src, dst, built).map_err(core_err)?)
        }
    })
}
