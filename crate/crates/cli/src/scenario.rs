//! Scenario files: JSON, one scenario object or an array of them.
//!
//! ```json
//! {
//!   "id": "constancy-chain",
//!   "function": { "name": "constancy", "d": 4 },
//!   "blindness": "sb",
//!   "structure": { "n": 4, "sets": [[1, 2], [2, 3], [4]] },
//!   "inputs": { "explicit": [[4, 4, 4, 4], [4, 3, 4, 4]] },
//!   "expected_bound": 7
//! }
//! ```
//!
//! Positions are 1-based. Binary inputs are written as 0/1; Constancy inputs
//! as values in `1..=D`; Average inputs as reals in `[0, 1]`.

use std::fs;
use std::path::Path;

use macroscope_core::{
    generate_structure, AllotmentStructure, Blindness, InputVector, MacroscopeSpec, ProtocolKind,
    StructureKind, TargetFunction,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub id: String,
    pub function: FunctionDef,
    pub blindness: String,
    #[serde(default)]
    pub protocol: Option<String>,
    pub structure: StructureDef,
    pub inputs: InputsDef,
    #[serde(default)]
    pub expected_bound: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionDef {
    pub name: String,
    #[serde(default)]
    pub d: Option<u32>,
    #[serde(default)]
    pub epsilon: Option<f64>,
}

/// Either explicit `sets` or a `generator` with its parameters.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDef {
    pub n: usize,
    #[serde(default)]
    pub sets: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub generator: Option<String>,
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub m: Option<usize>,
    #[serde(default)]
    pub stride: Option<usize>,
    #[serde(default)]
    pub density: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputsDef {
    #[serde(default)]
    pub exhaustive: bool,
    #[serde(default)]
    pub explicit: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub random: Option<RandomDef>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomDef {
    pub count: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    Many(Vec<serde_json::Value>),
    One(serde_json::Value),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Inputs {
    Exhaustive,
    Explicit(Vec<InputVector>),
    Random { count: usize, seed: u64 },
}

/// A validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub id: String,
    pub spec: MacroscopeSpec,
    pub protocol: ProtocolKind,
    pub inputs: Inputs,
    pub expected_bound: Option<usize>,
}

impl Scenario {
    /// Inputs paired with their ids, in id order.
    pub fn input_list(&self, ceiling: u64) -> Result<Vec<(u64, InputVector)>, CliError> {
        let f = self.spec.function();
        let n = self.spec.n();
        match &self.inputs {
            Inputs::Exhaustive => {
                let alphabet = f.alphabet().ok_or_else(|| {
                    CliError::config(&self.id, "inputs", "continuous inputs cannot be exhaustive")
                })?;
                let size =
                    macroscope_core::model::input_space_size(n, alphabet).unwrap_or(u64::MAX);
                if size > ceiling {
                    return Err(macroscope_core::Error::CeilingExceeded {
                        size: u128::from(size),
                        ceiling,
                    }
                    .into());
                }
                macroscope_core::model::DiscreteInputs::new(n, alphabet)
                    .enumerate()
                    .map(|(id, v)| Ok((id as u64, self.spec.discrete_input(v)?)))
                    .collect()
            }
            Inputs::Explicit(list) => Ok(list
                .iter()
                .cloned()
                .enumerate()
                .map(|(id, x)| (id as u64, x))
                .collect()),
            Inputs::Random { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                (0..*count)
                    .map(|id| {
                        let x = match f.alphabet() {
                            Some(a) => self
                                .spec
                                .discrete_input((0..n).map(|_| rng.gen_range(0..a)).collect())?,
                            None => InputVector::real((0..n).map(|_| rng.gen::<f64>()).collect())?,
                        };
                        Ok((id as u64, x))
                    })
                    .collect()
            }
        }
    }
}

/// Reads and validates every scenario in `path`.
pub fn parse_scenario(path: &Path) -> Result<Vec<Scenario>, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_scenario_str(&text).map_err(|e| match e {
        CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn parse_scenario_str(text: &str) -> Result<Vec<Scenario>, CliError> {
    let top: OneOrMany = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
    let values = match top {
        OneOrMany::Many(v) => v,
        OneOrMany::One(v) => vec![v],
    };
    let mut out: Vec<Scenario> = Vec::with_capacity(values.len());
    for (i, value) in values.into_iter().enumerate() {
        let file: ScenarioFile = serde_path_to_error::deserialize(value).map_err(|e| {
            CliError::Config(format!(
                "scenario {}: field `{}`: {}",
                i + 1,
                e.path(),
                e.inner()
            ))
        })?;
        let scenario = resolve(file)?;
        if out.iter().any(|s| s.id == scenario.id) {
            return Err(CliError::Config(format!(
                "duplicate scenario id `{}`",
                scenario.id
            )));
        }
        out.push(scenario);
    }
    Ok(out)
}

pub fn parse_function(def: &FunctionDef) -> Result<TargetFunction, String> {
    let f = match def.name.to_ascii_lowercase().as_str() {
        "parity" => TargetFunction::Parity,
        "bsf" | "step" => TargetFunction::Bsf,
        "constancy" => TargetFunction::Constancy {
            d: def.d.ok_or("constancy needs `d`")?,
        },
        "average" | "averaging" => TargetFunction::Average {
            epsilon: def.epsilon.ok_or("average needs `epsilon`")?,
        },
        other => return Err(format!("unknown function `{other}`")),
    };
    f.validate().map_err(|e| e.to_string())?;
    Ok(f)
}

/// Builds the structure described by `def`.
pub fn build_structure(def: &StructureDef) -> Result<AllotmentStructure, String> {
    match (&def.sets, &def.generator) {
        (Some(_), Some(_)) => Err("give either `sets` or `generator`, not both".into()),
        (None, None) => Err("give `sets` or `generator`".into()),
        (Some(sets), None) => {
            if let Some(k) = def.k {
                if k != sets.len() {
                    return Err(format!("k = {k} but {} sets given", sets.len()));
                }
            }
            AllotmentStructure::from_one_based(def.n, sets).map_err(|e| e.to_string())
        }
        (None, Some(name)) => {
            let k = def.k.ok_or("generator needs `k`")?;
            let kind = structure_kind(name, def)?;
            let seed = match kind {
                StructureKind::RandomCovering { .. } => {
                    def.seed.ok_or("random_covering needs an integer `seed`")?
                }
                _ => def.seed.unwrap_or(0),
            };
            generate_structure(&kind, def.n, k, seed).map_err(|e| e.to_string())
        }
    }
}

pub fn structure_kind(name: &str, def: &StructureDef) -> Result<StructureKind, String> {
    Ok(match name {
        "partition" => StructureKind::Partition,
        "nof" => StructureKind::Nof,
        "even_cyclic" => StructureKind::EvenCyclic {
            set_size: def.m.ok_or("even_cyclic needs `m`, the set size")?,
            stride: def.stride,
        },
        "random_covering" => StructureKind::RandomCovering {
            density: def.density.unwrap_or(0.5),
        },
        other => return Err(format!("unknown generator `{other}`")),
    })
}

fn resolve(file: ScenarioFile) -> Result<Scenario, CliError> {
    let id = file.id.clone();
    let err = |field: &str, msg: String| CliError::config(&id, field, msg);
    let function = parse_function(&file.function).map_err(|m| err("function", m))?;
    let blindness: Blindness = file
        .blindness
        .parse()
        .map_err(|e: macroscope_core::Error| err("blindness", e.to_string()))?;
    let structure = build_structure(&file.structure).map_err(|m| err("structure", m))?;
    let spec = MacroscopeSpec::new(function, structure, blindness)
        .map_err(|e| err("structure", e.to_string()))?;
    let protocol = match &file.protocol {
        Some(name) => {
            let p: ProtocolKind = name
                .parse()
                .map_err(|e: macroscope_core::Error| err("protocol", e.to_string()))?;
            p.check_compatible(&spec)
                .map_err(|e| err("protocol", e.to_string()))?;
            p
        }
        None => ProtocolKind::dedicated(&function, blindness).ok_or_else(|| {
            err(
                "protocol",
                format!("no {blindness} protocol computes {function}"),
            )
        })?,
    };
    let inputs = resolve_inputs(&file.inputs, &spec).map_err(|m| err("inputs", m))?;
    Ok(Scenario {
        id,
        spec,
        protocol,
        inputs,
        expected_bound: file.expected_bound,
    })
}

fn resolve_inputs(def: &InputsDef, spec: &MacroscopeSpec) -> Result<Inputs, String> {
    let given = usize::from(def.exhaustive)
        + usize::from(def.explicit.is_some())
        + usize::from(def.random.is_some());
    if given != 1 {
        return Err("give exactly one of `exhaustive`, `explicit`, `random`".into());
    }
    if def.exhaustive {
        if spec.function().alphabet().is_none() {
            return Err("continuous inputs cannot be exhaustive".into());
        }
        return Ok(Inputs::Exhaustive);
    }
    if let Some(r) = &def.random {
        return Ok(Inputs::Random {
            count: r.count,
            seed: r.seed,
        });
    }
    let rows = def.explicit.as_ref().expect("one source given");
    rows.iter()
        .enumerate()
        .map(|(i, row)| input_from_file(spec, row).map_err(|m| format!("input {}: {m}", i + 1)))
        .collect::<Result<Vec<_>, _>>()
        .map(Inputs::Explicit)
}

/// Converts one file row. Constancy values are shifted from `1..=D` to
/// `0..D`.
pub fn input_from_file(spec: &MacroscopeSpec, row: &[f64]) -> Result<InputVector, String> {
    if row.len() != spec.n() {
        return Err(format!("expected {} values, got {}", spec.n(), row.len()));
    }
    let f = spec.function();
    let x = match f {
        TargetFunction::Average { .. } => {
            InputVector::real(row.to_vec()).map_err(|e| e.to_string())?
        }
        TargetFunction::Constancy { d } => {
            let values = row
                .iter()
                .map(|&v| integer_in(v, 1, *d).map(|v| v - 1))
                .collect::<Result<Vec<_>, _>>()?;
            InputVector::dary(*d, values).map_err(|e| e.to_string())?
        }
        _ => {
            let values = row
                .iter()
                .map(|&v| integer_in(v, 0, 1))
                .collect::<Result<Vec<_>, _>>()?;
            InputVector::binary(values).map_err(|e| e.to_string())?
        }
    };
    spec.check_input(&x).map_err(|e| e.to_string())?;
    Ok(x)
}

fn integer_in(v: f64, lo: u32, hi: u32) -> Result<u32, String> {
    if v.fract() != 0.0 || v < f64::from(lo) || v > f64::from(hi) {
        return Err(format!("value {v} is not an integer in {lo}..={hi}"));
    }
    Ok(v as u32)
}

/// Renders discrete values the way scenario files write them.
pub fn display_values(function: &TargetFunction, values: &[u32]) -> String {
    let shift = u32::from(matches!(function, TargetFunction::Constancy { .. }));
    values
        .iter()
        .map(|v| (v + shift).to_string())
        .collect::<Vec<_>>()
        .join(if values.iter().any(|&v| v + shift > 9) {
            ","
        } else {
            ""
        })
}
