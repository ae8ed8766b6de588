use std::fmt::Write as _;
use std::path::Path;

use macroscope_core::model::DiscreteInputs;
use macroscope_core::protocols::value_width;
use macroscope_core::search::{Witness, WitnessProtocol};
use macroscope_core::{
    ceil_log2, exhaustive_verify, min_cost_search, run_protocol, theoretical_bound,
    AllotmentStructure, Blindness, MacroscopeSpec, ProtocolKind, SearchSpace, StructureKind,
    TargetFunction,
};

use crate::fixtures::fixtures;
use crate::report::{parameter, sort_rows, structure_hash, ReportRow};
use crate::scenario::{build_structure, display_values, Scenario, StructureDef};
use crate::{CliError, Status};

/// Rows of a `run` plus a line per incorrect row.
#[derive(Debug, Clone, Default)]
pub struct RunOutcome {
    pub rows: Vec<ReportRow>,
    pub problems: Vec<String>,
}

impl RunOutcome {
    pub fn status(&self) -> Status {
        if self.problems.is_empty() {
            Status::Ok
        } else {
            Status::Incorrect
        }
    }
}

/// Runs every input of every scenario. A row is correct when every player
/// matches the oracle, the cost equals the protocol's bound, and the cost
/// equals the scenario's `expected_bound` if one is given.
pub fn run_scenarios(scenarios: &[Scenario], ceiling: u64) -> Result<RunOutcome, CliError> {
    let mut outcome = RunOutcome::default();
    for sc in scenarios {
        let spec = &sc.spec;
        let hash = structure_hash(spec.structure());
        let r = spec.structure().intersection_graph().component_count();
        for (input_id, x) in sc.input_list(ceiling)? {
            let run = run_protocol(&sc.protocol, spec, &x)?;
            let mut correct = run.correct && run.cost_bits == run.bound_bits;
            if !run.correct {
                outcome.problems.push(format!(
                    "{} input {input_id}: outputs {:?}, expected {:?}",
                    sc.id, run.outputs, run.oracle
                ));
            }
            if run.cost_bits != run.bound_bits {
                outcome.problems.push(format!(
                    "{} input {input_id}: cost {} differs from bound {}",
                    sc.id, run.cost_bits, run.bound_bits
                ));
            }
            if let Some(expected) = sc.expected_bound {
                if run.cost_bits != expected {
                    correct = false;
                    outcome.problems.push(format!(
                        "{} input {input_id}: cost {} differs from expected bound {expected}",
                        sc.id, run.cost_bits
                    ));
                }
            }
            outcome.rows.push(ReportRow {
                scenario_id: sc.id.clone(),
                function: spec.function().name().to_string(),
                n: spec.n(),
                k: spec.k(),
                d_or_epsilon: parameter(spec.function()),
                blindness: spec.blindness().short_name().to_string(),
                structure_hash: hash.clone(),
                r,
                input_id,
                cost_bits: run.cost_bits,
                bound_bits: run.bound_bits,
                correct,
                max_abs_error: matches!(spec.function(), TargetFunction::Average { .. })
                    .then(|| run.max_abs_error()),
            });
        }
    }
    sort_rows(&mut outcome.rows);
    Ok(outcome)
}

/// The function a protocol is verified against.
pub fn verify_function(protocol: ProtocolKind, d: Option<u32>) -> Result<TargetFunction, CliError> {
    let f = match protocol {
        ProtocolKind::SbGeneric | ProtocolKind::DbGeneric => match d {
            Some(d) => TargetFunction::Constancy { d },
            None => TargetFunction::Parity,
        },
        ProtocolKind::SbConstancy | ProtocolKind::DbConstancy => {
            TargetFunction::Constancy { d: d.unwrap_or(2) }
        }
        ProtocolKind::SbBsf | ProtocolKind::DbBsf => {
            if d.is_some() {
                return Err(CliError::Config(format!("{protocol} takes binary inputs; drop --d")));
            }
            TargetFunction::Bsf
        }
        ProtocolKind::SbAverage => {
            return Err(CliError::Config(
                "sb_average has continuous inputs and cannot be verified exhaustively; use `run` with random inputs".into(),
            ))
        }
    };
    f.validate()?;
    Ok(f)
}

/// Exhaustively verifies `protocol` on every fixture structure with
/// `N ≤ max_n`.
pub fn verify(
    protocol: ProtocolKind,
    max_n: usize,
    d: Option<u32>,
    ceiling: u64,
) -> Result<(String, Status), CliError> {
    let function = verify_function(protocol, d)?;
    let mut text = String::new();
    let mut failed = 0usize;
    let mut structures = 0usize;
    let mut inputs = 0u64;
    for n in 1..=max_n {
        for fixture in fixtures(n) {
            let spec =
                MacroscopeSpec::new(function, fixture.structure, protocol.required_blindness())?;
            let report = exhaustive_verify(&protocol, &spec, ceiling)?;
            structures += 1;
            inputs += report.inputs_checked;
            let verdict = if report.passed() { "ok" } else { "FAIL" };
            writeln!(
                text,
                "{verdict:4} N={n:<2} {:<32} {:<28} inputs={:<6} failures={} cost_mismatches={} cost={}",
                fixture.name,
                spec.structure().to_string().trim_start_matches(&format!("N={n} ")),
                report.inputs_checked,
                report.failures.len(),
                report.cost_violations.len(),
                report.max_cost_bits,
            )
            .expect("writing to a String");
            if let Some(f) = report.failures.first() {
                writeln!(
                    text,
                    "     first failure: input {} player {} got {:?} expected {:?}",
                    display_values(&function, &f.input),
                    f.player + 1,
                    f.got,
                    f.expected
                )
                .expect("writing to a String");
            }
            if !report.passed() {
                failed += 1;
            }
        }
    }
    writeln!(
        text,
        "{protocol} on {function}: {structures} structures, {inputs} inputs, {failed} failing structures"
    )
    .expect("writing to a String");
    let status = if failed == 0 {
        Status::Ok
    } else {
        Status::Incorrect
    };
    Ok((text, status))
}

/// One applicable protocol's formula with the scenario's numbers filled in.
pub fn formula(protocol: ProtocolKind, spec: &MacroscopeSpec) -> Result<String, CliError> {
    let n = spec.n();
    let k = spec.k();
    let f = spec.function();
    let r = spec.structure().intersection_graph().component_count();
    let bits = theoretical_bound(protocol, spec)?;
    let shape = match (protocol, f) {
        (ProtocolKind::SbGeneric, _) => format!("N*w = {n}*{}", value_width(f)?),
        (ProtocolKind::DbGeneric, _) => {
            let w = value_width(f)?;
            let terms: Vec<String> = spec
                .structure()
                .sets()
                .iter()
                .map(|s| format!("({n}+{}*{w})", s.len()))
                .collect();
            format!("sum(N + |S_i|*w) = {}", terms.join(" + "))
        }
        (ProtocolKind::SbConstancy, TargetFunction::Constancy { d }) => {
            format!(
                "r*ceil(log2 D) + k = {r}*{} + {k}",
                ceil_log2(u64::from(*d))
            )
        }
        (ProtocolKind::DbConstancy, TargetFunction::Constancy { d }) => {
            format!("k*ceil(log2(D+1)) = {k}*{}", ceil_log2(u64::from(*d) + 1))
        }
        (ProtocolKind::SbBsf, _) => {
            format!("k*(ceil(log2 N) + 2) = {k}*({}+2)", ceil_log2(n as u64))
        }
        (ProtocolKind::DbBsf, _) => {
            format!("2k*ceil(log2(N+2)) = 2*{k}*{}", ceil_log2(n as u64 + 2))
        }
        (ProtocolKind::SbAverage, TargetFunction::Average { epsilon }) => format!(
            "k*ceil(log2(k/eps)) = {k}*{}",
            macroscope_core::protocols::average::quantizer_width(k, *epsilon)?
        ),
        _ => String::from("?"),
    };
    Ok(format!("{shape} = {bits}"))
}

/// Cost formulas of every protocol applicable to each scenario, under both
/// blindness modes.
pub fn bounds(scenarios: &[Scenario]) -> Result<String, CliError> {
    let mut text = String::new();
    for sc in scenarios {
        let spec = &sc.spec;
        let r = spec.structure().intersection_graph().component_count();
        writeln!(
            text,
            "{}: {} N={} k={} r={} structure {}",
            sc.id,
            spec.function(),
            spec.n(),
            spec.k(),
            r,
            structure_hash(spec.structure())
        )
        .expect("writing to a String");
        for blindness in [Blindness::SingleBlind, Blindness::DoubleBlind] {
            let view = MacroscopeSpec::new(*spec.function(), spec.structure().clone(), blindness)?;
            let protocols = ProtocolKind::applicable(spec.function(), blindness);
            if protocols.is_empty() {
                writeln!(text, "  {blindness:<2} (no protocol)").expect("writing to a String");
            }
            for p in protocols {
                writeln!(
                    text,
                    "  {:<2} {:<13} {}",
                    blindness.short_name(),
                    p.as_str(),
                    formula(p, &view)?
                )
                .expect("writing to a String");
            }
        }
    }
    Ok(text)
}

/// Arguments of the `search` subcommand.
#[derive(Debug, Clone)]
pub struct SearchArgs {
    pub function: String,
    pub d: Option<u32>,
    pub n: usize,
    pub k: usize,
    /// A structure file path or a generator name.
    pub structure: String,
    pub blindness: Blindness,
    pub budget: usize,
    pub seed: Option<u64>,
    pub m: Option<usize>,
    pub density: Option<f64>,
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct StructureFile {
    n: usize,
    #[serde(default)]
    k: Option<usize>,
    sets: Vec<Vec<usize>>,
}

/// Loads `{"n": .., "sets": [[..], ..]}` from a file.
pub fn load_structure_file(path: &Path) -> Result<AllotmentStructure, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    let file: StructureFile = serde_path_to_error::deserialize(de).map_err(|e| {
        CliError::Config(format!(
            "{}: field `{}`: {}",
            path.display(),
            e.path(),
            e.inner()
        ))
    })?;
    let def = StructureDef {
        n: file.n,
        k: file.k,
        sets: Some(file.sets),
        ..StructureDef::default()
    };
    build_structure(&def).map_err(|m| CliError::Config(format!("{}: {m}", path.display())))
}

fn search_structure(args: &SearchArgs) -> Result<AllotmentStructure, CliError> {
    let path = Path::new(&args.structure);
    if path.exists() || args.structure.ends_with(".json") {
        return load_structure_file(path);
    }
    let (n, k) = (args.n, args.k);
    let explicit = |sets: Vec<Vec<usize>>| {
        AllotmentStructure::from_one_based(n, &sets).map_err(CliError::from)
    };
    match args.structure.as_str() {
        "singletons" if n == k => explicit((1..=n).map(|i| vec![i]).collect()),
        "singletons" => Err(CliError::Config(format!(
            "singletons needs n = k, got n={n}, k={k}"
        ))),
        "full" => explicit(vec![(1..=n).collect(); k]),
        name => {
            let def = StructureDef {
                n,
                k: Some(k),
                generator: Some(name.to_string()),
                seed: args.seed,
                m: args.m,
                density: args.density,
                ..StructureDef::default()
            };
            let kind = crate::scenario::structure_kind(name, &def).map_err(CliError::Config)?;
            if matches!(kind, StructureKind::RandomCovering { .. }) && args.seed.is_none() {
                return Err(CliError::Config("random_covering needs --seed".into()));
            }
            build_structure(&def).map_err(CliError::Config)
        }
    }
}

/// Runs the minimum-cost search and renders the result.
pub fn search(args: &SearchArgs, ceiling: u64) -> Result<String, CliError> {
    let def = crate::scenario::FunctionDef {
        name: args.function.clone(),
        d: args.d,
        epsilon: None,
    };
    let function = crate::scenario::parse_function(&def).map_err(CliError::Config)?;
    let structure = search_structure(args)?;
    if structure.n() != args.n || structure.k() != args.k {
        return Err(CliError::Config(format!(
            "structure has n={}, k={} but --n {} --k {} were given",
            structure.n(),
            structure.k(),
            args.n,
            args.k
        )));
    }
    let space = SearchSpace::new(function, structure.clone(), args.blindness, args.budget)?
        .with_ceiling(ceiling);
    let result = min_cost_search(&space)?;

    let mut text = String::new();
    let r = structure.intersection_graph().component_count();
    writeln!(text, "function: {function}").expect("writing to a String");
    writeln!(text, "structure: {structure} (r={r})").expect("writing to a String");
    writeln!(text, "blindness: {}", args.blindness.short_name()).expect("writing to a String");
    match result.min_cost {
        Some(cost) => writeln!(text, "minCost: {cost}"),
        None => writeln!(text, "minCost: none ≤ {}", args.budget),
    }
    .expect("writing to a String");
    writeln!(text, "explored: {}", result.explored).expect("writing to a String");
    if let Some(witness) = &result.witness {
        text.push_str(&render_witness(&function, witness));
        let protocol = WitnessProtocol::new(&space, witness.clone())?;
        let spec = MacroscopeSpec::new(function, structure.clone(), args.blindness)?;
        let report = exhaustive_verify(&protocol, &spec, ceiling)?;
        writeln!(
            text,
            "witness check: {} ({} inputs)",
            if report.passed() { "passes" } else { "FAILS" },
            report.inputs_checked
        )
        .expect("writing to a String");
    }
    if let (TargetFunction::Constancy { d }, Some(cost)) = (function, result.min_cost) {
        let w = ceil_log2(u64::from(d)) as usize;
        let k = structure.k();
        let lower = k.max(r * w);
        let upper = r * w + k;
        writeln!(
            text,
            "sandwich: max(k, r*ceil(log2 D)) = {lower} <= {cost} <= {upper} = r*ceil(log2 D) + k: {}",
            if lower <= cost && cost <= upper { "holds" } else { "violated" }
        )
        .expect("writing to a String");
    }
    Ok(text)
}

/// Message tables, one line per (player, own set).
pub fn render_witness(function: &TargetFunction, witness: &Witness) -> String {
    let alphabet = function.alphabet().unwrap_or(2);
    let mut text = String::new();
    let lengths: Vec<String> = witness.lengths.iter().map(ToString::to_string).collect();
    writeln!(text, "witness: lengths [{}]", lengths.join(", ")).expect("writing to a String");
    for (p, tables) in witness.tables.iter().enumerate() {
        let b = witness.lengths[p] as usize;
        let mut tables: Vec<_> = tables.iter().collect();
        tables.sort_by(|a, b| a.own_set.cmp(&b.own_set));
        for table in tables {
            let set: Vec<String> = table.own_set.iter().map(|i| (i + 1).to_string()).collect();
            let entries: Vec<String> = DiscreteInputs::new(table.own_set.len(), alphabet)
                .zip(&table.labels)
                .map(|(values, &label)| {
                    let label = if b == 0 {
                        "-".to_string()
                    } else {
                        format!("{label:0b$b}")
                    };
                    format!("{}->{label}", display_values(function, &values))
                })
                .collect();
            writeln!(
                text,
                "  P{} {{{}}}: {}",
                p + 1,
                set.join(","),
                entries.join(" ")
            )
            .expect("writing to a String");
        }
    }
    text
}
