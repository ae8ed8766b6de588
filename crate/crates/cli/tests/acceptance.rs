//! Acceptance suite. Prints one line per criterion and exits non-zero if an
//! attainable criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use macroscope_cli::fixtures::{fixtures, fixtures_up_to};
use macroscope_core::protocols::average::{contribution, dequantize};
use macroscope_core::search::WitnessProtocol;
use macroscope_core::{
    decode_uint, exhaustive_verify, generate_structure, make_views, min_cost_search, run_protocol,
    AllotmentStructure, Blindness, InputVector, MacroscopeSpec, Output, Protocol, ProtocolKind,
    SearchSpace, StructureKind, TargetFunction, DEFAULT_CEILING,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BINARY_MAX_N: usize = 10;
const CONSTANCY_MAX_N: usize = 6;
const CONSTANCY_DS: [u32; 3] = [2, 3, 4];
const CRITERION_1_LIMIT: Duration = Duration::from_secs(60);
const AVERAGE_KS: [usize; 3] = [2, 4, 8];
const AVERAGE_EPSILONS: [f64; 3] = [0.5, 0.1, 0.01];
const AVERAGE_MAX_N: usize = 32;
const AVERAGE_SAMPLES: usize = 10_000;
const CRITERION_3_LIMIT: Duration = Duration::from_secs(30);
const SEARCH_LIMIT: Duration = Duration::from_secs(600);
const INVARIANCE_PAIRS: u64 = 100;

#[derive(Clone, Copy, PartialEq)]
enum Verdict {
    Pass,
    Fail,
    /// Fails as stated, with the reason established by the suite itself.
    Unattainable,
}

struct Line {
    id: &'static str,
    title: &'static str,
    verdict: Verdict,
    detail: String,
}

fn line(id: &'static str, title: &'static str, ok: bool, detail: String) -> Line {
    Line {
        id,
        title,
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        detail,
    }
}

/// `N`, `r·⌈log2 D⌉ + k`, ... written out independently of the library.
fn expected_cost(p: ProtocolKind, spec: &MacroscopeSpec) -> usize {
    let n = spec.n();
    let k = spec.k();
    let r = spec.structure().intersection_graph().component_count();
    let log2_ceil = |q: usize| (0..).find(|&b| 1usize << b >= q).unwrap();
    let d = match spec.function() {
        TargetFunction::Constancy { d } => *d as usize,
        _ => 2,
    };
    match p {
        ProtocolKind::SbGeneric => n * log2_ceil(d),
        ProtocolKind::DbGeneric => spec
            .structure()
            .sets()
            .iter()
            .map(|s| n + s.len() * log2_ceil(d))
            .sum(),
        ProtocolKind::SbConstancy => r * log2_ceil(d) + k,
        ProtocolKind::DbConstancy => k * log2_ceil(d + 1),
        ProtocolKind::SbBsf => k * (log2_ceil(n) + 2),
        ProtocolKind::DbBsf => 2 * k * log2_ceil(n + 2),
        ProtocolKind::SbAverage => unreachable!("continuous"),
    }
}

fn criteria_1_and_2() -> (Line, Line) {
    let start = Instant::now();
    let mut structures = 0usize;
    let mut runs = 0u64;
    let mut failures = 0usize;
    let mut cost_errors = Vec::new();
    let mut db_generic_over = 0usize;
    let mut seen = std::collections::BTreeSet::new();

    let mut jobs: Vec<(TargetFunction, usize)> = vec![
        (TargetFunction::Parity, BINARY_MAX_N),
        (TargetFunction::Bsf, BINARY_MAX_N),
    ];
    jobs.extend(CONSTANCY_DS.map(|d| (TargetFunction::Constancy { d }, CONSTANCY_MAX_N)));
    for (f, max_n) in jobs {
        for fixture in fixtures_up_to(max_n) {
            seen.insert(fixture.structure.to_string());
            for p in ProtocolKind::ALL.into_iter().filter(|p| p.accepts(&f)) {
                let spec =
                    MacroscopeSpec::new(f, fixture.structure.clone(), p.required_blindness())
                        .expect("fixtures are valid");
                let report = exhaustive_verify(&p, &spec, DEFAULT_CEILING).expect("within ceiling");
                structures += 1;
                runs += report.inputs_checked;
                failures += report.failures.len();
                let expected = expected_cost(p, &spec);
                if !report.cost_violations.is_empty() || report.max_cost_bits != expected {
                    cost_errors.push(format!("{p} {f} {}", spec.structure()));
                }
                let n = spec.n();
                let k = spec.k();
                if p == ProtocolKind::DbGeneric
                    && f.alphabet() == Some(2)
                    && report.max_cost_bits > 2 * n * k
                {
                    db_generic_over += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let one = line(
        "1",
        "exhaustive correctness",
        failures == 0 && seen.len() >= 20 && elapsed < CRITERION_1_LIMIT,
        format!(
            "{} distinct structures, {structures} (protocol, function, structure) triples, {runs} runs, {failures} wrong outputs, {:.1?} (limit {:?})",
            seen.len(),
            elapsed,
            CRITERION_1_LIMIT
        ),
    );
    let two =
        line(
            "2",
            "cost exactness",
            cost_errors.is_empty() && db_generic_over == 0,
            format!(
            "{} triples off their formula, {db_generic_over} binary db_generic runs above 2Nk{}",
            cost_errors.len(),
            cost_errors.first().map(|e| format!("; first: {e}")).unwrap_or_default()
        ),
        );
    (one, two)
}

/// `⌈log2(k/ε)⌉` for the grid, computed by hand.
fn pinned_width(k: usize, epsilon: f64) -> u32 {
    let row = match k {
        2 => [2, 5, 8],
        4 => [3, 6, 9],
        8 => [4, 7, 10],
        _ => unreachable!(),
    };
    let col = [0.5, 0.1, 0.01].iter().position(|&e| e == epsilon).unwrap();
    row[col]
}

fn criterion_3() -> Line {
    let start = Instant::now();
    let mut runs = 0usize;
    let mut output_errors = 0usize;
    let mut term_errors = 0usize;
    let mut cost_errors = 0usize;
    let mut worst_term = 0.0f64;
    for k in AVERAGE_KS {
        let mut structures: Vec<AllotmentStructure> = Vec::new();
        for n in k..=AVERAGE_MAX_N {
            structures.push(generate_structure(&StructureKind::Partition, n, k, 0).unwrap());
            structures.push(generate_structure(&StructureKind::Nof, n, k, 0).unwrap());
            let kind = StructureKind::RandomCovering { density: 0.25 };
            structures.push(generate_structure(&kind, n, k, (n * 31 + k) as u64).unwrap());
        }
        for epsilon in AVERAGE_EPSILONS {
            let f = TargetFunction::Average { epsilon };
            let width = pinned_width(k, epsilon);
            let mut rng = ChaCha8Rng::seed_from_u64(k as u64 * 1000 + (epsilon * 1000.0) as u64);
            let mut inputs: Vec<(usize, Vec<f64>)> = Vec::new();
            for (i, s) in structures.iter().enumerate() {
                let n = s.n();
                inputs.push((i, vec![0.0; n]));
                inputs.push((i, vec![1.0; n]));
                inputs.push((i, (0..n).map(|j| (j % 2) as f64).collect()));
            }
            for _ in 0..AVERAGE_SAMPLES {
                let i = rng.gen_range(0..structures.len());
                let n = structures[i].n();
                inputs.push((i, (0..n).map(|_| rng.gen::<f64>()).collect()));
            }
            for (i, xs) in inputs {
                let spec =
                    MacroscopeSpec::new(f, structures[i].clone(), Blindness::SingleBlind).unwrap();
                let run = run_protocol(
                    &ProtocolKind::SbAverage,
                    &spec,
                    &InputVector::real(xs.clone()).unwrap(),
                )
                .unwrap();
                runs += 1;
                let mean = xs.iter().sum::<f64>() / xs.len() as f64;
                if run.outputs.iter().any(|o| match o {
                    Output::Real(v) => (v - mean).abs() > epsilon,
                    Output::Bit(_) => true,
                }) {
                    output_errors += 1;
                }
                if run.cost_bits != k * width as usize {
                    cost_errors += 1;
                }
                for p in 0..k {
                    let own: Vec<f64> = spec.structure().set(p).iter().map(|&j| xs[j]).collect();
                    let share = contribution(spec.structure(), p, &own);
                    let q = decode_uint(run.blackboard.message(p), width).unwrap();
                    let err = (dequantize(q, width) - share).abs();
                    worst_term = worst_term.max(err * k as f64 / epsilon);
                    if err > epsilon / k as f64 {
                        term_errors += 1;
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    line(
        "3",
        "averaging",
        output_errors + term_errors + cost_errors == 0 && elapsed < CRITERION_3_LIMIT,
        format!(
            "{runs} runs, {output_errors} outputs beyond eps, {term_errors} terms beyond eps/k (worst {worst_term:.3} of eps/k), {cost_errors} costs off k*ceil(log2(k/eps)), {elapsed:.1?} (limit {CRITERION_3_LIMIT:?})"
        ),
    )
}

fn singletons(n: usize) -> AllotmentStructure {
    AllotmentStructure::from_one_based(n, &(1..=n).map(|i| vec![i]).collect::<Vec<_>>()).unwrap()
}

/// Every covering structure on `n` positions for `k` players with
/// non-empty sets.
fn all_structures(n: usize, k: usize) -> Vec<AllotmentStructure> {
    let subsets: Vec<Vec<usize>> = (1u32..1 << n)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; k];
    loop {
        let sets = choice.iter().map(|&c| subsets[c].clone()).collect();
        let s = AllotmentStructure::new(n, sets).unwrap();
        if s.is_covering() {
            out.push(s);
        }
        let mut p = k;
        loop {
            if p == 0 {
                return out;
            }
            p -= 1;
            choice[p] += 1;
            if choice[p] < subsets.len() {
                break;
            }
            choice[p] = 0;
        }
    }
}

fn criterion_4() -> Vec<Line> {
    let start = Instant::now();
    let parity = |n: usize| {
        let space = SearchSpace::new(
            TargetFunction::Parity,
            singletons(n),
            Blindness::SingleBlind,
            n + 2,
        )
        .unwrap();
        min_cost_search(&space).unwrap().min_cost
    };
    let (p2, p3) = (parity(2), parity(3));
    let mut lines = vec![line(
        "4a",
        "search: Parity on singletons",
        p2 == Some(2) && p3 == Some(3),
        format!("minCost {p2:?} for N=k=2 (want 2), {p3:?} for N=k=3 (want 3)"),
    )];

    let f = TargetFunction::Constancy { d: 2 };
    let mut instances = 0usize;
    let mut below_lower = Vec::new();
    let mut above_upper = 0usize;
    let mut corrected_misses = 0usize;
    let mut unverified = 0usize;
    for n in 1..=3 {
        for k in 1..=3 {
            for s in all_structures(n, k) {
                instances += 1;
                let r = s.intersection_graph().component_count();
                let (lower, upper) = (k.max(r), r + k);
                let space =
                    SearchSpace::new(f, s.clone(), Blindness::SingleBlind, upper + 1).unwrap();
                let result = min_cost_search(&space).unwrap();
                let Some(cost) = result.min_cost else {
                    above_upper += 1;
                    continue;
                };
                if cost > upper {
                    above_upper += 1;
                }
                // r components must each speak when r ≥ 2; with one component
                // someone must speak unless every player sees everything
                let partial = s.sets().iter().any(|set| set.len() < n);
                let corrected = if r >= 2 { r } else { usize::from(partial) };
                if cost < corrected {
                    corrected_misses += 1;
                }
                if cost < lower {
                    let protocol =
                        WitnessProtocol::new(&space, result.witness.clone().unwrap()).unwrap();
                    let spec = MacroscopeSpec::new(f, s.clone(), Blindness::SingleBlind).unwrap();
                    if !exhaustive_verify(&protocol, &spec, DEFAULT_CEILING)
                        .unwrap()
                        .passed()
                    {
                        unverified += 1;
                    }
                    below_lower.push(format!("{s} costs {cost} < {lower}"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let in_time = elapsed < SEARCH_LIMIT;
    lines.push(line(
        "4b",
        "search: Constancy upper bound r*ceil(log2 D)+k",
        above_upper == 0 && in_time,
        format!("{instances} single-blind instances with N,k <= 3, D = 2; {above_upper} above; {elapsed:.1?} total"),
    ));
    lines.push(Line {
        id: "4c",
        title: "search: Constancy lower bound max(k, r*ceil(log2 D))",
        verdict: if below_lower.is_empty() {
            Verdict::Pass
        } else if unverified == 0 && corrected_misses == 0 {
            Verdict::Unattainable
        } else {
            Verdict::Fail
        },
        detail: format!(
            "{} of {instances} instances cost less, each witnessed by a protocol that passes exhaustive verification ({unverified} did not), e.g. {}; the bound 'r if r >= 2, else 1 unless every player sees all inputs' holds on all but {corrected_misses}",
            below_lower.len(),
            below_lower
                .iter()
                .find(|e| !e.contains("costs 0"))
                .cloned()
                .unwrap_or_default()
        ),
    });
    lines
}

fn criterion_5() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut compared = 0usize;
    let mut mismatches = 0usize;
    for _ in 0..INVARIANCE_PAIRS {
        let n = rng.gen_range(2..=10);
        let k = rng.gen_range(2..=5);
        let kind = StructureKind::RandomCovering { density: 0.35 };
        let a = generate_structure(&kind, n, k, rng.gen()).unwrap();
        let player = rng.gen_range(0..k);
        // same own set for `player`, fresh sets for everyone else
        let b = loop {
            let other = generate_structure(&kind, n, k, rng.gen()).unwrap();
            let mut sets = other.sets().to_vec();
            sets[player] = a.set(player).to_vec();
            let b = AllotmentStructure::new(n, sets).unwrap();
            if b != a && b.is_covering() {
                break b;
            }
        };
        for f in [
            TargetFunction::Parity,
            TargetFunction::Bsf,
            TargetFunction::Constancy { d: 3 },
        ] {
            let d = f.alphabet().unwrap();
            let xa: Vec<u32> = (0..n).map(|_| rng.gen_range(0..d)).collect();
            let mut xb: Vec<u32> = (0..n).map(|_| rng.gen_range(0..d)).collect();
            for &i in a.set(player) {
                xb[i] = xa[i];
            }
            let sa = MacroscopeSpec::new(f, a.clone(), Blindness::DoubleBlind).unwrap();
            let sb = MacroscopeSpec::new(f, b.clone(), Blindness::DoubleBlind).unwrap();
            let ia = sa.discrete_input(xa).unwrap();
            let ib = sb.discrete_input(xb).unwrap();
            for p in ProtocolKind::applicable(&f, Blindness::DoubleBlind) {
                let ma = p.encode(&make_views(&sa, &ia).unwrap()[player]).unwrap();
                let mb = p.encode(&make_views(&sb, &ib).unwrap()[player]).unwrap();
                compared += 1;
                if ma != mb {
                    mismatches += 1;
                }
            }
        }
    }
    line(
        "5",
        "double-blind invariance",
        mismatches == 0,
        format!(
            "{INVARIANCE_PAIRS} seeded pairs, {compared} message comparisons, {mismatches} differ"
        ),
    )
}

fn criterion_6() -> Line {
    let bin = env!("CARGO_BIN_EXE_macroscope");
    let dir = tempfile::tempdir().unwrap();
    let scenarios = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios");
    let mut checked = 0usize;
    let mut differing = Vec::new();
    for name in ["mixed.json", "average_random.json", "constancy_chain.json"] {
        for format in ["csv", "json"] {
            let mut outputs = Vec::new();
            for attempt in 0..2 {
                let out = dir.path().join(format!("{name}.{attempt}.{format}"));
                let status = Command::new(bin)
                    .args([
                        "run",
                        "--scenario",
                        &format!("{scenarios}/{name}"),
                        "--format",
                        format,
                        "--out",
                    ])
                    .arg(&out)
                    .status()
                    .unwrap();
                assert!(status.success(), "{name} run failed");
                outputs.push(std::fs::read(&out).unwrap());
            }
            checked += 1;
            if outputs[0] != outputs[1] || outputs[0].is_empty() {
                differing.push(format!("{name} ({format})"));
            }
        }
    }
    line(
        "6",
        "run determinism",
        differing.is_empty(),
        format!(
            "{checked} report pairs compared byte for byte, {} differ {:?}",
            differing.len(),
            differing
        ),
    )
}

fn main() -> ExitCode {
    // make sure the fixture set itself is what the criteria assume
    assert!(fixtures(10).len() >= 5);
    let (one, two) = criteria_1_and_2();
    let mut lines = vec![one, two, criterion_3()];
    lines.extend(criterion_4());
    lines.push(criterion_5());
    lines.push(criterion_6());

    println!();
    println!("acceptance criteria");
    for l in &lines {
        let tag = match l.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Unattainable => "FAIL (unattainable as stated)",
        };
        println!("  [{tag}] criterion {} {}: {}", l.id, l.title, l.detail);
    }
    let failed = lines.iter().filter(|l| l.verdict == Verdict::Fail).count();
    let unattainable = lines
        .iter()
        .filter(|l| l.verdict == Verdict::Unattainable)
        .count();
    println!(
        "  {} passed, {failed} failed, {unattainable} unattainable as stated",
        lines.len() - failed - unattainable
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
