//! Named structures used by `verify` and the test suites.

use macroscope_core::{generate_structure, AllotmentStructure, StructureKind};

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub structure: AllotmentStructure,
}

fn fixture(name: String, structure: AllotmentStructure) -> Fixture {
    Fixture { name, structure }
}

fn generated(kind: StructureKind, n: usize, k: usize, seed: u64) -> Option<Fixture> {
    let s = generate_structure(&kind, n, k, seed).ok()?;
    let name = match &kind {
        StructureKind::RandomCovering { density } => {
            format!("random_covering(k={k},p={density},seed={seed})")
        }
        StructureKind::EvenCyclic { set_size, .. } => format!("even_cyclic(k={k},m={set_size})"),
        other => format!("{}(k={k})", other.name()),
    };
    Some(fixture(name, s))
}

/// Fixture structures on `n` positions: partitions (including the disjoint
/// singletons), number-on-forehead, even cyclic windows, a chain of
/// overlapping pairs, full overlap and two seeded random coverings.
pub fn fixtures(n: usize) -> Vec<Fixture> {
    let mut out: Vec<Fixture> = Vec::new();
    let mut push = |f: Option<Fixture>| {
        if let Some(f) = f {
            if !out.iter().any(|g| g.structure == f.structure) {
                out.push(f);
            }
        }
    };
    push(generated(StructureKind::Partition, n, 1, 0));
    push(generated(StructureKind::Partition, n, 2, 0));
    push(
        generated(StructureKind::Partition, n, n, 0).map(|f| Fixture {
            name: format!("disjoint(k={n})"),
            ..f
        }),
    );
    push(generated(StructureKind::Nof, n, 3, 0));
    if n >= 2 {
        let kind = StructureKind::EvenCyclic {
            set_size: 2,
            stride: None,
        };
        push(generated(kind, n, n, 0));
        let chain: Vec<Vec<usize>> = (1..n).map(|i| vec![i, i + 1]).collect();
        let s = AllotmentStructure::from_one_based(n, &chain).ok();
        push(s.map(|s| fixture(format!("chain(k={})", n - 1), s)));
    }
    let full: Vec<Vec<usize>> = vec![(1..=n).collect(); 3];
    push(
        AllotmentStructure::from_one_based(n, &full)
            .ok()
            .map(|s| fixture("full_overlap(k=3)".into(), s)),
    );
    push(generated(
        StructureKind::RandomCovering { density: 0.3 },
        n,
        3,
        n as u64,
    ));
    push(generated(
        StructureKind::RandomCovering { density: 0.5 },
        n,
        4,
        100 + n as u64,
    ));
    out
}

/// Every fixture for `n` in `1..=max_n`.
pub fn fixtures_up_to(max_n: usize) -> Vec<Fixture> {
    (1..=max_n).flat_map(fixtures).collect()
}
