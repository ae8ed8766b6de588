use macroscope_core::{
    eval_average, generate_structure, run_protocol, AllotmentStructure, Blindness, InputVector,
    MacroscopeSpec, Output, ProtocolKind, StructureKind, TargetFunction,
};
use proptest::prelude::*;

fn kinds() -> impl Strategy<Value = StructureKind> {
    prop_oneof![
        Just(StructureKind::Partition),
        Just(StructureKind::Nof),
        (0.05f64..0.9).prop_map(|density| StructureKind::RandomCovering { density }),
    ]
}

proptest! {
    #[test]
    fn generated_structures_cover(kind in kinds(), n in 2usize..40, k in 2usize..9, seed in any::<u64>()) {
        prop_assume!(k <= n);
        let s = generate_structure(&kind, n, k, seed).unwrap();
        prop_assert_eq!(s.n(), n);
        prop_assert_eq!(s.k(), k);
        prop_assert!(s.is_covering());
        prop_assert!(s.sets().iter().all(|set| !set.is_empty()));
        let again = generate_structure(&kind, n, k, seed).unwrap();
        prop_assert_eq!(again, s);
    }

    #[test]
    fn multiplicities_sum_to_set_sizes(n in 1usize..30, k in 1usize..8, seed in any::<u64>()) {
        let s = generate_structure(&StructureKind::RandomCovering { density: 0.3 }, n, k, seed).unwrap();
        let total: usize = s.multiplicities().iter().sum();
        prop_assert_eq!(total, s.sets().iter().map(Vec::len).sum::<usize>());
        if let Some(c) = s.evenness() {
            prop_assert!(s.sets().iter().all(|set| set.len() * k == n * c));
        }
    }

    #[test]
    fn components_partition_the_players(n in 1usize..20, k in 1usize..10, seed in any::<u64>()) {
        let s = generate_structure(&StructureKind::RandomCovering { density: 0.15 }, n, k, seed).unwrap();
        let g = s.intersection_graph();
        let mut seen: Vec<usize> = g.components().iter().flatten().copied().collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..k).collect::<Vec<_>>());
        for a in 0..k {
            for b in 0..k {
                let meet = s.set(a).iter().any(|i| s.set(b).contains(i));
                if meet {
                    prop_assert_eq!(g.component_of(a), g.component_of(b));
                }
            }
        }
    }

    #[test]
    fn averaging_error_within_epsilon(
        xs in proptest::collection::vec(0.0f64..=1.0, 1..33),
        k in 1usize..9,
        seed in any::<u64>(),
        eps_index in 0usize..3,
    ) {
        let epsilon = [0.5, 0.1, 0.01][eps_index];
        let n = xs.len();
        let s = generate_structure(&StructureKind::RandomCovering { density: 0.3 }, n, k, seed).unwrap();
        let spec = MacroscopeSpec::new(TargetFunction::Average { epsilon }, s, Blindness::SingleBlind).unwrap();
        let run = run_protocol(&ProtocolKind::SbAverage, &spec, &InputVector::real(xs.clone()).unwrap()).unwrap();
        prop_assert!(run.correct);
        let mean = eval_average(&xs);
        for o in &run.outputs {
            let Output::Real(v) = o else { panic!("real output expected") };
            prop_assert!((v - mean).abs() <= epsilon);
        }
        prop_assert_eq!(run.cost_bits, run.bound_bits);
    }
}

#[test]
fn uncovered_structures_are_rejected() {
    let s = AllotmentStructure::from_one_based(3, &[vec![1], vec![3]]).unwrap();
    let err = MacroscopeSpec::new(TargetFunction::Parity, s, Blindness::SingleBlind).unwrap_err();
    assert!(err.to_string().contains('2'), "{err}");
}
