use std::collections::{BTreeMap, BTreeSet};

use crossed_core::analysis::{self, CommutantConstraints};
use crossed_core::catalog::{self, CatalogEntry};
use crossed_core::ideal;
use crossed_core::{AlgebraError, CrossedElem, RingElem};

fn entries() -> Vec<CatalogEntry> {
    catalog::standard_entries().expect("catalog builds")
}

#[test]
fn every_entry_validates() {
    for entry in entries() {
        let report = entry.system.verify().unwrap();
        assert!(report.is_valid(), "{}: {report}", entry.label());
    }
}

#[test]
fn corrupted_systems_fail_with_their_witness() {
    let corpus = catalog::corrupted_entries().unwrap();
    assert!(corpus.len() >= 5);
    for bad in corpus {
        let report = bad.system.verify().unwrap();
        assert!(!report.is_valid(), "{} validated", bad.name);
        assert!(report.violated().contains(&bad.condition), "{}: {report}", bad.name);
        let witnesses = report.witnesses(bad.condition);
        assert!(
            witnesses.iter().any(|w| w.contains(bad.witness)),
            "{}: no witness containing {:?} in {witnesses:?}",
            bad.name,
            bad.witness
        );
    }
}

#[test]
fn maximality_annotations_match_the_analysis() {
    for entry in entries() {
        let Some(expected) = entry.expected.maximal_commutative else { continue };
        let verdict = analysis::is_maximal_commutative(&entry.system).unwrap();
        assert_eq!(verdict.maximal, expected, "{}", entry.label());
        if let Some(w) = &entry.expected.maximal_witness {
            assert_eq!(verdict.witness.as_ref(), Some(w), "{}", entry.label());
        }
    }
}

#[test]
fn truncated_torus_witness_is_x_squared_in_degree_one() {
    let entry = catalog::truncated_quantum_torus(3, 2, 3, 2).unwrap();
    let (g, r) = analysis::is_maximal_commutative(&entry.system).unwrap().witness.unwrap();
    assert_eq!((g.to_string(), r.to_string()), ("1".to_string(), "x^2".to_string()));
}

#[test]
fn commutativity_annotations_match_brute_force() {
    for entry in entries() {
        let Some(expected) = entry.expected.commutative else { continue };
        let verdict = analysis::is_commutative(&entry.system).unwrap();
        assert_eq!(verdict.commutative, expected, "{}", entry.label());
        if entry.system.is_finite() {
            assert_eq!(analysis::is_commutative_bruteforce(&entry.system).unwrap(), expected, "{}", entry.label());
        }
    }
}

#[test]
fn whole_commutant_annotations() {
    for entry in entries() {
        let Some(whole) = entry.expected.commutant_is_whole else { continue };
        let CommutantConstraints::Finite(m) = analysis::commutant_constraints(&entry.system).unwrap() else {
            panic!("{} has a finite commutant description", entry.label())
        };
        let size = entry.system.ring().size().unwrap() as usize;
        assert_eq!(m.values().all(|r| r.len() == size), whole, "{}", entry.label());
    }
}

#[test]
fn lifted_chain_is_strictly_decreasing() {
    let entry = catalog::truncated_quantum_torus(3, 2, 3, 2).unwrap();
    let chain = &entry.expected.ideal_chain;
    assert_eq!(chain.len(), 2);
    let mut previous: Option<BTreeSet<CrossedElem>> = None;
    for ideal_set in chain {
        let lifted = ideal::lift_ideal(&entry.system, ideal_set).unwrap();
        assert!(lifted.right_ideal && lifted.two_sided);
        let set: BTreeSet<CrossedElem> = lifted.elements.into_iter().collect();
        if let Some(prev) = &previous {
            assert!(set.is_subset(prev) && set.len() < prev.len());
        }
        previous = Some(set);
    }
    assert!(previous.unwrap().len() > 1);
}

#[test]
fn obstruction_annotations() {
    let f3 = catalog::truncated_quantum_torus(3, 2, 3, 2).unwrap();
    let (c, d, g) = f3.expected.obstruction.clone().unwrap();
    assert_eq!((c.to_string(), d.to_string(), g.to_string()), ("x^2".into(), "x".into(), "1".into()));
    let f5 = catalog::truncated_quantum_torus(5, 2, 3, 4).unwrap();
    assert!(f5.expected.obstruction.is_none());
    assert!(f5.system.verify().unwrap().is_valid());
}

#[test]
fn separation_sets_agree_with_commutant_degrees() {
    for perm in [vec![1, 2, 0], vec![0, 1], vec![1, 0, 2]] {
        let entry = catalog::function_dynamics(2, &perm).unwrap();
        let CommutantConstraints::Finite(m) = analysis::commutant_constraints(&entry.system).unwrap() else { panic!() };
        let ring = entry.system.ring();
        for (n, sep) in &entry.expected.separation_sets {
            let s = entry.system.group().parse(&n.to_string()).unwrap();
            let vanishing: BTreeSet<RingElem> = ring
                .elements()
                .unwrap()
                .into_iter()
                .filter(|f| sep.iter().all(|&x| f.coeffs().unwrap()[x] == 0))
                .collect();
            assert_eq!(&vanishing, &m[&s], "perm {perm:?}, n = {n}");
        }
    }
    let transposition = catalog::function_dynamics(2, &[1, 0, 2]).unwrap();
    assert_eq!(transposition.expected.separation_sets, vec![(1, BTreeSet::from([0, 1]))]);
    let (_, r) = analysis::is_maximal_commutative(&transposition.system).unwrap().witness.unwrap();
    assert_eq!(r.to_string(), "e2");
}

#[test]
fn rejected_parameters() {
    assert!(catalog::truncated_quantum_torus(3, 1, 2, 1).is_err());
    assert!(catalog::truncated_quantum_torus(3, 2, 3, 3).is_err());
    assert!(catalog::truncated_quantum_torus(4, 3, 3, 2).is_err());
    for q in ["1", "0", "3/0", "two"] {
        let params: BTreeMap<String, String> = [("q".to_string(), q.to_string())].into();
        assert!(catalog::build("rational_quantum_torus", &params).is_err(), "q = {q}");
    }
    assert!(catalog::function_dynamics(2, &[0, 0, 1]).is_err());
    assert!(catalog::symmetric_action(3, 4, 2).is_err());
    assert!(catalog::group_ring(3, "Q8").is_err());
}

#[test]
fn build_by_name() {
    let params: BTreeMap<String, String> =
        [("p", "3"), ("q", "2"), ("m", "3"), ("k", "2")].iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    let entry = catalog::build("truncated_quantum_torus", &params).unwrap();
    assert_eq!(entry.label(), "truncated_quantum_torus(k=2, m=3, p=3, q=2)");
    let q: BTreeMap<String, String> = [("q".to_string(), "-1".to_string())].into();
    assert!(!analysis::is_maximal_commutative(&catalog::build("rational_quantum_torus", &q).unwrap().system).unwrap().maximal);
    assert!(matches!(catalog::build("nonexistent", &BTreeMap::new()), Err(AlgebraError::InvalidParameter(_))));
    let extra: BTreeMap<String, String> = [("z".to_string(), "1".to_string())].into();
    assert!(catalog::build("matrix_twisted", &extra).is_err());
    assert!(catalog::build("matrix_twisted", &BTreeMap::new()).is_ok());
}

#[test]
fn symmetric_action_swap_is_faithful() {
    let entry = catalog::symmetric_action(3, 2, 2).unwrap();
    let sys = &entry.system;
    assert_eq!(sys.ring().size(), Some(27));
    let swap = sys.group().parse("(12)").unwrap();
    let x1 = sys.ring().parse("x1").unwrap();
    assert_eq!(sys.sigma(&swap).unwrap().apply(&x1).unwrap().to_string(), "x2");
    assert!(sys.sigma_kernel().unwrap().is_trivial());
    assert!(sys.sigma(&sys.group().identity()).unwrap().is_identity());
}
