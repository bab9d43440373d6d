use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crossed_core::analysis;
use crossed_core::catalog;
use crossed_core::{CrossedElem, CrossedSystem, RingElem, SigmaKernel};

fn finite_systems() -> Vec<(String, Arc<CrossedSystem>)> {
    catalog::standard_entries()
        .unwrap()
        .into_iter()
        .filter(|e| e.system.is_finite())
        .map(|e| (e.label(), e.system))
        .collect()
}

fn small_systems() -> Vec<(String, Arc<CrossedSystem>)> {
    finite_systems()
        .into_iter()
        .filter(|(_, s)| {
            let (r, g) = (s.ring().size().unwrap(), s.group().order().unwrap());
            (r as f64).powi(g as i32) <= 729.0
        })
        .collect()
}

fn random_elem(sys: &Arc<CrossedSystem>, ring: &[RingElem], rng: &mut StdRng) -> CrossedElem {
    let terms: Vec<_> = sys
        .group()
        .elements()
        .unwrap()
        .into_iter()
        .map(|g| (ring[rng.gen_range(0..ring.len())].clone(), g))
        .collect();
    CrossedElem::from_terms(sys, &terms).unwrap()
}

#[test]
fn random_triples_associate_and_distribute() {
    let mut rng = StdRng::seed_from_u64(7);
    for (name, sys) in finite_systems() {
        let ring = sys.ring().elements().unwrap();
        for _ in 0..1000 {
            let (u, v, w) = (random_elem(&sys, &ring, &mut rng), random_elem(&sys, &ring, &mut rng), random_elem(&sys, &ring, &mut rng));
            let uv = u.mul(&v).unwrap();
            assert_eq!(uv.mul(&w).unwrap(), u.mul(&v.mul(&w).unwrap()).unwrap(), "{name}: ({u})({v})({w})");
            assert_eq!(u.mul(&v.add(&w).unwrap()).unwrap(), uv.add(&u.mul(&w).unwrap()).unwrap(), "{name}");
            assert_eq!(u.add(&v).unwrap().mul(&w).unwrap(), u.mul(&w).unwrap().add(&v.mul(&w).unwrap()).unwrap(), "{name}");
            assert_eq!(u.commutes(&v).unwrap(), u.commutes_per_degree(&v).unwrap(), "{name}");
        }
        let one = CrossedElem::one(&sys);
        let u = random_elem(&sys, &ring, &mut rng);
        assert_eq!(one.mul(&u).unwrap(), u);
        assert_eq!(u.mul(&one).unwrap(), u);
    }
}

/// Associativity is trilinear, so homogeneous triples over every ring element settle it.
#[test]
fn homogeneous_triples_associate_exhaustively() {
    for (name, sys) in small_systems() {
        let ring = sys.ring().elements().unwrap();
        let mut singles = Vec::new();
        for g in sys.group().elements().unwrap() {
            for a in &ring {
                singles.push(CrossedElem::monomial(&sys, a, &g).unwrap());
            }
        }
        for u in &singles {
            for v in &singles {
                let uv = u.mul(v).unwrap();
                for w in &singles {
                    assert_eq!(uv.mul(w).unwrap(), u.mul(&v.mul(w).unwrap()).unwrap(), "{name}");
                }
            }
        }
    }
}

#[test]
fn all_triples_associate_on_the_smallest_systems() {
    for (name, sys) in small_systems() {
        let all = CrossedElem::enumerate(&sys).unwrap();
        if all.len() > 25 {
            continue;
        }
        for u in &all {
            for v in &all {
                let uv = u.mul(v).unwrap();
                for w in &all {
                    assert_eq!(uv.mul(w).unwrap(), u.mul(&v.mul(w).unwrap()).unwrap(), "{name}");
                }
            }
        }
    }
}

#[test]
fn units_and_zero_divisors_partition_finite_commutative_rings() {
    for (name, sys) in finite_systems() {
        let ring = sys.ring();
        if !ring.is_commutative() {
            continue;
        }
        let zd = ring.zero_divisor_set().unwrap();
        for a in ring.elements().unwrap() {
            assert!(ring.is_unit(&a).unwrap() ^ zd.contains(&a), "{name}: {a}");
        }
    }
}

#[test]
fn fixed_ring_is_a_unital_subring() {
    for (name, sys) in finite_systems() {
        let fixed = sys.fixed_ring().unwrap();
        let ring = sys.ring();
        assert!(fixed.contains(&ring.zero()) && fixed.contains(&ring.one()), "{name}");
        for a in &fixed {
            for b in &fixed {
                assert!(fixed.contains(&a.add(b).unwrap()) && fixed.contains(&a.mul(b).unwrap()), "{name}");
            }
        }
    }
}

#[test]
fn sigma_kernel_is_normal_for_homomorphisms() {
    for (name, sys) in finite_systems() {
        if !sys.sigma_is_homomorphism().unwrap() {
            continue;
        }
        let SigmaKernel::Finite(k) = sys.sigma_kernel().unwrap() else { panic!("{name}") };
        assert!(sys.group().is_subgroup(&k).unwrap() && sys.group().is_normal(&k).unwrap(), "{name}");
    }
}

#[test]
fn center_and_commutant_match_brute_force() {
    for (name, sys) in small_systems() {
        let center: BTreeSet<_> = analysis::center_compute(&sys).unwrap().into_iter().collect();
        let brute: BTreeSet<_> = analysis::center_bruteforce(&sys).unwrap().into_iter().collect();
        assert_eq!(center, brute, "center of {name}");
        let comm: BTreeSet<_> = analysis::commutant_elements(&sys).unwrap().into_iter().collect();
        let brute: BTreeSet<_> = analysis::commutant_bruteforce(&sys).unwrap().into_iter().collect();
        assert_eq!(comm, brute, "commutant of {name}");
    }
}

#[test]
fn membership_tests_match_brute_force_on_random_elements() {
    let mut rng = StdRng::seed_from_u64(11);
    for (name, sys) in finite_systems() {
        let ring = sys.ring().elements().unwrap();
        for _ in 0..200 {
            let u = random_elem(&sys, &ring, &mut rng);
            assert_eq!(analysis::commutant_member(&u).unwrap(), analysis::commutant_member_bruteforce(&u).unwrap(), "{name}: {u}");
            assert_eq!(analysis::center_member(&u).unwrap(), analysis::center_member_bruteforce(&u).unwrap(), "{name}: {u}");
        }
    }
}

#[test]
fn commutant_of_commutative_abelian_systems_is_commutative() {
    for (name, sys) in small_systems() {
        let out = analysis::commutant_is_commutative(&sys).unwrap();
        if out.hypotheses_hold {
            assert!(out.commutative, "{name}: {:?}", out.witness);
        }
    }
}

#[test]
fn domain_maximality_matches_kernel_triviality() {
    for entry in catalog::standard_entries().unwrap() {
        let sys = &entry.system;
        if !sys.ring().is_commutative() || !sys.ring().is_integral_domain().unwrap() {
            continue;
        }
        let verdict = analysis::is_maximal_commutative(sys).unwrap();
        assert_eq!(verdict.maximal, sys.sigma_kernel().unwrap().is_trivial(), "{}", entry.label());
        if sys.is_finite() {
            assert_eq!(verdict.maximal, analysis::maximal_by_enumeration(sys).unwrap().maximal, "{}", entry.label());
        }
    }
}

fn laurent_torus(q: &str) -> Arc<CrossedSystem> {
    let params = [("q".to_string(), q.to_string())].into();
    catalog::build("rational_quantum_torus", &params).unwrap().system
}

fn laurent_elem(sys: &Arc<CrossedSystem>, terms: &[(i8, i8, i8)]) -> CrossedElem {
    let text: Vec<String> = terms.iter().map(|(c, e, g)| format!("({c}x^{e})*[{g}]")).collect();
    if text.is_empty() {
        return CrossedElem::zero(sys);
    }
    CrossedElem::parse(sys, &text.join(" + ")).unwrap()
}

fn terms() -> impl Strategy<Value = Vec<(i8, i8, i8)>> {
    prop::collection::vec((-3i8..=3, -2i8..=2, -2i8..=2), 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn laurent_torus_associates(a in terms(), b in terms(), c in terms()) {
        let sys = laurent_torus("2");
        let (u, v, w) = (laurent_elem(&sys, &a), laurent_elem(&sys, &b), laurent_elem(&sys, &c));
        prop_assert_eq!(u.mul(&v).unwrap().mul(&w).unwrap(), u.mul(&v.mul(&w).unwrap()).unwrap());
        prop_assert_eq!(u.commutes(&v).unwrap(), u.commutes_per_degree(&v).unwrap());
    }

    #[test]
    fn y_x_equals_q_x_y(q in prop::sample::select(vec!["2", "-1", "1/3", "-5/2"])) {
        let sys = laurent_torus(q);
        let x = CrossedElem::parse(&sys, "x*[0]").unwrap();
        let y = CrossedElem::parse(&sys, "1*[1]").unwrap();
        let qxy = CrossedElem::parse(&sys, &format!("({q}x)*[1]")).unwrap();
        prop_assert_eq!(y.mul(&x).unwrap(), qxy);
    }

    #[test]
    fn laurent_commutant_members_match_the_kernel(a in terms()) {
        for q in ["2", "-1"] {
            let sys = laurent_torus(q);
            let u = laurent_elem(&sys, &a);
            let expected = u.support().iter().all(|g| {
                let n = g.as_integer().unwrap();
                n == 0.into() || (q == "-1" && n.clone() % 2 == 0.into())
            });
            prop_assert_eq!(analysis::commutant_member(&u).unwrap(), expected);
        }
    }

    #[test]
    fn parse_print_round_trip(a in terms()) {
        let sys = laurent_torus("2");
        let u = laurent_elem(&sys, &a);
        prop_assert_eq!(CrossedElem::parse(&sys, &u.to_string()).unwrap(), u);
    }
}
