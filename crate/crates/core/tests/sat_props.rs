mod common;

use common::pdg_strategy;
use kpdg::bits::subsets;
use kpdg::sat::*;
use proptest::prelude::*;

fn formula_strategy(n: usize, k: usize) -> impl Strategy<Value = Formula> {
    let masks: Vec<u32> = subsets(n, k).collect();
    let per_set = 1usize << k;
    proptest::collection::vec(0..per_set * masks.len(), 0..8).prop_map(move |picks| {
        let clauses = picks.iter().map(|&p| {
            let vars = masks[p / per_set] as u64;
            // spread the low bits of p over the clause's variables
            let mut neg = 0u64;
            for (i, v) in kpdg::bits::ones(vars as u32).enumerate() {
                if (p % per_set) >> i & 1 == 1 {
                    neg |= 1 << v;
                }
            }
            Clause::from_masks(vars, neg)
        });
        Formula::new(n, k, clauses).unwrap()
    })
}

fn negate_var(f: &Formula, v: usize) -> Formula {
    let clauses = f.clauses().iter().map(|c| {
        let flip = c.vars() & (1 << v);
        Clause::from_masks(c.vars(), c.neg() ^ flip)
    });
    Formula::new(f.n(), f.k(), clauses).unwrap()
}

fn permute(f: &Formula, perm: &[usize]) -> Formula {
    let clauses = f.clauses().iter().map(|c| {
        let lits: Vec<Literal> =
            c.literals().iter().map(|l| Literal { var: perm[l.var], positive: l.positive }).collect();
        Clause::new(&lits).unwrap()
    });
    Formula::new(f.n(), f.k(), clauses).unwrap()
}

proptest! {
    #[test]
    fn witness_search_matches_brute_force(f in formula_strategy(6, 3)) {
        for c in f.clauses() {
            let fast = find_witness(&f, c);
            prop_assert_eq!(fast.is_some(), find_witness_brute(&f, c).is_some());
            if let Some(w) = fast {
                prop_assert!(c.satisfied_by(w));
                prop_assert!(f.clauses().iter().filter(|d| d.satisfied_by(w)).count() == 1);
            }
        }
    }

    #[test]
    fn truth_table_matches_evaluate(f in formula_strategy(5, 2)) {
        let t = truth_table(&f).unwrap();
        for w in 0..32u64 {
            prop_assert_eq!(t.get(w), evaluate(&f, w));
        }
    }

    #[test]
    fn text_round_trips(f in formula_strategy(6, 3)) {
        let back = Formula::parse_with(&f.to_string(), Some(6)).unwrap();
        prop_assert_eq!(back.to_string(), f.to_string());
        prop_assert_eq!(back.clauses(), f.clauses());
    }

    #[test]
    fn deleting_from_minimal_changes_function(f in formula_strategy(5, 2)) {
        if is_minimal(&f) {
            let t = truth_table(&f).unwrap();
            for c in f.clauses() {
                prop_assert_ne!(&truth_table(&f.without(c)).unwrap(), &t);
            }
        }
    }

    #[test]
    fn type_inverts_positive_instance(h in pdg_strategy(5, 3)) {
        prop_assert_eq!(type_of(&positive_instance(&h)).unwrap(), h);
    }

    #[test]
    fn subformula_census(h in pdg_strategy(4, 2)) {
        let mut count = 0u64;
        for_each_simple_subformula(&h, |f| {
            assert!(is_simple(f));
            count += 1;
        });
        prop_assert_eq!(Some(count), simple_subformula_count(&h));
    }

    #[test]
    fn blowup_preserves_polarity(f in formula_strategy(4, 2), b in 1usize..4) {
        let g = blowup(&f, b).unwrap();
        prop_assert_eq!(g.len(), f.len() * b.pow(2));
        for c in g.clauses() {
            let proj: Vec<Literal> = c.literals().iter().map(|l| Literal { var: l.var % 4, positive: l.positive }).collect();
            prop_assert!(f.contains(&Clause::new(&proj).unwrap()));
        }
    }

    #[test]
    fn unate_distance_invariances(f in formula_strategy(5, 3), v in 0usize..5, perm in common::perm_strategy(5)) {
        let d = distance_to_unate(&f).unwrap();
        prop_assert_eq!(distance_to_unate(&negate_var(&f, v)).unwrap(), d);
        prop_assert_eq!(distance_to_unate(&permute(&f, &perm)).unwrap(), d);
        prop_assert_eq!(is_unate(&f), d == 0);
    }

    #[test]
    fn semisimple_realizations_have_the_type(h in pdg_strategy(4, 3)) {
        for g in semisimple_realizations(&h, 1 << 16).unwrap() {
            prop_assert!(is_semisimple(&g));
            prop_assert_eq!(type_of(&g).unwrap(), h.clone());
        }
    }
}

#[test]
fn small_census_values() {
    assert_eq!(count_functions(2, 2).unwrap(), 16);
    assert_eq!(count_functions(3, 3).unwrap(), 256);
    assert!(count_unate_functions(3, 2).unwrap() < count_functions(3, 2).unwrap());
}
