use std::collections::HashSet;

use cubewalk_core::cubefunc::{gray_to_cycle, recover_removed_permutation, remove_cycle};
use cubewalk_core::graycode::{generate_balanced, GenerateOptions};
use cubewalk_core::oracle::{balanced_functions, enumerate_hamiltonian_cycles};

#[test]
fn four_bit_outputs_are_enumerated_cycles() {
    let known: HashSet<Vec<u32>> = enumerate_hamiltonian_cycles(4)
        .unwrap()
        .into_iter()
        .flat_map(|c| [c.vertices().to_vec(), c.reversed().rotated_to_zero().vertices().to_vec()])
        .collect();
    let found = generate_balanced(4, GenerateOptions::default()).unwrap();
    assert!(!found.is_empty());
    for cand in found {
        let cycle = gray_to_cycle(&cand.sequence.to_gray(0).unwrap());
        assert!(known.contains(cycle.vertices()), "{}", cand.sequence);
    }
}

#[test]
fn six_bit_function_count() {
    let fs = balanced_functions(6, GenerateOptions { limit: None, jobs: 2 }).unwrap();
    assert_eq!(fs.len(), 1332);
    for f in fs.iter().take(50) {
        assert!(recover_removed_permutation(f).unwrap().is_hamiltonian());
    }
}

#[test]
fn removal_round_trip_on_generated_codes() {
    for cand in generate_balanced(5, GenerateOptions::default()).unwrap() {
        let cycle = gray_to_cycle(&cand.sequence.to_gray(0).unwrap());
        let back = recover_removed_permutation(&remove_cycle(&cycle)).unwrap().as_hamiltonian().unwrap();
        assert_eq!(back.vertices(), cycle.vertices());
    }
}

#[test]
fn limit_caps_work_and_jobs_do_not_change_output() {
    let small = generate_balanced(6, GenerateOptions { limit: Some(100), jobs: 1 }).unwrap();
    let full = generate_balanced(6, GenerateOptions { limit: None, jobs: 1 }).unwrap();
    assert!(small.len() <= full.len());
    assert_eq!(small, generate_balanced(6, GenerateOptions { limit: Some(100), jobs: 3 }).unwrap());
}
