//! Brute-force cross-checks for small cubes: exhaustive Hamiltonian-cycle
//! enumeration, double-stochasticity / strong-connectivity of every cycle
//! removal, and distinct-function counts from the balanced-code pipeline.

use std::collections::HashSet;

use serde::Serialize;

use crate::cubefunc::{
    gray_to_cycle, is_strongly_connected, remove_cycle, BooleanMap, HamiltonianCycle, IterationGraph,
};
use crate::graycode::{generate_balanced, GenerateOptions};
use crate::markov::markov_of;
use crate::{join_decimal, Error, Result};

pub const MAX_ENUMERATION_BITS: u32 = 4;

/// Every Hamiltonian cycle of the n-cube, once per undirected cycle: each
/// starts at 0 and its second vertex is the smaller of 0's two cycle
/// neighbours. Sorted lexicographically.
pub fn enumerate_hamiltonian_cycles(n: u32) -> Result<Vec<HamiltonianCycle>> {
    let order: Vec<u32> = (0..n).collect();
    enumerate_with_order(n, &order)
}

/// As [`enumerate_hamiltonian_cycles`], trying neighbours by flipping bits in
/// `bit_order`. The result does not depend on the order.
pub fn enumerate_with_order(n: u32, bit_order: &[u32]) -> Result<Vec<HamiltonianCycle>> {
    if !(2..=MAX_ENUMERATION_BITS).contains(&n) {
        return Err(Error::BitCount { n, min: 2, max: MAX_ENUMERATION_BITS });
    }
    let mut sorted_order = bit_order.to_vec();
    sorted_order.sort_unstable();
    if sorted_order != (0..n).collect::<Vec<_>>() {
        return Err(Error::Parameter(format!("bit order {bit_order:?} is not a permutation of 0..{n}")));
    }

    let size = 1usize << n;
    let mut path = Vec::with_capacity(size);
    let mut visited = vec![false; size];
    let mut found = Vec::new();
    path.push(0u32);
    visited[0] = true;
    extend(bit_order, &mut path, &mut visited, &mut found);

    let mut cycles: Vec<Vec<u32>> = found;
    cycles.sort();
    Ok(cycles.into_iter().map(|vertices| HamiltonianCycle::new(n, vertices).expect("search yields cycles")).collect())
}

fn extend(bit_order: &[u32], path: &mut Vec<u32>, visited: &mut [bool], found: &mut Vec<Vec<u32>>) {
    let size = visited.len();
    let last = *path.last().unwrap();
    if path.len() == size {
        if last.count_ones() == 1 && path[1] < last {
            found.push(path.clone());
        }
        return;
    }
    for &j in bit_order {
        let next = last ^ (1 << j);
        if visited[next as usize] {
            continue;
        }
        visited[next as usize] = true;
        path.push(next);
        extend(bit_order, path, visited, found);
        path.pop();
        visited[next as usize] = false;
    }
}

pub fn format_cycle(c: &HamiltonianCycle) -> String {
    join_decimal(c.vertices())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremSummary {
    pub n: u32,
    /// Undirected cycles enumerated.
    pub cycles: usize,
    /// Directed removals checked (both orientations of every cycle).
    pub removals_checked: usize,
    pub doubly_stochastic: usize,
    pub strongly_connected: usize,
}

impl TheoremSummary {
    pub fn failures(&self) -> usize {
        2 * self.removals_checked - self.doubly_stochastic - self.strongly_connected
    }
}

/// Checks that removing any directed Hamiltonian cycle yields a doubly
/// stochastic Markov matrix and a strongly connected iteration graph.
/// The first failing cycle aborts with an error.
pub fn verify_theorems(n: u32) -> Result<TheoremSummary> {
    let cycles = enumerate_hamiltonian_cycles(n)?;
    let mut summary =
        TheoremSummary { n, cycles: cycles.len(), removals_checked: 0, doubly_stochastic: 0, strongly_connected: 0 };
    for cycle in &cycles {
        for directed in [cycle.clone(), cycle.reversed()] {
            let graph = IterationGraph::build(&remove_cycle(&directed));
            summary.removals_checked += 1;
            if !markov_of(&graph).is_doubly_stochastic() {
                return Err(Error::TheoremViolation {
                    cycle: directed.vertices().to_vec(),
                    reason: "Markov matrix is not doubly stochastic".into(),
                });
            }
            summary.doubly_stochastic += 1;
            if let crate::cubefunc::Connectivity::NotStrong { from, to, .. } = is_strongly_connected(&graph) {
                return Err(Error::TheoremViolation {
                    cycle: directed.vertices().to_vec(),
                    reason: format!("{to} is not reachable from {from}"),
                });
            }
            summary.strongly_connected += 1;
        }
    }
    Ok(summary)
}

/// Distinct maps (by image table) obtained from the balanced-code pipeline,
/// in first-seen order.
pub fn balanced_functions(n: u32, opts: GenerateOptions) -> Result<Vec<BooleanMap>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for cand in generate_balanced(n, opts)? {
        let f = remove_cycle(&gray_to_cycle(&cand.sequence.to_gray(0)?));
        if seen.insert(f.images().to_vec()) {
            out.push(f);
        }
    }
    Ok(out)
}

pub fn count_balanced_functions(n: u32, opts: GenerateOptions) -> Result<usize> {
    Ok(balanced_functions(n, opts)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_cube_has_one_cycle() {
        let cycles = enumerate_hamiltonian_cycles(2).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].vertices(), &[0, 1, 3, 2]);
    }

    #[test]
    fn frozen_cycle_counts() {
        // Computed by this search; frozen as regressions.
        assert_eq!(enumerate_hamiltonian_cycles(3).unwrap().len(), 6);
        assert_eq!(enumerate_hamiltonian_cycles(4).unwrap().len(), 1344);
    }

    #[test]
    fn size_guard() {
        assert!(enumerate_hamiltonian_cycles(5).is_err());
        assert!(enumerate_hamiltonian_cycles(1).is_err());
        assert!(enumerate_with_order(3, &[0, 0, 1]).is_err());
    }

    #[test]
    fn canonical_form() {
        for c in enumerate_hamiltonian_cycles(4).unwrap() {
            let v = c.vertices();
            assert_eq!(v[0], 0);
            assert!(v[1] < *v.last().unwrap());
        }
    }

    #[test]
    fn neighbour_order_does_not_matter() {
        let base = enumerate_hamiltonian_cycles(4).unwrap();
        for order in [[3, 2, 1, 0], [1, 3, 0, 2], [2, 0, 3, 1]] {
            assert_eq!(enumerate_with_order(4, &order).unwrap(), base);
        }
    }

    #[test]
    fn theorems_hold_small() {
        for (n, cycles) in [(2, 1), (3, 6)] {
            let s = verify_theorems(n).unwrap();
            assert_eq!(s.cycles, cycles);
            assert_eq!(s.removals_checked, 2 * cycles);
            assert_eq!(s.failures(), 0);
        }
    }

    #[test]
    fn dump_format() {
        let c = &enumerate_hamiltonian_cycles(2).unwrap()[0];
        assert_eq!(format_cycle(c), "0,1,3,2");
    }

    #[test]
    fn function_counts_small() {
        assert_eq!(count_balanced_functions(4, GenerateOptions::default()).unwrap(), 1);
        assert_eq!(count_balanced_functions(5, GenerateOptions::default()).unwrap(), 2);
    }
}
