//! Markov matrices of iteration graphs and their mixing times.
//!
//! Every entry of the matrix is `k / n` for an integer `k`, so the matrix is
//! stored as integer numerators over the common denominator `n`. Exact checks
//! work on those integers; powering for mixing time uses `f64`, with a
//! big-integer recomputation of the final power for small cubes.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cubefunc::IterationGraph;
use crate::{Error, Result};

/// Row-stochastic matrix with entries `numerator / n`, stored sparsely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovMatrix {
    n: u32,
    /// Per row: `(column, numerator)` sorted by column, zero entries omitted.
    rows: Vec<Vec<(u32, u32)>>,
}

impl MarkovMatrix {
    /// Off-diagonal entries count arc slots `x -> y`; the diagonal takes the
    /// remainder, which equals the number of self-loop slots.
    pub fn from_graph(g: &IterationGraph) -> Self {
        let n = g.n();
        let rows = (0..g.vertex_count() as u32)
            .map(|x| {
                let mut row: Vec<(u32, u32)> = Vec::with_capacity(n as usize);
                let mut targets = g.arcs(x).to_vec();
                targets.sort_unstable();
                for y in targets {
                    match row.last_mut() {
                        Some((col, k)) if *col == y => *k += 1,
                        _ => row.push((y, 1)),
                    }
                }
                row
            })
            .collect();
        Self { n, rows }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn denominator(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, x: u32) -> &[(u32, u32)] {
        &self.rows[x as usize]
    }

    pub fn numerator(&self, x: u32, y: u32) -> u32 {
        let row = &self.rows[x as usize];
        row.binary_search_by_key(&y, |&(c, _)| c).map(|k| row[k].1).unwrap_or(0)
    }

    pub fn entry(&self, x: u32, y: u32) -> Ratio<u32> {
        Ratio::new(self.numerator(x, y), self.n)
    }

    /// Dense numerator table, mainly for display and tests.
    pub fn dense_numerators(&self) -> Vec<Vec<u32>> {
        let size = self.size();
        self.rows
            .iter()
            .map(|row| {
                let mut dense = vec![0; size];
                for &(c, k) in row {
                    dense[c as usize] = k;
                }
                dense
            })
            .collect()
    }

    pub fn rows_sum_to_one(&self) -> bool {
        self.rows.iter().all(|row| row.iter().map(|&(_, k)| u64::from(k)).sum::<u64>() == u64::from(self.n))
    }

    /// Exact column-sum check.
    pub fn is_doubly_stochastic(&self) -> bool {
        let mut cols = vec![0u64; self.size()];
        for row in &self.rows {
            for &(c, k) in row {
                cols[c as usize] += u64::from(k);
            }
        }
        self.rows_sum_to_one() && cols.iter().all(|&s| s == u64::from(self.n))
    }
}

pub fn markov_of(g: &IterationGraph) -> MarkovMatrix {
    MarkovMatrix::from_graph(g)
}

pub fn is_doubly_stochastic(m: &MarkovMatrix) -> bool {
    m.is_doubly_stochastic()
}

const ROW_SUM_TOLERANCE: f64 = 1.0 / (1u64 << 40) as f64;

/// Total variation distance `(1/2) sum |row(y) - 1/len|` to the uniform
/// distribution on `row.len()` states.
pub fn total_variation_to_uniform(row: &[f64]) -> Result<f64> {
    if row.is_empty() {
        return Err(Error::Distribution("empty row".into()));
    }
    if let Some(y) = row.iter().position(|p| !p.is_finite() || *p < 0.0) {
        return Err(Error::Distribution(format!("entry {y} is {}", row[y])));
    }
    let sum: f64 = row.iter().sum();
    if (sum - 1.0).abs() > ROW_SUM_TOLERANCE {
        return Err(Error::Distribution(format!("row sums to {sum}")));
    }
    Ok(tv_unchecked(row))
}

fn tv_unchecked(row: &[f64]) -> f64 {
    let u = 1.0 / row.len() as f64;
    0.5 * row.iter().map(|p| (p - u).abs()).sum::<f64>()
}

/// Exact total variation to uniform for the distribution `numerators / denom`.
pub fn total_variation_exact(numerators: &[BigUint], denom: &BigUint) -> BigRational {
    let states = BigInt::from(numerators.len());
    let denom = BigInt::from(denom.clone());
    let total: BigInt = numerators
        .iter()
        .map(|a| {
            let diff = BigInt::from(a.clone()) * &states - &denom;
            if diff < BigInt::zero() {
                -diff
            } else {
                diff
            }
        })
        .sum();
    BigRational::new(total, BigInt::from(2) * states * denom)
}

#[derive(Debug, Clone, Copy)]
pub struct MixingOptions {
    /// Give up after this many steps.
    pub cap: u64,
    /// Recompute the final power exactly when `n` is at most this.
    pub exact_check_max_bits: u32,
}

impl Default for MixingOptions {
    fn default() -> Self {
        Self { cap: 1_000_000, exact_check_max_bits: 6 }
    }
}

/// Largest cube dimension accepted by the dense powering.
pub const MAX_MIXING_BITS: u32 = 10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixingReport {
    pub n: u32,
    pub epsilon: f64,
    /// `None` when the chain did not mix within the cap.
    pub t: Option<u64>,
    /// `trace[k]` is the worst-row distance after `k + 1` steps.
    pub trace: Vec<f64>,
    /// Exact worst-row distance at `t`, when the exact check ran.
    pub exact_tv_at_t: Option<f64>,
}

impl MixingReport {
    pub fn mixed(&self) -> bool {
        self.t.is_some()
    }

    /// First step count whose worst-row distance is at most `epsilon`.
    pub fn steps_for(&self, epsilon: f64) -> Option<u64> {
        self.trace.iter().position(|&tv| tv <= epsilon).map(|k| k as u64 + 1)
    }

    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n: {}", self.n);
        let _ = writeln!(out, "epsilon: {:e}", self.epsilon);
        match self.t {
            Some(t) => {
                let _ = writeln!(out, "mixing time: {t}");
            }
            None => {
                let _ = writeln!(out, "mixing time: did not mix after {} steps", self.trace.len());
            }
        }
        if let Some(exact) = self.exact_tv_at_t {
            let _ = writeln!(out, "exact tv at t: {exact:.12e}");
        }
        for (k, tv) in self.trace.iter().enumerate() {
            let _ = writeln!(out, "t={} tv={tv:.12e}", k + 1);
        }
        out
    }
}

struct Powering<'a> {
    m: &'a MarkovMatrix,
    size: usize,
    scale: f64,
    current: Vec<f64>,
    scratch: Vec<f64>,
}

impl<'a> Powering<'a> {
    fn new(m: &'a MarkovMatrix) -> Self {
        let size = m.size();
        let scale = 1.0 / f64::from(m.n());
        let mut current = vec![0.0; size * size];
        for (x, row) in m.rows.iter().enumerate() {
            for &(c, k) in row {
                current[x * size + c as usize] = f64::from(k) * scale;
            }
        }
        Self { m, size, scale, current, scratch: vec![0.0; size * size] }
    }

    /// current <- current * M. Rows are independent, and each row is summed
    /// in a fixed order, so the result does not depend on thread count.
    fn advance(&mut self) -> bool {
        let size = self.size;
        let (m, scale, current) = (self.m, self.scale, &self.current);
        self.scratch.par_chunks_mut(size).enumerate().for_each(|(x, out)| {
            out.fill(0.0);
            let src = &current[x * size..(x + 1) * size];
            for (z, &p) in src.iter().enumerate() {
                if p == 0.0 {
                    continue;
                }
                for &(c, k) in &m.rows[z] {
                    out[c as usize] += p * f64::from(k) * scale;
                }
            }
        });
        std::mem::swap(&mut self.current, &mut self.scratch);
        self.current != self.scratch
    }

    fn worst_row_tv(&self) -> f64 {
        self.current.par_chunks(self.size).map(tv_unchecked).reduce(|| 0.0, f64::max)
    }
}

/// Exact worst-row distance of `M^t`, rows propagated with big-integer
/// numerators over `n^t`.
pub fn exact_worst_row_tv(m: &MarkovMatrix, t: u64) -> BigRational {
    let size = m.size();
    let denom = num_traits::pow(BigUint::from(m.n()), t as usize);
    (0..size)
        .into_par_iter()
        .map(|x| {
            let mut dist = vec![BigUint::zero(); size];
            dist[x] = BigUint::from(1u32);
            for _ in 0..t {
                let mut next = vec![BigUint::zero(); size];
                for (z, a) in dist.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for &(c, k) in m.row(z as u32) {
                        next[c as usize] += a * k;
                    }
                }
                dist = next;
            }
            total_variation_exact(&dist, &denom)
        })
        .reduce(BigRational::zero, |a, b| if a > b { a } else { b })
}

pub fn mixing_time(m: &MarkovMatrix, epsilon: f64) -> Result<MixingReport> {
    mixing_time_with(m, epsilon, &MixingOptions::default())
}

/// Smallest `t >= 1` such that every row of `M^t` is within `epsilon` of
/// uniform in total variation.
pub fn mixing_time_with(m: &MarkovMatrix, epsilon: f64, opts: &MixingOptions) -> Result<MixingReport> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Epsilon(epsilon));
    }
    if m.n() > MAX_MIXING_BITS {
        return Err(Error::BitCount { n: m.n(), min: 1, max: MAX_MIXING_BITS });
    }
    let mut power = Powering::new(m);
    let mut trace = vec![power.worst_row_tv()];
    let mut t = None;
    while trace.len() as u64 <= opts.cap {
        if *trace.last().unwrap() <= epsilon {
            t = Some(trace.len() as u64);
            break;
        }
        if trace.len() as u64 == opts.cap {
            break;
        }
        let changed = power.advance();
        trace.push(power.worst_row_tv());
        if !changed {
            // Fixed point away from uniform: no further step can mix.
            break;
        }
    }

    let mut exact_tv_at_t = None;
    if let Some(t) = t {
        if m.n() <= opts.exact_check_max_bits {
            let exact = exact_worst_row_tv(m, t).to_f64().unwrap_or(f64::NAN);
            let float = trace[t as usize - 1];
            if exact.is_nan() || (exact - float).abs() >= EXACT_AGREEMENT {
                return Err(Error::ExactMismatch { t, exact, float });
            }
            exact_tv_at_t = Some(exact);
        }
    }
    Ok(MixingReport { n: m.n(), epsilon, t, trace, exact_tv_at_t })
}

/// Tolerance between exact and floating distances at the reported step.
pub const EXACT_AGREEMENT: f64 = 1.0 / (1u64 << 30) as f64;

pub const DEFAULT_EPSILON: f64 = 1e-4;

/// The sweep `1e-1, 1e-2, ..., 1e-8`.
pub fn default_sweep() -> Vec<f64> {
    (1..=8).map(|k| 10f64.powi(-k)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub epsilon: f64,
    pub t: Option<u64>,
}

/// Mixing time for each epsilon, read off a single trace run to the smallest.
pub fn epsilon_sweep(m: &MarkovMatrix, epsilons: &[f64], opts: &MixingOptions) -> Result<Vec<SweepPoint>> {
    let smallest = epsilons.iter().copied().fold(f64::INFINITY, f64::min);
    if epsilons.is_empty() {
        return Ok(Vec::new());
    }
    let report = mixing_time_with(m, smallest, opts)?;
    Ok(epsilons.iter().map(|&epsilon| SweepPoint { epsilon, t: report.steps_for(epsilon) }).collect())
}
