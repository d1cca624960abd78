//! Boolean maps on the n-cube built by removing a directed Hamiltonian cycle,
//! and the iteration graphs they induce.
//!
//! Words are integers in `0..2^n`. Component `x_1` of a word is its most
//! significant bit, so `F_f(i, x)` touches the bit of value `2^(n-i)`.

use std::fmt;

use serde::Serialize;

use crate::graycode::GrayCode;
use crate::{join_decimal, Error, Result, MAX_BITS};

/// Image table of a map `f: B^n -> B^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BooleanMap {
    n: u32,
    images: Vec<u32>,
}

impl BooleanMap {
    pub fn new(n: u32, images: Vec<u32>) -> Result<Self> {
        if n == 0 || n > MAX_BITS {
            return Err(Error::BitCount { n, min: 1, max: MAX_BITS });
        }
        let len = 1usize << n;
        if images.len() != len {
            return Err(Error::Length { expected: len, actual: images.len() });
        }
        if let Some(position) = images.iter().position(|&y| y as usize >= len) {
            return Err(Error::WordRange { position, word: images[position].into(), n });
        }
        Ok(Self { n, images })
    }

    /// Builds a map from its images, inferring `n` from the table length.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let len = images.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Parse { reason: format!("table length {len} is not a power of two >= 2") });
        }
        Self::new(len.trailing_zeros(), images)
    }

    /// Builds a map component-wise from a closure over the word.
    pub fn from_fn(n: u32, f: impl Fn(u32) -> u32) -> Result<Self> {
        Self::new(n, (0..1u32 << n).map(f).collect())
    }

    pub fn identity(n: u32) -> Result<Self> {
        Self::from_fn(n, |x| x)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn image(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// Mask of component `i` (1-based, `x_1` = MSB).
    pub fn component_mask(&self, i: u32) -> Result<u32> {
        if i == 0 || i > self.n {
            return Err(Error::ComponentIndex { index: i, n: self.n });
        }
        Ok(1 << (self.n - i))
    }

    /// `F_f(i, x)`: `x` with component `i` replaced by component `i` of `f(x)`.
    pub fn apply_component(&self, i: u32, x: u32) -> Result<u32> {
        let mask = self.component_mask(i)?;
        Ok(self.step(mask, x))
    }

    #[inline]
    pub(crate) fn step(&self, mask: u32, x: u32) -> u32 {
        (x & !mask) | (self.images[x as usize] & mask)
    }

    /// Parses the bracketed table form, e.g. `[13,10,9,14,...]`.
    pub fn parse_table(text: &str) -> Result<Self> {
        let body = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse { reason: "function table must be enclosed in [ ]".into() })?;
        let raw = crate::parse_decimal_list(body)?;
        let len = raw.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Parse { reason: format!("table length {len} is not a power of two >= 2") });
        }
        let n = len.trailing_zeros();
        let images = raw
            .iter()
            .enumerate()
            .map(
                |(position, &w)| {
                    if w >= len as u64 {
                        Err(Error::WordRange { position, word: w, n })
                    } else {
                        Ok(w as u32)
                    }
                },
            )
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, images)
    }

    pub fn format_table(&self) -> String {
        format!("[{}]", join_decimal(&self.images))
    }
}

impl fmt::Display for BooleanMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_table())
    }
}

/// A directed Hamiltonian cycle of the n-cube, as its vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HamiltonianCycle {
    n: u32,
    vertices: Vec<u32>,
}

impl HamiltonianCycle {
    /// Validates distinctness and single-bit adjacency including the wrap edge.
    pub fn new(n: u32, vertices: Vec<u32>) -> Result<Self> {
        let code = GrayCode::new(n, vertices)?;
        Ok(Self::from_gray(&code))
    }

    pub fn from_gray(code: &GrayCode) -> Self {
        Self { n: code.n(), vertices: code.words().to_vec() }
    }

    pub fn to_gray(&self) -> GrayCode {
        GrayCode::new(self.n, self.vertices.clone()).expect("cycle invariants match Gray code invariants")
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    /// Successor table: `succ[x]` follows `x` in traversal direction.
    pub fn successors(&self) -> Vec<u32> {
        let len = self.vertices.len();
        let mut succ = vec![0; len];
        for t in 0..len {
            succ[self.vertices[t] as usize] = self.vertices[(t + 1) % len];
        }
        succ
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices[1..].reverse();
        Self { n: self.n, vertices }
    }

    /// Rotates so the cycle starts at vertex 0.
    pub fn rotated_to_zero(&self) -> Self {
        let start = self.vertices.iter().position(|&v| v == 0).unwrap_or(0);
        let mut vertices = self.vertices.clone();
        vertices.rotate_left(start);
        Self { n: self.n, vertices }
    }
}

pub fn gray_to_cycle(code: &GrayCode) -> HamiltonianCycle {
    HamiltonianCycle::from_gray(code)
}

pub fn cycle_to_gray(c: &HamiltonianCycle) -> GrayCode {
    c.to_gray()
}

/// Removes the traversal-direction arcs of `c` from the cube: at each vertex
/// the component toward its successor stays fixed and every other component
/// is negated.
pub fn remove_cycle(c: &HamiltonianCycle) -> BooleanMap {
    let full = (1u32 << c.n) - 1;
    let images = c
        .successors()
        .iter()
        .enumerate()
        .map(|(x, &y)| {
            let x = x as u32;
            x ^ (full ^ (x ^ y))
        })
        .collect();
    BooleanMap { n: c.n, images }
}

/// Cycle structure of the permutation `x -> x xor e_{i(x)}` recovered from a
/// map where each vertex keeps exactly one component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemovedCycles {
    pub n: u32,
    /// Each cycle starts at its smallest vertex; cycles ordered by that vertex.
    pub cycles: Vec<Vec<u32>>,
}

impl RemovedCycles {
    pub fn is_hamiltonian(&self) -> bool {
        self.cycles.len() == 1
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    pub fn as_hamiltonian(&self) -> Option<HamiltonianCycle> {
        self.is_hamiltonian().then(|| HamiltonianCycle { n: self.n, vertices: self.cycles[0].clone() })
    }
}

/// Inverse of [`remove_cycle`] for any 2-factor removal, Hamiltonian or not.
pub fn recover_removed_permutation(f: &BooleanMap) -> Result<RemovedCycles> {
    let n = f.n();
    let full = (1u32 << n) - 1;
    let size = f.size();
    let mut succ = vec![0u32; size];
    let mut pred_seen = vec![false; size];
    for x in 0..size as u32 {
        let kept = !(x ^ f.image(x)) & full;
        if kept.count_ones() != 1 {
            return Err(Error::NotCycleRemoval {
                vertex: x,
                reason: format!("{} components unchanged, expected exactly one", kept.count_ones()),
            });
        }
        let y = x ^ kept;
        if std::mem::replace(&mut pred_seen[y as usize], true) {
            return Err(Error::NotCycleRemoval {
                vertex: x,
                reason: format!("successor {y} already has a removed incoming arc"),
            });
        }
        succ[x as usize] = y;
    }
    let mut visited = vec![false; size];
    let mut cycles = Vec::new();
    for start in 0..size {
        if visited[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut v = start;
        while !visited[v] {
            visited[v] = true;
            cycle.push(v as u32);
            v = succ[v] as usize;
        }
        cycles.push(cycle);
    }
    Ok(RemovedCycles { n, cycles })
}

/// `arcs[x][i-1] = F_f(i, x)`; self-loops kept as slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationGraph {
    n: u32,
    arcs: Vec<Vec<u32>>,
}

impl IterationGraph {
    pub fn build(f: &BooleanMap) -> Self {
        let n = f.n();
        let arcs = (0..f.size() as u32).map(|x| (1..=n).map(|i| f.step(1 << (n - i), x)).collect()).collect();
        Self { n, arcs }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self, x: u32) -> &[u32] {
        &self.arcs[x as usize]
    }

    pub fn arc_slot_count(&self) -> usize {
        self.arcs.iter().map(Vec::len).sum()
    }

    pub fn self_loop_count(&self) -> usize {
        self.arcs.iter().enumerate().map(|(x, out)| out.iter().filter(|&&y| y as usize == x).count()).sum()
    }

    /// Strongly connected components in reverse topological order (Tarjan).
    pub fn components(&self) -> Vec<Vec<u32>> {
        tarjan(self)
    }
}

pub fn build_iteration_graph(f: &BooleanMap) -> IterationGraph {
    IterationGraph::build(f)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Connectivity {
    Strong,
    /// `to` is not reachable from `from`; the pair is lexicographically smallest.
    NotStrong {
        from: u32,
        to: u32,
        components: usize,
    },
}

impl Connectivity {
    pub fn is_strong(&self) -> bool {
        matches!(self, Connectivity::Strong)
    }
}

pub fn is_strongly_connected(g: &IterationGraph) -> Connectivity {
    let components = g.components();
    if components.len() == 1 {
        return Connectivity::Strong;
    }
    let size = g.vertex_count();
    for from in 0..size {
        let reached = reachable(g, from as u32);
        if let Some(to) = reached.iter().position(|r| !r) {
            return Connectivity::NotStrong { from: from as u32, to: to as u32, components: components.len() };
        }
    }
    unreachable!("more than one component implies an unreachable pair")
}

fn reachable(g: &IterationGraph, from: u32) -> Vec<bool> {
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![from];
    seen[from as usize] = true;
    while let Some(v) = stack.pop() {
        for &w in g.arcs(v) {
            if !std::mem::replace(&mut seen[w as usize], true) {
                stack.push(w);
            }
        }
    }
    seen
}

fn tarjan(g: &IterationGraph) -> Vec<Vec<u32>> {
    const UNSET: usize = usize::MAX;
    let size = g.vertex_count();
    let mut index = vec![UNSET; size];
    let mut low = vec![0usize; size];
    let mut on_stack = vec![false; size];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut next = 0usize;
    // (vertex, next arc slot to visit)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..size {
        if index[root] != UNSET {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(frame) = call.last_mut() {
            let v = frame.0;
            let arcs = g.arcs(v as u32);
            if frame.1 < arcs.len() {
                let w = arcs[frame.1] as usize;
                frame.1 += 1;
                if index[w] == UNSET {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack holds the component");
                    on_stack[w] = false;
                    comp.push(w as u32);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                out.push(comp);
            }
        }
    }
    out
}
