//! Random-walk generator on the iteration graph of a Boolean map.
//!
//! Each output block is the configuration reached after `b` steps
//! `x <- F_f(s, x)`, with `s` drawn uniformly from `1..=n` by a
//! [`StrategyGenerator`]. Blocks continue from the previous block's final
//! configuration.

mod profiles;

use std::fmt;
use std::str::FromStr;

use crate::cubefunc::BooleanMap;
use crate::{Error, Result};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Source of strategy indices in `1..=n`.
pub trait Strategy {
    fn next_index(&mut self, n: u32) -> u32;
}

impl<F: FnMut(u32) -> u32> Strategy for F {
    fn next_index(&mut self, n: u32) -> u32 {
        self(n)
    }
}

/// SplitMix64 with unbiased reduction to `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyGenerator {
    state: u64,
}

impl StrategyGenerator {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Rejection sampling on the low `ceil(log2 n)` bits.
    pub fn next_index(&mut self, n: u32) -> u32 {
        assert!((1..=64).contains(&n), "strategy range 1..={n} unsupported");
        let bits = u32::BITS - (n - 1).leading_zeros();
        let mask = (1u64 << bits) - 1;
        loop {
            let r = self.next_u64() & mask;
            if r < u64::from(n) {
                return r as u32 + 1;
            }
        }
    }
}

impl Strategy for StrategyGenerator {
    fn next_index(&mut self, n: u32) -> u32 {
        StrategyGenerator::next_index(self, n)
    }
}

/// Everything needed to start one generator instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub map: BooleanMap,
    pub b: u32,
    pub seed_state: u32,
    pub seed_strategy: u64,
}

impl GeneratorConfig {
    pub fn new(map: BooleanMap, b: u32, seed_state: u32, seed_strategy: u64) -> Result<Self> {
        if b == 0 {
            return Err(Error::Parameter("b must be at least 1".into()));
        }
        if seed_state as usize >= map.size() {
            return Err(Error::WordRange { position: 0, word: seed_state.into(), n: map.n() });
        }
        Ok(Self { map, b, seed_state, seed_strategy })
    }

    pub fn n(&self) -> u32 {
        self.map.n()
    }

    pub fn generator(&self) -> Generator {
        Generator::new(self)
    }
}

#[derive(Debug, Clone)]
pub struct Generator<S = StrategyGenerator> {
    map: BooleanMap,
    masks: Vec<u32>,
    b: u32,
    x: u32,
    strategy: S,
    pending: u64,
    pending_bits: u32,
}

impl Generator<StrategyGenerator> {
    pub fn new(config: &GeneratorConfig) -> Self {
        Generator::with_strategy(
            config.map.clone(),
            config.b,
            config.seed_state,
            StrategyGenerator::new(config.seed_strategy),
        )
        .expect("config was validated")
    }
}

impl<S: Strategy> Generator<S> {
    /// Generator with an arbitrary strategy source. `b = 0` is accepted here
    /// so a walk of zero steps can be observed.
    pub fn with_strategy(map: BooleanMap, b: u32, x0: u32, strategy: S) -> Result<Self> {
        if x0 as usize >= map.size() {
            return Err(Error::WordRange { position: 0, word: x0.into(), n: map.n() });
        }
        let n = map.n();
        let masks = (1..=n).map(|i| 1 << (n - i)).collect();
        Ok(Self { map, masks, b, x: x0, strategy, pending: 0, pending_bits: 0 })
    }

    pub fn n(&self) -> u32 {
        self.map.n()
    }

    /// Current configuration.
    pub fn state(&self) -> u32 {
        self.x
    }

    /// Bits produced but not yet emitted by [`Generator::fill_bytes`].
    pub fn pending_bits(&self) -> u32 {
        self.pending_bits
    }

    /// Applies `steps` strategy-driven updates and returns the configuration.
    pub fn walk(&mut self, steps: u32) -> u32 {
        let n = self.n();
        for _ in 0..steps {
            let s = self.strategy.next_index(n);
            debug_assert!((1..=n).contains(&s));
            self.x = self.map.step(self.masks[s as usize - 1], self.x);
        }
        self.x
    }

    pub fn next_block(&mut self) -> u32 {
        self.walk(self.b)
    }

    /// Fills `out` with blocks packed MSB-first; leftover bits carry into the
    /// next call.
    pub fn fill_bytes(&mut self, out: &mut [u8]) {
        let n = self.n();
        for byte in out {
            while self.pending_bits < 8 {
                let block = self.next_block();
                self.pending = (self.pending << n) | u64::from(block);
                self.pending_bits += n;
            }
            self.pending_bits -= 8;
            *byte = (self.pending >> self.pending_bits) as u8;
            self.pending &= (1u64 << self.pending_bits) - 1;
        }
    }

    pub fn bytes(&mut self, count: usize) -> Vec<u8> {
        let mut out = vec![0; count];
        self.fill_bytes(&mut out);
        out
    }
}

/// The five published generator functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Profile {
    A,
    B,
    C,
    D,
    E,
}

impl Profile {
    pub const ALL: [Profile; 5] = [Profile::A, Profile::B, Profile::C, Profile::D, Profile::E];

    pub fn tag(self) -> char {
        match self {
            Profile::A => 'a',
            Profile::B => 'b',
            Profile::C => 'c',
            Profile::D => 'd',
            Profile::E => 'e',
        }
    }

    pub fn images(self) -> &'static [u32] {
        match self {
            Profile::A => &profiles::TABLE_A,
            Profile::B => &profiles::TABLE_B,
            Profile::C => &profiles::TABLE_C,
            Profile::D => &profiles::TABLE_D,
            Profile::E => &profiles::TABLE_E,
        }
    }

    pub fn n(self) -> u32 {
        self.images().len().trailing_zeros()
    }

    /// Published walk length per output block.
    pub fn b(self) -> u32 {
        match self {
            Profile::A => 32,
            Profile::B => 41,
            Profile::C => 49,
            Profile::D => 63,
            Profile::E => 75,
        }
    }

    pub fn map(self) -> BooleanMap {
        BooleanMap::new(self.n(), self.images().to_vec()).expect("built-in tables are well formed")
    }

    pub fn config(self, seed_state: u32, seed_strategy: u64) -> Result<GeneratorConfig> {
        GeneratorConfig::new(self.map(), self.b(), seed_state, seed_strategy)
    }
}

pub fn builtin_profile(tag: &str) -> Result<Profile> {
    tag.parse()
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a" => Ok(Profile::A),
            "b" => Ok(Profile::B),
            "c" => Ok(Profile::C),
            "d" => Ok(Profile::D),
            "e" => Ok(Profile::E),
            _ => Err(Error::UnknownProfile(s.to_string())),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}
