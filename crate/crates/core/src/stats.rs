//! A small statistical battery for generator output, plus raw export for
//! external test suites.
//!
//! Input streams are packed bytes read MSB-first.

use std::io::{self, Write};

use serde::Serialize;
use statrs::function::erf::erfc;
use statrs::function::gamma::gamma_ur;
use thiserror::Error;

use crate::prng::GeneratorConfig;
use crate::{Error, Result};

pub const DEFAULT_ALPHA: f64 = 0.01;
pub const MIN_BITS: usize = 10_000;
pub const DEFAULT_BLOCK_LEN: usize = 128;
pub const DEFAULT_CELL_BITS: u32 = 8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestReport {
    pub test_name: String,
    pub sample_bits: usize,
    pub statistic: f64,
    pub p_value: f64,
    pub alpha: f64,
    pub pass: bool,
}

impl TestReport {
    fn new(test_name: &str, sample_bits: usize, statistic: f64, p_value: f64) -> Self {
        let p_value = p_value.clamp(0.0, 1.0);
        Self {
            test_name: test_name.to_string(),
            sample_bits,
            statistic,
            p_value,
            alpha: DEFAULT_ALPHA,
            pass: p_value >= DEFAULT_ALPHA,
        }
    }

    /// Re-judges the verdict at another significance level.
    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self.pass = self.p_value >= alpha;
        self
    }
}

#[inline]
fn bit(bytes: &[u8], k: usize) -> u8 {
    (bytes[k / 8] >> (7 - k % 8)) & 1
}

fn require_bits(test: &'static str, bytes: &[u8], required: usize) -> Result<usize> {
    let actual = bytes.len() * 8;
    if actual < required {
        return Err(Error::InsufficientData { test, required, actual });
    }
    Ok(actual)
}

fn ones(bytes: &[u8]) -> u64 {
    bytes.iter().map(|b| u64::from(b.count_ones())).sum()
}

/// Frequency test: normalized partial sum of +/-1 steps.
pub fn monobit(bytes: &[u8]) -> Result<TestReport> {
    let n = require_bits("monobit", bytes, MIN_BITS)?;
    let s = 2.0 * ones(bytes) as f64 - n as f64;
    let s_obs = s.abs() / (n as f64).sqrt();
    Ok(TestReport::new("monobit", n, s_obs, erfc(s_obs / std::f64::consts::SQRT_2)))
}

/// Frequency within non-overlapping blocks of `block_len` bits.
pub fn block_frequency(bytes: &[u8], block_len: usize) -> Result<TestReport> {
    let n = require_bits("block-frequency", bytes, MIN_BITS)?;
    if block_len == 0 || block_len > n {
        return Err(Error::Parameter(format!("block length {block_len} must lie in 1..={n}")));
    }
    let blocks = n / block_len;
    let mut chi2 = 0.0;
    for j in 0..blocks {
        let start = j * block_len;
        let ones = (start..start + block_len).filter(|&k| bit(bytes, k) == 1).count();
        let pi = ones as f64 / block_len as f64 - 0.5;
        chi2 += pi * pi;
    }
    chi2 *= 4.0 * block_len as f64;
    let p = gamma_ur(blocks as f64 / 2.0, chi2 / 2.0);
    Ok(TestReport::new("block-frequency", blocks * block_len, chi2, p))
}

/// Number of runs compared with its expectation given the ones proportion.
/// Streams failing the frequency prerequisite get p = 0.
pub fn runs_test(bytes: &[u8]) -> Result<TestReport> {
    let n = require_bits("runs", bytes, MIN_BITS)?;
    let nf = n as f64;
    let pi = ones(bytes) as f64 / nf;
    let runs = 1 + (1..n).filter(|&k| bit(bytes, k) != bit(bytes, k - 1)).count();
    let v = runs as f64;
    if (pi - 0.5).abs() >= 2.0 / nf.sqrt() {
        return Ok(TestReport::new("runs", n, v, 0.0));
    }
    let spread = 2.0 * nf * pi * (1.0 - pi);
    let p = erfc((v - spread).abs() / (2.0 * (2.0 * nf).sqrt() * pi * (1.0 - pi)));
    Ok(TestReport::new("runs", n, v, p))
}

/// Chi-square over the `2^cell_bits` values of non-overlapping cells.
/// Needs an expected count of at least 5 per cell.
pub fn chi_square_blocks(bytes: &[u8], cell_bits: u32) -> Result<TestReport> {
    let n = require_bits("chi-square", bytes, MIN_BITS)?;
    if !(1..=16).contains(&cell_bits) {
        return Err(Error::Parameter(format!("cell width {cell_bits} must lie in 1..=16")));
    }
    let k = cell_bits as usize;
    let categories = 1usize << k;
    let cells = n / k;
    let required = 5 * categories * k;
    if cells < 5 * categories {
        return Err(Error::InsufficientData { test: "chi-square", required, actual: n });
    }
    let mut counts = vec![0u64; categories];
    for c in 0..cells {
        let v = (0..k).fold(0usize, |acc, j| (acc << 1) | bit(bytes, c * k + j) as usize);
        counts[v] += 1;
    }
    let expected = cells as f64 / categories as f64;
    let chi2: f64 = counts.iter().map(|&o| (o as f64 - expected).powi(2) / expected).sum();
    let p = gamma_ur((categories - 1) as f64 / 2.0, chi2 / 2.0);
    Ok(TestReport::new(&format!("chi-square-{cell_bits}bit"), cells * k, chi2, p))
}

/// Runs all four tests with default parameters.
pub fn run_battery(bytes: &[u8], alpha: f64) -> Result<Vec<TestReport>> {
    Ok(vec![
        monobit(bytes)?.with_alpha(alpha),
        block_frequency(bytes, DEFAULT_BLOCK_LEN)?.with_alpha(alpha),
        runs_test(bytes)?.with_alpha(alpha),
        chi_square_blocks(bytes, DEFAULT_CELL_BITS)?.with_alpha(alpha),
    ])
}

/// Structured battery result for CI consumption.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatteryReport {
    pub source: String,
    pub n: Option<u32>,
    pub b: Option<u32>,
    pub seed_state: Option<u32>,
    pub seed_strategy: Option<u64>,
    pub alpha: f64,
    pub tests: Vec<TestReport>,
}

impl BatteryReport {
    pub fn all_pass(&self) -> bool {
        self.tests.iter().all(|t| t.pass)
    }

    pub fn for_config(config: &GeneratorConfig, source: String, alpha: f64, tests: Vec<TestReport>) -> Self {
        Self {
            source,
            n: Some(config.n()),
            b: Some(config.b),
            seed_state: Some(config.seed_state),
            seed_strategy: Some(config.seed_strategy),
            alpha,
            tests,
        }
    }
}

#[derive(Debug, Error)]
#[error("export failed after {written} bytes: {source}")]
pub struct ExportError {
    pub written: u64,
    #[source]
    pub source: io::Error,
}

const EXPORT_CHUNK: usize = 1 << 16;

/// Writes exactly `n_bytes` of generator output to `sink` and flushes.
pub fn export_raw<W: Write>(config: &GeneratorConfig, n_bytes: u64, sink: &mut W) -> Result<u64, ExportError> {
    let mut generator = config.generator();
    let mut buf = vec![0u8; EXPORT_CHUNK];
    let mut written = 0u64;
    while written < n_bytes {
        let len = (n_bytes - written).min(EXPORT_CHUNK as u64) as usize;
        generator.fill_bytes(&mut buf[..len]);
        let mut chunk = &buf[..len];
        while !chunk.is_empty() {
            match sink.write(chunk) {
                Ok(0) => return Err(ExportError { written, source: io::ErrorKind::WriteZero.into() }),
                Ok(k) => {
                    written += k as u64;
                    chunk = &chunk[k..];
                }
                Err(e) if e.kind() == io::ErrorKind::Interrupted => {}
                Err(source) => return Err(ExportError { written, source }),
            }
        }
    }
    sink.flush().map_err(|source| ExportError { written, source })?;
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prng::{Profile, StrategyGenerator};

    fn mixer_bytes(seed: u64, len: usize) -> Vec<u8> {
        let mut g = StrategyGenerator::new(seed);
        let mut out = Vec::with_capacity(len + 8);
        while out.len() < len {
            out.extend_from_slice(&g.next_u64().to_be_bytes());
        }
        out.truncate(len);
        out
    }

    #[test]
    fn all_zero_stream_fails_monobit() {
        let r = monobit(&[0u8; 1250]).unwrap();
        assert!(r.p_value < 1e-6);
        assert!(!r.pass);
    }

    #[test]
    fn alternating_stream_fails_runs() {
        let r = runs_test(&[0x55u8; 1250]).unwrap();
        assert_eq!(r.statistic, 10_000.0);
        assert!(!r.pass);
        // Perfectly balanced, so monobit is happy.
        assert!(monobit(&[0x55u8; 1250]).unwrap().pass);
    }

    #[test]
    fn short_inputs_are_rejected() {
        let err = monobit(&[0u8; 100]).unwrap_err();
        assert_eq!(err, Error::InsufficientData { test: "monobit", required: 10_000, actual: 800 });
        assert!(chi_square_blocks(&[0u8; 1250], 8).is_err());
        assert!(block_frequency(&[0u8; 1250], 0).is_err());
        assert!(chi_square_blocks(&[0u8; 5000], 17).is_err());
    }

    #[test]
    fn verdict_follows_alpha() {
        let r = monobit(&mixer_bytes(3, 2000)).unwrap();
        assert!(r.clone().with_alpha(0.0).pass);
        assert_eq!(r.clone().with_alpha(1.0).pass, r.p_value >= 1.0);
        assert_eq!(r.pass, r.p_value >= DEFAULT_ALPHA);
    }

    #[test]
    fn ideal_source_pass_rates() {
        let samples = 200;
        let len = 2500;
        let stream = mixer_bytes(2024, samples * len);
        let mut passes = [0usize; 4];
        for chunk in stream.chunks(len) {
            for (slot, report) in run_battery(chunk, DEFAULT_ALPHA).unwrap().iter().enumerate() {
                passes[slot] += report.pass as usize;
            }
        }
        for p in passes {
            let rate = p as f64 / samples as f64;
            assert!((0.95..=1.0).contains(&rate), "pass counts {passes:?}");
        }
    }

    /// Composite Simpson rule with `steps` (even) intervals.
    fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, steps: usize) -> f64 {
        let h = (b - a) / steps as f64;
        let mut acc = f(a) + f(b);
        for k in 1..steps {
            let w = if k % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(a + k as f64 * h);
        }
        acc * h / 3.0
    }

    #[test]
    fn erfc_matches_quadrature() {
        for z in [0.0, 0.3, 1.0, 1.7, 2.5, 3.2] {
            let tail = simpson(|t| (-t * t).exp(), z, z + 12.0, 20_000);
            let oracle = 2.0 / std::f64::consts::PI.sqrt() * tail;
            assert!((erfc(z) - oracle).abs() < 1e-6, "z={z}");
        }
    }

    #[test]
    fn chi_square_tail_matches_quadrature() {
        // Q(a, x) as a ratio of two integrals of t^(a-1) e^-t, so no gamma
        // function value enters the oracle.
        for (a, x) in [(1.0f64, 0.7), (2.5, 1.9), (50.0, 46.0), (50.0, 61.0), (127.5, 120.0), (127.5, 160.0)] {
            // Scaled by the value at the mode to stay in range.
            let shift = if a > 1.0 { (a - 1.0) * (a - 1.0).ln() - (a - 1.0) } else { 0.0 };
            let density = |t: f64| match t {
                t if t > 0.0 => ((a - 1.0) * t.ln() - t - shift).exp(),
                _ if a == 1.0 => 1.0,
                _ => 0.0,
            };
            let upper = a + 40.0 * a.sqrt() + 60.0;
            let whole = simpson(density, 0.0, upper, 400_000);
            let tail = simpson(density, x, upper, 400_000);
            let oracle = tail / whole;
            assert!((gamma_ur(a, x) - oracle).abs() < 1e-6, "a={a} x={x}: {} vs {oracle}", gamma_ur(a, x));
        }
    }

    #[test]
    fn export_writes_exact_counts() {
        let cfg = Profile::A.config(0, 1).unwrap();
        let mut sink = Vec::new();
        assert_eq!(export_raw(&cfg, 0, &mut sink).unwrap(), 0);
        assert!(sink.is_empty());
        assert_eq!(export_raw(&cfg, 70_001, &mut sink).unwrap(), 70_001);
        assert_eq!(sink.len(), 70_001);
        assert_eq!(sink, cfg.generator().bytes(70_001));
    }

    struct FailAfter(usize);

    impl Write for FailAfter {
        fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
            if self.0 == 0 {
                return Err(io::Error::other("full"));
            }
            let n = buf.len().min(self.0);
            self.0 -= n;
            Ok(n)
        }

        fn flush(&mut self) -> io::Result<()> {
            Ok(())
        }
    }

    #[test]
    fn export_reports_progress_on_failure() {
        let cfg = Profile::A.config(0, 1).unwrap();
        let err = export_raw(&cfg, 200_000, &mut FailAfter(70_000)).unwrap_err();
        assert_eq!(err.written, 70_000);
    }
}
