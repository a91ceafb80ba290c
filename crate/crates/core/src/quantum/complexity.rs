use std::io::Write;

use flate2::write::DeflateEncoder;
use flate2::Compression;
use num_complex::Complex64;
use serde::Serialize;

use super::register::QubitRegister;
use super::QuantumError;
use crate::units::ConstantsSet;

pub const MIN_PRECISION_BITS: u32 = 4;
pub const MAX_PRECISION_BITS: u32 = 64;

/// Raw DEFLATE stream (RFC 1951), pure-Rust backend, maximum compression.
pub const COMPRESSOR_ID: &str = "deflate-raw/miniz_oxide/level-9";

const HEADER_BYTES: usize = 8;

fn check_precision(p: u32) -> Result<(), QuantumError> {
    if (MIN_PRECISION_BITS..=MAX_PRECISION_BITS).contains(&p) {
        Ok(())
    } else {
        Err(QuantumError::PrecisionOutOfRange(p))
    }
}

struct BitWriter {
    bytes: Vec<u8>,
    acc: u128,
    fill: u32,
}

impl BitWriter {
    fn with_capacity(bits: usize) -> Self {
        Self { bytes: Vec::with_capacity(bits.div_ceil(8)), acc: 0, fill: 0 }
    }

    fn push(&mut self, value: u64, width: u32) {
        let mask = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
        self.acc = (self.acc << width) | (value & mask) as u128;
        self.fill += width;
        while self.fill >= 8 {
            self.fill -= 8;
            self.bytes.push((self.acc >> self.fill) as u8);
        }
        self.acc &= (1u128 << self.fill) - 1;
    }

    fn finish(mut self) -> Vec<u8> {
        if self.fill > 0 {
            self.bytes.push((self.acc << (8 - self.fill)) as u8);
        }
        self.bytes
    }
}

struct BitReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl BitReader<'_> {
    fn take(&mut self, width: u32) -> u64 {
        let mut v = 0u64;
        for _ in 0..width {
            let bit = (self.bytes[self.pos / 8] >> (7 - self.pos % 8)) & 1;
            v = (v << 1) | bit as u64;
            self.pos += 1;
        }
        v
    }
}

/// Canonical fixed-point serialization.
///
/// An 8-byte little-endian block scale `s = max |component|` is followed by
/// every real and imaginary component in index order, quantized to `p` bits
/// with a mid-rise quantizer over `[-s, s)` and packed MSB-first as two's
/// complement. Reconstruction error is at most `s·2^-p ≤ 2^-p`, plus f64
/// rounding once `p` exceeds the 53-bit mantissa.
pub fn serialize_amplitudes(amps: &[Complex64], precision_bits: u32) -> Result<Vec<u8>, QuantumError> {
    check_precision(precision_bits)?;
    let scale = amps
        .iter()
        .flat_map(|a| [a.re.abs(), a.im.abs()])
        .fold(0.0f64, f64::max);
    let half = 2f64.powi(precision_bits as i32 - 1);
    let (lo, hi) = (-(half as i128), half as i128 - 1);
    let mut w = BitWriter::with_capacity(HEADER_BYTES * 8 + 2 * amps.len() * precision_bits as usize);
    for b in scale.to_le_bytes() {
        w.push(b as u64, 8);
    }
    for x in amps.iter().flat_map(|a| [a.re, a.im]) {
        let q = if scale > 0.0 {
            ((x / scale * half).floor() as i128).clamp(lo, hi)
        } else {
            0
        };
        w.push(q as i64 as u64, precision_bits);
    }
    Ok(w.finish())
}

/// Inverse of [`serialize_amplitudes`] for `len` amplitudes.
pub fn decode_amplitudes(bytes: &[u8], len: usize, precision_bits: u32) -> Result<Vec<Complex64>, QuantumError> {
    check_precision(precision_bits)?;
    let need = HEADER_BYTES + (2 * len * precision_bits as usize).div_ceil(8);
    if bytes.len() < need {
        return Err(QuantumError::Compressor(format!(
            "serialization has {} bytes, need {need}",
            bytes.len()
        )));
    }
    let scale = f64::from_le_bytes(bytes[..HEADER_BYTES].try_into().expect("8-byte header"));
    let half = 2f64.powi(precision_bits as i32 - 1);
    let mut r = BitReader { bytes: &bytes[HEADER_BYTES..], pos: 0 };
    let shift = 64 - precision_bits;
    let mut component = || {
        let raw = r.take(precision_bits);
        let q = ((raw << shift) as i64) >> shift;
        (q as f64 + 0.5) / half * scale
    };
    Ok((0..len)
        .map(|_| {
            let re = component();
            let im = component();
            Complex64::new(re, im)
        })
        .collect())
}

fn deflate(bytes: &[u8]) -> Result<Vec<u8>, QuantumError> {
    let mut enc = DeflateEncoder::new(Vec::new(), Compression::best());
    enc.write_all(bytes).map_err(|e| QuantumError::Compressor(e.to_string()))?;
    enc.finish().map_err(|e| QuantumError::Compressor(e.to_string()))
}

/// Upper bound on `compressed_bits − raw_bits`: the scale header, byte
/// padding and worst-case stored-block framing.
pub fn max_overhead_bits(raw_bits: u64) -> u64 {
    let body = HEADER_BYTES as u64 + raw_bits.div_ceil(8);
    let blocks = body.div_ceil(65_535).max(1);
    8 * (body + 5 * blocks) + 8 - raw_bits
}

/// Description lengths of a register's canonical serialization.
///
/// `compressed_bits` is an upper bound on the algorithmic information of the
/// serialized string, not an estimate of it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityEstimate {
    pub raw_bits: u64,
    pub compressed_bits: u64,
    pub precision_bits: u32,
    pub compressor_id: String,
}

impl ComplexityEstimate {
    pub fn ratio(&self) -> f64 {
        self.compressed_bits as f64 / self.raw_bits as f64
    }
}

pub fn complexity_upper_bound(reg: &QubitRegister, precision_bits: u32) -> Result<ComplexityEstimate, QuantumError> {
    let bytes = serialize_amplitudes(reg.amplitudes(), precision_bits)?;
    let packed = deflate(&bytes)?;
    Ok(ComplexityEstimate {
        raw_bits: 2 * reg.amplitudes().len() as u64 * precision_bits as u64,
        compressed_bits: 8 * packed.len() as u64,
        precision_bits,
        compressor_id: COMPRESSOR_ID.to_string(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    WithinBound,
    ExceedsBound,
}

impl Verdict {
    fn from_exceeds(exceeds: bool) -> Self {
        if exceeds {
            Verdict::ExceedsBound
        } else {
            Verdict::WithinBound
        }
    }
}

/// Compressed description length against an area bound, in both the
/// `A/L_P²` and `A/(4L_P²)` normalizations. Margins are
/// `log10(bound) − log10(compressed_bits)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpecifiabilityCheck {
    pub compressed_bits: u64,
    pub bound: f64,
    pub verdict: Verdict,
    pub log10_margin: f64,
    pub bound_quarter: f64,
    pub verdict_quarter: Verdict,
    pub log10_margin_quarter: f64,
}

impl SpecifiabilityCheck {
    pub fn exceeds(&self) -> bool {
        self.verdict == Verdict::ExceedsBound
    }
}

/// Strict inequality: a description exactly at the bound is within it.
pub fn check_specifiability(
    est: &ComplexityEstimate,
    holo_area_m2: f64,
    k: &ConstantsSet,
) -> Result<SpecifiabilityCheck, QuantumError> {
    if !(holo_area_m2.is_finite() && holo_area_m2 > 0.0) {
        return Err(QuantumError::NonPositiveArea(holo_area_m2));
    }
    let lp = k.planck_length()?.value();
    let bound = holo_area_m2 / (lp * lp);
    let bound_quarter = bound / 4.0;
    let bits = est.compressed_bits as f64;
    let log_bits = bits.max(1.0).log10();
    Ok(SpecifiabilityCheck {
        compressed_bits: est.compressed_bits,
        bound,
        verdict: Verdict::from_exceeds(bits > bound),
        log10_margin: bound.log10() - log_bits,
        bound_quarter,
        verdict_quarter: Verdict::from_exceeds(bits > bound_quarter),
        log10_margin_quarter: bound_quarter.log10() - log_bits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::register::InitSpec;
    use proptest::prelude::*;

    fn estimate(bits: u64) -> ComplexityEstimate {
        ComplexityEstimate {
            raw_bits: bits,
            compressed_bits: bits,
            precision_bits: 16,
            compressor_id: COMPRESSOR_ID.into(),
        }
    }

    #[test]
    fn basis_state_compresses() {
        let r = QubitRegister::new(10, InitSpec::Basis(0)).unwrap();
        let e = complexity_upper_bound(&r, 16).unwrap();
        assert_eq!(e.raw_bits, 2 * 1024 * 16);
        assert!(e.ratio() < 0.1, "ratio {}", e.ratio());
    }

    #[test]
    fn random_state_does_not() {
        let r = QubitRegister::new(10, InitSpec::SeededRandom(7)).unwrap();
        for p in [8, 16, 32] {
            let e = complexity_upper_bound(&r, p).unwrap();
            assert!(e.ratio() > 0.9, "p={p} ratio {}", e.ratio());
            assert!(e.compressed_bits <= e.raw_bits + max_overhead_bits(e.raw_bits));
        }
    }

    #[test]
    fn raw_bits_linear_in_precision() {
        let r = QubitRegister::new(5, InitSpec::PiDigit).unwrap();
        for p in MIN_PRECISION_BITS..=MAX_PRECISION_BITS {
            assert_eq!(complexity_upper_bound(&r, p).unwrap().raw_bits, 2 * 32 * p as u64);
        }
    }

    #[test]
    fn precision_range() {
        let r = QubitRegister::new(2, InitSpec::Uniform).unwrap();
        assert_eq!(complexity_upper_bound(&r, 3), Err(QuantumError::PrecisionOutOfRange(3)));
        assert_eq!(complexity_upper_bound(&r, 65), Err(QuantumError::PrecisionOutOfRange(65)));
    }

    #[test]
    fn compression_is_reproducible() {
        let r = QubitRegister::new(9, InitSpec::SeededRandom(3)).unwrap();
        let a = deflate(&serialize_amplitudes(r.amplitudes(), 20).unwrap()).unwrap();
        let b = deflate(&serialize_amplitudes(r.amplitudes(), 20).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn precision_monotone_over_corpus() {
        let specs = [
            InitSpec::Basis(0),
            InitSpec::Basis(77),
            InitSpec::Uniform,
            InitSpec::PiDigit,
            InitSpec::SeededRandom(1),
            InitSpec::SeededRandom(2),
        ];
        let precisions = [4u32, 8, 12, 16, 24, 32, 48, 64];
        let mut totals = vec![0u64; precisions.len()];
        for spec in specs {
            let r = QubitRegister::new(8, spec).unwrap();
            for (t, &p) in totals.iter_mut().zip(&precisions) {
                *t += complexity_upper_bound(&r, p).unwrap().compressed_bits;
            }
        }
        assert!(totals.windows(2).all(|w| w[0] <= w[1]), "{totals:?}");
    }

    #[test]
    fn specifiability_boundaries() {
        let k = ConstantsSet::CODATA_2018;
        let lp2 = k.planck_length().unwrap().value().powi(2);
        assert!(check_specifiability(&estimate(2), lp2, &k).unwrap().exceeds());
        let at = check_specifiability(&estimate(8), 8.0 * lp2, &k).unwrap();
        assert_eq!(at.bound, 8.0);
        assert!(!at.exceeds());
        assert_eq!(at.verdict_quarter, Verdict::ExceedsBound);
        assert!(check_specifiability(&estimate(8), 0.0, &k).is_err());
    }

    #[test]
    fn desk_register_against_cosmic_area() {
        let k = ConstantsSet::CODATA_2018;
        let r = QubitRegister::new(10, InitSpec::SeededRandom(1)).unwrap();
        let e = complexity_upper_bound(&r, 64).unwrap();
        let c = check_specifiability(&e, 3e53, &k).unwrap();
        assert_eq!(c.verdict, Verdict::WithinBound);
        assert!((110.0..125.0).contains(&c.log10_margin), "{}", c.log10_margin);
    }

    proptest! {
        #[test]
        fn round_trip_within_quantum(seed in any::<u64>(), n in 1usize..7, p in MIN_PRECISION_BITS..=MAX_PRECISION_BITS) {
            let r = QubitRegister::new(n, InitSpec::SeededRandom(seed)).unwrap();
            let bytes = serialize_amplitudes(r.amplitudes(), p).unwrap();
            prop_assert_eq!(bytes.len(), HEADER_BYTES + (2 * (1usize << n) * p as usize).div_ceil(8));
            let back = decode_amplitudes(&bytes, 1 << n, p).unwrap();
            // Above 52 bits the grid is finer than f64 spacing near 1.
            let tol = 2f64.powi(-(p as i32)) + 2.0 * f64::EPSILON;
            for (a, b) in r.amplitudes().iter().zip(&back) {
                prop_assert!((a.re - b.re).abs() <= tol);
                prop_assert!((a.im - b.im).abs() <= tol);
            }
        }
    }
}
