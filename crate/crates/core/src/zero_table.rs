//! Tables of Riemann zero ordinates: ingestion, validation, binary caching.
//!
//! A [`ZeroTable`] holds the positive ordinates `gamma_i` of nontrivial zeros
//! `rho = 1/2 + i*gamma` in strictly increasing order, together with the
//! operator-declared per-ordinate accuracy `epsilon` and aggregates reused by
//! the error bounds (`sum 1/gamma_i`, `gamma_max`). Tables are immutable after
//! construction and safe to share across threads.

use std::io::{BufRead, Read, Write};

use crate::error::{Error, Result};
use crate::sum::compensated_sum;

const MAGIC: &[u8; 4] = b"ZTBL";
const FORMAT_VERSION: u32 = 1;

/// First zero ordinate, to the accuracy relevant for table validation.
pub const FIRST_ZERO: f64 = 14.134725;

/// Validated ascending table of positive zero ordinates.
#[derive(Debug, Clone)]
pub struct ZeroTable {
    gammas: Vec<f64>,
    epsilon: f64,
    reciprocal_sum: f64,
}

/// Identifies a table inside certificates: CRC-32 of its cache image plus N.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct TableFingerprint {
    pub crc32: u32,
    pub n: u64,
}

impl ZeroTable {
    /// Builds a table from raw ordinates, enforcing every invariant:
    /// strictly increasing, all `> 14`, and a first entry near 14.134725
    /// whenever the table starts low enough to claim the first zero.
    pub fn from_gammas(gammas: Vec<f64>, epsilon: f64) -> Result<Self> {
        if !(epsilon >= 0.0) {
            return Err(Error::Argument(format!(
                "epsilon must be >= 0, got {epsilon}"
            )));
        }
        for (i, &g) in gammas.iter().enumerate() {
            if !g.is_finite() || g <= 14.0 {
                return Err(Error::Validation {
                    index: i + 1,
                    msg: format!("ordinate {g} is not > 14"),
                });
            }
            if i > 0 && g <= gammas[i - 1] {
                return Err(Error::Validation {
                    index: i + 1,
                    msg: format!(
                        "ordinates not strictly increasing: {} then {}",
                        gammas[i - 1],
                        g
                    ),
                });
            }
        }
        // A table whose first entry lies below the second zero claims to start
        // at the first zero; hold it to the known value.
        if let Some(&g1) = gammas.first() {
            if g1 < 20.0 && (g1 - FIRST_ZERO).abs() > 1e-3 {
                return Err(Error::Validation {
                    index: 1,
                    msg: format!("first ordinate {g1} not within 1e-3 of {FIRST_ZERO}"),
                });
            }
        }
        let reciprocal_sum = compensated_sum(gammas.iter().map(|g| 1.0 / g));
        Ok(Self {
            gammas,
            epsilon,
            reciprocal_sum,
        })
    }

    /// Parses whitespace-separated decimal ordinates. Lines starting with `#`
    /// are comments. Fails with the 1-based line number on non-numeric tokens.
    pub fn parse<R: BufRead>(reader: R, epsilon: f64) -> Result<Self> {
        let mut gammas = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            for tok in line.split_whitespace() {
                let v: f64 = tok.parse().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    msg: format!("non-numeric token {tok:?}"),
                })?;
                gammas.push(v);
            }
        }
        Self::from_gammas(gammas, epsilon)
    }

    pub fn count(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Largest ordinate; 0 for an empty table.
    pub fn gamma_max(&self) -> f64 {
        self.gammas.last().copied().unwrap_or(0.0)
    }

    /// Cached compensated `sum of 1/gamma_i` over the whole table.
    pub fn reciprocal_sum(&self) -> f64 {
        self.reciprocal_sum
    }

    /// Number of ordinates `<= t_height` (the table is sorted).
    pub fn prefix_len(&self, t_height: f64) -> usize {
        self.gammas.partition_point(|&g| g <= t_height)
    }

    /// Sub-table of the first `k` ordinates, sharing epsilon.
    pub fn prefix(&self, k: usize) -> Result<Self> {
        let k = k.min(self.gammas.len());
        Self::from_gammas(self.gammas[..k].to_vec(), self.epsilon)
    }

    /// Streams the payload bytes (everything before the checksum) into `f`.
    fn payload<E>(&self, mut f: impl FnMut(&[u8]) -> std::result::Result<(), E>) -> std::result::Result<(), E> {
        f(MAGIC)?;
        f(&FORMAT_VERSION.to_le_bytes())?;
        f(&(self.gammas.len() as u64).to_le_bytes())?;
        f(&self.epsilon.to_le_bytes())?;
        f(&self.reciprocal_sum.to_le_bytes())?;
        for g in &self.gammas {
            f(&g.to_le_bytes())?;
        }
        Ok(())
    }

    /// CRC-32 (IEEE) of the cache payload.
    fn payload_crc(&self) -> u32 {
        let mut hasher = crc32fast::Hasher::new();
        self.payload::<std::convert::Infallible>(|bytes| {
            hasher.update(bytes);
            Ok(())
        })
        .unwrap();
        hasher.finalize()
    }

    /// Serializes to the binary cache layout (little-endian):
    /// magic `ZTBL`, version u32, count u64, epsilon f64, reciprocal_sum f64,
    /// count x f64 ordinates, then CRC-32 (IEEE) of all preceding bytes.
    pub fn write_cache<W: Write>(&self, mut sink: W) -> Result<()> {
        self.payload(|bytes| sink.write_all(bytes))?;
        sink.write_all(&self.payload_crc().to_le_bytes())?;
        Ok(())
    }

    /// Reads a binary cache, verifying magic, version, length, checksum, and
    /// that the stored aggregates match a recomputation from the ordinates.
    pub fn read_cache<R: Read>(mut source: R) -> Result<Self> {
        let mut hasher = crc32fast::Hasher::new();
        let mut take = |source: &mut R, buf: &mut [u8]| -> Result<()> {
            source.read_exact(buf).map_err(|e| {
                if e.kind() == std::io::ErrorKind::UnexpectedEof {
                    Error::Corruption("truncated cache".into())
                } else {
                    Error::Io(e)
                }
            })?;
            hasher.update(buf);
            Ok(())
        };

        let mut magic = [0u8; 4];
        take(&mut source, &mut magic)?;
        if &magic != MAGIC {
            return Err(Error::Format(format!("bad magic {magic:?}")));
        }
        let mut b4 = [0u8; 4];
        take(&mut source, &mut b4)?;
        let version = u32::from_le_bytes(b4);
        if version != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        let mut b8 = [0u8; 8];
        take(&mut source, &mut b8)?;
        let count = u64::from_le_bytes(b8) as usize;
        take(&mut source, &mut b8)?;
        let epsilon = f64::from_le_bytes(b8);
        take(&mut source, &mut b8)?;
        let stored_recip = f64::from_le_bytes(b8);

        let mut gammas = Vec::with_capacity(count);
        for _ in 0..count {
            take(&mut source, &mut b8)?;
            gammas.push(f64::from_le_bytes(b8));
        }
        let expected_crc = hasher.finalize();
        let mut crc_bytes = [0u8; 4];
        source.read_exact(&mut crc_bytes).map_err(|e| {
            if e.kind() == std::io::ErrorKind::UnexpectedEof {
                Error::Corruption("truncated cache (missing checksum)".into())
            } else {
                Error::Io(e)
            }
        })?;
        let stored_crc = u32::from_le_bytes(crc_bytes);
        if stored_crc != expected_crc {
            return Err(Error::Corruption(format!(
                "checksum mismatch: stored {stored_crc:#010x}, computed {expected_crc:#010x}"
            )));
        }

        let table = Self::from_gammas(gammas, epsilon)?;
        if table.reciprocal_sum.to_bits() != stored_recip.to_bits() {
            return Err(Error::Corruption(format!(
                "stored reciprocal_sum {stored_recip:e} does not match recomputed {:e}",
                table.reciprocal_sum
            )));
        }
        Ok(table)
    }

    /// The cache CRC-32 plus N; identifies the table in certificates.
    pub fn fingerprint(&self) -> TableFingerprint {
        TableFingerprint {
            crc32: self.payload_crc(),
            n: self.gammas.len() as u64,
        }
    }
}
