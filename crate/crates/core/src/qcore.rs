//! q-factorials, q-Pochhammer symbols at integer powers of q, Gaussian
//! binomials and their integer shadows.
//!
//! Gaussian binomials come from a process-wide [`QBinomTable`] filled by the
//! Pascal recurrence `[n k] = [n-1 k-1] + q^k [n-1 k]`. Rows are only ever
//! appended, so readers never observe a value change.

use std::io::{self, Read, Write};
use std::path::Path;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::LaurentPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("q-factorial of negative index {0}; use inv_qfac_is_zero for the vanishing convention")]
pub struct NegativeIndex(pub i64);

/// `(q)_n = (1-q)(1-q^2)...(1-q^n)`.
pub fn qfac(n: i64) -> Result<LaurentPoly, NegativeIndex> {
    if n < 0 {
        return Err(NegativeIndex(n));
    }
    Ok(qpoch(1, n as usize))
}

/// `1/(q)_n` vanishes exactly when `n < 0`.
///
/// Every summand builder consults this before touching a factorial so that
/// out-of-range terms drop out the same way everywhere.
pub fn inv_qfac_is_zero(n: i64) -> bool {
    n < 0
}

/// `(q^e; q)_k = prod_{i<k} (1 - q^(e+i))`.
pub fn qpoch(e: i64, k: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for i in 0..k as i64 {
        acc = acc.mul_one_minus_q_pow(e + i);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// Gaussian binomial `[n k]`, zero outside `0 <= k <= n`.
pub fn qbinom(n: i64, k: i64) -> LaurentPoly {
    (*QBinomTable::global().get(n, k)).clone()
}

/// Shared handle to a cached Gaussian binomial.
pub fn qbinom_ref(n: i64, k: i64) -> Arc<LaurentPoly> {
    QBinomTable::global().get(n, k)
}

/// Gaussian binomial by the product formula `prod (1-q^(n-k+i))/(1-q^i)`.
///
/// Independent of the Pascal table; used beyond the cached range and as a test oracle.
pub fn qbinom_product(n: i64, k: i64) -> LaurentPoly {
    if k < 0 || k > n {
        return LaurentPoly::zero();
    }
    let k = k.min(n - k);
    let mut acc = LaurentPoly::one();
    for i in 1..=k {
        acc = acc
            .mul_one_minus_q_pow(n - k + i)
            .div_one_minus_q_pow(i)
            .expect("partial Gaussian product is always a polynomial");
    }
    acc
}

/// Binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binom_int(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc = acc * BigInt::from(n - k + i) / BigInt::from(i);
    }
    acc
}

/// Integer factorial `n!`.
pub fn factorial(n: i64) -> BigInt {
    assert!(n >= 0, "factorial of negative index {n}");
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

type Row = Vec<Arc<LaurentPoly>>;

/// Append-only cache of Gaussian binomials, row `n` holding `[n k]` for `k <= n/2`.
pub struct QBinomTable {
    rows: RwLock<Vec<Row>>,
    max_rows: usize,
}

/// Rows beyond this index are computed on demand and not retained.
pub const DEFAULT_TABLE_ROWS: usize = 72;

impl QBinomTable {
    pub fn new(max_rows: usize) -> Self {
        Self {
            rows: RwLock::new(vec![vec![Arc::new(LaurentPoly::one())]]),
            max_rows: max_rows.max(1),
        }
    }

    /// The process-wide table used by [`qbinom`].
    pub fn global() -> &'static QBinomTable {
        static TABLE: OnceLock<QBinomTable> = OnceLock::new();
        TABLE.get_or_init(|| QBinomTable::new(DEFAULT_TABLE_ROWS))
    }

    /// Number of complete rows currently cached.
    pub fn rows(&self) -> usize {
        self.rows.read().unwrap().len()
    }

    /// Fills rows `0..=n` (capped at the table bound) ahead of a parallel sweep.
    pub fn prefill(&self, n: usize) {
        let n = n.min(self.max_rows - 1);
        if self.rows() > n {
            return;
        }
        let mut rows = self.rows.write().unwrap();
        while rows.len() <= n {
            let next = pascal_row(&rows);
            rows.push(next);
        }
    }

    pub fn get(&self, n: i64, k: i64) -> Arc<LaurentPoly> {
        if k < 0 || k > n {
            return Arc::new(LaurentPoly::zero());
        }
        let k = k.min(n - k) as usize;
        let n = n as usize;
        if n >= self.max_rows {
            return Arc::new(qbinom_product(n as i64, k as i64));
        }
        {
            let rows = self.rows.read().unwrap();
            if let Some(row) = rows.get(n) {
                return row[k].clone();
            }
        }
        self.prefill(n);
        self.rows.read().unwrap()[n][k].clone()
    }

    /// Writes complete cached rows to `w` (see [`load_cache`](Self::load_cache) for the format).
    pub fn save_cache<W: Write>(&self, mut w: W) -> io::Result<()> {
        let rows = self.rows.read().unwrap();
        w.write_all(CACHE_MAGIC)?;
        w.write_all(&CACHE_VERSION.to_le_bytes())?;
        w.write_all(&(rows.len() as u32).to_le_bytes())?;
        for (n, row) in rows.iter().enumerate() {
            for (k, poly) in row.iter().enumerate() {
                w.write_all(&(n as u32).to_le_bytes())?;
                w.write_all(&(k as u32).to_le_bytes())?;
                w.write_all(&(poly.coeffs().len() as u32).to_le_bytes())?;
                for c in poly.coeffs() {
                    let bytes = c.to_signed_bytes_le();
                    w.write_all(&(bytes.len() as u32).to_le_bytes())?;
                    w.write_all(&bytes)?;
                }
            }
        }
        Ok(())
    }

    /// Seeds the table from a cache file.
    ///
    /// Format: magic `QSUMQBIN`, `u32` version, `u32` row count, then for every
    /// `n < rows` and `k <= n/2` a record `(u32 n, u32 k, u32 len, len x
    /// (u32 byte-length, signed little-endian bytes))` holding the coefficients
    /// of `q^0..q^(len-1)`. All integers little-endian.
    ///
    /// Nothing is trusted: every record must sit in row-major order and pass
    /// the degree, palindromy and `q = 1` checks, or the whole file is rejected
    /// and the table is left untouched. Returns the number of rows loaded.
    pub fn load_cache<R: Read>(&self, mut r: R) -> Result<usize, CacheError> {
        let mut buf = Vec::new();
        r.read_to_end(&mut buf).map_err(|e| CacheError::Corrupt(e.to_string()))?;
        let mut cur = Cursor { buf: &buf, pos: 0 };
        if cur.take(CACHE_MAGIC.len())? != CACHE_MAGIC {
            return Err(CacheError::Corrupt("bad magic".into()));
        }
        let version = cur.u32()?;
        if version != CACHE_VERSION {
            return Err(CacheError::Version(version));
        }
        let nrows = (cur.u32()? as usize).min(self.max_rows);
        let mut loaded: Vec<Row> = Vec::with_capacity(nrows);
        for n in 0..nrows {
            let mut row = Row::with_capacity(n / 2 + 1);
            for k in 0..=n / 2 {
                let (rn, rk) = (cur.u32()? as usize, cur.u32()? as usize);
                if rn != n || rk != k {
                    return Err(CacheError::Corrupt(format!("record ({rn},{rk}) out of order")));
                }
                let len = cur.u32()? as usize;
                if len != k * (n - k) + 1 {
                    return Err(CacheError::Corrupt(format!("wrong degree at ({n},{k})")));
                }
                let mut coeffs = Vec::with_capacity(len);
                for _ in 0..len {
                    let blen = cur.u32()? as usize;
                    coeffs.push(BigInt::from_signed_bytes_le(cur.take(blen)?));
                }
                let poly = LaurentPoly::from_coeffs(0, coeffs);
                let deg = (k * (n - k)) as i64;
                if poly.max_exp() != Some(deg)
                    || poly.reciprocal(deg) != poly
                    || !poly.is_nonneg()
                    || poly.eval_at_one() != binom_int(n as i64, k as i64)
                {
                    return Err(CacheError::Corrupt(format!("bad entry at ({n},{k})")));
                }
                row.push(Arc::new(poly));
            }
            loaded.push(row);
        }
        let mut rows = self.rows.write().unwrap();
        if loaded.len() > rows.len() {
            let start = rows.len();
            rows.extend(loaded.into_iter().skip(start));
        }
        Ok(rows.len())
    }

    pub fn save_cache_file(&self, path: &Path) -> io::Result<()> {
        let file = std::fs::File::create(path)?;
        self.save_cache(io::BufWriter::new(file))
    }

    pub fn load_cache_file(&self, path: &Path) -> Result<usize, CacheError> {
        let file = std::fs::File::open(path).map_err(|e| CacheError::Corrupt(e.to_string()))?;
        self.load_cache(io::BufReader::new(file))
    }
}

const CACHE_MAGIC: &[u8] = b"QSUMQBIN";
const CACHE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CacheError {
    #[error("corrupt q-binomial cache: {0}")]
    Corrupt(String),
    #[error("unsupported q-binomial cache version {0}")]
    Version(u32),
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], CacheError> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.buf.len());
        let end = end.ok_or_else(|| CacheError::Corrupt("truncated".into()))?;
        let out = &self.buf[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u32(&mut self) -> Result<u32, CacheError> {
        let b = self.take(4)?;
        Ok(u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
    }
}

fn pascal_row(rows: &[Row]) -> Row {
    let n = rows.len();
    let prev = &rows[n - 1];
    let lookup = |k: usize| -> &LaurentPoly {
        let k = k.min(n - 1 - k);
        &prev[k]
    };
    (0..=n / 2)
        .map(|k| {
            if k == 0 {
                return Arc::new(LaurentPoly::one());
            }
            // [n k] = [n-1 k-1] + q^k [n-1 k]
            let mut v = lookup(k - 1).clone();
            if k <= n - 1 {
                v += &lookup(k).clone().shift(k as i64);
            }
            Arc::new(v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64s(0, c)
    }

    #[test]
    fn factorials() {
        assert_eq!(qfac(0).unwrap(), LaurentPoly::one());
        assert_eq!(qfac(1).unwrap(), p(&[1, -1]));
        // (1-q)(1-q^2)(1-q^3) expanded by hand
        assert_eq!(qfac(3).unwrap(), p(&[1, -1, -1, 0, 1, 1, -1]));
        assert_eq!(qfac(-1), Err(NegativeIndex(-1)));
    }

    #[test]
    fn vanishing_convention() {
        assert!(inv_qfac_is_zero(-1));
        assert!(!inv_qfac_is_zero(0));
        assert!(!inv_qfac_is_zero(5));
    }

    #[test]
    fn pochhammer() {
        for n in 0..6 {
            assert_eq!(qpoch(1, n as usize), qfac(n).unwrap());
        }
        assert!(qpoch(-2, 3).is_zero());
        assert_eq!(qpoch(-1, 1), LaurentPoly::one_minus_q_pow(-1));
        assert_eq!(qpoch(4, 0), LaurentPoly::one());
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(qbinom(2, 1), p(&[1, 1]));
        assert_eq!(qbinom(4, 2), p(&[1, 1, 2, 1, 1]));
        assert!(qbinom(3, 5).is_zero());
        assert!(qbinom(3, -1).is_zero());
        assert!(qbinom(-2, 1).is_zero());
        assert_eq!(qbinom(0, 0), LaurentPoly::one());
    }

    #[test]
    fn beyond_table_uses_product_route() {
        let small = QBinomTable::new(4);
        assert_eq!(*small.get(9, 4), qbinom_product(9, 4));
        assert_eq!(small.rows(), 1);
        assert_eq!(*small.get(3, 1), p(&[1, 1, 1]));
        assert_eq!(small.rows(), 4);
    }

    #[test]
    fn integer_binomials() {
        assert_eq!(binom_int(4, 2), BigInt::from(6));
        assert_eq!(binom_int(6, 3), BigInt::from(20));
        assert_eq!(binom_int(5, -1), BigInt::zero());
        assert_eq!(binom_int(3, 4), BigInt::zero());
        assert_eq!(factorial(5), BigInt::from(120));
    }

    #[test]
    fn cache_roundtrip_and_rejection() {
        let table = QBinomTable::new(16);
        table.prefill(10);
        let mut bytes = Vec::new();
        table.save_cache(&mut bytes).unwrap();

        let fresh = QBinomTable::new(16);
        assert_eq!(fresh.load_cache(bytes.as_slice()).unwrap(), 11);
        for n in 0..=10 {
            for k in 0..=n {
                assert_eq!(fresh.get(n, k), table.get(n, k));
            }
        }

        let mut bad = bytes.clone();
        let last = bad.len() - 1;
        bad[last] ^= 0x01;
        let fresh = QBinomTable::new(16);
        assert!(fresh.load_cache(bad.as_slice()).is_err());
        assert_eq!(fresh.rows(), 1);

        assert!(matches!(
            fresh.load_cache(&bytes[..bytes.len() / 2]),
            Err(CacheError::Corrupt(_))
        ));
        let mut wrong_version = bytes.clone();
        wrong_version[8] = 9;
        assert_eq!(fresh.load_cache(wrong_version.as_slice()), Err(CacheError::Version(9)));
    }
}
