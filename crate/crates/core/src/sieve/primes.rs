//! Smallest-prime-factor sieve with a binary on-disk cache.

use std::io::{Read, Write};
use std::path::Path;

use super::SieveError;

const CACHE_MAGIC: &[u8; 4] = b"SPFT";
const CACHE_VERSION: u32 = 1;

/// Primes and smallest prime factors up to a fixed limit.
pub struct PrimeTable {
    limit: u64,
    /// `spf[n]` is the smallest prime factor of `n` for `2 <= n <= limit`;
    /// entries 0 and 1 are unused zeros.
    spf: Vec<u32>,
    primes: Vec<u64>,
}

impl PrimeTable {
    /// Linear sieve: every composite is crossed out exactly once by its
    /// smallest prime factor.
    pub fn build(limit: u64) -> Result<Self, SieveError> {
        if limit < 2 {
            return Err(SieveError::LimitTooSmall(limit));
        }
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes: Vec<u64> = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u64);
            }
            for &p in &primes {
                let p = p as usize;
                if p > spf[i] as usize || i * p > n {
                    break;
                }
                spf[i * p] = p as u32;
            }
        }
        Ok(PrimeTable { limit, spf, primes })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && n <= self.limit && self.spf[n as usize] as u64 == n
    }

    pub fn smallest_factor(&self, n: u64) -> Result<u64, SieveError> {
        if n < 2 || n > self.limit {
            return Err(SieveError::FactorizationRangeExceeded {
                value: n,
                limit: self.limit,
            });
        }
        Ok(self.spf[n as usize] as u64)
    }

    /// Distinct prime divisors in increasing order.
    pub fn distinct_prime_factors(&self, mut n: u64) -> Result<Vec<u64>, SieveError> {
        if n < 1 || n > self.limit {
            return Err(SieveError::FactorizationRangeExceeded {
                value: n,
                limit: self.limit,
            });
        }
        let mut out = Vec::new();
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        Ok(out)
    }

    /// Count of primes up to `x`.
    pub fn count_up_to(&self, x: u64) -> usize {
        self.primes.partition_point(|&p| p <= x)
    }

    pub fn write_to(&self, path: &Path) -> Result<(), SieveError> {
        let mut buf = Vec::with_capacity(16 + self.spf.len() * 4);
        buf.extend_from_slice(CACHE_MAGIC);
        buf.extend_from_slice(&CACHE_VERSION.to_le_bytes());
        buf.extend_from_slice(&self.limit.to_le_bytes());
        for &v in &self.spf {
            buf.extend_from_slice(&v.to_le_bytes());
        }
        let mut f = std::fs::File::create(path).map_err(|e| SieveError::Io(e.to_string()))?;
        f.write_all(&buf).map_err(|e| SieveError::Io(e.to_string()))
    }

    pub fn read_from(path: &Path) -> Result<Self, SieveError> {
        let mut f = std::fs::File::open(path).map_err(|e| SieveError::Io(e.to_string()))?;
        let mut header = [0u8; 16];
        f.read_exact(&mut header)
            .map_err(|e| SieveError::Io(e.to_string()))?;
        if &header[0..4] != CACHE_MAGIC {
            return Err(SieveError::CacheFormat("bad magic".into()));
        }
        let version = u32::from_le_bytes(header[4..8].try_into().unwrap());
        if version != CACHE_VERSION {
            return Err(SieveError::CacheFormat(format!(
                "unsupported version {}",
                version
            )));
        }
        let limit = u64::from_le_bytes(header[8..16].try_into().unwrap());
        let n = limit as usize;
        let mut raw = Vec::new();
        f.read_to_end(&mut raw)
            .map_err(|e| SieveError::Io(e.to_string()))?;
        if raw.len() != (n + 1) * 4 {
            return Err(SieveError::CacheFormat(format!(
                "payload length {} does not match limit {}",
                raw.len(),
                limit
            )));
        }
        let spf: Vec<u32> = raw
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
            .collect();
        let primes = (2..=n)
            .filter(|&i| spf[i] as usize == i)
            .map(|i| i as u64)
            .collect();
        Ok(PrimeTable { limit, spf, primes })
    }

    /// Loads the cache when present and valid for `limit`, otherwise
    /// builds and writes it.
    pub fn cached(limit: u64, path: &Path) -> Result<Self, SieveError> {
        if path.exists() {
            if let Ok(t) = Self::read_from(path) {
                if t.limit == limit {
                    return Ok(t);
                }
            }
        }
        let t = Self::build(limit)?;
        t.write_to(path)?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let t = PrimeTable::build(10).unwrap();
        assert_eq!(t.primes(), &[2, 3, 5, 7]);
        let t2 = PrimeTable::build(2).unwrap();
        assert_eq!(t2.primes(), &[2]);
        assert!(PrimeTable::build(1).is_err());
    }

    #[test]
    fn prime_count_matches_trial_division() {
        let t = PrimeTable::build(10_000).unwrap();
        // Independent oracle: trial division.
        let mut count = 0;
        for n in 2u64..=10_000 {
            let mut is_p = true;
            let mut d = 2;
            while d * d <= n {
                if n % d == 0 {
                    is_p = false;
                    break;
                }
                d += 1;
            }
            if is_p {
                count += 1;
                assert!(t.is_prime(n), "{} should be prime", n);
            } else {
                assert!(!t.is_prime(n), "{} should be composite", n);
            }
        }
        assert_eq!(count, 1229);
        assert_eq!(t.primes().len(), 1229);
    }

    #[test]
    fn spf_divides_and_is_prime() {
        let t = PrimeTable::build(5000).unwrap();
        for n in 2u64..=5000 {
            let p = t.smallest_factor(n).unwrap();
            assert_eq!(n % p, 0);
            assert!(t.is_prime(p));
        }
    }

    #[test]
    fn factorization_out_of_range_errors() {
        let t = PrimeTable::build(100).unwrap();
        assert!(matches!(
            t.distinct_prime_factors(101),
            Err(SieveError::FactorizationRangeExceeded { .. })
        ));
    }

    #[test]
    fn cache_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("spf.bin");
        let t = PrimeTable::build(1000).unwrap();
        t.write_to(&path).unwrap();
        let t2 = PrimeTable::read_from(&path).unwrap();
        assert_eq!(t.primes(), t2.primes());
        assert_eq!(t2.smallest_factor(999).unwrap(), 3);
        // cached() accepts the file for the same limit.
        let t3 = PrimeTable::cached(1000, &path).unwrap();
        assert_eq!(t3.primes().len(), t.primes().len());
    }
}
