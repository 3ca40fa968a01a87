//! Prime sieving and odd-set membership.
//!
//! An odd-even graph is determined by the set `O` of admissible odd numbers:
//! two even vertices `a`, `b` are adjacent iff `(a+b)/2` and `|a-b|/2` are
//! both odd members of `O`. [`OddSetSpec`] describes `O` for every family the
//! crate knows about, restricted to `1 ..= 2n-1`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bit-packed Eratosthenes sieve over `0 .. limit`.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    bits: Vec<u64>,
    odd_primes: Vec<u64>,
}

impl PrimeTable {
    pub fn new(limit: u64) -> Self {
        let words = (limit as usize).div_ceil(64);
        let mut bits = vec![!0u64; words];
        let clear = |bits: &mut [u64], i: u64| bits[(i / 64) as usize] &= !(1u64 << (i % 64));
        for i in 0..limit.min(2) {
            clear(&mut bits, i);
        }
        let mut i = 2u64;
        while i * i < limit {
            if bits[(i / 64) as usize] >> (i % 64) & 1 == 1 {
                let mut j = i * i;
                while j < limit {
                    clear(&mut bits, j);
                    j += i;
                }
            }
            i += 1;
        }
        // Mask the tail of the last word so popcounts stay honest.
        if limit % 64 != 0 {
            if let Some(last) = bits.last_mut() {
                *last &= (1u64 << (limit % 64)) - 1;
            }
        }
        let mut table = PrimeTable {
            limit,
            bits,
            odd_primes: Vec::new(),
        };
        table.odd_primes = (3..limit).step_by(2).filter(|&q| table.is_prime(q)).collect();
        table
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Primality of `q`; panics if `q >= limit`.
    pub fn is_prime(&self, q: u64) -> bool {
        assert!(q < self.limit, "{q} is outside the sieve limit {}", self.limit);
        self.bits[(q / 64) as usize] >> (q % 64) & 1 == 1
    }

    /// Odd primes below the limit, ascending.
    pub fn odd_primes(&self) -> &[u64] {
        &self.odd_primes
    }
}

/// The odd primes strictly below `limit`, ascending.
pub fn sieve_odd_primes(limit: u64) -> Vec<u64> {
    PrimeTable::new(limit).odd_primes
}

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    if q % 2 == 0 {
        return q == 2;
    }
    let mut d = 3u64;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn is_odd_prime(q: u64) -> bool {
    q % 2 == 1 && is_prime(q)
}

/// Number of unordered splits of an odd prime `p` into two positive parts.
pub fn eta(p: u64) -> Result<u64> {
    if !is_odd_prime(p) {
        return Err(Error::domain(format!("eta is defined for odd primes, got {p}")));
    }
    Ok((p - 1) / 2)
}

/// Which odd numbers an odd-even graph admits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OddSetKind {
    /// All odd numbers except non-trivial multiples `p*k`, `k > 1`.
    PrimeMultipleMissing(u64),
    /// Conjunction of [`OddSetKind::PrimeMultipleMissing`] over the listed primes.
    PrimeIntersection(Vec<u64>),
    /// Odd primes together with 1.
    NearGoldbach,
    /// Odd primes; the vertex set also contains 0.
    Goldbach,
    Explicit(BTreeSet<u64>),
}

impl OddSetKind {
    pub fn validate(&self) -> Result<()> {
        match self {
            OddSetKind::PrimeMultipleMissing(p) => {
                if !is_odd_prime(*p) {
                    return Err(Error::domain(format!("{p} is not an odd prime")));
                }
            }
            OddSetKind::PrimeIntersection(ps) => {
                if ps.is_empty() {
                    return Err(Error::domain("prime intersection needs at least one prime"));
                }
                if let Some(p) = ps.iter().find(|&&p| !is_odd_prime(p)) {
                    return Err(Error::domain(format!("{p} is not an odd prime")));
                }
                if ps.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::domain("prime list must be strictly ascending"));
                }
            }
            OddSetKind::Explicit(set) => {
                if let Some(y) = set.iter().find(|&&y| y % 2 == 0) {
                    return Err(Error::domain(format!("explicit odd set contains even {y}")));
                }
            }
            OddSetKind::NearGoldbach | OddSetKind::Goldbach => {}
        }
        Ok(())
    }

    /// The primes whose non-trivial multiples are excluded, for the
    /// prime-multiple families.
    pub fn excluded_primes(&self) -> Option<Vec<u64>> {
        match self {
            OddSetKind::PrimeMultipleMissing(p) => Some(vec![*p]),
            OddSetKind::PrimeIntersection(ps) => Some(ps.clone()),
            _ => None,
        }
    }

    pub fn includes_zero(&self) -> bool {
        matches!(self, OddSetKind::Goldbach)
    }

    /// Membership without range checks. `y` must be odd.
    fn admits(&self, y: u64) -> bool {
        match self {
            OddSetKind::PrimeMultipleMissing(p) => !(y % p == 0 && y != *p),
            OddSetKind::PrimeIntersection(ps) => ps.iter().all(|p| !(y % p == 0 && y != *p)),
            OddSetKind::NearGoldbach => y == 1 || is_prime(y),
            OddSetKind::Goldbach => y != 1 && is_prime(y),
            OddSetKind::Explicit(set) => set.contains(&y),
        }
    }
}

impl fmt::Display for OddSetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OddSetKind::PrimeMultipleMissing(p) => write!(f, "pmm{p}"),
            OddSetKind::PrimeIntersection(ps) if ps == &[3, 5] => f.write_str("g35"),
            OddSetKind::PrimeIntersection(ps) => {
                let list: Vec<String> = ps.iter().map(u64::to_string).collect();
                write!(f, "intersect:{}", list.join(","))
            }
            OddSetKind::NearGoldbach => f.write_str("near-goldbach"),
            OddSetKind::Goldbach => f.write_str("goldbach"),
            OddSetKind::Explicit(set) => {
                let list: Vec<String> = set.iter().map(u64::to_string).collect();
                write!(f, "explicit:{}", list.join(","))
            }
        }
    }
}

impl FromStr for OddSetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_list = |body: &str| -> Result<Vec<u64>> {
            body.split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::domain(format!("bad number {t:?} in kind {s:?}")))
                })
                .collect()
        };
        let kind = match s {
            "g35" => OddSetKind::PrimeIntersection(vec![3, 5]),
            "near-goldbach" | "near_goldbach" => OddSetKind::NearGoldbach,
            "goldbach" => OddSetKind::Goldbach,
            _ => {
                if let Some(body) = s.strip_prefix("intersect:") {
                    OddSetKind::PrimeIntersection(parse_list(body)?)
                } else if let Some(body) = s.strip_prefix("explicit:") {
                    OddSetKind::Explicit(parse_list(body)?.into_iter().collect())
                } else if let Some(p) = s.strip_prefix("pmm") {
                    let p = p
                        .parse::<u64>()
                        .map_err(|_| Error::domain(format!("unknown graph kind {s:?}")))?;
                    OddSetKind::PrimeMultipleMissing(p)
                } else {
                    return Err(Error::domain(format!("unknown graph kind {s:?}")));
                }
            }
        };
        kind.validate()?;
        Ok(kind)
    }
}

/// An odd set restricted to the range `1 ..= 2n-1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddSetSpec {
    kind: OddSetKind,
    n: u64,
}

impl OddSetSpec {
    pub fn new(kind: OddSetKind, n: u64) -> Result<Self> {
        kind.validate()?;
        if n == 0 {
            return Err(Error::domain("n must be positive"));
        }
        Ok(OddSetSpec { kind, n })
    }

    pub fn kind(&self) -> &OddSetKind {
        &self.kind
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Largest admissible odd value, `2n-1`.
    pub fn max_value(&self) -> u64 {
        2 * self.n - 1
    }

    pub fn contains(&self, y: u64) -> Result<bool> {
        if y % 2 == 0 || y == 0 || y > self.max_value() {
            return Err(Error::domain(format!(
                "{y} is not an odd number in 1..={}",
                self.max_value()
            )));
        }
        Ok(self.kind.admits(y))
    }

    /// Precomputed membership for every `y` in `0 ..= 2n-1`.
    pub fn table(&self) -> OddSetTable {
        let max = self.max_value();
        let mut allowed = vec![false; max as usize + 1];
        match &self.kind {
            OddSetKind::NearGoldbach | OddSetKind::Goldbach => {
                let primes = PrimeTable::new(max + 1);
                for &q in primes.odd_primes() {
                    allowed[q as usize] = true;
                }
                if self.kind == OddSetKind::NearGoldbach {
                    allowed[1] = true;
                }
            }
            kind => {
                for y in (1..=max).step_by(2) {
                    allowed[y as usize] = kind.admits(y);
                }
            }
        }
        OddSetTable { allowed }
    }
}

/// Flat membership lookup produced by [`OddSetSpec::table`].
#[derive(Debug, Clone)]
pub struct OddSetTable {
    allowed: Vec<bool>,
}

impl OddSetTable {
    /// False for anything even or out of range.
    #[inline]
    pub fn admits(&self, y: u64) -> bool {
        self.allowed.get(y as usize).copied().unwrap_or(false)
    }
}
