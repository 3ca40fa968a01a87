use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::GraphSpec;
use crate::hamilton::fixtures::builtin_fixtures;
use crate::hamilton::{Family, HamCertificate};

fn require_even(n: u64) -> Result<()> {
    if n % 2 == 1 || n < 4 {
        return Err(Error::domain(format!("Hamiltonian cycles are built for even n >= 4, got {n}")));
    }
    Ok(())
}

fn ordered(a: u64, b: u64, forward: bool) -> [u64; 2] {
    if forward {
        [a, b]
    } else {
        [b, a]
    }
}

/// `G(3,n)`: pairs of path vertices `x_i = 6i-4` (then `y_i = 6i-2`),
/// alternately reversed, interleaved with multiples of 6 from `V1 ∪ V2`.
pub fn ham_cycle_g3(n: u64) -> Result<HamCertificate> {
    require_even(n)?;
    let x = |i: u64| 6 * i - 4;
    let y = |i: u64| 6 * i - 2;
    let mut seq = Vec::with_capacity(n as usize);
    match n % 6 {
        0 => {
            let k = n / 6;
            for j in 1..=k {
                seq.extend(ordered(x(2 * j - 1), x(2 * j), j % 2 == 1));
                seq.push(6 * j);
            }
            for j in (1..=k).rev() {
                seq.extend(ordered(y(2 * j - 1), y(2 * j), j % 2 == 1));
                seq.push(6 * (2 * k - j + 1));
            }
        }
        2 => {
            let k = (n - 2) / 6;
            seq.push(x(1));
            for t in 1..=k {
                seq.extend(ordered(x(2 * t), x(2 * t + 1), t % 2 == 1));
                seq.push(if t % 2 == 1 { 6 * (t + 1) } else { 6 * (t - 1) });
            }
            for s in (1..=k).rev() {
                seq.extend(ordered(y(2 * s), y(2 * s + 1), s % 2 == 1));
                let j = 2 * k - s;
                seq.push(if j % 2 == 1 { 6 * j } else { 6 * (j + 2) });
            }
            seq.push(y(1));
        }
        _ => {
            let k = (n - 4) / 6;
            for j in 1..=k + 1 {
                seq.extend(ordered(x(2 * j - 1), x(2 * j), j % 2 == 1));
                seq.push(6 * j);
            }
            for s in (1..=k).rev() {
                seq.extend(ordered(y(2 * s), y(2 * s + 1), s % 2 == 1));
                seq.push(6 * (2 * k + 2 - s));
            }
            seq.push(y(1));
        }
    }
    Ok(HamCertificate::new(GraphSpec::pmm(3, n)?, seq, true))
}

/// `G(5,n)`: base cycles up to `n = 18`; beyond that `2, ..., 14` followed by
/// blocks of five consecutive even numbers, every other block reversed, and a
/// closing splice chosen by `n mod 10`.
pub fn ham_cycle_g5(n: u64) -> Result<HamCertificate> {
    require_even(n)?;
    let spec = GraphSpec::pmm(5, n)?;
    if n <= 18 {
        let seq = builtin_fixtures()
            .get(Family::G5, n)
            .ok_or_else(|| Error::Consistency(format!("no base cycle for G(5,{n})")))?
            .to_vec();
        return Ok(HamCertificate::new(spec, seq, true));
    }
    let (m, i) = (n / 10, n % 10);
    let mut seq: Vec<u64> = (1..=7).map(|k| 2 * k).collect();
    let last_block = if i == 8 { 2 * m - 2 } else { 2 * m - 3 };
    for k in 0..=last_block {
        let block = (0..5).map(|t| 16 + 10 * k + 2 * t);
        if k % 2 == 0 {
            seq.extend(block.rev());
        } else {
            seq.extend(block);
        }
    }
    let b = 20 * m;
    let tail: &[u64] = match i {
        0 => &[b, b - 2, b - 4],
        2 => &[b + 4, b + 2, b, b - 2, b - 4],
        4 => &[b + 4, b + 2, b, b - 2, b + 8, b + 6, b - 4],
        6 => &[b + 4, b + 2, b + 12, b + 10, b + 8, b + 6, b - 4, b - 2, b],
        _ => &[b + 6, b + 8, b + 14, b + 12, b + 10, b + 16],
    };
    seq.extend_from_slice(tail);
    Ok(HamCertificate::new(spec, seq, true))
}

/// A `G(3,5,m)` cycle written as four consecutive pieces. The last element
/// of `p4` repeats the first element of `p1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct G35Parts {
    pub p1: Vec<u64>,
    pub p2: Vec<u64>,
    pub p3: Vec<u64>,
    pub p4: Vec<u64>,
}

impl G35Parts {
    /// The closed walk `p1, p2, p3, p4`, ending on the start vertex.
    pub fn closed_sequence(&self) -> Vec<u64> {
        [&self.p1, &self.p2, &self.p3, &self.p4].into_iter().flatten().copied().collect()
    }

    /// The cycle without the repeated start vertex.
    pub fn cycle(&self) -> Vec<u64> {
        let mut seq = self.closed_sequence();
        seq.pop();
        seq
    }
}

/// Fixed ends of the split of a `G(3,5,m)` cycle, `46 <= m <= 74`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct G35Split {
    pub p1: &'static [u64],
    pub p4: &'static [u64],
}

pub fn g35_split(m: u64) -> Option<G35Split> {
    let (p1, p4): (&'static [u64], &'static [u64]) = match m {
        46 => (&[4, 10, 24], &[8, 2, 4]),
        48 | 72 => (&[4, 10, 12], &[2, 8, 18, 4]),
        50 => (&[4, 10, 16, 22, 12], &[6, 20, 14, 8, 2, 4]),
        52 | 54 => (&[4, 10, 12], &[18, 8, 2, 4]),
        56 => (&[4, 10, 12], &[6, 8, 2, 4]),
        58 | 62 | 64 | 66 | 68 | 70 => (&[4, 10, 12], &[8, 2, 4]),
        60 | 74 => (&[4, 10, 12], &[2, 8, 6, 4]),
        _ => return None,
    };
    Some(G35Split { p1, p4 })
}

/// Splits a `G(3,5,m)` cycle (start vertex not repeated) by the split table.
pub fn split_g35_cycle(m: u64, cycle: &[u64]) -> Result<G35Parts> {
    let split = g35_split(m).ok_or_else(|| Error::domain(format!("no split defined for m = {m}")))?;
    let mut closed = cycle.to_vec();
    closed.push(*cycle.first().ok_or_else(|| Error::domain("empty cycle"))?);
    let (a, d) = (split.p1.len(), split.p4.len());
    if closed.len() < a + 30 + d || &closed[..a] != split.p1 || &closed[closed.len() - d..] != split.p4 {
        return Err(Error::Consistency(format!("cycle for m = {m} does not match its split")));
    }
    Ok(G35Parts {
        p1: closed[..a].to_vec(),
        p2: closed[a..a + 30].to_vec(),
        p3: closed[a + 30..closed.len() - d].to_vec(),
        p4: closed[closed.len() - d..].to_vec(),
    })
}

/// Each step replaces `p3` by `(p2, p3) + 60`, turning a cycle of
/// `G(3,5,m)` into one of `G(3,5,m+30)`.
pub fn extend_g35_parts(parts: &G35Parts, steps: u64) -> Result<G35Parts> {
    if parts.p2.len() != 30 {
        return Err(Error::Consistency(format!("P2 has {} vertices, expected 30", parts.p2.len())));
    }
    let mut out = parts.clone();
    for _ in 0..steps {
        out.p3 = out.p2.iter().chain(&out.p3).map(|v| v + 60).collect();
    }
    Ok(out)
}

/// `G(3,5,n)`: equal to `G(3,n)` up to `n = 12`, tabulated for
/// `14 <= n <= 74`, and extended by steps of 30 beyond that.
pub fn ham_cycle_g35(n: u64) -> Result<HamCertificate> {
    require_even(n)?;
    let spec = GraphSpec::intersection(&[3, 5], n)?;
    let fixtures = builtin_fixtures();
    let seq = if n <= 12 {
        ham_cycle_g3(n)?.sequence
    } else if n <= 74 {
        fixtures
            .get(Family::G35, n)
            .ok_or_else(|| Error::Consistency(format!("no tabulated cycle for G(3,5,{n})")))?
            .to_vec()
    } else {
        let m = 46 + (n - 46) % 30;
        let base = fixtures
            .get(Family::G35, m)
            .ok_or_else(|| Error::Consistency(format!("no tabulated cycle for G(3,5,{m})")))?;
        let parts = split_g35_cycle(m, base)?;
        extend_g35_parts(&parts, (n - m) / 30)?.cycle()
    };
    Ok(HamCertificate::new(spec, seq, true))
}
