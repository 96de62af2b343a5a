//! Brute-force coloring counts by backtracking, independent of the
//! polynomial machinery.

use num_bigint::BigInt;

use super::EngineError;
use crate::graph::{Bits, Graph};

/// Largest `n * log2(t)` the oracle accepts.
pub const ORACLE_BIT_BUDGET: f64 = 40.0;

/// Number of maps `V -> {1..t}` with adjacent vertices colored differently.
/// Vertices are assigned in id order; the last vertex contributes its count
/// of free colors directly.
pub fn brute_force_count(g: &Graph, t: u32) -> Result<BigInt, EngineError> {
    let n = g.order();
    if n == 0 {
        return Ok(BigInt::from(1));
    }
    if t == 0 {
        return Ok(BigInt::from(0));
    }
    if t > 63 {
        return Err(EngineError::OracleTooLarge { order: n, colors: t });
    }
    let bits = n as f64 * (t as f64).log2();
    if bits > ORACLE_BIT_BUDGET {
        return Err(EngineError::OracleTooLarge { order: n, colors: t });
    }
    let mut colors = vec![u32::MAX; n];
    Ok(BigInt::from(count_from(g, t, 0, &mut colors)))
}

fn count_from(g: &Graph, t: u32, v: usize, colors: &mut [u32]) -> u64 {
    let n = colors.len();
    let mut used: u64 = 0;
    for w in Bits(g.neighbor_mask(v)) {
        if w < v {
            used |= 1 << colors[w];
        }
    }
    let free = t - (used & ((1u64 << t) - 1)).count_ones();
    if v + 1 == n {
        return free as u64;
    }
    let mut total = 0;
    for c in 0..t {
        if used & (1 << c) == 0 {
            colors[v] = c;
            total += count_from(g, t, v + 1, colors);
        }
    }
    total
}
