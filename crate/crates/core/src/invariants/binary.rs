//! Affine invariants of moments `m₀, …, m₃` on the line.

use crate::algebra::scalar::Coefficient;
use crate::error::{Error, Result};

/// `(a, b, c, d)` with
///
/// * `a = m₀`
/// * `b = m₀m₂ − m₁²`
/// * `c = m₀²m₃ − 3m₀m₁m₂ + 2m₁³`
/// * `d = m₀²m₃² − 6m₀m₁m₂m₃ + 4m₀m₂³ + 4m₁³m₃ − 3m₁²m₂²`
///
/// `c` vanishes exactly on moments of (possibly degenerate) segments, and
/// `a²d = 4b³ + c²`.
pub fn binary_cubic_invariants<C: Coefficient>(m: &[C]) -> Result<[C; 4]> {
    if m.len() < 4 {
        return Err(Error::MissingData(format!(
            "need moments m0..m3, got {} values",
            m.len()
        )));
    }
    let (m0, m1, m2, m3) = (&m[0], &m[1], &m[2], &m[3]);
    let k = |n: i64| C::from_int(n);
    let a = m0.clone();
    let b = m0.clone() * m2.clone() - m1.clone() * m1.clone();
    let c = m0.clone() * m0.clone() * m3.clone() - k(3) * m0.clone() * m1.clone() * m2.clone()
        + k(2) * m1.clone() * m1.clone() * m1.clone();
    let d = m0.clone() * m0.clone() * m3.clone() * m3.clone()
        - k(6) * m0.clone() * m1.clone() * m2.clone() * m3.clone()
        + k(4) * m0.clone() * m2.clone() * m2.clone() * m2.clone()
        + k(4) * m1.clone() * m1.clone() * m1.clone() * m3.clone()
        - k(3) * m1.clone() * m1.clone() * m2.clone() * m2.clone();
    Ok([a, b, c, d])
}
