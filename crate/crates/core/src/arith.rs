//! Exact integer helpers: divisors, unit groups, modular inverses and the
//! cone-signature solver behind the genus identities.

use std::fmt;

use crate::error::ArithError;

/// Greatest common divisor of `|a|` and `|b|`; `gcd(0, 0) = 0`.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// The positive divisors of `n` in ascending order. Returns an empty list for `n < 1`.
pub fn divisors(n: i64) -> Vec<i64> {
    if n < 1 {
        return Vec::new();
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Residues in `[1, n-1]` coprime to `n`.
pub fn units_mod(n: i64) -> Result<Vec<i64>, ArithError> {
    if n < 2 {
        return Err(ArithError::InvalidModulus(n));
    }
    Ok((1..n).filter(|&r| gcd(r, n) == 1).collect())
}

/// The inverse of `a` modulo `n`, as a residue in `[1, n-1]`.
pub fn mod_inverse(a: i64, n: i64) -> Result<i64, ArithError> {
    if n < 2 {
        return Err(ArithError::InvalidModulus(n));
    }
    // extended Euclid on (a mod n, n)
    let (mut old_r, mut r) = (a.rem_euclid(n), n);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(ArithError::NotInvertible { a, n });
    }
    Ok(old_s.rem_euclid(n))
}

/// Least nonnegative residue of `x` modulo `n` (`n > 0`), computed without overflow.
pub(crate) fn reduce(x: i128, n: i64) -> i64 {
    x.rem_euclid(n as i128) as i64
}

/// A multiset of cone orders, each `> 1`, kept in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ConeSignature(Vec<i64>);

impl ConeSignature {
    /// Builds a signature from arbitrary order, sorting it.
    pub fn new(mut orders: Vec<i64>) -> Self {
        orders.sort_unstable();
        ConeSignature(orders)
    }

    pub fn orders(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `Σ (order/m)(m-1)` over the parts. Every part must divide `order`.
    pub fn weight(&self, order: i64) -> i64 {
        self.0.iter().map(|&m| cone_weight(order, m)).sum()
    }
}

impl fmt::Display for ConeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "]")
    }
}

/// Weight `(order/m)(m-1)` of one cone of order `m | order`.
pub fn cone_weight(order: i64, m: i64) -> i64 {
    (order / m) * (m - 1)
}

/// All multisets of divisors `m > 1` of `order` whose weights `(order/m)(m-1)`
/// sum to exactly `target`, optionally capped at `max_count` parts.
///
/// A part weighs at least `order/2`, so no solution has more than
/// `2 * target / order` parts; that is the recursion bound.
/// The result is sorted and contains the empty signature iff `target == 0`.
pub fn cone_signatures(order: i64, target: i64, max_count: Option<usize>) -> Vec<ConeSignature> {
    if order < 2 || target < 0 {
        return Vec::new();
    }
    let parts: Vec<(i64, i64)> =
        divisors(order).into_iter().filter(|&m| m > 1).map(|m| (m, cone_weight(order, m))).collect();
    let natural = (2 * target / order) as usize;
    let limit = max_count.map_or(natural, |c| c.min(natural));

    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_signatures(&parts, 0, target, limit, &mut current, &mut out);
    out.sort();
    out
}

fn fill_signatures(
    parts: &[(i64, i64)],
    start: usize,
    remaining: i64,
    slots: usize,
    current: &mut Vec<i64>,
    out: &mut Vec<ConeSignature>,
) {
    if remaining == 0 {
        out.push(ConeSignature(current.clone()));
        return;
    }
    if slots == 0 {
        return;
    }
    for (i, &(m, w)) in parts.iter().enumerate().skip(start) {
        if w > remaining {
            continue;
        }
        current.push(m);
        fill_signatures(parts, i, remaining - w, slots - 1, current, out);
        current.pop();
    }
}
