//! Structural maps between data sets and the explicit infinite families.

use std::fmt;

use crate::arith::{gcd, mod_inverse};
use crate::dataset::{canonicalize_se, canonicalize_sp, validate_se, validate_sp, ConePair, SeDataSet, SpDataSet};
use crate::error::RelationError;

fn require_valid_sp(d: &SpDataSet) -> Result<i64, RelationError> {
    let r = validate_sp(d);
    match r.genus {
        Some(g) if r.is_valid() => Ok(g),
        _ => Err(RelationError::InvalidInput(r.to_string())),
    }
}

fn require_valid_se(d: &SeDataSet) -> Result<i64, RelationError> {
    let r = validate_se(d);
    match r.genus {
        Some(g) if r.is_valid() => Ok(g),
        _ => Err(RelationError::InvalidInput(r.to_string())),
    }
}

/// Rewrites an SP data set with `gcd(l, n) = 1` as the `l`-th power of a root:
/// `l` becomes 1 and `a`, `b`, every `k_i` are multiplied by `l`.
pub fn sp_root_decompose(d: &SpDataSet) -> Result<SpDataSet, RelationError> {
    require_valid_sp(d)?;
    if gcd(d.l, d.n) != 1 {
        return Err(RelationError::NotApplicable(format!("gcd(ℓ,n) ≠ 1 (ℓ = {}, n = {})", d.l, d.n)));
    }
    let n = d.n as i128;
    let l = d.l as i128;
    let scale = |x: i64, m: i64| ((x as i128 * l).rem_euclid(m as i128)) as i64;
    Ok(canonicalize_sp(&SpDataSet {
        l: 1,
        n: d.n,
        g0: d.g0,
        a: scale(d.a, n as i64),
        b: scale(d.b, n as i64),
        cones: d.cones.iter().map(|c| ConePair::new(scale(c.k, c.m), c.m)).collect(),
    }))
}

/// Inverse of [`sp_root_decompose`]: the `l`-th power of the root `root`.
pub fn sp_power_compose(root: &SpDataSet, l: i64) -> Result<SpDataSet, RelationError> {
    require_valid_sp(root)?;
    if root.l != 1 {
        return Err(RelationError::NotApplicable(format!("root must have ℓ = 1, found ℓ = {}", root.l)));
    }
    if !(1..root.n).contains(&l) || gcd(l, root.n) != 1 {
        return Err(RelationError::NotApplicable(format!("gcd(ℓ,n) ≠ 1 or ℓ out of range (ℓ = {l}, n = {})", root.n)));
    }
    let unscale = |x: i64, m: i64| {
        // l is a unit modulo every divisor of n
        let inv = mod_inverse(l, m).expect("l coprime to n");
        ((x as i128 * inv as i128).rem_euclid(m as i128)) as i64
    };
    Ok(canonicalize_sp(&SpDataSet {
        l,
        n: root.n,
        g0: root.g0,
        a: unscale(root.a, root.n),
        b: unscale(root.b, root.n),
        cones: root.cones.iter().map(|c| ConePair::new(unscale(c.k, c.m), c.m)).collect(),
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecompositionStatus {
    Exact,
    Adjusted,
    Failed,
}

impl fmt::Display for DecompositionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecompositionStatus::Exact => "exact",
            DecompositionStatus::Adjusted => "adjusted",
            DecompositionStatus::Failed => "failed",
        })
    }
}

/// One cone whose raw product `r·k` was not a unit and had to be replaced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Adjustment {
    pub cone_index: usize,
    pub raw_product: i64,
    /// `None` when no unit lift exists.
    pub chosen: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionResult {
    pub status: DecompositionStatus,
    pub result: Option<SeDataSet>,
    pub adjustments: Vec<Adjustment>,
}

/// Writes an SE data set as the `r`-th power of one of exponent `(l/r)/2n`:
/// `a` and every `k_i` are multiplied by `r`.
///
/// When `r·k_i` is not a unit modulo an even `n_i`, it is replaced by the
/// unique unit congruent to it modulo `n_i/2`, and the cone is logged as an
/// adjustment. The result is only returned when it validates with the
/// original genus.
pub fn se_power_decompose(d: &SeDataSet, r: i64) -> Result<DecompositionResult, RelationError> {
    let genus = require_valid_se(d)?;
    let n = d.n();
    if r <= 1 {
        return Err(RelationError::NotApplicable(format!("r must exceed 1, got {r}")));
    }
    if d.l % r != 0 {
        return Err(RelationError::NotApplicable(format!("r = {r} does not divide ℓ = {}", d.l)));
    }
    if d.l / r < 2 {
        return Err(RelationError::NotApplicable(format!("ℓ/r = {} is below 2", d.l / r)));
    }
    if gcd(d.l, n) != 1 {
        return Err(RelationError::NotApplicable(format!("gcd(ℓ,n) ≠ 1 (ℓ = {}, n = {n})", d.l)));
    }

    let mut adjustments = Vec::new();
    let mut cones = Vec::with_capacity(d.cones.len());
    let mut failed = false;
    for (i, c) in d.cones.iter().enumerate() {
        let raw = ((c.k as i128 * r as i128).rem_euclid(c.m as i128)) as i64;
        if gcd(raw, c.m) == 1 {
            cones.push(ConePair::new(raw, c.m));
            continue;
        }
        let lift = if c.m % 2 == 0 {
            let half = c.m / 2;
            let lifts: Vec<i64> = [raw % half, raw % half + half].into_iter().filter(|&x| gcd(x, c.m) == 1).collect();
            (lifts.len() == 1).then(|| lifts[0])
        } else {
            None
        };
        adjustments.push(Adjustment { cone_index: i, raw_product: raw, chosen: lift });
        match lift {
            Some(k) => cones.push(ConePair::new(k, c.m)),
            None => failed = true,
        }
    }

    let candidate = canonicalize_se(&SeDataSet {
        l: d.l / r,
        two_n: d.two_n,
        g0: d.g0,
        a: ((d.a as i128 * r as i128).rem_euclid(n as i128)) as i64,
        cones,
    });
    let report = validate_se(&candidate);
    if failed || !report.is_valid() || report.genus != Some(genus) {
        return Ok(DecompositionResult { status: DecompositionStatus::Failed, result: None, adjustments });
    }
    let status = if adjustments.is_empty() { DecompositionStatus::Exact } else { DecompositionStatus::Adjusted };
    Ok(DecompositionResult { status, result: Some(candidate), adjustments })
}

/// The two SP data sets of exponent `2g/(2g+1)`, the largest `l` over `2g+1`.
pub fn family_sp_top(g: i64) -> [SpDataSet; 2] {
    let n = 2 * g + 1;
    [
        canonicalize_sp(&SpDataSet::new(2 * g, n, 0, (1, g), &[(g, n)])),
        canonicalize_sp(&SpDataSet::new(2 * g, n, 0, (2 * g - 1, 2 * g - 1), &[(4 % n, n)])),
    ]
}

/// The two SP data sets of exponent `2g/4g`, realizing `n = 4g`.
pub fn family_sp_4g(g: i64) -> [SpDataSet; 2] {
    let n = 4 * g;
    [
        canonicalize_sp(&SpDataSet::new(2 * g, n, 0, (1, 2 * g - 1), &[(1, 2)])),
        canonicalize_sp(&SpDataSet::new(2 * g, n, 0, (2 * g + 1, 4 * g - 1), &[(1, 2)])),
    ]
}

/// The SE data set of exponent `(4g+1)/(4g+2)`, realizing the maximal order.
pub fn family_se_max(g: i64) -> SeDataSet {
    let two_n = 4 * g + 2;
    canonicalize_se(&SeDataSet::new(4 * g + 1, two_n, 0, 2 * g - 1, &[(1, 2), ((2 * g + 5) % two_n, two_n)]))
}

/// The SE data set of exponent `2/(2g+2)`, realizing the minimal essential order.
pub fn family_se_min(g: i64) -> SeDataSet {
    let two_n = 2 * g + 2;
    canonicalize_se(&SeDataSet::new(2, two_n, 0, 1, &[(2 * g + 1, two_n), (2 * g + 1, two_n)]))
}
