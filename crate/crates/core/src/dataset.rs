//! SP and SE data sets: validation, genus, canonical forms.
//!
//! Both record types are plain integer tuples. Nothing about them is trusted
//! until [`validate_sp`] / [`validate_se`] has looked at it; the validators are
//! total and never fail, they report.
//!
//! Residues are compared through their least nonnegative representatives, so
//! a validation verdict does not change when `a`, `b` or any `k` is shifted by
//! a multiple of its modulus.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, reduce};
use crate::error::DataSetError;

/// A cone point of order `m` with rotation residue `k` modulo `m`.
///
/// Ordered by `(m, k)`, which is the canonical order of cone lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct ConePair {
    pub k: i64,
    pub m: i64,
}

impl ConePair {
    pub const fn new(k: i64, m: i64) -> Self {
        ConePair { k, m }
    }

    fn reduced(self) -> Self {
        if self.m > 0 {
            ConePair { k: self.k.rem_euclid(self.m), m: self.m }
        } else {
            self
        }
    }
}

impl From<[i64; 2]> for ConePair {
    fn from([k, m]: [i64; 2]) -> Self {
        ConePair { k, m }
    }
}

impl From<ConePair> for [i64; 2] {
    fn from(c: ConePair) -> Self {
        [c.k, c.m]
    }
}

impl Ord for ConePair {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.m, self.k).cmp(&(other.m, other.k))
    }
}

impl PartialOrd for ConePair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ConePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.k, self.m)
    }
}

/// Side-preserving data set `((l, n), g0, (a, b); (k_1, m_1), ...)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpDataSet {
    pub l: i64,
    pub n: i64,
    pub g0: i64,
    pub a: i64,
    pub b: i64,
    pub cones: Vec<ConePair>,
}

/// Side-exchanging data set `((l, 2n), g0, a; (k_1, m_1), ...)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeDataSet {
    pub l: i64,
    pub two_n: i64,
    pub g0: i64,
    pub a: i64,
    pub cones: Vec<ConePair>,
}

impl SpDataSet {
    pub fn new(l: i64, n: i64, g0: i64, (a, b): (i64, i64), cones: &[(i64, i64)]) -> Self {
        SpDataSet { l, n, g0, a, b, cones: cones.iter().map(|&(k, m)| ConePair::new(k, m)).collect() }
    }

    pub fn exponent(&self) -> Exponent {
        Exponent { l: self.l, order: self.n }
    }

    fn sort_key(&self) -> (i64, i64, i64, i64, i64, &[ConePair]) {
        (self.n, self.l, self.g0, self.a, self.b, &self.cones)
    }
}

impl SeDataSet {
    pub fn new(l: i64, two_n: i64, g0: i64, a: i64, cones: &[(i64, i64)]) -> Self {
        SeDataSet { l, two_n, g0, a, cones: cones.iter().map(|&(k, m)| ConePair::new(k, m)).collect() }
    }

    /// Half the order, the modulus of `a`.
    pub fn n(&self) -> i64 {
        self.two_n / 2
    }

    pub fn exponent(&self) -> Exponent {
        Exponent { l: self.l, order: self.two_n }
    }

    fn sort_key(&self) -> (i64, i64, i64, i64, &[ConePair]) {
        (self.two_n, self.l, self.g0, self.a, &self.cones)
    }
}

impl Ord for SpDataSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for SpDataSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SeDataSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for SeDataSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn write_cones(f: &mut fmt::Formatter<'_>, cones: &[ConePair]) -> fmt::Result {
    if cones.is_empty() {
        return write!(f, ")");
    }
    write!(f, "; ")?;
    for (i, c) in cones.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{c}")?;
    }
    write!(f, ")")
}

impl fmt::Display for SpDataSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({}, {}), {}, ({}, {})", self.l, self.n, self.g0, self.a, self.b)?;
        write_cones(f, &self.cones)
    }
}

impl fmt::Display for SeDataSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({}, {}), {}, {}", self.l, self.two_n, self.g0, self.a)?;
        write_cones(f, &self.cones)
    }
}

/// Which of the two data-set families a record belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Sp,
    Se,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Sp => "SP",
            Kind::Se => "SE",
        })
    }
}

/// Either kind of data set. This is also the serialized record form:
/// `{"kind":"SP","l":..,"n":..,"g0":..,"a":..,"b":..,"cones":[[k,m],..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum DataSet {
    #[serde(rename = "SP")]
    Sp(SpDataSet),
    #[serde(rename = "SE")]
    Se(SeDataSet),
}

impl DataSet {
    pub fn kind(&self) -> Kind {
        match self {
            DataSet::Sp(_) => Kind::Sp,
            DataSet::Se(_) => Kind::Se,
        }
    }

    pub fn exponent(&self) -> Exponent {
        match self {
            DataSet::Sp(d) => d.exponent(),
            DataSet::Se(d) => d.exponent(),
        }
    }

    pub fn g0(&self) -> i64 {
        match self {
            DataSet::Sp(d) => d.g0,
            DataSet::Se(d) => d.g0,
        }
    }

    pub fn cones(&self) -> &[ConePair] {
        match self {
            DataSet::Sp(d) => &d.cones,
            DataSet::Se(d) => &d.cones,
        }
    }

    pub fn validate(&self) -> ValidationReport {
        match self {
            DataSet::Sp(d) => validate_sp(d),
            DataSet::Se(d) => validate_se(d),
        }
    }

    pub fn canonicalize(&self) -> DataSet {
        match self {
            DataSet::Sp(d) => DataSet::Sp(canonicalize_sp(d)),
            DataSet::Se(d) => DataSet::Se(canonicalize_se(d)),
        }
    }

    pub fn is_essential(&self) -> bool {
        match self {
            DataSet::Sp(d) => is_essential_sp(d),
            DataSet::Se(d) => is_essential_se(d),
        }
    }
}

impl fmt::Display for DataSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DataSet::Sp(d) => d.fmt(f),
            DataSet::Se(d) => d.fmt(f),
        }
    }
}

impl From<SpDataSet> for DataSet {
    fn from(d: SpDataSet) -> Self {
        DataSet::Sp(d)
    }
}

impl From<SeDataSet> for DataSet {
    fn from(d: SeDataSet) -> Self {
        DataSet::Se(d)
    }
}

/// Unreduced exponent `l/order`: `8/16` and `1/2` are different exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent {
    pub l: i64,
    pub order: i64,
}

impl Exponent {
    pub const fn new(l: i64, order: i64) -> Self {
        Exponent { l, order }
    }

    /// Sort key matching listing order: by order, then `l`.
    pub fn listing_key(&self) -> (i64, i64) {
        (self.order, self.l)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.l, self.order)
    }
}

impl FromStr for Exponent {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (l, order) = s.split_once('/').ok_or_else(|| format!("exponent `{s}` must be written as L/ORDER"))?;
        let l: i64 = l.trim().parse().map_err(|_| format!("bad exponent numerator in `{s}`"))?;
        let order: i64 = order.trim().parse().map_err(|_| format!("bad exponent order in `{s}`"))?;
        if order < 2 {
            return Err(format!("exponent order must be at least 2, got {order}"));
        }
        Ok(Exponent { l, order })
    }
}

/// A single condition checked by the validators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// (i): degree, quotient genus and cone orders are well formed.
    Structure,
    /// (ii): `a` (and `b`) and every `k` are units.
    Units,
    /// (iii): the twisting congruence.
    Twist,
    /// (iv): the residues sum to zero.
    Balance,
    ExponentRange,
    GenusIntegral,
    GenusPositive,
    /// SE only: some generator image is odd when `g0 = 0`, i.e. the branched
    /// cover of the quotient orbifold is connected.
    ConnectedCover,
}

impl Condition {
    pub const ALL: [Condition; 8] = [
        Condition::Structure,
        Condition::Units,
        Condition::Twist,
        Condition::Balance,
        Condition::ExponentRange,
        Condition::GenusIntegral,
        Condition::GenusPositive,
        Condition::ConnectedCover,
    ];
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Structure => "condition (i)",
            Condition::Units => "condition (ii)",
            Condition::Twist => "condition (iii)",
            Condition::Balance => "condition (iv)",
            Condition::ExponentRange => "exponent range",
            Condition::GenusIntegral => "genus integrality",
            Condition::GenusPositive => "genus positivity",
            Condition::ConnectedCover => "connected cover",
        })
    }
}

/// Per-condition outcome of validating one candidate tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ValidationReport {
    pub structure: bool,
    pub units: bool,
    pub twist: bool,
    pub balance: bool,
    pub exponent_range: bool,
    pub genus_integral: bool,
    pub genus_positive: bool,
    pub connected_cover: bool,
    /// The genus when it is defined and integral.
    pub genus: Option<i64>,
}

impl ValidationReport {
    pub fn passes(&self, c: Condition) -> bool {
        match c {
            Condition::Structure => self.structure,
            Condition::Units => self.units,
            Condition::Twist => self.twist,
            Condition::Balance => self.balance,
            Condition::ExponentRange => self.exponent_range,
            Condition::GenusIntegral => self.genus_integral,
            Condition::GenusPositive => self.genus_positive,
            Condition::ConnectedCover => self.connected_cover,
        }
    }

    pub fn is_valid(&self) -> bool {
        Condition::ALL.iter().all(|&c| self.passes(c))
    }

    pub fn failures(&self) -> Vec<Condition> {
        Condition::ALL.iter().copied().filter(|&c| !self.passes(c)).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            // is_valid implies the genus is defined
            return write!(f, "valid genus={}", self.genus.unwrap_or_default());
        }
        write!(f, "invalid: ")?;
        for (i, c) in self.failures().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

fn is_unit(x: i64, m: i64) -> bool {
    m > 1 && gcd(x.rem_euclid(m), m) == 1
}

/// Genus bookkeeping shared by both validators: given twice the genus, fill
/// in integrality, positivity and the genus itself.
fn genus_flags(twice: Option<i64>) -> (bool, bool, Option<i64>) {
    match twice {
        Some(t) if t % 2 == 0 => (true, t / 2 >= 1, Some(t / 2)),
        _ => (false, false, None),
    }
}

/// Checks every SP condition on an arbitrary integer tuple.
pub fn validate_sp(d: &SpDataSet) -> ValidationReport {
    let n = d.n;
    let cones_ok = n > 1 && d.cones.iter().all(|c| c.m > 1 && n % c.m == 0);
    let structure = n > 1 && d.g0 >= 0 && cones_ok;

    let units = n > 1 && is_unit(d.a, n) && is_unit(d.b, n) && d.cones.iter().all(|c| is_unit(c.k, c.m));

    let (twist, balance) = if n > 1 {
        let a = d.a.rem_euclid(n) as i128;
        let b = d.b.rem_euclid(n) as i128;
        let l = d.l.rem_euclid(n) as i128;
        let twist = reduce(a + b - l * a * b, n) == 0;
        let balance = cones_ok && {
            let sum: i128 = d.cones.iter().map(|c| ((n / c.m) as i128) * (c.k.rem_euclid(c.m) as i128)).sum();
            reduce(a + b + sum, n) == 0
        };
        (twist, balance)
    } else {
        (false, false)
    };

    let exponent_range = n > 1 && 1 <= d.l && d.l < n;

    let twice = structure.then(|| twice_genus_sp(d));
    let (genus_integral, genus_positive, genus) = genus_flags(twice);

    ValidationReport {
        structure,
        units,
        twist,
        balance,
        exponent_range,
        genus_integral,
        genus_positive,
        connected_cover: true,
        genus,
    }
}

/// Checks every SE condition on an arbitrary integer tuple.
pub fn validate_se(d: &SeDataSet) -> ValidationReport {
    let two_n = d.two_n;
    let n = two_n / 2;
    let order_ok = two_n >= 4 && two_n % 2 == 0;
    let cones_ok = order_ok && d.cones.iter().all(|c| c.m > 1 && two_n % c.m == 0);
    let structure = order_ok && d.l >= 2 && d.g0 >= 0 && cones_ok;

    let units = order_ok && is_unit(d.a, n) && d.cones.iter().all(|c| is_unit(c.k, c.m));

    let (twist, balance) = if order_ok {
        let a = d.a.rem_euclid(n) as i128;
        let l = d.l.rem_euclid(n) as i128;
        let twist = reduce(l * a - 2, n) == 0;
        let balance = cones_ok && {
            let sum: i128 = d.cones.iter().map(|c| ((two_n / c.m) as i128) * (c.k.rem_euclid(c.m) as i128)).sum();
            reduce(2 * a + sum, two_n) == 0
        };
        (twist, balance)
    } else {
        (false, false)
    };

    let exponent_range = order_ok && 2 <= d.l && d.l < two_n;

    let twice = structure.then(|| twice_genus_se(d));
    let (genus_integral, genus_positive, genus) = genus_flags(twice);

    let connected_cover = d.g0 >= 1 || (cones_ok && d.cones.iter().any(|c| (two_n / c.m) % 2 == 1));

    ValidationReport {
        structure,
        units,
        twist,
        balance,
        exponent_range,
        genus_integral,
        genus_positive,
        connected_cover,
        genus,
    }
}

fn twice_genus_sp(d: &SpDataSet) -> i64 {
    2 * d.g0 * d.n + d.cones.iter().map(|c| (d.n / c.m) * (c.m - 1)).sum::<i64>()
}

fn twice_genus_se(d: &SeDataSet) -> i64 {
    d.two_n * (2 * d.g0 - 1) + d.cones.iter().map(|c| (d.two_n / c.m) * (c.m - 1)).sum::<i64>()
}

/// `g = g0 n + ½ Σ (n/n_i)(n_i - 1)`.
pub fn genus_sp(d: &SpDataSet) -> Result<i64, DataSetError> {
    if d.n < 2 {
        return Err(DataSetError::BadDegree(d.n));
    }
    if let Some(c) = d.cones.iter().find(|c| c.m < 2 || d.n % c.m != 0) {
        return Err(DataSetError::ConeOrderDoesNotDivide { m: c.m, order: d.n });
    }
    let twice = twice_genus_sp(d);
    if twice % 2 != 0 {
        return Err(DataSetError::NonIntegralGenus { twice });
    }
    Ok(twice / 2)
}

/// `g = n(2 g0 - 1) + Σ (n/n_i)(n_i - 1)`, where the cone orders divide `2n`.
pub fn genus_se(d: &SeDataSet) -> Result<i64, DataSetError> {
    if d.two_n < 4 || d.two_n % 2 != 0 {
        return Err(DataSetError::BadDegree(d.two_n));
    }
    if let Some(c) = d.cones.iter().find(|c| c.m < 2 || d.two_n % c.m != 0) {
        return Err(DataSetError::ConeOrderDoesNotDivide { m: c.m, order: d.two_n });
    }
    let twice = twice_genus_se(d);
    if twice % 2 != 0 {
        return Err(DataSetError::NonIntegralGenus { twice });
    }
    Ok(twice / 2)
}

/// Least-positive residues, `a <= b`, cones sorted by `(m, k)`.
pub fn canonicalize_sp(d: &SpDataSet) -> SpDataSet {
    let (mut a, mut b) = (d.a, d.b);
    if d.n > 0 {
        a = a.rem_euclid(d.n);
        b = b.rem_euclid(d.n);
    }
    if a > b {
        std::mem::swap(&mut a, &mut b);
    }
    let mut cones: Vec<ConePair> = d.cones.iter().map(|c| c.reduced()).collect();
    cones.sort_unstable();
    SpDataSet { l: d.l, n: d.n, g0: d.g0, a, b, cones }
}

/// Least-positive residues (`a` modulo `n`), cones sorted by `(m, k)`.
pub fn canonicalize_se(d: &SeDataSet) -> SeDataSet {
    let n = d.n();
    let a = if n > 0 { d.a.rem_euclid(n) } else { d.a };
    let mut cones: Vec<ConePair> = d.cones.iter().map(|c| c.reduced()).collect();
    cones.sort_unstable();
    SeDataSet { l: d.l, two_n: d.two_n, g0: d.g0, a, cones }
}

/// Quotient is a sphere with the two distinguished cone points and one more.
pub fn is_essential_sp(d: &SpDataSet) -> bool {
    d.g0 == 0 && d.cones.len() == 1
}

/// Quotient is a sphere with the distinguished cone point and two more.
pub fn is_essential_se(d: &SeDataSet) -> bool {
    d.g0 == 0 && d.cones.len() == 2
}
