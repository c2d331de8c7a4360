//! Exhaustive enumeration of data sets of a fixed genus.
//!
//! The pruned enumerators walk the genus identity: for each order and
//! quotient genus they solve for the cone orders with
//! [`cone_signatures`], then solve the twisting congruence for the exponent
//! and look the remaining residues up in a table indexed by their weighted
//! sum. Work is sharded over the order (`n` or `2n`); shards share nothing and
//! the merged output is sorted, so the result does not depend on scheduling.
//!
//! [`enumerate_oracle`] is the independent check: it tries every residue
//! tuple on every admissible cone multiset and keeps what the validators
//! accept.

use std::collections::BTreeSet;

use crate::arith::{cone_signatures, divisors, mod_inverse, units_mod, ConeSignature};
use crate::dataset::{
    canonicalize_se, canonicalize_sp, validate_se, validate_sp, ConePair, DataSet, Exponent, Kind, SeDataSet, SpDataSet,
};
use crate::error::EnumerateError;

/// Which kinds an enumeration should produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum KindFilter {
    Sp,
    Se,
    #[default]
    Both,
}

impl KindFilter {
    pub fn includes(self, kind: Kind) -> bool {
        matches!((self, kind), (KindFilter::Both, _) | (KindFilter::Sp, Kind::Sp) | (KindFilter::Se, Kind::Se))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Filters {
    pub kind: KindFilter,
    pub essential_only: bool,
    pub exponent: Option<Exponent>,
    pub g0: Option<i64>,
    pub cone_count: Option<usize>,
}

impl Filters {
    pub fn essential() -> Self {
        Filters { essential_only: true, ..Filters::default() }
    }

    pub fn with_exponent(mut self, l: i64, order: i64) -> Self {
        self.exponent = Some(Exponent::new(l, order));
        self
    }

    fn admits_order(&self, order: i64) -> bool {
        self.exponent.is_none_or(|e| e.order == order)
    }

    fn admits_l(&self, l: i64) -> bool {
        self.exponent.is_none_or(|e| e.l == l)
    }

    fn admits_g0(&self, g0: i64, essential_g0: i64) -> bool {
        (!self.essential_only || g0 == essential_g0) && self.g0.is_none_or(|want| want == g0)
    }

    /// The exact cone count demanded by the filters, if any. `None` inside
    /// `Some` means the filters contradict each other.
    fn exact_count(&self, essential_count: usize) -> Option<Option<usize>> {
        match (self.essential_only, self.cone_count) {
            (true, Some(c)) if c != essential_count => None,
            (true, _) => Some(Some(essential_count)),
            (false, c) => Some(c),
        }
    }
}

/// How shards are scheduled. Output is identical for every variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    /// Rayon's global pool.
    #[default]
    Parallel,
    /// A dedicated pool with this many threads; `Threads(1)` runs sequentially.
    Threads(usize),
}

#[cfg(feature = "parallel")]
fn run_shards<T, F>(orders: Vec<i64>, exec: Exec, shard: F) -> Vec<T>
where
    T: Send,
    F: Fn(i64) -> Vec<T> + Sync + Send,
{
    use rayon::prelude::*;

    let par = |orders: Vec<i64>| -> Vec<T> {
        let parts: Vec<Vec<T>> = orders.into_par_iter().map(&shard).collect();
        parts.into_iter().flatten().collect()
    };
    match exec {
        Exec::Sequential | Exec::Threads(0 | 1) => orders.into_iter().flat_map(&shard).collect(),
        Exec::Parallel => par(orders),
        Exec::Threads(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| par(orders)),
            Err(_) => orders.into_iter().flat_map(&shard).collect(),
        },
    }
}

#[cfg(not(feature = "parallel"))]
fn run_shards<T, F>(orders: Vec<i64>, _exec: Exec, shard: F) -> Vec<T>
where
    F: Fn(i64) -> Vec<T>,
{
    orders.into_iter().flat_map(shard).collect()
}

fn check_genus(g: i64) -> Result<(), EnumerateError> {
    if g < 1 {
        return Err(EnumerateError::BadGenus(g));
    }
    Ok(())
}

/// Canonical residue assignments for one signature, bucketed by
/// `Σ (modulus/m)·k mod modulus`. Within a run of equal orders the residues are
/// nondecreasing, so every multiset appears once and already sorted.
fn residue_table(sig: &ConeSignature, modulus: i64) -> Vec<Vec<Vec<ConePair>>> {
    let orders = sig.orders();
    let unit_lists: Vec<Vec<i64>> = orders.iter().map(|&m| units_mod(m).expect("cone orders exceed 1")).collect();
    let mut table = vec![Vec::new(); modulus as usize];
    let mut current: Vec<ConePair> = Vec::with_capacity(orders.len());

    fn walk(
        i: usize,
        sum: i64,
        orders: &[i64],
        unit_lists: &[Vec<i64>],
        modulus: i64,
        current: &mut Vec<ConePair>,
        table: &mut [Vec<Vec<ConePair>>],
    ) {
        if i == orders.len() {
            table[sum as usize].push(current.clone());
            return;
        }
        let m = orders[i];
        let floor = match current.last() {
            Some(prev) if prev.m == m => prev.k,
            _ => 0,
        };
        let coeff = modulus / m;
        for &k in unit_lists[i].iter().filter(|&&k| k >= floor) {
            current.push(ConePair::new(k, m));
            walk(i + 1, (sum + coeff * k) % modulus, orders, unit_lists, modulus, current, table);
            current.pop();
        }
    }

    walk(0, 0, orders, &unit_lists, modulus, &mut current, &mut table);
    table
}

fn sp_shard(g: i64, n: i64, f: &Filters) -> Vec<SpDataSet> {
    let mut out = Vec::new();
    if !f.admits_order(n) {
        return out;
    }
    let Some(exact) = f.exact_count(1) else {
        return out;
    };
    let units = units_mod(n).expect("n >= 2");
    for g0 in 0..=g / n {
        if !f.admits_g0(g0, 0) {
            continue;
        }
        let target = 2 * g - 2 * g0 * n;
        for sig in cone_signatures(n, target, exact) {
            if exact.is_some_and(|c| sig.len() != c) {
                continue;
            }
            let table = residue_table(&sig, n);
            for (i, &a) in units.iter().enumerate() {
                for &b in &units[i..] {
                    let ab_inv = mod_inverse(a * b % n, n).expect("product of units");
                    let l = (a + b) % n * ab_inv % n;
                    if l == 0 || !f.admits_l(l) {
                        continue;
                    }
                    let need = (-(a + b)).rem_euclid(n);
                    for cones in &table[need as usize] {
                        out.push(SpDataSet { l, n, g0, a, b, cones: cones.clone() });
                    }
                }
            }
        }
    }
    out
}

/// Some cone order has odd index in `2n`, so the cover is connected even
/// without handles in the quotient.
fn has_odd_index(sig: &ConeSignature, two_n: i64) -> bool {
    sig.orders().iter().any(|&m| (two_n / m) % 2 == 1)
}

fn se_shard(g: i64, two_n: i64, f: &Filters) -> Vec<SeDataSet> {
    let mut out = Vec::new();
    if !f.admits_order(two_n) {
        return out;
    }
    let Some(exact) = f.exact_count(2) else {
        return out;
    };
    let n = two_n / 2;
    let units = units_mod(n).expect("n >= 2");
    for g0 in 0..=(g + n) / two_n {
        if !f.admits_g0(g0, 0) {
            continue;
        }
        // 2g = 2n(2 g0 - 1) + Σ (2n/m)(m - 1)
        let target = 2 * g + two_n - 2 * two_n * g0;
        for sig in cone_signatures(two_n, target, exact) {
            if exact.is_some_and(|c| sig.len() != c) || (g0 == 0 && !has_odd_index(&sig, two_n)) {
                continue;
            }
            let table = residue_table(&sig, two_n);
            for &a in &units {
                let base = 2 * mod_inverse(a, n).expect("unit") % n;
                let need = (-2 * a).rem_euclid(two_n);
                for l in [base, base + n] {
                    if l < 2 || l >= two_n || !f.admits_l(l) {
                        continue;
                    }
                    for cones in &table[need as usize] {
                        out.push(SeDataSet { l, two_n, g0, a, cones: cones.clone() });
                    }
                }
            }
        }
    }
    out
}

/// All canonical SP data sets of genus `g` passing `f`, sorted by
/// `(n, l, g0, a, b, cones)`. The kind filter is not consulted.
pub fn enumerate_sp(g: i64, f: &Filters) -> Result<Vec<SpDataSet>, EnumerateError> {
    enumerate_sp_with(g, f, Exec::default())
}

pub fn enumerate_sp_with(g: i64, f: &Filters, exec: Exec) -> Result<Vec<SpDataSet>, EnumerateError> {
    check_genus(g)?;
    let orders: Vec<i64> = (2..=4 * g).collect();
    let mut out = run_shards(orders, exec, |n| sp_shard(g, n, f));
    out.sort_unstable();
    Ok(out)
}

/// All canonical SE data sets of genus `g` passing `f`, sorted by
/// `(2n, l, g0, a, cones)`. Orders run up to the maximal cyclic order `4g + 2`.
pub fn enumerate_se(g: i64, f: &Filters) -> Result<Vec<SeDataSet>, EnumerateError> {
    enumerate_se_with(g, f, Exec::default())
}

pub fn enumerate_se_with(g: i64, f: &Filters, exec: Exec) -> Result<Vec<SeDataSet>, EnumerateError> {
    check_genus(g)?;
    let orders: Vec<i64> = (2..=2 * g + 1).map(|n| 2 * n).collect();
    let mut out = run_shards(orders, exec, |two_n| se_shard(g, two_n, f));
    out.sort_unstable();
    Ok(out)
}

/// Both kinds as selected by `f.kind`, SP first.
pub fn enumerate(g: i64, f: &Filters, exec: Exec) -> Result<Vec<DataSet>, EnumerateError> {
    let mut out = Vec::new();
    if f.kind.includes(Kind::Sp) {
        out.extend(enumerate_sp_with(g, f, exec)?.into_iter().map(DataSet::Sp));
    }
    if f.kind.includes(Kind::Se) {
        out.extend(enumerate_se_with(g, f, exec)?.into_iter().map(DataSet::Se));
    }
    Ok(out)
}

/// Default genus ceiling for [`enumerate_oracle`].
pub const ORACLE_MAX_GENUS: i64 = 8;

/// Brute-force enumeration with no pruning beyond the validators, refusing
/// genera above [`ORACLE_MAX_GENUS`].
pub fn enumerate_oracle(g: i64, kind: Kind) -> Result<Vec<DataSet>, EnumerateError> {
    enumerate_oracle_bounded(g, kind, ORACLE_MAX_GENUS)
}

pub fn enumerate_oracle_bounded(g: i64, kind: Kind, max_genus: i64) -> Result<Vec<DataSet>, EnumerateError> {
    check_genus(g)?;
    if g > max_genus {
        return Err(EnumerateError::OracleBoundExceeded { genus: g, bound: max_genus });
    }
    Ok(match kind {
        Kind::Sp => oracle_sp(g).into_iter().map(DataSet::Sp).collect(),
        Kind::Se => oracle_se(g).into_iter().map(DataSet::Se).collect(),
    })
}

/// Every nondecreasing multiset over `parts` with at most `max_len` entries.
fn for_each_multiset(parts: &[i64], max_len: usize, visit: &mut dyn FnMut(&[i64])) {
    fn rec(parts: &[i64], start: usize, max_len: usize, cur: &mut Vec<i64>, visit: &mut dyn FnMut(&[i64])) {
        visit(cur);
        if cur.len() == max_len {
            return;
        }
        for i in start..parts.len() {
            cur.push(parts[i]);
            rec(parts, i, max_len, cur, visit);
            cur.pop();
        }
    }
    rec(parts, 0, max_len, &mut Vec::new(), visit);
}

/// Odometer over all residue tuples `k_i in [0, m_i)`, written into `cones`.
fn for_each_residues(cones: &mut [ConePair], visit: &mut dyn FnMut(&[ConePair])) {
    for c in cones.iter_mut() {
        c.k = 0;
    }
    loop {
        visit(cones);
        let mut i = 0;
        loop {
            if i == cones.len() {
                return;
            }
            cones[i].k += 1;
            if cones[i].k < cones[i].m {
                break;
            }
            cones[i].k = 0;
            i += 1;
        }
    }
}

/// Hard order bound: no cyclic action on a genus-g surface has order above `4g + 2`.
fn oracle_max_order(g: i64) -> i64 {
    4 * g + 2
}

fn oracle_max_cones(g: i64) -> usize {
    (2 * g + 2) as usize
}

fn oracle_sp(g: i64) -> BTreeSet<SpDataSet> {
    let mut found = BTreeSet::new();
    for n in 2..=oracle_max_order(g) {
        let parts: Vec<i64> = divisors(n).into_iter().filter(|&m| m > 1).collect();
        for_each_multiset(&parts, oracle_max_cones(g), &mut |orders| {
            let mut cand =
                SpDataSet { l: 1, n, g0: 0, a: 1, b: 1, cones: orders.iter().map(|&m| ConePair::new(1, m)).collect() };
            for g0 in 0..=g {
                cand.g0 = g0;
                // genus depends only on n, g0 and the orders
                if validate_sp(&cand).genus != Some(g) {
                    continue;
                }
                let mut cones = cand.cones.clone();
                for_each_residues(&mut cones, &mut |ks| {
                    let mut d = SpDataSet { l: 0, n, g0, a: 0, b: 0, cones: ks.to_vec() };
                    for l in 0..=n {
                        d.l = l;
                        for a in 0..n {
                            d.a = a;
                            for b in 0..n {
                                d.b = b;
                                let r = validate_sp(&d);
                                if r.is_valid() && r.genus == Some(g) {
                                    found.insert(canonicalize_sp(&d));
                                }
                            }
                        }
                    }
                });
            }
        });
    }
    found
}

fn oracle_se(g: i64) -> BTreeSet<SeDataSet> {
    let mut found = BTreeSet::new();
    for two_n in (4..=oracle_max_order(g)).step_by(2) {
        let n = two_n / 2;
        let parts: Vec<i64> = divisors(two_n).into_iter().filter(|&m| m > 1).collect();
        for_each_multiset(&parts, oracle_max_cones(g), &mut |orders| {
            let mut cand =
                SeDataSet { l: 2, two_n, g0: 0, a: 1, cones: orders.iter().map(|&m| ConePair::new(1, m)).collect() };
            for g0 in 0..=g {
                cand.g0 = g0;
                if validate_se(&cand).genus != Some(g) {
                    continue;
                }
                let mut cones = cand.cones.clone();
                for_each_residues(&mut cones, &mut |ks| {
                    let mut d = SeDataSet { l: 0, two_n, g0, a: 0, cones: ks.to_vec() };
                    for l in 0..=two_n {
                        d.l = l;
                        for a in 0..n {
                            d.a = a;
                            let r = validate_se(&d);
                            if r.is_valid() && r.genus == Some(g) {
                                found.insert(canonicalize_se(&d));
                            }
                        }
                    }
                });
            }
        });
    }
    found
}

/// Exponent spectrum of essential data sets at one genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpectraRow {
    /// Genus of the surface carrying the fractional powers, `g + 1`.
    pub genus_plus_one: i64,
    pub e_sp: usize,
    pub e_se: usize,
    pub n_sp: usize,
    pub n_se: usize,
}

pub fn spectra(g: i64) -> Result<SpectraRow, EnumerateError> {
    spectra_with(g, Exec::default())
}

pub fn spectra_with(g: i64, exec: Exec) -> Result<SpectraRow, EnumerateError> {
    let f = Filters::essential();
    let sp = enumerate_sp_with(g, &f, exec)?;
    let se = enumerate_se_with(g, &f, exec)?;
    let distinct = |exps: Vec<Exponent>| exps.into_iter().collect::<BTreeSet<_>>().len();
    Ok(SpectraRow {
        genus_plus_one: g + 1,
        e_sp: distinct(sp.iter().map(SpDataSet::exponent).collect()),
        e_se: distinct(se.iter().map(SeDataSet::exponent).collect()),
        n_sp: sp.len(),
        n_se: se.len(),
    })
}
