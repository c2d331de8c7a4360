//! Bound and parity predicates that every valid data set must satisfy.
//!
//! All inequalities are checked by cross-multiplication over integers.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::gcd;
use crate::dataset::{genus_se, genus_sp, is_essential_se, is_essential_sp, DataSet, Kind, SeDataSet, SpDataSet};
use crate::enumerate::{enumerate_se, enumerate_sp, Filters};
use crate::error::EnumerateError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    /// SP: `l` odd implies `n` odd.
    L1,
    /// SP: `gcd(l, n) = 1` implies `n <= 2g + 1`.
    L2,
    /// SP: `(2g + m)/(2 g0 + m) <= n <= 4g/(4 g0 + m)`.
    L3,
    /// SP: `n <= 4g`.
    L4,
    /// SP: `g0 >= 1` implies `n < g`.
    L5,
    /// SP: `n > 2g` implies `m = 1`.
    L6,
    /// SP: essential implies `n >= 2g + 1`.
    L7,
    /// SE: `l` odd implies `n` odd.
    M1,
    /// SE: `2n >= (2g + m)/(2 g0 + m - 1)`.
    M2,
    /// SE: `2n <= 4g + 2`.
    M3,
    /// SE: `g0 = 0` implies `m >= 2`.
    M4,
    /// SE: essential (`g0 = 0`, `m = 2`) implies `2n >= 2g + 2`.
    ///
    /// Only the two-cone case follows from M2; with three or more cones over a
    /// sphere the order can be much smaller.
    M5,
}

impl Law {
    pub const SP: [Law; 7] = [Law::L1, Law::L2, Law::L3, Law::L4, Law::L5, Law::L6, Law::L7];
    pub const SE: [Law; 5] = [Law::M1, Law::M2, Law::M3, Law::M4, Law::M5];

    pub fn description(self) -> &'static str {
        match self {
            Law::L1 => "l odd => n odd",
            Law::L2 => "gcd(l,n) = 1 => n <= 2g+1",
            Law::L3 => "(2g+m)/(2g0+m) <= n <= 4g/(4g0+m)",
            Law::L4 => "n <= 4g",
            Law::L5 => "g0 >= 1 => n < g",
            Law::L6 => "n > 2g => m = 1",
            Law::L7 => "essential => n >= 2g+1",
            Law::M1 => "l odd => n odd",
            Law::M2 => "2n >= (2g+m)/(2g0+m-1)",
            Law::M3 => "2n <= 4g+2",
            Law::M4 => "g0 = 0 => m >= 2",
            Law::M5 => "essential => 2n >= 2g+2",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub law: Law,
    pub holds: bool,
    /// Present exactly when the law fails.
    pub witness: Option<DataSet>,
}

fn report(law: Law, holds: bool, d: impl FnOnce() -> DataSet) -> LawReport {
    LawReport { law, holds, witness: (!holds).then(d) }
}

/// Evaluates L1-L7. An input whose genus is undefined fails every law.
pub fn check_sp_laws(d: &SpDataSet) -> Vec<LawReport> {
    let wit = || DataSet::Sp(d.clone());
    let Ok(g) = genus_sp(d) else {
        return Law::SP.iter().map(|&law| report(law, false, wit)).collect();
    };
    let (n, l, g0) = (d.n, d.l, d.g0);
    let m = d.cones.len() as i64;
    vec![
        report(Law::L1, l % 2 == 0 || n % 2 == 1, wit),
        report(Law::L2, gcd(l, n) != 1 || n <= 2 * g + 1, wit),
        report(Law::L3, 2 * g + m <= n * (2 * g0 + m) && n * (4 * g0 + m) <= 4 * g, wit),
        report(Law::L4, n <= 4 * g, wit),
        report(Law::L5, g0 < 1 || n < g, wit),
        report(Law::L6, n <= 2 * g || m == 1, wit),
        report(Law::L7, !is_essential_sp(d) || n > 2 * g, wit),
    ]
}

/// Evaluates M1-M5. A nonpositive denominator in M2 is reported as a violation.
pub fn check_se_laws(d: &SeDataSet) -> Vec<LawReport> {
    let wit = || DataSet::Se(d.clone());
    let Ok(g) = genus_se(d) else {
        return Law::SE.iter().map(|&law| report(law, false, wit)).collect();
    };
    let (two_n, l, g0) = (d.two_n, d.l, d.g0);
    let n = two_n / 2;
    let m = d.cones.len() as i64;
    let denom = 2 * g0 + m - 1;
    vec![
        report(Law::M1, l % 2 == 0 || n % 2 == 1, wit),
        report(Law::M2, denom > 0 && two_n * denom >= 2 * g + m, wit),
        report(Law::M3, two_n <= 4 * g + 2, wit),
        report(Law::M4, g0 != 0 || m >= 2, wit),
        report(Law::M5, !is_essential_se(d) || two_n >= 2 * g + 2, wit),
    ]
}

/// Law checks over a whole enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditSummary {
    pub genus: i64,
    pub kind: Kind,
    pub data_sets: usize,
    /// Number of data sets each law was checked on and held for.
    pub held: BTreeMap<Law, usize>,
    pub violations: Vec<LawReport>,
}

impl AuditSummary {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs the matching law checker over every data set of genus `g`.
pub fn audit(g: i64, kind: Kind) -> Result<AuditSummary, EnumerateError> {
    let reports: Vec<Vec<LawReport>> = match kind {
        Kind::Sp => enumerate_sp(g, &Filters::default())?.iter().map(check_sp_laws).collect(),
        Kind::Se => enumerate_se(g, &Filters::default())?.iter().map(check_se_laws).collect(),
    };
    let laws: &[Law] = match kind {
        Kind::Sp => &Law::SP,
        Kind::Se => &Law::SE,
    };
    let mut held: BTreeMap<Law, usize> = laws.iter().map(|&l| (l, 0)).collect();
    let mut violations = Vec::new();
    for r in reports.iter().flatten() {
        if r.holds {
            *held.entry(r.law).or_default() += 1;
        } else {
            violations.push(r.clone());
        }
    }
    Ok(AuditSummary { genus: g, kind, data_sets: reports.len(), held, violations })
}
