#![allow(dead_code)]

use fracpow::notation::parse_data_set;
use fracpow::{DataSet, Exponent};

pub const S5_SP: &str = include_str!("../data/s5_sp_listing.txt");
pub const S5_SE: &str = include_str!("../data/s5_se_listing.txt");

/// `(reference header, data set)` pairs from a listing fixture.
pub fn listing(text: &str) -> Vec<(Exponent, DataSet)> {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (hdr, tuple) = l.split_once('|').expect("header | tuple");
            let hdr: Exponent = hdr.trim().parse().expect("header exponent");
            let d = parse_data_set(tuple.trim(), None).expect("tuple");
            (hdr, d)
        })
        .collect()
}
