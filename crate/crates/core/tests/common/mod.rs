#![allow(dead_code)]

use casemod_core::reductions::{gen_random_source, SizeParams, SourceInstance, SourceKind};
use casemod_core::ReuseInstance;

/// |V| ≤ 4, |D(v)| ≤ 3, |A| ≤ 5, M ≤ 4.
pub fn small_params() -> SizeParams {
    SizeParams {
        size: 4,
        domain: 3,
        actions: 5,
        budget: 4,
        ..SizeParams::default()
    }
}

pub fn random_casemod(seed: u64, params: &SizeParams) -> ReuseInstance {
    match gen_random_source(SourceKind::CaseMod, seed, params).expect("generator succeeds") {
        SourceInstance::Reuse(r) => r,
        _ => unreachable!("casemod kind yields a reuse instance"),
    }
}

pub fn casemod_suite(seeds: std::ops::Range<u64>) -> Vec<ReuseInstance> {
    let params = small_params();
    seeds.map(|s| random_casemod(s, &params)).collect()
}

pub const EXAMPLE3: &str = include_str!("../data/example3.cm");
