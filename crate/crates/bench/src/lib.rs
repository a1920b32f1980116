//! Shared fixtures for the criterion benchmarks.

use cutoffgame_core::game::Configuration;
use cutoffgame_core::graph::{build_family, CoxeterGraph, Family};

pub fn d4() -> CoxeterGraph {
    build_family(Family::D(4)).expect("D4 builds")
}

pub fn d4_tilde() -> CoxeterGraph {
    build_family(Family::DTilde(4)).expect("D~4 builds")
}

pub fn e8_tilde() -> CoxeterGraph {
    build_family(Family::ETilde(8)).expect("E~8 builds")
}

/// All integral configurations with amplitudes in [low, high].
pub fn integer_box(n: usize, low: i64, high: i64) -> Vec<Configuration> {
    let mut out = Vec::new();
    let mut amps = vec![low; n];
    'outer: loop {
        out.push(Configuration::from_ints(&amps));
        for k in 0..n {
            if amps[k] < high {
                amps[k] += 1;
                continue 'outer;
            }
            amps[k] = low;
        }
        break;
    }
    out
}
