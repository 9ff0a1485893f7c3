use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slocc_core::oracle::orbit::{orbit_on, Canonical, OrbitOptions, OrbitState};
use slocc_core::{Complex64, ExactComplex};

use crate::records::{Mode, ParsedState, StateRecord};

fn parsed<S>(state: OrbitState<S>, wrap3: fn(slocc_core::State3<S>) -> ParsedState, wrap4: fn(slocc_core::State4<S>) -> ParsedState) -> ParsedState {
    match state {
        OrbitState::Three(s) => wrap3(s),
        OrbitState::Four(s) => wrap4(s),
    }
}

/// `count` orbit states of `class` from one generator seeded with `seed`.
pub fn records(class: Canonical, seed: u64, count: usize, mode: Mode) -> Vec<StateRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = OrbitOptions::default();
    (0..count)
        .map(|k| {
            let state = match mode {
                Mode::Exact => parsed(orbit_on::<ExactComplex, _>(class, &mut rng, &opts), ParsedState::Exact3, ParsedState::Exact4),
                Mode::Float => parsed(orbit_on::<Complex64, _>(class, &mut rng, &opts), ParsedState::Float3, ParsedState::Float4),
            };
            StateRecord::from_state(format!("{}-{seed}-{k}", class.name()), &state)
        })
        .collect()
}

pub fn run(class: Canonical, seed: u64, count: usize, mode: Mode, mut output: impl Write) -> std::io::Result<()> {
    for r in records(class, seed, count, mode) {
        serde_json::to_writer(&mut output, &r)?;
        output.write_all(b"\n")?;
    }
    output.flush()
}
