//! Seeded randomized checks runnable from the command line.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::archipelago::collapse_substitute;
use crate::word::{free_reduce, multiply_reduced, occurrence_count, project, Letter, Word};

use super::syntax::{format_word, parse_word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub cases: usize,
    /// Number of failing cases per check.
    pub checks: BTreeMap<String, usize>,
}

impl SelftestReport {
    pub fn failures(&self) -> usize {
        self.checks.values().sum()
    }
}

fn random_word(rng: &mut ChaCha8Rng, gens: u32, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new(
        (0..len)
            .map(|_| {
                let i = rng.gen_range(1..=gens);
                if rng.gen_bool(0.5) {
                    Letter::pos(i)
                } else {
                    Letter::neg(i)
                }
            })
            .collect(),
    )
}

/// Cancels adjacent inverse pairs in random order until none is left.
fn random_order_reduce(rng: &mut ChaCha8Rng, w: &Word) -> Vec<Letter> {
    let mut letters = w.letters().to_vec();
    loop {
        let spots: Vec<usize> = (0..letters.len().saturating_sub(1))
            .filter(|&i| letters[i].cancels(letters[i + 1]))
            .collect();
        if spots.is_empty() {
            return letters;
        }
        let i = spots[rng.gen_range(0..spots.len())];
        letters.drain(i..i + 2);
    }
}

pub fn run_selftest(seed: u64, cases: usize) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks: BTreeMap<String, usize> = BTreeMap::new();
    let mut record =
        |name: &str, ok: bool| *checks.entry(name.to_string()).or_default() += usize::from(!ok);
    for _ in 0..cases {
        let w = random_word(&mut rng, 10, 200);
        let r = free_reduce(&w);
        record(
            "confluence",
            r.letters() == random_order_reduce(&mut rng, &w).as_slice(),
        );

        let (m, n) = (rng.gen_range(0..=10), rng.gen_range(0..=10));
        let (lo, hi) = (m.min(n), m.max(n));
        record(
            "projection-functoriality",
            project(&project(&r, hi), lo) == project(&r, lo),
        );
        let k = rng.gen_range(1..=10);
        record(
            "count-monotone",
            (k..10).all(|n| {
                occurrence_count(&project(&r, n), k) <= occurrence_count(&project(&r, n + 1), k)
            }),
        );

        let v = free_reduce(&random_word(&mut rng, 10, 60));
        let big = rng.gen_range(1..=11);
        record(
            "collapse-multiplicative",
            collapse_substitute(&multiply_reduced(&r, &v), big)
                == multiply_reduced(&collapse_substitute(&r, big), &collapse_substitute(&v, big)),
        );

        let text = format_word(&w);
        let round = parse_word(&text).ok().and_then(|e| e.to_word().ok());
        record("parse-format", round.as_ref() == Some(&w));
    }
    SelftestReport {
        seed,
        cases,
        checks,
    }
}
