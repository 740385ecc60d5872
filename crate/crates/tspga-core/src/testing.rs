//! Test-only helpers.

use std::collections::VecDeque;

use crate::rng::RandomSource;

/// A [`RandomSource`] that replays a fixed list of draw results, for forcing
/// exact operator traces in tests.
pub(crate) struct ScriptedRng {
    draws: VecDeque<usize>,
}

impl ScriptedRng {
    pub(crate) fn new(draws: &[usize]) -> ScriptedRng {
        ScriptedRng {
            draws: draws.iter().copied().collect(),
        }
    }

    pub(crate) fn assert_exhausted(&self) {
        assert!(
            self.draws.is_empty(),
            "scripted draws left over: {:?}",
            self.draws
        );
    }
}

impl RandomSource for ScriptedRng {
    fn uniform_int(&mut self, lo: usize, hi: usize) -> usize {
        let v = self
            .draws
            .pop_front()
            .unwrap_or_else(|| panic!("scripted draws exhausted (range {lo}..={hi})"));
        assert!(
            (lo..=hi).contains(&v),
            "scripted draw {v} outside requested range {lo}..={hi}"
        );
        v
    }
}
