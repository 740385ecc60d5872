//! Select Best Mutation: per parent, run slide, inversion and irgibnnm, then
//! keep the cheapest candidate whose tour is not already in the population.

use std::collections::HashSet;

use crate::distance::{DistanceOracle, Tour};
use crate::mutation::{draw_segment, inversion, irgibnnm, slide};
use crate::rng::RandomSource;

/// Which operator produced a candidate. Declaration order doubles as the
/// tie-break priority when candidates cost the same.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MutationOrigin {
    Slide,
    Inversion,
    Irgibnnm,
}

impl MutationOrigin {
    pub fn name(self) -> &'static str {
        match self {
            MutationOrigin::Slide => "slide",
            MutationOrigin::Inversion => "inversion",
            MutationOrigin::Irgibnnm => "irgibnnm",
        }
    }
}

/// A mutated tour with its cost and provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub tour: Tour,
    pub cost: f64,
    pub origin: MutationOrigin,
}

/// Membership index over tour sequences (exact sequence equality, O(1)
/// average lookup). Kept alongside a population so duplicate checks never
/// scan it.
#[derive(Debug, Clone, Default)]
pub struct TourSet {
    set: HashSet<Vec<u32>>,
}

impl TourSet {
    pub fn new() -> TourSet {
        TourSet::default()
    }

    /// Returns false if the tour was already present.
    pub fn insert(&mut self, tour: &Tour) -> bool {
        self.set.insert(tour.order().to_vec())
    }

    pub fn contains(&self, tour: &Tour) -> bool {
        self.set.contains(tour.order())
    }

    /// Number of distinct tours.
    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }
}

/// Selection core: candidates sorted by cost ascending (ties broken by
/// [`MutationOrigin`] priority), first one absent from `seen` wins.
pub fn select_candidate(mut candidates: Vec<Candidate>, seen: &TourSet) -> Option<Candidate> {
    candidates.sort_by(|a, b| a.cost.total_cmp(&b.cost).then(a.origin.cmp(&b.origin)));
    candidates.into_iter().find(|c| !seen.contains(&c.tour))
}

/// Runs all three mutations on `parent` (draw order: slide segment,
/// inversion segment, irgibnnm) and picks the best non-duplicate candidate.
/// All three candidates are generated unconditionally, so the draw schedule
/// never depends on the population's contents. Returns `None` when every
/// candidate is already in the population.
pub fn sbm<R: RandomSource + ?Sized>(
    parent: &Tour,
    rng: &mut R,
    oracle: &DistanceOracle,
    seen: &TourSet,
) -> Option<Candidate> {
    let n = parent.len();
    let slid = slide(parent, draw_segment(rng, n));
    let inverted = inversion(parent, draw_segment(rng, n));
    let composed = irgibnnm(parent, rng, oracle);
    let candidates = vec![
        Candidate {
            cost: oracle.tour_cost(&slid),
            tour: slid,
            origin: MutationOrigin::Slide,
        },
        Candidate {
            cost: oracle.tour_cost(&inverted),
            tour: inverted,
            origin: MutationOrigin::Inversion,
        },
        Candidate {
            cost: oracle.tour_cost(&composed),
            tour: composed,
            origin: MutationOrigin::Irgibnnm,
        },
    ];
    select_candidate(candidates, seen)
}
