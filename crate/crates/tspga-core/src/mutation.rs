//! Tour mutation operators.
//!
//! All five operators are pure: they take a tour by reference and return a
//! new one. Each randomized operator is split into a deterministic core
//! taking explicit positions and a thin wrapper that draws those positions
//! from a [`RandomSource`], so tests can replay exact traces.
//!
//! Positions are 1-based throughout, matching city ids. A segment is chosen
//! by two distinct positions `i < j`; the mutated window is `i+1..=j`
//! inclusive, so the city at `i` itself never moves.

use crate::distance::{DistanceOracle, Tour};
use crate::rng::RandomSource;

/// A drawn segment: positions `1 <= i < j <= N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegmentBounds {
    i: usize,
    j: usize,
}

impl SegmentBounds {
    pub fn new(i: usize, j: usize) -> SegmentBounds {
        assert!(i >= 1 && i < j, "segment bounds need 1 <= i < j, got ({i}, {j})");
        SegmentBounds { i, j }
    }

    pub fn i(self) -> usize {
        self.i
    }

    pub fn j(self) -> usize {
        self.j
    }
}

/// Draws two distinct positions uniformly from `1..=n` (redrawing the second
/// while it collides with the first) and returns them ordered.
pub fn draw_segment<R: RandomSource + ?Sized>(rng: &mut R, n: usize) -> SegmentBounds {
    assert!(n >= 2, "cannot draw a segment from {n} position(s)");
    let a = rng.uniform_int(1, n);
    let mut b = rng.uniform_int(1, n);
    while b == a {
        b = rng.uniform_int(1, n);
    }
    SegmentBounds::new(a.min(b), a.max(b))
}

/// Rotates the window `i+1..=j` one step left: each city in it moves one
/// position earlier and the city at `i+1` wraps around to position `j`.
pub fn slide(tour: &Tour, bounds: SegmentBounds) -> Tour {
    let mut order = tour.order().to_vec();
    assert!(bounds.j <= order.len(), "segment {bounds:?} exceeds tour length");
    // 1-based positions i+1..=j are exactly the 0-based slice i..j.
    order[bounds.i..bounds.j].rotate_left(1);
    Tour::from_order_unchecked(order)
}

/// Reverses the window `i+1..=j`.
pub fn inversion(tour: &Tour, bounds: SegmentBounds) -> Tour {
    let mut order = tour.order().to_vec();
    assert!(bounds.j <= order.len(), "segment {bounds:?} exceeds tour length");
    order[bounds.i..bounds.j].reverse();
    Tour::from_order_unchecked(order)
}

/// Swaps the cities at positions `p` and `q` (1-based, distinct).
pub fn exchange(tour: &Tour, p: usize, q: usize) -> Tour {
    let n = tour.len();
    assert!(p >= 1 && q >= 1 && p <= n && q <= n, "positions ({p}, {q}) outside 1..={n}");
    assert_ne!(p, q, "exchange needs two distinct positions");
    let mut order = tour.order().to_vec();
    order.swap(p - 1, q - 1);
    Tour::from_order_unchecked(order)
}

pub(crate) struct RgibnnmDraw {
    pub p: usize,
    pub q: usize,
    pub t: usize,
}

/// Target position for the rgibnnm swap: `offset` steps (circularly) away
/// from `q`, 1-based.
fn offset_position(q: usize, offset: i64, n: usize) -> usize {
    (q as i64 - 1 + offset).rem_euclid(n as i64) as usize + 1
}

fn draw_offset<R: RandomSource + ?Sized>(rng: &mut R) -> i64 {
    // Uniform over {-5..-1, 1..5}: ten outcomes, zero excluded.
    let k = rng.uniform_int(0, 9) as i64;
    if k < 5 {
        k - 5
    } else {
        k - 4
    }
}

pub(crate) fn rgibnnm_draws<R: RandomSource + ?Sized>(
    tour: &Tour,
    rng: &mut R,
    oracle: &DistanceOracle,
) -> RgibnnmDraw {
    let n = tour.len();
    let p = rng.uniform_int(1, n);
    let c = tour.order()[p - 1];
    let q = tour.position_of(oracle.nearest(c));
    let mut t = q; // fallback if every draw lands back on p
    for _ in 0..32 {
        let candidate = offset_position(q, draw_offset(rng), n);
        if candidate != p {
            t = candidate;
            break;
        }
    }
    RgibnnmDraw { p, q, t }
}

/// Deterministic rgibnnm core: swaps position `p` with the position `offset`
/// steps (circularly) from the tour position of `p`'s city's nearest
/// neighbour. The resolved target must differ from `p`.
pub fn rgibnnm_at(tour: &Tour, p: usize, offset: i64, oracle: &DistanceOracle) -> Tour {
    let n = tour.len();
    assert!(p >= 1 && p <= n, "position {p} outside 1..={n}");
    assert!((-5..=5).contains(&offset) && offset != 0, "offset {offset} outside +/-1..5");
    let c = tour.order()[p - 1];
    let q = tour.position_of(oracle.nearest(c));
    let t = offset_position(q, offset, n);
    assert_ne!(t, p, "offset {offset} resolves to the drawn position itself");
    exchange(tour, p, t)
}

/// Random Gene Inserted Beside Nearest Neighbour Mutation: picks a random
/// position `p`, finds the tour position `q` of the nearest neighbour of the
/// city at `p`, and swaps `p` with a position drawn uniformly from the
/// circular window `q +/- 5` (offset 0 excluded). Draws landing back on `p`
/// are redrawn (at most 32 draws, then the swap falls back to `q` itself).
pub fn rgibnnm<R: RandomSource + ?Sized>(
    tour: &Tour,
    rng: &mut R,
    oracle: &DistanceOracle,
) -> Tour {
    assert!(tour.len() >= 2, "rgibnnm needs at least two cities");
    let draw = rgibnnm_draws(tour, rng, oracle);
    debug_assert!(
        {
            let n = tour.len() as i64;
            let d = (draw.t as i64 - draw.q as i64).rem_euclid(n);
            d == 0 || d <= 5 || d >= n - 5
        },
        "target must stay within the +/-5 window around the neighbour"
    );
    exchange(tour, draw.p, draw.t)
}

/// Inversion followed by rgibnnm on the inverted tour. Draw order: segment
/// `i`, segment `j`, position `p`, offset.
pub fn irgibnnm<R: RandomSource + ?Sized>(
    tour: &Tour,
    rng: &mut R,
    oracle: &DistanceOracle,
) -> Tour {
    let inverted = inversion(tour, draw_segment(rng, tour.len()));
    rgibnnm(&inverted, rng, oracle)
}
