//! Tours and precomputed distances.
//!
//! A [`DistanceOracle`] holds the full symmetric N x N distance matrix plus
//! each city's nearest neighbour, so operators and the engine never touch
//! coordinates directly.

use thiserror::Error;

use crate::rng::Rng;
use crate::tsplib::{City, Instance, Metric};

/// A sequence of city ids describing a closed tour.
///
/// Equality is plain sequence equality: rotations and reflections of the
/// same cycle compare unequal even though they cost the same.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tour {
    order: Vec<u32>,
}

#[derive(Debug, Error, PartialEq)]
pub enum TourError {
    #[error("tour is empty")]
    Empty,
    #[error("duplicate city {0} in tour")]
    DuplicateCity(u32),
    #[error("city {id} outside 1..={n}")]
    OutOfRange { id: u32, n: usize },
    #[error("city ids are 1-based, got 0")]
    ZeroId,
}

impl Tour {
    /// Strict constructor for GA chromosomes: `order` must be a permutation
    /// of `{1..order.len()}`.
    pub fn new(order: Vec<u32>) -> Result<Tour, TourError> {
        let n = order.len();
        if n == 0 {
            return Err(TourError::Empty);
        }
        let mut seen = vec![false; n];
        for &id in &order {
            if id < 1 || id as usize > n {
                return Err(TourError::OutOfRange { id, n });
            }
            if std::mem::replace(&mut seen[id as usize - 1], true) {
                return Err(TourError::DuplicateCity(id));
            }
        }
        Ok(Tour { order })
    }

    /// Loose constructor: any sequence of distinct positive city ids. Used
    /// for operator-level work on partial id spaces; the engine always goes
    /// through [`Tour::new`].
    pub fn from_cities(order: Vec<u32>) -> Result<Tour, TourError> {
        if order.is_empty() {
            return Err(TourError::Empty);
        }
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted[0] == 0 {
            return Err(TourError::ZeroId);
        }
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(TourError::DuplicateCity(w[0]));
            }
        }
        Ok(Tour { order })
    }

    /// Uniform random permutation of `{1..n}` (Fisher-Yates).
    pub fn random(n: usize, rng: &mut Rng) -> Tour {
        let mut order: Vec<u32> = (1..=n as u32).collect();
        rng.shuffle(&mut order);
        Tour { order }
    }

    pub(crate) fn from_order_unchecked(order: Vec<u32>) -> Tour {
        debug_assert!(Tour::from_cities(order.clone()).is_ok());
        Tour { order }
    }

    pub fn order(&self) -> &[u32] {
        &self.order
    }

    pub fn into_order(self) -> Vec<u32> {
        self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// 1-based position of `city` in the tour. Panics if absent.
    pub fn position_of(&self, city: u32) -> usize {
        self.order
            .iter()
            .position(|&c| c == city)
            .map(|i| i + 1)
            .unwrap_or_else(|| panic!("city {city} not in tour"))
    }
}

/// Distance between two cities under the given metric.
///
/// Rounded mode follows the TSPLIB convention: nearest integer, halves away
/// from zero. The value is still carried as `f64`.
pub fn euclidean(a: &City, b: &City, metric: Metric) -> f64 {
    let d = ((a.x - b.x).powi(2) + (a.y - b.y).powi(2)).sqrt();
    match metric {
        Metric::Euc2dReal => d,
        Metric::Euc2dRounded => d.round(),
    }
}

/// Full N x N distance matrix plus nearest-neighbour table.
#[derive(Debug, Clone)]
pub struct DistanceOracle {
    n: usize,
    metric: Metric,
    dist: Vec<f64>,
    nearest: Vec<u32>,
}

impl DistanceOracle {
    /// Builds the oracle with the instance's own metric.
    pub fn build(instance: &Instance) -> DistanceOracle {
        Self::build_with_metric(instance, instance.metric())
    }

    /// Builds the oracle with an explicit metric, ignoring the instance's.
    pub fn build_with_metric(instance: &Instance, metric: Metric) -> DistanceOracle {
        let n = instance.dimension();
        let mut dist = vec![0.0; n * n];
        for a in 1..=n {
            for b in (a + 1)..=n {
                let d = euclidean(instance.city(a as u32), instance.city(b as u32), metric);
                dist[(a - 1) * n + (b - 1)] = d;
                dist[(b - 1) * n + (a - 1)] = d;
            }
        }
        let nearest = (1..=n)
            .map(|a| {
                let row = &dist[(a - 1) * n..a * n];
                let mut best = if a == 1 { 2u32 } else { 1u32 };
                for b in 1..=n {
                    if b != a && row[b - 1] < row[best as usize - 1] {
                        best = b as u32;
                    }
                }
                best
            })
            .collect();
        DistanceOracle { n, metric, dist, nearest }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    /// Distance between cities `a` and `b` (1-based ids).
    pub fn distance(&self, a: u32, b: u32) -> f64 {
        assert!(
            (1..=self.n as u32).contains(&a) && (1..=self.n as u32).contains(&b),
            "city pair ({a}, {b}) outside 1..={}",
            self.n
        );
        self.dist[(a as usize - 1) * self.n + (b as usize - 1)]
    }

    /// The city nearest to `c`; distance ties resolve to the smallest id.
    pub fn nearest(&self, c: u32) -> u32 {
        assert!(
            (1..=self.n as u32).contains(&c),
            "city {c} outside 1..={}",
            self.n
        );
        self.nearest[c as usize - 1]
    }

    /// Cost of the closed tour, including the edge back to the start.
    pub fn tour_cost(&self, tour: &Tour) -> f64 {
        let order = tour.order();
        let mut total = 0.0;
        for w in order.windows(2) {
            total += self.distance(w[0], w[1]);
        }
        total + self.distance(order[order.len() - 1], order[0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RandomSource;
    use crate::tsplib::Instance;

    fn instance_from_coords(coords: &[(f64, f64)], metric: Metric) -> Instance {
        let cities = coords
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| City { id: i as u32 + 1, x, y })
            .collect();
        Instance::new("test", cities, metric, None).unwrap()
    }

    fn random_instance(n: usize, seed: u64, metric: Metric) -> Instance {
        let mut rng = Rng::with_seed(seed);
        let coords: Vec<(f64, f64)> = (0..n)
            .map(|_| {
                (
                    rng.uniform_int(0, 10_000) as f64 / 100.0,
                    rng.uniform_int(0, 10_000) as f64 / 100.0,
                )
            })
            .collect();
        instance_from_coords(&coords, metric)
    }

    #[test]
    fn euclidean_three_four_five() {
        let inst = instance_from_coords(&[(0.0, 0.0), (3.0, 0.0), (3.0, 4.0)], Metric::Euc2dReal);
        for metric in [Metric::Euc2dReal, Metric::Euc2dRounded] {
            assert_eq!(euclidean(inst.city(1), inst.city(2), metric), 3.0);
            assert_eq!(euclidean(inst.city(2), inst.city(3), metric), 4.0);
            assert_eq!(euclidean(inst.city(1), inst.city(3), metric), 5.0);
        }
    }

    #[test]
    fn rounding_is_nearest_integer_halves_away_from_zero() {
        let inst = instance_from_coords(
            &[(0.0, 0.0), (1.0, 1.0), (2.5, 0.0), (1.5, 0.0)],
            Metric::Euc2dReal,
        );
        // sqrt(2) = 1.414... -> 1
        assert_eq!(euclidean(inst.city(1), inst.city(2), Metric::Euc2dRounded), 1.0);
        assert_eq!(euclidean(inst.city(1), inst.city(3), Metric::Euc2dRounded), 3.0);
        assert_eq!(euclidean(inst.city(1), inst.city(4), Metric::Euc2dRounded), 2.0);
        assert!((euclidean(inst.city(1), inst.city(2), Metric::Euc2dReal) - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn nearest_on_collinear_cities() {
        let inst =
            instance_from_coords(&[(0.0, 0.0), (1.0, 0.0), (3.0, 0.0)], Metric::Euc2dReal);
        let oracle = DistanceOracle::build(&inst);
        assert_eq!(oracle.nearest(1), 2);
        assert_eq!(oracle.nearest(2), 1);
        assert_eq!(oracle.nearest(3), 2);
    }

    #[test]
    fn nearest_ties_pick_smallest_id() {
        let inst = instance_from_coords(
            &[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)],
            Metric::Euc2dReal,
        );
        let oracle = DistanceOracle::build(&inst);
        // Cities 2 and 3 are both at distance 1 from city 1.
        assert_eq!(oracle.nearest(1), 2);
        assert_eq!(oracle.nearest(4), 2);
    }

    #[test]
    fn nearest_matches_independent_argmin() {
        let inst = random_instance(40, 404, Metric::Euc2dReal);
        let oracle = DistanceOracle::build(&inst);
        for a in 1..=40u32 {
            let mut best_id = 0u32;
            let mut best_d = f64::INFINITY;
            for b in 1..=40u32 {
                if b == a {
                    continue;
                }
                let ca = inst.city(a);
                let cb = inst.city(b);
                let d = ((ca.x - cb.x).powi(2) + (ca.y - cb.y).powi(2)).sqrt();
                if d < best_d {
                    best_d = d;
                    best_id = b;
                }
            }
            assert_eq!(oracle.nearest(a), best_id, "argmin mismatch for city {a}");
        }
    }

    #[test]
    fn matrix_is_symmetric_with_zero_diagonal() {
        let inst = random_instance(25, 7, Metric::Euc2dRounded);
        let oracle = DistanceOracle::build(&inst);
        for a in 1..=25u32 {
            assert_eq!(oracle.distance(a, a), 0.0);
            for b in 1..=25u32 {
                assert_eq!(oracle.distance(a, b), oracle.distance(b, a));
            }
        }
    }

    #[test]
    fn unit_square_tour_costs_four() {
        let inst = instance_from_coords(
            &[(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)],
            Metric::Euc2dReal,
        );
        let oracle = DistanceOracle::build(&inst);
        let tour = Tour::new(vec![1, 2, 3, 4]).unwrap();
        assert_eq!(oracle.tour_cost(&tour), 4.0);
        let rounded = DistanceOracle::build_with_metric(&inst, Metric::Euc2dRounded);
        assert_eq!(rounded.tour_cost(&tour), 4.0);
    }

    #[test]
    fn tour_cost_invariant_under_rotation_and_reversal() {
        let inst = random_instance(30, 99, Metric::Euc2dRounded);
        let oracle = DistanceOracle::build(&inst);
        let mut rng = Rng::with_seed(1);
        let tour = Tour::random(30, &mut rng);
        let base = oracle.tour_cost(&tour);

        let mut rotated = tour.order().to_vec();
        rotated.rotate_left(11);
        assert_eq!(oracle.tour_cost(&Tour::new(rotated).unwrap()), base);

        let mut reversed = tour.order().to_vec();
        reversed.reverse();
        assert_eq!(oracle.tour_cost(&Tour::new(reversed).unwrap()), base);
    }

    #[test]
    fn position_of_is_one_based() {
        let tour = Tour::from_cities(vec![5, 3, 10, 2, 1, 8, 9, 7, 4]).unwrap();
        assert_eq!(tour.position_of(3), 2);
        assert_eq!(tour.position_of(5), 1);
        assert_eq!(tour.position_of(4), 9);
    }

    #[test]
    fn strict_constructor_enforces_permutation() {
        assert!(Tour::new(vec![2, 3, 1]).is_ok());
        assert_eq!(Tour::new(vec![]).unwrap_err(), TourError::Empty);
        assert_eq!(
            Tour::new(vec![1, 1, 2]).unwrap_err(),
            TourError::DuplicateCity(1)
        );
        assert_eq!(
            Tour::new(vec![1, 2, 4]).unwrap_err(),
            TourError::OutOfRange { id: 4, n: 3 }
        );
    }

    #[test]
    fn loose_constructor_allows_id_gaps() {
        let t = Tour::from_cities(vec![5, 3, 10]).unwrap();
        assert_eq!(t.order(), [5, 3, 10]);
        assert_eq!(
            Tour::from_cities(vec![5, 3, 5]).unwrap_err(),
            TourError::DuplicateCity(5)
        );
        assert_eq!(Tour::from_cities(vec![0, 1]).unwrap_err(), TourError::ZeroId);
    }

    #[test]
    fn random_tours_are_valid_and_seed_deterministic() {
        let mut a = Rng::with_seed(5);
        let mut b = Rng::with_seed(5);
        let ta = Tour::random(20, &mut a);
        let tb = Tour::random(20, &mut b);
        assert_eq!(ta, tb);
        let mut sorted = ta.order().to_vec();
        sorted.sort_unstable();
        assert_eq!(sorted, (1..=20).collect::<Vec<_>>());
        let tc = Tour::random(20, &mut a);
        assert_ne!(ta, tc);
    }

    #[test]
    fn sequence_equality_distinguishes_rotations() {
        let a = Tour::new(vec![1, 2, 3, 4]).unwrap();
        let b = Tour::new(vec![2, 3, 4, 1]).unwrap();
        assert_ne!(a, b);
        assert_eq!(a, Tour::new(vec![1, 2, 3, 4]).unwrap());
    }

    #[test]
    fn single_city_partial_tour_costs_zero() {
        let inst =
            instance_from_coords(&[(0.0, 0.0), (1.0, 0.0), (3.0, 0.0)], Metric::Euc2dReal);
        let oracle = DistanceOracle::build(&inst);
        let t = Tour::from_cities(vec![2]).unwrap();
        assert_eq!(oracle.tour_cost(&t), 0.0);
    }
}
