//! Generational GA engine.
//!
//! Selection is uniform random with replacement, reproduction is mutation
//! only, and reinsertion is elitist truncation: parents and offspring are
//! pooled, sorted by cost, and the best `population_size` survive. The best
//! cost therefore never increases from one generation to the next.

use crate::distance::{DistanceOracle, Tour};
use crate::mutation::{draw_segment, inversion, irgibnnm, rgibnnm, slide};
use crate::rng::{RandomSource, Rng};
use crate::sbm::{sbm, TourSet};
use crate::tsplib::{Instance, Metric};

/// Mutation strategy driving a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operator {
    Slide,
    Inversion,
    Rgibnnm,
    Irgibnnm,
    Sbm,
}

impl Operator {
    pub const ALL: [Operator; 5] = [
        Operator::Slide,
        Operator::Inversion,
        Operator::Rgibnnm,
        Operator::Irgibnnm,
        Operator::Sbm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Operator::Slide => "slide",
            Operator::Inversion => "inversion",
            Operator::Rgibnnm => "rgibnnm",
            Operator::Irgibnnm => "irgibnnm",
            Operator::Sbm => "sbm",
        }
    }
}

impl std::fmt::Display for Operator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Operator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "slide" => Ok(Operator::Slide),
            "inversion" => Ok(Operator::Inversion),
            "rgibnnm" => Ok(Operator::Rgibnnm),
            "irgibnnm" => Ok(Operator::Irgibnnm),
            "sbm" => Ok(Operator::Sbm),
            other => Err(format!(
                "unknown operator {other:?}, expected slide|inversion|rgibnnm|irgibnnm|sbm"
            )),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GaConfig {
    /// Number of tours kept between generations (>= 2).
    pub population_size: usize,
    /// Number of evolution steps (>= 1).
    pub generations: usize,
    pub operator: Operator,
    pub seed: u64,
    pub metric: Metric,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population_size: 100,
            generations: 2000,
            operator: Operator::Sbm,
            seed: 42,
            metric: Metric::Euc2dRounded,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.population_size < 2 {
            return Err(format!(
                "population_size must be >= 2, got {}",
                self.population_size
            ));
        }
        if self.generations < 1 {
            return Err("generations must be >= 1".to_string());
        }
        Ok(())
    }
}

/// A tour with its cached cost.
#[derive(Debug, Clone, PartialEq)]
pub struct Member {
    pub tour: Tour,
    pub cost: f64,
}

/// A population plus a membership index over its tour sequences.
#[derive(Debug, Clone)]
pub struct Population {
    members: Vec<Member>,
    index: TourSet,
}

impl Population {
    pub fn from_members(members: Vec<Member>) -> Population {
        let mut index = TourSet::new();
        for m in &members {
            index.insert(&m.tour);
        }
        Population { members, index }
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, tour: &Tour) -> bool {
        self.index.contains(tour)
    }

    pub(crate) fn index(&self) -> &TourSet {
        &self.index
    }

    pub fn best(&self) -> &Member {
        self.members
            .iter()
            .min_by(|a, b| a.cost.total_cmp(&b.cost))
            .expect("population is never empty")
    }

    pub fn worst(&self) -> &Member {
        self.members
            .iter()
            .max_by(|a, b| a.cost.total_cmp(&b.cost))
            .expect("population is never empty")
    }
}

/// `size` uniform random permutations of `{1..n}`, duplicates permitted.
pub fn init_population(
    rng: &mut Rng,
    n: usize,
    size: usize,
    oracle: &DistanceOracle,
) -> Population {
    let members = (0..size)
        .map(|_| {
            let tour = Tour::random(n, rng);
            let cost = oracle.tour_cost(&tour);
            Member { tour, cost }
        })
        .collect();
    Population::from_members(members)
}

/// Pools survivors and offspring, sorts by cost ascending (stable, so
/// equal-cost members keep their order: old before new), and truncates back
/// to `size`.
pub fn reinsert(old: Vec<Member>, offspring: Vec<Member>, size: usize) -> Population {
    let mut union = old;
    union.extend(offspring);
    union.sort_by(|a, b| a.cost.total_cmp(&b.cost));
    union.truncate(size);
    Population::from_members(union)
}

/// One generation: `population_size` parent draws (uniform, with
/// replacement), one mutation per draw, then elitist truncation. With the
/// SBM operator a draw may produce no offspring (all candidates already in
/// the population).
pub fn step_generation(
    pop: &Population,
    config: &GaConfig,
    oracle: &DistanceOracle,
    rng: &mut Rng,
) -> Population {
    assert!(!pop.is_empty(), "population must not be empty");
    let n = pop.members[0].tour.len();
    let mut offspring: Vec<Member> = Vec::with_capacity(config.population_size);
    for _ in 0..config.population_size {
        let parent = &pop.members[rng.uniform_int(0, pop.len() - 1)];
        let child = match config.operator {
            Operator::Slide => Some(slide(&parent.tour, draw_segment(rng, n))),
            Operator::Inversion => Some(inversion(&parent.tour, draw_segment(rng, n))),
            Operator::Rgibnnm => Some(rgibnnm(&parent.tour, rng, oracle)),
            Operator::Irgibnnm => Some(irgibnnm(&parent.tour, rng, oracle)),
            Operator::Sbm => {
                if let Some(c) = sbm(&parent.tour, rng, oracle, pop.index()) {
                    offspring.push(Member { cost: c.cost, tour: c.tour });
                }
                None
            }
        };
        if let Some(tour) = child {
            let cost = oracle.tour_cost(&tour);
            offspring.push(Member { tour, cost });
        }
    }
    reinsert(pop.members.clone(), offspring, config.population_size)
}

/// Per-run results. `convergence` holds `generations + 1` entries of
/// `(generation, best cost so far)`, entry 0 being the initial population's
/// best; it is non-increasing and ends at `best_fitness`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunStats {
    pub best_fitness: f64,
    pub worst_fitness: f64,
    pub best_tour: Tour,
    pub convergence: Vec<(usize, f64)>,
}

/// Runs the GA against a prebuilt oracle.
pub fn run_with_oracle(config: &GaConfig, oracle: &DistanceOracle) -> RunStats {
    if let Err(msg) = config.validate() {
        panic!("invalid GaConfig: {msg}");
    }
    let mut rng = Rng::with_seed(config.seed);
    let mut pop = init_population(&mut rng, oracle.n(), config.population_size, oracle);
    let mut convergence = Vec::with_capacity(config.generations + 1);
    convergence.push((0, pop.best().cost));
    for g in 1..=config.generations {
        pop = step_generation(&pop, config, oracle, &mut rng);
        convergence.push((g, pop.best().cost));
    }
    let best = pop.best().clone();
    RunStats {
        best_fitness: best.cost,
        worst_fitness: pop.worst().cost,
        best_tour: best.tour,
        convergence,
    }
}

/// Runs the GA on an instance, evaluating distances under `config.metric`.
pub fn run(config: &GaConfig, instance: &Instance) -> RunStats {
    let oracle = DistanceOracle::build_with_metric(instance, config.metric);
    run_with_oracle(config, &oracle)
}
