//! Mutation-driven genetic algorithm toolkit for the symmetric travelling
//! salesman problem.
//!
//! The crate is organised around a small pipeline:
//!
//! * [`tsplib`] parses EUC_2D TSPLIB instances;
//! * [`distance`] precomputes the distance matrix and nearest neighbours;
//! * [`mutation`] implements the slide, inversion, exchange, rgibnnm and
//!   irgibnnm operators;
//! * [`sbm`] picks, per parent, the best non-duplicate candidate produced by
//!   slide, inversion and irgibnnm;
//! * [`engine`] evolves a population with elitist truncation reinsertion;
//! * [`experiment`] fans runs out over instances, operators and seeds and
//!   writes the CSV/manifest outputs.
//!
//! Every stochastic choice flows through [`rng::Rng`], so any run is exactly
//! reproducible from its seed.

pub mod distance;
pub mod engine;
pub mod experiment;
pub mod mutation;
pub mod rng;
pub mod sbm;
pub mod tsplib;

#[cfg(test)]
pub(crate) mod testing;

pub use distance::{euclidean, DistanceOracle, Tour, TourError};
pub use engine::{
    init_population, reinsert, run, run_with_oracle, step_generation, GaConfig, Member, Operator,
    Population, RunStats,
};
pub use experiment::{error_rate, run_experiment, ExperimentError, ExperimentSpec, ExperimentSummary};
pub use mutation::{draw_segment, exchange, inversion, irgibnnm, rgibnnm, rgibnnm_at, slide, SegmentBounds};
pub use rng::{RandomSource, Rng, RNG_ALGORITHM};
pub use sbm::{sbm, Candidate, MutationOrigin, TourSet};
pub use tsplib::{known_optimum, parse_instance, City, Instance, LoadError, Metric, ParseError};
