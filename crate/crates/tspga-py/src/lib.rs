//! Python bindings for the TSP GA toolkit.
//!
//! The module mirrors the Rust surface: [`Instance`], [`Oracle`], [`Tour`]
//! and [`Rng`] wrap their core counterparts, the mutation operators are
//! plain functions, and [`run_ga`] drives a full seeded run. Invalid input
//! raises `ValueError` instead of panicking.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use tspga_core as ga;

fn value_error(msg: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(msg.to_string())
}

fn parse_metric(name: Option<&str>) -> PyResult<Option<ga::Metric>> {
    name.map(|s| s.parse::<ga::Metric>().map_err(value_error))
        .transpose()
}

/// A symmetric EUC_2D problem instance.
#[pyclass(frozen, module = "tspga")]
#[derive(Debug)]
pub struct Instance {
    inner: ga::Instance,
}

#[pymethods]
impl Instance {
    /// Builds an instance from coordinate pairs; city ids are assigned 1..=N
    /// in list order. `metric` is "rounded" (default) or "real".
    #[new]
    #[pyo3(signature = (name, coords, metric=None, known_optimal=None))]
    fn new(
        name: &str,
        coords: Vec<(f64, f64)>,
        metric: Option<&str>,
        known_optimal: Option<f64>,
    ) -> PyResult<Instance> {
        let metric = parse_metric(metric)?.unwrap_or(ga::Metric::Euc2dRounded);
        let cities = coords
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| ga::City { id: i as u32 + 1, x, y })
            .collect();
        let inner = ga::Instance::new(name, cities, metric, known_optimal).map_err(value_error)?;
        Ok(Instance { inner })
    }

    /// Parses TSPLIB text.
    #[staticmethod]
    #[pyo3(signature = (text, metric=None))]
    fn parse(text: &str, metric: Option<&str>) -> PyResult<Instance> {
        let inner = ga::parse_instance(text, parse_metric(metric)?).map_err(value_error)?;
        Ok(Instance { inner })
    }

    /// Loads a TSPLIB file.
    #[staticmethod]
    #[pyo3(signature = (path, metric=None))]
    fn from_file(path: &str, metric: Option<&str>) -> PyResult<Instance> {
        let inner = ga::Instance::from_file(std::path::Path::new(path), parse_metric(metric)?)
            .map_err(value_error)?;
        Ok(Instance { inner })
    }

    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    #[getter]
    fn metric(&self) -> &'static str {
        self.inner.metric().name()
    }

    #[getter]
    fn known_optimal(&self) -> Option<f64> {
        self.inner.known_optimal()
    }

    /// Cities as `(id, x, y)` tuples in file order.
    #[getter]
    fn cities(&self) -> Vec<(u32, f64, f64)> {
        self.inner.cities().iter().map(|c| (c.id, c.x, c.y)).collect()
    }

    /// Renders the instance back to TSPLIB text.
    fn to_tsplib(&self) -> String {
        self.inner.to_tsplib()
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(name={:?}, dimension={}, metric={:?})",
            self.inner.name(),
            self.inner.dimension(),
            self.inner.metric().name()
        )
    }
}

/// Precomputed distance matrix and nearest-neighbour table.
#[pyclass(frozen, module = "tspga")]
pub struct Oracle {
    inner: ga::DistanceOracle,
}

impl Oracle {
    fn check_city(&self, c: u32) -> PyResult<()> {
        let n = self.inner.n() as u32;
        if c < 1 || c > n {
            return Err(value_error(format!("city {c} outside 1..={n}")));
        }
        Ok(())
    }

    fn check_tour(&self, tour: &Tour) -> PyResult<()> {
        for &c in tour.inner.order() {
            self.check_city(c)?;
        }
        Ok(())
    }
}

#[pymethods]
impl Oracle {
    /// Builds the oracle for `instance`, optionally overriding its metric.
    #[new]
    #[pyo3(signature = (instance, metric=None))]
    fn new(instance: PyRef<'_, Instance>, metric: Option<&str>) -> PyResult<Oracle> {
        let inner = match parse_metric(metric)? {
            Some(m) => ga::DistanceOracle::build_with_metric(&instance.inner, m),
            None => ga::DistanceOracle::build(&instance.inner),
        };
        Ok(Oracle { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn metric(&self) -> &'static str {
        self.inner.metric().name()
    }

    /// Distance between cities `a` and `b` (1-based ids).
    fn distance(&self, a: u32, b: u32) -> PyResult<f64> {
        self.check_city(a)?;
        self.check_city(b)?;
        Ok(self.inner.distance(a, b))
    }

    /// The city nearest to `c`; ties resolve to the smallest id.
    fn nearest(&self, c: u32) -> PyResult<u32> {
        self.check_city(c)?;
        Ok(self.inner.nearest(c))
    }

    /// Cost of the closed tour, including the edge back to the start.
    fn tour_cost(&self, tour: PyRef<'_, Tour>) -> PyResult<f64> {
        self.check_tour(&tour)?;
        Ok(self.inner.tour_cost(&tour.inner))
    }

    fn __repr__(&self) -> String {
        format!("Oracle(n={}, metric={:?})", self.inner.n(), self.inner.metric().name())
    }
}

/// A tour encoded as a sequence of 1-based city ids.
#[pyclass(frozen, eq, module = "tspga")]
#[derive(Debug, PartialEq)]
pub struct Tour {
    inner: ga::Tour,
}

#[pymethods]
impl Tour {
    /// Strict constructor: `order` must be a permutation of 1..=len(order).
    #[new]
    fn new(order: Vec<u32>) -> PyResult<Tour> {
        let inner = ga::Tour::new(order).map_err(value_error)?;
        Ok(Tour { inner })
    }

    /// Loose constructor: any sequence of distinct positive city ids.
    #[staticmethod]
    fn from_cities(order: Vec<u32>) -> PyResult<Tour> {
        let inner = ga::Tour::from_cities(order).map_err(value_error)?;
        Ok(Tour { inner })
    }

    /// Uniform random permutation of 1..=n.
    #[staticmethod]
    fn random(n: usize, rng: PyRefMut<'_, Rng>) -> PyResult<Tour> {
        if n == 0 {
            return Err(value_error("tour length must be positive"));
        }
        let mut rng = rng;
        Ok(Tour { inner: ga::Tour::random(n, &mut rng.inner) })
    }

    #[getter]
    fn order(&self) -> Vec<u32> {
        self.inner.order().to_vec()
    }

    /// 1-based position of `city` in the tour.
    fn position_of(&self, city: u32) -> PyResult<usize> {
        if self.inner.order().contains(&city) {
            Ok(self.inner.position_of(city))
        } else {
            Err(value_error(format!("city {city} not in tour")))
        }
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Tour({:?})", self.inner.order())
    }
}

/// Seedable deterministic random stream (same draws as the Rust toolkit).
#[pyclass(module = "tspga")]
pub struct Rng {
    inner: ga::Rng,
}

#[pymethods]
impl Rng {
    #[new]
    fn new(seed: u64) -> Rng {
        Rng { inner: ga::Rng::with_seed(seed) }
    }

    /// Uniform draw from the inclusive range lo..=hi.
    fn uniform_int(&mut self, lo: usize, hi: usize) -> PyResult<usize> {
        if lo > hi {
            return Err(value_error(format!("empty range {lo}..={hi}")));
        }
        Ok(ga::RandomSource::uniform_int(&mut self.inner, lo, hi))
    }

    fn __repr__(&self) -> &'static str {
        "Rng(chacha8)"
    }
}

fn checked_bounds(tour: &Tour, i: usize, j: usize) -> PyResult<ga::SegmentBounds> {
    let n = tour.inner.len();
    if !(1 <= i && i < j && j <= n) {
        return Err(value_error(format!("segment bounds need 1 <= i < j <= {n}, got ({i}, {j})")));
    }
    Ok(ga::SegmentBounds::new(i, j))
}

/// Rotates the window `i+1..=j` one step left.
#[pyfunction]
fn slide(tour: PyRef<'_, Tour>, i: usize, j: usize) -> PyResult<Tour> {
    let bounds = checked_bounds(&tour, i, j)?;
    Ok(Tour { inner: ga::slide(&tour.inner, bounds) })
}

/// Reverses the window `i+1..=j`.
#[pyfunction]
fn inversion(tour: PyRef<'_, Tour>, i: usize, j: usize) -> PyResult<Tour> {
    let bounds = checked_bounds(&tour, i, j)?;
    Ok(Tour { inner: ga::inversion(&tour.inner, bounds) })
}

/// Swaps the cities at 1-based positions `p` and `q`.
#[pyfunction]
fn exchange(tour: PyRef<'_, Tour>, p: usize, q: usize) -> PyResult<Tour> {
    let n = tour.inner.len();
    if !(1 <= p && p <= n && 1 <= q && q <= n) {
        return Err(value_error(format!("positions ({p}, {q}) outside 1..={n}")));
    }
    if p == q {
        return Err(value_error("exchange needs two distinct positions"));
    }
    Ok(Tour { inner: ga::exchange(&tour.inner, p, q) })
}

/// Draws ordered segment bounds `(i, j)` with `1 <= i < j <= n`.
#[pyfunction]
fn draw_segment(rng: PyRefMut<'_, Rng>, n: usize) -> PyResult<(usize, usize)> {
    if n < 2 {
        return Err(value_error(format!("cannot draw a segment from {n} position(s)")));
    }
    let mut rng = rng;
    let b = ga::draw_segment(&mut rng.inner, n);
    Ok((b.i(), b.j()))
}

/// Random-gene-beside-nearest-neighbour swap with explicit draws: swaps
/// position `p` with the position `offset` steps (circularly, nonzero,
/// within +/-5) from the tour position of `p`'s city's nearest neighbour.
#[pyfunction]
fn rgibnnm_at(
    tour: PyRef<'_, Tour>,
    p: usize,
    offset: i64,
    oracle: PyRef<'_, Oracle>,
) -> PyResult<Tour> {
    oracle.check_tour(&tour)?;
    let n = tour.inner.len();
    if !(1 <= p && p <= n) {
        return Err(value_error(format!("position {p} outside 1..={n}")));
    }
    if offset == 0 || !(-5..=5).contains(&offset) {
        return Err(value_error(format!("offset {offset} outside +/-1..5")));
    }
    let c = tour.inner.order()[p - 1];
    let q = tour.inner.position_of(oracle.inner.nearest(c));
    let t = ((q as i64 - 1 + offset).rem_euclid(n as i64)) as usize + 1;
    if t == p {
        return Err(value_error(format!("offset {offset} resolves to position {p} itself")));
    }
    Ok(Tour { inner: ga::rgibnnm_at(&tour.inner, p, offset, &oracle.inner) })
}

/// Random-gene-beside-nearest-neighbour swap with random draws.
#[pyfunction]
fn rgibnnm(
    tour: PyRef<'_, Tour>,
    rng: PyRefMut<'_, Rng>,
    oracle: PyRef<'_, Oracle>,
) -> PyResult<Tour> {
    oracle.check_tour(&tour)?;
    if tour.inner.len() < 2 {
        return Err(value_error("rgibnnm needs at least two cities"));
    }
    let mut rng = rng;
    Ok(Tour { inner: ga::rgibnnm(&tour.inner, &mut rng.inner, &oracle.inner) })
}

/// Inversion of a random segment followed by rgibnnm on the result.
#[pyfunction]
fn irgibnnm(
    tour: PyRef<'_, Tour>,
    rng: PyRefMut<'_, Rng>,
    oracle: PyRef<'_, Oracle>,
) -> PyResult<Tour> {
    oracle.check_tour(&tour)?;
    if tour.inner.len() < 2 {
        return Err(value_error("irgibnnm needs at least two cities"));
    }
    let mut rng = rng;
    Ok(Tour { inner: ga::irgibnnm(&tour.inner, &mut rng.inner, &oracle.inner) })
}

/// Select-best-mutation: runs slide, inversion and irgibnnm on `parent` and
/// returns the cheapest candidate not already in `population` as a
/// `(tour, cost, origin)` tuple, or `None` when every candidate is a
/// duplicate.
#[pyfunction]
fn sbm(
    py: Python<'_>,
    parent: PyRef<'_, Tour>,
    rng: PyRefMut<'_, Rng>,
    oracle: PyRef<'_, Oracle>,
    population: Vec<Py<Tour>>,
) -> PyResult<Option<(Tour, f64, &'static str)>> {
    oracle.check_tour(&parent)?;
    if parent.inner.len() < 2 {
        return Err(value_error("sbm needs at least two cities"));
    }
    let mut seen = ga::TourSet::new();
    for t in &population {
        seen.insert(&t.borrow(py).inner);
    }
    let mut rng = rng;
    Ok(ga::sbm(&parent.inner, &mut rng.inner, &oracle.inner, &seen)
        .map(|c| (Tour { inner: c.tour }, c.cost, c.origin.name())))
}

/// Results of one GA run.
#[pyclass(frozen, module = "tspga")]
#[derive(Debug)]
pub struct RunResult {
    #[pyo3(get)]
    best_fitness: f64,
    #[pyo3(get)]
    worst_fitness: f64,
    best_tour: ga::Tour,
    convergence: Vec<(usize, f64)>,
}

#[pymethods]
impl RunResult {
    #[getter]
    fn best_tour(&self) -> Tour {
        Tour { inner: self.best_tour.clone() }
    }

    /// `(generation, best cost so far)` pairs, entry 0 being the initial
    /// population's best; non-increasing.
    #[getter]
    fn convergence(&self) -> Vec<(usize, f64)> {
        self.convergence.clone()
    }

    fn __repr__(&self) -> String {
        format!(
            "RunResult(best_fitness={}, worst_fitness={}, generations={})",
            self.best_fitness,
            self.worst_fitness,
            self.convergence.len().saturating_sub(1)
        )
    }
}

/// Runs the seeded mutation-only GA on `instance`.
///
/// `operator` is one of "slide", "inversion", "rgibnnm", "irgibnnm", "sbm";
/// `metric` overrides the instance's metric when given.
#[pyfunction]
#[pyo3(signature = (instance, operator="sbm", population_size=100, generations=2000, seed=42, metric=None))]
fn run_ga(
    instance: PyRef<'_, Instance>,
    operator: &str,
    population_size: usize,
    generations: usize,
    seed: u64,
    metric: Option<&str>,
) -> PyResult<RunResult> {
    let operator: ga::Operator = operator.parse().map_err(value_error)?;
    let metric = parse_metric(metric)?.unwrap_or(instance.inner.metric());
    let config = ga::GaConfig { population_size, generations, operator, seed, metric };
    config.validate().map_err(value_error)?;
    let stats = ga::run(&config, &instance.inner);
    Ok(RunResult {
        best_fitness: stats.best_fitness,
        worst_fitness: stats.worst_fitness,
        best_tour: stats.best_tour,
        convergence: stats.convergence,
    })
}

#[pymodule]
fn tspga(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Instance>()?;
    m.add_class::<Oracle>()?;
    m.add_class::<Tour>()?;
    m.add_class::<Rng>()?;
    m.add_class::<RunResult>()?;
    m.add_function(wrap_pyfunction!(slide, m)?)?;
    m.add_function(wrap_pyfunction!(inversion, m)?)?;
    m.add_function(wrap_pyfunction!(exchange, m)?)?;
    m.add_function(wrap_pyfunction!(draw_segment, m)?)?;
    m.add_function(wrap_pyfunction!(rgibnnm, m)?)?;
    m.add_function(wrap_pyfunction!(rgibnnm_at, m)?)?;
    m.add_function(wrap_pyfunction!(irgibnnm, m)?)?;
    m.add_function(wrap_pyfunction!(sbm, m)?)?;
    m.add_function(wrap_pyfunction!(run_ga, m)?)?;
    m.add("RNG_ALGORITHM", ga::RNG_ALGORITHM)?;
    Ok(())
}
