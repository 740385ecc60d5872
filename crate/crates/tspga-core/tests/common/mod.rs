//! Helpers shared by the integration test binaries.
#![allow(dead_code)]

use std::path::PathBuf;

use tspga_core::{Instance, Metric};

/// Path of a file in the workspace-level `instances/` directory.
pub fn instance_path(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../instances")
        .join(file)
}

pub fn load_instance(file: &str, metric: Metric) -> Instance {
    Instance::from_file(&instance_path(file), Some(metric))
        .unwrap_or_else(|e| panic!("cannot load bundled instance {file}: {e}"))
}

/// Tour cost computed straight from coordinates, bypassing `DistanceOracle`.
pub fn direct_cost(inst: &Instance, order: &[u32], metric: Metric) -> f64 {
    let pos = |id: u32| {
        let c = inst.city(id);
        (c.x, c.y)
    };
    let mut total = 0.0;
    for w in order.windows(2) {
        total += direct_distance(pos(w[0]), pos(w[1]), metric);
    }
    total += direct_distance(pos(order[order.len() - 1]), pos(order[0]), metric);
    total
}

fn direct_distance(a: (f64, f64), b: (f64, f64), metric: Metric) -> f64 {
    let d = (a.0 - b.0).hypot(a.1 - b.1);
    match metric {
        Metric::Euc2dRounded => d.round(),
        Metric::Euc2dReal => d,
    }
}

/// Exact optimum by enumeration: city 1 fixed as start, all (n-1)!
/// orderings of the rest. Only sensible for n <= 9.
pub fn brute_force_optimum(inst: &Instance, metric: Metric) -> f64 {
    let n = inst.dimension();
    assert!((3..=9).contains(&n), "brute force restricted to 3..=9 cities");
    let mut rest: Vec<u32> = (2..=n as u32).collect();
    let mut best = f64::INFINITY;
    permute(&mut rest, 0, &mut |perm| {
        let mut order = Vec::with_capacity(n);
        order.push(1);
        order.extend_from_slice(perm);
        let c = direct_cost(inst, &order, metric);
        if c < best {
            best = c;
        }
    });
    best
}

fn permute(xs: &mut [u32], k: usize, visit: &mut impl FnMut(&[u32])) {
    if k == xs.len() {
        visit(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permute(xs, k + 1, visit);
        xs.swap(k, i);
    }
}
