//! Python bindings. Instances and colorings cross the boundary as JSON text
//! in the same format the command-line tool reads and writes.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use netcolor_core::generators::{self, ObjectKind, RandomParams};
use netcolor_core::instance::{ColoringDoc, Instance};
use netcolor_core::run::{self, Algorithm, Limits};
use netcolor_core::validator::{Mode, DEFAULT_BRUTE_FORCE_LIMIT};
use netcolor_core::{NetObject, NetworkSpace, Rational, SpaceKind};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn network(space: NetworkSpace, objects: impl IntoIterator<Item = NetObject>) -> String {
    Instance::Network { space, objects: objects.into_iter().collect() }.to_json()
}

/// Names of the available colorers.
#[pyfunction]
fn algorithms() -> Vec<&'static str> {
    Algorithm::ALL.iter().map(|a| a.name()).collect()
}

/// Colors an instance and returns the coloring document.
#[pyfunction]
#[pyo3(signature = (instance, algorithm, exact_mis=None, exact_4color=None))]
fn color(instance: &str, algorithm: &str, exact_mis: Option<usize>, exact_4color: Option<usize>) -> PyResult<String> {
    let inst = Instance::from_json(instance).map_err(value_error)?;
    let alg: Algorithm = algorithm.parse().map_err(value_error)?;
    let d = Limits::default();
    let limits = Limits { exact_mis: exact_mis.unwrap_or(d.exact_mis), exact_4color: exact_4color.unwrap_or(d.exact_4color) };
    Ok(run::color(&inst, alg, limits).map_err(value_error)?.to_json())
}

/// Checks a coloring document. Returns `(valid, witness)` where the witness
/// describes a violating point.
#[pyfunction]
#[pyo3(signature = (instance, coloring, mode=None))]
fn validate(instance: &str, coloring: &str, mode: Option<&str>) -> PyResult<(bool, Option<String>)> {
    let inst = Instance::from_json(instance).map_err(value_error)?;
    let doc = ColoringDoc::from_json(coloring).map_err(value_error)?;
    let mode = match mode {
        Some(m) => m.parse::<Mode>().map_err(value_error)?,
        None => doc.algorithm.parse::<Algorithm>().map(Algorithm::mode).unwrap_or(Mode::Nm),
    };
    let v = run::validate(&inst, &doc.coloring(), mode).map_err(value_error)?;
    Ok((v.valid, v.witness.map(|w| w.to_string())))
}

/// Exact minimum palette size for `mode`.
#[pyfunction]
#[pyo3(signature = (instance, mode, limit=DEFAULT_BRUTE_FORCE_LIMIT))]
fn oracle(instance: &str, mode: &str, limit: usize) -> PyResult<usize> {
    let inst = Instance::from_json(instance).map_err(value_error)?;
    run::oracle(&inst, mode.parse().map_err(value_error)?, limit).map_err(value_error)
}

#[pyfunction]
fn gen_star_pairs(k: usize, l: usize, n: usize) -> PyResult<String> {
    let (space, trees) = generators::gen_star_pairs(k, l, n).map_err(value_error)?;
    Ok(network(space, trees.into_iter().map(NetObject::Subtree)))
}

#[pyfunction]
fn gen_binary_tree_paths(k: usize, n: usize) -> PyResult<String> {
    let (space, trees) = generators::gen_binary_tree_paths(k, n).map_err(value_error)?;
    Ok(network(space, trees.into_iter().map(NetObject::Subtree)))
}

#[pyfunction]
fn gen_comb(t: usize) -> PyResult<String> {
    let (space, balls) = generators::gen_comb(t).map_err(value_error)?;
    Ok(network(space, balls.into_iter().map(NetObject::Ball)))
}

#[pyfunction]
#[pyo3(signature = (radius="2/3"))]
fn gen_k4(radius: &str) -> PyResult<String> {
    let r: Rational = radius.parse().map_err(value_error)?;
    let (space, balls) = generators::gen_k4(r).map_err(value_error)?;
    Ok(network(space, balls.into_iter().map(NetObject::Ball)))
}

#[pyfunction]
#[pyo3(signature = (space="tree", objects="balls", seed=0, internal=None, extra_leaves=None, count=None, max_leaves=None, radius_quarters=None))]
#[allow(clippy::too_many_arguments)]
fn gen_random(
    space: &str,
    objects: &str,
    seed: u64,
    internal: Option<usize>,
    extra_leaves: Option<usize>,
    count: Option<usize>,
    max_leaves: Option<usize>,
    radius_quarters: Option<u32>,
) -> PyResult<String> {
    let kind = match space {
        "tree" => SpaceKind::Tree,
        "planar" => SpaceKind::Planar,
        other => return Err(value_error(format!("unknown space kind `{other}`"))),
    };
    let objs = match objects {
        "balls" => ObjectKind::Balls,
        "subtrees" => ObjectKind::Subtrees,
        other => return Err(value_error(format!("unknown object kind `{other}`"))),
    };
    let d = RandomParams::default();
    let params = RandomParams {
        internal: internal.unwrap_or(d.internal),
        extra_leaves: extra_leaves.unwrap_or(d.extra_leaves),
        objects: count.unwrap_or(d.objects),
        max_leaves: max_leaves.unwrap_or(d.max_leaves),
        radius_quarters: radius_quarters.unwrap_or(d.radius_quarters),
    };
    let (s, o) = generators::gen_random(kind, objs, &params, seed).map_err(value_error)?;
    Ok(network(s, o))
}

#[pyfunction]
#[pyo3(signature = (count=16, seed=0))]
fn gen_intervals(count: usize, seed: u64) -> String {
    Instance::Intervals(generators::gen_random_intervals(count, seed)).to_json()
}

#[pymodule]
fn netcolor(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(algorithms, m)?)?;
    m.add_function(wrap_pyfunction!(color, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(gen_star_pairs, m)?)?;
    m.add_function(wrap_pyfunction!(gen_binary_tree_paths, m)?)?;
    m.add_function(wrap_pyfunction!(gen_comb, m)?)?;
    m.add_function(wrap_pyfunction!(gen_k4, m)?)?;
    m.add_function(wrap_pyfunction!(gen_random, m)?)?;
    m.add_function(wrap_pyfunction!(gen_intervals, m)?)?;
    Ok(())
}
