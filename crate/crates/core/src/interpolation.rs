//! Interpolation back to the uniform lattice: plain linear and quadratic
//! Lagrange interpolation, their invariantized versions under the symmetry
//! group, and the single-node joint-invariant extension.
//!
//! The invariant variants weight each node value by `exp(s (y - x_j))`,
//! where `s` is a centered log-slope of the data at the new time level.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Error, Result};
use crate::frame::hat_log_slope;
use crate::mesh::{signed_offset, wrap, MeshState};

/// A node position and its value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub x: f64,
    pub u: f64,
}

impl Node {
    pub fn new(x: f64, u: f64) -> Self {
        Self { x, u }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProjectionMethod {
    Linear,
    Quadratic,
    InvariantLinear,
    InvariantQuadratic,
    JointInvariant,
}

impl ProjectionMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProjectionMethod::Linear => "linear",
            ProjectionMethod::Quadratic => "quadratic",
            ProjectionMethod::InvariantLinear => "invariant_linear",
            ProjectionMethod::InvariantQuadratic => "invariant_quadratic",
            ProjectionMethod::JointInvariant => "joint_invariant",
        }
    }

    pub fn is_invariant(&self) -> bool {
        matches!(
            self,
            ProjectionMethod::InvariantLinear
                | ProjectionMethod::InvariantQuadratic
                | ProjectionMethod::JointInvariant
        )
    }
}

impl fmt::Display for ProjectionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProjectionMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "linear" => Ok(ProjectionMethod::Linear),
            "quadratic" => Ok(ProjectionMethod::Quadratic),
            "invariant_linear" => Ok(ProjectionMethod::InvariantLinear),
            "invariant_quadratic" => Ok(ProjectionMethod::InvariantQuadratic),
            "joint_invariant" => Ok(ProjectionMethod::JointInvariant),
            other => Err(Error::InvalidConfig(format!("unknown projection {other:?}"))),
        }
    }
}

/// Index `i` of the periodic cell `[x_i, x_{i+1})` containing `y`.
pub fn locate(m: &MeshState, y: f64) -> Result<usize> {
    m.validate()?;
    let origin = m.x[0];
    let period = m.period;
    // offsets of every node from node 0, increasing for a valid mesh
    let offset = |k: usize| if k == 0 { 0.0 } else { wrap(m.x[k] - origin, period) };
    let target = wrap(y - origin, period);
    let (mut lo, mut hi) = (0usize, m.len());
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if offset(mid) <= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

pub fn linear(y: f64, a: Node, b: Node) -> f64 {
    a.u + (y - a.x) * (b.u - a.u) / (b.x - a.x)
}

fn weighted(y: f64, n: Node, s: f64) -> Result<f64> {
    Ok((s * (y - n.x)).exp() * ensure_positive(n.u)?)
}

/// Invariantized linear interpolation with log-slope `s`.
pub fn invariant_linear(y: f64, a: Node, b: Node, s: f64) -> Result<f64> {
    let ua = weighted(y, a, s)?;
    let ub = weighted(y, b, s)?;
    Ok(ua + (y - a.x) * (ub - ua) / (b.x - a.x))
}

fn lagrange_basis(y: f64, nodes: &[Node; 3]) -> [f64; 3] {
    let mut basis = [1.0; 3];
    for (j, l) in basis.iter_mut().enumerate() {
        for (k, other) in nodes.iter().enumerate() {
            if k != j {
                *l *= (y - other.x) / (nodes[j].x - other.x);
            }
        }
    }
    basis
}

/// Lagrange quadratic through three nodes.
pub fn quadratic(y: f64, nodes: [Node; 3]) -> f64 {
    let basis = lagrange_basis(y, &nodes);
    nodes.iter().zip(basis).map(|(n, l)| n.u * l).sum()
}

/// Invariantized Lagrange quadratic with log-slope `s`.
pub fn invariant_quadratic(y: f64, nodes: [Node; 3], s: f64) -> Result<f64> {
    let basis = lagrange_basis(y, &nodes);
    let mut sum = 0.0;
    for (n, l) in nodes.iter().zip(basis) {
        sum += weighted(y, *n, s)? * l;
    }
    Ok(sum)
}

/// Single-node extension `exp(s (target - x)) u` built from joint invariants.
pub fn joint_invariant(target: f64, node: Node, s: f64) -> Result<f64> {
    weighted(target, node, s)
}

/// Centered log-slope of three nodes, `(ln u_2 - ln u_0) / (x_2 - x_0)`.
pub fn centered_log_slope(nodes: &[Node; 3]) -> Result<f64> {
    let (a, b) = (ensure_positive(nodes[0].u)?, ensure_positive(nodes[2].u)?);
    Ok((b.ln() - a.ln()) / (nodes[2].x - nodes[0].x))
}

/// For a query in cell `[x_j, x_{j+1})`: the nearer node of the two,
/// ties going to the left.
fn nearer_node(m: &MeshState, cell: usize, y: f64) -> usize {
    let left = signed_offset(y - m.x[cell], m.period).abs();
    let right = signed_offset(m.x[m.next(cell)] - y, m.period).abs();
    if left <= right {
        cell
    } else {
        m.next(cell)
    }
}

/// Node `i` placed in a chart around `y`, so that neighbouring nodes are
/// unwrapped consistently.
fn chart_node(m: &MeshState, i: usize, y: f64) -> Node {
    Node::new(y + signed_offset(m.x[i] - y, m.period), m.u[i])
}

fn three_point_chart(m: &MeshState, centre: usize, y: f64) -> [Node; 3] {
    let c = chart_node(m, centre, y);
    let (h_minus, h_plus) = m.spacing(centre);
    [
        Node::new(c.x - h_minus, m.u[m.prev(centre)]),
        c,
        Node::new(c.x + h_plus, m.u[m.next(centre)]),
    ]
}

/// Evaluates `method` on `level` at every target and returns the values
/// in target order.
pub fn project(level: &MeshState, targets: &[f64], method: ProjectionMethod) -> Result<Vec<f64>> {
    level.validate()?;
    if level.len() < 3 {
        return Err(Error::InvalidConfig("projection needs at least 3 nodes".into()));
    }
    if method.is_invariant() {
        level.validate_positive()?;
    }
    targets
        .iter()
        .enumerate()
        .map(|(k, &y)| {
            let cell = locate(level, y)?;
            let centre = nearer_node(level, cell, y);
            let value = match method {
                ProjectionMethod::Linear | ProjectionMethod::InvariantLinear => {
                    let a = chart_node(level, cell, y);
                    let b = Node::new(a.x + level.gap(cell), level.u[level.next(cell)]);
                    if method == ProjectionMethod::Linear {
                        linear(y, a, b)
                    } else {
                        invariant_linear(y, a, b, hat_log_slope(level, centre)?)?
                    }
                }
                ProjectionMethod::Quadratic => quadratic(y, three_point_chart(level, centre, y)),
                ProjectionMethod::InvariantQuadratic => invariant_quadratic(
                    y,
                    three_point_chart(level, centre, y),
                    hat_log_slope(level, centre)?,
                )?,
                ProjectionMethod::JointInvariant => joint_invariant(
                    y,
                    chart_node(level, centre, y),
                    hat_log_slope(level, centre)?,
                )?,
            };
            if !(value > 0.0) {
                return Err(Error::PositivityLost { node: k, value });
            }
            Ok(value)
        })
        .collect()
}
