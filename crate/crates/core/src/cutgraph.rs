//! The weighted directed graph of an instance built only from generalized
//! interval constraints, its minimum cut, and the correspondence between
//! cuts and assignments.
//!
//! Every variable `v` contributes a chain of level nodes `v_0 .. v_M`. The
//! source feeds `v_M`, `v_0` drains into the sink, and `v_d -> v_{d+1}` are
//! infinite, so the source side of any finite cut is upward closed in each
//! chain. A constraint `<<v, w>, eta^rho[a,b]>` becomes the edge
//! `w_b -> v_{a-1}` of weight `rho`, which is cut exactly when `t(v) >= a`
//! and `t(w) <= b`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::evaluation::Evaluation;
use crate::maxflow::{Capacity, FlowGraph};
use crate::model::{Assignment, ConstraintFunction, Instance, Scope, VarId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeId {
    Source,
    Sink,
    Level { var: VarId, level: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeTag {
    Structural,
    /// Index of the originating constraint in the instance.
    Constraint(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowEdge {
    pub from: NodeId,
    pub to: NodeId,
    pub capacity: Evaluation,
    pub tag: EdgeTag,
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    domain_size: usize,
    names: Vec<String>,
    edges: Vec<FlowEdge>,
}

impl FlowNetwork {
    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn num_variables(&self) -> usize {
        self.names.len()
    }

    pub fn node_count(&self) -> usize {
        self.names.len() * (self.domain_size + 1) + 2
    }

    pub fn edges(&self) -> &[FlowEdge] {
        &self.edges
    }

    pub fn constraint_edges(&self) -> impl Iterator<Item = &FlowEdge> {
        self.edges.iter().filter(|e| e.tag != EdgeTag::Structural)
    }

    pub fn node_index(&self, node: NodeId) -> usize {
        match node {
            NodeId::Source => 0,
            NodeId::Sink => 1,
            NodeId::Level { var, level } => 2 + var.0 * (self.domain_size + 1) + level,
        }
    }

    pub fn node_at(&self, index: usize) -> NodeId {
        match index {
            0 => NodeId::Source,
            1 => NodeId::Sink,
            i => NodeId::Level {
                var: VarId((i - 2) / (self.domain_size + 1)),
                level: (i - 2) % (self.domain_size + 1),
            },
        }
    }

    pub fn node_name(&self, node: NodeId) -> String {
        match node {
            NodeId::Source => "S".into(),
            NodeId::Sink => "T".into(),
            NodeId::Level { var, level } => format!("{}_{}", self.names[var.0], level),
        }
    }

    /// One line per edge: `from to capacity tag`, where tag is `structural`
    /// or `c<constraint index>`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let tag = match e.tag {
                EdgeTag::Structural => "structural".to_string(),
                EdgeTag::Constraint(i) => format!("c{i}"),
            };
            writeln!(
                out,
                "{} {} {} {}",
                self.node_name(e.from),
                self.node_name(e.to),
                e.capacity,
                tag
            )
            .expect("writing to a String");
        }
        out
    }

    /// Total weight of the given edges.
    pub fn weight(&self, edges: &[usize]) -> Evaluation {
        edges.iter().map(|&i| &self.edges[i].capacity).sum()
    }

    /// Whether the sink is reachable from the source once `removed` edges
    /// are deleted.
    pub fn connects_without(&self, removed: &[usize]) -> bool {
        let removed: BTreeSet<usize> = removed.iter().copied().collect();
        let mut adjacency = vec![Vec::new(); self.node_count()];
        for (i, e) in self.edges.iter().enumerate() {
            if !removed.contains(&i) {
                adjacency[self.node_index(e.from)].push(self.node_index(e.to));
            }
        }
        let mut seen = vec![false; self.node_count()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen[1]
    }
}

/// Builds the network of an instance whose constraints are all generalized
/// interval functions. Zero-weight constraints produce no edge.
pub fn build_network(inst: &Instance) -> Result<FlowNetwork> {
    let m = inst.domain_size();
    let n = inst.num_variables();
    let mut edges = Vec::with_capacity(n * (m + 2) + inst.constraints().len());
    let level = |var: VarId, level: usize| NodeId::Level { var, level };
    for v in inst.variables() {
        edges.push(FlowEdge {
            from: NodeId::Source,
            to: level(v, m),
            capacity: Evaluation::infinite(),
            tag: EdgeTag::Structural,
        });
        edges.push(FlowEdge {
            from: level(v, 0),
            to: NodeId::Sink,
            capacity: Evaluation::infinite(),
            tag: EdgeTag::Structural,
        });
        for d in 0..m {
            edges.push(FlowEdge {
                from: level(v, d),
                to: level(v, d + 1),
                capacity: Evaluation::infinite(),
                tag: EdgeTag::Structural,
            });
        }
    }
    for (i, c) in inst.constraints().iter().enumerate() {
        let (ConstraintFunction::Interval(g), Scope::Binary(v, w)) = (c.function(), c.scope()) else {
            return Err(Error::WrongConstraintKind(i));
        };
        if g.weight.is_zero() {
            continue;
        }
        edges.push(FlowEdge {
            from: level(w, g.upper),
            to: level(v, g.lower - 1),
            capacity: g.weight.clone(),
            tag: EdgeTag::Constraint(i),
        });
    }
    Ok(FlowNetwork {
        domain_size: m,
        names: inst.variables().map(|v| inst.name(v).to_string()).collect(),
        edges,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutResult {
    pub value: Evaluation,
    /// Membership of each node (by [`FlowNetwork::node_index`]) in the
    /// source side.
    pub source_side: Vec<bool>,
    /// Indices into [`FlowNetwork::edges`] of the edges leaving the source side.
    pub cut_edges: Vec<usize>,
}

impl CutResult {
    pub fn contains(&self, net: &FlowNetwork, node: NodeId) -> bool {
        self.source_side[net.node_index(node)]
    }

    fn from_side(net: &FlowNetwork, source_side: Vec<bool>, value: Evaluation) -> Self {
        let cut_edges = net
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| source_side[net.node_index(e.from)] && !source_side[net.node_index(e.to)])
            .map(|(i, _)| i)
            .collect();
        CutResult {
            value,
            source_side,
            cut_edges,
        }
    }
}

/// Integer image of the network: capacities multiplied by the common
/// denominator, infinite edges replaced by `big_m`.
struct ScaledNetwork {
    denominator: BigInt,
    big_m: BigInt,
    capacities: Vec<BigInt>,
}

impl ScaledNetwork {
    fn new(net: &FlowNetwork) -> Self {
        let finite: Vec<&BigRational> = net.edges.iter().filter_map(|e| e.capacity.as_rational()).collect();
        let denominator = finite.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let scale = |r: &BigRational| r.numer() * (&denominator / r.denom());
        let total: BigInt = finite.iter().map(|r| scale(r)).sum();
        // One more than every finite capacity combined.
        let big_m = total + &denominator;
        let capacities = net
            .edges
            .iter()
            .map(|e| e.capacity.as_rational().map_or_else(|| big_m.clone(), scale))
            .collect();
        ScaledNetwork {
            denominator,
            big_m,
            capacities,
        }
    }

    fn solve<C: Capacity>(&self, net: &FlowNetwork, convert: impl Fn(&BigInt) -> C) -> (C, Vec<bool>) {
        let mut graph = FlowGraph::new(net.node_count());
        for (e, cap) in net.edges.iter().zip(&self.capacities) {
            graph.add_edge(net.node_index(e.from), net.node_index(e.to), convert(cap));
        }
        let flow = graph.max_flow(0, 1);
        (flow, graph.residual_reachable(0))
    }
}

/// Minimum source/sink cut via maximum flow. Infinite capacities become one
/// more than the sum of all finite capacities; a flow at least that large
/// means every cut contains an infinite edge and the value is infinite.
///
/// The source side is the set of nodes reachable from the source in the
/// final residual graph.
pub fn min_cut(net: &FlowNetwork) -> CutResult {
    let scaled = ScaledNetwork::new(net);
    let total: BigInt = scaled.capacities.iter().sum();
    let (flow, side): (BigInt, Vec<bool>) = if total.to_i128().is_some() {
        let (f, side) = scaled.solve(net, |c: &BigInt| c.to_i128().expect("bounded by total"));
        (BigInt::from(f), side)
    } else {
        scaled.solve(net, BigInt::clone)
    };
    let value = if flow >= scaled.big_m {
        Evaluation::infinite()
    } else {
        Evaluation::finite(BigRational::new(flow, scaled.denominator.clone())).expect("flow is non-negative")
    };
    CutResult::from_side(net, side, value)
}

/// Reads the assignment off a cut: `t(v)` is the lowest level of `v` on the
/// source side. Level 0 is never used; if no level `>= 1` is on the source
/// side (only possible for infinite cuts) the variable gets `M`.
pub fn extract_assignment(net: &FlowNetwork, cut: &CutResult) -> Assignment {
    let m = net.domain_size;
    let values = (0..net.num_variables())
        .map(|v| {
            (1..=m)
                .find(|&d| {
                    cut.contains(
                        net,
                        NodeId::Level {
                            var: VarId(v),
                            level: d,
                        },
                    )
                })
                .unwrap_or(m)
        })
        .collect();
    Assignment::new(values)
}

/// The cut induced by an assignment: the source side holds `v_d` for every
/// `d >= t(v)`, so the cut edges are exactly the constraints that evaluate
/// to a non-zero value on `t`.
pub fn cut_from_assignment(inst: &Instance, t: &Assignment) -> Result<(FlowNetwork, CutResult)> {
    inst.check_assignment(t)?;
    let net = build_network(inst)?;
    let mut side = vec![false; net.node_count()];
    side[0] = true;
    for v in inst.variables() {
        for d in t.get(v)..=net.domain_size {
            side[net.node_index(NodeId::Level { var: v, level: d })] = true;
        }
    }
    let value = inst.evaluate(t)?;
    let cut = CutResult::from_side(&net, side, value);
    debug_assert_eq!(net.weight(&cut.cut_edges), cut.value);
    Ok((net, cut))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::GeneralizedInterval;
    use crate::model::SoftConstraint;

    fn three_vars() -> Instance {
        let mut p = Instance::new(4).unwrap();
        let x = p.add_variable("x").unwrap();
        let y = p.add_variable("y").unwrap();
        let z = p.add_variable("z").unwrap();
        let gi = |a, b, r| GeneralizedInterval::new(a, b, r);
        p.add_constraint(SoftConstraint::interval(y, x, gi(3, 4, 3.into())))
            .unwrap();
        p.add_constraint(SoftConstraint::interval(y, z, gi(4, 3, 2.into())))
            .unwrap();
        p.add_constraint(SoftConstraint::interval(z, y, gi(1, 3, 7.into())))
            .unwrap();
        p.add_constraint(SoftConstraint::interval(z, z, gi(2, 4, Evaluation::infinite())))
            .unwrap();
        p
    }

    #[test]
    fn network_shape() {
        let p = three_vars();
        let net = build_network(&p).unwrap();
        assert_eq!(net.node_count(), 17);
        let named: Vec<(String, String, String)> = net
            .constraint_edges()
            .map(|e| (net.node_name(e.from), net.node_name(e.to), e.capacity.to_string()))
            .collect();
        let s = |a: &str, b: &str, c: &str| (a.to_string(), b.to_string(), c.to_string());
        assert_eq!(
            named,
            vec![
                s("x_4", "y_2", "3"),
                s("z_3", "y_3", "2"),
                s("y_3", "z_0", "7"),
                s("z_4", "z_1", "inf")
            ]
        );
    }

    #[test]
    fn empty_network() {
        let mut p = Instance::new(3).unwrap();
        p.add_variable("v").unwrap();
        let net = build_network(&p).unwrap();
        assert_eq!(net.edges().len(), 5);
        assert_eq!(net.dump().lines().next().unwrap(), "S v_3 inf structural");
        let cut = min_cut(&net);
        assert!(cut.value.is_zero());
        assert!(cut.cut_edges.is_empty());
        assert_eq!(extract_assignment(&net, &cut).values(), &[3]);
    }

    #[test]
    fn rejects_tables() {
        let mut p = Instance::new(2).unwrap();
        let v = p.add_variable("v").unwrap();
        p.add_constraint(SoftConstraint::binary(v, v, crate::funlib::phi_xor()))
            .unwrap();
        assert_eq!(build_network(&p).unwrap_err(), Error::WrongConstraintKind(0));
    }

    #[test]
    fn example_cut() {
        let p = three_vars();
        let net = build_network(&p).unwrap();
        let cut = min_cut(&net);
        assert_eq!(cut.value, Evaluation::from_integer(5));
        assert_eq!(net.weight(&cut.cut_edges), cut.value);
        let t = extract_assignment(&net, &cut);
        assert_eq!(t.get(VarId(2)), 1);
        assert_eq!(p.evaluate(&t).unwrap(), Evaluation::from_integer(5));
    }

    #[test]
    fn assignment_cuts() {
        let p = three_vars();
        let t = p.assignment(&[("x", 4), ("y", 4), ("z", 1)]).unwrap();
        let (net, cut) = cut_from_assignment(&p, &t).unwrap();
        let names: Vec<String> = cut
            .cut_edges
            .iter()
            .map(|&i| {
                format!(
                    "{}>{}",
                    net.node_name(net.edges()[i].from),
                    net.node_name(net.edges()[i].to)
                )
            })
            .collect();
        assert_eq!(names, ["x_4>y_2", "z_3>y_3"]);
        assert_eq!(cut.value, Evaluation::from_integer(5));
        assert!(!net.connects_without(&cut.cut_edges));

        let t = p.assignment(&[("x", 1), ("y", 1), ("z", 1)]).unwrap();
        let (net, cut) = cut_from_assignment(&p, &t).unwrap();
        assert_eq!(cut.cut_edges.len(), 1);
        assert_eq!(net.node_name(net.edges()[cut.cut_edges[0]].from), "y_3");
        assert_eq!(cut.value, Evaluation::from_integer(7));
    }

    #[test]
    fn infinite_cut() {
        let mut p = Instance::new(2).unwrap();
        let v = p.add_variable("v").unwrap();
        p.add_constraint(SoftConstraint::interval(
            v,
            v,
            GeneralizedInterval::new(1, 2, Evaluation::infinite()),
        ))
        .unwrap();
        let net = build_network(&p).unwrap();
        let cut = min_cut(&net);
        assert!(cut.value.is_infinite());
        let t = extract_assignment(&net, &cut);
        assert!((1..=2).contains(&t.get(v)));
    }
}
