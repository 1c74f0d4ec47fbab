// SPDX-License-Identifier: Apache-2.0

//! Integral maximum flow with Dinic's blocking-flow algorithm.
//!
//! Capacities are `u64`. Construction rejects networks whose total capacity
//! out of the source exceeds `u64::MAX`, so no intermediate flow value can
//! overflow; any single capacity up to `2^63 - 1` (and beyond) is supported.

use std::collections::VecDeque;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub capacity: u64,
}

/// A directed network with a source and a sink. Edge order is part of the
/// input: solving the same network twice yields identical flows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowNetwork {
    node_count: usize,
    source: usize,
    sink: usize,
    edges: Vec<Edge>,
    source_capacity: u64,
}

impl FlowNetwork {
    pub fn new(node_count: usize, source: usize, sink: usize) -> Result<Self> {
        if node_count < 2 {
            return Err(Error::TooFewNodes);
        }
        for node in [source, sink] {
            if node >= node_count {
                return Err(Error::NodeOutOfRange { node, node_count });
            }
        }
        if source == sink {
            return Err(Error::SourceIsSink);
        }
        Ok(FlowNetwork {
            node_count,
            source,
            sink,
            edges: Vec::new(),
            source_capacity: 0,
        })
    }

    /// Appends an edge and returns its index. Parallel edges are allowed,
    /// self-loops are not. Zero capacities are accepted; such edges never
    /// carry flow.
    pub fn add_edge(&mut self, from: usize, to: usize, capacity: u64) -> Result<usize> {
        self.check_node(from)?;
        self.check_node(to)?;
        if from == to {
            return Err(Error::SelfLoop(from));
        }
        if from == self.source {
            self.source_capacity = self
                .source_capacity
                .checked_add(capacity)
                .ok_or(Error::CapacityOverflow)?;
        }
        self.edges.push(Edge { from, to, capacity });
        Ok(self.edges.len() - 1)
    }

    fn check_node(&self, node: usize) -> Result<()> {
        if node < self.node_count {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node,
                node_count: self.node_count,
            })
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// The same network with edges listed in the given order: `order[i]` is
    /// the index of the original edge placed at position `i`.
    ///
    /// Panics unless `order` is a permutation of the edge indices.
    pub fn reordered(&self, order: &[usize]) -> FlowNetwork {
        assert_eq!(order.len(), self.edges.len(), "not a permutation");
        let mut seen = vec![false; order.len()];
        let edges = order
            .iter()
            .map(|&i| {
                assert!(!std::mem::replace(&mut seen[i], true), "not a permutation");
                self.edges[i]
            })
            .collect();
        FlowNetwork {
            edges,
            ..self.clone()
        }
    }
}

/// A flow: one value per edge, aligned with [`FlowNetwork::edges`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowResult {
    pub value: u64,
    pub edge_flows: Vec<u64>,
}

/// Sum of flow on the edges leaving `node`.
pub fn node_outflow(result: &FlowResult, network: &FlowNetwork, node: usize) -> Result<u64> {
    network.check_node(node)?;
    Ok(network
        .edges
        .iter()
        .zip(&result.edge_flows)
        .filter(|(edge, _)| edge.from == node)
        .map(|(_, &flow)| flow)
        .sum())
}

/// Residual arcs: arc `2i` is edge `i` forward, arc `2i + 1` its reverse.
struct Residual {
    heads: Vec<usize>,
    residual: Vec<u64>,
    adjacency: Vec<Vec<usize>>,
}

impl Residual {
    fn new(network: &FlowNetwork) -> Self {
        let mut heads = Vec::with_capacity(2 * network.edges.len());
        let mut residual = Vec::with_capacity(2 * network.edges.len());
        let mut adjacency = vec![Vec::new(); network.node_count];
        for edge in &network.edges {
            adjacency[edge.from].push(heads.len());
            heads.push(edge.to);
            residual.push(edge.capacity);
            adjacency[edge.to].push(heads.len());
            heads.push(edge.from);
            residual.push(0);
        }
        Residual {
            heads,
            residual,
            adjacency,
        }
    }

    /// BFS distances from `start` over arcs with residual capacity.
    fn levels(&self, start: usize) -> Vec<Option<usize>> {
        let mut level = vec![None; self.adjacency.len()];
        let mut queue = VecDeque::from([start]);
        level[start] = Some(0);
        while let Some(node) = queue.pop_front() {
            let next = level[node].map(|l| l + 1);
            for &arc in &self.adjacency[node] {
                let head = self.heads[arc];
                if self.residual[arc] > 0 && level[head].is_none() {
                    level[head] = next;
                    queue.push_back(head);
                }
            }
        }
        level
    }

    fn augment(
        &mut self,
        node: usize,
        sink: usize,
        limit: u64,
        level: &[Option<usize>],
        cursor: &mut [usize],
    ) -> u64 {
        if node == sink {
            return limit;
        }
        while cursor[node] < self.adjacency[node].len() {
            let arc = self.adjacency[node][cursor[node]];
            let head = self.heads[arc];
            let forward = level[node].map(|l| l + 1) == level[head];
            if self.residual[arc] > 0 && forward {
                let pushed = self.augment(head, sink, limit.min(self.residual[arc]), level, cursor);
                if pushed > 0 {
                    self.residual[arc] -= pushed;
                    self.residual[arc ^ 1] += pushed;
                    return pushed;
                }
            }
            cursor[node] += 1;
        }
        0
    }
}

/// Computes a maximum flow. Deterministic for a fixed edge order.
pub fn max_flow(network: &FlowNetwork) -> FlowResult {
    let mut residual = Residual::new(network);
    let (source, sink) = (network.source, network.sink);
    let mut value = 0u64;
    loop {
        let level = residual.levels(source);
        if level[sink].is_none() {
            break;
        }
        let mut cursor = vec![0; network.node_count];
        loop {
            let pushed = residual.augment(source, sink, u64::MAX, &level, &mut cursor);
            if pushed == 0 {
                break;
            }
            value += pushed;
        }
    }
    let edge_flows = (0..network.edges.len())
        .map(|i| residual.residual[2 * i + 1])
        .collect();
    let result = FlowResult { value, edge_flows };
    debug_assert_eq!(certify(network, &result), Ok(()));
    result
}

/// Ways a claimed maximum flow can be wrong.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FlowViolation {
    #[error("flow has {actual} entries for {expected} edges")]
    Misaligned { expected: usize, actual: usize },
    #[error("edge {edge} carries {flow} over capacity {capacity}")]
    Capacity {
        edge: usize,
        flow: u64,
        capacity: u64,
    },
    #[error("flow is not conserved at node {node} (in {inflow}, out {outflow})")]
    Conservation {
        node: usize,
        inflow: u128,
        outflow: u128,
    },
    #[error("reported value {reported} differs from net sink inflow {actual}")]
    Value { reported: u64, actual: i128 },
    #[error("the sink is reachable in the residual graph")]
    AugmentingPath,
    #[error("cut capacity {cut} differs from flow value {value}")]
    CutMismatch { cut: u128, value: u64 },
}

/// Checks capacity bounds, conservation, the reported value, and maximality
/// (the residual-reachable set from the source is a cut of equal capacity).
pub fn certify(
    network: &FlowNetwork,
    result: &FlowResult,
) -> std::result::Result<(), FlowViolation> {
    if result.edge_flows.len() != network.edges.len() {
        return Err(FlowViolation::Misaligned {
            expected: network.edges.len(),
            actual: result.edge_flows.len(),
        });
    }
    let mut inflow = vec![0u128; network.node_count];
    let mut outflow = vec![0u128; network.node_count];
    for (edge_index, (edge, &flow)) in network.edges.iter().zip(&result.edge_flows).enumerate() {
        if flow > edge.capacity {
            return Err(FlowViolation::Capacity {
                edge: edge_index,
                flow,
                capacity: edge.capacity,
            });
        }
        outflow[edge.from] += u128::from(flow);
        inflow[edge.to] += u128::from(flow);
    }
    for node in 0..network.node_count {
        if node != network.source && node != network.sink && inflow[node] != outflow[node] {
            return Err(FlowViolation::Conservation {
                node,
                inflow: inflow[node],
                outflow: outflow[node],
            });
        }
    }
    let net_sink = inflow[network.sink] as i128 - outflow[network.sink] as i128;
    if net_sink != i128::from(result.value) {
        return Err(FlowViolation::Value {
            reported: result.value,
            actual: net_sink,
        });
    }
    let reachable = residual_reachable(network, result);
    if reachable[network.sink] {
        return Err(FlowViolation::AugmentingPath);
    }
    let cut = cut_capacity(network, &reachable);
    if cut != u128::from(result.value) {
        return Err(FlowViolation::CutMismatch {
            cut,
            value: result.value,
        });
    }
    Ok(())
}

/// Nodes reachable from the source through edges with spare capacity or
/// reversible flow.
pub fn residual_reachable(network: &FlowNetwork, result: &FlowResult) -> Vec<bool> {
    let mut residual = Residual::new(network);
    for (i, &flow) in result.edge_flows.iter().enumerate() {
        residual.residual[2 * i] -= flow;
        residual.residual[2 * i + 1] = flow;
    }
    residual
        .levels(network.source)
        .into_iter()
        .map(|l| l.is_some())
        .collect()
}

/// Total capacity of edges leaving `side` for its complement.
pub fn cut_capacity(network: &FlowNetwork, side: &[bool]) -> u128 {
    network
        .edges
        .iter()
        .filter(|e| side[e.from] && !side[e.to])
        .map(|e| u128::from(e.capacity))
        .sum()
}
