//! Undirected graphs with positive integer weights.
//!
//! Node ids are dense integers `0..node_count`. Graph values are immutable:
//! [`Graph::insert_edges`] and [`Graph::delete_edges`] return new graphs.

mod edgelist;
pub mod random;

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use edgelist::{format_edge_list, parse_edge_list};

pub type NodeId = usize;
pub type Weight = u64;

/// Unordered node pair, stored with the smaller id first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeRef {
    a: NodeId,
    b: NodeId,
}

impl EdgeRef {
    pub fn new(x: NodeId, y: NodeId) -> Result<Self> {
        if x == y {
            return Err(Error::InvalidEdge(x, y, "self-loop"));
        }
        Ok(Self { a: x.min(y), b: x.max(y) })
    }

    pub fn endpoints(&self) -> (NodeId, NodeId) {
        (self.a, self.b)
    }

    pub fn contains(&self, x: NodeId) -> bool {
        self.a == x || self.b == x
    }

    pub fn touches_any(&self, nodes: &[NodeId]) -> bool {
        nodes.iter().any(|&x| self.contains(x))
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.a, self.b)
    }
}

/// Shortest-path distance; `Infinite` when no path exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u64),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<u64> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }
}

impl std::ops::Add for Distance {
    type Output = Distance;
    fn add(self, rhs: Distance) -> Distance {
        match (self, rhs) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a + b),
            _ => Distance::Infinite,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<BTreeMap<NodeId, Weight>>,
    weighted: bool,
}

impl Graph {
    /// Edgeless graph on `node_count` nodes.
    pub fn new(node_count: usize, weighted: bool) -> Self {
        Self { adjacency: vec![BTreeMap::new(); node_count], weighted }
    }

    pub fn from_edges<I>(node_count: usize, weighted: bool, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId, Weight)>,
    {
        let mut g = Self::new(node_count, weighted);
        for (x, y, w) in edges {
            g.add_edge_mut(x, y, w, None)?;
        }
        Ok(g)
    }

    /// Unweighted graph from plain pairs.
    pub fn unweighted<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        Self::from_edges(node_count, false, edges.into_iter().map(|(x, y)| (x, y, 1)))
    }

    fn check_node(&self, x: NodeId) -> Result<()> {
        if x >= self.node_count() {
            return Err(Error::InvalidNode { node: x, node_count: self.node_count() });
        }
        Ok(())
    }

    fn add_edge_mut(&mut self, x: NodeId, y: NodeId, w: Weight, cap: Option<Weight>) -> Result<()> {
        self.check_node(x)?;
        self.check_node(y)?;
        let e = EdgeRef::new(x, y)?;
        if w == 0 || (!self.weighted && w != 1) || cap.is_some_and(|c| w > c) {
            return Err(Error::InvalidWeight { u: e.a, v: e.b, weight: w });
        }
        if self.adjacency[x].contains_key(&y) {
            return Err(Error::DuplicateEdge(e.a, e.b));
        }
        self.adjacency[x].insert(y, w);
        self.adjacency[y].insert(x, w);
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BTreeMap::len).sum::<usize>() / 2
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    /// Largest edge weight present (the bound `W`); 1 for edgeless graphs.
    pub fn max_weight(&self) -> Weight {
        self.edges().map(|(_, w)| w).max().unwrap_or(1)
    }

    /// Edges in ascending `(a, b)` order with their weights.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeRef, Weight)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(a, nbrs)| {
            nbrs.range(a + 1..).map(move |(&b, &w)| (EdgeRef { a, b }, w))
        })
    }

    pub fn has_edge(&self, x: NodeId, y: NodeId) -> bool {
        self.adjacency.get(x).is_some_and(|n| n.contains_key(&y))
    }

    pub fn weight(&self, x: NodeId, y: NodeId) -> Option<Weight> {
        self.adjacency.get(x).and_then(|n| n.get(&y).copied())
    }

    pub fn degree(&self, x: NodeId) -> usize {
        self.adjacency[x].len()
    }

    /// Neighbors in ascending id order.
    pub fn neighbors(&self, x: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.adjacency[x].keys().copied()
    }

    pub fn weighted_neighbors(&self, x: NodeId) -> impl Iterator<Item = (NodeId, Weight)> + '_ {
        self.adjacency[x].iter().map(|(&y, &w)| (y, w))
    }

    /// `x` together with its neighbors, ascending.
    pub fn closed_neighborhood(&self, x: NodeId) -> Result<Vec<NodeId>> {
        self.check_node(x)?;
        let mut out: Vec<NodeId> = self.neighbors(x).collect();
        let pos = out.partition_point(|&y| y < x);
        out.insert(pos, x);
        Ok(out)
    }

    /// Single-source distances to every node.
    pub fn distances_from(&self, source: NodeId) -> Result<Vec<Distance>> {
        self.check_node(source)?;
        let n = self.node_count();
        let mut dist = vec![Distance::Infinite; n];
        dist[source] = Distance::Finite(0);
        if !self.weighted {
            let mut queue = VecDeque::from([source]);
            while let Some(x) = queue.pop_front() {
                let dx = dist[x].finite().unwrap_or(0);
                for y in self.neighbors(x) {
                    if dist[y] == Distance::Infinite {
                        dist[y] = Distance::Finite(dx + 1);
                        queue.push_back(y);
                    }
                }
            }
            return Ok(dist);
        }
        let mut heap = BinaryHeap::from([Reverse((0u64, source))]);
        while let Some(Reverse((d, x))) = heap.pop() {
            if Distance::Finite(d) > dist[x] {
                continue;
            }
            for (y, w) in self.weighted_neighbors(x) {
                let nd = d + w;
                if Distance::Finite(nd) < dist[y] {
                    dist[y] = Distance::Finite(nd);
                    heap.push(Reverse((nd, y)));
                }
            }
        }
        Ok(dist)
    }

    pub fn shortest_dist(&self, x: NodeId, y: NodeId) -> Result<Distance> {
        self.check_node(y)?;
        Ok(self.distances_from(x)?[y])
    }

    /// Largest weight an inserted edge may carry: `(|V| - 1) * W`.
    pub fn insertion_weight_cap(&self) -> Weight {
        (self.node_count().saturating_sub(1) as Weight).max(1) * self.max_weight()
    }

    /// New graph with the given edges added.
    pub fn insert_edges<I>(&self, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (EdgeRef, Weight)>,
    {
        let cap = self.insertion_weight_cap();
        let mut g = self.clone();
        for (e, w) in edges {
            g.add_edge_mut(e.a, e.b, w, Some(cap))?;
        }
        Ok(g)
    }

    /// New graph with the given edges removed.
    pub fn delete_edges<'a, I>(&self, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = &'a EdgeRef>,
    {
        let mut g = self.clone();
        for e in edges {
            self.check_node(e.b)?;
            if g.adjacency[e.a].remove(&e.b).is_none() {
                return Err(Error::MissingEdge(e.a, e.b));
            }
            g.adjacency[e.b].remove(&e.a);
        }
        Ok(g)
    }

    /// Every edge weight multiplied by `factor`; the result is weighted.
    pub fn scaled(&self, factor: Weight) -> Result<Graph> {
        if factor == 0 {
            return Err(Error::Argument("scale factor must be positive".into()));
        }
        Graph::from_edges(
            self.node_count(),
            true,
            self.edges().map(|(e, w)| (e.a, e.b, w * factor)),
        )
    }

    pub fn is_connected(&self) -> bool {
        if self.node_count() == 0 {
            return true;
        }
        self.distances_from(0)
            .map(|d| d.iter().all(|x| x.is_finite()))
            .unwrap_or(false)
    }
}
