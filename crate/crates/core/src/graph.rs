//! Immutable undirected simple graphs and structural metrics.
//!
//! Vertices are dense integers `0..n`. Graphs are immutable after
//! construction and safe to share across threads.

use alloc::collections::BTreeSet;
use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::Result;

/// Vertex identity, dense in `0..n`.
pub type Vertex = usize;

/// Distance value used by BFS-based metrics.
pub const UNREACHABLE: u32 = u32::MAX;

/// An undirected simple graph: no loops, no multiple edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are collapsed; loops and out-of-range endpoints are
    /// rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::parameter("graph must have at least one vertex"));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::structure(format!("loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::structure(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adj })
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.n
    }

    /// BFS distances from `src`; unreachable vertices get [`UNREACHABLE`].
    pub fn bfs_distances(&self, src: Vertex) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.n];
        let mut queue = VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbors(u) {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Stable digest of the graph structure (first 16 hex chars of the
    /// SHA-256 of the canonical vertex/edge serialization). Used to key
    /// traces and oracle reports.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update((self.n as u64).to_le_bytes());
        for &(u, v) in &self.edges {
            hasher.update((u as u64).to_le_bytes());
            hasher.update((v as u64).to_le_bytes());
        }
        let out = hasher.finalize();
        let mut hex = String::with_capacity(16);
        for byte in out.iter().take(8) {
            hex.push_str(&format!("{byte:02x}"));
        }
        hex
    }
}

/// Radius, diameter, per-vertex eccentricity and the center vertex set,
/// computed by all-pairs BFS.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMetrics {
    pub eccentricity: Vec<u32>,
    pub radius: u32,
    pub diameter: u32,
    pub center: Vec<Vertex>,
}

/// Computes [`GraphMetrics`] for a connected graph.
pub fn center_and_metrics(g: &Graph) -> Result<GraphMetrics> {
    let mut ecc = vec![0u32; g.vertex_count()];
    for v in g.vertices() {
        let dist = g.bfs_distances(v);
        let mut far = 0;
        for &d in &dist {
            if d == UNREACHABLE {
                return Err(Error::structure("metrics require a connected graph"));
            }
            far = far.max(d);
        }
        ecc[v] = far;
    }
    let radius = *ecc.iter().min().expect("nonempty graph");
    let diameter = *ecc.iter().max().expect("nonempty graph");
    let center = g.vertices().filter(|&v| ecc[v] == radius).collect();
    Ok(GraphMetrics {
        eccentricity: ecc,
        radius,
        diameter,
        center,
    })
}

/// Canonical center vertex: the lowest-identity vertex of minimum
/// eccentricity (the choice is arbitrary when the center has two vertices).
pub fn canonical_center(g: &Graph) -> Result<Vertex> {
    Ok(center_and_metrics(g)?.center[0])
}

/// A rooted view over a tree graph: parent and depth maps plus the height.
#[derive(Debug, Clone)]
pub struct TreeView<'a> {
    graph: &'a Graph,
    root: Vertex,
    parent: Vec<Option<Vertex>>,
    depth: Vec<u32>,
    height: u32,
}

impl<'a> TreeView<'a> {
    /// Roots `graph` at `root`. Fails if the graph is not a tree
    /// (connected, `n - 1` edges).
    pub fn rooted(graph: &'a Graph, root: Vertex) -> Result<Self> {
        let n = graph.vertex_count();
        if root >= n {
            return Err(Error::parameter(format!("root {root} out of range")));
        }
        if graph.edge_count() != n - 1 || !graph.is_connected() {
            return Err(Error::structure("tree view requires a connected acyclic graph"));
        }
        let mut parent = vec![None; n];
        let mut depth = vec![0u32; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        seen[root] = true;
        queue.push_back(root);
        let mut height = 0;
        while let Some(u) = queue.pop_front() {
            height = height.max(depth[u]);
            for &w in graph.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        Ok(TreeView {
            graph,
            root,
            parent,
            depth,
            height,
        })
    }

    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    pub fn depth(&self, v: Vertex) -> u32 {
        self.depth[v]
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Children of `v` in ascending identity order.
    pub fn children(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(move |&w| self.parent[w] == Some(v))
    }

    pub fn is_leaf(&self, v: Vertex) -> bool {
        self.children(v).next().is_none()
    }

    /// Size of the subtree rooted at `v` (including `v`).
    pub fn subtree_size(&self, v: Vertex) -> usize {
        let mut count = 0;
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            count += 1;
            stack.extend(self.children(u));
        }
        count
    }

    /// Vertices on the tree path from `a` to `b`, inclusive.
    pub fn path(&self, a: Vertex, b: Vertex) -> Vec<Vertex> {
        let mut up_a = vec![a];
        let mut up_b = vec![b];
        let (mut x, mut y) = (a, b);
        while self.depth[x] > self.depth[y] {
            x = self.parent[x].expect("non-root has parent");
            up_a.push(x);
        }
        while self.depth[y] > self.depth[x] {
            y = self.parent[y].expect("non-root has parent");
            up_b.push(y);
        }
        while x != y {
            x = self.parent[x].expect("non-root has parent");
            y = self.parent[y].expect("non-root has parent");
            up_a.push(x);
            up_b.push(y);
        }
        up_b.pop();
        up_b.reverse();
        up_a.extend(up_b);
        up_a
    }

    /// Leaves in depth-first discovery order, visiting children in
    /// ascending identity order. For a single-vertex tree the root itself
    /// is returned.
    pub fn dfs_leaf_order(&self) -> Vec<Vertex> {
        let mut leaves = Vec::new();
        // Explicit stack; children pushed in reverse so the smallest pops first.
        let mut stack = vec![self.root];
        while let Some(u) = stack.pop() {
            let kids: Vec<_> = self.children(u).collect();
            if kids.is_empty() {
                leaves.push(u);
            } else {
                for &c in kids.iter().rev() {
                    stack.push(c);
                }
            }
        }
        leaves
    }

    /// The subtree truncated at depth `x`: exactly the vertices within
    /// distance `x` of the root.
    pub fn truncate_at_depth(&self, x: u32) -> Subtree {
        let members: Vec<Vertex> = (0..self.graph.vertex_count())
            .filter(|&v| self.depth[v] <= x)
            .collect();
        Subtree::new(self, members)
    }

    /// The distance-`x` ball around `center` as a subtree rooted there.
    /// Unlike [`truncate_at_depth`](Self::truncate_at_depth) the ball may
    /// extend through the parent of `center`.
    pub fn ball(&self, center: Vertex, x: u32) -> Subtree {
        ball_subtree(self.graph, center, x)
    }

    /// The subtree hanging below `v` (inclusive) as a [`Subtree`].
    pub fn subtree(&self, v: Vertex) -> Subtree {
        let mut members = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            members.push(u);
            stack.extend(self.children(u));
        }
        members.sort_unstable();
        Subtree::with_root(self.graph, v, members)
    }
}

/// The distance-`x` ball around `center` in a tree graph, rooted at
/// `center`.
pub fn ball_subtree(g: &Graph, center: Vertex, x: u32) -> Subtree {
    let dist = g.bfs_distances(center);
    let members: Vec<Vertex> = (0..g.vertex_count()).filter(|&v| dist[v] <= x).collect();
    Subtree::with_root(g, center, members)
}

/// A connected, membership-restricted subtree of a tree graph, rooted at
/// one of its members. Vertex identities are those of the host graph.
#[derive(Debug, Clone)]
pub struct Subtree {
    root: Vertex,
    member: Vec<bool>,
    members: Vec<Vertex>,
    parent: Vec<Option<Vertex>>,
    depth: Vec<u32>,
    height: u32,
}

impl Subtree {
    fn new(view: &TreeView<'_>, members: Vec<Vertex>) -> Self {
        Self::with_root(view.graph, view.root, members)
    }

    fn with_root(graph: &Graph, root: Vertex, members: Vec<Vertex>) -> Self {
        let n = graph.vertex_count();
        let mut member = vec![false; n];
        for &v in &members {
            member[v] = true;
        }
        debug_assert!(member[root]);
        let mut parent = vec![None; n];
        let mut depth = vec![0u32; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        seen[root] = true;
        queue.push_back(root);
        let mut height = 0;
        while let Some(u) = queue.pop_front() {
            height = height.max(depth[u]);
            for &w in graph.neighbors(u) {
                if member[w] && !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        Subtree {
            root,
            member,
            members,
            parent,
            depth,
            height,
        }
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.member[v]
    }

    /// Members in ascending identity order.
    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn depth(&self, v: Vertex) -> u32 {
        self.depth[v]
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    /// Children of a member within the subtree, ascending.
    pub fn children<'g>(&'g self, graph: &'g Graph, v: Vertex) -> impl Iterator<Item = Vertex> + 'g {
        graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(move |&w| self.member[w] && self.parent[w] == Some(v))
    }

    /// Size of the subtree hanging below member `v` (inclusive).
    pub fn subtree_size(&self, graph: &Graph, v: Vertex) -> usize {
        let mut count = 0;
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            count += 1;
            stack.extend(self.children(graph, u));
        }
        count
    }

    /// Path from `a` to `b` through subtree edges, inclusive.
    pub fn path(&self, a: Vertex, b: Vertex) -> Vec<Vertex> {
        let mut up_a = vec![a];
        let mut up_b = vec![b];
        let (mut x, mut y) = (a, b);
        while self.depth[x] > self.depth[y] {
            x = self.parent[x].expect("non-root has parent");
            up_a.push(x);
        }
        while self.depth[y] > self.depth[x] {
            y = self.parent[y].expect("non-root has parent");
            up_b.push(y);
        }
        while x != y {
            x = self.parent[x].expect("non-root has parent");
            y = self.parent[y].expect("non-root has parent");
            up_a.push(x);
            up_b.push(y);
        }
        up_b.pop();
        up_b.reverse();
        up_a.extend(up_b);
        up_a
    }

    /// Leaves (members without subtree children) in depth-first discovery
    /// order, children visited in ascending identity order.
    pub fn dfs_leaf_order(&self, graph: &Graph) -> Vec<Vertex> {
        let mut leaves = Vec::new();
        let mut stack = vec![self.root];
        while let Some(u) = stack.pop() {
            let kids: Vec<_> = self.children(graph, u).collect();
            if kids.is_empty() {
                leaves.push(u);
            } else {
                for &c in kids.iter().rev() {
                    stack.push(c);
                }
            }
        }
        leaves
    }
}
