//! Generators for the graph families studied by the decontamination model.
//!
//! Every generator returns a connected simple graph with a documented
//! vertex layout so that strategies and tests can address vertices by
//! construction position.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::graph::{Graph, Vertex};
use crate::Result;

/// A graph family plus its parameters.
///
/// Layouts:
/// * `Path`, `Cycle`, `Complete`: vertices `0..n` in order.
/// * `CompleteBipartite`: side A is `0..m`, side B is `m..m+n`.
/// * `Star`: center `0`, leaves `1..=leaves`.
/// * `Spider`: root `0`, then each arm's vertices consecutively from the
///   root outward, arms in list order.
/// * `KaryTree`: level order; children of `v` are `k*v + 1 ..= k*v + k`.
/// * `Mesh`/`Cylinder`: column-major, `(i, j) -> (i-1)*p + (j-1)` for
///   column `i` in `1..=q` and row `j` in `1..=p`.
/// * `RandomTree`: uniform labeled tree decoded from a seeded random
///   Prüfer sequence.
/// * `KahnPair`: root `0`, arms laid out like `Spider` with lengths
///   alternating `(long_len, 1, long_len, 1, ...)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TopologyDescriptor {
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    CompleteBipartite { m: usize, n: usize },
    Star { leaves: usize },
    Spider { arms: Vec<usize> },
    KaryTree { k: usize, h: u32 },
    Mesh { p: usize, q: usize },
    Cylinder { p: usize, q: usize },
    RandomTree { n: usize, seed: u64 },
    KahnPair { arms: usize, long_len: usize },
}

impl TopologyDescriptor {
    /// Checks the family's parameter domain.
    pub fn validate(&self) -> Result<()> {
        use TopologyDescriptor::*;
        match self {
            Path { n } | Complete { n } => nonzero(*n, "n"),
            Cycle { n } => {
                if *n < 3 {
                    Err(Error::parameter(format!("cycle requires n >= 3, got {n}")))
                } else {
                    Ok(())
                }
            }
            CompleteBipartite { m, n } => {
                nonzero(*m, "m")?;
                nonzero(*n, "n")
            }
            Star { leaves } => nonzero(*leaves, "leaf count"),
            Spider { arms } => {
                if arms.len() < 2 {
                    return Err(Error::parameter("spider requires at least two arms"));
                }
                if arms.contains(&0) {
                    return Err(Error::parameter("spider arm lengths must be positive"));
                }
                Ok(())
            }
            KaryTree { k, h } => {
                nonzero(*k, "k")?;
                if *k == 1 || *h == 0 {
                    // degenerate: a path (k = 1) or a single vertex (h = 0)
                    return Ok(());
                }
                // Keep the perfect tree small enough to index with usize.
                if k.pow(*h) > 1 << 28 {
                    return Err(Error::parameter("k-ary tree too large"));
                }
                Ok(())
            }
            Mesh { p, q } => {
                nonzero(*p, "p")?;
                nonzero(*q, "q")
            }
            Cylinder { p, q } => {
                nonzero(*p, "p")?;
                if *q < 3 {
                    return Err(Error::parameter(format!(
                        "cylinder requires q >= 3 to stay simple, got {q}"
                    )));
                }
                Ok(())
            }
            RandomTree { n, .. } => nonzero(*n, "n"),
            KahnPair { arms, long_len } => {
                if *arms < 2 || arms % 2 != 0 {
                    return Err(Error::parameter(
                        "kahn pair requires an even arm count >= 2",
                    ));
                }
                nonzero(*long_len, "long arm length")
            }
        }
    }

    /// Short human-readable label (also the CLI spelling).
    pub fn label(&self) -> String {
        use TopologyDescriptor::*;
        match self {
            Path { n } => format!("path:{n}"),
            Cycle { n } => format!("cycle:{n}"),
            Complete { n } => format!("complete:{n}"),
            CompleteBipartite { m, n } => format!("bipartite:{m},{n}"),
            Star { leaves } => format!("star:{leaves}"),
            Spider { arms } => {
                let parts: Vec<String> = arms.iter().map(|a| format!("{a}")).collect();
                format!("spider:{}", parts.join(","))
            }
            KaryTree { k, h } => format!("kary:{k},{h}"),
            Mesh { p, q } => format!("mesh:{p},{q}"),
            Cylinder { p, q } => format!("cylinder:{p},{q}"),
            RandomTree { n, seed } => format!("random_tree:{n},{seed}"),
            KahnPair { arms, long_len } => format!("kahn_pair:{arms},{long_len}"),
        }
    }
}

fn nonzero(v: usize, what: &str) -> Result<()> {
    if v == 0 {
        Err(Error::parameter(format!("{what} must be positive")))
    } else {
        Ok(())
    }
}

/// Output of [`generate`]: all families yield one graph except the Kahn
/// construction, which yields the spider `G` and its supergraph `G*`.
#[derive(Debug, Clone)]
pub enum Generated {
    Single(Graph),
    Pair { g: Graph, g_star: Graph },
}

/// Generates the graph(s) for a descriptor.
pub fn generate(desc: &TopologyDescriptor) -> Result<Generated> {
    desc.validate()?;
    use TopologyDescriptor::*;
    let single = |g: Result<Graph>| g.map(Generated::Single);
    match desc {
        Path { n } => single(path(*n)),
        Cycle { n } => single(cycle(*n)),
        Complete { n } => single(complete(*n)),
        CompleteBipartite { m, n } => single(complete_bipartite(*m, *n)),
        Star { leaves } => single(star(*leaves)),
        Spider { arms } => single(spider(arms)),
        KaryTree { k, h } => single(kary_tree(*k, *h)),
        Mesh { p, q } => single(mesh(*p, *q)),
        Cylinder { p, q } => single(cylinder(*p, *q)),
        RandomTree { n, seed } => single(random_tree(*n, *seed)),
        KahnPair { arms, long_len } => {
            let (g, g_star) = kahn_pair(*arms, *long_len)?;
            Ok(Generated::Pair { g, g_star })
        }
    }
}

/// Generates a descriptor that yields a single graph; for `KahnPair` the
/// supergraph `G*` is returned (the member usually simulated against).
pub fn generate_graph(desc: &TopologyDescriptor) -> Result<Graph> {
    match generate(desc)? {
        Generated::Single(g) => Ok(g),
        Generated::Pair { g_star, .. } => Ok(g_star),
    }
}

pub fn path(n: usize) -> Result<Graph> {
    Graph::new(n, (1..n).map(|v| (v - 1, v)))
}

pub fn cycle(n: usize) -> Result<Graph> {
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    edges.push((n - 1, 0));
    Graph::new(n, edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, edges)
}

pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    let mut edges = Vec::with_capacity(m * n);
    for a in 0..m {
        for b in 0..n {
            edges.push((a, m + b));
        }
    }
    Graph::new(m + n, edges)
}

pub fn star(leaves: usize) -> Result<Graph> {
    Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v)))
}

pub fn spider(arms: &[usize]) -> Result<Graph> {
    let n = 1 + arms.iter().sum::<usize>();
    let mut edges = Vec::with_capacity(n - 1);
    let mut next = 1;
    for &len in arms {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::new(n, edges)
}

pub fn kary_tree(k: usize, h: u32) -> Result<Graph> {
    // Number of vertices of a perfect k-ary tree of height h.
    let n = if k == 1 {
        h as usize + 1
    } else {
        (k.pow(h + 1) - 1) / (k - 1)
    };
    let mut edges = Vec::with_capacity(n - 1);
    for v in 0..n {
        for c in 1..=k {
            let child = k * v + c;
            if child < n {
                edges.push((v, child));
            }
        }
    }
    Graph::new(n, edges)
}

/// Index of mesh vertex in column `i` (1-based, of `q`) and row `j`
/// (1-based, of `p`).
pub fn mesh_vertex(p: usize, i: usize, j: usize) -> Vertex {
    (i - 1) * p + (j - 1)
}

pub fn mesh(p: usize, q: usize) -> Result<Graph> {
    let mut edges = Vec::new();
    for i in 1..=q {
        for j in 1..=p {
            if j < p {
                edges.push((mesh_vertex(p, i, j), mesh_vertex(p, i, j + 1)));
            }
            if i < q {
                edges.push((mesh_vertex(p, i, j), mesh_vertex(p, i + 1, j)));
            }
        }
    }
    Graph::new(p * q, edges)
}

/// Mesh with an extra edge between the leftmost and rightmost vertex of
/// each row.
pub fn cylinder(p: usize, q: usize) -> Result<Graph> {
    let base = mesh(p, q)?;
    let mut edges: Vec<_> = base.edges().to_vec();
    for j in 1..=p {
        edges.push((mesh_vertex(p, 1, j), mesh_vertex(p, q, j)));
    }
    Graph::new(p * q, edges)
}

/// Uniform random labeled tree from a seeded Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    if n == 1 {
        return Graph::new(1, []);
    }
    if n == 2 {
        return Graph::new(2, [(0, 1)]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let prufer: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &prufer {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    // Smallest-leaf decoding, driven by a pointer plus an explicit "next
    // leaf" candidate so the whole decode stays O(n log n)-free.
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &v in &prufer {
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 && v < ptr {
            leaf = v;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    Graph::new(n, edges)
}

/// The non-monotonicity counterexample: a spider `G` whose arms alternate
/// lengths `(long_len, 1)`, and the supergraph `G*` obtained by joining
/// every vertex of each odd-indexed arm to every vertex of the following
/// arm. `G` needs large immunity; `G*` is cleanable with τ = 2.
pub fn kahn_pair(arms: usize, long_len: usize) -> Result<(Graph, Graph)> {
    let desc = TopologyDescriptor::KahnPair { arms, long_len };
    desc.validate()?;
    let lengths: Vec<usize> = (0..arms)
        .map(|i| if i % 2 == 0 { long_len } else { 1 })
        .collect();
    let g = spider(&lengths)?;

    // Arm start offsets in the spider layout.
    let mut starts = Vec::with_capacity(arms);
    let mut next = 1;
    for &len in &lengths {
        starts.push(next);
        next += len;
    }
    let mut edges: Vec<_> = g.edges().to_vec();
    for pair in 0..arms / 2 {
        let long_start = starts[2 * pair];
        let short = starts[2 * pair + 1];
        for offset in 0..long_len {
            edges.push((long_start + offset, short));
        }
    }
    let g_star = Graph::new(g.vertex_count(), edges)?;
    Ok((g, g_star))
}
