//! Tree strategies: in-order leaf shuttles, the two-phase binary variant,
//! the bounded-height block sweep, and the square-root strategy for
//! arbitrary trees.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::dynamics::SimState;
use crate::error::Error;
use crate::graph::{ball_subtree, Graph, Subtree, TreeView, Vertex};
use crate::Result;

use super::{ceil_sqrt, MoveScript, Strategy};

/// Walks from the subtree root to each leaf in depth-first order and back,
/// one leaf at a time.
fn inorder_shuttles(g: &Graph, sub: &Subtree) -> Vec<Vertex> {
    let root = sub.root();
    let mut moves = Vec::new();
    for leaf in sub.dfs_leaf_order(g) {
        if leaf == root {
            continue;
        }
        let out = sub.path(root, leaf);
        moves.extend_from_slice(&out[1..]);
        let back: Vec<Vertex> = out.iter().rev().skip(1).copied().collect();
        moves.extend_from_slice(&back);
    }
    moves
}

/// Root-start leaf shuttle: visit each leaf in depth-first order,
/// returning to the root every time. Monotone at τ = 2h − 1 under the
/// lenient rule.
pub fn kary_inorder(t: &TreeView<'_>) -> Result<MoveScript> {
    let sub = t.truncate_at_depth(t.height());
    Ok(MoveScript {
        placement: t.root(),
        moves: inorder_shuttles(t.graph(), &sub),
    })
}

/// Binary-tree refinement: fully shuttle the subtree under one root child,
/// then the other, lowering the requirement to τ = 2h − 3 (lenient).
pub fn binary_two_phase(t: &TreeView<'_>) -> Result<MoveScript> {
    if t.graph()
        .vertices()
        .any(|v| t.children(v).count() > 2)
    {
        return Err(Error::applicability(
            "two-phase strategy requires a binary tree",
        ));
    }
    let kids: Vec<Vertex> = t.children(t.root()).collect();
    if kids.len() != 2 {
        return Err(Error::applicability(
            "two-phase strategy requires a root with two children",
        ));
    }
    if t.height() < 2 {
        return Err(Error::applicability("two-phase strategy requires height >= 2"));
    }
    let (left, right) = (kids[0], kids[1]);
    let mut moves = inorder_shuttles(t.graph(), &t.subtree(left));
    moves.push(t.root());
    moves.push(right);
    moves.extend(inorder_shuttles(t.graph(), &t.subtree(right)));
    Ok(MoveScript {
        placement: left,
        moves,
    })
}

/// Compiled bounded-height sweep: placement plus a move list that ends at
/// the subtree root.
pub(crate) struct SmallHeightPlan {
    pub placement: Vertex,
    pub moves: Vec<Vertex>,
}

struct SmallHeightPlanner<'a> {
    g: &'a Graph,
    sub: &'a Subtree,
    /// Subtree sizes within `sub`.
    size: Vec<usize>,
    /// Contaminated-vertex counts per subtree; `None` plans structurally.
    dirty: Option<Vec<usize>>,
    /// Exposure budget the plan must respect between anchor visits.
    budget: usize,
    moves: Vec<Vertex>,
}

impl<'a> SmallHeightPlanner<'a> {
    fn keep(&self, v: Vertex) -> bool {
        match &self.dirty {
            Some(d) => d[v] > 0,
            None => true,
        }
    }

    /// Euler tour of the subtree under `c`, starting and ending at its
    /// parent `from`; fully clean branches are skipped.
    fn tour(&mut self, from: Vertex, c: Vertex) {
        self.moves.push(c);
        let kids: Vec<Vertex> = self.sub.children(self.g, c).collect();
        for gc in kids {
            if self.keep(gc) {
                self.tour(c, gc);
            }
        }
        self.moves.push(from);
    }

    fn anchor_trip(&mut self, r: Vertex, anchor: Vertex) {
        if r == anchor {
            return;
        }
        let out = self.sub.path(r, anchor);
        self.moves.extend_from_slice(&out[1..]);
        for &v in out.iter().rev().skip(1) {
            self.moves.push(v);
        }
    }

    fn flush(&mut self, r: Vertex, anchor: Vertex, block: &mut Vec<Vertex>) {
        if block.is_empty() {
            return;
        }
        for &c in block.iter() {
            self.tour(r, c);
        }
        block.clear();
        self.anchor_trip(r, anchor);
    }

    /// Cleans every subtree hanging off `r` (minus `exclude`), grouped
    /// into blocks small enough that each block-plus-anchor excursion
    /// stays within the exposure budget. Oversized subtrees are descended
    /// into, keeping the same anchor. The agent starts and ends at `r`.
    fn clean_at(&mut self, r: Vertex, anchor: Vertex, dist: usize, exclude: Option<Vertex>) {
        let cap = (self.budget.saturating_sub(2 * dist) / 2).max(1);
        let mut block: Vec<Vertex> = Vec::new();
        let mut block_size = 0usize;
        let kids: Vec<Vertex> = self.sub.children(self.g, r).collect();
        for c in kids {
            if Some(c) == exclude || !self.keep(c) {
                continue;
            }
            if self.size[c] > cap {
                self.flush(r, anchor, &mut block);
                block_size = 0;
                self.moves.push(c);
                self.clean_at(c, anchor, dist + 1, None);
                self.moves.push(r);
                // Refresh the anchor clock before packing the next block;
                // the pop itself consumed part of the exposure budget.
                self.anchor_trip(r, anchor);
                continue;
            }
            if block_size + self.size[c] > cap {
                self.flush(r, anchor, &mut block);
                block_size = 0;
            }
            block.push(c);
            block_size += self.size[c];
        }
        self.flush(r, anchor, &mut block);
    }
}

/// Plans the bounded-height monotone sweep over `sub` with immunity
/// multiplier `alpha` (> 2): start at the deepest heavy subtree root,
/// clean it in blocks, then climb toward the subtree root cleaning the
/// remainder level by level. When a contamination snapshot is supplied,
/// fully clean branches are skipped.
pub(crate) fn plan_small_height(
    g: &Graph,
    sub: &Subtree,
    alpha: u32,
    state: Option<&SimState>,
) -> Result<SmallHeightPlan> {
    if alpha <= 2 {
        return Err(Error::parameter("height multiplier must exceed 2"));
    }
    let root = sub.root();
    let n = g.vertex_count();
    let h = sub.height() as usize;

    // Subtree sizes (and contaminated counts) by processing members in
    // depth-descending order.
    let mut order: Vec<Vertex> = sub.members().to_vec();
    order.sort_by_key(|&v| core::cmp::Reverse(sub.depth(v)));
    let mut size = vec![0usize; n];
    let mut dirty = state.map(|_| vec![0usize; n]);
    for &v in &order {
        size[v] += 1;
        if let (Some(d), Some(s)) = (&mut dirty, state) {
            if !s.is_clean(v) {
                d[v] += 1;
            }
        }
        if let Some(p) = sub.parent(v) {
            size[p] += size[v];
            if let Some(d) = &mut dirty {
                d[p] += d[v];
            }
        }
    }

    let mut planner = SmallHeightPlanner {
        g,
        sub,
        size,
        dirty,
        budget: alpha as usize * h,
        moves: Vec::new(),
    };

    // Heavy subtree: more than h(α − 2)/2 vertices. The plan starts at the
    // deepest such root; without one a single depth-first tour suffices.
    let heavy = |v: Vertex| 2 * planner.size[v] > h * (alpha as usize - 2);
    let start = sub
        .members()
        .iter()
        .copied()
        .filter(|&v| heavy(v))
        .max_by(|&a, &b| sub.depth(a).cmp(&sub.depth(b)).then(b.cmp(&a)));

    let Some(p1) = start else {
        let kids: Vec<Vertex> = sub.children(g, root).collect();
        for c in kids {
            if planner.keep(c) {
                planner.tour(root, c);
            }
        }
        return Ok(SmallHeightPlan {
            placement: root,
            moves: planner.moves,
        });
    };

    planner.clean_at(p1, p1, 0, None);
    let mut cur = p1;
    while cur != root {
        let parent = sub.parent(cur).expect("non-root member has a parent");
        planner.moves.push(parent);
        planner.clean_at(parent, parent, 0, Some(cur));
        cur = parent;
    }
    Ok(SmallHeightPlan {
        placement: p1,
        moves: planner.moves,
    })
}

/// Monotone bounded-height sweep of a rooted tree; succeeds with
/// τ = α · h in at most `4n(α−1)/(α−2)` moves (plus the climb).
pub fn tree_small_height(t: &TreeView<'_>, alpha: u32) -> Result<MoveScript> {
    let sub = t.truncate_at_depth(t.height());
    let plan = plan_small_height(t.graph(), &sub, alpha, None)?;
    Ok(MoveScript {
        placement: plan.placement,
        moves: plan.moves,
    })
}

enum SqrtMode {
    StartIteration,
    Walking { path: Vec<Vertex>, idx: usize },
}

/// Square-root strategy for arbitrary trees, rooted at a center vertex:
/// per leaf (in depth-first order), refresh a radius-√n ball around the
/// center, walk toward the leaf applying radius-10√n refreshes at
/// branching vertices (rate-limited to one per 5√n walk ticks), then
/// return. Succeeds with τ = ⌈30√n⌉.
pub struct TreeSqrtStrategy {
    root: Vertex,
    leaves: Vec<Vertex>,
    parent: Vec<Option<Vertex>>,
    r_center: u32,
    r_branch: u32,
    cooldown: u32,
    leaf_idx: usize,
    queue: VecDeque<Vertex>,
    mode: SqrtMode,
    since_aux: u32,
    aux_checked_at: Option<usize>,
    moves_this_iteration: u64,
    max_iteration_moves: u64,
}

/// Builds the square-root tree strategy from a rooted view (root at a
/// center vertex).
pub fn tree_sqrt(t: &TreeView<'_>) -> Result<TreeSqrtStrategy> {
    let n = t.graph().vertex_count() as u64;
    let s = ceil_sqrt(n) as u32;
    Ok(TreeSqrtStrategy {
        root: t.root(),
        leaves: t.dfs_leaf_order(),
        parent: (0..t.graph().vertex_count()).map(|v| t.parent(v)).collect(),
        r_center: s,
        r_branch: ceil_sqrt(100 * n) as u32,
        cooldown: ceil_sqrt(25 * n) as u32,
        leaf_idx: 0,
        queue: VecDeque::new(),
        mode: SqrtMode::StartIteration,
        since_aux: 0,
        aux_checked_at: None,
        moves_this_iteration: 0,
        max_iteration_moves: 0,
    })
}

impl TreeSqrtStrategy {
    /// Peak per-iteration move count observed so far.
    pub fn max_iteration_moves(&self) -> u64 {
        self.max_iteration_moves
    }

    /// Path from `a` up-and-over to `b` using parent pointers.
    fn tree_path(&self, a: Vertex, b: Vertex) -> Vec<Vertex> {
        let depth = |mut v: Vertex| {
            let mut d = 0;
            while let Some(p) = self.parent[v] {
                v = p;
                d += 1;
            }
            d
        };
        let mut up_a = vec![a];
        let mut up_b = vec![b];
        let (mut x, mut y) = (a, b);
        let (mut dx, mut dy) = (depth(a), depth(b));
        while dx > dy {
            x = self.parent[x].expect("depth positive");
            up_a.push(x);
            dx -= 1;
        }
        while dy > dx {
            y = self.parent[y].expect("depth positive");
            up_b.push(y);
            dy -= 1;
        }
        while x != y {
            x = self.parent[x].expect("roots meet");
            y = self.parent[y].expect("roots meet");
            up_a.push(x);
            up_b.push(y);
        }
        up_b.pop();
        up_b.reverse();
        up_a.extend(up_b);
        up_a
    }

    /// Bounded-height refresh of the radius ball at `center`; empty when
    /// the ball holds no contamination.
    fn aux_moves(&self, g: &Graph, state: &SimState, center: Vertex, radius: u32) -> Vec<Vertex> {
        let ball = ball_subtree(g, center, radius);
        if ball.members().iter().all(|&v| state.is_clean(v)) {
            return Vec::new();
        }
        let plan = match plan_small_height(g, &ball, 3, Some(state)) {
            Ok(p) => p,
            Err(_) => return Vec::new(),
        };
        let mut moves = Vec::new();
        if plan.placement != center {
            let walk = ball.path(center, plan.placement);
            moves.extend_from_slice(&walk[1..]);
        }
        moves.extend(plan.moves);
        moves
    }

    fn pop(&mut self) -> Option<Vertex> {
        let m = self.queue.pop_front();
        if m.is_some() {
            self.moves_this_iteration += 1;
            self.max_iteration_moves = self.max_iteration_moves.max(self.moves_this_iteration);
        }
        m
    }
}

impl Strategy for TreeSqrtStrategy {
    fn name(&self) -> &str {
        "tree-sqrt"
    }

    fn placement(&self) -> Vertex {
        self.root
    }

    fn next_move(&mut self, g: &Graph, _tau: u32, state: &SimState) -> Option<Vertex> {
        loop {
            if let Some(m) = self.pop() {
                return Some(m);
            }
            match &self.mode {
                SqrtMode::StartIteration => {
                    let leaf = loop {
                        let &leaf = self.leaves.get(self.leaf_idx)?;
                        if leaf == self.root {
                            self.leaf_idx += 1;
                            continue;
                        }
                        break leaf;
                    };
                    self.moves_this_iteration = 0;
                    let opener = self.aux_moves(g, state, self.root, self.r_center);
                    self.queue.extend(opener);
                    // The rate limit spaces branch refreshes along the walk;
                    // the first branching vertex is always eligible.
                    self.since_aux = self.cooldown;
                    self.aux_checked_at = None;
                    self.mode = SqrtMode::Walking {
                        path: self.tree_path(self.root, leaf),
                        idx: 0,
                    };
                }
                SqrtMode::Walking { path, idx } => {
                    let (path, idx) = (path.clone(), *idx);
                    let here = path[idx];
                    // Branch refresh on arrival, at most one per position.
                    if idx > 0
                        && self.aux_checked_at != Some(idx)
                        && g.degree(here) > 2
                        && self.since_aux >= self.cooldown
                    {
                        self.aux_checked_at = Some(idx);
                        let aux = self.aux_moves(g, state, here, self.r_branch);
                        if !aux.is_empty() {
                            self.since_aux = 0;
                            self.queue.extend(aux);
                            continue;
                        }
                    }
                    if idx + 1 < path.len() {
                        self.queue.push_back(path[idx + 1]);
                        self.since_aux = self.since_aux.saturating_add(1);
                        self.mode = SqrtMode::Walking {
                            path,
                            idx: idx + 1,
                        };
                    } else {
                        // At the leaf: queue the return and close the
                        // iteration.
                        for &v in path.iter().rev().skip(1) {
                            self.queue.push_back(v);
                        }
                        self.leaf_idx += 1;
                        self.mode = SqrtMode::StartIteration;
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{run, SemanticVariant, Verdict};
    use crate::strategy::ScriptStrategy;
    use crate::topology;

    fn lenient_run(g: &Graph, script: MoveScript, tau: u32) -> (Verdict, bool) {
        let mut s = ScriptStrategy::new("t", script);
        let budget = crate::dynamics::default_tick_budget(g.vertex_count(), tau);
        let (o, t) = run(g, &mut s, tau, SemanticVariant::LENIENT, budget).unwrap();
        (o.verdict, t.is_monotone())
    }

    #[test]
    fn kary_shuttle_perfect_binary() {
        let g = topology::kary_tree(2, 3).unwrap();
        let t = TreeView::rooted(&g, 0).unwrap();
        let script = kary_inorder(&t).unwrap();
        script.validate(&g).unwrap();
        let (verdict, monotone) = lenient_run(&g, script, 2 * 3 - 1);
        assert_eq!(verdict, Verdict::FullyClean);
        assert!(monotone);
    }

    #[test]
    fn kary_shuttle_single_edge() {
        let g = topology::path(2).unwrap();
        let t = TreeView::rooted(&g, 0).unwrap();
        let (verdict, _) = lenient_run(&g, kary_inorder(&t).unwrap(), 1);
        assert_eq!(verdict, Verdict::FullyClean);
    }

    #[test]
    fn binary_two_phase_height3() {
        let g = topology::kary_tree(2, 3).unwrap();
        let t = TreeView::rooted(&g, 0).unwrap();
        let script = binary_two_phase(&t).unwrap();
        script.validate(&g).unwrap();
        let (verdict, monotone) = lenient_run(&g, script, 2 * 3 - 3);
        assert_eq!(verdict, Verdict::FullyClean);
        assert!(monotone);

        let t3 = topology::kary_tree(3, 2).unwrap();
        let view = TreeView::rooted(&t3, 0).unwrap();
        assert!(binary_two_phase(&view).is_err());
    }

    #[test]
    fn small_height_degenerate_single_tour() {
        // Tiny tree: one block, a plain depth-first tour from the root.
        let g = topology::star(3).unwrap();
        let t = TreeView::rooted(&g, 0).unwrap();
        let script = tree_small_height(&t, 4).unwrap();
        assert_eq!(script.placement, 0);
        assert_eq!(script.moves.len(), 2 * (g.vertex_count() - 1));
    }

    #[test]
    fn small_height_monotone_on_random_trees() {
        for seed in [3u64, 17, 42] {
            let g = topology::random_tree(120, seed).unwrap();
            let root = crate::graph::canonical_center(&g).unwrap();
            let t = TreeView::rooted(&g, root).unwrap();
            let h = t.height().max(1);
            let script = tree_small_height(&t, 3).unwrap();
            script.validate(&g).unwrap();
            let moves = script.len() as u64;
            let mut s = ScriptStrategy::new("smallh", script);
            let budget = crate::dynamics::default_tick_budget(120, 3 * h);
            let (o, tr) = run(&g, &mut s, 3 * h, SemanticVariant::STRICT, budget).unwrap();
            assert_eq!(o.verdict, Verdict::FullyClean, "seed {seed}");
            assert!(tr.is_monotone(), "seed {seed}");
            assert!(
                moves <= 8 * 120 + 2 * h as u64,
                "seed {seed}: {moves} moves"
            );
        }
    }

    #[test]
    fn small_height_caterpillar() {
        // Three-vertex spine with one leg each, rooted at the middle:
        // height 2, immunity 4h = 8.
        let g = Graph::new(6, [(0, 1), (1, 2), (0, 3), (1, 4), (2, 5)]).unwrap();
        let t = TreeView::rooted(&g, 1).unwrap();
        assert_eq!(t.height(), 2);
        let script = tree_small_height(&t, 4).unwrap();
        let (verdict, monotone) = {
            let mut s = ScriptStrategy::new("cat", script);
            let (o, tr) = run(&g, &mut s, 8, SemanticVariant::STRICT, 500).unwrap();
            (o.verdict, tr.is_monotone())
        };
        assert_eq!(verdict, Verdict::FullyClean);
        assert!(monotone);
    }

    #[test]
    fn tree_sqrt_cleans_alternating_arm_spider() {
        let (g, _) = topology::kahn_pair(6, 4).unwrap();
        let root = crate::graph::canonical_center(&g).unwrap();
        let t = TreeView::rooted(&g, root).unwrap();
        let tau = ceil_sqrt(900 * g.vertex_count() as u64) as u32;
        let mut strat = tree_sqrt(&t).unwrap();
        let budget = crate::dynamics::default_tick_budget(g.vertex_count(), tau);
        let (o, _) = run(&g, &mut strat, tau, SemanticVariant::STRICT, budget).unwrap();
        assert_eq!(o.verdict, Verdict::FullyClean);
    }

    #[test]
    fn tree_sqrt_cleans_path_and_random_tree() {
        for (g, label) in [
            (topology::path(30).unwrap(), "path"),
            (topology::random_tree(150, 5).unwrap(), "random"),
        ] {
            let root = crate::graph::canonical_center(&g).unwrap();
            let t = TreeView::rooted(&g, root).unwrap();
            let tau = ceil_sqrt(900 * g.vertex_count() as u64) as u32;
            let mut strat = tree_sqrt(&t).unwrap();
            let budget = crate::dynamics::default_tick_budget(g.vertex_count(), tau);
            let (o, _) = run(&g, &mut strat, tau, SemanticVariant::STRICT, budget).unwrap();
            assert_eq!(o.verdict, Verdict::FullyClean, "{label}");
            assert!(strat.max_iteration_moves() <= 25 * g.vertex_count() as u64);
        }
    }
}
