use crate::bundle::Bundle;
use crate::error::Result;
use crate::instance::Instance;

use super::{mu, Budget};

/// Node `(agent, S)` for a two-item bundle `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompatNode {
    pub agent: usize,
    pub bundle: Bundle,
}

/// Which (agent, pair) assignments are mutually PMMS-compatible.
///
/// `(i, S)` and `(j, T)` are adjacent when `i ≠ j`, `S ∩ T = ∅`, and neither agent
/// PMMS-envies the other holding those bundles. With `m = 2n`, a balanced PMMS
/// allocation exists exactly when the graph has an `n`-clique with distinct agents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatGraph {
    pub nodes: Vec<CompatNode>,
    /// Index pairs into `nodes`, each with the smaller index first.
    pub edges: Vec<(usize, usize)>,
}

impl CompatGraph {
    pub fn build(inst: &Instance, budget: Budget) -> Result<Self> {
        let pairs: Vec<Bundle> = (0..inst.m())
            .flat_map(|a| (a + 1..inst.m()).map(move |b| Bundle::from_items([a, b])))
            .collect();
        let nodes: Vec<CompatNode> = (0..inst.n())
            .flat_map(|agent| pairs.iter().map(move |&bundle| CompatNode { agent, bundle }))
            .collect();

        let mut edges = Vec::new();
        for (x, p) in nodes.iter().enumerate() {
            for (y, q) in nodes.iter().enumerate().skip(x + 1) {
                if p.agent == q.agent || !p.bundle.is_disjoint(q.bundle) {
                    continue;
                }
                let union = p.bundle | q.bundle;
                let vp = inst.valuation(p.agent);
                let vq = inst.valuation(q.agent);
                if vp.eval(p.bundle) >= mu(vp, union, 2, budget)?.mu
                    && vq.eval(q.bundle) >= mu(vq, union, 2, budget)?.mu
                {
                    edges.push((x, y));
                }
            }
        }
        Ok(CompatGraph { nodes, edges })
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// Nodes with at least one edge; isolated ones are left out of renderings.
    pub fn visible_nodes(&self) -> Vec<usize> {
        self.degrees()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(i, _)| i)
            .collect()
    }

    fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.nodes.len()]; self.nodes.len()];
        for &(a, b) in &self.edges {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        adj
    }

    /// A triangle whose three nodes belong to three distinct agents, if one exists.
    #[allow(clippy::needless_range_loop)]
    pub fn find_triangle(&self) -> Option<[usize; 3]> {
        let adj = self.adjacency();
        let n = self.nodes.len();
        for a in 0..n {
            for b in a + 1..n {
                if !adj[a][b] {
                    continue;
                }
                for c in b + 1..n {
                    if adj[a][c] && adj[b][c] {
                        let agents = [self.nodes[a].agent, self.nodes[b].agent, self.nodes[c].agent];
                        if agents[0] != agents[1] && agents[1] != agents[2] && agents[0] != agents[2] {
                            return Some([a, b, c]);
                        }
                    }
                }
            }
        }
        None
    }

    pub fn has_edge(&self, p: CompatNode, q: CompatNode) -> bool {
        let find = |node: CompatNode| self.nodes.iter().position(|&x| x == node);
        match (find(p), find(q)) {
            (Some(a), Some(b)) => {
                let key = (a.min(b), a.max(b));
                self.edges.contains(&key)
            }
            _ => false,
        }
    }
}
