use super::Hypergraph;

/// Whether the graph given by its adjacency matrix contains a clique on `k` vertices.
pub fn has_clique(adj: &[Vec<bool>], k: usize) -> bool {
    if k == 0 {
        return true;
    }
    let candidates: Vec<usize> = (0..adj.len()).collect();
    extend(adj, &candidates, 0, k)
}

fn extend(adj: &[Vec<bool>], candidates: &[usize], size: usize, k: usize) -> bool {
    if size == k {
        return true;
    }
    if size + candidates.len() < k {
        return false;
    }
    for (i, &v) in candidates.iter().enumerate() {
        if size + candidates.len() - i < k {
            return false;
        }
        let next: Vec<usize> = candidates[i + 1..]
            .iter()
            .copied()
            .filter(|&w| adj[v][w])
            .collect();
        if extend(adj, &next, size + 1, k) {
            return true;
        }
    }
    false
}

/// Order of a largest clique.
pub fn max_clique_size(adj: &[Vec<bool>]) -> usize {
    let mut k = 0;
    while k < adj.len() && has_clique(adj, k + 1) {
        k += 1;
    }
    k
}

fn shadow_graph(h: &Hypergraph) -> Vec<Vec<bool>> {
    let n = h.n();
    let mut adj = vec![vec![false; n]; n];
    for e in h.edges() {
        for (i, &a) in e.iter().enumerate() {
            for &b in &e[i + 1..] {
                adj[a][b] = true;
                adj[b][a] = true;
            }
        }
    }
    adj
}

/// True iff the (r-2)-fold shadow of `h` (a graph) has no clique on `m + 1` vertices.
pub fn shadow_clique_free(h: &Hypergraph, m: usize) -> bool {
    if h.r() < 2 {
        // no pairs at all: cliques have at most one vertex
        return m + 1 > h.n().min(1);
    }
    !has_clique(&shadow_graph(h), m + 1)
}
