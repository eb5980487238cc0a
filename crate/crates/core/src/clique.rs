//! Exact clique enumeration on small undirected graphs given as adjacency
//! matrices. Output order is deterministic: cliques are sorted vertex lists,
//! listed lexicographically.

pub type Adjacency = Vec<Vec<bool>>;

/// Every clique with exactly `k` vertices.
pub fn k_cliques(adj: &Adjacency, k: usize) -> Vec<Vec<usize>> {
    fn extend(
        adj: &Adjacency,
        k: usize,
        current: &mut Vec<usize>,
        candidates: &[usize],
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let needed = k - current.len();
        for (pos, &v) in candidates.iter().enumerate() {
            if candidates.len() - pos < needed {
                break;
            }
            let next: Vec<usize> = candidates[pos + 1..]
                .iter()
                .copied()
                .filter(|&w| adj[v][w])
                .collect();
            current.push(v);
            extend(adj, k, current, &next, out);
            current.pop();
        }
    }

    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let all: Vec<usize> = (0..adj.len()).collect();
    extend(adj, k, &mut Vec::with_capacity(k), &all, &mut out);
    out
}

/// All cliques of maximum size (Bron-Kerbosch with pivoting).
pub fn maximum_cliques(adj: &Adjacency) -> Vec<Vec<usize>> {
    fn bron_kerbosch(
        adj: &Adjacency,
        r: &mut Vec<usize>,
        mut p: Vec<usize>,
        mut x: Vec<usize>,
        best: &mut usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            if r.len() > *best {
                *best = r.len();
                out.clear();
            }
            if r.len() == *best {
                let mut clique = r.clone();
                clique.sort_unstable();
                out.push(clique);
            }
            return;
        }
        if r.len() + p.len() < *best {
            return;
        }
        let pivot = p
            .iter()
            .chain(&x)
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&v| adj[u][v]).count())
            .expect("nonempty");
        let branch: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
        for v in branch {
            let np = p.iter().copied().filter(|&w| adj[v][w]).collect();
            let nx = x.iter().copied().filter(|&w| adj[v][w]).collect();
            r.push(v);
            bron_kerbosch(adj, r, np, nx, best, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }

    let mut out = Vec::new();
    if adj.is_empty() {
        return out;
    }
    let mut best = 0;
    bron_kerbosch(adj, &mut Vec::new(), (0..adj.len()).collect(), Vec::new(), &mut best, &mut out);
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Adjacency {
        let mut adj = vec![vec![false; n]; n];
        for &(a, b) in edges {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        adj
    }

    #[test]
    fn triangles_in_k4() {
        let adj = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(k_cliques(&adj, 3).len(), 4);
        assert_eq!(maximum_cliques(&adj), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn ties_are_all_reported() {
        // two triangles sharing vertex 2, plus a pendant edge
        let adj = graph(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4), (4, 5)]);
        assert_eq!(maximum_cliques(&adj), vec![vec![0, 1, 2], vec![2, 3, 4]]);
        assert_eq!(k_cliques(&adj, 2).len(), 7);
    }

    #[test]
    fn edgeless_graph() {
        let adj = graph(3, &[]);
        assert_eq!(maximum_cliques(&adj), vec![vec![0], vec![1], vec![2]]);
        assert!(k_cliques(&adj, 2).is_empty());
    }

    #[test]
    fn matches_brute_force_on_small_random_graphs() {
        use rand::Rng;
        let mut rng = crate::rng::seeded(77);
        for _ in 0..30 {
            let n = 8;
            let mut adj = vec![vec![false; n]; n];
            for a in 0..n {
                for b in a + 1..n {
                    let e = rng.random_bool(0.5);
                    adj[a][b] = e;
                    adj[b][a] = e;
                }
            }
            let is_clique = |mask: u32| {
                (0..n).all(|a| (0..n).all(|b| a == b || mask >> a & 1 == 0 || mask >> b & 1 == 0 || adj[a][b]))
            };
            let cliques: Vec<u32> = (1u32..1 << n).filter(|&m| is_clique(m)).collect();
            let best = cliques.iter().map(|m| m.count_ones()).max().unwrap();
            let brute_max = cliques.iter().filter(|m| m.count_ones() == best).count();
            assert_eq!(maximum_cliques(&adj).len(), brute_max);
            for k in 1..=4 {
                let brute = cliques.iter().filter(|m| m.count_ones() == k).count();
                assert_eq!(k_cliques(&adj, k as usize).len(), brute);
            }
        }
    }
}
