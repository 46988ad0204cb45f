use super::MultiGraph;

/// Some Hamiltonian path of `g`, by dynamic programming over vertex subsets
/// (`n <= 24`). Returns `None` when no such path exists.
pub fn hamiltonian_path(g: &MultiGraph) -> Option<Vec<usize>> {
    let n = g.n();
    assert!(n <= 24, "Hamiltonian path search limited to 24 vertices");
    if n == 1 {
        return Some(vec![0]);
    }
    let adj: Vec<u32> = g
        .neighbor_sets()
        .iter()
        .map(|s| s.iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    let full = (1usize << n) - 1;
    // reach[mask] = bitset of end vertices of paths covering exactly `mask`.
    let mut reach = vec![0u32; 1 << n];
    for v in 0..n {
        reach[1 << v] = 1 << v;
    }
    for mask in 1..=full {
        let ends = reach[mask];
        if ends == 0 {
            continue;
        }
        for v in 0..n {
            if ends >> v & 1 == 0 {
                continue;
            }
            let mut nxt = adj[v] & !(mask as u32);
            while nxt != 0 {
                let u = nxt.trailing_zeros() as usize;
                nxt &= nxt - 1;
                reach[mask | (1 << u)] |= 1 << u;
            }
        }
    }
    if reach[full] == 0 {
        return None;
    }
    // Walk back from any end vertex.
    let mut path = Vec::with_capacity(n);
    let mut mask = full;
    let mut v = reach[full].trailing_zeros() as usize;
    loop {
        path.push(v);
        let prev = mask & !(1 << v);
        if prev == 0 {
            break;
        }
        let cand = reach[prev] & adj[v];
        v = cand.trailing_zeros() as usize;
        mask = prev;
    }
    path.reverse();
    Some(path)
}
