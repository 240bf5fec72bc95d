//! Progressive-edge-growth construction of regular Tanner graphs.

use super::{CodeError, TannerGraph};

/// Builds an `(d_v, d_c)`-regular graph on `n` variable nodes with
/// `M = n*d_v/d_c` check nodes by progressive edge growth.
///
/// Each edge is placed to maximize the local girth: the first edge of a VN
/// goes to a least-filled CN; later edges go to a CN outside the deepest
/// reachable neighborhood of the VN. Ties are broken by lowest current CN
/// degree, then lowest CN index, so the construction is deterministic; the
/// `seed` argument is reserved for future randomized placement policies and
/// does not affect the result.
pub fn build_peg_regular(
    n: usize,
    d_v: usize,
    d_c: usize,
    seed: u64,
) -> Result<TannerGraph, CodeError> {
    let _ = seed;
    if d_v < 2 {
        return Err(CodeError::InfeasibleDegrees {
            msg: format!("d_v must be at least 2, got {d_v}"),
        });
    }
    if d_c <= d_v {
        return Err(CodeError::InfeasibleDegrees {
            msg: format!("d_c ({d_c}) must exceed d_v ({d_v})"),
        });
    }
    if d_c > n {
        return Err(CodeError::InfeasibleDegrees {
            msg: format!("d_c ({d_c}) exceeds the number of VNs ({n})"),
        });
    }
    let n_edges = n * d_v;
    if n_edges % d_c != 0 {
        return Err(CodeError::Divisibility { n_edges, d_c });
    }
    let m = n_edges / d_c;

    let mut vn_adj: Vec<Vec<usize>> = vec![Vec::with_capacity(d_v); n];
    let mut cn_adj: Vec<Vec<usize>> = vec![Vec::with_capacity(d_c); m];
    let mut cn_degree = vec![0usize; m];
    let mut seen_vn = vec![false; n];
    let mut seen_cn = vec![false; m];

    for vn in 0..n {
        for k in 0..d_v {
            let candidates: Vec<usize> = if k == 0 {
                (0..m).filter(|&c| cn_degree[c] < d_c).collect()
            } else {
                let unreached =
                    deepest_unreached_cns(vn, &vn_adj, &cn_adj, &mut seen_vn, &mut seen_cn);
                let open: Vec<usize> = unreached
                    .iter()
                    .copied()
                    .filter(|&c| cn_degree[c] < d_c)
                    .collect();
                if open.is_empty() {
                    // Regularity takes priority over girth here.
                    (0..m)
                        .filter(|&c| cn_degree[c] < d_c && !vn_adj[vn].contains(&c))
                        .collect()
                } else {
                    open
                }
            };
            let best = candidates
                .into_iter()
                .min_by_key(|&c| (cn_degree[c], c))
                .ok_or_else(|| CodeError::InfeasibleDegrees {
                    msg: format!("no admissible CN for edge {k} of VN {vn}"),
                })?;
            vn_adj[vn].push(best);
            cn_adj[best].push(vn);
            cn_degree[best] += 1;
        }
        vn_adj[vn].sort_unstable();
    }

    TannerGraph::from_vn_adjacency(m, vn_adj)
}

/// BFS outward from `vn` in the partially built graph. Returns the CN
/// complement of the largest neighborhood strictly before full coverage:
/// the set of CNs a new edge can reach that maximizes the local girth.
fn deepest_unreached_cns(
    vn: usize,
    vn_adj: &[Vec<usize>],
    cn_adj: &[Vec<usize>],
    seen_vn: &mut [bool],
    seen_cn: &mut [bool],
) -> Vec<usize> {
    let m = cn_adj.len();
    seen_vn.iter_mut().for_each(|s| *s = false);
    seen_cn.iter_mut().for_each(|s| *s = false);
    seen_vn[vn] = true;
    let mut frontier = vec![vn];
    let mut last_unreached: Vec<usize> = (0..m).collect();

    loop {
        let mut grew = false;
        let mut next_frontier = Vec::new();
        for &v in &frontier {
            for &c in &vn_adj[v] {
                if !seen_cn[c] {
                    seen_cn[c] = true;
                    grew = true;
                    for &w in &cn_adj[c] {
                        if !seen_vn[w] {
                            seen_vn[w] = true;
                            next_frontier.push(w);
                        }
                    }
                }
            }
        }
        let unreached: Vec<usize> = (0..m).filter(|&c| !seen_cn[c]).collect();
        if unreached.is_empty() || !grew || next_frontier.is_empty() {
            if unreached.is_empty() {
                return last_unreached;
            }
            return unreached;
        }
        last_unreached = unreached;
        frontier = next_frontier;
    }
}
