//! Test-instance generators: the bipartite membership construction, seeded
//! Erdős–Rényi graphs, and cliques.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("instance too large: {n} + C({n},{ell}) exceeds {cap} vertices")]
    GeneratorLimit { n: usize, ell: usize, cap: usize },
    #[error("no G({n},{p}) sample reached minimum degree {min_degree} within {retries} retries")]
    MinDegreeRetriesExhausted {
        n: usize,
        p: f64,
        min_degree: usize,
        retries: usize,
    },
}

const KUHN_OSTHUS_VERTEX_CAP: usize = 1_000_000;

/// Binomial coefficient with saturation, enough to enforce the vertex cap.
fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// Enumerates the `ell`-subsets of `0..n` in lexicographic order.
fn subsets_lex(n: usize, ell: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..ell).collect();
    loop {
        out.push(cur.clone());
        // advance to the next subset in lex order
        let mut i = ell;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - ell {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..ell {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// The bipartite membership graph between `0..n` and all `ell`-subsets of it:
/// element vertex `i` is adjacent to subset vertex `A` iff `i ∈ A`. Subset
/// vertices are numbered `n..` in lexicographic subset order. Every subset
/// vertex has degree `ell`; every element vertex has degree `C(n-1, ell-1)`.
pub fn kuhn_osthus(n: usize, ell: usize) -> Result<Graph, GeneratorError> {
    assert!(ell >= 1 && ell <= n, "require 1 <= ell <= n");
    let count = binomial(n, ell);
    if count > KUHN_OSTHUS_VERTEX_CAP - n {
        return Err(GeneratorError::GeneratorLimit {
            n,
            ell,
            cap: KUHN_OSTHUS_VERTEX_CAP,
        });
    }
    let mut g = Graph::new(n + count);
    for (idx, subset) in subsets_lex(n, ell).into_iter().enumerate() {
        for i in subset {
            g.add_edge(i, n + idx);
        }
    }
    Ok(g)
}

/// G(n, p): each unordered pair independently with probability `p`,
/// deterministic per seed.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    assert!((0.0..=1.0).contains(&p), "p must be in [0,1]");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Resamples G(n, p) with seeds `seed, seed+1, ...` until the sample has
/// minimum degree at least `min_degree`.
pub fn gnp_min_degree(
    n: usize,
    p: f64,
    min_degree: usize,
    seed: u64,
    retries: usize,
) -> Result<Graph, GeneratorError> {
    for attempt in 0..retries.max(1) {
        let g = gnp(n, p, seed.wrapping_add(attempt as u64));
        if g.min_degree() >= min_degree {
            return Ok(g);
        }
    }
    Err(GeneratorError::MinDegreeRetriesExhausted {
        n,
        p,
        min_degree,
        retries,
    })
}

/// The complete graph K_n.
pub fn clique(n: usize) -> Graph {
    assert!(n >= 1);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kuhn_osthus_3_2() {
        let g = kuhn_osthus(3, 2).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(g.m(), 6);
        assert_eq!(g.min_degree(), 2);
        // lexicographic subsets: {0,1} -> 3, {0,2} -> 4, {1,2} -> 5
        assert!(g.has_edge(0, 3) && g.has_edge(1, 3));
        assert!(g.has_edge(0, 4) && g.has_edge(2, 4));
        assert!(g.has_edge(1, 5) && g.has_edge(2, 5));
    }

    #[test]
    fn kuhn_osthus_ell_1_is_perfect_matching() {
        let g = kuhn_osthus(4, 1).unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(g.m(), 4);
        assert!(g.vertices().all(|v| g.degree(v) == 1));
    }

    #[test]
    fn kuhn_osthus_5_2() {
        let g = kuhn_osthus(5, 2).unwrap();
        assert_eq!(g.n(), 15);
        assert_eq!(g.min_degree(), 2);
        for v in 0..5 {
            assert_eq!(g.degree(v), 4); // C(4,1)
        }
        for v in 5..15 {
            assert_eq!(g.degree(v), 2);
        }
    }

    #[test]
    fn kuhn_osthus_min_degree_formula() {
        for (n, ell) in [(3, 2), (4, 2), (5, 2), (5, 3), (6, 1), (4, 4)] {
            let g = kuhn_osthus(n, ell).unwrap();
            let x_deg = binomial(n - 1, ell - 1);
            assert_eq!(g.min_degree(), ell.min(x_deg), "n={n} ell={ell}");
        }
    }

    #[test]
    fn kuhn_osthus_size_cap() {
        assert!(matches!(
            kuhn_osthus(100, 50),
            Err(GeneratorError::GeneratorLimit { .. })
        ));
    }

    #[test]
    fn gnp_extremes_and_determinism() {
        let g = gnp(6, 1.0, 1);
        assert_eq!(g.m(), 15);
        let g = gnp(6, 0.0, 1);
        assert_eq!(g.m(), 0);
        let a = gnp(40, 0.3, 42);
        let b = gnp(40, 0.3, 42);
        assert_eq!(a, b);
        let c = gnp(40, 0.3, 43);
        assert_ne!(a, c);
    }

    #[test]
    fn gnp_edge_count_statistics() {
        // mean over 100 seeds within 3 sigma/10 of the binomial mean
        let n = 200;
        let p = 0.4;
        let pairs = (n * (n - 1) / 2) as f64;
        let mean_edges: f64 =
            (0..100).map(|s| gnp(n, p, s).m() as f64).sum::<f64>() / 100.0;
        let sigma = (pairs * p * (1.0 - p)).sqrt();
        assert!(
            (mean_edges - pairs * p).abs() < 3.0 * sigma / 10.0,
            "mean {mean_edges} vs expected {}",
            pairs * p
        );
    }

    #[test]
    fn gnp_min_degree_retries() {
        let g = gnp_min_degree(30, 0.5, 5, 7, 50).unwrap();
        assert!(g.min_degree() >= 5);
        assert!(matches!(
            gnp_min_degree(10, 0.05, 8, 7, 5),
            Err(GeneratorError::MinDegreeRetriesExhausted { .. })
        ));
    }

    #[test]
    fn clique_fixtures() {
        assert_eq!(clique(1).m(), 0);
        assert_eq!(clique(4).m(), 6);
        assert_eq!(clique(101).min_degree(), 100);
    }
}
