//! Small named graphs used in tests, examples and the acceptance suite.
//! Edges are listed in lexicographic order of `(min, max)` endpoints.

use std::collections::BTreeSet;

use super::Graph;

fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    let set: BTreeSet<(usize, usize)> = pairs
        .into_iter()
        .filter(|&(u, v)| u != v)
        .map(|(u, v)| (u.min(v), u.max(v)))
        .collect();
    Graph::new(n, set.into_iter().collect()).expect("family endpoints in range")
}

pub fn complete(n: usize) -> Graph {
    from_pairs(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

pub fn cycle(n: usize) -> Graph {
    from_pairs(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn path(n: usize) -> Graph {
    from_pairs(n, (1..n).map(|i| (i - 1, i)))
}

/// Circulant graph on `Z_n` joining `i` to `i ± s` for every step `s`.
pub fn circulant(n: usize, steps: &[usize]) -> Graph {
    from_pairs(
        n,
        (0..n).flat_map(|i| steps.iter().map(move |&s| (i, (i + s) % n))),
    )
}

pub fn hypercube(dim: u32) -> Graph {
    let n = 1usize << dim;
    from_pairs(
        n,
        (0..n).flat_map(|i| (0..dim).map(move |k| (i, i ^ (1 << k)))),
    )
}

/// K_{2,2,2} with antipodal pairs (0,1), (2,3), (4,5).
pub fn octahedron() -> Graph {
    from_pairs(
        6,
        (0..6).flat_map(|i| {
            (i + 1..6)
                .filter(move |&j| j / 2 != i / 2)
                .map(move |j| (i, j))
        }),
    )
}

pub fn complete_bipartite(m: usize, n: usize) -> Graph {
    from_pairs(m + n, (0..m).flat_map(|i| (0..n).map(move |j| (i, m + j))))
}

/// Hub 0 joined to the cycle 1..=k.
pub fn wheel(k: usize) -> Graph {
    from_pairs(k + 1, (1..=k).flat_map(|i| [(0, i), (i, i % k + 1)]))
}

/// Two k-cycles 0..k and k..2k joined by the matching i ~ i + k.
pub fn prism(k: usize) -> Graph {
    from_pairs(
        2 * k,
        (0..k).flat_map(|i| [(i, (i + 1) % k), (k + i, k + (i + 1) % k), (i, i + k)]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        assert_eq!(complete(4).num_edges(), 6);
        assert_eq!(cycle(3).edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(path(3).num_edges(), 2);
        assert_eq!(circulant(7, &[1, 2]).num_edges(), 14);
        assert_eq!(hypercube(4).num_edges(), 32);
        assert_eq!(octahedron().num_edges(), 12);
        assert!(octahedron().is_four_regular());
        assert_eq!(complete_bipartite(4, 4).num_edges(), 16);
        assert_eq!(wheel(4).num_edges(), 8);
        assert_eq!(prism(3).num_edges(), 9);
        assert!(!octahedron().has_edge(2, 3));
    }
}
