//! Dense indexing of unordered pairs `{u, v}`, `u < v`, over `0..n`.
//!
//! Pairs are laid out row-major over the strict upper triangle, so iterating
//! indices in order visits pairs in lexicographic order.

#[inline]
pub fn num_pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Index of the unordered pair `{u, v}`. Panics in debug builds if `u == v`.
#[inline]
pub fn index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u != v && u < n && v < n);
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

/// All pairs in lexicographic order.
pub fn iter(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_matches_enumeration_order() {
        for n in 0..9 {
            let listed: Vec<_> = iter(n).collect();
            assert_eq!(listed.len(), num_pairs(n));
            for (k, &(u, v)) in listed.iter().enumerate() {
                assert_eq!(index(n, u, v), k);
                assert_eq!(index(n, v, u), k);
            }
        }
    }
}
