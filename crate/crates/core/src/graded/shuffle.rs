//! Shuffles and permutation signs.

use itertools::Itertools;

/// An `(i, j)`-shuffle, stored by the 0-based positions of its two blocks.
///
/// `first` lists `σ(1) < … < σ(i)` and `second` lists `σ(i+1) < … < σ(i+j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shuffle {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    /// Signature of σ, `±1`.
    pub sign: i64,
}

/// All `(i, j)`-shuffles in lexicographic order of the first block.
pub fn shuffles(i: usize, j: usize) -> Vec<Shuffle> {
    let n = i + j;
    (0..n)
        .combinations(i)
        .map(|first| {
            let second: Vec<usize> = (0..n).filter(|x| !first.contains(x)).collect();
            // Each element of the first block jumps over the second-block
            // positions below it.
            let inversions: usize = first.iter().enumerate().map(|(a, &p)| p - a).sum();
            Shuffle {
                first,
                second,
                sign: if inversions.is_multiple_of(2) { 1 } else { -1 },
            }
        })
        .collect()
}

/// Signature of a permutation given as the list of images.
pub fn permutation_sign(perm: &[usize]) -> i64 {
    koszul_sign(perm, &vec![1; perm.len()])
}

/// Koszul sign of placing elements `perm[0], perm[1], …` in that order,
/// starting from the natural order, when element `a` has degree `degrees[a]`.
/// Every inversion of two odd elements contributes a factor `-1`.
pub fn koszul_sign(perm: &[usize], degrees: &[usize]) -> i64 {
    let mut odd_swaps = 0usize;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] && degrees[perm[a]] % 2 == 1 && degrees[perm[b]] % 2 == 1 {
                odd_swaps += 1;
            }
        }
    }
    if odd_swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    (0..n).permutations(n).collect()
}
