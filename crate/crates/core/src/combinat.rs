//! Small enumeration helpers.

/// Rearranges `v` into the next lexicographic permutation; returns
/// `false` (leaving `v` sorted ascending) after the last one. Repeated
/// entries are handled, so iterating from sorted order visits each
/// distinct rearrangement once.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All distinct rearrangements of `items`, in lexicographic order.
pub fn distinct_permutations<T: Ord + Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut cur = items.to_vec();
    cur.sort();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

/// Subsets of `items` with at least `min` elements, by size then
/// lexicographically (positions follow the order of `items`).
pub fn subsets<T: Clone>(items: &[T], min: usize) -> Vec<Vec<T>> {
    let n = items.len();
    let mut out = Vec::new();
    for size in min..=n {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(idx.iter().map(|&k| items[k].clone()).collect());
            // advance the combination
            let mut p = size;
            while p > 0 && idx[p - 1] == n - size + p - 1 {
                p -= 1;
            }
            if p == 0 {
                break;
            }
            idx[p - 1] += 1;
            for k in p..size {
                idx[k] = idx[k - 1] + 1;
            }
        }
    }
    out
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `n! / ∏ m_v!` for the multiplicities `m_v` of `items`.
pub fn multinomial<T: Ord + Clone>(items: &[T]) -> u64 {
    let mut sorted = items.to_vec();
    sorted.sort();
    let mut denom = 1u64;
    let mut run = 0usize;
    for k in 0..sorted.len() {
        run = if k > 0 && sorted[k] == sorted[k - 1] { run + 1 } else { 1 };
        denom *= run as u64;
    }
    factorial(items.len()) / denom
}
