//! Thin switch between rayon and plain iteration.
//!
//! `threads == 1` always runs on the calling thread. `threads == 0` uses the
//! global rayon pool; any other value builds a pool of that size. Without the
//! `parallel` feature every call is sequential.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub(crate) fn for_each<T, F>(items: &[T], threads: usize, f: F)
where
    T: Sync,
    F: Fn(&T) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if threads != 1 {
        return install(threads, || items.par_iter().for_each(&f));
    }
    let _ = threads;
    items.iter().for_each(f)
}

/// Order-preserving map.
pub(crate) fn map<T, R, F>(items: &[T], threads: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if threads != 1 {
        return install(threads, || items.par_iter().map(&f).collect());
    }
    let _ = threads;
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
fn install<R: Send>(threads: usize, op: impl FnOnce() -> R + Send) -> R {
    if threads == 0 {
        return op();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(op),
        Err(_) => op(),
    }
}

/// All `k`-subsets of `0..n` as bitmasks, in ascending numeric order.
pub(crate) fn subsets_of_size(n: usize, k: usize) -> Vec<u32> {
    assert!(n <= 32, "bitmask enumeration supports at most 32 elements");
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let limit: u64 = 1 << n;
    let mut out = Vec::new();
    // Gosper's hack
    let mut x: u64 = (1 << k) - 1;
    while x < limit {
        out.push(x as u32);
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

pub(crate) fn mask_to_set(mask: u32) -> std::collections::BTreeSet<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_counts() {
        assert_eq!(subsets_of_size(5, 2).len(), 10);
        assert_eq!(subsets_of_size(4, 0), vec![0]);
        assert!(subsets_of_size(3, 4).is_empty());
        let all = subsets_of_size(4, 2);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|m| m.count_ones() == 2));
    }

    #[test]
    fn map_keeps_order() {
        let items: Vec<u32> = (0..100).collect();
        for threads in [0, 1, 3] {
            assert_eq!(map(&items, threads, |x| x * 2)[99], 198);
        }
    }
}
