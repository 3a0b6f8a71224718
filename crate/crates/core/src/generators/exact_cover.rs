use crate::error::GeneratorError;

/// Exact cover by `t`-sets: a universe `0..universe_size` and a list of
/// `t`-element subsets (repeats allowed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XCInstance {
    universe_size: usize,
    set_size: usize,
    sets: Vec<Vec<usize>>,
}

impl XCInstance {
    /// Sets are stored sorted. Requires `t >= 3` and `t | universe_size`.
    pub fn new(universe_size: usize, set_size: usize, sets: Vec<Vec<usize>>) -> Result<Self, GeneratorError> {
        let bad = |m: String| Err(GeneratorError::InvalidExactCover(m));
        if set_size < 3 {
            return bad(format!("set size {set_size} is below 3"));
        }
        if !universe_size.is_multiple_of(set_size) {
            return bad(format!("universe size {universe_size} is not a multiple of {set_size}"));
        }
        let mut sorted = Vec::with_capacity(sets.len());
        for (i, mut set) in sets.into_iter().enumerate() {
            set.sort_unstable();
            set.dedup();
            if set.len() != set_size {
                return bad(format!("set {i} does not have {set_size} distinct elements"));
            }
            if set.iter().any(|&u| u >= universe_size) {
                return bad(format!("set {i} has an element outside the universe"));
            }
            sorted.push(set);
        }
        Ok(XCInstance {
            universe_size,
            set_size,
            sets: sorted,
        })
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn set_size(&self) -> usize {
        self.set_size
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// Number of sets in any exact cover.
    pub fn cover_size(&self) -> usize {
        self.universe_size / self.set_size
    }

    /// Indices of an exact cover, trying every subcollection of
    /// [`cover_size`](Self::cover_size) sets.
    pub fn exact_cover(&self) -> Option<Vec<usize>> {
        fn rec(xc: &XCInstance, start: usize, used: &mut Vec<bool>, chosen: &mut Vec<usize>) -> bool {
            if chosen.len() == xc.cover_size() {
                return used.iter().all(|&u| u);
            }
            for i in start..xc.sets.len() {
                let set = &xc.sets[i];
                if set.iter().any(|&u| used[u]) {
                    continue;
                }
                set.iter().for_each(|&u| used[u] = true);
                chosen.push(i);
                if rec(xc, i + 1, used, chosen) {
                    return true;
                }
                chosen.pop();
                set.iter().for_each(|&u| used[u] = false);
            }
            false
        }
        let mut chosen = Vec::new();
        rec(self, 0, &mut vec![false; self.universe_size], &mut chosen).then_some(chosen)
    }
}
