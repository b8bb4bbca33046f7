//! Fixed-size subsets of `{0, …, n-1}` in colexicographic order.
//!
//! Colex order compares subsets by their largest element first, so the
//! subsets sharing a given maximum form one contiguous run. Parallel
//! searches split along that maximum and still recover the globally first
//! hit by taking the smallest maximum that produced one.

/// Iterator over the `w`-subsets of `{0, …, n-1}` in colex order, each
/// yielded as a sorted slice.
#[derive(Clone, Debug)]
pub struct Colex {
    n: usize,
    current: Vec<usize>,
    done: bool,
    started: bool,
}

impl Colex {
    #[must_use]
    pub fn new(n: usize, w: usize) -> Self {
        Self {
            n,
            current: (0..w).collect(),
            done: w > n,
            started: false,
        }
    }

    /// Advances to the next subset; returns `None` when exhausted.
    pub fn next_subset(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.current);
        }
        let w = self.current.len();
        let mut i = 0;
        loop {
            if i == w {
                self.done = true;
                return None;
            }
            let limit = if i + 1 < w {
                self.current[i + 1]
            } else {
                self.n
            };
            if self.current[i] + 1 < limit {
                self.current[i] += 1;
                for (j, slot) in self.current[..i].iter_mut().enumerate() {
                    *slot = j;
                }
                return Some(&self.current);
            }
            i += 1;
        }
    }
}

/// Calls `visit` on every `w`-subset whose largest element is `top`, in colex
/// order, stopping early when `visit` returns `true`. Returns whether it
/// stopped early.
pub fn for_each_with_max(top: usize, w: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    if w == 0 {
        return false;
    }
    let mut buf = vec![0; w];
    buf[w - 1] = top;
    let mut inner = Colex::new(top, w - 1);
    while let Some(sub) = inner.next_subset() {
        buf[..w - 1].copy_from_slice(sub);
        if visit(&buf) {
            return true;
        }
    }
    false
}

/// Binomial coefficient, saturating at `u128::MAX`.
#[must_use]
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}
