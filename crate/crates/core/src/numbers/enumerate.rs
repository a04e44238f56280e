//! Weak compositions in descending lexicographic order, with ranking.

/// `binom(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = match acc.checked_mul(u128::from(n - i)) {
            Some(x) => x / u128::from(i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Number of configurations of `m` pebbles on `n` vertices.
pub fn config_count(n: usize, m: u64) -> u128 {
    if n == 0 {
        return u128::from(m == 0);
    }
    binomial(m + n as u64 - 1, n as u64 - 1)
}

/// Steps `c` to the next weak composition with the same total; false after
/// the last one `(0, .., 0, m)`.
pub fn next_composition(c: &mut [u32]) -> bool {
    let n = c.len();
    if n < 2 {
        return false;
    }
    // Rightmost nonzero entry before the last position.
    let Some(i) = (0..n - 1).rev().find(|&i| c[i] > 0) else {
        return false;
    };
    let tail = c[n - 1];
    c[n - 1] = 0;
    c[i] -= 1;
    c[i + 1] = tail + 1;
    true
}

/// Iterator over all weak compositions of `m` into `n` parts, starting at
/// `(m, 0, .., 0)` and ending at `(0, .., 0, m)`.
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Vec<u32>,
    fresh: bool,
    done: bool,
}

impl Compositions {
    pub fn new(n: usize, m: u32) -> Self {
        let mut current = vec![0; n];
        if let Some(first) = current.first_mut() {
            *first = m;
        }
        Self {
            current,
            fresh: true,
            done: n == 0 && m > 0,
        }
    }
}

impl Iterator for Compositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        if self.fresh {
            self.fresh = false;
        } else if !next_composition(&mut self.current) {
            self.done = true;
            return None;
        }
        Some(self.current.clone())
    }
}

/// All configurations of `m` pebbles on `n` vertices in enumeration order.
pub fn enumerate_configs(n: usize, m: u32) -> Compositions {
    Compositions::new(n, m)
}

/// Position of `c` in the enumeration of its size.
pub fn rank(c: &[u32]) -> u128 {
    let n = c.len();
    let mut remaining: u64 = c.iter().map(|&x| u64::from(x)).sum();
    let mut idx = 0u128;
    for (i, &x) in c.iter().enumerate().take(n.saturating_sub(1)) {
        // Larger values at position i come first.
        for v in (u64::from(x) + 1)..=remaining {
            idx += config_count(n - i - 1, remaining - v);
        }
        remaining -= u64::from(x);
    }
    idx
}

/// Inverse of [`rank`]; `None` when `idx` is out of range.
pub fn unrank(n: usize, m: u32, mut idx: u128) -> Option<Vec<u32>> {
    if idx >= config_count(n, u64::from(m)) {
        return None;
    }
    let mut out = vec![0u32; n];
    let mut remaining = m;
    for i in 0..n {
        if i == n - 1 {
            out[i] = remaining;
            break;
        }
        let mut v = remaining;
        loop {
            let block = config_count(n - i - 1, u64::from(remaining - v));
            if idx < block {
                break;
            }
            idx -= block;
            v -= 1;
        }
        out[i] = v;
        remaining -= v;
    }
    Some(out)
}

/// Multisets of `k` vertices from `0..n`, as sorted vectors in
/// lexicographic order.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0usize; k];
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - 1) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[i];
        }
    }
}
