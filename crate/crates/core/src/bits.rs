//! Small bitmask helpers shared by the graph and formula code.

/// Iterates all `k`-element subsets of `{0, .., n-1}` as bitmasks in
/// increasing numeric order (Gosper's hack).
pub fn subsets(n: usize, k: usize) -> impl Iterator<Item = u32> {
    let limit: u64 = 1u64 << n;
    let start: u64 = if k > n {
        limit
    } else if k == 0 {
        0
    } else {
        (1u64 << k) - 1
    };
    let mut next = Some(start);
    let mut done_empty = false;
    std::iter::from_fn(move || {
        if k == 0 {
            if done_empty {
                return None;
            }
            done_empty = true;
            return Some(0);
        }
        let cur = next?;
        if cur >= limit {
            next = None;
            return None;
        }
        let c = cur & cur.wrapping_neg();
        let r = cur + c;
        next = Some((((r ^ cur) >> 2) / c) | r);
        Some(cur as u32)
    })
}

/// Iterates the set bits of `mask`, lowest first.
pub fn ones(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// Applies a vertex permutation (`perm[old] = new`) to a bitmask.
#[inline]
pub fn permute_mask(mask: u32, perm: &[usize]) -> u32 {
    let mut out = 0u32;
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        out |= 1 << perm[v];
    }
    out
}
