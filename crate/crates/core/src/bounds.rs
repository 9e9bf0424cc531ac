//! Palette bounds, computed with integers only.

use num_bigint::BigUint;

use crate::generators::pair_capacity;

/// Smallest `r >= 0` with `(num/den)^r >= x`, for `num > den >= 1`.
pub fn ceil_log_ratio(num: u64, den: u64, x: u64) -> u32 {
    assert!(num > den && den >= 1, "base must exceed 1");
    let (mut a, mut b) = (BigUint::from(1u32), BigUint::from(x));
    let mut r = 0;
    while a < b {
        a *= num;
        b *= den;
        r += 1;
    }
    r
}

/// `⌈log2 x⌉` for `x >= 1`.
pub fn ceil_log2(x: u64) -> u32 {
    ceil_log_ratio(2, 1, x)
}

/// Smallest `m` with `m² >= x`.
pub fn ceil_sqrt(x: u64) -> u64 {
    let r = x.isqrt();
    if r * r == x {
        r
    } else {
        r + 1
    }
}

/// `min(ℓ+1, ⌈2√(6k)⌉, n)`.
pub fn nm_trees_bound(k: usize, l: usize, n: usize) -> usize {
    (l + 1).min(ceil_sqrt(24 * k as u64) as usize).min(n)
}

/// `min(ℓ+1, ⌊(1+√(1+8k))/2⌋, n)`.
pub fn star_pairs_nm(k: usize, l: usize, n: usize) -> usize {
    (l + 1).min(pair_capacity(k)).min(n)
}

/// `ℓ' = min(ℓ, ⌊√(6k)⌋)`.
pub fn trimmed_leaves(k: usize, l: usize) -> usize {
    l.min((6 * k as u64).isqrt() as usize)
}

/// `⌈log_{(ℓ'+1)/ℓ'}(6k)⌉`.
pub fn cf_trees_round_bound(k: usize, l: usize) -> u32 {
    let lp = trimmed_leaves(k, l).max(1) as u64;
    ceil_log_ratio(lp + 1, lp, 6 * k as u64)
}

/// `singletons + (ℓ'+1)·rounds + 4`.
pub fn cf_trees_palette_bound(k: usize, l: usize, singletons: usize, rounds: usize) -> usize {
    singletons + (trimmed_leaves(k, l) + 1) * rounds + 4
}

/// `⌈log2 t⌉ + 3`.
pub fn cf_balls_tree_bound(t: usize) -> usize {
    ceil_log2(t.max(1) as u64) as usize + 3
}

/// `⌈log_{4/3} t⌉`.
pub fn planar_round_bound(t: usize) -> u32 {
    ceil_log_ratio(4, 3, t.max(1) as u64)
}

/// `⌈log_{4/3} t⌉ + 3`.
pub fn cf_balls_planar_bound(t: usize) -> usize {
    planar_round_bound(t) as usize + 3
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logs_match_floats() {
        for x in 1..2000u64 {
            assert_eq!(ceil_log2(x), (x as f64).log2().ceil() as u32, "{x}");
            assert_eq!(ceil_sqrt(x), (x as f64).sqrt().ceil() as u64, "{x}");
        }
        assert_eq!(planar_round_bound(1), 0);
        assert_eq!(planar_round_bound(2), 3);
        assert_eq!(cf_trees_round_bound(3, 1), 5);
    }

    #[test]
    fn star_pair_values() {
        assert_eq!(star_pairs_nm(6, 3, 4), 4);
        assert_eq!(star_pairs_nm(10, 4, 5), 5);
        assert_eq!(star_pairs_nm(3, 2, 3), 3);
        assert_eq!(nm_trees_bound(6, 3, 4), 4);
    }
}
