//! Cells and boxes of finite integer sets by exhaustive enumeration.

use std::collections::BTreeSet;

use crate::cconv::oracle_cconv;

fn restrict(a: &[Vec<i64>], idx: &[usize]) -> Vec<Vec<i64>> {
    let set: BTreeSet<Vec<i64>> = a.iter().map(|p| idx.iter().map(|&i| p[i]).collect()).collect();
    set.into_iter().collect()
}

/// Calls `f` on every integer point of `∏[lo_i, hi_i]`.
fn for_each_point(lo: &[i64], hi: &[i64], mut f: impl FnMut(&[i64])) {
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return;
    }
    let mut x = lo.to_vec();
    loop {
        f(&x);
        let mut i = 0;
        loop {
            if i == x.len() {
                return;
            }
            if x[i] < hi[i] {
                x[i] += 1;
                break;
            }
            x[i] = lo[i];
            i += 1;
        }
    }
}

/// Integer cells `∏{b_i, b_i+1}` all of whose corners lie in the coordinate
/// convex hull of the projection of `a` onto `idx` (zero-based).
pub fn oracle_cconv_cells(a: &[Vec<i64>], idx: &[usize]) -> u64 {
    let pa = restrict(a, idx);
    if pa.is_empty() || idx.is_empty() {
        return 0;
    }
    let d = idx.len();
    let lo: Vec<i64> = (0..d).map(|i| pa.iter().map(|p| p[i]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..d).map(|i| pa.iter().map(|p| p[i]).max().unwrap() - 1).collect();
    let mut count = 0;
    for_each_point(&lo, &hi, |base| {
        let all = (0..1u64 << d).all(|m| {
            let corner: Vec<i64> = (0..d).map(|i| base[i] + ((m >> i) & 1) as i64).collect();
            oracle_cconv(&pa, &corner)
        });
        if all {
            count += 1;
        }
    });
    count
}

/// Integer boxes `∏{l_i, h_i}`, `l_i < h_i`, contained in the projection of
/// `a` onto `idx` (zero-based).
pub fn oracle_box_count(a: &[Vec<i64>], idx: &[usize]) -> u64 {
    let pa = restrict(a, idx);
    if pa.is_empty() || idx.is_empty() {
        return 0;
    }
    let set: BTreeSet<Vec<i64>> = pa.iter().cloned().collect();
    let d = idx.len();
    let values: Vec<Vec<i64>> = (0..d)
        .map(|i| pa.iter().map(|p| p[i]).collect::<BTreeSet<_>>().into_iter().collect())
        .collect();
    let pairs: Vec<Vec<(i64, i64)>> = values
        .iter()
        .map(|v| (0..v.len()).flat_map(|x| (x + 1..v.len()).map(move |y| (v[x], v[y]))).collect())
        .collect();
    if pairs.iter().any(|p| p.is_empty()) {
        return 0;
    }
    let mut choice = vec![0usize; d];
    let mut count = 0;
    loop {
        let all = (0..1u64 << d).all(|m| {
            let corner: Vec<i64> = (0..d)
                .map(|i| {
                    let (l, h) = pairs[i][choice[i]];
                    if (m >> i) & 1 == 1 { h } else { l }
                })
                .collect();
            set.contains(&corner)
        });
        if all {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == d {
                return count;
            }
            choice[i] += 1;
            if choice[i] < pairs[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Largest `|I|` such that the projection onto `I` contains an integer box.
pub fn oracle_natarajan(a: &[Vec<i64>], dim: usize) -> usize {
    let mut best = 0;
    for mask in 1u64..(1 << dim) {
        let idx: Vec<usize> = (0..dim).filter(|&i| (mask >> i) & 1 == 1).collect();
        if idx.len() > best && oracle_box_count(a, &idx) > 0 {
            best = idx.len();
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize, m: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for_each_point(&vec![0; n], &vec![m; n], |x| out.push(x.to_vec()));
        out
    }

    #[test]
    fn full_grid_counts() {
        for m in 1..=3 {
            for n in 1..=3usize {
                let a = grid(n, m);
                let idx: Vec<usize> = (0..n).collect();
                assert_eq!(oracle_cconv_cells(&a, &idx), (m as u64).pow(n as u32));
                assert_eq!(oracle_box_count(&a, &idx), ((m * (m + 1) / 2) as u64).pow(n as u32));
                assert_eq!(oracle_natarajan(&a, n), n);
            }
        }
    }

    #[test]
    fn diagonal_has_no_two_dimensional_box() {
        let a = vec![vec![0, 0], vec![1, 1], vec![2, 2]];
        assert_eq!(oracle_box_count(&a, &[0, 1]), 0);
        assert_eq!(oracle_box_count(&a, &[0]), 3);
        assert_eq!(oracle_cconv_cells(&a, &[0, 1]), 0);
        assert_eq!(oracle_natarajan(&a, 2), 1);
    }
}
