/// Literal transcription: for every choice of signs `θ ∈ {−1,1}^n` some
/// `y ∈ A` has `y(i) ≥ x(i)` where `θ(i) = +1` and `y(i) ≤ x(i)` where
/// `θ(i) = −1`.
pub fn oracle_cconv(a: &[Vec<i64>], x: &[i64]) -> bool {
    let n = x.len();
    for theta in 0..(1u64 << n) {
        let mut found = false;
        for y in a {
            let mut ok = true;
            for i in 0..n {
                let plus = (theta >> i) & 1 == 1;
                if plus && y[i] < x[i] {
                    ok = false;
                }
                if !plus && y[i] > x[i] {
                    ok = false;
                }
            }
            if ok {
                found = true;
            }
        }
        if !found {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(!oracle_cconv(&[vec![0, 1], vec![1, 0]], &[0, 0]));
        // θ = (+1, −1) needs y(1) ≥ 1 and y(2) ≤ 1: neither point qualifies
        assert!(!oracle_cconv(&[vec![0, 0], vec![2, 2]], &[1, 1]));
        assert!(oracle_cconv(&[vec![0, 0], vec![2, 2], vec![0, 2], vec![2, 0]], &[1, 1]));
        assert!(oracle_cconv(&[vec![3, 1], vec![0, 7]], &[0, 7]));
        assert!(!oracle_cconv(&[vec![0, 0], vec![2, 2]], &[9, -9]));
    }
}
