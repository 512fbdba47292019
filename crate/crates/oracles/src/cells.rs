use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::Q;

/// Facets `a·y ≤ b` of the hull of integer points `y = D·x`, found by
/// testing the hyperplane through every `d`-subset of points.
#[derive(Clone, Debug)]
pub struct BruteHull {
    pub dim: usize,
    /// Common denominator `D` the points were scaled by.
    pub denominator: i128,
    pub facets: Vec<(Vec<i128>, i128)>,
    pub full_dimensional: bool,
}

impl BruteHull {
    /// Exact membership of a rational point.
    pub fn contains(&self, x: &[Q]) -> bool {
        if !self.full_dimensional {
            return false;
        }
        self.facets.iter().all(|(a, b)| {
            let lhs: Q = a.iter().zip(x).map(|(ai, xi)| xi * Q::from_integer(BigInt::from(*ai * self.denominator))).sum();
            lhs <= Q::from_integer(BigInt::from(*b))
        })
    }

    /// Membership of an integer point.
    pub fn contains_integer(&self, x: &[i64]) -> bool {
        self.full_dimensional
            && self.facets.iter().all(|(a, b)| {
                let lhs: i128 = a.iter().zip(x).map(|(ai, xi)| ai * self.denominator * *xi as i128).sum();
                lhs <= *b
            })
    }

    pub fn contains_f64(&self, x: &[f64]) -> bool {
        self.full_dimensional
            && self.facets.iter().all(|(a, b)| {
                let lhs: f64 = a.iter().zip(x).map(|(ai, xi)| *ai as f64 * self.denominator as f64 * xi).sum();
                lhs <= *b as f64 + 1e-9 * (1.0 + (*b as f64).abs())
            })
    }
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        _ => {
            let mut total = 0i128;
            for (j, &v) in m[0].iter().enumerate() {
                if v == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| *x).collect()).collect();
                let term = v.checked_mul(det(&minor)).expect("determinant overflow");
                total = if j % 2 == 0 { total + term } else { total - term };
            }
            total
        }
    }
}

fn affine_rank(points: &[Vec<i128>]) -> usize {
    let d = points[0].len();
    let mut rows: Vec<Vec<Q>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| Q::from_integer(BigInt::from(a - b))).collect())
        .collect();
    let mut rank = 0;
    for col in 0..d {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &rows[rank][col];
                let pivot_row = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd_vec(v: &[i128], b: i128) -> i128 {
    v.iter().fold(b.abs(), |g, &x| g.gcd(&x.abs()))
}

/// Hull of rational points via brute force over point subsets.
pub fn hull_facets(points: &[Vec<Q>]) -> BruteHull {
    let dim = points.first().map_or(0, |p| p.len());
    let denominator = points
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
        .to_i128()
        .expect("denominator fits i128");
    let mut pts: Vec<Vec<i128>> = points
        .iter()
        .map(|p| p.iter().map(|q| (q * Q::from_integer(BigInt::from(denominator))).to_integer().to_i128().expect("fits")).collect())
        .collect();
    pts.sort();
    pts.dedup();
    let empty = BruteHull { dim, denominator, facets: Vec::new(), full_dimensional: false };
    if pts.is_empty() || pts.len() <= dim || affine_rank(&pts) < dim {
        return empty;
    }
    let mut facets: Vec<(Vec<i128>, i128)> = Vec::new();
    let m = pts.len();
    let mut subset: Vec<usize> = (0..dim).collect();
    loop {
        let p0 = &pts[subset[0]];
        let diffs: Vec<Vec<i128>> = subset[1..].iter().map(|&j| pts[j].iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
        // cofactor normal, orthogonal to every difference row
        let normal: Vec<i128> = (0..dim)
            .map(|c| {
                let minor: Vec<Vec<i128>> =
                    diffs.iter().map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| *x).collect()).collect();
                let s = det(&minor);
                if c % 2 == 0 { s } else { -s }
            })
            .collect();
        if normal.iter().any(|&x| x != 0) {
            let b: i128 = normal.iter().zip(p0).map(|(a, x)| a * x).sum();
            let vals: Vec<i128> = pts.iter().map(|p| normal.iter().zip(p).map(|(a, x)| a * x).sum::<i128>() - b).collect();
            let sign = if vals.iter().all(|&v| v <= 0) {
                Some(1)
            } else if vals.iter().all(|&v| v >= 0) {
                Some(-1)
            } else {
                None
            };
            if let Some(s) = sign {
                let a: Vec<i128> = normal.iter().map(|x| s * x).collect();
                let off = s * b;
                let g = gcd_vec(&a, off);
                let f = (a.iter().map(|x| x / g).collect::<Vec<_>>(), off / g);
                if !facets.contains(&f) {
                    facets.push(f);
                }
            }
        }
        // next d-subset in lexicographic order
        let mut i = dim;
        loop {
            if i == 0 {
                return BruteHull { dim, denominator, facets, full_dimensional: true };
            }
            i -= 1;
            if subset[i] < m - dim + i {
                subset[i] += 1;
                for j in i + 1..dim {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn ceil_div(a: &Q) -> i64 {
    a.ceil().to_integer().to_i64().expect("fits")
}

fn floor_div(a: &Q) -> i64 {
    a.floor().to_integer().to_i64().expect("fits")
}

/// Number of cells `∏_{i∈I} [a_i, a_i+1]` (integer `a`) whose corners all lie
/// in the projection of `conv(vertices)` onto the coordinates `idx`.
pub fn exhaustive_cell_count(vertices: &[Vec<Q>], idx: &[usize]) -> u64 {
    if vertices.is_empty() || idx.is_empty() {
        return 0;
    }
    let projected: Vec<Vec<Q>> = vertices.iter().map(|v| idx.iter().map(|&i| v[i].clone()).collect()).collect();
    let hull = hull_facets(&projected);
    if !hull.full_dimensional {
        return 0;
    }
    let d = idx.len();
    let lo: Vec<i64> = (0..d).map(|j| ceil_div(projected.iter().map(|p| &p[j]).min().unwrap())).collect();
    let hi: Vec<i64> = (0..d).map(|j| floor_div(projected.iter().map(|p| &p[j]).max().unwrap()) - 1).collect();
    if lo.iter().zip(&hi).any(|(a, b)| a > b) {
        return 0;
    }
    let mut count = 0u64;
    let mut base = lo.clone();
    let mut corner = vec![0i64; d];
    loop {
        let mut inside = true;
        for m in 0..(1u64 << d) {
            for j in 0..d {
                corner[j] = base[j] + ((m >> j) & 1) as i64;
            }
            if !hull.contains_integer(&corner) {
                inside = false;
                break;
            }
        }
        if inside {
            count += 1;
        }
        let mut j = 0;
        loop {
            if j == d {
                return count;
            }
            base[j] += 1;
            if base[j] <= hi[j] {
                break;
            }
            base[j] = lo[j];
            j += 1;
        }
    }
}

/// Per-coordinate bounding box of rational points, as floats.
pub fn bounding_box_f64(points: &[Vec<Q>]) -> (Vec<f64>, Vec<f64>) {
    let d = points[0].len();
    let f = |q: &Q| q.to_f64().unwrap_or(f64::NAN);
    let lo = (0..d).map(|j| points.iter().map(|p| f(&p[j])).fold(f64::INFINITY, f64::min)).collect();
    let hi = (0..d).map(|j| points.iter().map(|p| f(&p[j])).fold(f64::NEG_INFINITY, f64::max)).collect();
    (lo, hi)
}


#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    fn boxed(hi: &[Q]) -> Vec<Vec<Q>> {
        let n = hi.len();
        (0..1u64 << n).map(|m| (0..n).map(|i| if (m >> i) & 1 == 1 { hi[i].clone() } else { q(0, 1) }).collect()).collect()
    }

    #[test]
    fn square_and_pancake() {
        assert_eq!(exhaustive_cell_count(&boxed(&[q(3, 1), q(3, 1)]), &[0, 1]), 9);
        let pancake = boxed(&[q(72, 1), q(9, 10)]);
        assert_eq!(exhaustive_cell_count(&pancake, &[0]), 72);
        assert_eq!(exhaustive_cell_count(&pancake, &[1]), 0);
        assert_eq!(exhaustive_cell_count(&pancake, &[0, 1]), 0);
    }

    #[test]
    fn triangle_facets() {
        let tri = vec![vec![q(0, 1), q(0, 1)], vec![q(4, 1), q(0, 1)], vec![q(0, 1), q(4, 1)], vec![q(1, 1), q(1, 1)]];
        let h = hull_facets(&tri);
        assert_eq!(h.facets.len(), 3);
        assert!(h.contains(&[q(2, 1), q(2, 1)]));
        assert!(!h.contains(&[q(5, 2), q(2, 1)]));
        assert_eq!(exhaustive_cell_count(&tri, &[0, 1]), 6);
        let flat = vec![vec![q(0, 1), q(0, 1)], vec![q(4, 1), q(4, 1)]];
        assert!(!hull_facets(&flat).full_dimensional);
    }
}
