/// Result of the fine-grid search for `v(A, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridShatter {
    pub dimension: usize,
    /// Coordinates (zero-based) and level `h` (in units of `1/scale`) of a
    /// shattered set of maximal size.
    pub witness: Option<(Vec<usize>, Vec<i64>)>,
    /// Common denominator of `t`, the grid step and the levels.
    pub scale: i64,
    /// The step neither divides `t` nor is at most `t/4`.
    pub coarse: bool,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

/// Lower bound for `v(A, t)`: the largest `I` such that some `h` on the grid
/// `step·Z` (covering the coordinate range) satisfies, for every partition
/// `I = I⁻ ∪ I⁺`, some `x ∈ A` with `x(i) ≤ h(i)` on `I⁻` and
/// `x(i) ≥ h(i) + t` on `I⁺`. `t = t_num/t_den`, `step = s_num/s_den`.
pub fn grid_shatter_search(a: &[Vec<i64>], t: (i64, i64), step: (i64, i64)) -> GridShatter {
    assert!(t.0 > 0 && t.1 > 0 && step.0 > 0 && step.1 > 0, "t and step must be positive");
    let scale = t.1 * step.1 / gcd(t.1, step.1);
    let tt = t.0 * (scale / t.1);
    let ss = step.0 * (scale / step.1);
    let coarse = !(tt % ss == 0 || 4 * ss <= tt);
    let mut best = GridShatter { dimension: 0, witness: None, scale, coarse };
    let Some(first) = a.first() else {
        return best;
    };
    let n = first.len();
    let pts: Vec<Vec<i64>> = a.iter().map(|p| p.iter().map(|v| v * scale).collect()).collect();
    for mask in 1u64..(1u64 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| (mask >> i) & 1 == 1).collect();
        if idx.len() <= best.dimension {
            continue;
        }
        // candidate levels per coordinate: multiples of the step in [min − t, max]
        let levels: Vec<Vec<i64>> = idx
            .iter()
            .map(|&i| {
                let lo = pts.iter().map(|p| p[i]).min().unwrap() - tt;
                let hi = pts.iter().map(|p| p[i]).max().unwrap();
                let start = lo.div_euclid(ss) * ss;
                (0..).map(|j| start + j * ss).take_while(|&v| v <= hi).collect()
            })
            .collect();
        let mut choice = vec![0usize; idx.len()];
        'outer: loop {
            let h: Vec<i64> = choice.iter().zip(&levels).map(|(&c, l)| l[c]).collect();
            let mut all = true;
            for part in 0..(1u64 << idx.len()) {
                let mut hit = false;
                for p in &pts {
                    let mut ok = true;
                    for (j, &i) in idx.iter().enumerate() {
                        if (part >> j) & 1 == 1 {
                            if p[i] < h[j] + tt {
                                ok = false;
                            }
                        } else if p[i] > h[j] {
                            ok = false;
                        }
                    }
                    if ok {
                        hit = true;
                        break;
                    }
                }
                if !hit {
                    all = false;
                    break;
                }
            }
            if all {
                best.dimension = idx.len();
                best.witness = Some((idx.clone(), h));
                break 'outer;
            }
            let mut j = 0;
            loop {
                if j == choice.len() {
                    break 'outer;
                }
                choice[j] += 1;
                if choice[j] < levels[j].len() {
                    break;
                }
                choice[j] = 0;
                j += 1;
            }
        }
    }
    best
}
