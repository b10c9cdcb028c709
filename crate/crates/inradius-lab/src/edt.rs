//! Exact Euclidean distance transform on rectangular lattices.
//!
//! Squared distances to the nearest marked lattice point, computed with the
//! separable lower-envelope-of-parabolas algorithm, one pass per axis. Each
//! pass is exact, so the composition gives true d-dimensional squared
//! Euclidean distances (in index units). Lines are independent, so passes
//! parallelize without affecting the result.

use rayon::prelude::*;

/// Squared distance (index units) from every lattice point to the nearest
/// marked point. `dims` are per-axis counts, row-major with the last axis
/// fastest. Unreachable points (no marks at all) come back as `f64::INFINITY`.
pub fn squared_edt(marked: &[bool], dims: &[usize]) -> Vec<f64> {
    let total: usize = dims.iter().product();
    assert_eq!(marked.len(), total, "mask length must match dims");
    let mut field: Vec<f64> = marked
        .iter()
        .map(|&m| if m { 0.0 } else { f64::INFINITY })
        .collect();
    for axis in 0..dims.len() {
        field = axis_pass(&field, dims, axis);
    }
    field
}

fn axis_pass(field: &[f64], dims: &[usize], axis: usize) -> Vec<f64> {
    let n = dims[axis];
    let stride: usize = dims[axis + 1..].iter().product();
    let block = stride * n;
    let lines = field.len() / n;

    let transformed: Vec<(usize, Vec<f64>)> = (0..lines)
        .into_par_iter()
        .map(|line| {
            let outer = line / stride;
            let inner = line % stride;
            let base = outer * block + inner;
            let mut buf = Vec::with_capacity(n);
            for q in 0..n {
                buf.push(field[base + q * stride]);
            }
            let out = lower_envelope(&buf);
            (base, out)
        })
        .collect();

    let mut next = vec![f64::INFINITY; field.len()];
    for (base, line) in transformed {
        for (q, v) in line.into_iter().enumerate() {
            next[base + q * stride] = v;
        }
    }
    next
}

/// One-dimensional squared-distance transform under parabola lower envelopes:
/// out[q] = min_p ((q−p)² + f[p]).
fn lower_envelope(f: &[f64]) -> Vec<f64> {
    let n = f.len();
    let mut out = vec![f64::INFINITY; n];
    // vertices and boundaries of the envelope
    let mut v: Vec<usize> = Vec::with_capacity(n);
    let mut z: Vec<f64> = Vec::with_capacity(n + 1);
    for q in 0..n {
        if f[q].is_infinite() {
            continue;
        }
        if v.is_empty() {
            v.push(q);
            z.push(f64::NEG_INFINITY);
            z.push(f64::INFINITY);
            continue;
        }
        loop {
            let p = *v.last().unwrap();
            let s = ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64))
                / (2.0 * (q as f64 - p as f64));
            if s <= z[v.len() - 1] {
                v.pop();
                z.pop();
                if v.is_empty() {
                    v.push(q);
                    z.clear();
                    z.push(f64::NEG_INFINITY);
                    z.push(f64::INFINITY);
                    break;
                }
            } else {
                v.push(q);
                *z.last_mut().unwrap() = s;
                z.push(f64::INFINITY);
                break;
            }
        }
    }
    if v.is_empty() {
        return out;
    }
    let mut k = 0usize;
    for (q, slot) in out.iter_mut().enumerate() {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let p = v[k];
        *slot = (q as f64 - p as f64) * (q as f64 - p as f64) + f[p];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(marked: &[bool], dims: &[usize]) -> Vec<f64> {
        let total: usize = dims.iter().product();
        let coords = |mut lin: usize| -> Vec<i64> {
            let mut idx = vec![0i64; dims.len()];
            for j in (0..dims.len()).rev() {
                idx[j] = (lin % dims[j]) as i64;
                lin /= dims[j];
            }
            idx
        };
        let marks: Vec<Vec<i64>> = (0..total).filter(|&i| marked[i]).map(coords).collect();
        (0..total)
            .map(|i| {
                let c = coords(i);
                marks
                    .iter()
                    .map(|m| {
                        c.iter()
                            .zip(m)
                            .map(|(&a, &b)| ((a - b) * (a - b)) as f64)
                            .sum::<f64>()
                    })
                    .fold(f64::INFINITY, f64::min)
            })
            .collect()
    }

    #[test]
    fn one_dimensional_ramp() {
        let mut marked = vec![false; 8];
        marked[0] = true;
        let d = squared_edt(&marked, &[8]);
        for (q, &v) in d.iter().enumerate() {
            assert_eq!(v, (q * q) as f64);
        }
    }

    #[test]
    fn no_marks_gives_infinity() {
        let d = squared_edt(&[false; 12], &[3, 4]);
        assert!(d.iter().all(|v| v.is_infinite()));
    }

    #[test]
    fn all_marked_gives_zero() {
        let d = squared_edt(&[true; 12], &[3, 4]);
        assert!(d.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn matches_brute_force_2d() {
        // deterministic pseudo-random mask
        let dims = [17usize, 23];
        let total: usize = dims.iter().product();
        let marked: Vec<bool> = (0..total).map(|i| (i * 2654435761) % 17 == 3).collect();
        assert!(marked.iter().any(|&b| b));
        let fast = squared_edt(&marked, &dims);
        let slow = brute_force(&marked, &dims);
        assert_eq!(fast, slow);
    }

    #[test]
    fn matches_brute_force_3d() {
        let dims = [7usize, 9, 11];
        let total: usize = dims.iter().product();
        let marked: Vec<bool> = (0..total)
            .map(|i| (i as u64).wrapping_mul(6364136223846793005) % 29 == 1)
            .collect();
        assert!(marked.iter().any(|&b| b));
        let fast = squared_edt(&marked, &dims);
        let slow = brute_force(&marked, &dims);
        assert_eq!(fast, slow);
    }
}
