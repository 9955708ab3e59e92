//! Brute-force reference computations shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn close(a: f64, b: f64, rtol: f64) -> bool {
    (a - b).abs() <= rtol * a.abs().max(b.abs()).max(1e-300)
}

pub fn dist(x: &[f64], d: usize, i: usize, j: usize, alpha: f64) -> f64 {
    let sq: f64 = (0..d).map(|c| (x[i * d + c] - x[j * d + c]).powi(2)).sum();
    sq.sqrt().powf(alpha)
}

/// `E a(X,X′) b(X,X′) + E a(X,X′) E b(X,X′) − 2 E a(X,X′) b(X,X″)` over all
/// index triples.
pub fn triple_loop(n: usize, a: impl Fn(usize, usize) -> f64, b: impl Fn(usize, usize) -> f64) -> f64 {
    let nf = n as f64;
    let (mut s1, mut sa, mut sb, mut s3) = (0.0, 0.0, 0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            s1 += a(i, j) * b(i, j);
            sa += a(i, j);
            sb += b(i, j);
            for l in 0..n {
                s3 += a(i, j) * b(i, l);
            }
        }
    }
    s1 / (nf * nf) + (sa / (nf * nf)) * (sb / (nf * nf)) - 2.0 * s3 / (nf * nf * nf)
}

/// `∫(G − H)²` for two right-continuous step functions jumping only at
/// `points`.
pub fn step_l2(points: &[f64], cdf_a: impl Fn(f64) -> f64, cdf_b: impl Fn(f64) -> f64) -> f64 {
    let mut xs = points.to_vec();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs.windows(2)
        .map(|w| {
            let diff = cdf_a(w[0]) - cdf_b(w[0]);
            diff * diff * (w[1] - w[0])
        })
        .sum()
}

pub fn ecdf(sample: &[f64]) -> impl Fn(f64) -> f64 + '_ {
    move |t| sample.iter().filter(|&&v| v <= t).count() as f64 / sample.len() as f64
}

/// Row-major `d × d` orthonormal matrix by Gram–Schmidt on uniform entries.
pub fn random_orthonormal(d: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let mut m: Vec<f64> = (0..d * d).map(|_| rng.random_range(-1.0..1.0)).collect();
        let mut ok = true;
        for r in 0..d {
            for prev in 0..r {
                let dot: f64 = (0..d).map(|c| m[r * d + c] * m[prev * d + c]).sum();
                for c in 0..d {
                    m[r * d + c] -= dot * m[prev * d + c];
                }
            }
            let norm: f64 = (0..d).map(|c| m[r * d + c].powi(2)).sum::<f64>().sqrt();
            if norm < 1e-3 {
                ok = false;
                break;
            }
            for c in 0..d {
                m[r * d + c] /= norm;
            }
        }
        if ok {
            return m;
        }
    }
}
