//! Discrete Fourier transform.
//!
//! Forward kernel `e^{−i2πmt/N}`, unnormalized; the inverse carries `1/N`.
//! Power-of-two lengths use an iterative radix-2 transform, other lengths the
//! direct `O(N²)` sum.

use std::f64::consts::PI;

use num_complex::Complex64;

pub fn is_power_of_two(n: usize) -> bool {
    n != 0 && n & (n - 1) == 0
}

/// In-place iterative radix-2 Cooley–Tukey transform. `data.len()` must be a
/// power of two. No normalization is applied in either direction.
pub fn radix2_in_place(data: &mut [Complex64], inverse: bool) {
    let n = data.len();
    assert!(is_power_of_two(n), "radix-2 FFT needs a power-of-two length, got {n}");
    if n == 1 {
        return;
    }

    // Bit-reversal permutation.
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            data.swap(i, j);
        }
    }

    let sign = if inverse { 1.0 } else { -1.0 };
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        // Twiddles computed directly rather than by repeated multiplication to
        // keep the error at O(ε log N).
        let twiddles: Vec<Complex64> = (0..half)
            .map(|k| Complex64::from_polar(1.0, sign * 2.0 * PI * k as f64 / len as f64))
            .collect();
        for chunk in data.chunks_exact_mut(len) {
            let (lo, hi) = chunk.split_at_mut(half);
            for ((a, b), w) in lo.iter_mut().zip(hi.iter_mut()).zip(&twiddles) {
                let t = *b * w;
                *b = *a - t;
                *a += t;
            }
        }
        len <<= 1;
    }
}

/// Direct evaluation of the definition; unnormalized in both directions.
pub fn dft_naive(input: &[Complex64], inverse: bool) -> Vec<Complex64> {
    let n = input.len();
    let sign = if inverse { 1.0 } else { -1.0 };
    (0..n)
        .map(|m| {
            input
                .iter()
                .enumerate()
                .map(|(t, &x)| {
                    // Reduce m*t mod n first so the angle stays small.
                    let k = (m * t) % n;
                    x * Complex64::from_polar(1.0, sign * 2.0 * PI * k as f64 / n as f64)
                })
                .sum()
        })
        .collect()
}

/// `X_m = Σ_t x_t e^{−i2πmt/N}`.
pub fn forward(input: &[Complex64]) -> Vec<Complex64> {
    if is_power_of_two(input.len()) {
        let mut data = input.to_vec();
        radix2_in_place(&mut data, false);
        data
    } else {
        dft_naive(input, false)
    }
}

/// `x_t = (1/N) Σ_m X_m e^{i2πmt/N}`.
pub fn inverse(input: &[Complex64]) -> Vec<Complex64> {
    let n = input.len() as f64;
    let mut out = if is_power_of_two(input.len()) {
        let mut data = input.to_vec();
        radix2_in_place(&mut data, true);
        data
    } else {
        dft_naive(input, true)
    };
    for v in &mut out {
        *v /= n;
    }
    out
}

pub fn forward_real(input: &[f64]) -> Vec<Complex64> {
    let data: Vec<Complex64> = input.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    forward(&data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn random_signal(seed: u64, n: usize) -> Vec<Complex64> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect()
    }

    fn max_rel(a: &[Complex64], b: &[Complex64]) -> f64 {
        let scale = b.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1e-300);
        a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max) / scale
    }

    #[test]
    fn tiny_lengths() {
        let one = [Complex64::new(3.0, -1.0)];
        assert_eq!(forward(&one), one.to_vec());
        let two = [Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)];
        assert_eq!(forward(&two), vec![Complex64::new(3.0, 0.0), Complex64::new(-1.0, 0.0)]);
    }

    #[test]
    fn fallback_for_odd_lengths_inverts() {
        let x = random_signal(3, 15);
        let back = inverse(&forward(&x));
        assert!(max_rel(&back, &x) < 1e-12);
    }

    #[test]
    fn radix2_matches_definition_up_to_4096() {
        for (i, n) in [64usize, 128, 512, 1024, 4096].into_iter().enumerate() {
            let x = random_signal(i as u64, n);
            assert!(max_rel(&forward(&x), &dft_naive(&x, false)) < 1e-9, "n = {n}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn fft_round_trip_and_parseval(seed in any::<u64>(), log_n in 1u32..11) {
            let n = 1usize << log_n;
            let x = random_signal(seed, n);
            let big_x = forward(&x);
            prop_assert!(max_rel(&big_x, &dft_naive(&x, false)) < 1e-9);
            prop_assert!(max_rel(&inverse(&big_x), &x) < 1e-9);
            let time: f64 = x.iter().map(|v| v.norm_sqr()).sum();
            let freq: f64 = big_x.iter().map(|v| v.norm_sqr()).sum::<f64>() / n as f64;
            prop_assert!((time - freq).abs() <= 1e-9 * time);
        }

        #[test]
        fn linearity(seed in any::<u64>(), a in -5.0f64..5.0, b in -5.0f64..5.0) {
            let x = random_signal(seed, 256);
            let y = random_signal(seed.wrapping_add(1), 256);
            let combo: Vec<Complex64> = x.iter().zip(&y).map(|(p, q)| p * a + q * b).collect();
            let lhs = forward(&combo);
            let (fx, fy) = (forward(&x), forward(&y));
            let rhs: Vec<Complex64> = fx.iter().zip(&fy).map(|(p, q)| p * a + q * b).collect();
            prop_assert!(max_rel(&lhs, &rhs) < 1e-9);
        }
    }
}
