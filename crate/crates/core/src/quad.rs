//! Numerical quadrature used by the holonomy and Chern-number paths.
//!
//! Everything symbolic stays exact elsewhere; these routines only see f64
//! evaluations of rational data (or trigonometric parametrizations).

use alloc::vec::Vec;

/// Trapezoid rule for a 1-periodic integrand over one period; spectrally
/// accurate for smooth periodic functions.
pub fn trapezoid_periodic(f: impl Fn(f64) -> f64, samples: usize) -> f64 {
    assert!(samples > 0);
    let n = samples as f64;
    (0..samples).map(|k| f(k as f64 / n)).sum::<f64>() / n
}

/// Nodes and weights of 8-point Gauss-Legendre on [-1, 1].
const GL8_NODES: [f64; 8] = [
    -0.960_289_856_497_536_2,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329_0,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329_0,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_2,
];
const GL8_WEIGHTS: [f64; 8] = [
    0.101_228_536_290_376_26,
    0.222_381_034_453_374_47,
    0.313_706_645_877_887_3,
    0.362_683_783_378_362,
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_47,
    0.101_228_536_290_376_26,
];

/// Composite 8-point Gauss-Legendre over [a, b].
pub fn gauss_legendre(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    assert!(panels > 0);
    let h = (b - a) / panels as f64;
    let mut acc = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        for (x, w) in GL8_NODES.iter().zip(GL8_WEIGHTS.iter()) {
            acc += w * f(mid + 0.5 * h * x);
        }
    }
    acc * 0.5 * h
}

/// Integral of `f(x, y)` over the disk of the given center and radius, via a
/// polar tensor-product Gauss grid.
pub fn disk_integral(
    f: impl Fn(f64, f64) -> f64,
    center: (f64, f64),
    radius: f64,
    radial_panels: usize,
    angular_samples: usize,
) -> f64 {
    let two_pi = 2.0 * core::f64::consts::PI;
    gauss_legendre(
        |r| {
            let ring: f64 = trapezoid_periodic(
                |t| {
                    let theta = two_pi * t;
                    let x = center.0 + r * radius * libm::cos(theta);
                    let y = center.1 + r * radius * libm::sin(theta);
                    f(x, y)
                },
                angular_samples,
            );
            ring * r
        },
        0.0,
        1.0,
        radial_panels,
    ) * radius
        * radius
        * two_pi
}

/// Unit complex number `exp(i t)`.
pub fn unit_exp(t: f64) -> (f64, f64) {
    (libm::cos(t), libm::sin(t))
}

/// Complex multiplication.
pub fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

pub fn cabs(a: (f64, f64)) -> f64 {
    libm::hypot(a.0, a.1)
}

/// Deterministic low-discrepancy points in `[-1, 1]^dim` (Kronecker
/// sequence with square-root irrationals).
pub fn quasi_random_points(dim: usize, count: usize) -> Vec<Vec<f64>> {
    const PRIMES: [f64; 6] = [2.0, 3.0, 5.0, 7.0, 11.0, 13.0];
    let alphas: Vec<f64> = (0..dim).map(|i| libm::sqrt(PRIMES[i % PRIMES.len()])).collect();
    (1..=count)
        .map(|k| {
            (0..dim)
                .map(|i| {
                    let v = (k as f64) * alphas[i];
                    2.0 * (v - libm::floor(v)) - 1.0
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_on_cosine_squared() {
        // integral of cos^2(2 pi t) over a period = 1/2
        let v = trapezoid_periodic(
            |t| {
                let c = libm::cos(2.0 * core::f64::consts::PI * t);
                c * c
            },
            64,
        );
        assert!((v - 0.5).abs() < 1e-12);
    }

    #[test]
    fn gauss_on_polynomial_is_exact() {
        // x^7 over [0, 2] = 2^8/8 = 32
        let v = gauss_legendre(|x| x.powi(7), 0.0, 2.0, 1);
        assert!((v - 32.0).abs() < 1e-10);
    }

    #[test]
    fn disk_area() {
        let v = disk_integral(|_, _| 1.0, (0.3, -0.2), 0.5, 8, 32);
        let expect = core::f64::consts::PI * 0.25;
        assert!((v - expect).abs() < 1e-9, "got {v}, want {expect}");
    }

    #[test]
    fn quasi_random_in_box() {
        let pts = quasi_random_points(3, 50);
        assert_eq!(pts.len(), 50);
        assert!(pts.iter().flatten().all(|&x| (-1.0..=1.0).contains(&x)));
    }
}
