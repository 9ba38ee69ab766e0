//! Closed-form radial and cell integrals against adaptive quadrature.

use loglap::coeffs::omega_n;
use loglap::domain::Interval;
use loglap::kernels::{
    cell_pair_integral_1d, outer_integral, outer_pair_integral_1d, tail_integral, CutoffKernel1d, KernelSpec,
};
use loglap::quadrature::{adaptive, adaptive_pieces};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn radial(n: usize, t: f64) -> f64 {
    (-2.0 * t.ln()).powi(n as i32 - 1) / t
}

#[test]
fn shell_integrals_match_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let n = rng.gen_range(1..=4);
        let dim = rng.gen_range(1..=3);
        let spec = KernelSpec::new(n, dim).unwrap();
        let w = omega_n::<f64>(dim).unwrap();
        let a: f64 = rng.gen_range(0.001..0.999);
        let quad = w * adaptive(|t| radial(n, t), a, 1.0, 1e-15, 1e-13);
        let exact = tail_integral(spec, a).unwrap();
        assert!((quad - exact).abs() <= 1e-10 * exact.abs().max(1e-300), "n={n} a={a}");
        let r: f64 = rng.gen_range(1.001..20.0);
        let quad = w * adaptive(|t| radial(n, t), 1.0, r, 1e-15, 1e-13);
        let exact = outer_integral(spec, r).unwrap();
        assert!((quad - exact).abs() <= 1e-10 * exact.abs(), "n={n} R={r}");
    }
}

/// ∫_A∫_B K(y−x) dy dx for A left of B, reduced to ∫ K(t)·w(t) dt where
/// w(t) = |{x ∈ A : x + t ∈ B}| is the piecewise-linear overlap length.
fn nested(a: Interval<f64>, b: Interval<f64>, kernel: impl Fn(f64) -> f64 + Copy) -> f64 {
    let w = |t: f64| ((a.hi).min(b.hi - t) - (a.lo).max(b.lo - t)).max(0.0);
    let mut br = vec![b.lo - a.hi, b.lo - a.lo, b.hi - a.hi, b.hi - a.lo, 1.0];
    br.retain(|&t| t >= b.lo - a.hi && t <= b.hi - a.lo);
    br.sort_by(|p, q| p.partial_cmp(q).unwrap());
    br.dedup();
    adaptive_pieces(|t| if t > 0.0 { kernel(t) * w(t) } else { 0.0 }, &br, 1e-16, 1e-13)
}

#[test]
fn cell_pairs_match_nested_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..40 {
        let n = rng.gen_range(1..=4);
        let spec = KernelSpec::new(n, 1).unwrap();
        let ha: f64 = rng.gen_range(0.01..0.5);
        let hb: f64 = rng.gen_range(0.01..0.5);
        // every fourth case touches
        let gap = if case % 4 == 0 { 0.0 } else { rng.gen_range(0.0..2.0) };
        let a = Interval::new(-ha, 0.0);
        let b = Interval::new(gap, gap + hb);
        let k = |t: f64| if t < 1.0 && t > 0.0 { radial(n, t) } else { 0.0 };
        let quad = nested(a, b, k);
        let exact = cell_pair_integral_1d(spec, a, b).unwrap();
        let scale = exact.abs().max(1e-12);
        assert!((quad - exact).abs() <= 1e-8 * scale, "case {case}: n={n} {quad} vs {exact}");
        assert_eq!(exact, cell_pair_integral_1d(spec, b, a).unwrap());
        assert!(exact >= 0.0);

        let j = |t: f64| if t > 1.0 { radial(n, t) } else { 0.0 };
        let quad = nested(a, b, j);
        let exact = outer_pair_integral_1d(spec, a, b).unwrap();
        assert!((quad - exact).abs() <= 1e-8 * exact.abs().max(1e-10), "outer case {case}");
    }
}

#[test]
fn self_energy_matches_quadrature() {
    // 2 ∫_C ∫_{B_1(x)∖C} |x−y|^{-1}: the inner integral is explicit, the outer adaptive
    for &h in &[0.05f64, 0.2, 0.45] {
        for n in 1..=3 {
            let spec = KernelSpec::new(n, 1).unwrap();
            let c = Interval::new(0.0, h);
            let g1 = |d: f64| if d > 0.0 { (-2.0 * d.ln()).powi(n as i32) / (2.0 * n as f64) } else { 0.0 };
            // ∫_{x+ (h−x) < |x−y| < 1} on each side: G1-differences
            let quad = adaptive(|x| g1(h - x) + g1(x), 0.0, h, 1e-15, 1e-13);
            let exact = cell_pair_integral_1d(spec, c, c).unwrap();
            assert!((quad - exact).abs() < 1e-10 * exact, "h={h} n={n}: {quad} vs {exact}");
        }
    }
}

#[test]
fn cutoff_kernel_matches_quadrature() {
    let c = 0.56f64;
    let k = CutoffKernel1d::new(2, c).unwrap();
    let a = Interval::new(-0.1, 0.0);
    let b = Interval::new(0.0, 0.3);
    let quad = nested(a, b, |t| if t < c && t > 0.0 { radial(2, t) } else { 0.0 });
    assert!((quad - k.ordered_pair(a, b)).abs() < 1e-9);
    let h = 0.2;
    // ∫_0^h∫_h^∞ K(y−x) = ∫_0^c K(t)·min(t, h) dt
    let one_side = adaptive_pieces(|t| radial(2, t) * t.min(h), &[0.0, h, c], 1e-16, 1e-13);
    assert!((one_side - k.one_side(h)).abs() < 1e-10);
}
