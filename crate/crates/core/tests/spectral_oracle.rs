use loglap::grid::GridFunction;
use loglap::pointwise::{apply_L, frac_lap};
use loglap::spectral::{apply_symbol, derivative_in_order, grid_l2, log_norm, ApplyOptions, SpectrumGrid, SymbolKind};
use std::f64::consts::PI;

fn gauss_d3(x: f64) -> f64 {
    (-8.0 * x.powi(3) + 12.0 * x) * (-x * x).exp()
}

fn line(n: usize, l: f64, f: impl Fn(f64) -> f64) -> GridFunction<f64> {
    GridFunction::from_fn(vec![-l], vec![2.0 * l / n as f64], vec![n], |x| f(x[0]), 1.0).unwrap()
}

fn sup_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (p, q)| m.max((p - q).abs()))
}

fn sup(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, p| m.max(p.abs()))
}

/// Direct O(n²) transform: u(x_j) ← (1/L) Σ_k σ(|ξ_k|) û_k e^{iξ_k x_j}, û_k = h Σ_j u_j e^{−iξ_k x_j}.
fn naive_dft_apply(u: &GridFunction<f64>, sigma: impl Fn(f64) -> f64) -> Vec<f64> {
    let n = u.shape[0];
    let h = u.spacing[0];
    let l = n as f64 * h;
    let xs: Vec<f64> = (0..n).map(|j| u.origin[0] + j as f64 * h).collect();
    let ks: Vec<f64> = (0..n)
        .map(|k| {
            let kk = if k <= n / 2 { k as f64 } else { k as f64 - n as f64 };
            2.0 * PI * kk / l
        })
        .collect();
    let hat: Vec<(f64, f64)> = ks
        .iter()
        .map(|&xi| {
            xs.iter()
                .zip(&u.values)
                .fold((0.0, 0.0), |(re, im), (&x, &v)| (re + h * v * (xi * x).cos(), im - h * v * (xi * x).sin()))
        })
        .collect();
    xs.iter()
        .map(|&x| {
            ks.iter().zip(&hat).fold(0.0, |acc, (&xi, &(re, im))| {
                let s = if xi == 0.0 { 0.0 } else { sigma(xi.abs()) };
                acc + s * (re * (xi * x).cos() - im * (xi * x).sin()) / l
            })
        })
        .collect()
}

#[test]
fn fft_application_matches_direct_transform() {
    let u = line(256, 20.0, gauss_d3);
    for m in 1..=3 {
        let fast = apply_symbol(&u, SymbolKind::Log(m), ApplyOptions::default()).unwrap();
        let slow = naive_dft_apply(&u, |xi| (2.0 * xi.ln()).powi(m as i32));
        assert!(sup_diff(&fast.grid.values, &slow) < 1e-11 * sup(&slow), "m={m}");
    }
    let fast = apply_symbol(&u, SymbolKind::Frac(0.3), ApplyOptions::default()).unwrap();
    let slow = naive_dft_apply(&u, |xi| xi.powf(0.6));
    assert!(sup_diff(&fast.grid.values, &slow) < 1e-11 * sup(&slow));
}

#[test]
fn fractional_laplacian_inverts_riesz_potential() {
    let u = line(2048, 20.0, gauss_d3);
    let o = ApplyOptions::default();
    // the intermediate result has algebraic tails; it is the periodic object
    let p = ApplyOptions { periodic: true, ..o };
    for s in [0.1, 0.3, 0.45] {
        let f = apply_symbol(&u, SymbolKind::Frac(s), o).unwrap();
        let back = apply_symbol(&f.grid, SymbolKind::Riesz(s), p).unwrap();
        assert!(sup_diff(&back.grid.values, &u.values) < 1e-6 * sup(&u.values), "s={s}");
    }
}

#[test]
fn semigroup_in_the_order() {
    let u = line(2048, 20.0, gauss_d3);
    let o = ApplyOptions::default();
    let (s1, s2) = (0.2, 0.35);
    let p = ApplyOptions { periodic: true, ..o };
    let a = apply_symbol(&apply_symbol(&u, SymbolKind::Frac(s1), o).unwrap().grid, SymbolKind::Frac(s2), p).unwrap();
    let b = apply_symbol(&u, SymbolKind::Frac(s1 + s2), o).unwrap();
    assert!(sup_diff(&a.grid.values, &b.grid.values) < 1e-8 * sup(&b.grid.values));
}

#[test]
fn parseval_and_realness() {
    let u = line(1024, 20.0, gauss_d3);
    let spec = SpectrumGrid::new(&u).unwrap();
    let l2u = grid_l2(&u);
    for kind in [SymbolKind::Log(1), SymbolKind::Log(2), SymbolKind::Frac(0.4), SymbolKind::Riesz(0.2)] {
        let out = apply_symbol(&u, kind, ApplyOptions::default()).unwrap();
        let lhs = grid_l2(&out.grid);
        let rhs = spec.weighted_norm(|xi| {
            let s = if xi == 0.0 { 0.0 } else { loglap::spectral::symbol_value(kind, xi).unwrap() };
            s * s
        });
        assert!((lhs - rhs).abs() <= 1e-10 * rhs, "{kind:?}: {lhs} vs {rhs}");
        assert!(out.imag_residue <= 1e-10 * l2u);
    }
}

#[test]
fn unit_shell_spectrum() {
    // cos x is exactly periodic on a box of length 16π, so its spectrum sits on |ξ| = 1
    let n = 256;
    let l = 8.0 * PI;
    let u = line(n, l, |x| x.cos());
    let o = ApplyOptions { allow_mean: false, periodic: true };
    for m in 1..=3 {
        let v = apply_symbol(&u, SymbolKind::Log(m), o).unwrap();
        assert!(sup(&v.grid.values) < 1e-10);
    }
    for kind in [SymbolKind::Frac(0.37), SymbolKind::Riesz(0.21)] {
        let v = apply_symbol(&u, kind, o).unwrap();
        assert!(sup_diff(&v.grid.values, &u.values) < 1e-10);
    }
}

#[test]
fn log_norm_properties() {
    let z = line(64, 20.0, |_| 0.0);
    assert_eq!(log_norm(&z, 3).unwrap(), 0.0);
    let u = line(1024, 20.0, gauss_d3);
    assert!((log_norm(&u, 0).unwrap() - grid_l2(&u)).abs() < 1e-10 * grid_l2(&u));
    let mut prev = 0.0;
    for m in 0..5 {
        let v = log_norm(&u, m).unwrap();
        assert!(v >= prev);
        prev = v;
    }
}

#[test]
fn order_derivatives_reproduce_log_symbols() {
    let u = line(2048, 20.0, gauss_d3);
    let o = ApplyOptions::default();
    let z = derivative_in_order(&line(64, 20.0, |_| 0.0), 1, 0.0, 1e-3, o).unwrap();
    assert_eq!(sup(&z.values), 0.0);
    for m in 1..=2 {
        let target = apply_symbol(&u, SymbolKind::Log(m), o).unwrap().grid;
        let fd = derivative_in_order(&u, m, 0.0, 1e-3, o).unwrap();
        let rel = sup_diff(&fd.values, &target.values) / sup(&target.values);
        assert!(rel < 1e-5, "m={m}: {rel}");
        // O(step²): halving the step reduces the error about four-fold
        let fd2 = derivative_in_order(&u, m, 0.0, 2e-2, o).unwrap();
        let fd4 = derivative_in_order(&u, m, 0.0, 4e-2, o).unwrap();
        let e2 = sup_diff(&fd2.values, &target.values);
        let e4 = sup_diff(&fd4.values, &target.values);
        assert!((e4 / e2 - 4.0).abs() < 0.2, "m={m}: ratio {}", e4 / e2);
    }
    assert!(derivative_in_order(&u, 2, -0.45, 0.1, o).is_err());
}

fn central_sample(u: &GridFunction<f64>, count: usize) -> Vec<usize> {
    let c = u.central_half();
    let step = c.len() / count;
    c.into_iter().step_by(step.max(1)).collect()
}

#[test]
fn log_laplacian_quadrature_matches_spectral() {
    let u = line(2048, 20.0, gauss_d3);
    let nodes = central_sample(&u, 40);
    for m in 1..=2 {
        let spec = apply_symbol(&u, SymbolKind::Log(m), ApplyOptions::default()).unwrap().grid;
        let scale = nodes.iter().fold(0.0f64, |a, &i| a.max(spec.values[i].abs()));
        let err = nodes.iter().fold(0.0f64, |a, &i| {
            let q = apply_L(m, &u, &u.node(i)).unwrap().value;
            a.max((q - spec.values[i]).abs())
        });
        assert!(err <= 1e-3 * scale, "m={m}: {err} vs {scale}");
    }
}

#[test]
fn fractional_laplacian_quadrature_matches_spectral() {
    // mean-zero bump: a Gaussian's |x|^{−1−2s} tail would alias under periodization
    let u = line(2048, 20.0, gauss_d3);
    let s = 0.1;
    let spec = apply_symbol(&u, SymbolKind::Frac(s), ApplyOptions::default()).unwrap().grid;
    let nodes = central_sample(&u, 40);
    let scale = nodes.iter().fold(0.0f64, |a, &i| a.max(spec.values[i].abs()));
    for &i in &nodes {
        let q = frac_lap(s, &u, &u.node(i)).unwrap().value;
        assert!((q - spec.values[i]).abs() <= 1e-3 * scale, "node {i}: {q} vs {}", spec.values[i]);
    }
}
