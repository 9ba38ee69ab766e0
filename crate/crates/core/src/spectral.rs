//! Fourier-multiplier application on uniform grids.
//!
//! The grid is treated as one period of a periodic function with period
//! L = n·h per axis, so the lattice frequencies are ξ_k = 2πk/L. The
//! continuous symbols are evaluated at those lattice points; there is no
//! discrete-Laplacian substitution.

use num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{domain, precondition, Error, Result};
use crate::grid::GridFunction;
use crate::scalar::Real;

/// A Fourier symbol σ(|ξ|).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SymbolKind<T> {
    /// (2 ln|ξ|)^m
    Log(usize),
    /// |ξ|^{2s}; negative s is allowed and gives the Riesz potential of order −s
    Frac(T),
    /// |ξ|^{−2s}
    Riesz(T),
    /// (2 ln|ξ|)^m |ξ|^{2s}
    LogFrac(usize, T),
}

impl<T: Real> SymbolKind<T> {
    /// Whether the symbol is unbounded (or undefined) at ξ = 0.
    pub fn singular_at_zero(&self) -> bool {
        match *self {
            SymbolKind::Log(m) => m > 0,
            SymbolKind::Frac(s) => s < T::zero(),
            SymbolKind::Riesz(s) => s > T::zero(),
            SymbolKind::LogFrac(m, s) => s < T::zero() || (m > 0 && s == T::zero()),
        }
    }

    /// Multiplier used on the lattice: the symbol away from 0; at ξ = 0 the
    /// continuous limit when it exists and 0 otherwise.
    fn multiplier(&self, xi: T) -> T {
        if xi == T::zero() {
            return match *self {
                SymbolKind::Log(0) => T::one(),
                SymbolKind::Frac(s) if s == T::zero() => T::one(),
                SymbolKind::Riesz(s) if s == T::zero() => T::one(),
                SymbolKind::LogFrac(0, s) if s == T::zero() => T::one(),
                _ => T::zero(),
            };
        }
        let l2 = xi.ln() + xi.ln();
        match *self {
            SymbolKind::Log(m) => l2.powi(m as i32),
            SymbolKind::Frac(s) => (s * l2).exp(),
            SymbolKind::Riesz(s) => (-s * l2).exp(),
            SymbolKind::LogFrac(m, s) => l2.powi(m as i32) * (s * l2).exp(),
        }
    }
}

/// σ(|ξ|) for the given kind.
pub fn symbol_value<T: Real>(kind: SymbolKind<T>, xi_norm: T) -> Result<T> {
    if !(xi_norm >= T::zero()) || !xi_norm.is_finite() {
        return domain(format!("|ξ| must be finite and non-negative, got {xi_norm}"));
    }
    if xi_norm == T::zero() && kind.singular_at_zero() {
        return domain("symbol is singular at ξ = 0; the zero mode is handled by the mean-zero convention");
    }
    Ok(kind.multiplier(xi_norm))
}

/// Options for [`apply_symbol`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ApplyOptions {
    /// accept inputs with a non-negligible mean for singular symbols
    /// (the zero mode is still multiplied by 0)
    pub allow_mean: bool,
    /// treat the input as genuinely periodic and skip the support check
    pub periodic: bool,
}

/// Result of a multiplier application.
#[derive(Debug, Clone)]
pub struct SymbolOutput<T> {
    pub grid: GridFunction<T>,
    /// max |Im| of the inverse transform
    pub imag_residue: T,
}

/// DFT coefficients of a grid function together with the lattice frequencies.
#[derive(Debug, Clone)]
pub struct SpectrumGrid<T> {
    pub source: GridFunction<T>,
    /// ξ per axis in FFT order
    pub frequencies: Vec<Vec<T>>,
    /// ĥu_k = h^N Σ_j u_j e^{−iξ_k·(x_j − origin)}, row-major
    pub coefficients: Vec<Complex<T>>,
}

fn fft_axis<T: Real>(data: &mut [Complex<T>], shape: &[usize], axis: usize, inverse: bool) {
    let mut planner = FftPlanner::<T>::new();
    let n = shape[axis];
    let fft = if inverse { planner.plan_fft_inverse(n) } else { planner.plan_fft_forward(n) };
    let stride: usize = shape[axis + 1..].iter().product();
    let outer: usize = shape[..axis].iter().product();
    let mut buf = vec![Complex::new(T::zero(), T::zero()); n];
    for o in 0..outer {
        for i in 0..stride {
            let base = o * n * stride + i;
            for k in 0..n {
                buf[k] = data[base + k * stride];
            }
            fft.process(&mut buf);
            for k in 0..n {
                data[base + k * stride] = buf[k];
            }
        }
    }
}

fn fft_nd<T: Real>(data: &mut [Complex<T>], shape: &[usize], inverse: bool) {
    for axis in 0..shape.len() {
        fft_axis(data, shape, axis, inverse);
    }
}

/// Lattice frequencies 2πk/(n h) in FFT order; the Nyquist index is taken positive.
pub fn lattice_frequencies<T: Real>(n: usize, h: T) -> Vec<T> {
    let l = T::count(n) * h;
    (0..n)
        .map(|k| {
            let kk = if k <= n / 2 { k as f64 } else { k as f64 - n as f64 };
            T::lit(2.0) * T::PI() * T::lit(kk) / l
        })
        .collect()
}

impl<T: Real> SpectrumGrid<T> {
    /// Forward transform; checks conjugate symmetry of the result.
    pub fn new(u: &GridFunction<T>) -> Result<Self> {
        let mut data: Vec<Complex<T>> = u.values.iter().map(|&v| Complex::new(v, T::zero())).collect();
        fft_nd(&mut data, &u.shape, false);
        let cell: T = u.spacing.iter().fold(T::one(), |a, &h| a * h);
        for c in data.iter_mut() {
            *c = *c * cell;
        }
        let frequencies = (0..u.dim).map(|k| lattice_frequencies(u.shape[k], u.spacing[k])).collect();
        let spec = Self { source: u.clone(), frequencies, coefficients: data };
        spec.check_conjugate_symmetry()?;
        Ok(spec)
    }

    fn mirror(&self, idx: usize) -> usize {
        let shape = &self.source.shape;
        let mut rem = idx;
        let mut out = 0;
        let mut stride = 1;
        for k in (0..shape.len()).rev() {
            let i = rem % shape[k];
            rem /= shape[k];
            let j = (shape[k] - i) % shape[k];
            out += j * stride;
            stride *= shape[k];
        }
        out
    }

    fn check_conjugate_symmetry(&self) -> Result<()> {
        let scale = self.coefficients.iter().fold(T::zero(), |a, c| a.max(c.norm()));
        let tol = T::lit(1e-12) * scale.max(T::min_positive_value());
        for (i, c) in self.coefficients.iter().enumerate() {
            let d = *c - self.coefficients[self.mirror(i)].conj();
            if d.norm() > tol {
                return Err(Error::Numerical(format!(
                    "spectrum of a real grid is not conjugate-symmetric at mode {i}"
                )));
            }
        }
        Ok(())
    }

    /// |ξ| of mode `idx`.
    pub fn xi_norm(&self, idx: usize) -> T {
        let shape = &self.source.shape;
        let mut rem = idx;
        let mut acc = T::zero();
        for k in (0..shape.len()).rev() {
            let i = rem % shape[k];
            rem /= shape[k];
            let f = self.frequencies[k][i];
            acc = acc + f * f;
        }
        acc.sqrt()
    }

    /// Number of modes.
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// û(0) = h^N Σ u_j.
    pub fn mean_mode(&self) -> T {
        self.coefficients[0].re
    }

    /// Inverse transform of σ(|ξ_k|)·û_k; returns (real part, max |Im|).
    pub fn apply_multiplier<F: Fn(T) -> T>(&self, sigma: F) -> (Vec<T>, T) {
        let cell: T = self.source.spacing.iter().fold(T::one(), |a, &h| a * h);
        let n_total = T::count(self.len());
        let norm = T::one() / (cell * n_total);
        let mut data: Vec<Complex<T>> =
            self.coefficients.iter().enumerate().map(|(i, c)| *c * (sigma(self.xi_norm(i)) * norm)).collect();
        fft_nd(&mut data, &self.source.shape, true);
        let imag = data.iter().fold(T::zero(), |a, c| a.max(c.im.abs()));
        (data.into_iter().map(|c| c.re).collect(), imag)
    }

    /// √( (2π)^{−N} Σ_k w(|ξ_k|) |û_k|² Δξ^N ).
    pub fn weighted_norm<F: Fn(T) -> T>(&self, weight: F) -> T {
        let cell: T = self.source.spacing.iter().fold(T::one(), |a, &h| a * h);
        let n_total = T::count(self.len());
        let s = self
            .coefficients
            .iter()
            .enumerate()
            .fold(T::zero(), |a, (i, c)| a + weight(self.xi_norm(i)) * c.norm_sqr());
        (s / (cell * n_total)).sqrt()
    }
}

/// Grid L² norm √(h^N Σ u_j²) (the periodic rectangle rule).
pub fn grid_l2<T: Real>(u: &GridFunction<T>) -> T {
    let cell: T = u.spacing.iter().fold(T::one(), |a, &h| a * h);
    (u.values.iter().fold(T::zero(), |a, &v| a + v * v) * cell).sqrt()
}

fn grid_l1<T: Real>(u: &GridFunction<T>) -> T {
    let cell: T = u.spacing.iter().fold(T::one(), |a, &h| a * h);
    u.values.iter().fold(T::zero(), |a, &v| a + v.abs()) * cell
}

/// Extent of {|u| > 10⁻¹⁴·max|u|} must not exceed half the box per axis.
pub(crate) fn check_support<T: Real>(u: &GridFunction<T>) -> Result<()> {
    let max = u.max_abs();
    if max == T::zero() {
        return Ok(());
    }
    let thr = max * T::lit(1e-14);
    let mut lo = u.shape.clone();
    let mut hi = vec![0usize; u.dim];
    for (idx, v) in u.values.iter().enumerate() {
        if v.abs() <= thr {
            continue;
        }
        let mut rem = idx;
        for k in (0..u.dim).rev() {
            let i = rem % u.shape[k];
            rem /= u.shape[k];
            lo[k] = lo[k].min(i);
            hi[k] = hi[k].max(i);
        }
    }
    for k in 0..u.dim {
        if 2 * (hi[k] - lo[k]) > u.shape[k] {
            return precondition(format!(
                "numerical support spans {} of {} nodes on axis {k}; at most half the box is allowed",
                hi[k] - lo[k] + 1,
                u.shape[k]
            ));
        }
    }
    Ok(())
}

pub(crate) fn check_zero_mode<T: Real>(spec: &SpectrumGrid<T>, singular: bool, opts: ApplyOptions) -> Result<()> {
    if !singular || opts.allow_mean {
        return Ok(());
    }
    let mean = spec.mean_mode().abs();
    let threshold = T::lit(1e-8) * grid_l1(&spec.source);
    if mean > threshold {
        return Err(Error::ZeroMode { mean: mean.as_f64(), threshold: threshold.as_f64() });
    }
    Ok(())
}

fn finish<T: Real>(u: &GridFunction<T>, values: Vec<T>, imag: T) -> Result<SymbolOutput<T>> {
    let l2 = grid_l2(u);
    let cell: T = u.spacing.iter().fold(T::one(), |a, &h| a * h);
    // grid L² of the imaginary residue is bounded by its max times √|box|
    let bound = T::lit(1e-10) * l2 / (cell * T::count(u.len())).sqrt();
    if imag > bound && imag > T::epsilon() {
        return Err(Error::Numerical(format!("imaginary residue {imag} exceeds {bound}")));
    }
    let mut grid = u.clone();
    grid.set_values(values)?;
    grid.holder_exponent = T::one();
    grid.holder_constant = grid.estimate_holder_constant(T::one()) * T::lit(1.25);
    Ok(SymbolOutput { grid, imag_residue: imag })
}

/// Inverse transform of σ·û for the given symbol.
pub fn apply_symbol<T: Real>(u: &GridFunction<T>, kind: SymbolKind<T>, opts: ApplyOptions) -> Result<SymbolOutput<T>> {
    if !opts.periodic {
        check_support(u)?;
    }
    let spec = SpectrumGrid::new(u)?;
    apply_symbol_to(&spec, kind, opts)
}

/// [`apply_symbol`] reusing a precomputed transform (the support check is
/// the caller's business).
pub fn apply_symbol_to<T: Real>(
    spec: &SpectrumGrid<T>,
    kind: SymbolKind<T>,
    opts: ApplyOptions,
) -> Result<SymbolOutput<T>> {
    check_zero_mode(spec, kind.singular_at_zero(), opts)?;
    let (values, imag) = spec.apply_multiplier(|xi| kind.multiplier(xi));
    finish(&spec.source, values, imag)
}

/// Discrete |||u|||_m = √( (2π)^{−N} ∫ (ln(e+|ξ|))^m |û|² dξ ).
pub fn log_norm<T: Real>(u: &GridFunction<T>, m: usize) -> Result<T> {
    let spec = SpectrumGrid::new(u)?;
    Ok(spec.weighted_norm(|xi| (T::E() + xi).ln().powi(m as i32)))
}

/// m-th central difference of s ↦ 𝓑^s u = F⁻¹(|ξ|^{2s} û) at s₀ with the
/// given step, computed in frequency space:
/// step^{−m} Σ_j (−1)^j C(m,j) |ξ|^{2(s₀ + (m/2 − j)·step)}.
pub fn derivative_in_order<T: Real>(
    u: &GridFunction<T>,
    m: usize,
    s0: T,
    step: T,
    opts: ApplyOptions,
) -> Result<GridFunction<T>> {
    let half_n = T::count(u.dim) / T::lit(2.0);
    if !(step > T::zero()) {
        return domain("finite-difference step must be positive");
    }
    if !(s0 - T::count(m) * step > -half_n) {
        return domain(format!("stencil leaves the admissible range: s0 − m·step must exceed −N/2 = {}", -half_n));
    }
    if !opts.periodic {
        check_support(u)?;
    }
    let spec = SpectrumGrid::new(u)?;
    let lowest = s0 - T::count(m) * step / T::lit(2.0);
    let singular = m > 0 || lowest < T::zero();
    check_zero_mode(&spec, singular, opts)?;
    let coeffs: Vec<(T, T)> = (0..=m)
        .map(|j| {
            let c = crate::coeffs::binomial::<T>(m, j) * if j % 2 == 0 { T::one() } else { -T::one() };
            let e = s0 + (T::count(m) / T::lit(2.0) - T::count(j)) * step;
            (c, e)
        })
        .collect();
    let scale = step.powi(-(m as i32));
    let (values, imag) = spec.apply_multiplier(|xi| {
        if xi == T::zero() {
            return if m == 0 && s0 == T::zero() { T::one() } else { T::zero() };
        }
        let l2 = xi.ln() + xi.ln();
        coeffs.iter().fold(T::zero(), |a, &(c, e)| a + c * (e * l2).exp()) * scale
    });
    Ok(finish(u, values, imag)?.grid)
}

/// Samples `f` on the default spectral box [−20, 20]^N: 4096 nodes in 1D,
/// 512² in 2D, periodic spacing 40/n.
pub fn default_grid<T: Real, F: Fn(&[T]) -> T>(dim: usize, f: F) -> Result<GridFunction<T>> {
    let n = match dim {
        1 => 4096,
        2 => 512,
        _ => return precondition("spectral grids support N ∈ {1, 2}"),
    };
    let h = T::lit(40.0) / T::count(n);
    GridFunction::from_fn(vec![T::lit(-20.0); dim], vec![h; dim], vec![n; dim], f, T::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bump(n: usize, l: f64) -> GridFunction<f64> {
        let h = 2.0 * l / n as f64;
        GridFunction::from_fn(
            vec![-l],
            vec![h],
            vec![n],
            |x| (-8.0 * x[0].powi(3) + 12.0 * x[0]) * (-x[0] * x[0]).exp(),
            1.0,
        )
        .unwrap()
    }

    #[test]
    fn symbol_examples() {
        for m in 0..5 {
            assert_eq!(symbol_value(SymbolKind::Log(m), 1.0).unwrap(), 0f64.powi(m as i32));
        }
        assert!((symbol_value(SymbolKind::Log(2), 0.5f64.exp()).unwrap() - 1.0).abs() < 1e-15);
        assert!((symbol_value(SymbolKind::Frac(0.5), 2.0).unwrap() - 2.0f64).abs() < 1e-15);
        assert!(symbol_value(SymbolKind::Riesz(0.3), 0.0).is_err());
        assert!(symbol_value(SymbolKind::Log(1), 0.0).is_err());
        assert_eq!(symbol_value(SymbolKind::Frac(0.3), 0.0).unwrap(), 0.0);
    }

    #[test]
    fn identity_symbols() {
        let u = bump(512, 20.0);
        for kind in [SymbolKind::Log(0), SymbolKind::Frac(0.0), SymbolKind::Riesz(0.0)] {
            let v = apply_symbol(&u, kind, ApplyOptions::default()).unwrap();
            let err = v.grid.values.iter().zip(&u.values).fold(0f64, |a, (p, q)| a.max((p - q).abs()));
            assert!(err < 1e-12, "{kind:?}: {err}");
        }
    }

    #[test]
    fn support_and_mean_policies() {
        let h = 0.05;
        let g = GridFunction::<f64>::from_fn(vec![-12.0], vec![h], vec![480], |x| (-x[0] * x[0]).exp(), 1.0).unwrap();
        match apply_symbol(&g, SymbolKind::Log(1), ApplyOptions::default()) {
            Err(Error::ZeroMode { .. }) => {}
            other => panic!("expected zero-mode error, got {other:?}"),
        }
        assert!(apply_symbol(&g, SymbolKind::Log(1), ApplyOptions { allow_mean: true, periodic: false }).is_ok());
        assert!(apply_symbol(&g, SymbolKind::Frac(0.3), ApplyOptions::default()).is_ok());
        let wide = GridFunction::<f64>::from_fn(vec![-1.0], vec![0.01], vec![200], |x| x[0], 1.0).unwrap();
        assert!(matches!(
            apply_symbol(&wide, SymbolKind::Frac(0.3), ApplyOptions::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn parseval_for_log_norm() {
        let u = bump(1024, 20.0);
        let a = log_norm(&u, 0).unwrap();
        assert!((a - grid_l2(&u)).abs() < 1e-10 * a);
        let b = log_norm(&u, 1).unwrap();
        let c = log_norm(&u, 2).unwrap();
        assert!(a <= b && b <= c);
    }

    #[test]
    fn frequencies_follow_fft_order() {
        let f = lattice_frequencies(8, 0.25f64);
        let base = 2.0 * std::f64::consts::PI / 2.0;
        assert_eq!(f[0], 0.0);
        assert!((f[1] - base).abs() < 1e-15);
        assert!((f[4] - 4.0 * base).abs() < 1e-14);
        assert!((f[7] + base).abs() < 1e-15);
    }

    #[test]
    fn two_dimensional_transform_round_trips() {
        let u = GridFunction::<f64>::from_fn(
            vec![-12.0, -12.0],
            vec![0.1875, 0.1875],
            vec![128, 128],
            |p| p[0] * (-(p[0] * p[0] + p[1] * p[1])).exp(),
            1.0,
        )
        .unwrap();
        let v = apply_symbol(&u, SymbolKind::Frac(0.0), ApplyOptions::default()).unwrap();
        let err = v.grid.values.iter().zip(&u.values).fold(0f64, |a, (p, q)| a.max((p - q).abs()));
        assert!(err < 1e-13);
        assert!(v.imag_residue < 1e-14);
    }
}
