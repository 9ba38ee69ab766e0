//! Taylor remainders of (−Δ)^s and Φ_s∗ in the order s.
//!
//! Every term is applied spectrally. Per mode with L = 2 ln|ξ| the remainder
//! multiplier of the base-point expansion is
//!
//!   |ξ|^{2s₀} · (e^{tL} − Σ_{j≤n} (tL)^j/j!),
//!
//! with t = s (fractional side), t = −s (Riesz side) or t = s − s₀ (shifted).
//! The bracket is summed directly as Σ_{j>n} (tL)^j/j! when |tL| ≤ 1, so the
//! remainder carries no cancellation even for very small s.

use rayon::prelude::*;

use crate::coeffs::{alpha_coeffs, factorial};
use crate::error::{domain, precondition, Error, Result};
use crate::grid::GridFunction;
use crate::pointwise::{apply_L_with, PointwiseConfig};
use crate::scalar::Real;
use crate::spectral::{check_support, check_zero_mode, default_grid, ApplyOptions, SpectrumGrid};

/// Which expansion is being tested.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Side<T> {
    /// (−Δ)^s u = u + Σ s^j/j! 𝓛_j u + …
    FracLap,
    /// Φ_s∗u = u + Σ (−s)^j/j! 𝓛_j u + …
    Riesz,
    /// 𝓑^s u = 𝓑^{s₀}u + Σ (s−s₀)^j/j! 𝓛_j 𝓑^{s₀} u + …; samples are the offsets s − s₀
    Shifted(T),
}

/// Distance kept from −N/2 by shifted base points.
pub const SHIFT_MARGIN: f64 = 0.25;
/// Largest expansion order supported.
pub const MAX_ORDER: usize = 4;

/// Remainder norms over a set of sample orders.
#[derive(Debug, Clone)]
pub struct RemainderStudy<T> {
    pub side: Side<T>,
    pub n: usize,
    /// strictly decreasing
    pub s_samples: Vec<T>,
    /// sup-norm over the central half of the grid
    pub sup_norms: Vec<T>,
    /// L²-norm over the central half of the grid
    pub l2_norms: Vec<T>,
    pub fitted_slope: Option<T>,
}

/// e^x − Σ_{j≤n} x^j/j!.
pub fn exp_tail<T: Real>(x: T, n: usize) -> T {
    if x.abs() <= T::one() {
        let mut term = T::one();
        for j in 1..=n {
            term = term * x / T::count(j);
        }
        let mut sum = T::zero();
        for j in n + 1..n + 60 {
            term = term * x / T::count(j);
            sum = sum + term;
            if term.abs() <= T::epsilon() * sum.abs() * T::lit(0.25) {
                break;
            }
        }
        sum
    } else {
        let mut term = T::one();
        let mut partial = T::one();
        for j in 1..=n {
            term = term * x / T::count(j);
            partial = partial + term;
        }
        x.exp() - partial
    }
}

fn check_side<T: Real>(side: Side<T>, dim: usize) -> Result<()> {
    if let Side::Shifted(s0) = side {
        let lo = -T::count(dim) / T::lit(2.0) + T::lit(SHIFT_MARGIN);
        if !(s0 > lo && s0 <= T::lit(2.0)) {
            return domain(format!("base point s0 = {s0} must lie in ({lo}, 2]"));
        }
    }
    Ok(())
}

fn check_order<T: Real>(n: usize, s: T) -> Result<()> {
    if n > MAX_ORDER {
        return domain(format!("expansion order {n} exceeds {MAX_ORDER}"));
    }
    if !(s > T::zero() && s <= T::lit(0.25)) {
        return domain(format!("sample order must lie in (0, 1/4], got {s}"));
    }
    Ok(())
}

fn remainder_values<T: Real>(spec: &SpectrumGrid<T>, side: Side<T>, n: usize, s: T) -> Vec<T> {
    let (t, s0) = match side {
        Side::FracLap => (s, T::zero()),
        Side::Riesz => (-s, T::zero()),
        Side::Shifted(s0) => (s, s0),
    };
    spec.apply_multiplier(|xi| {
        if xi == T::zero() {
            return T::zero();
        }
        let l = xi.ln() + xi.ln();
        (s0 * l).exp() * exp_tail(t * l, n)
    })
    .0
}

fn spectrum_for<T: Real>(u: &GridFunction<T>) -> Result<SpectrumGrid<T>> {
    // the log-type multipliers are singular at ξ = 0, so inputs must be mean-zero
    check_support(u)?;
    let spec = SpectrumGrid::new(u)?;
    check_zero_mode(&spec, true, ApplyOptions::default())?;
    Ok(spec)
}

/// R_n(s) on the grid of `u`.
pub fn remainder<T: Real>(side: Side<T>, n: usize, s: T, u: &GridFunction<T>) -> Result<GridFunction<T>> {
    check_order(n, s)?;
    check_side(side, u.dim)?;
    let spec = spectrum_for(u)?;
    let mut g = u.clone();
    g.set_values(remainder_values(&spec, side, n, s))?;
    Ok(g)
}

fn central_norms<T: Real>(u: &GridFunction<T>, values: &[T]) -> (T, T) {
    let cell: T = u.spacing.iter().fold(T::one(), |a, &h| a * h);
    let mut sup = T::zero();
    let mut l2 = T::zero();
    for i in u.central_half() {
        sup = sup.max(values[i].abs());
        l2 = l2 + values[i] * values[i];
    }
    (sup, (l2 * cell).sqrt())
}

/// The default sample set {2⁻⁴, …, 2⁻¹²}.
pub fn default_samples<T: Real>() -> Vec<T> {
    (4..=12).map(|k| T::lit(2.0).powi(-k)).collect()
}

/// Remainder norms of order n at every sample, in parallel.
pub fn study<T: Real>(side: Side<T>, n: usize, u: &GridFunction<T>, samples: &[T]) -> Result<RemainderStudy<T>> {
    check_side(side, u.dim)?;
    for w in samples.windows(2) {
        if !(w[1] < w[0]) {
            return precondition("sample orders must be strictly decreasing");
        }
    }
    for &s in samples {
        check_order(n, s)?;
    }
    let spec = spectrum_for(u)?;
    let norms: Vec<(T, T)> =
        samples.par_iter().map(|&s| central_norms(u, &remainder_values(&spec, side, n, s))).collect();
    let mut st = RemainderStudy {
        side,
        n,
        s_samples: samples.to_vec(),
        sup_norms: norms.iter().map(|p| p.0).collect(),
        l2_norms: norms.iter().map(|p| p.1).collect(),
        fitted_slope: None,
    };
    st.fitted_slope = slope_fit(&st).ok();
    Ok(st)
}

/// Least-squares slope of ln‖R_n(s)‖_sup against ln s.
pub fn slope_fit<T: Real>(study: &RemainderStudy<T>) -> Result<T> {
    let k = study.s_samples.len();
    if k < 5 {
        return precondition("slope fit needs at least five samples");
    }
    let (lo, hi) = study.s_samples.iter().fold((T::infinity(), T::zero()), |(a, b), &s| (a.min(s), b.max(s)));
    if hi / lo < T::lit(100.0) {
        return precondition("slope fit needs samples spanning two decades");
    }
    let floor = T::lit(10.0) * T::epsilon();
    if study.sup_norms.iter().all(|&r| r <= floor) || study.sup_norms.iter().any(|&r| !(r > T::zero())) {
        return Err(Error::Numerical("remainder norms are saturated at the rounding floor".into()));
    }
    let xs: Vec<T> = study.s_samples.iter().map(|s| s.ln()).collect();
    let ys: Vec<T> = study.sup_norms.iter().map(|r| r.ln()).collect();
    let kf = T::count(k);
    let mx = xs.iter().fold(T::zero(), |a, &x| a + x) / kf;
    let my = ys.iter().fold(T::zero(), |a, &y| a + y) / kf;
    let (mut sxy, mut sxx) = (T::zero(), T::zero());
    for (x, y) in xs.iter().zip(&ys) {
        sxy = sxy + (*x - mx) * (*y - my);
        sxx = sxx + (*x - mx) * (*x - mx);
    }
    Ok(sxy / sxx)
}

/// Remainder study for the expansion at base point s₀ over the default offsets.
pub fn shifted_expansion_check<T: Real>(u: &GridFunction<T>, s0: T, n: usize) -> Result<RemainderStudy<T>> {
    study(Side::Shifted(s0), n, u, &default_samples())
}

/// Convergence of the difference quotient m!·R_{m−1}(s)/s^m to 𝓛_m u.
#[derive(Debug, Clone)]
pub struct QuotientStudy<T> {
    pub m: usize,
    pub s_samples: Vec<T>,
    /// sup over the central half of |quotient − 𝓛_m u|
    pub errors: Vec<T>,
    /// max over samples of error/s
    pub fitted_constant: T,
}

/// Fractional-side quotient study: m!·((−Δ)^s u − Σ_{j<m} s^j/j! 𝓛_j u)/s^m → 𝓛_m u.
pub fn quotient_convergence<T: Real>(m: usize, u: &GridFunction<T>, samples: &[T]) -> Result<QuotientStudy<T>> {
    if m == 0 || m > MAX_ORDER + 1 {
        return domain(format!("quotient order must lie in 1..={}", MAX_ORDER + 1));
    }
    for &s in samples {
        check_order(m - 1, s)?;
    }
    let spec = spectrum_for(u)?;
    let target =
        spec.apply_multiplier(|xi| if xi == T::zero() { T::zero() } else { (xi.ln() + xi.ln()).powi(m as i32) }).0;
    let fact: T = factorial(m);
    let errors: Vec<T> = samples
        .par_iter()
        .map(|&s| {
            let r = remainder_values(&spec, Side::FracLap, m - 1, s);
            let scale = fact / s.powi(m as i32);
            u.central_half().into_iter().fold(T::zero(), |a, i| a.max((r[i] * scale - target[i]).abs()))
        })
        .collect();
    let fitted_constant = errors.iter().zip(samples).fold(T::zero(), |a, (&e, &s)| a.max(e / s));
    Ok(QuotientStudy { m, s_samples: samples.to_vec(), errors, fitted_constant })
}

/// Relative change of max_i |R_n(s)(x_i)| over `nodes` when the exact-symbol
/// partial sum is replaced by the pointwise ledger sums Σ α_j 𝓚_j.
pub fn ledger_consistency<T: Real>(
    side: Side<T>,
    n: usize,
    s: T,
    u: &GridFunction<T>,
    nodes: &[usize],
    cfg: &PointwiseConfig<T>,
) -> Result<T> {
    check_order(n, s)?;
    let t = match side {
        Side::FracLap => s,
        Side::Riesz => -s,
        Side::Shifted(_) => return precondition("ledger consistency is defined at base point 0"),
    };
    let spec = spectrum_for(u)?;
    let exact = remainder_values(&spec, side, n, s);
    // R_n via ledger: (𝓑^{±s}u − u − Σ_{j=1}^n t^j/j! 𝓛_j^{quad} u)
    let full = spec.apply_multiplier(|xi| if xi == T::zero() { T::zero() } else { (t * (xi.ln() + xi.ln())).exp() }).0;
    let ledgers: Vec<_> = (1..=n).map(|j| alpha_coeffs::<T>(j, u.dim)).collect::<Result<_>>()?;
    let per_node: Vec<(T, T)> = nodes
        .par_iter()
        .map(|&i| {
            let x = u.node(i);
            let mut r = full[i] - u.values[i];
            let mut coef = T::one();
            for (j, led) in ledgers.iter().enumerate() {
                coef = coef * t / T::count(j + 1);
                r = r - coef * apply_L_with(led, u, &x, cfg)?.value;
            }
            Ok((exact[i].abs(), r.abs()))
        })
        .collect::<Result<_>>()?;
    let a = per_node.iter().fold(T::zero(), |m, p| m.max(p.0));
    let b = per_node.iter().fold(T::zero(), |m, p| m.max(p.1));
    Ok((b - a).abs() / a)
}

/// (−8x³ + 12x)e^{−x²}, times e^{−y²} in 2D, on the default spectral box.
pub fn default_bump<T: Real>(dim: usize) -> Result<GridFunction<T>> {
    default_grid(dim, |p: &[T]| {
        let x = p[0];
        let mut v = (T::lit(12.0) * x - T::lit(8.0) * x * x * x) * (-x * x).exp();
        if p.len() > 1 {
            v = v * (-p[1] * p[1]).exp();
        }
        v
    })
}
