//! Pointwise evaluation of 𝓚_n, 𝓛_m, (−Δ)^s and Φ_s∗ by singular quadrature.
//!
//! Everything is integrated in polar form around x: in 1D over the two
//! directions ±1, in 2D over `angles` equally spaced directions. Opposite
//! directions are processed as a pair, so the inner integrand is the
//! symmetric second difference 2u(x) − u(x+rθ) − u(x−rθ), which is O(r²).
//!
//! Along a ray the interpolant is polynomial between grid-line crossings, so
//! every crossing, the unit radius and the box exit are breakpoints. The
//! first segment is split into dyadic panels down to the inner cut δ; the
//! discarded ball B_δ(x) is accounted for analytically in the report.

use rayon::prelude::*;

use crate::coeffs::{alpha_coeffs, frac_const_direct, kappa2, kappa_ns, omega_n, CoeffLedger};
use crate::domain::DomainSpec;
use crate::error::{domain, precondition, Result};
use crate::grid::GridFunction;
use crate::kernels::{first_antiderivative, log_power};
use crate::quadrature::GaussLegendre;
use crate::scalar::Real;

/// Value of a pointwise evaluation together with its error budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalReport<T> {
    pub value: T,
    /// analytic bound on the discarded |y − x| < δ contribution
    pub truncation_bound: T,
    /// floating-point accumulation bound (a few ulps of Σ|terms|)
    pub rounding_bound: T,
    pub quadrature_panels: usize,
}

impl<T: Real> EvalReport<T> {
    /// truncation_bound + rounding_bound.
    pub fn error_budget(&self) -> T {
        self.truncation_bound + self.rounding_bound
    }
}

/// Quadrature settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointwiseConfig<T> {
    /// inner radius δ below which the integrand is bounded analytically
    pub inner_cut: T,
    /// number of directions in 2D (even)
    pub angles: usize,
    /// Gauss–Legendre points per grid segment
    pub segment_order: usize,
    /// Gauss–Legendre points per dyadic panel near r = 0
    pub panel_order: usize,
    /// cap on the number of dyadic panels
    pub max_panels: usize,
}

impl<T: Real> Default for PointwiseConfig<T> {
    fn default() -> Self {
        Self { inner_cut: T::lit(1e-8), angles: 64, segment_order: 8, panel_order: 16, max_panels: 40 }
    }
}

/// Quadrature nodes along one paired ray.
struct RayRule<T> {
    r: Vec<T>,
    w: Vec<T>,
    panels: usize,
}

struct Rules<T> {
    segment: GaussLegendre<T>,
    panel: GaussLegendre<T>,
}

impl<T: Real> Rules<T> {
    fn new(cfg: &PointwiseConfig<T>) -> Self {
        Self { segment: GaussLegendre::new(cfg.segment_order), panel: GaussLegendre::new(cfg.panel_order) }
    }
}

/// Half of the direction set with per-direction weights; each entry stands
/// for the pair (θ, −θ).
fn directions<T: Real>(dim: usize, angles: usize) -> Vec<(Vec<T>, T)> {
    if dim == 1 {
        return vec![(vec![T::one()], T::one())];
    }
    let pairs = (angles / 2).max(1);
    let w = T::PI() / T::count(pairs);
    (0..pairs)
        .map(|k| {
            let phi = T::PI() * T::count(k) / T::count(pairs);
            (vec![phi.cos(), phi.sin()], w)
        })
        .collect()
}

/// Distances r > 0 at which x + rθ crosses a grid line, plus the box exit.
fn crossings<T: Real>(u: &GridFunction<T>, x: &[T], theta: &[T], out: &mut Vec<T>) {
    let hi = u.box_hi();
    let mut exit = T::infinity();
    let mut entry = T::zero();
    for k in 0..u.dim {
        if theta[k] == T::zero() {
            continue;
        }
        let a = (u.origin[k] - x[k]) / theta[k];
        let b = (hi[k] - x[k]) / theta[k];
        exit = exit.min(a.max(b));
        entry = entry.max(a.min(b));
    }
    if !(exit > entry) || exit <= T::zero() {
        return;
    }
    out.push(exit);
    for k in 0..u.dim {
        if theta[k] == T::zero() {
            continue;
        }
        let h = u.spacing[k];
        let pos = (x[k] - u.origin[k]) / h;
        // lines i with r = (origin + i h − x)/θ in (0, exit)
        let (lo_i, hi_i) = (0isize, u.shape[k] as isize - 1);
        let start =
            if theta[k] > T::zero() { pos.floor().to_isize().unwrap_or(0) } else { pos.ceil().to_isize().unwrap_or(0) };
        let step: isize = if theta[k] > T::zero() { 1 } else { -1 };
        let mut i = start;
        loop {
            if i < lo_i || i > hi_i {
                break;
            }
            let r = (u.origin[k] + h * T::lit(i as f64) - x[k]) / theta[k];
            if r >= exit {
                break;
            }
            if r > T::zero() {
                out.push(r);
            }
            i += step;
        }
    }
}

fn build_rule<T: Real>(
    u: &GridFunction<T>,
    x: &[T],
    theta: &[T],
    extra: &[T],
    cfg: &PointwiseConfig<T>,
    rules: &Rules<T>,
) -> RayRule<T> {
    let mut br = Vec::new();
    crossings(u, x, theta, &mut br);
    let neg: Vec<T> = theta.iter().map(|&t| -t).collect();
    crossings(u, x, &neg, &mut br);
    br.push(T::one());
    br.extend(extra.iter().copied().filter(|&r| r > T::zero() && r.is_finite()));
    br.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let tiny = T::epsilon() * T::lit(8.0);
    br.dedup_by(|a, b| (*a - *b).abs() <= tiny * (T::one() + b.abs()));
    let end = br.iter().fold(T::zero(), |m, &r| m.max(r));
    let mut rule = RayRule { r: Vec::new(), w: Vec::new(), panels: 0 };
    let first = br.iter().copied().find(|&r| r > cfg.inner_cut).unwrap_or(end);
    // dyadic panels on (δ, first)
    let mut upper = first;
    let two = T::lit(2.0);
    for _ in 0..cfg.max_panels {
        if upper <= cfg.inner_cut {
            break;
        }
        let lower = (upper / two).max(cfg.inner_cut);
        for (r, w) in rules.panel.mapped(lower, upper) {
            rule.r.push(r);
            rule.w.push(w);
        }
        rule.panels += 1;
        upper = lower;
    }
    let mut prev = first;
    for &b in br.iter().filter(|&&r| r > first) {
        if b > end {
            break;
        }
        for (r, w) in rules.segment.mapped(prev, b) {
            rule.r.push(r);
            rule.w.push(w);
        }
        rule.panels += 1;
        prev = b;
    }
    rule
}

/// Σ over direction pairs of w_θ Σ_r w_r f(r, θ, u(x+rθ), u(x−rθ)), together
/// with the panel count and Σ|terms| for the rounding budget.
fn radial_sum<T: Real, F>(
    u: &GridFunction<T>,
    x: &[T],
    cfg: &PointwiseConfig<T>,
    extra: &dyn Fn(&[T]) -> Vec<T>,
    f: F,
) -> (T, usize, T)
where
    F: Fn(T, &[T], T, T) -> T,
{
    let rules = Rules::new(cfg);
    let mut total = T::zero();
    let mut abs = T::zero();
    let mut panels = 0;
    let mut yp = vec![T::zero(); u.dim];
    let mut ym = vec![T::zero(); u.dim];
    for (theta, wt) in directions::<T>(u.dim, cfg.angles) {
        let rule = build_rule(u, x, &theta, &extra(&theta), cfg, &rules);
        panels += rule.panels;
        let mut acc = T::zero();
        for (&r, &w) in rule.r.iter().zip(&rule.w) {
            for k in 0..u.dim {
                yp[k] = x[k] + r * theta[k];
                ym[k] = x[k] - r * theta[k];
            }
            let term = w * f(r, &theta, u.eval(&yp), u.eval(&ym));
            acc = acc + term;
            abs = abs + term.abs() * wt;
        }
        total = total + wt * acc;
    }
    (total, panels, abs)
}

fn check_point<T: Real>(u: &GridFunction<T>, x: &[T]) -> Result<()> {
    if x.len() != u.dim {
        return precondition(format!("point has {} coordinates, grid dimension is {}", x.len(), u.dim));
    }
    if !u.in_box(x) {
        return precondition("evaluation point lies outside the grid box");
    }
    Ok(())
}

fn rounding<T: Real>(abs: T, extra: T) -> T {
    T::epsilon() * T::lit(64.0) * (abs + extra.abs())
}

/// Γ(n, x) for integer n ≥ 1.
fn upper_gamma_int<T: Real>(n: usize, x: T) -> T {
    let mut term = T::one();
    let mut sum = T::one();
    for k in 1..n {
        term = term * x / T::count(k);
        sum = sum + term;
    }
    let fact = (1..n).fold(T::one(), |a, k| a * T::count(k));
    fact * (-x).exp() * sum
}

/// ∫_0^δ r^{a−1}(−2 ln r)^{n−1} dr = 2^{n−1} Γ(n, a·ln(1/δ))/a^n.
fn log_power_moment<T: Real>(n: usize, a: T, delta: T) -> T {
    let tau = -delta.ln();
    T::lit(2.0).powi(n as i32 - 1) * upper_gamma_int(n, a * tau) / a.powi(n as i32)
}

/// Bound on the discarded ball for the kernel r^{-N}(−2 ln r)^{n−1}: the
/// smaller of the Hölder estimate and the second-difference estimate.
fn k_truncation<T: Real>(n: usize, u: &GridFunction<T>, delta: T, curvature: T) -> Result<T> {
    let w = omega_n::<T>(u.dim)?;
    let alpha = u.holder_exponent;
    let holder = w * u.holder_constant * log_power_moment(n, alpha, delta);
    let second = w * T::lit(0.5) * curvature * log_power_moment(n, T::lit(2.0), delta);
    Ok(holder.min(second))
}

/// 𝓚_n u(x) = ∫_{B₁(x)} (u(x) − u(y)) q_n(|x−y|) dy − ∫_{ℝ^N∖B₁(x)} u(y) q_n(|x−y|) dy.
#[allow(non_snake_case)]
pub fn apply_K<T: Real>(n: usize, u: &GridFunction<T>, x: &[T]) -> Result<EvalReport<T>> {
    apply_K_with(n, u, x, &PointwiseConfig::default())
}

#[allow(non_snake_case)]
pub fn apply_K_with<T: Real>(
    n: usize,
    u: &GridFunction<T>,
    x: &[T],
    cfg: &PointwiseConfig<T>,
) -> Result<EvalReport<T>> {
    if n == 0 {
        return Ok(EvalReport {
            value: u.eval(x),
            truncation_bound: T::zero(),
            rounding_bound: T::zero(),
            quadrature_panels: 0,
        });
    }
    let mut alpha = vec![T::zero(); n + 1];
    alpha[n] = T::one();
    kernel_sum(&alpha, u, x, cfg)
}

/// Σ_j α_j 𝓚_j u(x) with 𝓚₀ = identity, in a single radial pass.
fn kernel_sum<T: Real>(alpha: &[T], u: &GridFunction<T>, x: &[T], cfg: &PointwiseConfig<T>) -> Result<EvalReport<T>> {
    check_point(u, x)?;
    let u0 = u.eval(x);
    let two = T::lit(2.0);
    let g = |r: T| {
        let tau = -(r.ln() + r.ln());
        // Σ_{n≥1} α_n τ^{n−1} by Horner, divided by r
        let mut acc = T::zero();
        for a in alpha[1..].iter().rev() {
            acc = acc * tau + *a;
        }
        acc / r
    };
    let (sum, panels, abs) = radial_sum(u, x, cfg, &|_| Vec::new(), |r, _, up, um| {
        if r < T::one() {
            (two * u0 - up - um) * g(r)
        } else {
            -(up + um) * g(r)
        }
    });
    let curvature = u.curvature_bound();
    let mut trunc = T::zero();
    for (n, a) in alpha.iter().enumerate().skip(1) {
        if *a != T::zero() {
            trunc = trunc + a.abs() * k_truncation(n, u, cfg.inner_cut, curvature)?;
        }
    }
    let value = alpha[0] * u0 + sum;
    Ok(EvalReport { value, truncation_bound: trunc, rounding_bound: rounding(abs, value), quadrature_panels: panels })
}

/// 𝓛_m u(x) = Σ_{j=0}^{m} α_j 𝓚_j u(x).
#[allow(non_snake_case)]
pub fn apply_L<T: Real>(m: usize, u: &GridFunction<T>, x: &[T]) -> Result<EvalReport<T>> {
    let ledger = alpha_coeffs::<T>(m, u.dim)?;
    apply_L_with(&ledger, u, x, &PointwiseConfig::default())
}

#[allow(non_snake_case)]
pub fn apply_L_with<T: Real>(
    ledger: &CoeffLedger<T>,
    u: &GridFunction<T>,
    x: &[T],
    cfg: &PointwiseConfig<T>,
) -> Result<EvalReport<T>> {
    if ledger.dim != u.dim {
        return precondition("ledger dimension differs from grid dimension");
    }
    kernel_sum(&ledger.alpha, u, x, cfg)
}

/// 𝓛_m u at the given grid nodes, evaluated in parallel.
#[allow(non_snake_case)]
pub fn apply_L_nodes<T: Real>(
    ledger: &CoeffLedger<T>,
    u: &GridFunction<T>,
    nodes: &[usize],
    cfg: &PointwiseConfig<T>,
) -> Result<Vec<EvalReport<T>>> {
    nodes.par_iter().map(|&i| apply_L_with(ledger, u, &u.node(i), cfg)).collect()
}

/// (−Δ)^s u(x) = κ₂(−s) u(x) + c_{N,s}[∫_{B₁}(u(x) − u(y))|x−y|^{−N−2s} − ∫_{ℝ^N∖B₁} u(y)|x−y|^{−N−2s}].
pub fn frac_lap<T: Real>(s: T, u: &GridFunction<T>, x: &[T]) -> Result<EvalReport<T>> {
    frac_lap_with(s, u, x, &PointwiseConfig::default())
}

pub fn frac_lap_with<T: Real>(s: T, u: &GridFunction<T>, x: &[T], cfg: &PointwiseConfig<T>) -> Result<EvalReport<T>> {
    if !(s > T::zero() && s < T::one()) {
        return domain(format!("fractional order must lie in (0,1), got {s}"));
    }
    check_point(u, x)?;
    let c = frac_const_direct(s, u.dim)?;
    let w = omega_n::<T>(u.dim)?;
    let k2 = c * w / (s + s);
    let u0 = u.eval(x);
    let two = T::lit(2.0);
    let p = -(two * s) - T::one();
    let (sum, panels, abs) = radial_sum(u, x, cfg, &|_| Vec::new(), |r, _, up, um| {
        let k = r.powf(p);
        if r < T::one() {
            (two * u0 - up - um) * k
        } else {
            -(up + um) * k
        }
    });
    let delta = cfg.inner_cut;
    let alpha = u.holder_exponent;
    let mut trunc = c * w * T::lit(0.5) * u.curvature_bound() * delta.powf(two - two * s) / (two - two * s);
    if alpha > two * s {
        trunc = trunc.min(c * w * u.holder_constant * delta.powf(alpha - two * s) / (alpha - two * s));
    }
    let value = k2 * u0 + c * sum;
    Ok(EvalReport {
        value,
        truncation_bound: trunc,
        rounding_bound: rounding(abs * c, value),
        quadrature_panels: panels,
    })
}

/// (Φ_s∗u)(x) = κ₂(s)u(x) + κ_{N,s}[∫_{B₁}(u(y) − u(x))|x−y|^{2s−N} + ∫_{ℝ^N∖B₁} u(y)|x−y|^{2s−N}].
pub fn riesz<T: Real>(s: T, u: &GridFunction<T>, x: &[T]) -> Result<EvalReport<T>> {
    riesz_with(s, u, x, &PointwiseConfig::default())
}

pub fn riesz_with<T: Real>(s: T, u: &GridFunction<T>, x: &[T], cfg: &PointwiseConfig<T>) -> Result<EvalReport<T>> {
    let half_n = T::count(u.dim) / T::lit(2.0);
    if !(s > T::zero() && s < half_n) {
        return domain(format!("Riesz order must lie in (0, N/2) = (0, {half_n}), got {s}"));
    }
    check_point(u, x)?;
    let two = T::lit(2.0);
    let w = omega_n::<T>(u.dim)?;
    let (kns, k2) = if s < T::one() {
        (kappa_ns(s, u.dim)?, kappa2(s, u.dim)?)
    } else {
        return domain("Riesz order s >= 1 needs N >= 3, which the grids do not support");
    };
    let u0 = u.eval(x);
    let p = two * s - T::one();
    let (sum, panels, abs) = radial_sum(u, x, cfg, &|_| Vec::new(), |r, _, up, um| {
        let k = r.powf(p);
        if r < T::one() {
            (up + um - two * u0) * k
        } else {
            (up + um) * k
        }
    });
    let delta = cfg.inner_cut;
    let a = u.holder_exponent + two * s;
    let trunc = kns * w * u.holder_constant * delta.powf(a) / a;
    let value = k2 * u0 + kns * sum;
    Ok(EvalReport {
        value,
        truncation_bound: trunc,
        rounding_bound: rounding(abs * kns, value),
        quadrature_panels: panels,
    })
}

/// h_{m,Ω}(x) = ∫_{B₁(x)∖Ω} q_m(|x−y|) dy − ∫_{Ω∖B₁(x)} q_m(|x−y|) dy, exact
/// along each ray (exact overall in 1D).
pub fn regional_h<T: Real>(m: usize, x: &[T], omega: &DomainSpec<T>, angles: usize) -> Result<T> {
    let mut total = T::zero();
    let g1 = |r: T| first_antiderivative(m, r);
    for (theta, wt) in directions::<T>(omega.dim, angles) {
        for sign in [T::one(), -T::one()] {
            let dir: Vec<T> = theta.iter().map(|&t| t * sign).collect();
            let segs = omega.ray_intervals(x, &dir);
            if segs.first().is_none_or(|s| s.0 > T::zero()) {
                return precondition("regional representation needs x in the interior of Ω");
            }
            // ∫_{(0,1)∖I} g − ∫_{I∖(0,1)} g = [∫_0^1 g − ∫_I g] with the
            // divergent ∫_0 parts cancelling against the first segment
            let mut v = T::zero();
            for (k, &(a, b)) in segs.iter().enumerate() {
                let lo = if k == 0 { None } else { Some(a) };
                // ∫_a^b g = G1(b) − G1(a); for the first segment the lower limit cancels
                let gb = g1(b);
                let ga = lo.map_or(T::zero(), g1);
                let seg = gb - ga;
                v = v - seg;
            }
            // ∫_0^1 g with the same cancelled lower limit: G1(1) = 0
            v = v + g1(T::one());
            total = total + wt * v;
        }
    }
    Ok(total)
}

/// ∫_Ω (u(x) − u(y)) q_m dy − ∫_{ℝ^N∖Ω} u(y) q_m dy + h_{m,Ω}(x) u(x).
pub fn regional_repr<T: Real>(m: usize, u: &GridFunction<T>, x: &[T], omega: &DomainSpec<T>) -> Result<EvalReport<T>> {
    regional_repr_with(m, u, x, omega, &PointwiseConfig::default())
}

pub fn regional_repr_with<T: Real>(
    m: usize,
    u: &GridFunction<T>,
    x: &[T],
    omega: &DomainSpec<T>,
    cfg: &PointwiseConfig<T>,
) -> Result<EvalReport<T>> {
    if m == 0 {
        return domain("regional representation needs m >= 1");
    }
    if omega.dim != u.dim {
        return precondition("domain and grid dimensions differ");
    }
    check_point(u, x)?;
    if !omega.contains(x) {
        return precondition("regional representation needs x in Ω");
    }
    let h = regional_h(m, x, omega, cfg.angles)?;
    let u0 = u.eval(x);
    let breaks = |theta: &[T]| {
        let neg: Vec<T> = theta.iter().map(|&t| -t).collect();
        let mut v = Vec::new();
        for (a, b) in omega.ray_intervals(x, theta).into_iter().chain(omega.ray_intervals(x, &neg)) {
            v.push(a);
            v.push(b);
        }
        v
    };
    let mut y = vec![T::zero(); u.dim];
    let inside = |r: T, dir: &[T], sign: T, y: &mut Vec<T>| {
        for k in 0..u.dim {
            y[k] = x[k] + sign * r * dir[k];
        }
        omega.contains(y)
    };
    let cell = std::cell::RefCell::new(&mut y);
    let (sum, panels, abs) = radial_sum(u, x, cfg, &breaks, |r, theta, up, um| {
        let g = log_power(r, m - 1) / r;
        let mut yb = cell.borrow_mut();
        let ip = inside(r, theta, T::one(), &mut yb);
        let im = inside(r, theta, -T::one(), &mut yb);
        let fp = if ip { u0 - up } else { -up };
        let fm = if im { u0 - um } else { -um };
        (fp + fm) * g
    });
    let curvature = u.curvature_bound();
    let trunc = k_truncation(m, u, cfg.inner_cut, curvature)?;
    let value = sum + h * u0;
    Ok(EvalReport { value, truncation_bound: trunc, rounding_bound: rounding(abs, h * u0), quadrature_panels: panels })
}

/// ‖u‖_{L¹_{s,t}} = ∫ |u(x)|(1+|x|)^{−N−2s}(ln(e+|x|))^{t−1} dx by the
/// trapezoid rule on the grid.
pub fn weighted_l1_norm<T: Real>(u: &GridFunction<T>, s: T, t: T) -> T {
    let nf = T::count(u.dim);
    let e = T::E();
    (0..u.len()).fold(T::zero(), |acc, i| {
        let v = u.values[i].abs();
        if v == T::zero() {
            return acc;
        }
        let x = u.node(i);
        let norm = x.iter().fold(T::zero(), |a, &c| a + c * c).sqrt();
        let w = (T::one() + norm).powf(-nf - s - s) * (e + norm).ln().powf(t - T::one());
        acc + v * w * u.trapezoid_weight(i)
    })
}
