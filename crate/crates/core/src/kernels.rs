//! Radial kernels q_n, k_n = 1_{B₁} q_n, j_n = 1_{ℝ^N∖B₁} q_n, the combined
//! kernel h_m, and closed-form cell integrals in one dimension.
//!
//! In one dimension q_n(t) = g_n(t) = t^{−1}(−2 ln t)^{n−1}. With L = −ln t,
//!
//! * G1(t) = −(−2 ln t)^n/(2n) satisfies G1′ = g_n and G1(1) = 0;
//! * G2(t) = −(2^{n−1}/n)·t·Σ_{k=0}^{n} (n!/k!) L^k satisfies G2′ = G1, G2(0) = 0.
//!
//! Every one-dimensional cell integral is a second difference of G2 (or of
//! its cut-off variants), which keeps Galerkin entries exact.

use crate::coeffs::{factorial, omega_n, CoeffLedger};
use crate::domain::Interval;
use crate::error::{domain, precondition, Error, Result};
use crate::scalar::Real;

/// Identifies the kernel family q_n in dimension N.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KernelSpec {
    pub n: usize,
    pub dim: usize,
}

impl KernelSpec {
    pub fn new(n: usize, dim: usize) -> Result<Self> {
        if n == 0 {
            return domain("kernel order n must be at least 1");
        }
        if dim == 0 {
            return domain("dimension must be at least 1");
        }
        Ok(Self { n, dim })
    }
}

fn check_t<T: Real>(t: T) -> Result<()> {
    if !(t > T::zero()) {
        return domain(format!("kernel argument must be positive, got {t}"));
    }
    Ok(())
}

/// (−2 ln t)^p with p = 0 giving 1 even at t = 1.
#[inline]
pub fn log_power<T: Real>(t: T, p: usize) -> T {
    (-(t.ln() + t.ln())).powi(p as i32)
}

/// q_n(t) = t^{−N}(−2 ln t)^{n−1}.
pub fn q_eval<T: Real>(spec: KernelSpec, t: T) -> Result<T> {
    check_t(t)?;
    Ok(t.powi(-(spec.dim as i32)) * log_power(t, spec.n - 1))
}

/// k_n(t) = q_n(t)·1_{t<1}.
pub fn k_eval<T: Real>(spec: KernelSpec, t: T) -> Result<T> {
    check_t(t)?;
    Ok(if t < T::one() { q_eval(spec, t)? } else { T::zero() })
}

/// j_n(t) = q_n(t)·1_{t>1}.
pub fn j_eval<T: Real>(spec: KernelSpec, t: T) -> Result<T> {
    check_t(t)?;
    Ok(if t > T::one() { q_eval(spec, t)? } else { T::zero() })
}

/// ∫_{a<|z|<b} q_n(|z|) dz = ω_N[(−2 ln a)^n − (−2 ln b)^n]/(2n), for 0 < a ≤ b.
pub fn shell_integral<T: Real>(spec: KernelSpec, a: T, b: T) -> Result<T> {
    check_t(a)?;
    if b < a {
        return domain(format!("shell needs a <= b, got a = {a}, b = {b}"));
    }
    let two_n = T::count(2 * spec.n);
    Ok(omega_n::<T>(spec.dim)? * (log_power(a, spec.n) - log_power(b, spec.n)) / two_n)
}

/// ∫_{a<|z|<1} q_n(|z|) dz = ω_N(−2 ln a)^n/(2n).
pub fn tail_integral<T: Real>(spec: KernelSpec, a: T) -> Result<T> {
    if !(a > T::zero() && a < T::one()) {
        return domain(format!("tail_integral needs a in (0,1), got {a}"));
    }
    shell_integral(spec, a, T::one())
}

/// ∫_{1<|z|<R} q_n(|z|) dz = (−1)^{n−1} ω_N(2 ln R)^n/(2n).
pub fn outer_integral<T: Real>(spec: KernelSpec, r: T) -> Result<T> {
    if !(r > T::one()) {
        return domain(format!("outer_integral needs R > 1, got {r}"));
    }
    shell_integral(spec, T::one(), r)
}

/// G1(t) = −(−2 ln t)^n/(2n).
pub fn first_antiderivative<T: Real>(n: usize, t: T) -> T {
    -log_power(t, n) / T::count(2 * n)
}

/// G2(t) = −(2^{n−1}/n)·t·Σ_{k=0}^{n} (n!/k!)(−ln t)^k, with G2(0) = 0.
pub fn second_antiderivative<T: Real>(n: usize, t: T) -> T {
    if t <= T::zero() {
        return T::zero();
    }
    let l = -t.ln();
    // Horner for Σ_{k≤n} L^k/k!
    let mut acc = T::one();
    for k in (1..=n).rev() {
        acc = acc * l / T::count(k) + T::one();
    }
    let nf: T = factorial(n);
    let scale = T::lit(2.0).powi(n as i32 - 1) / T::count(n);
    -scale * t * acc * nf
}

/// One-dimensional kernel g_n(t)·1_{0<t<c} with its antiderivatives.
#[derive(Debug, Clone, Copy)]
pub struct CutoffKernel1d<T> {
    pub n: usize,
    pub cutoff: T,
    g1_c: T,
    g2_c: T,
}

impl<T: Real> CutoffKernel1d<T> {
    pub fn new(n: usize, cutoff: T) -> Result<Self> {
        if n == 0 {
            return domain("kernel order n must be at least 1");
        }
        if !(cutoff > T::zero()) {
            return domain("kernel cutoff must be positive");
        }
        Ok(Self { n, cutoff, g1_c: first_antiderivative(n, cutoff), g2_c: second_antiderivative(n, cutoff) })
    }

    /// Second antiderivative of g_n·1_{(0,c)}, affine beyond the cutoff.
    pub fn g2(&self, t: T) -> T {
        if t <= self.cutoff {
            second_antiderivative(self.n, t)
        } else {
            self.g2_c + self.g1_c * (t - self.cutoff)
        }
    }

    /// ∫_A ∫_B g(|x−y|) for A entirely left of B (touching allowed).
    pub fn ordered_pair(&self, a: Interval<T>, b: Interval<T>) -> T {
        self.g2(b.hi - a.lo) - self.g2(b.hi - a.hi) - self.g2(b.lo - a.lo) + self.g2(b.lo - a.hi)
    }

    /// ∫_0^h ∫_h^∞ g(y − x) dy dx: interaction of a cell with one side of its
    /// complement.
    pub fn one_side(&self, h: T) -> T {
        h * self.g1_c - self.g2(h)
    }

    /// ∫_C ∫_{ℝ∖C} g(|x−y|) for a cell of length h.
    pub fn self_energy(&self, h: T) -> T {
        let e = self.one_side(h);
        e + e
    }
}

fn ordered<T: Real>(a: Interval<T>, b: Interval<T>) -> Result<(Interval<T>, Interval<T>)> {
    if a.hi <= b.lo {
        Ok((a, b))
    } else if b.hi <= a.lo {
        Ok((b, a))
    } else {
        precondition("cells overlap partially; mesh cells must be identical or disjoint")
    }
}

fn check_cells<T: Real>(spec: KernelSpec, a: Interval<T>, b: Interval<T>) -> Result<()> {
    if spec.dim != 1 {
        return domain("closed-form cell integrals exist only in dimension 1");
    }
    if !(a.len() > T::zero() && b.len() > T::zero()) {
        return domain("cells need positive length");
    }
    Ok(())
}

/// ∫_A ∫_B k_n(x−y) dx dy for disjoint (possibly touching) cells. For
/// `A == B` the divergent diagonal is replaced by the self-energy
/// ∫_C ∫_{ℝ∖C} k_n(x−y) dy dx.
pub fn cell_pair_integral_1d<T: Real>(spec: KernelSpec, a: Interval<T>, b: Interval<T>) -> Result<T> {
    check_cells(spec, a, b)?;
    let k = CutoffKernel1d::new(spec.n, T::one())?;
    if a == b {
        return Ok(k.self_energy(a.len()));
    }
    let (l, r) = ordered(a, b)?;
    Ok(k.ordered_pair(l, r))
}

/// Second antiderivative of g_n·1_{t>1}, vanishing on (0, 1].
fn g2_outer<T: Real>(n: usize, t: T) -> T {
    if t <= T::one() {
        T::zero()
    } else {
        second_antiderivative(n, t) - second_antiderivative(n, T::one())
    }
}

/// ∫_A ∫_B j_n(x−y) dx dy for disjoint cells (zero unless some pair of
/// points is more than unit distance apart).
pub fn outer_pair_integral_1d<T: Real>(spec: KernelSpec, a: Interval<T>, b: Interval<T>) -> Result<T> {
    check_cells(spec, a, b)?;
    if a == b {
        if a.len() <= T::one() {
            return Ok(T::zero());
        }
        // ∫_C∫_C j_n: both orderings of the ordered-pair formula on the same cell
        let n = spec.n;
        let h = a.len();
        let g = |t: T| g2_outer(n, t);
        return Ok(g(h) + g(h) - g(T::zero()) - g(T::zero()));
    }
    let (l, r) = ordered(a, b)?;
    let n = spec.n;
    let g = |t: T| g2_outer(n, t);
    Ok(g(r.hi - l.lo) - g(r.hi - l.hi) - g(r.lo - l.lo) + g(r.lo - l.hi))
}

/// h_m(t) = Σ_{j=1}^{m} α_j (−2 ln t)^{j−1} with its positivity and
/// monotonicity radii.
#[derive(Debug, Clone)]
pub struct CombinedKernel<T> {
    pub ledger: CoeffLedger<T>,
    /// p(τ) = Σ_{j=1}^{m} α_j τ^{j−1}, lowest degree first
    pub poly: Vec<T>,
    pub r0: T,
    pub rm: T,
}

/// Upper end of the τ-range searched for roots.
pub const TAU_MAX: f64 = 200.0;

impl<T: Real> CombinedKernel<T> {
    pub fn new(ledger: CoeffLedger<T>) -> Result<Self> {
        if ledger.m == 0 {
            return domain("combined kernel needs m >= 1");
        }
        let poly: Vec<T> = ledger.alpha[1..].to_vec();
        if poly.iter().all(|c| *c == T::zero()) {
            return domain("combined kernel polynomial vanishes identically");
        }
        let tau_max = T::lit(TAU_MAX);
        let half = T::lit(0.5);
        let radius = |roots: &[T]| -> T {
            roots
                .iter()
                .copied()
                .fold(None, |m: Option<T>, r| Some(m.map_or(r, |m| m.max(r))))
                .map_or(T::one(), |tau| (-tau * half).exp().min(T::one()))
        };
        let r0 = radius(&real_roots(&poly, T::zero(), tau_max));
        let dp = derivative(&poly);
        let rm =
            if dp.iter().all(|c| *c == T::zero()) { r0 } else { radius(&real_roots(&dp, T::zero(), tau_max)).min(r0) };
        Ok(Self { ledger, poly, r0, rm })
    }

    /// p(τ).
    pub fn p(&self, tau: T) -> T {
        horner(&self.poly, tau)
    }

    /// h_m(t) = p(−2 ln t).
    pub fn h(&self, t: T) -> T {
        self.p(-(t.ln() + t.ln()))
    }

    /// Checks h_m > 0 on `samples` points of (0, r₀) and h_m non-increasing
    /// on (0, r_m), returning a description of the first violation.
    pub fn verify(&self, samples: usize) -> Result<()> {
        let mut prev: Option<T> = None;
        for i in 1..=samples {
            // geometric sampling concentrates points near 0
            let frac = T::count(i) / T::count(samples + 1);
            let t = self.r0 * frac;
            let h = self.h(t);
            if !(h > T::zero()) {
                return Err(Error::Numerical(format!("h_m({t}) = {h} is not positive below r0")));
            }
            if t < self.rm {
                if let Some(p) = prev {
                    let slack = T::lit(1e-12) * self.ledger.alpha_scale().max(T::one());
                    if h > p + slack {
                        return Err(Error::Numerical(format!("h_m increases at t = {t}")));
                    }
                }
                prev = Some(h);
            }
        }
        Ok(())
    }
}

pub fn combined_kernel<T: Real>(ledger: &CoeffLedger<T>) -> Result<CombinedKernel<T>> {
    CombinedKernel::new(ledger.clone())
}

fn horner<T: Real>(c: &[T], x: T) -> T {
    c.iter().rev().fold(T::zero(), |acc, &a| acc * x + a)
}

fn derivative<T: Real>(c: &[T]) -> Vec<T> {
    c.iter().enumerate().skip(1).map(|(k, &a)| a * T::count(k)).collect()
}

/// Real roots of the polynomial in (lo, hi], isolated between consecutive
/// critical points and refined by bisection.
pub fn real_roots<T: Real>(c: &[T], lo: T, hi: T) -> Vec<T> {
    let mut c = c.to_vec();
    while c.len() > 1 && *c.last().unwrap() == T::zero() {
        c.pop();
    }
    match c.len() {
        0 | 1 => return Vec::new(),
        2 => {
            let r = -c[0] / c[1];
            return if r > lo && r <= hi { vec![r] } else { Vec::new() };
        }
        _ => {}
    }
    let scale = c.iter().fold(T::zero(), |m, a| m.max(a.abs()));
    let mut pts = vec![lo];
    pts.extend(real_roots(&derivative(&c), lo, hi));
    pts.push(hi);
    let tol = T::epsilon() * T::lit(64.0) * scale;
    let mut roots: Vec<T> = Vec::new();
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (horner(&c, a), horner(&c, b));
        if b > lo && fb.abs() <= tol * (T::one() + b.abs()).powi(c.len() as i32 - 1) {
            roots.push(b);
            continue;
        }
        if fa.signum() != fb.signum() && fa != T::zero() {
            let (mut x0, mut x1, mut f0) = (a, b, fa);
            for _ in 0..200 {
                let mid = (x0 + x1) * T::lit(0.5);
                if mid <= x0 || mid >= x1 {
                    break;
                }
                let fm = horner(&c, mid);
                if fm == T::zero() {
                    x0 = mid;
                    x1 = mid;
                    break;
                }
                if fm.signum() == f0.signum() {
                    x0 = mid;
                    f0 = fm;
                } else {
                    x1 = mid;
                }
            }
            roots.push((x0 + x1) * T::lit(0.5));
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots.dedup_by(|a, b| (*a - *b).abs() <= T::epsilon() * T::lit(16.0) * (T::one() + b.abs()));
    roots
}
