//! Kernel normalisations κ₁, κ₂ and the coefficient ledger α₀..α_m.
//!
//! Every κ-derivative is obtained from the Taylor series of ln κ₁ at s = 0,
//! whose coefficients are polygamma values at half-integers, followed by
//! power-series exponentiation. The direct Gamma evaluation in [`kappa1`] is
//! an independent path and is what the tests differentiate numerically.

pub mod special;

use crate::error::{domain, Result};
use crate::scalar::Real;

pub use special::{
    gamma, ln_gamma, polygamma_at, polygamma_half, zeta, SpecialValues, EULER_GAMMA, MAX_POLYGAMMA_ORDER,
};

/// Largest Taylor order kept in a [`KappaSeries`].
pub const MAX_SERIES_ORDER: usize = 10;
/// Largest ledger order accepted by [`alpha_coeffs`].
pub const MAX_LEDGER_ORDER: usize = 8;

fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        return domain("dimension must be at least 1");
    }
    Ok(())
}

/// Half-width of the open interval on which κ₁ and κ₂ are used.
pub fn kappa_radius<T: Real>(n: usize) -> T {
    (T::count(n) / T::lit(2.0)).min(T::one())
}

/// κ₁(s) = 2^{−2s} π^{−N/2} Γ((N−2s)/2) / Γ(1+s), by direct Gamma evaluation.
pub fn kappa1<T: Real>(s: T, n: usize) -> Result<T> {
    check_dim(n)?;
    let r: T = kappa_radius(n);
    if !(s.abs() < r) {
        return domain(format!("kappa1 requires |s| < {r}, got s = {s}"));
    }
    let two = T::lit(2.0);
    let nf = T::count(n);
    let log =
        -(two * s) * T::LN_2() - nf / two * T::PI().ln() + ln_gamma((nf - two * s) / two)? - ln_gamma(T::one() + s)?;
    Ok(log.exp())
}

/// κ₂(s) = κ₁(s) / κ₁(0).
pub fn kappa2<T: Real>(s: T, n: usize) -> Result<T> {
    Ok(kappa1(s, n)? / kappa1(T::zero(), n)?)
}

/// Riesz-kernel normalisation κ_{N,s} = s·κ₁(s).
pub fn kappa_ns<T: Real>(s: T, n: usize) -> Result<T> {
    Ok(kappa1(s, n)? * s)
}

/// Fractional-Laplacian constant c_{N,s} = s·κ₁(−s).
pub fn frac_const<T: Real>(s: T, n: usize) -> Result<T> {
    Ok(kappa1(-s, n)? * s)
}

/// c_{N,s} = 2^{2s} π^{−N/2} s Γ((N+2s)/2) / Γ(1−s), valid for all s ∈ (0, 1).
pub fn frac_const_direct<T: Real>(s: T, n: usize) -> Result<T> {
    check_dim(n)?;
    if !(s > T::zero() && s < T::one()) {
        return domain(format!("c_(N,s) requires s in (0,1), got {s}"));
    }
    let two = T::lit(2.0);
    let nf = T::count(n);
    let log = two * s * T::LN_2() - nf / two * T::PI().ln() + ln_gamma((nf + two * s) / two)? - ln_gamma(T::one() - s)?;
    Ok(s * log.exp())
}

/// Surface area of the unit sphere, ω_N = 2π^{N/2}/Γ(N/2).
pub fn omega_n<T: Real>(n: usize) -> Result<T> {
    check_dim(n)?;
    let nf = T::count(n);
    let two = T::lit(2.0);
    Ok(two * (nf / two * T::PI().ln() - ln_gamma(nf / two)?).exp())
}

/// c_N = κ₁(0) = π^{−N/2} Γ(N/2).
pub fn c_n<T: Real>(n: usize) -> Result<T> {
    kappa1(T::zero(), n)
}

/// ρ_N = 2 ln 2 + ψ(N/2) − γ.
pub fn rho<T: Real>(n: usize) -> Result<T> {
    check_dim(n)?;
    let ln2 = T::LN_2();
    Ok(ln2 + ln2 + polygamma_half::<T>(0, n)? - T::lit(EULER_GAMMA))
}

/// Taylor coefficients of κ₁ and κ₂ at s = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct KappaSeries<T> {
    pub dim: usize,
    pub order: usize,
    /// κ₁^{(j)}(0)/j!
    pub kappa1_coeffs: Vec<T>,
    /// κ₂^{(j)}(0)/j!
    pub kappa2_coeffs: Vec<T>,
}

impl<T: Real> KappaSeries<T> {
    /// κ₁^{(j)}(0).
    pub fn kappa1_derivative(&self, j: usize) -> T {
        self.kappa1_coeffs[j] * factorial(j)
    }

    /// κ₂^{(j)}(0).
    pub fn kappa2_derivative(&self, j: usize) -> T {
        self.kappa2_coeffs[j] * factorial(j)
    }
}

pub(crate) fn factorial<T: Real>(k: usize) -> T {
    (1..=k).fold(T::one(), |acc, i| acc * T::count(i))
}

pub(crate) fn binomial<T: Real>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(T::one(), |acc, i| acc * T::count(n - i) / T::count(i + 1))
}

/// exp of a power series with zero constant term: b₀ = 1, k·b_k = Σ i·a_i·b_{k−i}.
pub fn exp_series<T: Real>(a: &[T]) -> Vec<T> {
    let mut b = Vec::with_capacity(a.len());
    if a.is_empty() {
        return b;
    }
    b.push(a[0].exp());
    for k in 1..a.len() {
        let mut acc = T::zero();
        for i in 1..=k {
            acc = acc + T::count(i) * a[i] * b[k - i];
        }
        b.push(acc / T::count(k));
    }
    b
}

/// Taylor coefficients of ln κ₁ at 0, without the constant term (set to 0).
fn log_kappa1_series<T: Real>(n: usize, order: usize) -> Result<Vec<T>> {
    let mut a = vec![T::zero(); order + 1];
    if order >= 1 {
        a[1] = -rho::<T>(n)?;
    }
    for (k, ak) in a.iter_mut().enumerate().skip(2) {
        let sign = if k % 2 == 0 { T::one() } else { -T::one() };
        let d = sign * polygamma_half::<T>(k - 1, n)? - polygamma_half::<T>(k - 1, 2)?;
        *ak = d / factorial::<T>(k);
    }
    Ok(a)
}

/// Taylor series of κ₁ and κ₂ at 0 up to order `m` (≤ 10).
pub fn kappa_series<T: Real>(n: usize, m: usize) -> Result<KappaSeries<T>> {
    check_dim(n)?;
    if m > MAX_SERIES_ORDER {
        return domain(format!("series order {m} exceeds {MAX_SERIES_ORDER}"));
    }
    let a = log_kappa1_series::<T>(n, m)?;
    let kappa2_coeffs = exp_series(&a);
    let k0 = kappa1(T::zero(), n)?;
    let kappa1_coeffs = kappa2_coeffs.iter().map(|&b| b * k0).collect();
    Ok(KappaSeries { dim: n, order: m, kappa1_coeffs, kappa2_coeffs })
}

/// Coefficients α₀..α_m expressing 𝓛_m = Σ α_j 𝓚_j.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffLedger<T> {
    pub dim: usize,
    pub m: usize,
    pub alpha: Vec<T>,
    pub rho: T,
    pub series: KappaSeries<T>,
}

impl<T: Real> CoeffLedger<T> {
    /// c_N = κ₁(0).
    pub fn c_n(&self) -> T {
        self.series.kappa1_coeffs[0]
    }

    /// Largest |α_j|, the natural scale for kernel-sum tolerances.
    pub fn alpha_scale(&self) -> T {
        self.alpha.iter().fold(T::zero(), |acc, a| acc.max(a.abs()))
    }
}

/// Builds the ledger α₀ = (−1)^m κ₂^{(m)}(0),
/// α_j = m (−1)^{m+j} C(m−1, j−1) κ₁^{(m−j)}(0).
pub fn alpha_coeffs<T: Real>(m: usize, n: usize) -> Result<CoeffLedger<T>> {
    if m == 0 || m > MAX_LEDGER_ORDER {
        return domain(format!("ledger order must be in 1..={MAX_LEDGER_ORDER}, got {m}"));
    }
    let series = kappa_series::<T>(n, m)?;
    let sign = |p: usize| if p.is_multiple_of(2) { T::one() } else { -T::one() };
    let mut alpha = Vec::with_capacity(m + 1);
    alpha.push(sign(m) * series.kappa2_derivative(m));
    for j in 1..=m {
        let v = T::count(m) * sign(m + j) * binomial::<T>(m - 1, j - 1) * series.kappa1_derivative(m - j);
        alpha.push(v);
    }
    Ok(CoeffLedger { dim: n, m, alpha, rho: rho(n)?, series })
}
