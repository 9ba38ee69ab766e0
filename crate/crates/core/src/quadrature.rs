//! Gauss–Legendre rules and a simple adaptive integrator built on them.

use crate::scalar::Real;

/// An n-point Gauss–Legendre rule on [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// Nodes by Newton iteration on P_n from the Chebyshev-like initial guess.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0f64; n];
        let mut weights = vec![0.0f64; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes: nodes.into_iter().map(T::lit).collect(), weights: weights.into_iter().map(T::lit).collect() }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// ∫_a^b f.
    pub fn integrate<F: FnMut(T) -> T>(&self, mut f: F, a: T, b: T) -> T {
        let half = (b - a) * T::lit(0.5);
        let mid = (a + b) * T::lit(0.5);
        let mut acc = T::zero();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + w * f(mid + half * x);
        }
        acc * half
    }

    /// Mapped nodes and weights on [a, b].
    pub fn mapped(&self, a: T, b: T) -> impl Iterator<Item = (T, T)> + '_ {
        let half = (b - a) * T::lit(0.5);
        let mid = (a + b) * T::lit(0.5);
        self.nodes.iter().zip(&self.weights).map(move |(&x, &w)| (mid + half * x, w * half))
    }
}

/// (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Globally adaptive bisection with a 15-point Gauss–Legendre rule; an
/// interval is accepted once the rule and its two-halves refinement agree to
/// within `abs_tol + rel_tol·|value|` (scaled by the interval's share).
pub fn adaptive<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> f64 {
    if !(a.is_finite() && b.is_finite()) {
        return f64::NAN;
    }
    let rule = GaussLegendre::<f64>::new(15);
    let whole = rule.integrate(&mut f, a, b);
    let mut total = 0.0;
    let mut stack = vec![(a, b, whole, 0usize)];
    let len = (b - a).abs().max(f64::MIN_POSITIVE);
    while let Some((lo, hi, est, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = rule.integrate(&mut f, lo, mid);
        let right = rule.integrate(&mut f, mid, hi);
        let refined = left + right;
        let share = ((hi - lo) / len).abs();
        let tol = (abs_tol + rel_tol * refined.abs().max(whole.abs() * share)) * share.sqrt();
        // below this the difference is rounding noise and splitting cannot help
        let floor = 64.0 * f64::EPSILON * (left.abs() + right.abs());
        if (refined - est).abs() <= tol.max(floor) || depth >= 60 {
            total += refined;
        } else {
            stack.push((lo, mid, left, depth + 1));
            stack.push((mid, hi, right, depth + 1));
        }
    }
    total
}

/// [`adaptive`] over consecutive breakpoints.
pub fn adaptive_pieces<F: FnMut(f64) -> f64>(mut f: F, breaks: &[f64], abs_tol: f64, rel_tol: f64) -> f64 {
    breaks.windows(2).filter(|w| w[1] > w[0]).map(|w| adaptive(&mut f, w[0], w[1], abs_tol, rel_tol)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let r = GaussLegendre::<f64>::new(8);
        let w: f64 = r.weights.iter().sum();
        assert!((w - 2.0).abs() < 1e-14);
        // degree 15 is exact for 8 nodes
        let v = r.integrate(|x| x.powi(14) + x.powi(15), 0.0, 1.0);
        assert!((v - (1.0 / 15.0 + 1.0 / 16.0)).abs() < 1e-14);
    }

    #[test]
    fn odd_rule_has_center_node() {
        let r = GaussLegendre::<f64>::new(7);
        assert!(r.nodes[3].abs() < 1e-15);
        assert!((r.weights[3] - 0.417_959_183_673_469_4).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_log_singularity() {
        let v = adaptive(|x| -x.ln(), 0.0, 1.0, 1e-14, 1e-13);
        assert!((v - 1.0).abs() < 1e-11, "{v}");
        let v = adaptive(|x| x.sqrt(), 0.0, 4.0, 1e-14, 1e-13);
        assert!((v - 16.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn single_precision_rule() {
        let r = GaussLegendre::<f32>::new(5);
        let v = r.integrate(|x| x * x, -1.0, 1.0);
        assert!((v - 2.0 / 3.0).abs() < 1e-6);
    }
}
