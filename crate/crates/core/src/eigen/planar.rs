//! Rectangle–rectangle integrals of the planar kernels q_n(|x−y|) restricted
//! to an annulus lo < |x−y| < hi.
//!
//! With z = x − y, ∫_A∫_B f(|x−y|) dx dy = ∫ f(|z|) w(z) dz where
//! w(z) = |A ∩ (B + z)| = Λ₁(z₁)Λ₂(z₂) is a product of trapezoids. Along a ray
//! z = r(cos θ, sin θ) the weight is piecewise quadratic in r, and
//! ∫ r^{k−1}(−2 ln r)^{n−1} dr has a closed form, so the radial integral is
//! exact; only the angle is integrated numerically, on panels split at every
//! angle where the piece structure changes.

use crate::domain::Rect;
use crate::kernels::first_antiderivative;
use crate::quadrature::GaussLegendre;
use crate::scalar::Real;

const ANGLE_ORDER: usize = 12;
const FAR_ORDER: usize = 5;
const VERY_FAR_ORDER: usize = 3;

#[derive(Debug, Clone, Copy)]
struct Trapezoid<T> {
    a0: T,
    a1: T,
    b0: T,
    b1: T,
}

impl<T: Real> Trapezoid<T> {
    fn new(a0: T, a1: T, b0: T, b1: T) -> Self {
        Self { a0, a1, b0, b1 }
    }

    /// |[a0, a1] ∩ [b0 + t, b1 + t]| and its slope in t.
    fn eval(&self, t: T) -> (T, T) {
        let upper = self.a1.min(self.b1 + t);
        let lower = self.a0.max(self.b0 + t);
        let v = upper - lower;
        if v <= T::zero() {
            return (T::zero(), T::zero());
        }
        let du = if self.b1 + t < self.a1 { T::one() } else { T::zero() };
        let dl = if self.b0 + t > self.a0 { T::one() } else { T::zero() };
        (v, du - dl)
    }

    fn breaks(&self) -> [T; 4] {
        [self.a0 - self.b1, self.a0 - self.b0, self.a1 - self.b1, self.a1 - self.b0]
    }
}

/// ∫_a^b r^{k−1}(−2 ln r)^p dr for k ≥ 1 via
/// F(r) = 2^p r^k Σ_j p!/(j! k^{p−j+1}) (−ln r)^j.
fn moment<T: Real>(k: usize, p: usize, a: T, b: T) -> T {
    let prim = |r: T| {
        if r <= T::zero() {
            return T::zero();
        }
        let l = -r.ln();
        let kf = T::count(k);
        // Horner in l over c_j = p!/(j! k^{p−j+1})
        let mut acc = T::zero();
        let mut c = T::one() / kf; // c_p
        let mut coeffs = vec![T::zero(); p + 1];
        coeffs[p] = c;
        for j in (0..p).rev() {
            c = c * T::count(j + 1) / kf;
            coeffs[j] = c;
        }
        for j in (0..=p).rev() {
            acc = acc * l + coeffs[j];
        }
        T::lit(2.0).powi(p as i32) * r.powi(k as i32) * acc
    };
    prim(b) - prim(a)
}

/// Integrator for ∫∫ q_n(|x−y|) 1_{lo<|x−y|<hi} over rectangle pairs in the plane.
#[derive(Debug, Clone)]
pub struct PlanarKernel<T> {
    pub n: usize,
    pub lo: T,
    /// Upper radius; `T::infinity()` for the unbounded outer kernel.
    pub hi: T,
    angle_rule: GaussLegendre<T>,
    far_rule: GaussLegendre<T>,
    very_far_rule: GaussLegendre<T>,
}

impl<T: Real> PlanarKernel<T> {
    pub fn new(n: usize, lo: T, hi: T) -> Self {
        Self {
            n,
            lo,
            hi,
            angle_rule: GaussLegendre::new(ANGLE_ORDER),
            far_rule: GaussLegendre::new(FAR_ORDER),
            very_far_rule: GaussLegendre::new(VERY_FAR_ORDER),
        }
    }

    fn q(&self, r: T) -> T {
        (-(r.ln() + r.ln())).powi(self.n as i32 - 1) / (r * r)
    }

    /// ∫_A ∫_B q_n(|x−y|) over the annulus, for non-overlapping A, B.
    pub fn pair(&self, a: &Rect<T>, b: &Rect<T>) -> T {
        let (dmin, dmax) = box_distances(a, b);
        if dmin >= self.hi || dmax <= self.lo {
            return T::zero();
        }
        let size = diam(a).max(diam(b));
        if dmin > self.lo && dmax < self.hi && dmin >= size + size {
            let rule = if dmin >= T::lit(6.0) * size { &self.very_far_rule } else { &self.far_rule };
            return self.tensor(a, b, rule);
        }
        self.polar(a, b, T::zero(), T::one())
    }

    /// ∫_A ∫_{ℝ²∖A} q_n(|x−y|) over the annulus (requires lo = 0, finite hi).
    pub fn exterior(&self, a: &Rect<T>) -> T {
        debug_assert!(self.lo == T::zero() && self.hi.is_finite());
        self.polar(a, a, a.area(), -T::one())
    }

    /// Smooth far-field pairs: tensor Gauss on both rectangles.
    fn tensor(&self, a: &Rect<T>, b: &Rect<T>, rule: &GaussLegendre<T>) -> T {
        let pts = |r: &Rect<T>| -> Vec<([T; 2], T)> {
            let mut out = Vec::new();
            let (hx, hy) = (r.x.len() * T::lit(0.5), r.y.len() * T::lit(0.5));
            let (mx, my) = (r.x.mid(), r.y.mid());
            for (&u, &wu) in rule.nodes.iter().zip(&rule.weights) {
                for (&v, &wv) in rule.nodes.iter().zip(&rule.weights) {
                    out.push(([mx + hx * u, my + hy * v], wu * wv * hx * hy));
                }
            }
            out
        };
        let pa = pts(a);
        let pb = pts(b);
        let mut acc = T::zero();
        for (x, wx) in &pa {
            let mut inner = T::zero();
            for (y, wy) in &pb {
                inner = inner + *wy * self.q((x[0] - y[0]).hypot(x[1] - y[1]));
            }
            acc = acc + *wx * inner;
        }
        acc
    }

    /// ∫ q_n(|z|)(σ₀ + σ₁ w(z)) dz over the annulus in polar coordinates.
    fn polar(&self, a: &Rect<T>, b: &Rect<T>, s0: T, s1: T) -> T {
        let tx = Trapezoid::new(a.x.lo, a.x.hi, b.x.lo, b.x.hi);
        let ty = Trapezoid::new(a.y.lo, a.y.hi, b.y.lo, b.y.hi);
        let bx = tx.breaks();
        let by = ty.breaks();
        let two_pi = T::PI() + T::PI();
        let mut angles = vec![T::zero(), T::FRAC_PI_2(), T::PI(), T::PI() + T::FRAC_PI_2()];
        for &u in &bx {
            for &v in &by {
                if u != T::zero() || v != T::zero() {
                    angles.push(v.atan2(u));
                }
            }
        }
        for rad in [self.lo, self.hi] {
            if !(rad > T::zero() && rad.is_finite()) {
                continue;
            }
            for &u in &bx {
                if u.abs() < rad {
                    let t = (u / rad).acos();
                    angles.push(t);
                    angles.push(-t);
                }
            }
            for &v in &by {
                if v.abs() < rad {
                    let t = (v / rad).asin();
                    angles.push(t);
                    angles.push(T::PI() - t);
                }
            }
        }
        for t in angles.iter_mut() {
            while *t < T::zero() {
                *t = *t + two_pi;
            }
            while *t >= two_pi {
                *t = *t - two_pi;
            }
        }
        angles.push(two_pi);
        angles.sort_by(|p, q| p.partial_cmp(q).unwrap());
        angles.dedup_by(|p, q| (*p - *q).abs() <= T::epsilon() * T::lit(8.0));
        let max_width = T::PI() / T::lit(12.0);
        let mut total = T::zero();
        let mut rbreaks: Vec<T> = Vec::with_capacity(12);
        for w in angles.windows(2) {
            let (t0, t1) = (w[0], w[1]);
            if !(t1 > t0) {
                continue;
            }
            let panels = ((t1 - t0) / max_width).ceil().to_usize().unwrap_or(1).max(1);
            let dt = (t1 - t0) / T::count(panels);
            for p in 0..panels {
                let pa = t0 + dt * T::count(p);
                let pb = if p + 1 == panels { t1 } else { pa + dt };
                total = total
                    + self.angle_rule.integrate(|th| self.ray(th, &tx, &ty, &bx, &by, s0, s1, &mut rbreaks), pa, pb);
            }
        }
        total
    }

    #[allow(clippy::too_many_arguments)]
    fn ray(
        &self,
        th: T,
        tx: &Trapezoid<T>,
        ty: &Trapezoid<T>,
        bx: &[T; 4],
        by: &[T; 4],
        s0: T,
        s1: T,
        rb: &mut Vec<T>,
    ) -> T {
        let (s, c) = th.sin_cos();
        rb.clear();
        let mut far = T::zero();
        for &u in bx {
            if c != T::zero() {
                let r = u / c;
                if r > T::zero() {
                    rb.push(r);
                    far = far.max(r);
                }
            }
        }
        for &v in by {
            if s != T::zero() {
                let r = v / s;
                if r > T::zero() {
                    rb.push(r);
                    far = far.max(r);
                }
            }
        }
        let upper = if s0 == T::zero() { self.hi.min(far) } else { self.hi };
        if !(upper > self.lo) {
            return T::zero();
        }
        rb.retain(|&r| r > self.lo && r < upper);
        rb.push(self.lo);
        rb.push(upper);
        rb.sort_by(|p, q| p.partial_cmp(q).unwrap());
        let p = self.n - 1;
        let mut acc = T::zero();
        for w in rb.windows(2) {
            let (ra, rbb) = (w[0], w[1]);
            if !(rbb > ra) {
                continue;
            }
            let rm = (ra + rbb) * T::lit(0.5);
            let (v1, d1) = tx.eval(rm * c);
            let (v2, d2) = ty.eval(rm * s);
            let ga = d1 * c;
            let gb = d2 * s;
            let e1 = v1 - ga * rm;
            let e2 = v2 - gb * rm;
            let mut p0 = s0 + s1 * e1 * e2;
            let p1 = s1 * (ga * e2 + gb * e1);
            let p2 = s1 * ga * gb;
            if ra == T::zero() {
                // the weight vanishes at the origin whenever the integral is finite
                p0 = T::zero();
            }
            let mut piece = T::zero();
            if p0 != T::zero() {
                piece = piece + p0 * (first_antiderivative(self.n, rbb) - first_antiderivative(self.n, ra));
            }
            if p1 != T::zero() {
                piece = piece + p1 * moment(1, p, ra, rbb);
            }
            if p2 != T::zero() {
                piece = piece + p2 * moment(2, p, ra, rbb);
            }
            acc = acc + piece;
        }
        acc
    }
}

fn diam<T: Real>(r: &Rect<T>) -> T {
    r.x.len().hypot(r.y.len())
}

/// Smallest and largest distance between points of two rectangles.
pub fn box_distances<T: Real>(a: &Rect<T>, b: &Rect<T>) -> (T, T) {
    let gx = (b.x.lo - a.x.hi).max(a.x.lo - b.x.hi).max(T::zero());
    let gy = (b.y.lo - a.y.hi).max(a.y.lo - b.y.hi).max(T::zero());
    let sx = (b.x.hi - a.x.lo).max(a.x.hi - b.x.lo);
    let sy = (b.y.hi - a.y.lo).max(a.y.hi - b.y.lo);
    (gx.hypot(gy), sx.hypot(sy))
}
