//! Uniformly sampled functions on a box in ℝ^N (N = 1, 2), extended by zero.
//!
//! Between nodes the function is, by default, the natural cubic spline
//! interpolant (tensor-product in 2D): C², fourth-order accurate. Catmull–Rom
//! and (bi)linear interpolation are available as alternatives. Outside the
//! box the function is zero.

use crate::error::{domain, precondition, Result};
use crate::scalar::Real;

/// Interpolation between grid nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Interp {
    /// Natural cubic spline (C², O(h⁴)).
    #[default]
    Spline,
    /// Catmull–Rom cubic (C¹, reproduces quadratics, O(h³)); nodes outside
    /// the box count as zeros in the stencil.
    CatmullRom,
    /// Piecewise (bi)linear; represents box indicators exactly.
    Linear,
}

/// A real function sampled on a uniform grid, with declared Hölder data
/// |u(x) − u(y)| ≤ C|x − y|^α used for truncation bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<T> {
    pub dim: usize,
    pub origin: Vec<T>,
    pub spacing: Vec<T>,
    pub shape: Vec<usize>,
    /// row-major, the last axis varies fastest; replace through
    /// [`GridFunction::set_values`] so the spline coefficients stay in sync
    pub values: Vec<T>,
    pub holder_exponent: T,
    pub holder_constant: T,
    pub interp: Interp,
    spline: Vec<T>,
}

/// Uniform cubic B-spline basis on a cell at local coordinate t.
#[inline]
fn bspline_weights<T: Real>(t: T) -> [T; 4] {
    let sixth = T::one() / T::lit(6.0);
    let u = T::one() - t;
    let t2 = t * t;
    let t3 = t2 * t;
    [
        u * u * u * sixth,
        (T::lit(3.0) * t3 - T::lit(6.0) * t2 + T::lit(4.0)) * sixth,
        (-T::lit(3.0) * t3 + T::lit(3.0) * t2 + T::lit(3.0) * t + T::one()) * sixth,
        t3 * sixth,
    ]
}

/// Natural-spline B-coefficients along one line: c₀ = u₀, c_{n−1} = u_{n−1},
/// c_{i−1} + 4c_i + c_{i+1} = 6u_i inside (Thomas algorithm).
fn spline_line<T: Real>(line: &mut [T]) {
    let n = line.len();
    if n <= 2 {
        return;
    }
    let m = n - 2;
    let four = T::lit(4.0);
    let six = T::lit(6.0);
    let mut cp = vec![T::zero(); m];
    let mut dp = vec![T::zero(); m];
    for k in 0..m {
        let mut d = six * line[k + 1];
        if k == 0 {
            d = d - line[0];
        }
        if k == m - 1 {
            d = d - line[n - 1];
        }
        let (denom, prev_d) = if k == 0 { (four, T::zero()) } else { (four - cp[k - 1], dp[k - 1]) };
        cp[k] = T::one() / denom;
        dp[k] = (d - prev_d) / denom;
    }
    let mut next = T::zero();
    for k in (0..m).rev() {
        let v = dp[k] - cp[k] * next;
        line[k + 1] = v;
        next = v;
    }
}

fn spline_coefficients<T: Real>(shape: &[usize], values: &[T]) -> Vec<T> {
    let mut c = values.to_vec();
    if shape.len() == 1 {
        spline_line(&mut c);
        return c;
    }
    let (n0, n1) = (shape[0], shape[1]);
    for row in c.chunks_mut(n1) {
        spline_line(row);
    }
    let mut col = vec![T::zero(); n0];
    for j in 0..n1 {
        for i in 0..n0 {
            col[i] = c[i * n1 + j];
        }
        spline_line(&mut col);
        for i in 0..n0 {
            c[i * n1 + j] = col[i];
        }
    }
    c
}

/// Catmull–Rom weights for the four stencil values at local coordinate t.
#[inline]
fn cr_weights<T: Real>(t: T) -> [T; 4] {
    let half = T::lit(0.5);
    let t2 = t * t;
    let t3 = t2 * t;
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let four = T::lit(4.0);
    let five = T::lit(5.0);
    [
        half * (-t + two * t2 - t3),
        half * (two - five * t2 + three * t3),
        half * (t + four * t2 - three * t3),
        half * (-t2 + t3),
    ]
}

impl<T: Real> GridFunction<T> {
    /// Builds and validates a grid function, including a sampled check that
    /// the declared Hölder data dominate the interpolant.
    pub fn new(
        origin: Vec<T>,
        spacing: Vec<T>,
        shape: Vec<usize>,
        values: Vec<T>,
        holder_exponent: T,
        holder_constant: T,
    ) -> Result<Self> {
        let g = Self::new_unchecked(origin, spacing, shape, values, holder_exponent, holder_constant)?;
        g.check_holder()?;
        Ok(g)
    }

    /// As [`GridFunction::new`] without the Hölder sampling (structural checks only).
    pub fn new_unchecked(
        origin: Vec<T>,
        spacing: Vec<T>,
        shape: Vec<usize>,
        values: Vec<T>,
        holder_exponent: T,
        holder_constant: T,
    ) -> Result<Self> {
        let dim = shape.len();
        if !(dim == 1 || dim == 2) {
            return precondition(format!("grid dimension must be 1 or 2, got {dim}"));
        }
        if origin.len() != dim || spacing.len() != dim {
            return precondition("origin/spacing/shape lengths disagree");
        }
        if shape.iter().any(|&s| s < 2) {
            return precondition("every axis needs at least two nodes");
        }
        if spacing.iter().any(|&h| !(h > T::zero()) || !h.is_finite()) {
            return precondition("grid spacing must be positive and finite");
        }
        if origin.iter().any(|o| !o.is_finite()) {
            return precondition("grid origin must be finite");
        }
        let count: usize = shape.iter().product();
        if values.len() != count {
            return precondition(format!("expected {count} values, got {}", values.len()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return domain("grid contains non-finite samples");
        }
        if !(holder_exponent > T::zero() && holder_exponent <= T::one()) {
            return precondition("Hölder exponent must lie in (0, 1]");
        }
        if !(holder_constant >= T::zero()) || !holder_constant.is_finite() {
            return precondition("Hölder constant must be finite and non-negative");
        }
        let spline = spline_coefficients(&shape, &values);
        Ok(Self {
            dim,
            origin,
            spacing,
            shape,
            values,
            holder_exponent,
            holder_constant,
            interp: Interp::Spline,
            spline,
        })
    }

    /// Samples `f` on `shape` nodes starting at `origin`; the Hölder constant
    /// for exponent α is estimated from the interpolant and padded by 25%.
    pub fn from_fn<F: Fn(&[T]) -> T>(
        origin: Vec<T>,
        spacing: Vec<T>,
        shape: Vec<usize>,
        f: F,
        alpha: T,
    ) -> Result<Self> {
        let dim = shape.len();
        let count: usize = shape.iter().product();
        let mut values = Vec::with_capacity(count);
        let mut x = vec![T::zero(); dim];
        for idx in 0..count {
            let mut rem = idx;
            for k in (0..dim).rev() {
                x[k] = origin[k] + spacing[k] * T::count(rem % shape[k]);
                rem /= shape[k];
            }
            values.push(f(&x));
        }
        let mut g = Self::new_unchecked(origin, spacing, shape, values, alpha, T::zero())?;
        g.holder_constant = g.estimate_holder_constant(alpha) * T::lit(1.25);
        Ok(g)
    }

    /// The same grid with new values (Hölder constant re-estimated).
    pub fn with_values(&self, values: Vec<T>) -> Result<Self> {
        let mut g = Self::new_unchecked(
            self.origin.clone(),
            self.spacing.clone(),
            self.shape.clone(),
            values,
            self.holder_exponent,
            T::zero(),
        )?;
        g.holder_constant = g.estimate_holder_constant(self.holder_exponent) * T::lit(1.25);
        Ok(g)
    }

    /// Replaces the samples in place, keeping the declared Hölder data.
    pub fn set_values(&mut self, values: Vec<T>) -> Result<()> {
        if values.len() != self.values.len() {
            return precondition(format!("expected {} values, got {}", self.values.len(), values.len()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return domain("grid contains non-finite samples");
        }
        self.spline = spline_coefficients(&self.shape, &values);
        self.values = values;
        Ok(())
    }

    /// Switches the interpolation mode.
    pub fn with_interp(mut self, interp: Interp) -> Self {
        self.interp = interp;
        self
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Upper corner of the box.
    pub fn box_hi(&self) -> Vec<T> {
        (0..self.dim).map(|k| self.origin[k] + self.spacing[k] * T::count(self.shape[k] - 1)).collect()
    }

    /// Whether x lies in the closed sampling box.
    pub fn in_box(&self, x: &[T]) -> bool {
        let hi = self.box_hi();
        (0..self.dim).all(|k| x[k] >= self.origin[k] && x[k] <= hi[k])
    }

    /// Coordinates of node `idx` (flat index).
    pub fn node(&self, idx: usize) -> Vec<T> {
        let mut x = vec![T::zero(); self.dim];
        let mut rem = idx;
        for k in (0..self.dim).rev() {
            x[k] = self.origin[k] + self.spacing[k] * T::count(rem % self.shape[k]);
            rem /= self.shape[k];
        }
        x
    }

    /// Node value with zero outside the index range.
    #[inline]
    fn at(&self, i: isize, j: isize) -> T {
        if self.dim == 1 {
            if i < 0 || i as usize >= self.shape[0] {
                T::zero()
            } else {
                self.values[i as usize]
            }
        } else if i < 0 || j < 0 || i as usize >= self.shape[0] || j as usize >= self.shape[1] {
            T::zero()
        } else {
            self.values[i as usize * self.shape[1] + j as usize]
        }
    }

    /// Spline coefficient with natural (linear) extrapolation to the ghost layer.
    #[inline]
    fn coef(&self, i: isize, j: isize) -> T {
        let n0 = self.shape[0] as isize;
        let two = T::lit(2.0);
        if i < 0 {
            return two * self.coef(0, j) - self.coef(1, j);
        }
        if i >= n0 {
            return two * self.coef(n0 - 1, j) - self.coef(n0 - 2, j);
        }
        if self.dim == 1 {
            return self.spline[i as usize];
        }
        let n1 = self.shape[1] as isize;
        if j < 0 {
            return two * self.coef(i, 0) - self.coef(i, 1);
        }
        if j >= n1 {
            return two * self.coef(i, n1 - 1) - self.coef(i, n1 - 2);
        }
        self.spline[(i * n1 + j) as usize]
    }

    /// Cell index and local coordinate along axis k, or None outside the box.
    #[inline]
    fn locate(&self, k: usize, x: T) -> Option<(isize, T)> {
        let u = (x - self.origin[k]) / self.spacing[k];
        let last = T::count(self.shape[k] - 1);
        if !(u >= T::zero() && u <= last) {
            return None;
        }
        let mut i = u.floor().to_isize().unwrap_or(0);
        let max = self.shape[k] as isize - 2;
        if i > max {
            i = max;
        }
        Some((i, u - T::lit(i as f64)))
    }

    /// Interpolated value, zero outside the box.
    pub fn eval(&self, x: &[T]) -> T {
        match self.interp {
            Interp::Linear => self.eval_linear(x),
            Interp::Spline => self.eval_spline(x),
            Interp::CatmullRom => self.eval_catmull_rom(x),
        }
    }

    fn eval_spline(&self, x: &[T]) -> T {
        let Some((i, s)) = self.locate(0, x[0]) else { return T::zero() };
        let wi = bspline_weights(s);
        if self.dim == 1 {
            return wi[0] * self.coef(i - 1, 0)
                + wi[1] * self.coef(i, 0)
                + wi[2] * self.coef(i + 1, 0)
                + wi[3] * self.coef(i + 2, 0);
        }
        let Some((j, t)) = self.locate(1, x[1]) else { return T::zero() };
        let wj = bspline_weights(t);
        let mut acc = T::zero();
        for (a, &wa) in wi.iter().enumerate() {
            let mut row = T::zero();
            for (b, &wb) in wj.iter().enumerate() {
                row = row + wb * self.coef(i - 1 + a as isize, j - 1 + b as isize);
            }
            acc = acc + wa * row;
        }
        acc
    }

    fn eval_catmull_rom(&self, x: &[T]) -> T {
        if self.dim == 1 {
            let Some((i, t)) = self.locate(0, x[0]) else { return T::zero() };
            let w = cr_weights(t);
            w[0] * self.at(i - 1, 0) + w[1] * self.at(i, 0) + w[2] * self.at(i + 1, 0) + w[3] * self.at(i + 2, 0)
        } else {
            let Some((i, s)) = self.locate(0, x[0]) else { return T::zero() };
            let Some((j, t)) = self.locate(1, x[1]) else { return T::zero() };
            let wi = cr_weights(s);
            let wj = cr_weights(t);
            let mut acc = T::zero();
            for (a, &wa) in wi.iter().enumerate() {
                let mut row = T::zero();
                for (b, &wb) in wj.iter().enumerate() {
                    row = row + wb * self.at(i - 1 + a as isize, j - 1 + b as isize);
                }
                acc = acc + wa * row;
            }
            acc
        }
    }

    fn eval_linear(&self, x: &[T]) -> T {
        let Some((i, s)) = self.locate(0, x[0]) else { return T::zero() };
        if self.dim == 1 {
            return self.at(i, 0) * (T::one() - s) + self.at(i + 1, 0) * s;
        }
        let Some((j, t)) = self.locate(1, x[1]) else { return T::zero() };
        let lo = self.at(i, j) * (T::one() - t) + self.at(i, j + 1) * t;
        let hi = self.at(i + 1, j) * (T::one() - t) + self.at(i + 1, j + 1) * t;
        lo * (T::one() - s) + hi * s
    }

    /// Sampled sup of |u(x) − u(y)|/|x − y|^α over pairs at dyadic distances
    /// from h/8 up to the box size, with base points on a quarter-cell lattice.
    pub fn estimate_holder_constant(&self, alpha: T) -> T {
        let budget = 200_000usize;
        let hmin = self.spacing.iter().fold(T::infinity(), |a, &b| a.min(b));
        let hi = self.box_hi();
        let extent = (0..self.dim).fold(T::zero(), |a, k| a.max(hi[k] - self.origin[k]));
        let mut scales = Vec::new();
        let mut d = hmin / T::lit(8.0);
        while d <= extent {
            scales.push(d);
            d = d + d;
        }
        let dirs: Vec<Vec<T>> = if self.dim == 1 {
            vec![vec![T::one()]]
        } else {
            let s = T::FRAC_1_SQRT_2();
            vec![vec![T::one(), T::zero()], vec![T::zero(), T::one()], vec![s, s], vec![s, -s]]
        };
        let per_axis: Vec<usize> = self.shape.iter().map(|&n| 4 * (n - 1) + 1).collect();
        let total: usize = per_axis.iter().product();
        let stride = (total * scales.len() * dirs.len() / budget).max(1);
        let mut best = T::zero();
        let mut x = vec![T::zero(); self.dim];
        let mut y = vec![T::zero(); self.dim];
        let mut idx = 0;
        while idx < total {
            let mut rem = idx;
            for k in (0..self.dim).rev() {
                x[k] = self.origin[k] + self.spacing[k] * T::count(rem % per_axis[k]) / T::lit(4.0);
                rem /= per_axis[k];
            }
            let ux = self.eval(&x);
            for dir in &dirs {
                for &d in &scales {
                    for k in 0..self.dim {
                        y[k] = x[k] + dir[k] * d;
                    }
                    let r = (self.eval(&y) - ux).abs() / d.powf(alpha);
                    if r > best {
                        best = r;
                    }
                }
            }
            idx += stride;
        }
        best
    }

    /// Rejects declared Hölder data that the sampled modulus exceeds.
    pub fn check_holder(&self) -> Result<()> {
        let est = self.estimate_holder_constant(self.holder_exponent);
        let slack = T::lit(1e-9) * (T::one() + est);
        if est > self.holder_constant + slack {
            return precondition(format!(
                "declared Hölder constant {} is below the sampled modulus {} for exponent {}",
                self.holder_constant, est, self.holder_exponent
            ));
        }
        Ok(())
    }

    /// Upper bound for the second directional derivative of the interpolant
    /// inside the box.
    pub fn curvature_bound(&self) -> T {
        match self.interp {
            Interp::Spline => self.spline_curvature(),
            Interp::CatmullRom => self.catmull_rom_curvature(),
            // piecewise linear: kinks at nodes; only the Hölder route applies
            Interp::Linear => T::infinity(),
        }
    }

    /// The spline's second derivatives are B-weighted averages of second
    /// differences of the coefficients, so these bound them exactly.
    fn spline_curvature(&self) -> T {
        if self.dim == 1 {
            let h2 = self.spacing[0] * self.spacing[0];
            let n = self.shape[0] as isize;
            let mut best = T::zero();
            for i in 0..n {
                let d = self.coef(i - 1, 0) - self.coef(i, 0) - self.coef(i, 0) + self.coef(i + 1, 0);
                best = best.max(d.abs());
            }
            return best / h2;
        }
        let (hx, hy) = (self.spacing[0], self.spacing[1]);
        let (n0, n1) = (self.shape[0] as isize, self.shape[1] as isize);
        let (mut dxx, mut dyy, mut dxy) = (T::zero(), T::zero(), T::zero());
        for i in -1..=n0 {
            for j in -1..=n1 {
                let c = self.coef(i, j);
                if i >= 0 && i < n0 {
                    dxx = dxx.max((self.coef(i + 1, j) - c - c + self.coef(i - 1, j)).abs());
                }
                if j >= 0 && j < n1 {
                    dyy = dyy.max((self.coef(i, j + 1) - c - c + self.coef(i, j - 1)).abs());
                }
                if i < n0 && j < n1 {
                    dxy = dxy.max((self.coef(i + 1, j + 1) - self.coef(i + 1, j) - self.coef(i, j + 1) + c).abs());
                }
            }
        }
        // θᵀHθ ≤ max(|u_xx|, |u_yy|) + |u_xy| for unit θ
        (dxx / (hx * hx)).max(dyy / (hy * hy)) + dxy / (hx * hy)
    }

    fn catmull_rom_curvature(&self) -> T {
        if self.dim == 1 {
            let h2 = self.spacing[0] * self.spacing[0];
            let mut best = T::zero();
            for i in -1..self.shape[0] as isize {
                let p = [self.at(i - 1, 0), self.at(i, 0), self.at(i + 1, 0), self.at(i + 2, 0)];
                let two = T::lit(2.0);
                let a = two * p[0] - T::lit(5.0) * p[1] + T::lit(4.0) * p[2] - p[3];
                let b = -p[0] + T::lit(4.0) * p[1] - T::lit(5.0) * p[2] + two * p[3];
                best = best.max(a.abs()).max(b.abs());
            }
            best / h2
        } else {
            let (hx, hy) = (self.spacing[0], self.spacing[1]);
            let mut best = T::zero();
            for i in -1..=self.shape[0] as isize {
                for j in -1..=self.shape[1] as isize {
                    let c = self.at(i, j);
                    let dxx = (self.at(i + 1, j) - c - c + self.at(i - 1, j)).abs() / (hx * hx);
                    let dyy = (self.at(i, j + 1) - c - c + self.at(i, j - 1)).abs() / (hy * hy);
                    let dxy = (self.at(i + 1, j + 1) - self.at(i + 1, j) - self.at(i, j + 1) + c).abs() / (hx * hy);
                    best = best.max(dxx + dxy + dxy + dyy);
                }
            }
            // Catmull–Rom second derivatives exceed node second differences by at most 3x
            best * T::lit(3.0)
        }
    }

    /// Trapezoid weight of node `idx` (cell measure with halves on the boundary).
    pub fn trapezoid_weight(&self, idx: usize) -> T {
        let mut w = T::one();
        let mut rem = idx;
        for k in (0..self.dim).rev() {
            let i = rem % self.shape[k];
            rem /= self.shape[k];
            let edge = i == 0 || i == self.shape[k] - 1;
            w = w * self.spacing[k] * if edge { T::lit(0.5) } else { T::one() };
        }
        w
    }

    /// Node indices whose coordinates lie in the central half of the box.
    pub fn central_half(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&idx| {
                let mut rem = idx;
                (0..self.dim).rev().all(|k| {
                    let i = rem % self.shape[k];
                    rem /= self.shape[k];
                    let n = self.shape[k] - 1;
                    4 * i >= n && 4 * i <= 3 * n
                })
            })
            .collect()
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(n: usize, f: impl Fn(f64) -> f64) -> GridFunction<f64> {
        GridFunction::from_fn(vec![-1.0], vec![2.0 / (n - 1) as f64], vec![n], |x| f(x[0]), 1.0).unwrap()
    }

    #[test]
    fn interpolates_nodes_and_cubics_inside() {
        let g = line(41, |x| x * x * x - x);
        for i in 0..41 {
            let x = g.node(i);
            assert!((g.eval(&x) - g.values[i]).abs() < 1e-14);
        }
        // Catmull–Rom reproduces quadratics away from the zero padding
        let q = line(41, |x| 3.0 * x * x - x + 2.0).with_interp(Interp::CatmullRom);
        for &x in &[-0.43, 0.0123, 0.77] {
            assert!((q.eval(&[x]) - (3.0 * x * x - x + 2.0)).abs() < 1e-12);
        }
        assert_eq!(q.eval(&[1.5]), 0.0);
    }

    #[test]
    fn spline_is_fourth_order() {
        let f = |x: f64| (3.0 * x).sin() * (-x * x).exp();
        let err = |n: usize| {
            let g = line(n, f);
            (0..200).map(|k| -0.5 + k as f64 / 200.0).fold(0f64, |m, x| m.max((g.eval(&[x]) - f(x)).abs()))
        };
        let (e1, e2) = (err(41), err(81));
        assert!(e1 / e2 > 12.0, "{e1} {e2}");
        let g = line(41, f);
        for i in 0..41 {
            assert!((g.eval(&g.node(i)) - g.values[i]).abs() < 1e-14);
        }
    }

    #[test]
    fn set_values_refreshes_interpolant() {
        let mut g = line(21, |x| x * x);
        g.set_values(vec![1.0; 21]).unwrap();
        assert!((g.eval(&[0.333]) - 1.0).abs() < 1e-14);
        assert!(g.set_values(vec![1.0; 3]).is_err());
    }

    #[test]
    fn bicubic_reproduces_bilinear() {
        let f = |x: &[f64]| 1.0 + 2.0 * x[0] - x[1] + 0.5 * x[0] * x[1];
        let g = GridFunction::from_fn(vec![-1.0, -1.0], vec![0.1, 0.1], vec![21, 21], f, 1.0).unwrap();
        for p in [[0.03, -0.41], [0.5, 0.55], [-0.77, 0.2]] {
            assert!((g.eval(&p) - f(&p)).abs() < 1e-12);
            let cr = g.clone().with_interp(Interp::CatmullRom);
            assert!((cr.eval(&p) - f(&p)).abs() < 1e-12);
        }
    }

    #[test]
    fn holder_validation() {
        let g = line(101, |x| (-(x * x) * 10.0).exp());
        assert!(g.check_holder().is_ok());
        let bad = GridFunction::new(g.origin.clone(), g.spacing.clone(), g.shape.clone(), g.values.clone(), 1.0, 0.1);
        assert!(bad.is_err());
        let nan = GridFunction::new(vec![0.0], vec![1.0], vec![2], vec![0.0, f64::NAN], 1.0, 1.0);
        assert!(nan.is_err());
    }

    #[test]
    fn curvature_bound_for_parabola() {
        // f'' = 1 − 6x², so sup|f''| = 5 on [−1, 1]; the natural end
        // condition (s'' = 0 at ±1) makes the spline overshoot that a little
        let g = line(201, |x| 0.5 * x * x * (1.0 - x * x));
        let c = g.curvature_bound();
        assert!(c > 4.9 && c < 8.0, "{c}");
        let c = g.clone().with_interp(Interp::CatmullRom).curvature_bound();
        assert!(c > 0.9 && c.is_finite());
        let h =
            GridFunction::from_fn(vec![-1.0, -1.0], vec![0.05, 0.05], vec![41, 41], |p| p[0] * p[0] + p[0] * p[1], 1.0)
                .unwrap();
        // Hessian [[2, 1], [1, 0]]: largest directional second derivative 1 + √2
        let c = h.curvature_bound();
        assert!(c >= 1.0 + 2f64.sqrt() - 1e-9 && c < 4.5, "{c}");
    }

    #[test]
    fn linear_mode_represents_indicators() {
        let g = GridFunction::new_unchecked(vec![-2.0], vec![0.5], vec![9], vec![1.0; 9], 1.0, 0.0)
            .unwrap()
            .with_interp(Interp::Linear);
        assert_eq!(g.eval(&[1.999]), 1.0);
        assert_eq!(g.eval(&[-2.0]), 1.0);
        assert_eq!(g.eval(&[2.001]), 0.0);
    }

    #[test]
    fn central_half_indices() {
        let g = line(9, |_| 0.0);
        assert_eq!(g.central_half(), vec![2, 3, 4, 5, 6]);
    }
}
