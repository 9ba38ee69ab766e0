//! Double-double finite-difference oracle for the κ-series, shared by the
//! coefficient oracle and the acceptance run.
#![allow(dead_code)]

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Minimal double-double number (error-free transformations via fused
/// multiply-add), just enough for the oracle below.
#[derive(Clone, Copy, Debug)]
pub struct TwoFloat {
    hi: f64,
    lo: f64,
}

pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

pub fn quick_two_sum(a: f64, b: f64) -> TwoFloat {
    let s = a + b;
    TwoFloat { hi: s, lo: b - (s - a) }
}

impl TwoFloat {
    pub fn from(x: f64) -> Self {
        TwoFloat { hi: x, lo: 0.0 }
    }
    pub fn hi(self) -> f64 {
        self.hi
    }
    pub fn lo(self) -> f64 {
        self.lo
    }
    pub fn powi(self, k: i32) -> Self {
        (0..k).fold(dd(1.0), |acc, _| acc * self)
    }
}

impl Add for TwoFloat {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let r = quick_two_sum(s, e + t);
        quick_two_sum(r.hi, r.lo + f)
    }
}

impl Neg for TwoFloat {
    type Output = Self;
    fn neg(self) -> Self {
        TwoFloat { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for TwoFloat {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for TwoFloat {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        quick_two_sum(p, e + self.hi * o.lo + self.lo * o.hi)
    }
}

impl Div for TwoFloat {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let q1 = self.hi / o.hi;
        let r = self - o * dd(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * dd(q2);
        let q3 = r.hi / o.hi;
        quick_two_sum(q1, q2) + dd(q3)
    }
}

impl std::ops::AddAssign for TwoFloat {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

pub fn dd(x: f64) -> TwoFloat {
    TwoFloat::from(x)
}

pub fn dd_ln2() -> TwoFloat {
    TwoFloat { hi: std::f64::consts::LN_2, lo: 2.319_046_813_846_299_6e-17 }
}

pub fn dd_pi() -> TwoFloat {
    TwoFloat { hi: std::f64::consts::PI, lo: 1.224_646_799_147_353_2e-16 }
}

pub fn dd_exp(x: TwoFloat) -> TwoFloat {
    let k = (x.hi() / std::f64::consts::LN_2).round();
    let r = (x - dd(k) * dd_ln2()) / dd(1024.0);
    let mut term = dd(1.0);
    let mut sum = dd(1.0);
    for i in 1..=20 {
        term = term * r / dd(i as f64);
        sum += term;
    }
    for _ in 0..10 {
        sum = sum * sum;
    }
    sum * dd(2f64.powi(k as i32))
}

pub fn dd_ln(x: TwoFloat) -> TwoFloat {
    let mut y = dd(x.hi().ln());
    for _ in 0..2 {
        y = y + x * dd_exp(-y) - dd(1.0);
    }
    y
}

const BERNOULLI: [(f64, f64); 17] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43_867.0, 798.0),
    (-174_611.0, 330.0),
    (854_513.0, 138.0),
    (-236_364_091.0, 2730.0),
    (8_553_103.0, 6.0),
    (-23_749_461_029.0, 870.0),
    (8_615_841_276_005.0, 14322.0),
    (-7_709_321_041_217.0, 510.0),
    (2_577_687_858_367.0, 6.0),
];

pub fn dd_ln_gamma(x: TwoFloat) -> TwoFloat {
    let mut z = x;
    let mut prod = dd(1.0);
    while z.hi() < 25.0 {
        prod = prod * z;
        z += dd(1.0);
    }
    let half = dd(0.5);
    let mut acc = (z - half) * dd_ln(z) - z + half * dd_ln(dd(2.0) * dd_pi());
    let z2 = z * z;
    let mut zp = z;
    for (k, &(num, den)) in BERNOULLI.iter().enumerate() {
        let tk = (2 * (k + 1)) as f64;
        acc += dd(num) / dd(den) / (dd(tk * (tk - 1.0)) * zp);
        zp = zp * z2;
    }
    acc - dd_ln(prod)
}

/// κ₁(s) = 2^{−2s} π^{−N/2} Γ((N−2s)/2)/Γ(1+s) in double-double.
pub fn dd_kappa1(s: TwoFloat, n: usize) -> TwoFloat {
    let nf = dd(n as f64);
    let log = -(dd(2.0) * s) * dd_ln2() - nf / dd(2.0) * dd_ln(dd_pi()) + dd_ln_gamma((nf - dd(2.0) * s) / dd(2.0))
        - dd_ln_gamma(dd(1.0) + s);
    dd_exp(log)
}

pub fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// k-th central difference quotient at 0 with step h.
pub fn central(f: &dyn Fn(TwoFloat) -> TwoFloat, k: usize, h: TwoFloat) -> TwoFloat {
    let mut acc = dd(0.0);
    for i in 0..=k {
        let offset = TwoFloat::from(k as f64 / 2.0 - i as f64) * h;
        let w = if i % 2 == 0 { binom(k, i) } else { -binom(k, i) };
        acc += dd(w) * f(offset);
    }
    acc / h.powi(k as i32)
}

/// Two Richardson levels on top of the O(h²) central quotient.
pub fn richardson(f: &dyn Fn(TwoFloat) -> TwoFloat, k: usize, h: f64) -> f64 {
    let h = TwoFloat::from(h);
    let d = |h: TwoFloat| central(f, k, h);
    let two = TwoFloat::from(2.0);
    let (d0, d1, d2) = (d(h), d(h / two), d(h / (two * two)));
    let r0 = (TwoFloat::from(4.0) * d1 - d0) / TwoFloat::from(3.0);
    let r1 = (TwoFloat::from(4.0) * d2 - d1) / TwoFloat::from(3.0);
    let r = (TwoFloat::from(16.0) * r1 - r0) / TwoFloat::from(15.0);
    r.hi() + r.lo()
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}
