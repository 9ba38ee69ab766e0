//! Bounded domains built from intervals, axis-aligned rectangles and a disk.

use crate::error::{precondition, Result};
use crate::scalar::Real;

/// Closed interval [lo, hi].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Real> Interval<T> {
    pub fn new(lo: T, hi: T) -> Self {
        Self { lo, hi }
    }

    pub fn len(&self) -> T {
        self.hi - self.lo
    }

    pub fn mid(&self) -> T {
        (self.lo + self.hi) * T::lit(0.5)
    }

    pub fn contains(&self, x: T) -> bool {
        x >= self.lo && x <= self.hi
    }
}

/// Axis-aligned rectangle [x0, x1] × [y0, y1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect<T> {
    pub x: Interval<T>,
    pub y: Interval<T>,
}

impl<T: Real> Rect<T> {
    pub fn new(x0: T, x1: T, y0: T, y1: T) -> Self {
        Self { x: Interval::new(x0, x1), y: Interval::new(y0, y1) }
    }

    pub fn area(&self) -> T {
        self.x.len() * self.y.len()
    }

    pub fn corners(&self) -> [[T; 2]; 4] {
        [[self.x.lo, self.y.lo], [self.x.hi, self.y.lo], [self.x.lo, self.y.hi], [self.x.hi, self.y.hi]]
    }

    pub fn contains(&self, p: [T; 2]) -> bool {
        self.x.contains(p[0]) && self.y.contains(p[1])
    }

    /// Distance from `p` to the nearest point of the rectangle.
    pub fn distance_to(&self, p: [T; 2]) -> T {
        let dx = (self.x.lo - p[0]).max(p[0] - self.x.hi).max(T::zero());
        let dy = (self.y.lo - p[1]).max(p[1] - self.y.hi).max(T::zero());
        dx.hypot(dy)
    }
}

/// Closed disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk<T> {
    pub center: [T; 2],
    pub radius: T,
}

/// One building block of a domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Piece<T> {
    Interval(Interval<T>),
    Rect(Rect<T>),
    Disk(Disk<T>),
}

/// A bounded domain in dimension 1 or 2: the union of pieces with pairwise
/// disjoint interiors.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainSpec<T> {
    pub dim: usize,
    pub pieces: Vec<Piece<T>>,
}

impl<T: Real> DomainSpec<T> {
    pub fn intervals(pieces: &[(T, T)]) -> Result<Self> {
        let pieces = pieces.iter().map(|&(a, b)| Piece::Interval(Interval::new(a, b))).collect();
        Self::new(1, pieces)
    }

    pub fn interval(a: T, b: T) -> Result<Self> {
        Self::intervals(&[(a, b)])
    }

    pub fn rects(rects: &[Rect<T>]) -> Result<Self> {
        Self::new(2, rects.iter().copied().map(Piece::Rect).collect())
    }

    pub fn disk(center: [T; 2], radius: T) -> Result<Self> {
        Self::new(2, vec![Piece::Disk(Disk { center, radius })])
    }

    /// Validates dimensions, positive measure and disjoint interiors.
    pub fn new(dim: usize, pieces: Vec<Piece<T>>) -> Result<Self> {
        if !(dim == 1 || dim == 2) {
            return precondition(format!("domains are supported in dimension 1 or 2, got {dim}"));
        }
        if pieces.is_empty() {
            return precondition("domain needs at least one piece");
        }
        let mut disks = 0;
        for p in &pieces {
            match p {
                Piece::Interval(i) => {
                    if dim != 1 {
                        return precondition("interval piece in a two-dimensional domain");
                    }
                    if !(i.len() > T::zero()) || !i.lo.is_finite() || !i.hi.is_finite() {
                        return precondition(format!("interval [{}, {}] has no positive length", i.lo, i.hi));
                    }
                }
                Piece::Rect(r) => {
                    if dim != 2 {
                        return precondition("rectangle piece in a one-dimensional domain");
                    }
                    if !(r.x.len() > T::zero() && r.y.len() > T::zero()) {
                        return precondition("rectangle has no positive area");
                    }
                }
                Piece::Disk(d) => {
                    if dim != 2 {
                        return precondition("disk piece in a one-dimensional domain");
                    }
                    if !(d.radius > T::zero()) {
                        return precondition("disk radius must be positive");
                    }
                    disks += 1;
                }
            }
        }
        if disks > 1 {
            return precondition("at most one disk per domain");
        }
        for (i, a) in pieces.iter().enumerate() {
            for b in &pieces[i + 1..] {
                if interiors_overlap(a, b) {
                    return precondition("domain pieces overlap");
                }
            }
        }
        Ok(Self { dim, pieces })
    }

    /// Lebesgue measure |Ω|.
    pub fn measure(&self) -> T {
        self.pieces.iter().fold(T::zero(), |acc, p| {
            acc + match p {
                Piece::Interval(i) => i.len(),
                Piece::Rect(r) => r.area(),
                Piece::Disk(d) => T::PI() * d.radius * d.radius,
            }
        })
    }

    /// Largest distance between two points of Ω.
    pub fn diameter(&self) -> T {
        let mut best = T::zero();
        for a in &self.pieces {
            for b in &self.pieces {
                best = best.max(piece_max_distance(a, b));
            }
        }
        best
    }

    /// Largest distance from `center` to a point of Ω.
    pub fn max_distance_from(&self, center: &[T]) -> T {
        self.pieces.iter().fold(T::zero(), |acc, p| {
            acc.max(match p {
                Piece::Interval(i) => (i.lo - center[0]).abs().max((i.hi - center[0]).abs()),
                Piece::Rect(r) => {
                    r.corners().iter().fold(T::zero(), |m, c| m.max((c[0] - center[0]).hypot(c[1] - center[1])))
                }
                Piece::Disk(d) => (d.center[0] - center[0]).hypot(d.center[1] - center[1]) + d.radius,
            })
        })
    }

    /// Whether Ω ⊂ closed ball B_r(center).
    pub fn within_ball(&self, center: &[T], r: T) -> bool {
        self.max_distance_from(center) <= r
    }

    /// Centre of the bounding box.
    pub fn bbox_center(&self) -> Vec<T> {
        let (lo, hi) = self.bbox();
        lo.iter().zip(&hi).map(|(&a, &b)| (a + b) * T::lit(0.5)).collect()
    }

    /// Axis-aligned bounding box (lower, upper corners).
    pub fn bbox(&self) -> (Vec<T>, Vec<T>) {
        let mut lo = vec![T::infinity(); self.dim];
        let mut hi = vec![T::neg_infinity(); self.dim];
        for p in &self.pieces {
            let (a, b): (Vec<T>, Vec<T>) = match p {
                Piece::Interval(i) => (vec![i.lo], vec![i.hi]),
                Piece::Rect(r) => (vec![r.x.lo, r.y.lo], vec![r.x.hi, r.y.hi]),
                Piece::Disk(d) => (
                    vec![d.center[0] - d.radius, d.center[1] - d.radius],
                    vec![d.center[0] + d.radius, d.center[1] + d.radius],
                ),
            };
            for k in 0..self.dim {
                lo[k] = lo[k].min(a[k]);
                hi[k] = hi[k].max(b[k]);
            }
        }
        (lo, hi)
    }

    /// Closed-set membership.
    pub fn contains(&self, x: &[T]) -> bool {
        self.pieces.iter().any(|p| match p {
            Piece::Interval(i) => i.contains(x[0]),
            Piece::Rect(r) => r.contains([x[0], x[1]]),
            Piece::Disk(d) => (x[0] - d.center[0]).hypot(x[1] - d.center[1]) <= d.radius,
        })
    }

    /// Parameter intervals {r > 0 : x + rθ ∈ Ω}, sorted and merged.
    pub fn ray_intervals(&self, x: &[T], theta: &[T]) -> Vec<(T, T)> {
        let mut out: Vec<(T, T)> = Vec::new();
        for p in &self.pieces {
            let seg = match p {
                Piece::Interval(i) => slab(x[0], theta[0], i.lo, i.hi),
                Piece::Rect(r) => {
                    let a = slab(x[0], theta[0], r.x.lo, r.x.hi);
                    let b = slab(x[1], theta[1], r.y.lo, r.y.hi);
                    match (a, b) {
                        (Some(a), Some(b)) => {
                            let lo = a.0.max(b.0);
                            let hi = a.1.min(b.1);
                            if hi > lo {
                                Some((lo, hi))
                            } else {
                                None
                            }
                        }
                        _ => None,
                    }
                }
                Piece::Disk(d) => {
                    let ox = x[0] - d.center[0];
                    let oy = x[1] - d.center[1];
                    let b = ox * theta[0] + oy * theta[1];
                    let c = ox * ox + oy * oy - d.radius * d.radius;
                    let disc = b * b - c;
                    if disc > T::zero() {
                        let sq = disc.sqrt();
                        Some((-b - sq, -b + sq))
                    } else {
                        None
                    }
                }
            };
            if let Some((lo, hi)) = seg {
                let lo = lo.max(T::zero());
                if hi > lo {
                    out.push((lo, hi));
                }
            }
        }
        out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut merged: Vec<(T, T)> = Vec::with_capacity(out.len());
        for seg in out {
            match merged.last_mut() {
                Some(last) if seg.0 <= last.1 => last.1 = last.1.max(seg.1),
                _ => merged.push(seg),
            }
        }
        merged
    }
}

/// {r : lo ≤ x + r·d ≤ hi} as an open parameter interval.
fn slab<T: Real>(x: T, d: T, lo: T, hi: T) -> Option<(T, T)> {
    if d == T::zero() {
        if x >= lo && x <= hi {
            Some((T::neg_infinity(), T::infinity()))
        } else {
            None
        }
    } else {
        let a = (lo - x) / d;
        let b = (hi - x) / d;
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        if b > a {
            Some((a, b))
        } else {
            None
        }
    }
}

fn interiors_overlap<T: Real>(a: &Piece<T>, b: &Piece<T>) -> bool {
    match (a, b) {
        (Piece::Interval(p), Piece::Interval(q)) => p.lo < q.hi && q.lo < p.hi,
        (Piece::Rect(p), Piece::Rect(q)) => p.x.lo < q.x.hi && q.x.lo < p.x.hi && p.y.lo < q.y.hi && q.y.lo < p.y.hi,
        (Piece::Rect(r), Piece::Disk(d)) | (Piece::Disk(d), Piece::Rect(r)) => r.distance_to(d.center) < d.radius,
        _ => true,
    }
}

fn piece_points<T: Real>(p: &Piece<T>) -> (Vec<[T; 2]>, T) {
    match p {
        Piece::Interval(i) => (vec![[i.lo, T::zero()], [i.hi, T::zero()]], T::zero()),
        Piece::Rect(r) => (r.corners().to_vec(), T::zero()),
        Piece::Disk(d) => (vec![d.center], d.radius),
    }
}

/// Max distance between points of two convex pieces: attained at extreme
/// points, with a disk contributing its centre plus radius.
fn piece_max_distance<T: Real>(a: &Piece<T>, b: &Piece<T>) -> T {
    let (pa, ra) = piece_points(a);
    let (pb, rb) = piece_points(b);
    let mut best = T::zero();
    for p in &pa {
        for q in &pb {
            best = best.max((p[0] - q[0]).hypot(p[1] - q[1]) + ra + rb);
        }
    }
    best
}
