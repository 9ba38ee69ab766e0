//! Piecewise-constant meshes on interval unions, rectangle unions and a disk.

use crate::domain::{DomainSpec, Piece, Rect};
use crate::error::{domain, precondition, Result};
use crate::scalar::Real;

/// Sub-squares per axis used to describe a clipped boundary cell.
pub const CLIP_SUBDIVISION: usize = 2;
/// Clipped cells smaller than this fraction of a full cell are merged.
pub const MERGE_FRACTION: f64 = 1e-3;

/// One trial-space cell.
///
/// `parts` describes the cell as a weighted union of rectangles (2D only):
/// full cells carry their own box with weight 1; clipped disk cells carry
/// sub-squares weighted by the fraction of each that lies in the disk.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell<T> {
    pub lo: Vec<T>,
    pub hi: Vec<T>,
    pub measure: T,
    pub parts: Vec<(Rect<T>, T)>,
}

impl<T: Real> Cell<T> {
    fn interval(lo: T, hi: T) -> Self {
        Self { lo: vec![lo], hi: vec![hi], measure: hi - lo, parts: Vec::new() }
    }

    fn rect(r: Rect<T>) -> Self {
        Self { lo: vec![r.x.lo, r.y.lo], hi: vec![r.x.hi, r.y.hi], measure: r.area(), parts: vec![(r, T::one())] }
    }

    /// ∫φ² for the cell's basis function φ = Σ w_p 1_{R_p}: the measure for
    /// full cells, slightly less for clipped ones (partial weights).
    pub fn mass(&self) -> T {
        if self.parts.is_empty() {
            return self.measure;
        }
        self.parts.iter().fold(T::zero(), |a, (r, w)| a + *w * *w * r.area())
    }

    pub fn center(&self) -> Vec<T> {
        self.lo.iter().zip(&self.hi).map(|(&a, &b)| (a + b) * T::lit(0.5)).collect()
    }

    /// Diameter of the bounding box.
    pub fn diameter(&self) -> T {
        self.lo.iter().zip(&self.hi).fold(T::zero(), |acc, (&a, &b)| acc + (b - a) * (b - a)).sqrt()
    }

    /// Smallest distance between the bounding boxes.
    pub fn min_distance(&self, other: &Self) -> T {
        let mut acc = T::zero();
        for d in 0..self.lo.len() {
            let gap = (other.lo[d] - self.hi[d]).max(self.lo[d] - other.hi[d]).max(T::zero());
            acc = acc + gap * gap;
        }
        acc.sqrt()
    }

    /// Largest distance between points of the bounding boxes.
    pub fn max_distance(&self, other: &Self) -> T {
        let mut acc = T::zero();
        for d in 0..self.lo.len() {
            let span = (other.hi[d] - self.lo[d]).max(self.hi[d] - other.lo[d]);
            acc = acc + span * span;
        }
        acc.sqrt()
    }
}

#[derive(Debug, Clone)]
pub struct Mesh<T> {
    pub domain: DomainSpec<T>,
    pub cells: Vec<Cell<T>>,
    /// Nominal cell width.
    pub spacing: T,
}

impl<T: Real> Mesh<T> {
    /// Uniform mesh with about `cells_per_unit` cells per unit length along
    /// each axis. Every interval or rectangle piece gets at least one cell
    /// per axis and is split exactly; a disk is covered by a square grid of
    /// side 2R/n and clipped.
    pub fn uniform(dom: &DomainSpec<T>, cells_per_unit: T) -> Result<Self> {
        if !(cells_per_unit > T::zero()) {
            return domain("cells_per_unit must be positive");
        }
        let count = |len: T| -> usize { (len * cells_per_unit).round().to_usize().unwrap_or(1).max(1) };
        let mut cells = Vec::new();
        let spacing = T::one() / cells_per_unit;
        let has_disk = dom.pieces.iter().any(|p| matches!(p, Piece::Disk(_)));
        if has_disk && dom.pieces.len() > 1 {
            return precondition("a disk mesh must consist of the disk alone");
        }
        for piece in &dom.pieces {
            match *piece {
                Piece::Interval(iv) => {
                    let n = count(iv.len());
                    let h = iv.len() / T::count(n);
                    for k in 0..n {
                        let lo = iv.lo + h * T::count(k);
                        let hi = if k + 1 == n { iv.hi } else { iv.lo + h * T::count(k + 1) };
                        cells.push(Cell::interval(lo, hi));
                    }
                }
                Piece::Rect(r) => {
                    let nx = count(r.x.len());
                    let ny = count(r.y.len());
                    let hx = r.x.len() / T::count(nx);
                    let hy = r.y.len() / T::count(ny);
                    for j in 0..ny {
                        let y0 = r.y.lo + hy * T::count(j);
                        let y1 = if j + 1 == ny { r.y.hi } else { r.y.lo + hy * T::count(j + 1) };
                        for i in 0..nx {
                            let x0 = r.x.lo + hx * T::count(i);
                            let x1 = if i + 1 == nx { r.x.hi } else { r.x.lo + hx * T::count(i + 1) };
                            cells.push(Cell::rect(Rect::new(x0, x1, y0, y1)));
                        }
                    }
                }
                Piece::Disk(d) => {
                    let n = count(d.radius + d.radius);
                    cells = disk_cells(d.center, d.radius, n);
                    return Ok(Self { domain: dom.clone(), cells, spacing: (d.radius + d.radius) / T::count(n) });
                }
            }
        }
        Ok(Self { domain: dom.clone(), cells, spacing })
    }

    /// One-dimensional mesh with about `total` cells spread over the pieces
    /// in proportion to their lengths.
    pub fn with_cells(dom: &DomainSpec<T>, total: usize) -> Result<Self> {
        if total == 0 {
            return domain("cell count must be positive");
        }
        if dom.dim != 1 {
            let side = T::count(total).sqrt();
            let (lo, hi) = dom.bbox();
            let width = (hi[0] - lo[0]).max(hi[1] - lo[1]);
            return Self::uniform(dom, side / width);
        }
        Self::uniform(dom, T::count(total) / dom.measure())
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.domain.dim
    }

    pub fn measures(&self) -> Vec<T> {
        self.cells.iter().map(|c| c.measure).collect()
    }

    pub fn total_measure(&self) -> T {
        self.cells.iter().fold(T::zero(), |a, c| a + c.measure)
    }

    pub fn max_cell_diameter(&self) -> T {
        self.cells.iter().fold(T::zero(), |a, c| a.max(c.diameter()))
    }

    /// Distance of every cell center from the center of the domain's
    /// bounding box.
    pub fn radial_distances(&self) -> Vec<T> {
        let c0 = self.domain.bbox_center();
        self.cells
            .iter()
            .map(|c| c.center().iter().zip(&c0).fold(T::zero(), |a, (&x, &y)| a + (x - y) * (x - y)).sqrt())
            .collect()
    }

    /// Cell indices ordered by distance of their centers from the domain
    /// center, ties broken by index.
    pub fn radial_order(&self) -> Vec<usize> {
        // distances equal up to 1e-9 cell widths count as ties
        let unit = self.spacing * T::lit(1e-9);
        let key: Vec<i64> =
            self.radial_distances().iter().map(|&d| (d / unit).round().to_i64().unwrap_or(i64::MAX)).collect();
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by_key(|&i| (key[i], i));
        idx
    }

    /// Piecewise-constant coefficients of `f` by midpoint sampling of each
    /// cell (the cell center in 2D).
    pub fn sample<F: Fn(&[T]) -> T>(&self, f: F) -> Vec<T> {
        self.cells.iter().map(|c| f(&c.center())).collect()
    }
}

/// Area of the disk of radius `r` centered at the origin intersected with
/// [x0, x1] × [y0, y1].
pub fn disk_rect_area<T: Real>(r: T, x0: T, x1: T, y0: T, y1: T) -> T {
    let a = x0.max(-r);
    let b = x1.min(r);
    if !(b > a) || !(y1 > y0) {
        return T::zero();
    }
    let half = |x: T| (r * r - x * x).max(T::zero()).sqrt();
    // ∫ √(r² − x²) dx
    let prim = |x: T| {
        let x = x.max(-r).min(r);
        (x * half(x) + r * r * (x / r).max(-T::one()).min(T::one()).asin()) * T::lit(0.5)
    };
    let mut xs = vec![a, b];
    for y in [y0, y1] {
        if y.abs() < r {
            let w = half(y);
            xs.push(w);
            xs.push(-w);
        }
    }
    xs.retain(|&x| x >= a && x <= b);
    xs.sort_by(|p, q| p.partial_cmp(q).unwrap());
    let mut area = T::zero();
    for w in xs.windows(2) {
        let (p, q) = (w[0], w[1]);
        if !(q > p) {
            continue;
        }
        let m = (p + q) * T::lit(0.5);
        let s = half(m);
        let top_is_circle = s < y1;
        let bottom_is_circle = -s > y0;
        let top_m = if top_is_circle { s } else { y1 };
        let bot_m = if bottom_is_circle { -s } else { y0 };
        if top_m <= bot_m {
            continue;
        }
        let top = if top_is_circle { prim(q) - prim(p) } else { y1 * (q - p) };
        let bot = if bottom_is_circle { -(prim(q) - prim(p)) } else { y0 * (q - p) };
        area = area + top - bot;
    }
    area
}

fn disk_cells<T: Real>(center: [T; 2], radius: T, n: usize) -> Vec<Cell<T>> {
    let h = (radius + radius) / T::count(n);
    let x0 = center[0] - radius;
    let y0 = center[1] - radius;
    let full = h * h;
    let edge = |k: usize, o: T| if k == n { o + radius + radius } else { o + h * T::count(k) };
    let area = |r: &Rect<T>| {
        disk_rect_area(radius, r.x.lo - center[0], r.x.hi - center[0], r.y.lo - center[1], r.y.hi - center[1])
    };
    let inside = |p: [T; 2]| (p[0] - center[0]).hypot(p[1] - center[1]) <= radius;
    let mut grid: Vec<Option<Cell<T>>> = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            let r = Rect::new(edge(i, x0), edge(i + 1, x0), edge(j, y0), edge(j + 1, y0));
            if r.corners().iter().all(|&p| inside(p)) {
                grid.push(Some(Cell::rect(r)));
                continue;
            }
            let a = area(&r);
            if a <= T::zero() {
                grid.push(None);
                continue;
            }
            let s = CLIP_SUBDIVISION;
            let (sx, sy) = (r.x.len() / T::count(s), r.y.len() / T::count(s));
            let mut parts = Vec::new();
            for q in 0..s {
                for p in 0..s {
                    let sub = Rect::new(
                        r.x.lo + sx * T::count(p),
                        if p + 1 == s { r.x.hi } else { r.x.lo + sx * T::count(p + 1) },
                        r.y.lo + sy * T::count(q),
                        if q + 1 == s { r.y.hi } else { r.y.lo + sy * T::count(q + 1) },
                    );
                    let w = area(&sub) / sub.area();
                    if w > T::zero() {
                        parts.push((sub, w.min(T::one())));
                    }
                }
            }
            grid.push(Some(Cell { lo: vec![r.x.lo, r.y.lo], hi: vec![r.x.hi, r.y.hi], measure: a, parts }));
        }
    }
    // merge slivers into their largest non-sliver neighbour
    let tiny = |c: &Cell<T>| c.measure < T::lit(MERGE_FRACTION) * full;
    for j in 0..n {
        for i in 0..n {
            let id = j * n + i;
            let is_tiny = matches!(&grid[id], Some(c) if tiny(c));
            if !is_tiny {
                continue;
            }
            let mut best: Option<(usize, T)> = None;
            for dj in -1i64..=1 {
                for di in -1i64..=1 {
                    let (ii, jj) = (i as i64 + di, j as i64 + dj);
                    if (di == 0 && dj == 0) || ii < 0 || jj < 0 || ii >= n as i64 || jj >= n as i64 {
                        continue;
                    }
                    let nb = jj as usize * n + ii as usize;
                    if let Some(c) = &grid[nb] {
                        if !tiny(c) && best.is_none_or(|(_, m)| c.measure > m) {
                            best = Some((nb, c.measure));
                        }
                    }
                }
            }
            if let Some((nb, _)) = best {
                let sliver = grid[id].take().unwrap();
                let target = grid[nb].as_mut().unwrap();
                for d in 0..2 {
                    target.lo[d] = target.lo[d].min(sliver.lo[d]);
                    target.hi[d] = target.hi[d].max(sliver.hi[d]);
                }
                target.measure = target.measure + sliver.measure;
                target.parts.extend(sliver.parts);
            }
        }
    }
    grid.into_iter().flatten().collect()
}
