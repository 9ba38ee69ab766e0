//! Galerkin discretization of the Dirichlet forms on piecewise constants,
//! generalized eigenvalues, rearrangement and Faber–Krahn comparisons.
//!
//! For u = Σ c_i 1_{C_i} every form is a quadratic form in c. With
//! P_ik = ∫_{C_i}∫_{C_k} k_n(x−y) and E_i = ∫_{C_i}∫_{ℝ^N∖C_i} k_n(x−y),
//! the kernel part ½(u, u)_n has matrix S_n with S_ii = E_i, S_ik = −P_ik, and
//! the outer part has A_ik = ∫_{C_i}∫_{C_k} j_n(x−y). The half in front of
//! (u, u)_n makes ∫ u 𝓚_n u = cᵀ(S_n − A_n)c, so the discrete Rayleigh
//! quotients approximate the spectrum of 𝓛_m = Σ α_j 𝓚_j itself:
//!
//! * 𝓘_m = α₀M + Σ_{n≤m} α_n (S_n − A_n)
//! * 𝓖_m = S_m − A_m
//! * 𝓠_m = α₀M + Σ_{n≤m} α_n S_n^{(r₀)}, the kernel cut off at r₀.

pub mod mesh;
pub mod planar;
mod solve;

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::coeffs::{alpha_coeffs, CoeffLedger};
use crate::domain::{DomainSpec, Interval, Piece, Rect};
use crate::error::{domain, precondition, Error, Result};
use crate::kernels::{combined_kernel, outer_pair_integral_1d, CutoffKernel1d, KernelSpec};
use crate::scalar::Real;

pub use mesh::{Cell, Mesh};
use planar::PlanarKernel;

/// Cell count above which the dense solver gives way to shift-invert.
pub const DENSE_LIMIT: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormKind {
    /// 𝓘_m, the form of 𝓛_m
    I,
    /// 𝓖_m, the form of 𝓚_m
    G,
    /// 𝓠_m, the small-domain combined form
    Q,
}

impl std::fmt::Display for FormKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FormKind::I => "I",
            FormKind::G => "G",
            FormKind::Q => "Q",
        })
    }
}

#[derive(Debug, Clone)]
pub struct FormMatrices<T> {
    pub form_kind: FormKind,
    pub stiffness: DMatrix<T>,
    /// Diagonal of the mass matrix, ∫φ_i²: the cell measure, except on
    /// clipped disk cells whose basis function has fractional weights.
    pub mass: Vec<T>,
    pub ledger: CoeffLedger<T>,
    pub mesh: Mesh<T>,
    /// Largest |entry| of the outer (j_n) part that went into the stiffness.
    pub outer_norm: T,
}

impl<T: Real> FormMatrices<T> {
    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    /// cᵀ A c.
    pub fn energy(&self, c: &[T]) -> T {
        quad_form(&self.stiffness, c)
    }

    /// cᵀ M c.
    pub fn mass_norm2(&self, c: &[T]) -> T {
        c.iter().zip(&self.mass).fold(T::zero(), |a, (&x, &m)| a + m * x * x)
    }

    pub fn rayleigh(&self, c: &[T]) -> T {
        self.energy(c) / self.mass_norm2(c)
    }

    /// Largest row sum of |A|.
    pub fn norm(&self) -> T {
        self.stiffness.row_iter().map(|r| r.iter().fold(T::zero(), |a, x| a + x.abs())).fold(T::zero(), |a, b| a.max(b))
    }
}

fn quad_form<T: Real>(a: &DMatrix<T>, c: &[T]) -> T {
    let n = c.len();
    let mut acc = T::zero();
    for i in 0..n {
        let mut row = T::zero();
        for k in 0..n {
            row = row + a[(i, k)] * c[k];
        }
        acc = acc + c[i] * row;
    }
    acc
}

/// Symmetric matrix from its upper triangle, rows computed in parallel and
/// written in a fixed order.
fn symmetric_from<T: Real, F: Fn(usize, usize) -> T + Sync>(n: usize, f: F) -> DMatrix<T> {
    let rows: Vec<Vec<T>> = (0..n).into_par_iter().map(|i| (i..n).map(|k| f(i, k)).collect()).collect();
    let mut m = DMatrix::from_element(n, n, T::zero());
    for (i, row) in rows.into_iter().enumerate() {
        for (off, v) in row.into_iter().enumerate() {
            m[(i, i + off)] = v;
            m[(i + off, i)] = v;
        }
    }
    m
}

fn add_scaled<T: Real>(a: &mut DMatrix<T>, b: &DMatrix<T>, s: T) {
    for (x, &y) in a.as_mut_slice().iter_mut().zip(b.as_slice()) {
        *x = *x + s * y;
    }
}

fn interval_of<T: Real>(c: &Cell<T>) -> Interval<T> {
    Interval::new(c.lo[0], c.hi[0])
}

/// Matrix of the kernel part ½(u, u)_n with kernel g_n 1_{|x−y|<cutoff}.
pub fn kernel_stiffness<T: Real>(mesh: &Mesh<T>, n: usize, cutoff: T) -> Result<DMatrix<T>> {
    KernelSpec::new(n, mesh.dim())?;
    if !(cutoff > T::zero() && cutoff <= T::one()) {
        return domain(format!("kernel cutoff must lie in (0, 1], got {cutoff}"));
    }
    let cells = &mesh.cells;
    match mesh.dim() {
        1 => {
            let k = CutoffKernel1d::new(n, cutoff)?;
            Ok(symmetric_from(cells.len(), |i, j| {
                let (a, b) = (interval_of(&cells[i]), interval_of(&cells[j]));
                if i == j {
                    k.self_energy(a.len())
                } else if a.hi <= b.lo {
                    -k.ordered_pair(a, b)
                } else {
                    -k.ordered_pair(b, a)
                }
            }))
        }
        2 => {
            let k = PlanarKernel::new(n, T::zero(), cutoff);
            Ok(symmetric_from(cells.len(), |i, j| {
                let (ci, cj) = (&cells[i], &cells[j]);
                if i != j {
                    if ci.min_distance(cj) >= cutoff {
                        return T::zero();
                    }
                    return -parts_pair(&k, &ci.parts, &cj.parts);
                }
                // ½∫∫(φ(x) − φ(y))² for φ = Σ w_p 1_{R_p}
                let mut acc = T::zero();
                for (p, (rp, wp)) in ci.parts.iter().enumerate() {
                    acc = acc + *wp * *wp * k.exterior(rp);
                    for (rq, wq) in ci.parts.iter().skip(p + 1) {
                        acc = acc - T::lit(2.0) * *wp * *wq * k.pair(rp, rq);
                    }
                }
                acc
            }))
        }
        d => domain(format!("unsupported dimension {d}")),
    }
}

fn parts_pair<T: Real>(k: &PlanarKernel<T>, a: &[(Rect<T>, T)], b: &[(Rect<T>, T)]) -> T {
    let mut acc = T::zero();
    for (ra, wa) in a {
        for (rb, wb) in b {
            acc = acc + *wa * *wb * k.pair(ra, rb);
        }
    }
    acc
}

/// Matrix of ∫∫ u(x)v(y) j_n(x−y), assembled only over pairs of cells whose
/// exact bounding geometry reaches beyond unit distance.
pub fn outer_matrix<T: Real>(mesh: &Mesh<T>, n: usize) -> Result<DMatrix<T>> {
    let spec = KernelSpec::new(n, mesh.dim())?;
    let cells = &mesh.cells;
    let planar = PlanarKernel::new(n, T::one(), T::infinity());
    let out = symmetric_from(cells.len(), |i, j| {
        let (ci, cj) = (&cells[i], &cells[j]);
        if ci.max_distance(cj) <= T::one() {
            return T::zero();
        }
        match mesh.dim() {
            1 => outer_pair_integral_1d(spec, interval_of(ci), interval_of(cj)).unwrap_or(T::nan()),
            _ => parts_pair(&planar, &ci.parts, &cj.parts),
        }
    });
    if out.iter().any(|x| x.is_nan()) {
        return Err(Error::Numerical("outer kernel integral failed".into()));
    }
    Ok(out)
}

fn check_mesh<T: Real>(mesh: &Mesh<T>) -> Result<()> {
    if mesh.is_empty() {
        return domain("mesh has no cells");
    }
    let d = mesh.max_cell_diameter();
    if !(d < T::one()) {
        return precondition(format!("mesh cells must have diameter below 1, got {d}"));
    }
    Ok(())
}

/// Radius of the ball (centered at the domain's bounding-box center) that
/// the domain must fit in for 𝓠_m.
pub fn q_form_radius<T: Real>(ledger: &CoeffLedger<T>) -> Result<T> {
    Ok(combined_kernel(ledger)?.r0 * T::lit(0.5))
}

fn ensure_within<T: Real>(dom: &DomainSpec<T>, r: T, what: &str) -> Result<()> {
    let c = dom.bbox_center();
    if !dom.within_ball(&c, r) {
        return precondition(format!(
            "{what}: the domain must lie in a ball of radius {r}, but reaches {} from its center",
            dom.max_distance_from(&c)
        ));
    }
    Ok(())
}

/// Stiffness and mass matrices of the chosen form on the mesh.
pub fn assemble<T: Real>(form_kind: FormKind, ledger: &CoeffLedger<T>, mesh: &Mesh<T>) -> Result<FormMatrices<T>> {
    check_mesh(mesh)?;
    if ledger.dim != mesh.dim() {
        return domain(format!("ledger dimension {} does not match mesh dimension {}", ledger.dim, mesh.dim()));
    }
    let n = mesh.len();
    let m = ledger.m;
    let mass: Vec<T> = mesh.cells.iter().map(|c| c.mass()).collect();
    let mut stiffness = DMatrix::from_element(n, n, T::zero());
    let mut outer_norm = T::zero();
    let add_outer = |a: &mut DMatrix<T>, order: usize, scale: T, norm: &mut T| -> Result<()> {
        let o = outer_matrix(mesh, order)?;
        *norm = o.iter().fold(*norm, |acc, x| acc.max((scale * *x).abs()));
        add_scaled(a, &o, -scale);
        Ok(())
    };
    match form_kind {
        FormKind::I => {
            for (order, &a) in ledger.alpha.iter().enumerate().skip(1) {
                add_scaled(&mut stiffness, &kernel_stiffness(mesh, order, T::one())?, a);
                add_outer(&mut stiffness, order, a, &mut outer_norm)?;
            }
            for i in 0..n {
                stiffness[(i, i)] = stiffness[(i, i)] + ledger.alpha[0] * mass[i];
            }
        }
        FormKind::G => {
            add_scaled(&mut stiffness, &kernel_stiffness(mesh, m, T::one())?, T::one());
            add_outer(&mut stiffness, m, T::one(), &mut outer_norm)?;
        }
        FormKind::Q => {
            let r0 = combined_kernel(ledger)?.r0;
            ensure_within(&mesh.domain, r0 * T::lit(0.5), "Q form")?;
            for (order, &a) in ledger.alpha.iter().enumerate().skip(1) {
                add_scaled(&mut stiffness, &kernel_stiffness(mesh, order, r0)?, a);
            }
            check_psd(&stiffness)?;
            for i in 0..n {
                stiffness[(i, i)] = stiffness[(i, i)] + ledger.alpha[0] * mass[i];
            }
        }
    }
    Ok(FormMatrices { form_kind, stiffness, mass, ledger: ledger.clone(), mesh: mesh.clone(), outer_norm })
}

/// Positive semidefiniteness of the kernel part of 𝓠_m: Cholesky of
/// K + 10⁻⁸‖K‖I succeeds exactly when λ_min(K) > −10⁻⁸‖K‖.
fn check_psd<T: Real>(k: &DMatrix<T>) -> Result<()> {
    let a = to_f64(k);
    let norm = solve::inf_norm(&a);
    let mut b = a;
    for i in 0..b.nrows() {
        b[(i, i)] += 1e-8 * norm;
    }
    if b.cholesky().is_none() {
        return Err(Error::Numerical(format!(
            "kernel part of the Q form is not positive semidefinite (‖K‖∞ = {norm:e})"
        )));
    }
    Ok(())
}

fn to_f64<T: Real>(a: &DMatrix<T>) -> DMatrix<f64> {
    a.map(|x| x.as_f64())
}

#[derive(Debug, Clone)]
pub struct EigenResult<T> {
    pub eigenvalues: Vec<T>,
    /// Cell coefficients of each eigenvector, mass-orthonormal, with the
    /// largest-magnitude entry (first one, up to a relative 1e-6) positive.
    pub vectors: Vec<Vec<T>>,
    pub mesh: Mesh<T>,
    pub form_kind: FormKind,
    /// ‖(A − λM)v‖∞ per pair.
    pub residuals: Vec<T>,
    /// λ₂ − λ₁ when at least two pairs were requested.
    pub spectral_gap: Option<T>,
}

#[derive(Debug, Clone, Copy)]
pub struct EigenConfig {
    pub dense_limit: usize,
    pub max_iterations: usize,
}

impl Default for EigenConfig {
    fn default() -> Self {
        Self { dense_limit: DENSE_LIMIT, max_iterations: 2000 }
    }
}

/// The k smallest generalized eigenpairs of (stiffness, mass).
pub fn eigensolve<T: Real>(matrices: &FormMatrices<T>, k: usize) -> Result<EigenResult<T>> {
    eigensolve_with(matrices, k, EigenConfig::default())
}

pub fn eigensolve_with<T: Real>(matrices: &FormMatrices<T>, k: usize, cfg: EigenConfig) -> Result<EigenResult<T>> {
    let n = matrices.len();
    if k == 0 || k > n {
        return domain(format!("requested {k} eigenpairs from a {n}-cell mesh"));
    }
    if let Some(bad) = matrices.mass.iter().find(|m| !(**m > T::zero())) {
        return precondition(format!("mass entries must be positive, found {bad}"));
    }
    let a = to_f64(&matrices.stiffness);
    let d: Vec<f64> = matrices.mass.iter().map(|m| 1.0 / m.as_f64().sqrt()).collect();
    let reduced = DMatrix::from_fn(n, n, |i, j| a[(i, j)] * d[i] * d[j]);
    let reduced = (&reduced + reduced.transpose()) * 0.5;
    let pairs = if n <= cfg.dense_limit {
        solve::dense_lowest(&reduced, k)?
    } else {
        solve::shift_invert_lowest(&reduced, k, 1e-10, cfg.max_iterations)?
    };
    let norm_a = solve::inf_norm(&a);
    let mass_ratio = {
        let (lo, hi) =
            matrices.mass.iter().fold((f64::INFINITY, 0.0f64), |(l, h), m| (l.min(m.as_f64()), h.max(m.as_f64())));
        hi / lo
    };
    let mut eigenvalues = Vec::with_capacity(k);
    let mut vectors = Vec::with_capacity(k);
    let mut residuals = Vec::with_capacity(k);
    for j in 0..k {
        let lam = pairs.values[j];
        let mut v: Vec<f64> = (0..n).map(|i| pairs.vectors[(i, j)] * d[i]).collect();
        // the first entry within a relative 1e-6 of the largest magnitude decides
        // the sign, so antisymmetric modes do not flip on rounding-level ties
        let top = v.iter().fold(0.0f64, |b, x| b.max(x.abs()));
        let lead = v.iter().copied().find(|x| x.abs() >= (1.0 - 1e-6) * top).unwrap_or(0.0);
        if lead < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        let res = (0..n)
            .map(|i| {
                let av: f64 = (0..n).map(|c| a[(i, c)] * v[c]).sum();
                (av - lam * matrices.mass[i].as_f64() * v[i]).abs()
            })
            .fold(0.0, f64::max);
        if res > 1e-6 * norm_a.max(f64::MIN_POSITIVE) {
            return Err(Error::Numerical(format!(
                "eigenpair {j} residual {res:e} exceeds 1e-6·‖A‖ (‖A‖∞ = {norm_a:e}, mass ratio {mass_ratio:e})"
            )));
        }
        eigenvalues.push(T::lit(lam));
        residuals.push(T::lit(res));
        vectors.push(v);
    }
    for p in 0..k {
        for q in 0..=p {
            let dot: f64 = (0..n).map(|i| vectors[p][i] * vectors[q][i] * matrices.mass[i].as_f64()).sum();
            let target = if p == q { 1.0 } else { 0.0 };
            if (dot - target).abs() > 1e-8 {
                return Err(Error::Numerical(format!(
                    "eigenvectors {p}, {q} not mass-orthonormal: {dot:e} (mass ratio {mass_ratio:e})"
                )));
            }
        }
    }
    let spectral_gap = if k >= 2 { Some(T::lit(pairs.values[1] - pairs.values[0])) } else { None };
    Ok(EigenResult {
        eigenvalues,
        vectors: vectors.into_iter().map(|v| v.into_iter().map(T::lit).collect()).collect(),
        mesh: matrices.mesh.clone(),
        form_kind: matrices.form_kind,
        residuals,
        spectral_gap,
    })
}

/// Equi-measurable radially non-increasing reordering of nonnegative cell
/// coefficients: the largest value goes to the cell nearest the center.
pub fn rearrange_decreasing<T: Real>(mesh: &Mesh<T>, u: &[T]) -> Result<Vec<T>> {
    if u.len() != mesh.len() {
        return domain(format!("{} coefficients for {} cells", u.len(), mesh.len()));
    }
    if let Some(bad) = u.iter().find(|x| !(**x >= T::zero())) {
        return domain(format!("rearrangement needs nonnegative coefficients, found {bad}"));
    }
    let m0 = mesh.cells[0].measure;
    if mesh.cells.iter().any(|c| (c.measure - m0).abs() > T::lit(1e-12) * m0) {
        return precondition("rearrangement needs cells of equal measure");
    }
    let mut sorted = u.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut out = vec![T::zero(); u.len()];
    for (rank, &cell) in mesh.radial_order().iter().enumerate() {
        out[cell] = sorted[rank];
    }
    Ok(out)
}

/// Largest increase of the coefficients along the radial cell order, as a
/// fraction of the largest coefficient; zero for radially non-increasing data.
pub fn radial_monotonicity_defect<T: Real>(mesh: &Mesh<T>, u: &[T]) -> T {
    let order = mesh.radial_order();
    let dist = mesh.radial_distances();
    let scale = u.iter().fold(T::zero(), |a, x| a.max(x.abs())).max(T::min_positive_value());
    let tol = mesh.spacing * T::lit(1e-6);
    let mut worst = T::zero();
    for (p, &i) in order.iter().enumerate() {
        for &j in &order[p + 1..] {
            if dist[j] - dist[i] > tol {
                worst = worst.max((u[j] - u[i]) / scale);
            }
        }
    }
    worst
}

#[derive(Debug, Clone)]
pub struct FkRow<T> {
    pub index: usize,
    pub measure: T,
    pub cells: usize,
    pub lambda1: T,
    /// A single interval or a single disk.
    pub is_ball: bool,
    pub is_min: bool,
}

#[derive(Debug, Clone)]
pub struct FkTable<T> {
    pub m: usize,
    pub rows: Vec<FkRow<T>>,
    /// λ₁ of the first ball in the list, the reference minimum.
    pub reference: Option<T>,
    /// Whether the reference ball attains the minimum over the list.
    pub ball_is_min: bool,
}

fn is_ball<T>(d: &DomainSpec<T>) -> bool {
    d.pieces.len() == 1 && matches!(d.pieces[0], Piece::Interval(_) | Piece::Disk(_))
}

/// First 𝓠_m eigenvalue of each domain at a common resolution.
pub fn faber_krahn_compare<T: Real>(
    ledger: &CoeffLedger<T>,
    domains: &[DomainSpec<T>],
    cells_per_unit: T,
) -> Result<FkTable<T>> {
    if ledger.m < 2 {
        return domain("the Faber–Krahn comparison needs m >= 2");
    }
    if domains.is_empty() {
        return domain("no domains to compare");
    }
    let rm = combined_kernel(ledger)?.rm;
    let mu0 = domains[0].measure();
    for (i, d) in domains.iter().enumerate() {
        ensure_within(d, rm * T::lit(0.5), &format!("domain {i}"))?;
        if (d.measure() - mu0).abs() > T::lit(1e-12) * mu0 {
            return precondition(format!("domain {i} has measure {} but domain 0 has {mu0}", d.measure()));
        }
    }
    let rows: Vec<Result<FkRow<T>>> = domains
        .par_iter()
        .enumerate()
        .map(|(index, d)| {
            let mesh = Mesh::uniform(d, cells_per_unit)?;
            let mats = assemble(FormKind::Q, ledger, &mesh)?;
            let eig = eigensolve(&mats, 1)?;
            Ok(FkRow {
                index,
                measure: d.measure(),
                cells: mesh.len(),
                lambda1: eig.eigenvalues[0],
                is_ball: is_ball(d),
                is_min: false,
            })
        })
        .collect();
    let mut rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let min = rows.iter().map(|r| r.lambda1).fold(T::infinity(), |a, b| a.min(b));
    for r in rows.iter_mut() {
        r.is_min = r.lambda1 == min;
    }
    let reference = rows.iter().find(|r| r.is_ball).map(|r| r.lambda1);
    let ball_is_min = reference.is_some_and(|v| v == min);
    Ok(FkTable { m: ledger.m, rows, reference, ball_is_min })
}

/// Lowest `count` eigenpairs of 𝓖_n on a mesh of a domain inside B_{1/2},
/// where the j_n term vanishes identically.
pub fn k_form_first_eig<T: Real>(n: usize, mesh: &Mesh<T>, count: usize) -> Result<EigenResult<T>> {
    ensure_within(&mesh.domain, T::lit(0.5), "K form")?;
    let ledger = alpha_coeffs::<T>(n, mesh.dim())?;
    let mats = assemble(FormKind::G, &ledger, mesh)?;
    if mats.outer_norm != T::zero() {
        return Err(Error::Numerical(format!("outer part is {} on a domain inside B_1/2", mats.outer_norm)));
    }
    eigensolve(&mats, count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ball() -> Mesh<f64> {
        Mesh::uniform(&DomainSpec::interval(-0.25, 0.25).unwrap(), 400.0).unwrap()
    }

    #[test]
    fn q_equals_i_for_first_order() {
        // r₀ = 1 for m = 1, so on a domain of diameter < 1 both forms coincide
        let mesh = Mesh::uniform(&DomainSpec::interval(-0.25, 0.25).unwrap(), 80.0).unwrap();
        let l = alpha_coeffs::<f64>(1, 1).unwrap();
        let i = assemble(FormKind::I, &l, &mesh).unwrap();
        let q = assemble(FormKind::Q, &l, &mesh).unwrap();
        assert_eq!(i.outer_norm, 0.0);
        assert!((&i.stiffness - &q.stiffness).amax() < 1e-14 * i.norm());
    }

    #[test]
    fn dense_and_shift_invert_agree() {
        let mesh = ball();
        let l = alpha_coeffs::<f64>(2, 1).unwrap();
        let mats = assemble(FormKind::I, &l, &mesh).unwrap();
        let dense = eigensolve(&mats, 4).unwrap();
        let si = eigensolve_with(&mats, 4, EigenConfig { dense_limit: 10, ..Default::default() }).unwrap();
        for (a, b) in dense.eigenvalues.iter().zip(&si.eigenvalues) {
            assert!((a - b).abs() < 1e-8 * a.abs().max(1.0), "{a} vs {b}");
        }
        for (u, v) in dense.vectors.iter().zip(&si.vectors) {
            let diff = u.iter().zip(v).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            let sup = u.iter().fold(0.0f64, |m, a| m.max(a.abs()));
            assert!(diff < 1e-5 * sup);
        }
    }

    #[test]
    fn rearrangement_basics() {
        let mesh = Mesh::uniform(&DomainSpec::interval(-0.1, 0.1).unwrap(), 50.0).unwrap();
        let sym: Vec<f64> = mesh.radial_distances().iter().map(|d| 1.0 - d).collect();
        let r = rearrange_decreasing(&mesh, &sym).unwrap();
        assert_eq!(radial_monotonicity_defect(&mesh, &r), 0.0);
        let mut a = r.clone();
        let mut b = sym.clone();
        a.sort_by(|x, y| x.partial_cmp(y).unwrap());
        b.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert_eq!(a, b);
        assert!(rearrange_decreasing(&mesh, &vec![-1.0; mesh.len()]).is_err());
    }

    #[test]
    fn preconditions() {
        let big = Mesh::uniform(&DomainSpec::interval(0.0, 3.0).unwrap(), 0.5).unwrap();
        let l = alpha_coeffs::<f64>(2, 1).unwrap();
        assert!(matches!(assemble(FormKind::I, &l, &big), Err(Error::Precondition(_))));
        let wide = Mesh::uniform(&DomainSpec::interval(-0.4, 0.4).unwrap(), 50.0).unwrap();
        assert!(matches!(assemble(FormKind::Q, &l, &wide), Err(Error::Precondition(_))));
        assert!(k_form_first_eig(1, &wide, 1).is_ok());
        let wider = Mesh::uniform(&DomainSpec::interval(-0.6, 0.6).unwrap(), 50.0).unwrap();
        assert!(matches!(k_form_first_eig(1, &wider, 1), Err(Error::Precondition(_))));
        let m1 = alpha_coeffs::<f64>(1, 1).unwrap();
        let d = [DomainSpec::interval(-0.1, 0.1).unwrap()];
        assert!(faber_krahn_compare(&m1, &d, 100.0).is_err());
        let uneven = [DomainSpec::interval(-0.1, 0.1).unwrap(), DomainSpec::interval(-0.1, 0.11).unwrap()];
        assert!(faber_krahn_compare(&l, &uneven, 100.0).is_err());
    }
}
