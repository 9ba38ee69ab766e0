use std::path::{Path, PathBuf};

use loglap::coeffs::{alpha_coeffs, c_n, rho};
use loglap::eigen::{assemble, eigensolve, faber_krahn_compare, FormKind};
use loglap::expansion::{default_bump, default_samples, study, Side};
use loglap::kernels::combined_kernel;
use loglap::pointwise::{apply_K, apply_L, frac_lap, riesz};
use loglap::spectral::{apply_symbol, ApplyOptions, SymbolKind};
use loglap::{EvalReport, Grid, Ledger, Mesh};
use rayon::prelude::*;

use crate::io::{num, read_domain, read_grid, write_grid, Table};
use crate::{CliError, Command, Form, Method, Op, SideArg};

pub fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Coeffs { dim, order, out } => coeffs(dim as usize, order as usize, out.as_deref()),
        Command::Apply { op, order, s, dim, method, input, output, budget } => {
            let budget = budget.unwrap_or_else(|| sidecar(&output));
            apply(op, order.map(|o| o as usize), s, dim, method, &input, &output, &budget)
        }
        Command::Bump { dim, nodes, half_width, output } => bump(dim as usize, nodes, half_width, &output),
        Command::Eig { form, m, domain, cells, count, out, vectors } => {
            eig(form, m as usize, &domain, cells, count, out.as_deref(), vectors.as_deref())
        }
        Command::Fk { m, domains, cells_per_unit, out } => fk(m as usize, &domains, cells_per_unit, out.as_deref()),
        Command::Expand { side, s0, n, input, dim, out } => {
            expand(side, s0, n as usize, input.as_deref(), dim as usize, out.as_deref())
        }
        Command::Radii { m, dim, out } => radii(m as usize, dim as usize, out.as_deref()),
    }
}

fn sidecar(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".budget.csv");
    PathBuf::from(name)
}

fn coeffs(dim: usize, order: usize, out: Option<&Path>) -> Result<(), CliError> {
    let ledger: Ledger = alpha_coeffs(order, dim)?;
    let mut t = Table::new(&["name", "index", "value"]);
    for (j, a) in ledger.alpha.iter().enumerate() {
        t.push(vec!["alpha".into(), j.to_string(), num(*a)]);
    }
    t.push(vec!["rho".into(), String::new(), num(rho::<f64>(dim)?)]);
    t.push(vec!["c".into(), String::new(), num(c_n::<f64>(dim)?)]);
    for (j, c) in ledger.series.kappa1_coeffs.iter().enumerate() {
        t.push(vec!["kappa1".into(), j.to_string(), num(*c)]);
    }
    for (j, c) in ledger.series.kappa2_coeffs.iter().enumerate() {
        t.push(vec!["kappa2".into(), j.to_string(), num(*c)]);
    }
    t.emit(out)
}

#[allow(clippy::too_many_arguments)]
fn apply(
    op: Op,
    order: Option<usize>,
    s: Option<f64>,
    dim: Option<usize>,
    method: Method,
    input: &Path,
    output: &Path,
    budget: &Path,
) -> Result<(), CliError> {
    let u = read_grid(input)?;
    if let Some(d) = dim {
        if d != u.dim {
            return Err(CliError::Usage(format!("--dim {d} but the grid has dimension {}", u.dim)));
        }
    }
    let need_order = || order.ok_or_else(|| CliError::Usage(format!("--op {op:?} needs --order")));
    let need_s = || s.ok_or_else(|| CliError::Usage(format!("--op {op:?} needs --s")));
    if matches!(op, Op::Riesz) {
        let s = need_s()?;
        let half = 0.5 * u.dim as f64;
        if !(s > 0.0 && s < half) {
            return Err(
                loglap::Error::Domain(format!("Riesz order must lie in (0, N/2) = (0, {half}), got s = {s}")).into()
            );
        }
    }
    match method {
        Method::Quad => {
            let (order, s) = match op {
                Op::K | Op::L => (need_order()?, 0.0),
                Op::Fraclap | Op::Riesz => (0, need_s()?),
            };
            let reports: Vec<EvalReport> = (0..u.len())
                .into_par_iter()
                .map(|i| {
                    let x = u.node(i);
                    match op {
                        Op::K => apply_K(order, &u, &x),
                        Op::L => apply_L(order, &u, &x),
                        Op::Fraclap => frac_lap(s, &u, &x),
                        Op::Riesz => riesz(s, &u, &x),
                    }
                })
                .collect::<loglap::Result<_>>()?;
            let out = u.with_values(reports.iter().map(|r| r.value).collect())?;
            write_grid(output, &out)?;
            let mut t = Table::new(&["node", "value", "truncation_bound", "rounding_bound", "error_budget"]);
            for (i, r) in reports.iter().enumerate() {
                t.push(vec![
                    i.to_string(),
                    num(r.value),
                    num(r.truncation_bound),
                    num(r.rounding_bound),
                    num(r.error_budget()),
                ]);
            }
            t.emit(Some(budget))
        }
        Method::Fft => {
            let kind = match op {
                Op::K => return Err(CliError::Usage("𝓚_n has no Fourier multiplier; use --method quad".into())),
                Op::L => SymbolKind::Log(need_order()?),
                Op::Fraclap => SymbolKind::Frac(need_s()?),
                Op::Riesz => SymbolKind::Riesz(need_s()?),
            };
            let res = apply_symbol(&u, kind, ApplyOptions::default())?;
            write_grid(output, &res.grid)?;
            let mut t = Table::new(&["quantity", "value"]);
            t.push(vec!["imag_residue".into(), num(res.imag_residue)]);
            t.emit(Some(budget))
        }
    }
}

fn bump(dim: usize, nodes: usize, half_width: f64, output: &Path) -> Result<(), CliError> {
    if nodes < 8 || half_width.is_nan() || half_width <= 0.0 {
        return Err(CliError::Usage("--nodes must be at least 8 and --half-width positive".into()));
    }
    let g = if nodes == 4096 && half_width == 20.0 && dim == 1 {
        default_bump(dim)?
    } else {
        let h = 2.0 * half_width / nodes as f64;
        Grid::from_fn(
            vec![-half_width; dim],
            vec![h; dim],
            vec![nodes; dim],
            |p: &[f64]| {
                let x = p[0];
                let mut v = (12.0 * x - 8.0 * x * x * x) * (-x * x).exp();
                if p.len() > 1 {
                    v *= (-p[1] * p[1]).exp();
                }
                v
            },
            1.0,
        )?
    };
    write_grid(output, &g)
}

fn form_kind(f: Form) -> FormKind {
    match f {
        Form::I => FormKind::I,
        Form::G => FormKind::G,
        Form::Q => FormKind::Q,
    }
}

fn eig(
    form: Form,
    m: usize,
    domain: &Path,
    cells: usize,
    count: usize,
    out: Option<&Path>,
    vectors: Option<&Path>,
) -> Result<(), CliError> {
    if count == 0 || cells == 0 {
        return Err(CliError::Usage("--cells and --count must be positive".into()));
    }
    let dom = read_domain(domain)?;
    let ledger: Ledger = alpha_coeffs(m, dom.dim)?;
    let mesh = Mesh::with_cells(&dom, cells)?;
    let mats = assemble(form_kind(form), &ledger, &mesh)?;
    let res = eigensolve(&mats, count)?;
    let mut t = Table::new(&["index", "eigenvalue", "residual"]);
    for (i, (l, r)) in res.eigenvalues.iter().zip(&res.residuals).enumerate() {
        t.push(vec![(i + 1).to_string(), num(*l), num(*r)]);
    }
    t.emit(out)?;
    if let Some(path) = vectors {
        let mut header: Vec<String> = ["x", "y"][..dom.dim].iter().map(|s| s.to_string()).collect();
        header.push("measure".into());
        header.extend((1..=res.vectors.len()).map(|i| format!("v{i}")));
        let mut vt = Table::new(&header);
        for (c, cell) in res.mesh.cells.iter().enumerate() {
            let mut row: Vec<String> = cell.center().iter().map(|x| num(*x)).collect();
            row.push(num(cell.measure));
            row.extend(res.vectors.iter().map(|v| num(v[c])));
            vt.push(row);
        }
        vt.emit(Some(path))?;
    }
    Ok(())
}

fn fk(m: usize, domains: &[PathBuf], cells_per_unit: f64, out: Option<&Path>) -> Result<(), CliError> {
    let doms = domains.iter().map(|p| read_domain(p)).collect::<Result<Vec<_>, _>>()?;
    let dim = doms[0].dim;
    let ledger: Ledger = alpha_coeffs(m, dim)?;
    let table = faber_krahn_compare(&ledger, &doms, cells_per_unit)?;
    let mut t = Table::new(&["index", "file", "measure", "cells", "lambda1", "is_ball", "is_min"]);
    for r in &table.rows {
        t.push(vec![
            r.index.to_string(),
            domains[r.index].display().to_string(),
            num(r.measure),
            r.cells.to_string(),
            num(r.lambda1),
            r.is_ball.to_string(),
            r.is_min.to_string(),
        ]);
    }
    t.emit(out)?;
    if !table.ball_is_min {
        eprintln!("loglap: note: the reference ball does not attain the minimum");
    }
    Ok(())
}

fn expand(
    side: SideArg,
    s0: f64,
    n: usize,
    input: Option<&Path>,
    dim: usize,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let u = match input {
        Some(p) => read_grid(p)?,
        None => default_bump(dim)?,
    };
    let side = match side {
        SideArg::Fraclap => Side::FracLap,
        SideArg::Riesz => Side::Riesz,
        SideArg::Shifted => Side::Shifted(s0),
    };
    let st = study(side, n, &u, &default_samples())?;
    let mut t = Table::new(&["s", "sup_norm", "l2_norm"]);
    for i in 0..st.s_samples.len() {
        t.push(vec![num(st.s_samples[i]), num(st.sup_norms[i]), num(st.l2_norms[i])]);
    }
    t.emit(out)?;
    match st.fitted_slope {
        Some(k) => eprintln!("fitted slope: {} (expected about {})", num(k), n + 1),
        None => eprintln!("fitted slope: unavailable (remainder at rounding level)"),
    }
    Ok(())
}

fn radii(m: usize, dim: usize, out: Option<&Path>) -> Result<(), CliError> {
    let ledger: Ledger = alpha_coeffs(m, dim)?;
    let k = combined_kernel(&ledger)?;
    let mut t = Table::new(&["m", "dim", "r0", "rm"]);
    t.push(vec![m.to_string(), dim.to_string(), num(k.r0), num(k.rm)]);
    t.emit(out)
}
