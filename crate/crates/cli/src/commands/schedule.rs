use clairvoyant::envmodels::kwise_test;
use clairvoyant::schedule::{
    coupling_mc, directed_survival, kwise_joint, survival_curve_mc, survival_depth, undirected_escape_mc,
    ScheduleGrid,
};
use clairvoyant::IntSequence;

use super::{join, Ctx, Report};
use crate::args::ScheduleCmd;
use crate::error::{usage, CliResult};
use crate::table::{estimate_cells, Cell, Table};

pub(super) fn run(ctx: &Ctx, cmd: &ScheduleCmd) -> CliResult<Report> {
    match cmd {
        ScheduleCmd::Survive { m, x, y, n, depth } => {
            let grid = match (x, y) {
                (Some(x), Some(y)) => ScheduleGrid::new(IntSequence::parse(x, *m)?, IntSequence::parse(y, *m)?)?,
                _ => {
                    if *m < 2 {
                        return Err(usage("--M must be at least 2"));
                    }
                    ScheduleGrid::sample(*m, *n, &mut ctx.rng().rng())
                }
            };
            let depth = depth.unwrap_or(grid.size());
            let witness = directed_survival(&grid, depth)?;
            let reached = survival_depth(&grid, depth)?;
            let mut violations = Vec::new();
            if let Some(w) = &witness {
                if let Err(e) = w.validate(&grid) {
                    violations.push(format!("path rejected: {e}"));
                }
            }
            let mut t = Table::new(&["M", "depth", "survives", "depth_reached", "schedule", "x", "y"]);
            t.push(vec![
                (*m).into(),
                depth.into(),
                witness.is_some().into(),
                reached.into(),
                witness.map(|w| w.schedule()).into(),
                grid.x().to_string().into(),
                grid.y().to_string().into(),
            ]);
            Ok(Report { table: t, violations })
        }
        ScheduleCmd::Curve { m, depths } => {
            let curve = survival_curve_mc(*m, depths, &ctx.plan(1_000))?;
            let mut t = Table::new(&["M", "depth", "mean", "stderr", "replicas"]);
            for (d, est) in &curve {
                let mut row: Vec<Cell> = vec![(*m).into(), (*d).into()];
                row.extend(estimate_cells(est));
                t.push(row);
            }
            Ok(Report::ok(t))
        }
        ScheduleCmd::Coupling { m, k, depth } => {
            let s = coupling_mc(*m, *k, *depth, &ctx.plan(1_000))?;
            let mut t = Table::new(&["M", "k", "depth", "samples", "superset_violations", "ordering_violations"]);
            t.push(vec![
                (*m).into(),
                (*k).into(),
                (*depth).into(),
                s.samples.into(),
                s.superset_violations.into(),
                s.ordering_violations.into(),
            ]);
            let mut violations = Vec::new();
            if s.superset_violations > 0 {
                violations.push(format!("{} samples break the open-set superset property", s.superset_violations));
            }
            if s.ordering_violations > 0 {
                violations.push(format!("{} samples break survival ordering", s.ordering_violations));
            }
            Ok(Report { table: t, violations })
        }
        ScheduleCmd::Undirected { m, n } => {
            let est = undirected_escape_mc(*m, *n, &ctx.plan(1_000))?;
            let mut t = Table::new(&["M", "n", "mean", "stderr", "replicas"]);
            let mut row: Vec<Cell> = vec![(*m).into(), (*n).into()];
            row.extend(estimate_cells(&est));
            t.push(row);
            Ok(Report::ok(t))
        }
        ScheduleCmd::Kwise { m, vertices, window, k } => {
            let vertices = match (vertices, window) {
                (Some(v), None) => parse_vertices(v)?,
                (None, Some(w)) => (1..=*w).flat_map(|i| (1..=*w).map(move |j| (i, j))).collect(),
                _ => return Err(usage("give exactly one of --vertices and --window")),
            };
            let mut t = Table::new(&["M", "k", "independent", "subset", "outcome", "joint", "product"]);
            for &m in m {
                let pmf = kwise_joint(&vertices, m)?;
                let report = kwise_test(&pmf, *k)?;
                if report.first_violation.is_empty() {
                    t.push(vec![m.into(), (*k).into(), true.into(), Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty]);
                }
                for v in &report.first_violation {
                    let subset: Vec<&str> = v.subset.iter().map(|&s| pmf.labels()[s].as_str()).collect();
                    t.push(vec![
                        m.into(),
                        (*k).into(),
                        false.into(),
                        subset.join(" ").into(),
                        join(&v.outcome, "").into(),
                        Cell::ratio(&v.joint),
                        Cell::ratio(&v.product),
                    ]);
                }
            }
            Ok(Report::ok(t))
        }
    }
}

/// `i,j;i,j;...`
fn parse_vertices(s: &str) -> CliResult<Vec<(usize, usize)>> {
    s.split(';')
        .map(|pair| {
            let (i, j) = pair
                .split_once(',')
                .ok_or_else(|| usage(format!("vertex {pair:?} is not i,j")))?;
            let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| usage(format!("bad vertex {pair:?}")));
            Ok((parse(i)?, parse(j)?))
        })
        .collect()
}
