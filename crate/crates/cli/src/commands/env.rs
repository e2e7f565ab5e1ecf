use clairvoyant::envmodels::{column_percolation_mc, iid_crossing_mc, kwise_test, JointPmf, Mixture};

use super::{join, read, Ctx, Report};
use crate::args::EnvCmd;
use crate::error::CliResult;
use crate::table::{estimate_cells, Cell, Table};

pub(super) fn run(ctx: &Ctx, cmd: &EnvCmd) -> CliResult<Report> {
    match cmd {
        EnvCmd::Column { mu, n } => {
            let mu = Mixture::parse(mu)?;
            let mean: f64 = mu.points().iter().map(|(v, w)| v * w).sum();
            let plan = ctx.plan(1_000);
            let column = column_percolation_mc(&mu, *n, &plan);
            let iid = iid_crossing_mc(mean, *n, &plan);
            let mut t = Table::new(&["model", "n", "density", "mean", "stderr", "replicas"]);
            for (name, est) in [("column", column), ("iid", iid)] {
                let mut row: Vec<Cell> = vec![name.into(), (*n).into(), mean.into()];
                row.extend(estimate_cells(&est));
                t.push(row);
            }
            Ok(Report::ok(t))
        }
        EnvCmd::Kwise { pmf, k } => {
            let pmf = JointPmf::from_csv(&read(pmf)?)?;
            let report = kwise_test(&pmf, *k)?;
            let mut t = Table::new(&["k", "independent", "subset", "outcome", "joint", "product"]);
            if report.first_violation.is_empty() {
                t.push(vec![(*k).into(), true.into(), Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty]);
            }
            for v in &report.first_violation {
                let subset: Vec<&str> = v.subset.iter().map(|&s| pmf.labels()[s].as_str()).collect();
                t.push(vec![
                    (*k).into(),
                    false.into(),
                    subset.join(" ").into(),
                    join(&v.outcome, "").into(),
                    Cell::ratio(&v.joint),
                    Cell::ratio(&v.product),
                ]);
            }
            Ok(Report::ok(t))
        }
    }
}
