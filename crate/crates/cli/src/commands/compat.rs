use clairvoyant::compat::{compat_oracle, compatible_prefix, majority_certificate, psi_curve_mc, psi_curve_tilted};

use super::{join, word, Ctx, Report};
use crate::args::{CompatCmd, PsiEstimator};
use crate::error::{usage, CliResult};
use crate::table::{estimate_cells, Cell, Table};

pub(super) fn run(ctx: &Ctx, cmd: &CompatCmd) -> CliResult<Report> {
    match cmd {
        CompatCmd::Decide { x, y } => {
            let (x, y) = (word(x)?, word(y)?);
            let mut t = Table::new(&["compatible", "kept_x", "kept_y"]);
            let mut violations = Vec::new();
            match compatible_prefix(&x, &y) {
                Some(w) => {
                    if let Err(e) = w.validate(&x, &y) {
                        violations.push(format!("witness rejected: {e}"));
                    }
                    t.push(vec![true.into(), join(&w.kept_x, " ").into(), join(&w.kept_y, " ").into()]);
                }
                None => t.push(vec![false.into(), Cell::Empty, Cell::Empty]),
            }
            Ok(Report { table: t, violations })
        }
        CompatCmd::Oracle { x, y } => {
            let (x, y) = (word(x)?, word(y)?);
            let dp = compatible_prefix(&x, &y).is_some();
            let oracle = compat_oracle(&x, &y)?;
            let mut t = Table::new(&["dp", "oracle", "agree"]);
            t.push(vec![dp.into(), oracle.into(), (dp == oracle).into()]);
            let violations = if dp == oracle { vec![] } else { vec!["dynamic program disagrees with search".into()] };
            Ok(Report { table: t, violations })
        }
        CompatCmd::Cert { x, y } => {
            let (x, y) = (word(x)?, word(y)?);
            let cert = majority_certificate(&x, &y)?;
            let compatible = compatible_prefix(&x, &y).is_some();
            let mut violations = Vec::new();
            if let Some(c) = cert {
                if !c.validate(&x, &y) {
                    violations.push("certificate rejected by its validator".into());
                }
                if compatible {
                    violations.push(format!("certificate at N = {} but the words are compatible", c.n));
                }
            }
            let mut t = Table::new(&["certificate_n", "compatible"]);
            t.push(vec![cert.map(|c| c.n).into(), compatible.into()]);
            Ok(Report { table: t, violations })
        }
        CompatCmd::Mc { p, n, estimator } => {
            if n.contains(&0) {
                return Err(usage("horizons must be positive"));
            }
            let plan = ctx.plan(10_000);
            let points: Vec<(usize, Option<f64>, clairvoyant::Estimate)> = match estimator {
                PsiEstimator::Plain => psi_curve_mc(*p, n, &plan)?.into_iter().map(|(h, e)| (h, None, e)).collect(),
                PsiEstimator::Tilted => psi_curve_tilted(*p, n, &plan)?
                    .into_iter()
                    .map(|t| (t.n, Some(t.q), t.estimate))
                    .collect(),
            };
            let mut t = Table::new(&["p", "n", "proposal_q", "mean", "stderr", "replicas"]);
            for (h, q, est) in &points {
                let mut row: Vec<Cell> = vec![(*p).into(), (*h).into(), (*q).into()];
                row.extend(estimate_cells(est));
                t.push(row);
            }
            Ok(Report::ok(t))
        }
    }
}
