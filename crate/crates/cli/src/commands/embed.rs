use clairvoyant::embed1d::{
    char_roots, embed_count, embed_decide, embed_prob_exact_with_budget, embed_survival_mc,
    extremal_scan_with_budget, moment_reports, vn_recursion, RecursionParams, Source,
};
use clairvoyant::ratio::to_f64;
use clairvoyant::Word;

use super::{join, word, Ctx, Report};
use crate::args::EmbedCmd;
use crate::error::{usage, CliResult};
use crate::table::{estimate_cells, Cell, Table};

pub(super) fn run(ctx: &Ctx, cmd: &EmbedCmd) -> CliResult<Report> {
    match cmd {
        EmbedCmd::Decide { v, y, m } => {
            let (v, y) = (word(v)?, word(y)?);
            let mut t = Table::new(&["M", "embeds", "positions"]);
            let mut violations = Vec::new();
            match embed_decide(&v, &y, *m) {
                Some(w) => {
                    if let Err(e) = w.validate(&v, &y) {
                        violations.push(format!("witness rejected: {e}"));
                    }
                    t.push(vec![(*m).into(), true.into(), join(&w.positions, " ").into()]);
                }
                None => t.push(vec![(*m).into(), false.into(), Cell::Empty]),
            }
            Ok(Report { table: t, violations })
        }
        EmbedCmd::Count { v, y, m } => {
            let count = embed_count(&word(v)?, &word(y)?, *m);
            let mut t = Table::new(&["M", "count"]);
            t.push(vec![(*m).into(), count.to_string().into()]);
            Ok(Report::ok(t))
        }
        EmbedCmd::Exact { w, m, budget } => {
            let w = word(w)?;
            let p = embed_prob_exact_with_budget(&w, *m, *budget)?;
            let mut t = Table::new(&["word", "M", "probability", "probability_f64"]);
            t.push(vec![w.to_string().into(), (*m).into(), Cell::ratio(&p), to_f64(&p).into()]);
            Ok(Report::ok(t))
        }
        EmbedCmd::Recursion { m, n } => {
            if *m < 2 {
                return Err(usage("--M must be at least 2"));
            }
            let mut t = Table::new(&["M", "n", "v", "v_f64"]);
            for (k, v) in vn_recursion(*m, *n).iter().enumerate() {
                t.push(vec![(*m).into(), k.into(), Cell::ratio(v), to_f64(v).into()]);
            }
            Ok(Report::ok(t))
        }
        EmbedCmd::Roots { m } => {
            let mut t = Table::new(&["M", "alpha", "beta", "r_small", "r_large", "scaled_gap", "in_range"]);
            let mut violations = Vec::new();
            for &m in m {
                if !(2..=60).contains(&m) {
                    return Err(usage(format!("--M {m} outside 2..=60")));
                }
                let params = RecursionParams::new(m);
                let (alpha, beta) = (to_f64(&params.alpha), to_f64(&params.beta));
                let roots = char_roots(m);
                let ok = roots.small > 0.0
                    && roots.small < m as f64 * beta
                    && roots.large > alpha
                    && roots.large < 1.0;
                if !ok {
                    violations.push(format!("roots out of range at M = {m}"));
                }
                t.push(vec![
                    m.into(),
                    alpha.into(),
                    beta.into(),
                    roots.small.into(),
                    roots.large.into(),
                    roots.scaled_gap(m).into(),
                    ok.into(),
                ]);
            }
            Ok(Report { table: t, violations })
        }
        EmbedCmd::Scan { n, m, budget } => {
            let scan = extremal_scan_with_budget(*n, *m, *budget)?;
            let mut t = Table::new(&["word", "probability", "probability_f64", "best", "worst"]);
            for (w, p) in &scan.table {
                t.push(vec![
                    w.to_string().into(),
                    Cell::ratio(p),
                    to_f64(p).into(),
                    scan.best.contains(w).into(),
                    scan.worst.contains(w).into(),
                ]);
            }
            let mut violations = Vec::new();
            if *n >= 1 {
                let constants = [Word::constant(0, *n), Word::constant(1, *n)];
                if !constants.iter().all(|c| scan.worst.contains(c)) {
                    violations.push("a constant word is not a minimiser".into());
                }
                let alternating = [Word::alternating(*n), Word::alternating(*n).complement()];
                if *m == 2 && !alternating.iter().all(|a| scan.best.contains(a)) {
                    violations.push("an alternating word is not a maximiser".into());
                }
            }
            Ok(Report { table: t, violations })
        }
        EmbedCmd::Moments { n, m, budget } => {
            let reports = moment_reports(*n, *m, *budget)?;
            let mut t = Table::new(&["M", "n", "mean", "second_moment_ratio", "ratio_f64", "growth"]);
            for r in &reports {
                t.push(vec![
                    (*m).into(),
                    r.n.into(),
                    Cell::ratio(&r.mean),
                    Cell::ratio(&r.second_moment_ratio),
                    to_f64(&r.second_moment_ratio).into(),
                    r.growth_estimate.into(),
                ]);
            }
            Ok(Report::ok(t))
        }
        EmbedCmd::Mc { m, n, word: kind, p_x, p_y } => {
            let source = match kind.as_str() {
                "alternating" => Source::Fixed(Word::alternating(*n)),
                "constant" => Source::Fixed(Word::constant(1, *n)),
                "random" => Source::Bernoulli(*p_x),
                explicit => Source::Fixed(word(explicit)?),
            };
            let est = embed_survival_mc(*m, *n, &source, *p_y, &ctx.plan(10_000))?;
            let reference = (kind == "alternating" && *p_y == 0.5 && *m >= 2)
                .then(|| to_f64(&vn_recursion(*m as u32, *n)[*n]));
            let z = reference.map(|r| if est.stderr > 0.0 { (est.mean - r) / est.stderr } else { 0.0 });
            let mut t = Table::new(&["M", "n", "word", "p_y", "mean", "stderr", "replicas", "v_n", "z"]);
            let mut row: Vec<Cell> = vec![(*m).into(), (*n).into(), kind.as_str().into(), (*p_y).into()];
            row.extend(estimate_cells(&est));
            row.extend([reference.into(), z.into()]);
            t.push(row);
            Ok(Report::ok(t))
        }
    }
}
