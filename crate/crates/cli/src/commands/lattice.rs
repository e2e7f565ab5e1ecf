use clairvoyant::lattice2d::{
    ab_scan, block_good_prob, block_good_prob_exact, block_percolation, embed_word_2d, visible_frequency_mc,
    visible_word, BlockGrid, Field2D, LatticeKind, Origin, Target, VisibleExperiment, VisibleOutcome,
    DIRECTED_SITE_THRESHOLD,
};
use clairvoyant::{Error, Rational, RngSpec, Word};

use super::{pairs_json, read, word, Ctx, Report};
use crate::args::LatticeCmd;
use crate::error::{usage, CliResult};
use crate::table::{estimate_cells, Cell, Table};

pub(super) fn run(ctx: &Ctx, cmd: &LatticeCmd) -> CliResult<Report> {
    match cmd {
        LatticeCmd::Blocks { p, r, depth } => blocks(ctx, *p, *r, *depth),
        LatticeCmd::Embed2d { p, r, len, word: w, field } => {
            let fixed = w.as_deref().map(word).transpose()?;
            let len = fixed.as_ref().map_or(*len, Word::len);
            if len == 0 || *r == 0 {
                return Err(usage("word length and --R must be positive"));
            }
            let mut t = Table::new(&["replica", "path_found", "valid", "cells"]);
            let mut violations = Vec::new();
            let mut one = |k: u64, field: &Field2D, w: &Word| -> CliResult<()> {
                match block_percolation(field, *r, len - 1)? {
                    None => t.push(vec![k.into(), false.into(), Cell::Empty, Cell::Empty]),
                    Some(path) => {
                        let wit = embed_word_2d(w, field, *r, &path)?;
                        let valid = wit.validate(w, field);
                        if let Err(e) = &valid {
                            violations.push(format!("replica {k}: {e}"));
                        }
                        t.push(vec![k.into(), true.into(), valid.is_ok().into(), pairs_json(&wit.cells).into()]);
                    }
                }
                Ok(())
            };
            if let Some(path) = field {
                let field: Field2D = read(path)?.parse()?;
                let w = fixed.clone().unwrap_or_else(|| Word::bernoulli(len, 0.5, &mut ctx.rng().rng()));
                one(0, &field, &w)?;
            } else {
                check_p(*p)?;
                let plan = ctx.plan(100);
                let (rows, cols) = (len * r, (2 * len - 1) * r);
                let samples = plan.run(|spec: RngSpec| {
                    let mut rng = spec.rng();
                    let field = Field2D::sample(rows, cols, *p, &mut rng);
                    let w = fixed.clone().unwrap_or_else(|| Word::bernoulli(len, 0.5, &mut rng));
                    (field, w)
                });
                for (k, (field, w)) in samples.iter().enumerate() {
                    one(k as u64, field, w)?;
                }
            }
            Ok(Report { table: t, violations })
        }
        LatticeCmd::Visible { lattice, p, side, word: w, len, word_p, origin, budget, field, at } => {
            let kind: LatticeKind = lattice.parse()?;
            let target = match w {
                Some(w) => Target::Fixed(word(w)?),
                None => Target::Random { len: *len, p: *word_p },
            };
            if let Some(path) = field {
                let field: Field2D = read(path)?.parse()?;
                let at = at.as_deref().ok_or_else(|| usage("--field needs --at"))?;
                let origin = parse_cell(at)?;
                let w = match target {
                    Target::Fixed(w) => w,
                    Target::Random { len, p } => Word::bernoulli(len, p, &mut ctx.rng().rng()),
                };
                let out = visible_word(&field, kind, origin, &w, *budget)?;
                let mut t = Table::new(&["lattice", "word", "outcome", "path"]);
                let (label, path) = match &out {
                    VisibleOutcome::Visible(path) => ("visible", Cell::from(pairs_json(path))),
                    VisibleOutcome::NotVisible => ("not-visible", Cell::Empty),
                    VisibleOutcome::BudgetExhausted => ("budget-exhausted", Cell::Empty),
                };
                t.push(vec![kind.to_string().into(), w.to_string().into(), label.into(), path]);
                return Ok(Report::ok(t));
            }
            let origin = match origin.as_str() {
                "center" => Origin::Center,
                "any" => Origin::Any,
                other => return Err(usage(format!("unknown origin {other:?}"))),
            };
            let exp = VisibleExperiment { kind, p: *p, side: *side, origin, budget: *budget };
            let summary = visible_frequency_mc(&exp, &target, &ctx.plan(1_000))?;
            let word_label = match &target {
                Target::Fixed(w) => w.to_string(),
                Target::Random { len, p } => format!("random({len},{p})"),
            };
            let mut t = Table::new(&["lattice", "p", "side", "word", "origin", "mean", "stderr", "replicas", "exhausted"]);
            let mut row: Vec<Cell> = vec![
                kind.to_string().into(),
                (*p).into(),
                (*side).into(),
                word_label.into(),
                origin_label(origin).into(),
            ];
            row.extend(estimate_cells(&summary.estimate));
            row.push(summary.exhausted.into());
            t.push(row);
            Ok(Report::ok(t))
        }
        LatticeCmd::Abscan { p, box_size } => {
            let s = ab_scan(*p, *box_size, &ctx.plan(1_000))?;
            let z = if s.difference.stderr > 0.0 { s.difference.mean / s.difference.stderr } else { 0.0 };
            let mut t = Table::new(&[
                "p",
                "box",
                "word_len",
                "alternating",
                "alternating_stderr",
                "constant",
                "constant_stderr",
                "difference",
                "difference_stderr",
                "z",
                "replicas",
                "exhausted",
            ]);
            t.push(vec![
                s.p.into(),
                s.box_size.into(),
                s.word_len.into(),
                s.alternating.mean.into(),
                s.alternating.stderr.into(),
                s.constant.mean.into(),
                s.constant.stderr.into(),
                s.difference.mean.into(),
                s.difference.stderr.into(),
                z.into(),
                s.alternating.replicas.into(),
                s.exhausted.into(),
            ]);
            Ok(Report::ok(t))
        }
    }
}

fn blocks(ctx: &Ctx, p: f64, r: usize, depth: usize) -> CliResult<Report> {
    check_p(p)?;
    if r == 0 {
        return Err(usage("--R must be positive"));
    }
    let plan = ctx.plan(100);
    let (rows, cols) = ((depth + 1) * r, (2 * depth + 1) * r);
    let per_field = plan.run(|spec| -> Result<(usize, usize, bool), Error> {
        let field = Field2D::sample(rows, cols, p, &mut spec.rng());
        let grid = BlockGrid::new(&field, r)?;
        Ok((grid.good_count(), grid.len(), block_percolation(&field, r, depth)?.is_some()))
    });
    let per_field = per_field.into_iter().collect::<Result<Vec<_>, _>>()?;
    let good: usize = per_field.iter().map(|f| f.0).sum();
    let total: usize = per_field.iter().map(|f| f.1).sum();
    let freq = good as f64 / total as f64;
    let paths: Vec<bool> = per_field.iter().map(|f| f.2).collect();
    let path_est = clairvoyant::Estimate::from_indicators(&paths, plan.rng);
    let formula = block_good_prob(p, r);
    let exact = Rational::from_float(p).map(|q| block_good_prob_exact(&q, r));
    let mut t = Table::new(&[
        "p",
        "R",
        "depth",
        "formula",
        "formula_exact",
        "good_frequency",
        "good_stderr",
        "blocks",
        "path_frequency",
        "path_stderr",
        "fields",
        "above_directed_threshold",
    ]);
    t.push(vec![
        p.into(),
        r.into(),
        depth.into(),
        formula.into(),
        exact.as_ref().map_or(Cell::Empty, Cell::ratio),
        freq.into(),
        (freq * (1.0 - freq) / total as f64).sqrt().into(),
        total.into(),
        path_est.mean.into(),
        path_est.stderr.into(),
        path_est.replicas.into(),
        (formula > DIRECTED_SITE_THRESHOLD).into(),
    ]);
    Ok(Report::ok(t))
}

fn check_p(p: f64) -> CliResult<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p).into())
    }
}

fn origin_label(o: Origin) -> &'static str {
    match o {
        Origin::Center => "center",
        Origin::Any => "any",
    }
}

fn parse_cell(s: &str) -> CliResult<(usize, usize)> {
    let bad = || usage(format!("cell {s:?} is not r,c"));
    let (r, c) = s.split_once(',').ok_or_else(bad)?;
    Ok((r.trim().parse().map_err(|_| bad())?, c.trim().parse().map_err(|_| bad())?))
}
