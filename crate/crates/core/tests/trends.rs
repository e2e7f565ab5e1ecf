//! Monte Carlo trends with diagnostic thresholds. Each run is seeded, so
//! the outcomes are fixed; the thresholds sit far from the observed values.

use clairvoyant::embed1d::{embed_survival_mc, vn_recursion, Source};
use clairvoyant::envmodels::{column_percolation_mc, iid_crossing_mc, Mixture};
use clairvoyant::estimate::stderr_of_difference;
use clairvoyant::lattice2d::{block_good_prob, block_percolation, Field2D, DIRECTED_SITE_THRESHOLD};
use clairvoyant::ratio::to_f64;
use clairvoyant::schedule::{survival_curve_mc, undirected_escape_mc};
use clairvoyant::{McPlan, RngSpec, Word};

#[test]
fn three_colour_schedules_die_out() {
    let plan = McPlan::new(2_000, RngSpec::new(3, 0));
    let curve = survival_curve_mc(3, &[0, 10, 25, 50, 100, 200], &plan).unwrap();
    assert_eq!(curve[0].1.mean, 1.0);
    let means: Vec<f64> = curve.iter().map(|(_, e)| e.mean).collect();
    assert!(means[..5].windows(2).all(|w| w[1] < w[0]), "{means:?}");
    assert!(means[5] <= 0.01, "{means:?}");
}

#[test]
fn undirected_escape_separates_three_and_four() {
    let plan = McPlan::new(1_000, RngSpec::new(3, 0));
    let m3: Vec<f64> = [25, 50, 100].iter().map(|&n| undirected_escape_mc(3, n, &plan).unwrap().mean).collect();
    let m4 = undirected_escape_mc(4, 100, &plan).unwrap();
    assert!(m3.windows(2).all(|w| w[1] < w[0]), "{m3:?}");
    assert!(m4.mean > m3[2] + 0.3, "{} vs {}", m4.mean, m3[2]);
}

#[test]
fn alternating_word_estimate_matches_recursion() {
    let plan = McPlan::new(20_000, RngSpec::new(21, 0));
    for (m, n) in [(2usize, 10usize), (3, 20)] {
        let est = embed_survival_mc(m, n, &Source::Fixed(Word::alternating(n)), 0.5, &plan).unwrap();
        let exact = to_f64(&vn_recursion(m as u32, n)[n]);
        assert!(est.within(exact, 3.0), "M={m} n={n}: {est:?} vs {exact}");
    }
}

#[test]
fn good_blocks_percolate_at_half() {
    let (r, depth) = (3, 100);
    assert!(block_good_prob(0.5, r) > DIRECTED_SITE_THRESHOLD);
    let plan = McPlan::new(100, RngSpec::new(30, 0));
    let found = plan.run(|spec| {
        let field = Field2D::sample((depth + 1) * r, (2 * depth + 1) * r, 0.5, &mut spec.rng());
        block_percolation(&field, r, depth).unwrap().is_some()
    });
    let freq = found.iter().filter(|&&f| f).count() as f64 / found.len() as f64;
    assert!(freq >= 0.9, "{freq}");
}

#[test]
fn point_mass_column_environment_is_iid() {
    for p in [0.3, 0.7] {
        let plan = McPlan::new(4_000, RngSpec::new(40, 0));
        let column = column_percolation_mc(&Mixture::point(p).unwrap(), 20, &plan);
        let iid = iid_crossing_mc(p, 20, &McPlan::new(4_000, RngSpec::new(41, 0)));
        let se = stderr_of_difference(&column, &iid);
        assert!((column.mean - iid.mean).abs() <= 3.0 * se + 1e-12, "p={p}: {column:?} vs {iid:?}");
    }
}
