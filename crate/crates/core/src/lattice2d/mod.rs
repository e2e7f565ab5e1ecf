//! Two-dimensional arrays of letters: the block construction for
//! M-embedding in a random array, and words visible along self-avoiding
//! paths on planar lattices.

mod blocks;
mod field;
mod visible;

pub use blocks::{
    adjacent_block_gaps, block_good_prob, block_good_prob_exact, block_graph_matches_quadrant,
    block_percolation, embed_word_2d, BlockGrid, Embedding2DWitness, GapReport,
    DIRECTED_SITE_THRESHOLD,
};
pub use field::Field2D;
pub use visible::{
    ab_scan, visible_frequency_mc, visible_word, AbScan, LatticeKind, Origin, Target,
    VisibleExperiment, VisibleOutcome, VisibleSummary, AB_SCAN_BUDGET,
};
