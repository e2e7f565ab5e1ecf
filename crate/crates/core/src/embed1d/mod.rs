//! One-dimensional M-embedding of words in random binary sequences.
//!
//! `v ⊑_M y` holds when there are positions `0 = m_0 < m_1 < ... < m_n`
//! with `1 <= m_i - m_{i-1} <= M` and `v_i = y_{m_i}`. Because `m_i <= M i`,
//! the event for a word of length `n` only looks at `y_1..y_{Mn}`.

mod decide;
mod exact;
mod moments;
mod recursion;
mod survival;

pub use decide::{embed_count, embed_decide, embeds, EmbeddingWitness};
pub use exact::{
    embed_prob_exact, embed_prob_exact_with_budget, extremal_scan, extremal_scan_with_budget,
    ScanReport, DEFAULT_EXACT_BUDGET,
};
pub use moments::{
    mean_embeddings, moment_reports, second_moment_ratio, second_moment_ratio_with_budget,
    MomentReport, DEFAULT_PAIR_BUDGET,
};
pub use recursion::{char_roots, vn_recursion, CharRoots, RecursionParams};
pub use survival::{embed_survival_mc, Source};
