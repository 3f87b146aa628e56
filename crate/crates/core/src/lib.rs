//! Strong immersions of semi-complete digraphs of bounded cutwidth.
//!
//! A semi-complete digraph of cutwidth at most `c` is laid out along a
//! linked optimal ordering and encoded as a word over a finite alphabet.
//! When one codeword embeds in another, [`immersion::immerse_via_codewords`]
//! rebuilds an explicit strong immersion model from the embedding and checks
//! it.
//!
//! The modules follow the pipeline:
//!
//! - [`digraph`]: simple and semi-complete digraphs with their text format
//!   and the arc partition.
//! - [`ordering`] and [`cutwidth`]: cuts of vertex orderings and the exact
//!   cutwidth solver.
//! - [`flow`] and [`linked`]: arc-disjoint path systems, linked orderings
//!   and linked ordered cuts.
//! - [`codec`]: codewords and the domination test.
//! - [`immersion`]: models and their verification, exhaustive search,
//!   reconstruction from a codeword embedding, sequence scanning.
//! - [`generate`]: seeded instance generators.
//!
//! ```
//! use scimm::generate::gen_random_bounded_ctw;
//! use scimm::immersion::{immerse_via_codewords, verify_strong_immersion};
//!
//! let s = gen_random_bounded_ctw(6, 2, 1);
//! let out = immerse_via_codewords(&s, &s, 2)?.expect("a digraph immerses in itself");
//! assert_eq!(verify_strong_immersion(&s, &s, &out.model), Ok(()));
//! # Ok::<(), scimm::error::Error>(())
//! ```
//!
//! The guide in `book/` covers each step with runnable examples.

pub mod codec;
pub mod cutwidth;
pub mod digraph;
pub mod error;
pub mod flow;
pub mod generate;
pub mod immersion;
pub mod linked;
pub mod ordering;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/digraphs.md")]
    mod digraphs {}
    #[doc = include_str!("../../../book/src/cutwidth.md")]
    mod cutwidth {}
    #[doc = include_str!("../../../book/src/linked.md")]
    mod linked {}
    #[doc = include_str!("../../../book/src/codewords.md")]
    mod codewords {}
    #[doc = include_str!("../../../book/src/immersions.md")]
    mod immersions {}
    #[doc = include_str!("../../../book/src/pipeline.md")]
    mod pipeline {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
