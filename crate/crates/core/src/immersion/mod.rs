//! Strong immersions: models, verification, exhaustive search, and the
//! reconstruction of a model from a codeword embedding.

mod brute;
mod extend;
mod model;
mod pipeline;
mod route;
mod tournament;

pub use brute::{find_immersion_bruteforce, find_immersion_bruteforce_with, BruteForceLimits};
pub use extend::{extend_immersion_symmetric, F1Record, F2Record, ReconstructionTrace};
pub use model::{verify_strong_immersion, ImmersionViolation, StrongImmersionModel};
pub use pipeline::{
    default_bound, encode_all, immerse_encoded, immerse_via_codewords, wqo_scan, EncodedDigraph,
    ImmersionOutcome, Layout, ScanHit,
};
pub use tournament::{
    check_tournament_contract, reconstruct_tournament_immersion, StitchRecord, StitchSegment,
    TournamentReconstruction,
};
