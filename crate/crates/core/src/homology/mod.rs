//! Total complexes, homology, and the exact-sequence checks built on them.

mod compute;
mod lemmas;
mod skyscraper;
mod theorem;
mod total;

pub use compute::{
    default_max_degree, induced_map, linear_homology, linear_homology_at, mixed_homology,
    total_homology, with_coboundary_of, Coboundary, DegreeHomology, Direction, InducedDegree,
    InducedMaps, MapMode, MixedHomology,
};
pub use total::{slot_degrees, total_map, Grading, Slot, TotalComplex};
pub use skyscraper::{skyscraper_test, QuotientFailure, SkyscraperReport, SkyscraperWitness};
pub use theorem::{
    corollary_check, hat_invariance, pi_kernel, verify_theorem, CorollaryReport, CorollaryRow,
    PiDegree, PiKernel, Preconditions, TheoremReport, TheoremRow,
};
pub use lemmas::{
    hat_to_tilde_quasi_iso, imageiso_check, intersection_acyclic, lemma_checks,
    reduced_inclusion_quasi_iso, seslemma_check, ImageisoReport, ImageisoRow, LemmaCheck,
    SeslemmaReport, SeslemmaRow, CONTRACTION, HAT_INVARIANCE, HAT_TO_TILDE, IMAGE_B_VANISHES,
    IMAGE_TOTAL_TRIVIAL, IMAGE_UPSILON_VANISHES, INTERSECTION_ACYCLIC, REDUCED_INCLUSION,
    SEQUENCE_EXACT,
};
