//! Shriek representatives, sections, and the cochain-level brane product
//! and coproduct pipelines.

mod pipeline;
mod shriek;

pub use pipeline::{
    brane_coproduct_dual, brane_product_dual, build_section_phi, build_section_psi, compose_operations,
    nontriviality_report, BraneOperation, Direction, NontrivialityReport, PipelineOptions, Section, SectionStrategy,
    SliceMatrix, Stage,
};
pub use shriek::{
    build_shriek_constant, build_shriek_diagonal, complete_cocycle, coproduct_shift, product_shift, ShriekMap,
};
