//! Vertex-preserving maps, deck groups and quotient bookkeeping.

mod deck;
mod mobius;
mod simplicity;
mod transfer;

pub use deck::{
    check_deck_invariance, deck_apply, project_to_fundamental_domain, DeckKind, DeckMotion, FundamentalDomain,
    QuotientModel, Reparam,
};
pub use mobius::{mobius_apply, MobiusKind, MobiusMap};
pub use simplicity::{polyline_is_simple, quotient_simplicity_check, SimplicityReport, SimplicityStatus, Witness};
pub use transfer::{halfplane_inclusion_transfer, stereographic_transfer, StereoDirection};
