//! Blinks and framed links at the level of linking data, surgery brackets
//! as formal sums, Seifert matrices and the Alexander/Casson pipeline.

mod blink;
mod bracket;
pub mod format;
mod seifert;

pub use blink::{
    blink_linking_matrix, boundary_to_blink, is_unimodular, seifert_framing_to_framing, BlinkPresentation,
    FramedLink,
};
pub use bracket::{
    bracket_expand_blink, bracket_expand_link, bracket_handles, fundamental_relation, Descriptor, FormalSum,
    Handle, MAX_HANDLES,
};
pub use seifert::{
    alexander, alexander_block, casson, find_congruence, phi, seifert_congruent, LaurentPoly, SeifertMatrix,
};
