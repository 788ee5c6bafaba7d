//! Presheaves of algebras on finite spaces and over box covers: gluing,
//! germs, stalks and sheafification.

mod boxes;
mod gluing;
mod presheaf;
mod topology;

pub use boxes::{box_germs_equal, glue_boxes, verify_box_presheaf, BoxGlue, GluedPiece};
pub use gluing::{check_cover, glue, is_sheaf, sheafify, GlueOutcome, SheafFailure, SheafViolation, Sheafification};
pub use presheaf::{germ, germ_mul, germs_equal, stalk, verify_presheaf, Germ, Presheaf, PresheafViolation, Stalk, TabAlgebra};
pub use topology::{fmt_set, full_mask, members, FiniteTopology, OpenSet, MAX_POINTS};
