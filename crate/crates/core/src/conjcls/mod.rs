//! Quadratic forms, hyperbolic conjugacy classes of PSL(2,Z) and the
//! conjugacy-class counting function.

mod class;
mod count;
mod forms;

pub use class::{make_class, ConjClass};
pub use count::{conj_count_coset, conj_count_filter, ClassMembership, ConjCounter};
pub use forms::{automorph, forms_equivalent, matrix_to_form, pell_fundamental, reduce_cycle, QuadForm};
