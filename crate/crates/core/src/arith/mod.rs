//! Exact arithmetic over the rationals.

pub mod poly;
pub mod rat;
pub mod ratfunc;
pub mod squarefree;

pub use rat::{
    cmp_height_value, enumerate_rationals, format_rat, is_rational_cube, is_rational_square,
    parse_rat, rat_height,
};
pub use squarefree::{
    factor, square_class_independent, squarefree_part, squarefree_part_rat, F2Record, Independence,
    SquareClass,
};
