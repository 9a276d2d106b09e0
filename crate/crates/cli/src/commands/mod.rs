pub mod arr;
pub mod bounds;
pub mod chords;
pub mod draw;
pub mod rotsys;
