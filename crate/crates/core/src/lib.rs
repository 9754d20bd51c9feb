//! Augmentation varieties of positive braid Legendrian links over GF(2):
//! Chekanov–Eliashberg differentials, initial cluster seeds, mutation
//! sequences of admissible fillings and their torus charts.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod braid;
pub mod cluster;
pub mod dga;
pub mod filling;
pub mod ncalg;
pub mod verify;
