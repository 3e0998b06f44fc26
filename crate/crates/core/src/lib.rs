//! Polynomial arithmetic over finite fields, the F_q[x] analogue of Euler's
//! totient, cyclotomic and Zsigmondy machinery, and the searches that
//! classify polynomials `f` with `phi(f) | |f| - 1`.

pub mod arith;
pub mod cyclo;
pub mod ffield;
pub mod fpoly;
pub mod lehmer_search;
pub mod totient;
pub mod verify;
