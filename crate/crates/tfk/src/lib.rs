//! Combinatorial tangle invariants.
//!
//! * [`diagram`]: oriented tangle diagrams, parsing and transforms.
//! * [`states`]: generalised Kauffman states and clock moves.
//! * [`alexander`]: the polynomials `∇̂_T^s` and `∇_T^s`.
//! * [`pecalg`]: the quiver algebra `A^∂`.
//! * [`pecmod`]: curved type-D modules over `A^∂`.
//! * [`pairing`]: closing a 4-ended tangle and computing homology.

pub mod alexander;
pub mod diagram;
pub mod pecalg;
pub mod pecmod;
pub mod pairing;
pub mod states;
