//! Word calculus for wild fundamental groups: free-group words, truncated
//! elements of the earring group, the harmonic archipelago kernel test, the
//! free group `F(E)` over an equivalence relation, and Becker's gadgets.

pub mod archipelago;
pub mod becker;
pub mod cli;
pub mod earring;
pub mod relcalc;
pub mod word;
