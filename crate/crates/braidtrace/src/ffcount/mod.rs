//! Finite-field verification: brute-force point counts of the
//! braid-indexed varieties O(β), G(β), U(β), X(β) over small F_q and of
//! the Br₂ charts X₀(β, B), compared against the predictions of the trace
//! machinery; plus total Springer representations Q_u for type A and the
//! decomposition of traces into the Q_u basis.

pub mod counts;
pub mod flags;
pub mod kostka;
pub mod linalg;

pub use counts::{
    count_chains, count_unipotent_total, count_x0, verify_kalman, verify_virtual, ChainCounts,
    Fiber, Group, VirtualReport,
};
pub use kostka::{charge, class_size, kostka_foulkes, qu_table, springer_decompose, QuEntry};
