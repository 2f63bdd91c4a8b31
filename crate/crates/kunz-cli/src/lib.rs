//! Library half of the `kunz` command line tool: instance parsing, output
//! documents, random battery generation, and the benchmark harness. The
//! binary in `main.rs` is a thin argument-parsing shell over these.

pub mod battery;
pub mod bench;
pub mod instance;
pub mod output;

/// Process exit codes used by the binary.
pub mod exit_codes {
    /// Success; for `decompose`, the result also passed verification.
    pub const OK: i32 = 0;
    /// Runtime failure (solver limits, I/O, internal errors).
    pub const RUNTIME: i32 = 1;
    /// Bad usage or invalid input.
    pub const USAGE: i32 = 2;
    /// The input is not an intersection of m-symmetric semigroups.
    pub const NOT_SYMMETRIC: i32 = 3;
    /// A decomposition was produced but failed verification.
    pub const VERIFY_FAILED: i32 = 4;
}
