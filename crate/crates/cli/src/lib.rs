//! Support library for the `normforge` command line tool: the counting
//! allocator, the synthetic bench corpus and the bench harness itself.

pub mod bench;
pub mod mem;
pub mod synthetic;
