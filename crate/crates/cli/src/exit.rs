//! Process exit codes. Clap reports usage errors with 2.

pub const SOLVED: i32 = 0;
pub const ACCEPT: i32 = 0;
pub const REJECT: i32 = 1;
pub const USAGE: i32 = 2;
pub const DEGENERATE: i32 = 3;
pub const NOT_SIMPLE: i32 = 4;
pub const TIMEOUT: i32 = 5;
pub const IDENTICALLY_ZERO: i32 = 6;
pub const INPUT: i32 = 7;
pub const SCHEMA: i32 = 8;
pub const IO: i32 = 9;
pub const SELFCHECK: i32 = 10;
pub const INTERNAL: i32 = 70;
