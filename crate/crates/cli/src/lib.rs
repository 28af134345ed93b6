//! Front end for `beckner-core`: flag parsing, subcommands and record encodings.

pub mod args;
pub mod commands;
pub mod record;

pub use args::{Cli, Format};
pub use commands::{parse_range, run, UsageError};
pub use record::{read_csv, read_json, write_csv, write_json, OutputRecord, Status, Value};

/// 0 when every record is ok, 1 when any failed or errored.
pub fn exit_code(records: &[OutputRecord]) -> i32 {
    if records.iter().all(|r| r.status == Status::Ok) {
        0
    } else {
        1
    }
}
