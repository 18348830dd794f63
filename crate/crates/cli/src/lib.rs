//! File formats, subcommands and JSON reports for the `alftop` binary.

pub mod commands;
pub mod formats;
pub mod report;

pub use commands::{parse_dims, run, Cli, CliError, Command, Dims, GridKind, Rule};
pub use formats::{
    parse_hex_sidecar, parse_image, parse_lfs, parse_pgm, parse_vol, write_hex_sidecar, write_lfs,
    write_pgm, write_vol, ParseError,
};
pub use report::{InputDigest, Report, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK};
