//! Command-line front end and HTTP service for `angular-support`.

pub mod cli;
pub mod commands;
pub mod parse;
pub mod plot;
pub mod service;

use angular_support::ErrorClass;

pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_IO: u8 = 3;
pub const EXIT_NUMERIC: u8 = 4;

pub fn exit_code(class: ErrorClass) -> u8 {
    match class {
        ErrorClass::Validation => EXIT_VALIDATION,
        ErrorClass::Io => EXIT_IO,
        ErrorClass::Numeric => EXIT_NUMERIC,
    }
}
