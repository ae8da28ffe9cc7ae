use std::fmt;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 2;
    pub const DOMAIN: i32 = 3;
    pub const VIOLATION: i32 = 4;
    pub const IO: i32 = 5;
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: exit::INPUT,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            code: exit::IO,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<halfdisk::Error> for CliError {
    fn from(e: halfdisk::Error) -> Self {
        use halfdisk::Error as E;
        let code = match e {
            E::Domain(_) | E::Precondition(_) | E::DegenerateBasis(_) | E::NoConvergence { .. } => exit::DOMAIN,
            _ => exit::INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
