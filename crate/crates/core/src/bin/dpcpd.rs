// SPDX-License-Identifier: MIT OR Apache-2.0

use std::io::{self, Write};
use std::process::ExitCode;

use tracing::Level;

fn main() -> ExitCode {
    tracing_subscriber::fmt().with_max_level(Level::WARN).with_writer(io::stderr).init();
    let out = dpcpd::cli::parse_and_dispatch(std::env::args_os(), &mut io::stdin().lock());
    let _ = io::stdout().write_all(&out.stdout);
    let _ = io::stderr().write_all(&out.stderr);
    ExitCode::from(out.code as u8)
}
