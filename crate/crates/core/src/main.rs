// SPDX-License-Identifier: Apache-2.0

use std::io::Write;
use std::process::ExitCode;

use hurwitz::cli::{parse_args, run};

fn main() -> ExitCode {
    let (code, text) = match parse_args(std::env::args_os()) {
        Ok(cmd) => run(&cmd),
        Err(e) => {
            if e.exit_code() == 0 {
                print!("{}", e.message());
            } else {
                eprint!("{}", e.message());
                if !e.message().ends_with('\n') {
                    eprintln!();
                }
            }
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes());
    ExitCode::from(code as u8)
}
