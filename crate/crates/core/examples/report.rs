//! Drive the report layer directly: a verification table as JSON lines.

use borwein::cli::{run, Command, Format, RunConfig};
use borwein::borwein::BorweinParams;

fn main() -> borwein::Result<()> {
    let config = RunConfig {
        command: Command::Verify,
        grid: vec![BorweinParams::new(3, 2, 2)?],
        d: None,
        b: None,
        q: None,
        format: Format::Jsonl,
        out: None,
        bits: None,
        seed: 0,
        trials: 100,
        max_degree: 1_000_000,
    };
    let mut buf = Vec::new();
    let outcome = run(&config, &mut buf)?;
    print!("{}", String::from_utf8_lossy(&buf));
    eprintln!("{} rows, {} failures", outcome.rows, outcome.failures);
    Ok(())
}
