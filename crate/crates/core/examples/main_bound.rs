//! Deviation of S_{2pn,b} from v(b) p^{sn} / 2pn against p^{sn/2}, decided exactly.

use borwein::borwein::BorweinParams;
use borwein::progsum::{max_deviation, render_rational, theorem_main_records};

fn main() -> borwein::Result<()> {
    for (p, s) in [(3, 1), (3, 2), (5, 1), (7, 3), (11, 2)] {
        for n in 1..=6 {
            let params = BorweinParams::new(p, s, n)?;
            let records = theorem_main_records(&params)?;
            let ok = records.iter().all(|r| r.within_bound);
            println!(
                "{params}: max |S - main| = {:>28}  bound {:>12}  {}",
                render_rational(&max_deviation(&records)),
                records[0].bound.to_string(),
                if ok { "ok" } else { "VIOLATED" }
            );
        }
    }
    Ok(())
}
