//! One line per acceptance criterion. The 13-dimensional ring runs in long mode.

use ringlab::suite::{self, Status, SuiteOptions};

fn main() {
    let report = suite::run(&SuiteOptions { long: true, ..SuiteOptions::default() });
    print!("{}", report.to_text());
    let failed: Vec<u8> = report.criteria.iter().filter(|c| c.status != Status::Pass).map(|c| c.id).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", report.criteria.len());
    } else {
        println!("acceptance: criteria {failed:?} did not pass");
        std::process::exit(1);
    }
}
