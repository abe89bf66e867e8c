use std::time::Instant;

use ringlab::corpus;
use ringlab::props::{property_report, CheckOptions};
use ringlab::report::RingReport;

#[test]
fn bundled_expectations_hold() {
    let mut failures = Vec::new();
    for e in corpus::all() {
        let start = Instant::now();
        let spec = e.parse().unwrap();
        let alg = e.build().unwrap_or_else(|err| panic!("{}: {err}", e.name));
        let report = property_report(&alg, &CheckOptions::default()).unwrap();
        let r = RingReport::new(&alg, &report);
        let mismatches = r.check(&spec.primary().unwrap().expect);
        println!("{:<16} order {:>5} dims {:?} {:.2?}", e.name, r.order, r.filtration_dims, start.elapsed());
        for m in mismatches {
            failures.push(format!("{}: {m}", e.name));
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}
