//! Scenario reports must reproduce the stored ones, timing aside. Set
//! `UPDATE_GOLDEN=1` to rewrite them.

use std::path::Path;

use thomason_lab::formats::to_json;
use thomason_lab::report::ScenarioReport;
use thomason_lab::scenarios::{run, Options, SCENARIOS};

#[test]
fn reports_match_golden_files() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for name in SCENARIOS {
        let report = run(name, &Options::default()).unwrap().normalized();
        let path = dir.join(format!("{name}.json"));
        let text = to_json(&report) + "\n";
        if update {
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        let stored = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert_eq!(stored, text, "{name} differs from its golden report");
        let parsed: ScenarioReport = serde_json::from_str(&stored).unwrap();
        assert_eq!(parsed, report);
    }
}
