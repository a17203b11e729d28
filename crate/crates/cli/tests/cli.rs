use std::process::{Command, Output};

fn h4audit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_h4audit"))
        .args(args)
        .env_remove("H4AUDIT_FORMAT")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn audit_concludes_case_one() {
    let out = h4audit(&["audit", "--p", "19", "--e", "9", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["conclusion"]["status"], "concluded");
    assert_eq!(v["conclusion"]["group"], "Omega+(48,19)");
    assert_eq!(v["verdicts"].as_array().unwrap().len(), 11);
}

#[test]
fn audit_concludes_case_two() {
    let out = h4audit(&["audit", "--p", "13", "--e", "14"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("case 2"));
    assert!(text.contains("conclusion: CONCLUDED G = Omega+(48,13)"));
}

#[test]
fn rejection_exits_one_in_every_format() {
    let text = h4audit(&["audit", "--p", "19", "--e", "6"]);
    assert_eq!(text.status.code(), Some(1));
    assert!(stdout(&text).contains("rejected: 6 divides 30"));
    let json = h4audit(&["audit", "--p", "19", "--e", "6", "--format", "json"]);
    assert_eq!(json.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v["message"], "6 divides 30");
    assert_eq!(v["rejection"]["reason"], "order_divides");
}

#[test]
fn withdrawn_premise_exits_one() {
    let out = h4audit(&["audit", "--p", "19", "--e", "9", "--withdraw", "q3_restriction_pattern"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("conclusion: INCONCLUSIVE"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["audit", "--p", "19"][..],
        &["audit", "--p", "0", "--e", "9"],
        &["audit", "--p", "nineteen", "--e", "9"],
        &["audit", "--p", "21", "--e", "9"],
        &["audit", "--p", "19", "--e", "9", "--withdraw", "nonsense"],
        &["audit", "--p", "19", "--e", "9", "--format", "csv"],
        &["order", "XX(3,2)"],
        &["scan", "--q-max", "1"],
        &["frobnicate"],
    ] {
        assert_eq!(h4audit(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn order_queries() {
    for (descriptor, expected) in [("SU(5,11)", "9775062020994743678515200"), ("2.A8", "40320"), ("SL(3,2)", "168")] {
        let out = h4audit(&["order", descriptor]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout(&out).trim(), expected);
    }
}

#[test]
fn format_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_h4audit"))
        .args(["order", "O8+(2)"])
        .env("H4AUDIT_FORMAT", "json")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["order"], "174182400");
}

#[test]
fn table_formats() {
    let json = h4audit(&["table", "--format", "json"]);
    assert_eq!(json.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(rows.len(), 15);
    assert!(rows.iter().all(|r| r["cross_check"] == true));

    let text = stdout(&h4audit(&["table"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 16);
    // Right-justified: every order ends in the same column.
    let ends: Vec<usize> = lines[1..]
        .iter()
        .map(|l| {
            let body = l.trim_end().strip_suffix("ok").unwrap().trim_end();
            body.chars().count()
        })
        .collect();
    assert!(ends.windows(2).all(|w| w[0] == w[1]), "{ends:?}");

    let csv = stdout(&h4audit(&["table", "--format", "csv"]));
    assert_eq!(csv.lines().count(), 16);
}

#[test]
fn scan_output_is_deterministic_across_jobs() {
    let one = h4audit(&["scan", "--q-max", "400", "--jobs", "1", "--format", "json"]);
    let four = h4audit(&["scan", "--q-max", "400", "--jobs", "4", "--format", "json"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&one)).unwrap();
    assert_eq!(v["min_q"], 19);
    assert_eq!(v["min_square_q"], 121);
    assert_eq!(v["all_concluded"], true);
    assert!(v["points"].as_array().unwrap().iter().any(|p| p["p"] == 7 && p["q"] == 343));
}

#[test]
fn scan_below_nineteen_is_empty() {
    let out = h4audit(&["scan", "--q-max", "18"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("scan q <= 18: 0 admissible points"));
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("h4audit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = h4audit(&["audit", "--p", "19", "--e", "9", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(h4audit::audit::revalidate_json(&written).unwrap().passed());
    std::fs::remove_dir_all(&dir).unwrap();
}
