//! Golden tests for the command-line surface: pinned text formats and
//! the JSON round-trip guarantee.

use std::process::Command;

fn reflect(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_reflect"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn info_e6_diagram_is_byte_exact() {
    let (stdout, _, code) = reflect(&["info", "--type", "E6"]);
    assert_eq!(code, 0);
    let expected = "E6      2\n        |\n1 - 3 - 4 - 5 - 6\n";
    assert!(stdout.starts_with(expected), "diagram block mismatch:\n{stdout}");
    assert!(stdout.contains("|W| = 51840"));
    assert!(stdout.contains("positive roots = 36"));
    assert!(stdout.contains("degrees: 2, 5, 6, 8, 9, 12"));
}

#[test]
fn info_e7_diagram_is_byte_exact() {
    let (stdout, _, code) = reflect(&["info", "--type", "E7"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("E7      2\n        |\n1 - 3 - 4 - 5 - 6 - 7\n"));
}

#[test]
fn info_single_node_and_datum() {
    let (stdout, _, code) = reflect(&["info", "--type", "A1"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("A1 1\n"));
    let (datum_out, _, code2) = reflect(&["info", "--datum", "gl,3"]);
    assert_eq!(code2, 0);
    assert!(datum_out.contains("rank = 3"));
    let (_, err, code3) = reflect(&["info", "--datum", "so,5"]);
    assert_eq!(code3, 2);
    assert!(err.contains("unknown root datum"));
}

#[test]
fn classinfo_a3_table() {
    let (stdout, _, code) = reflect(&["classinfo", "--type", "A3"]);
    assert_eq!(code, 0);
    for needle in ["1      1     0       .     1", "132", "13"] {
        assert!(stdout.contains(needle), "missing {needle:?} in\n{stdout}");
    }
}

#[test]
fn classinfo_rejects_bad_twist() {
    let (_, err, code) = reflect(&["classinfo", "--type", "E6", "--twist", "(1,2)"]);
    assert_eq!(code, 2);
    assert!(err.contains("Cartan"));
}

#[test]
fn verify_exit_codes_and_unknown_scenario() {
    let (stdout, _, code) = reflect(&["verify", "a3-classes"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("a3-classes: PASS"));
    let (_, err, code2) = reflect(&["verify", "no-such-thing"]);
    assert_eq!(code2, 2);
    assert!(err.contains("unknown scenario"));
}

#[test]
fn verify_is_deterministic() {
    let a = reflect(&["verify", "f4-errata", "--format", "json"]);
    let b = reflect(&["verify", "f4-errata", "--format", "json"]);
    assert_eq!(a.0, b.0);
    assert_eq!(a.2, 0);
}

#[test]
fn json_output_round_trips() {
    for args in [
        vec!["info", "--type", "B3", "--format", "json"],
        vec!["classinfo", "--type", "A2", "--format", "json"],
        vec!["verify", "a3-classes", "--format", "json"],
        vec!["ext-centralizers", "--type", "G2", "--p", "3", "--format", "json"],
    ] {
        let (stdout, _, code) = reflect(&args);
        assert_eq!(code, 0, "{args:?}");
        // classinfo prints a name line before the table
        let json_part = match stdout.find('{') {
            Some(k) => &stdout[k..],
            None => panic!("no JSON in output"),
        };
        let v: serde_json::Value = serde_json::from_str(json_part).expect("valid JSON");
        let re = serde_json::to_string_pretty(&v).unwrap();
        assert_eq!(re.trim_end(), json_part.trim_end(), "round trip for {args:?}");
        assert_eq!(v["schema"], "reflect/1");
    }
}

#[test]
fn braid_text_format_pins() {
    // Δ prints as w0; positive words as digit strings; inverses as
    // reduced fractions.
    let (w0, _, _) = reflect(&["braid", "--type", "A2", "--word", "1,2,1"]);
    assert_eq!(w0, "w0\n");
    let (pos, _, _) = reflect(&["braid", "--type", "A3", "--word", "1,2"]);
    assert_eq!(pos, "12\n");
    let (frac, _, _) = reflect(&["braid", "--type", "A2", "--word", "1", "--invert"]);
    assert_eq!(frac, "(1)^-1\n");
    let (sq, _, _) = reflect(&["braid", "--type", "A1", "--word", "1,1"]);
    assert_eq!(sq, "w0^2\n");
    let (red, _, _) = reflect(&["braid", "--type", "A3", "--word", "1,1,2"]);
    assert_eq!(red, "112\n");
}

#[test]
fn tex_format_renders_tabular() {
    let (stdout, _, code) = reflect(&["classinfo", "--type", "A2", "--format", "tex"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\\begin{tabular}"));
    assert!(stdout.contains(" \\\\"));
}

#[test]
fn ext_centralizers_f4_filter() {
    let (p3, _, c3) = reflect(&["ext-centralizers", "--type", "F4", "--p", "3"]);
    assert_eq!(c3, 0);
    assert!(!p3.contains("A2+~A2"));
    let (p2, _, c2) = reflect(&["ext-centralizers", "--type", "F4", "--p", "2"]);
    assert_eq!(c2, 0);
    assert!(p2.contains("A2+~A2"));
}

#[test]
fn e8_requires_budget_flag() {
    let (_, err, code) = reflect(&["ext-centralizers", "--type", "E8", "--p", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("budget"));
}
