use std::path::PathBuf;

use infgon_cli::run;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn infgon(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("infgon").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn hom_prints_dimension() {
    assert_eq!(
        infgon(&["hom", "--x", "0,2", "--y", "0,3"]),
        (0, "1\n".into(), String::new())
    );
    assert_eq!(infgon(&["hom", "--x", "0,2", "--y", "-1,1"]).1, "0\n");
    let (code, out, _) = infgon(&["hom", "--x", "-3,0", "--y", "-2,1", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["x"], serde_json::json!([-3, 0]));
}

#[test]
fn mutate_fountain_document() {
    let (code, out, _) = infgon(&["mutate", &fixture("fountain.arcs"), "--arc", "0,2"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "arc 1 3"), "{out}");
    assert!(out.lines().any(|l| l == "remove 0 2"), "{out}");
    let flipped = std::fs::read_to_string(fixture("fountain-flipped.arcs")).unwrap();
    assert_eq!(
        infgon_core::parse_family(&out)
            .unwrap()
            .arcs_in_window(infgon_core::Window::new(-9, 9).unwrap()),
        infgon_core::parse_family(&flipped)
            .unwrap()
            .arcs_in_window(infgon_core::Window::new(-9, 9).unwrap())
    );
}

#[test]
fn mutate_writes_output_file() {
    let dir = std::env::temp_dir().join(format!("infgon-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("flipped.arcs");
    let t = target.to_string_lossy().into_owned();
    let (code, _, _) = infgon(&[
        "mutate",
        &fixture("leapfrog.arcs"),
        "--arc",
        "-1,1",
        "-o",
        &t,
    ]);
    assert_eq!(code, 0);
    let written = std::fs::read_to_string(&target).unwrap();
    assert!(written.contains("arc -2 0") && written.contains("remove -1 1"));
    let svg = dir.join("leapfrog.svg").to_string_lossy().into_owned();
    assert_eq!(infgon(&["render", &t, "--window", "-4:4", "-o", &svg]).0, 0);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exit_codes() {
    // Domain verdicts.
    assert_eq!(infgon(&["maximal", &fixture("octagon.arcs")]).0, 1);
    assert_eq!(
        infgon(&["maximal", &fixture("octagon.arcs"), "--window", "0:7"]).0,
        0
    );
    assert_eq!(
        infgon(&["maximal", &fixture("octagon.arcs"), "--window", "-1:7"]).0,
        1
    );
    assert_eq!(infgon(&["ff", &fixture("split.arcs")]).0, 1);
    assert_eq!(infgon(&["ff", &fixture("fountain.arcs")]).0, 0);
    assert_eq!(
        infgon(&["mutate", &fixture("fountain.arcs"), "--arc", "1,3"]).0,
        1
    );
    assert_eq!(
        infgon(&["mutate", &fixture("octagon.arcs"), "--arc", "0,7"]).0,
        1
    );
    // Usage and parse errors.
    assert_eq!(infgon(&["hom", "--x", "0,1", "--y", "0,3"]).0, 2);
    assert_eq!(
        infgon(&["quiver", &fixture("leapfrog.arcs"), "--window", "4:-4"]).0,
        2
    );
    assert_eq!(infgon(&["validate", "/nonexistent/family.arcs"]).0, 2);
    assert_eq!(infgon(&["frobnicate"]).0, 2);
    assert_eq!(infgon(&["oracle", "--vertices", "2"]).0, 2);
    assert_eq!(infgon(&["--help"]).0, 0);
}

#[test]
fn parse_errors_name_the_line() {
    let dir = std::env::temp_dir().join(format!("infgon-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.arcs");
    std::fs::write(&bad, "infgon/1\narc 0 2\narc 1 3\n").unwrap();
    let (code, _, err) = infgon(&["validate", &bad.to_string_lossy()]);
    assert_eq!(code, 2);
    assert!(err.contains(":3:") && err.contains("cross"), "{err}");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn quiver_formats() {
    let leapfrog = fixture("leapfrog.arcs");
    let (_, text, _) = infgon(&["quiver", &leapfrog, "--window", "-4:4"]);
    assert!(text.starts_with("7 vertices, 6 arrows\n"));
    assert!(text.contains("(-1,1) -> (-2,1)"));
    let (_, dot, _) = infgon(&["quiver", &leapfrog, "--window", "-4:4", "--dot"]);
    assert!(dot.starts_with("digraph") && dot.matches("->").count() == 6);
}

#[test]
fn json_is_stable() {
    for args in [
        vec!["--json", "classify", &fixture("split.arcs")[..]],
        vec![
            "--json",
            "quiver",
            &fixture("leapfrog.arcs")[..],
            "--window",
            "-6:6",
        ],
        vec!["--json", "oracle", "--vertices", "5"],
    ] {
        assert_eq!(infgon(&args), infgon(&args));
    }
}
