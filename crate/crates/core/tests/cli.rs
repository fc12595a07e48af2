use quiver_gkm::cli::{run, EXIT_NO_GKM, EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("quiver-gkm").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn classify_exit_codes() {
    let (code, out, _) = call(&["classify", "fl_4"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("verdict: GKM_STRAIGHT\n"));

    let (code, out, _) = call(&["classify", "no_gkm_sink"]);
    assert_eq!(code, EXIT_NO_GKM);
    assert!(out.contains("verdict: NO_GKM"));
    assert!(out.contains("witness: two-sink"));

    let (code, out, _) = call(&["classify", "no_gkm_source"]);
    assert_eq!(code, EXIT_NO_GKM);
    assert!(out.contains("two-source"));

    let (code, out, _) = call(&["classify", "point"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("POINT_OR_EMPTY"));
}

#[test]
fn poincare_values() {
    assert_eq!(call(&["poincare", "fl_4", "--at", "2"]), (0, "315\n".into(), String::new()));
    assert_eq!(call(&["poincare", "fl_4"]).1, "[1, 3, 5, 6, 5, 3, 1]\n");
    assert_eq!(call(&["poincare", "a2_p1"]).1, "[1, 1]\n");
}

#[test]
fn usage_errors() {
    assert_eq!(call(&["classify", "no_such_fixture"]).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(call(&["poincare", "fl_4", "--at", "x"]).0, EXIT_USAGE);
    assert_eq!(call(&["--help"]).0, EXIT_OK);
}

#[test]
fn tree_input_needs_the_experimental_flag() {
    let (code, _, err) = call(&["fixed-points", "x3124"]);
    assert_eq!(code, EXIT_PRECONDITION);
    assert!(err.contains("--experimental"));
    let (code, out, _) = call(&["--experimental", "poincare", "x3124"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.ends_with("[1, 2, 1]\n"));
}

#[test]
fn empty_grassmannian_is_a_precondition_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.json");
    let json = r#"{"quiver": {"vertices": ["1"], "arrows": []}, "forest": {"components": [{"vertices": [{"id": "x", "over": "1"}], "arrows": []}]}, "dimension_vector": {"1": 2}}"#;
    std::fs::write(&path, json).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(call(&["poincare", p]).0, EXIT_PRECONDITION);
    assert_eq!(call(&["classify", p]).0, EXIT_PRECONDITION);
}

#[test]
fn fixture_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fl_3.json");
    let p = path.to_str().unwrap();
    assert_eq!(call(&["fixture", "fl_3", "--out", p]).0, EXIT_OK);
    let (code, out, _) = call(&["fixed-points", p]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 7);
    assert!(out.contains("(123)"));
    let (_, printed, _) = call(&["fixture", "fl_3"]);
    assert_eq!(printed, std::fs::read_to_string(&path).unwrap());
}

#[test]
fn moment_graph_files_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut dots = Vec::new();
    for k in 0..2 {
        let dot = dir.path().join(format!("g{k}.dot"));
        let data = dir.path().join(format!("g{k}.txt"));
        let (code, out, _) =
            call(&["moment-graph", "fl_4", "--dot", dot.to_str().unwrap(), "--data", data.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("edges 72"));
        dots.push((std::fs::read(&dot).unwrap(), std::fs::read(&data).unwrap()));
    }
    assert_eq!(dots[0], dots[1]);
    let dot = String::from_utf8(dots[0].0.clone()).unwrap();
    assert!(dot.starts_with("digraph moment_graph {\n"));
    assert!(dot.contains("[label=\"(4321)\"]"));
    assert_eq!(dot.matches(" -> ").count(), 72);
}

#[test]
fn a2_moment_graph_label() {
    let (_, out, _) = call(&["moment-graph", "a2_p1"]);
    assert!(out.contains("character +e2 -e1"));
    assert!(out.contains("palais-smale true"));
}

#[test]
fn kt_basis_round_trip_and_tamper_detection() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kt.json");
    let p = path.to_str().unwrap();
    let (code, out, _) = call(&["kt-basis", "fl_3", "--out", p]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("unique true"));
    let (code, out, _) = call(&["kt-basis", "fl_3", "--verify", p]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "verified 6 classes\n");

    let doc = std::fs::read_to_string(&path).unwrap();
    let tampered = doc.replacen("\"coefficient\": \"1\"", "\"coefficient\": \"2\"", 1);
    assert_ne!(doc, tampered);
    std::fs::write(&path, tampered).unwrap();
    assert_eq!(call(&["kt-basis", "fl_3", "--verify", p]).0, EXIT_PRECONDITION);
}

#[test]
fn grading_check() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    let bad = dir.path().join("bad.json");
    std::fs::write(&good, r#"{"weights": {"s1_1": 0, "s1_2": 5, "s2_1": 1, "s2_2": 6}}"#).unwrap();
    std::fs::write(&bad, r#"{"weights": {"s1_1": 0, "s1_2": 5, "s2_1": 1, "s2_2": 7}}"#).unwrap();
    let (code, out, _) = call(&["grading", "a2_p1", "--check", good.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.ends_with("result: pass\n"));
    let (code, out, _) = call(&["grading", "a2_p1", "--check", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_PRECONDITION);
    assert!(out.contains("constructible: no"));
}

#[test]
fn grading_table() {
    let (code, out, _) = call(&["grading", "fl_3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("AG1 ok AG2 ok SA1 ok SA2 ok"));
    assert_eq!(out.lines().filter(|l| l.starts_with('h')).count(), 6);
}

#[test]
fn tangent_and_oracles_agree_on_fl_3() {
    let (_, tangent, _) = call(&["tangent", "fl_3"]);
    let (_, hom, _) = call(&["oracle", "hom-dim", "fl_3"]);
    let t: Vec<&str> = tangent.lines().skip(1).map(|l| l.split('\t').nth(1).unwrap()).collect();
    let h: Vec<&str> = hom.lines().skip(1).map(|l| l.split('\t').nth(1).unwrap()).collect();
    assert_eq!(t, h);
    assert!(t.iter().all(|&x| x == "3"));

    let (_, brute, _) = call(&["oracle", "fixed-points", "fl_3"]);
    assert_eq!(brute.lines().count(), 7);
    let (_, count, _) = call(&["oracle", "count-points", "fl_3", "--p", "2"]);
    assert!(count.contains("count 21\n"));
    assert_eq!(call(&["oracle", "count-points", "fl_3", "--p", "4"]).0, EXIT_PRECONDITION);
}

#[test]
fn hall_strata_listing() {
    let (code, out, _) = call(&["hall-strata", "a2_p1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.matches("stratum").count(), 1);
    assert!(out.contains("points: [0, 1]"));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    for args in [
        &["classify", "x3124"][..],
        &["--experimental", "kt-basis", "x3124"],
        &["grading", "fl_4"],
        &["hall-strata", "fl_4"],
        &["validate", "fl_4"],
    ] {
        assert_eq!(call(args), call(args), "{args:?}");
    }
}
