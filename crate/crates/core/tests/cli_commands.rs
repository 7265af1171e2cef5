use rootsplint::cli::run;

fn call(args: &[&str]) -> (i32, String) {
    run(std::iter::once("rootsplint").chain(args.iter().copied()))
}

#[test]
fn verify_g2_and_f4() {
    let (status, out) = call(&["verify", "--targets", "G2,F4"]);
    assert_eq!(status, 0, "{out}");
    assert!(out.contains("G2: 4 splints, 2 classes (expected 2)"));
    assert!(out.contains("F4: 1 splints, 1 classes (expected 1)"));
}

#[test]
fn d5_has_no_splints() {
    let (status, out) = call(&["splints", "--type", "D5"]);
    assert_eq!(status, 0);
    assert!(out.contains("D5: 0 splints"));
}

#[test]
fn c3_does_not_embed_in_b4() {
    assert_eq!(
        call(&["embed", "--stem", "C3", "--target", "B4", "--exists"]),
        (0, "false\n".to_string())
    );
}

#[test]
fn json_has_required_fields_and_is_repeatable() {
    let args = ["verify", "--targets", "B2", "--json"];
    let (status, out) = call(&args);
    assert_eq!(status, 0);
    assert_eq!(call(&args).1, out);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let t = &v["targets"][0];
    assert_eq!(t["target"]["family"], "B");
    assert_eq!(t["target"]["rank"], 2);
    assert_eq!(t["target"]["roots"].as_array().unwrap().len(), 4);
    let s = &t["splints"][0];
    for key in [
        "part1",
        "part2",
        "realizations1",
        "realizations2",
        "weyl_class",
    ] {
        assert!(s.get(key).is_some(), "{key}");
    }
    assert!(s["realizations1"][0]["metric"].is_string());
    assert_eq!(t["verification"]["expected_classes"], 3);
    assert_eq!(t["verification"]["found_classes"], 3);
    assert_eq!(t["verification"]["pass"], true);
    assert!(v["version"].is_string());
}

#[test]
fn dump_expected_lists_rows() {
    let (status, out) = call(&["verify", "--dump-expected"]);
    assert_eq!(status, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 27);
}

#[test]
fn usage_errors() {
    assert_eq!(call(&["splints"]).0, 2);
    assert_eq!(call(&["roots", "--type", "Q3"]).0, 2);
    assert_eq!(
        call(&[
            "embed",
            "--stem",
            "C3",
            "--target",
            "B4",
            "--exists",
            "--enumerate"
        ])
        .0,
        2
    );
    let (status, out) = call(&["--help"]);
    assert_eq!(status, 0);
    assert!(out.contains("verify"));
}

#[test]
fn branch_g2_long_roots() {
    let (status, out) = call(&[
        "branch", "--type", "G2", "--weight", "1,0,-1", "--sub", "long", "--match", "A2",
    ]);
    assert_eq!(status, 0, "{out}");
    assert!(out.contains("dimension 7"));
    assert!(out.contains("matches the A2 diagram with coefficients"));
}
