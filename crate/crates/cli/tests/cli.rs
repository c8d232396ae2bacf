use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn rankflip(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rankflip"))
        .args(args)
        .arg("--quiet")
        .output()
        .expect("binary runs")
}

fn check_golden(input: &str, args: &[&str], expected: &str, status: i32) {
    let input = golden(input);
    let mut full = args.to_vec();
    full.extend(["--input", input.to_str().unwrap()]);
    let out = rankflip(&full);
    assert_eq!(
        out.status.code(),
        Some(status),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let want = std::fs::read_to_string(golden(expected)).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), want, "{args:?}");
}

#[test]
fn golden_outputs() {
    let cases: &[(&str, &[&str], &str, i32)] = &[
        (
            "t23.graph",
            &["rank", "--r", "1", "--m", "2", "--witness"],
            "rank_t23.out",
            0,
        ),
        (
            "k77.graph",
            &["sparsify", "--k", "0", "--h", "1"],
            "sparsify_k77.out",
            0,
        ),
        (
            "k11.graph",
            &["sparsify", "--k", "2", "--h", "2"],
            "sparsify_k11.out",
            0,
        ),
        ("sparsify_k77.out", &["recover"], "recover_k77.out", 0),
        (
            "k4.graph",
            &["near-covered", "--k", "1", "--m", "3", "--exact"],
            "nc_k4.out",
            1,
        ),
        (
            "t23s1.graph",
            &["certify", "--d", "2", "--m", "3", "--r", "1"],
            "certify_t23s1.out",
            0,
        ),
        ("half3.graph", &["halfgraph", "--t", "3"], "half3.out", 0),
        ("k77.graph", &["neartwin", "--k", "0", "--components"], "nt_k77.out", 0),
        (
            "k4.graph",
            &["labd-check", "--f", "const:1", "--d", "const:2"],
            "labd_k4.out",
            1,
        ),
        (
            "kx.graph",
            &[
                "sflip-search",
                "--s",
                "1",
                "--k",
                "0",
                "--h",
                "1",
                "--f",
                "const:2",
                "--d",
                "const:1",
            ],
            "sflip_kx.out",
            0,
        ),
    ];
    for (input, args, expected, status) in cases {
        check_golden(input, args, expected, *status);
    }
}

#[test]
fn generator_matches_fixture() {
    let out = rankflip(&["gen", "tree", "--depth", "2", "--branch", "3"]);
    assert_eq!(out.stdout, std::fs::read(golden("t23.graph")).unwrap());
}

#[test]
fn recovered_graph_is_the_input() {
    assert_eq!(
        std::fs::read(golden("recover_k77.out")).unwrap(),
        std::fs::read(golden("k77.graph")).unwrap()
    );
}

fn status(args: &[&str]) -> Option<i32> {
    rankflip(args).status.code()
}

#[test]
fn exit_statuses() {
    let k77 = golden("k77.graph");
    let k77 = k77.to_str().unwrap();
    let c6 = golden("c6.graph");
    let c6 = c6.to_str().unwrap();
    assert_eq!(
        status(&["verify-roundtrip", "--k", "0", "--h", "1", "--input", k77]),
        Some(0)
    );
    assert_eq!(status(&["halfgraph", "--t", "2", "--input", c6]), Some(0));
    assert_eq!(
        status(&["certify", "--d", "1", "--m", "3", "--r", "2", "--input", c6]),
        Some(1)
    );
    assert_eq!(
        status(&[
            "sflip-search",
            "--s",
            "1",
            "--k",
            "0",
            "--h",
            "1",
            "--f",
            "const:0",
            "--d",
            "const:0",
            "--input",
            c6
        ]),
        Some(1)
    );
    // usage and input errors
    assert_eq!(status(&["rank", "--r", "1"]), Some(2));
    assert_eq!(status(&["sparsify", "--k", "0", "--h", "0", "--input", k77]), Some(2));
    assert_eq!(
        status(&[
            "rank",
            "--r",
            "1",
            "--m",
            "1",
            "--input",
            golden("missing.graph").to_str().unwrap()
        ]),
        Some(2)
    );
    assert_eq!(
        status(&["labd-check", "--f", "bogus", "--d", "const:1", "--input", k77]),
        Some(2)
    );
    assert_eq!(status(&["bounds", "--g", "1,2"]), Some(2));
    assert_eq!(
        status(&[
            "certify",
            "--d",
            "1",
            "--m",
            "1",
            "--r",
            "1",
            "--extract",
            "--vertex",
            "99",
            "--input",
            c6
        ]),
        Some(2)
    );
    // caps and overflow
    assert_eq!(
        status(&[
            "near-covered",
            "--k",
            "0",
            "--m",
            "5",
            "--exact",
            "--cap-nodes",
            "1",
            "--input",
            k77
        ]),
        Some(3)
    );
    assert_eq!(status(&["bounds", "--g", "99999999999,99999999999,40"]), Some(3));
}

#[test]
fn parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.graph");
    std::fs::write(&bad, "p 3 1\ne 0 3\n").unwrap();
    let out = rankflip(&["rank", "--r", "1", "--m", "1", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn bounds_print_exact_values() {
    for (args, want) in [
        (["bounds", "--g", "3,2,3"], "21\n"),
        (["bounds", "--h", "2,2"], "16\n"),
        (["bounds", "--ladder", "2,3"], "10\n"),
        (["bounds", "--m-prime", "2,1,2"], "13\n"),
        (["bounds", "--w", "2,2,1"], "5\n"),
    ] {
        assert_eq!(String::from_utf8(rankflip(&args).stdout).unwrap(), want);
    }
}

#[test]
fn table_specs_read_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("f.txt");
    std::fs::write(&table, "1\n1\nover\n").unwrap();
    let spec = format!("table:{}", table.display());
    let k4 = golden("k4.graph");
    let out = rankflip(&[
        "labd-check",
        "--f",
        &spec,
        "--d",
        "const:2",
        "--input",
        k4.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("skipped"));
}

#[test]
fn sparsify_writes_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.graph");
    let k77 = golden("k77.graph");
    let res = rankflip(&[
        "sparsify",
        "--k",
        "0",
        "--h",
        "1",
        "--out",
        out.to_str().unwrap(),
        "--input",
        k77.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(0));
    let prov = std::fs::read_to_string(dir.path().join("s.graph.prov")).unwrap();
    assert_eq!(prov, "apex 0 14\napex 1 15\nflip 0 1\n");
    let graph = std::fs::read_to_string(&out).unwrap();
    assert!(graph.starts_with("p 16 15\n"));
}

fn corpus(args: &[&str]) -> (tempfile::TempDir, Vec<(String, Vec<u8>)>) {
    let dir = tempfile::tempdir().unwrap();
    let mut full = vec!["corpus"];
    full.extend(args);
    full.extend(["--dir", dir.path().to_str().unwrap()]);
    assert_eq!(rankflip(&full).status.code(), Some(0));
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().into_string().unwrap(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    (dir, files)
}

#[test]
fn corpus_families() {
    let (_d, trees) = corpus(&["trees"]);
    // three depths, three branchings, subdivision counts 0..=2, plus manifest
    assert_eq!(trees.len(), 28);
    let manifest = String::from_utf8(trees.iter().find(|(n, _)| n == "manifest.tsv").unwrap().1.clone()).unwrap();
    assert_eq!(manifest.lines().filter(|l| !l.starts_with('#')).count(), 27);

    let (_d, halves) = corpus(&["halfgraph"]);
    assert_eq!(halves.len(), 7);

    let (_a, first) = corpus(&["random", "--count", "5", "--seed", "9"]);
    let (_b, second) = corpus(&["random", "--count", "5", "--seed", "9"]);
    assert_eq!(first, second);
    let (_c, other) = corpus(&["random", "--count", "5", "--seed", "10"]);
    assert_ne!(first, other);
}
