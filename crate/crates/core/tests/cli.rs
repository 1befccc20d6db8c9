use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn walknet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_walknet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn generate_writes_reproducible_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for out in [&a, &b] {
        let o = walknet(&[
            "generate",
            "--N",
            "1000",
            "--m",
            "5",
            "--p1",
            "0.5",
            "--seed",
            "42",
            "--out",
            p(out),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).contains("nodes=1010"));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let edges = text.lines().count();
    assert!((1010..=6010).contains(&edges), "{edges}");
    let g = walknet::Graph::read_edge_list(&a).unwrap();
    assert_eq!(g.node_count(), 1010);
    assert!(g.is_connected());
}

#[test]
fn generate_rejects_bad_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.txt");
    for args in [
        vec!["generate", "--N", "10", "--p1", "1.5"],
        vec!["generate", "--N", "0"],
        vec!["generate", "--N", "10", "--m", "0"],
        vec!["generate", "--N", "10", "--initial", "cycle:2"],
        vec!["generate", "--N", "10", "--beta", "1.0"],
        vec!["generate", "--N", "ten"],
    ] {
        let mut args = args;
        args.extend(["--out", p(&out)]);
        let o = walknet(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!out.exists(), "{args:?}");
    }
}

#[test]
fn measure_cycle_row() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("c10.txt");
    let text: String = (0..10)
        .map(|i| format!("{} {}\n", i, (i + 1) % 10))
        .collect();
    fs::write(&input, text).unwrap();
    let o = walknet(&["measure", "--input", p(&input), "--header"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(
        lines[0],
        "n_nodes,n_edges,avg_local_clustering,transitivity,avg_shortest_path,gamma,max_degree,aspl_mode"
    );
    assert_eq!(lines[1], "10,10,0.0,0.0,2.77778,nan,2,exact");
}

#[test]
fn measure_exact_equals_full_sample() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("g.txt");
    let o = walknet(&["generate", "--N", "200", "--seed", "3", "--out", p(&input)]);
    assert!(o.status.success());
    let exact = stdout(&walknet(&[
        "measure",
        "--input",
        p(&input),
        "--aspl",
        "exact",
    ]));
    let sampled = stdout(&walknet(&[
        "measure",
        "--input",
        p(&input),
        "--aspl",
        "sampled:210",
    ]));
    let cols = |s: &str| s.trim().split(',').map(String::from).collect::<Vec<_>>();
    let (e, s) = (cols(&exact), cols(&sampled));
    assert_eq!(e[..7], s[..7]);
    assert_eq!(e[7], "exact");
    assert_eq!(s[7], "sampled:210");
}

#[test]
fn measure_failures() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.txt");
    let o = walknet(&["measure", "--input", p(&missing)]);
    assert_eq!(o.status.code(), Some(2));

    let split = dir.path().join("split.txt");
    fs::write(&split, "0 1\n1 2\n3 4\n4 5\n").unwrap();
    let o = walknet(&["measure", "--input", p(&split)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("9 "));

    let junk = dir.path().join("junk.txt");
    fs::write(&junk, "0 1\nx y\n").unwrap();
    assert_ne!(
        walknet(&["measure", "--input", p(&junk)]).status.code(),
        Some(0)
    );

    let ok = dir.path().join("ok.txt");
    fs::write(&ok, "0 1\n1 2\n2 0\n").unwrap();
    let o = walknet(&["measure", "--input", p(&ok), "--aspl", "sampled:0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn sweep_builtin_scaled() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t1.csv");
    let o = walknet(&[
        "sweep",
        "--spec",
        "builtin:table1",
        "--scale",
        "100",
        "--seeds",
        "1",
        "--out",
        p(&out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let mut rd = csv::Reader::from_path(&out).unwrap();
    let headers = rd.headers().unwrap().clone();
    assert_eq!(headers.len(), 23);
    let rows: Vec<_> = rd.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 11);
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    for r in &rows {
        assert_eq!(&r[col("N")], "500");
        assert_eq!(&r[col("N_full")], "50000");
        assert_eq!(&r[col("status")], "ok");
        assert_eq!(&r[col("n_nodes")], "510");
    }

    let fig = dir.path().join("fig1.csv");
    let o = walknet(&[
        "plotdata",
        "--input",
        p(&out),
        "--figure",
        "1",
        "--out",
        p(&fig),
    ]);
    assert!(o.status.success());
    let series = fs::read_to_string(&fig).unwrap();
    assert_eq!(series.lines().next(), Some("x,y"));
    assert_eq!(series.lines().count(), 12);
}

#[test]
fn sweep_table4_pairs_shortcut_settings() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t4.csv");
    let o = walknet(&[
        "sweep",
        "--spec",
        "builtin:table4",
        "--scale",
        "200",
        "--seeds",
        "1",
        "--out",
        p(&out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let mut rd = csv::Reader::from_path(&out).unwrap();
    let headers = rd.headers().unwrap().clone();
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    let rows: Vec<_> = rd.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 18);
    let on = rows
        .iter()
        .filter(|r| &r[col("special_edges")] == "true")
        .count();
    assert_eq!(on, 9);
}

#[test]
fn sweep_rejects_empty_grid_before_writing() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("bad.sweep");
    fs::write(&spec, "p1 =\nm = 5\nN = 100\n").unwrap();
    let out = dir.path().join("out.csv");
    let o = walknet(&["sweep", "--spec", p(&spec), "--out", p(&out)]);
    assert_ne!(o.status.code(), Some(0));
    assert!(!out.exists());

    let o = walknet(&["sweep", "--spec", "builtin:nope", "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!out.exists());
}

#[test]
fn plotdata_log_axis_and_bad_figure() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("s.csv");
    fs::write(
        &input,
        "N,avg_shortest_path,status\n100,3.0,ok\n100,5.0,ok\n1000,6.0,ok\n",
    )
    .unwrap();
    let o = walknet(&["plotdata", "--input", p(&input), "--figure", "3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    let first: Vec<f64> = lines[1].split(',').map(|v| v.parse().unwrap()).collect();
    assert!((first[0] - 100f64.ln()).abs() < 1e-4);
    assert_eq!(first[1], 4.0);

    let o = walknet(&["plotdata", "--input", p(&input), "--figure", "9"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn help_and_unknown_commands() {
    assert_eq!(walknet(&["--help"]).status.code(), Some(0));
    assert_eq!(walknet(&["frobnicate"]).status.code(), Some(1));
    assert!(stdout(&walknet(&["sweep", "--help"])).contains("builtin:table4"));
}
