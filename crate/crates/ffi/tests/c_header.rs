//! Compiles and runs a C program against the generated header and static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include "walknet.h"

int main(void) {
    WnGenParams p;
    if (wn_gen_params_default(&p) != WN_STATUS_OK) return 10;
    p.nodes_to_add = 300;
    p.seed = 5;
    WnGraph *g = NULL;
    if (wn_generate(&p, &g) != WN_STATUS_OK) return 11;
    WnMetrics m;
    if (wn_measure(g, 0, 0, &m) != WN_STATUS_OK) return 12;
    if (m.node_count != 310 || wn_graph_node_count(g) != 310) return 13;
    if (!(m.avg_shortest_path > 1.0)) return 14;
    if (wn_graph_add_edge(g, 0, 999999, NULL) != WN_STATUS_INVALID_INPUT) return 15;
    if (wn_last_error_message() == NULL) return 16;
    wn_graph_free(g);
    printf("%llu %.6f\n", (unsigned long long)m.edge_count, m.avg_shortest_path);
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // tests run from <target>/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let lib_dir = target_dir();
    let archive = lib_dir.join("libwalknet_ffi.a");
    assert!(archive.exists(), "missing {}", archive.display());
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let exe = dir.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();

    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .arg("-std=c11")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .status()
        .expect("C compiler runs");
    assert!(status.success(), "C build failed");

    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    let text = String::from_utf8(out.stdout).unwrap();
    let fields: Vec<&str> = text.split_whitespace().collect();
    assert_eq!(fields.len(), 2);
    assert!(fields[0].parse::<u64>().unwrap() >= 310);
}
