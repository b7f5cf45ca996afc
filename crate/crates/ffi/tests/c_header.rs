//! Compiles a small C program against the generated header and, when the
//! static library is present next to the test binary, links and runs it.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "qflow.h"

int main(int argc, char **argv) {
    FILE *f = fopen(argv[1], "rb");
    if (!f) return 10;
    static char src[65536];
    size_t len = fread(src, 1, sizeof src - 1, f);
    fclose(f);
    src[len] = 0;

    QflowTransducer *t = NULL;
    if (qflow_transducer_parse(src, &t) != QFLOW_STATUS_OK) return 11;
    QflowReport *r = NULL;
    if (qflow_transducer_classify(t, 8, 100000, 30.0, &r) != QFLOW_STATUS_OK) return 12;
    QflowVerdict v;
    if (qflow_report_verdict(r, &v) != QFLOW_STATUS_OK) return 13;
    printf("linear=%d order=%zu\n", (int)v.linear, v.order);

    QflowNfa *a = NULL;
    if (qflow_nfa_parse("nfa\n", &a) == QFLOW_STATUS_OK) return 14;
    if (qflow_last_error() == NULL) return 15;

    qflow_report_free(r);
    qflow_transducer_free(t);
    return 0;
}
"#;

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn compiler() -> Option<String> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc).arg("--version").output().ok().filter(|o| o.status.success()).map(|_| cc)
}

fn write_program(dir: &Path) -> PathBuf {
    std::fs::create_dir_all(dir).unwrap();
    let path = dir.join("smoke.c");
    std::fs::write(&path, PROGRAM).unwrap();
    path
}

#[test]
fn header_is_current_and_compiles() {
    let header = std::fs::read_to_string(crate_dir().join("include/qflow.h")).unwrap();
    for name in ["qflow_transducer_parse", "qflow_nfa_width", "qflow_report_verdict", "qflow_last_error", "QFLOW_STATUS_BUDGET"] {
        assert!(header.contains(name), "{name} missing from header");
    }
    let Some(cc) = compiler() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let dir = std::env::temp_dir().join(format!("qflow-ffi-{}", std::process::id()));
    let src = write_program(&dir);
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(crate_dir().join("include"))
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}

#[test]
fn c_program_links_and_runs() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let exe = std::env::current_exe().unwrap();
    let lib = exe.parent().and_then(Path::parent).map(|d| d.join("libqflow_ffi.a"));
    let Some(lib) = lib.filter(|l| l.exists()) else {
        eprintln!("static library not found next to the test binary; skipping");
        return;
    };
    let dir = std::env::temp_dir().join(format!("qflow-ffi-link-{}", std::process::id()));
    let src = write_program(&dir);
    let bin = dir.join("smoke");
    let status = Command::new(cc)
        .args(["-std=c99", "-I"])
        .arg(crate_dir().join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let relay = crate_dir().join("../core/corpus/relay.t");
    let out = Command::new(&bin).arg(relay).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "linear=1 order=0\n");
}
