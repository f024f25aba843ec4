//! Compiles and runs a small C program against the generated header and the
//! static library. Skipped when no C compiler is on the path.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "kmink.h"

int main(void) {
    KminkValue *a = NULL, *b = NULL, *c = NULL;
    if (kmink_parse_eval("x0", &a) != KMINK_STATUS_OK) return 10;
    if (kmink_parse_eval("x1", &b) != KMINK_STATUS_OK) return 11;
    if (kmink_value_mul(a, b, &c) != KMINK_STATUS_OK) return 12;
    char *s = kmink_value_render(c);
    printf("%s\n", s);
    kmink_string_free(s);
    KminkValue *bad = NULL;
    if (kmink_parse_eval("tau[9]", &bad) != KMINK_STATUS_INDEX_OUT_OF_RANGE) return 13;
    if (bad != NULL || kmink_last_error() == NULL) return 14;
    printf("%s\n", kmink_last_error());
    kmink_value_free(a);
    kmink_value_free(b);
    kmink_value_free(c);
    return 0;
}
"#;

fn has_cc() -> bool {
    Command::new("cc").arg("--version").output().is_ok_and(|o| o.status.success())
}

#[test]
fn c_program_links_and_runs() {
    if !has_cc() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    // target/<profile>/deps/<test> -> target/<profile>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libkmink_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let src = tmp.join("kmink_smoke.c");
    let exe = tmp.join("kmink_smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("1i * kappa^-1 * x1 + x1 * x0"));
    assert!(lines.next().unwrap().contains("out of range"));
}
