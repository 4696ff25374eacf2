//! Compiles a small C program against the generated header and, when the
//! static library is present, links and runs it.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "wfa_sva.h"

int main(void) {
    const char *json =
        "{\"format_version\":\"1\",\"alphabet\":[\"a\",\"b\"],\"n\":2,"
        "\"alpha\":[1,-2],\"beta\":[1,-1],"
        "\"transitions\":{\"a\":[[1,-1],[-2,3]],\"b\":[[0,-2],[0,5]]}}";
    WfaModel *m = NULL;
    if (wfa_model_from_json(json, &m) != WFA_OK) {
        fprintf(stderr, "%s\n", wfa_last_error());
        return 1;
    }
    double v = 0.0;
    if (wfa_eval_string(m, "ba", &v) != WFA_OK || v != 60.0) return 2;
    if (wfa_eval_string(m, "bz", &v) != WFA_ERR_MODEL) return 3;
    if (wfa_last_error() == NULL || strlen(wfa_last_error()) == 0) return 4;
    wfa_model_free(m);
    printf("ok\n");
    return 0;
}
"#;

fn compiler() -> Option<&'static str> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok_and(|o| o.status.success()))
}

fn staticlib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let dir = exe.parent()?.parent()?;
    let lib = dir.join("libwfa_sva_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn header_compiles_and_links() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(&src, PROGRAM).unwrap();
    let syntax = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .output()
        .unwrap();
    assert!(syntax.status.success(), "{}", String::from_utf8_lossy(&syntax.stderr));
    let Some(lib) = staticlib() else {
        eprintln!("static library not built; header checked only");
        return;
    };
    let exe = dir.path().join("main");
    let link = Command::new(cc)
        .args(["-std=c99", "-I"])
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(link.status.success(), "{}", String::from_utf8_lossy(&link.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout), "ok\n");
}
