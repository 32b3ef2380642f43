//! Compiles a small C program against the generated header and the static
//! library, then runs it.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "danielewski.h"

int main(void) {
    char *out = NULL;
    DnlStatus s = dnl_run("isomorphic",
        "{\"first\":{\"h\":2,\"sigma\":[\"1\",\"-1\"]},\"second\":{\"h\":2,\"sigma\":[\"0\",\"1\"]}}",
        NULL, &out);
    if (s != DNL_STATUS_OK || strstr(out, "\"isomorphic\":true") == NULL) return 1;
    dnl_string_free(out);

    DnlSurface *surf = NULL;
    size_t r = 0;
    if (dnl_surface_new("{\"h\":2,\"Q\":\"y^3-y\"}", &surf) != DNL_STATUS_OK) return 2;
    if (dnl_surface_is_danielewski(surf, &r) != DNL_STATUS_OK || r != 3) return 3;
    dnl_surface_free(surf);

    if (dnl_run("standardize", "{\"h\":2}", NULL, &out) != DNL_STATUS_MALFORMED) return 4;
    if (dnl_last_error() == NULL) return 5;
    dnl_string_free(out);
    printf("%s\n", dnl_version());
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/c_program-<hash>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libdanielewski_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());

    let work = std::env::temp_dir().join(format!("dnl-c-{}", std::process::id()));
    std::fs::create_dir_all(&work).unwrap();
    let src = work.join("main.c");
    let exe = work.join("main");
    std::fs::write(&src, PROGRAM).unwrap();

    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success(), "C build failed");

    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), env!("CARGO_PKG_VERSION"));
    std::fs::remove_dir_all(&work).ok();
}
