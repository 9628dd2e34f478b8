//! The generated header must compile as C and as C++.

use std::path::Path;
use std::process::Command;

fn compiles(compiler: &str, lang: &str) {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let tmp = std::env::temp_dir().join(format!("argeo-header-{lang}-{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    let src = tmp.join("use.c");
    std::fs::write(
        &src,
        "#include \"argeo.h\"\n\
         int use(void) {\n\
           struct ArgeoProgram *p = 0;\n\
           bool w = 0;\n\
           if (argeo_program_parse(\"a.\", &p) != ARGEO_STATUS_OK) return 1;\n\
           argeo_warrant(p, \"a\", ARGEO_WARRANT_ENGINE_DELP, &w);\n\
           argeo_program_free(p);\n\
           return w ? 0 : 2;\n\
         }\n",
    )
    .unwrap();
    let status = Command::new(compiler)
        .args(["-x", lang, "-fsyntax-only", "-Wall", "-Werror", "-I"])
        .arg(dir.join("include"))
        .arg(&src)
        .status();
    std::fs::remove_dir_all(&tmp).unwrap();
    match status {
        Ok(s) => assert!(s.success(), "{compiler} rejected the header"),
        // no toolchain: nothing to check against
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            eprintln!("{compiler} not found, skipping")
        }
        Err(e) => panic!("{e}"),
    }
}

#[test]
fn header_is_valid_c() {
    compiles("cc", "c");
}

#[test]
fn header_is_valid_cpp() {
    compiles("c++", "c++");
}

/// Links a C program against the static library and runs it.
#[test]
fn c_program_links_and_runs() {
    // tests run from target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    let lib = exe
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .join("libargeo_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built, skipping", lib.display());
        return;
    }
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let tmp = std::env::temp_dir().join(format!("argeo-link-{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    let src = tmp.join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <string.h>
#include "argeo.h"
int main(void) {
    struct ArgeoProgram *p = NULL;
    if (argeo_program_parse("wr. go.\n~hw <- b.\nhw <- m.\nm -< wr.\nb -< go.\n", &p)) return 1;
    bool w = true;
    if (argeo_warrant(p, "m", ARGEO_WARRANT_ENGINE_DELP, &w) || w) return 2;
    char *text = NULL;
    if (argeo_extensions(p, ARGEO_ATTACK_DLP_REBUT, ARGEO_SEMANTICS_GROUNDED, &text)) return 3;
    if (strcmp(text, "{go, wr}\n") != 0) return 4;
    argeo_string_free(text);
    if (argeo_warrant(p, "m", 9, &w) != ARGEO_STATUS_INVALID_ARGUMENT) return 5;
    if (argeo_last_error() == NULL) return 6;
    argeo_program_free(p);
    puts("ok");
    return 0;
}
"#,
    )
    .unwrap();
    let bin = tmp.join("main");
    let built = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status();
    match built {
        Ok(s) => assert!(s.success(), "link failed"),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            eprintln!("cc not found, skipping");
            return;
        }
        Err(e) => panic!("{e}"),
    }
    let out = Command::new(&bin).output().unwrap();
    std::fs::remove_dir_all(&tmp).unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}
