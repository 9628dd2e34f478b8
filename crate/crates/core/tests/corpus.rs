use argeo::fixtures::{bundled, diff, load_dir};

const DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

#[test]
fn every_fixture_matches_its_golden() {
    let mut failures = String::new();
    for fx in bundled() {
        let got = fx.run(argeo::aspic::DEFAULT_ARGUMENT_BUDGET);
        if got != fx.golden {
            failures += &format!("{}\n{}", fx.name, diff(&fx.golden, &got));
        }
    }
    assert!(failures.is_empty(), "{failures}");
}

#[test]
fn bundled_copies_are_the_files_on_disk() {
    let disk = load_dir(DIR).unwrap();
    let mine = bundled();
    assert_eq!(disk.len(), mine.len());
    for fx in &mine {
        let d = disk.iter().find(|d| d.name == fx.name).unwrap();
        assert_eq!(
            (&d.program, &d.golden),
            (&fx.program, &fx.golden),
            "{}",
            fx.name
        );
    }
}

#[test]
fn fixtures_have_queries_and_goldens() {
    for fx in bundled() {
        assert!(!fx.queries().is_empty(), "{}", fx.name);
        assert!(!fx.golden.is_empty(), "{} has no golden", fx.name);
    }
}

#[test]
fn diff_shows_both_sides() {
    let d = diff("a\nb\n", "a\nc\nd\n");
    assert_eq!(d, "  -b\n  +c\n  +d\n");
    assert!(diff("x\n", "x\n").is_empty());
}
