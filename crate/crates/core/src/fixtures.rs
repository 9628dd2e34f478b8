//! The bundled example corpus. Each fixture is a program whose `%$` comment
//! lines are CLI queries; its golden file holds the expected transcript.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io;
use std::path::Path;

use crate::cli::{run_with, Files};

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub program: String,
    pub golden: String,
}

macro_rules! bundle {
    ($($name:literal),* $(,)?) => {
        &[$((
            $name,
            include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/", $name, ".dlp")),
            include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/", $name, ".golden")),
        )),*]
    };
}

const BUNDLED: &[(&str, &str, &str)] = bundle!(
    "surf",
    "running",
    "running_c4",
    "married_john",
    "crossover",
    "last_link_closure",
    "tandem",
    "dlp_rebut_closure",
    "blocking_then_proper_a",
    "blocking_then_proper_b",
    "subargument_block",
    "non_admissible_warrant",
    "interfering_concordance",
);

pub fn bundled() -> Vec<Fixture> {
    BUNDLED
        .iter()
        .map(|(n, p, g)| Fixture {
            name: n.to_string(),
            program: p.to_string(),
            golden: g.to_string(),
        })
        .collect()
}

pub fn get(name: &str) -> Option<Fixture> {
    bundled().into_iter().find(|f| f.name == name)
}

/// Every `.dlp` file in `dir` that carries queries; a missing golden reads as empty.
pub fn load_dir(dir: &str) -> io::Result<Vec<Fixture>> {
    let mut out = Vec::new();
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "dlp"))
        .collect();
    paths.sort();
    for path in paths {
        let program = std::fs::read_to_string(&path)?;
        let name = path.file_stem().unwrap().to_string_lossy().into_owned();
        let fx = Fixture {
            golden: std::fs::read_to_string(Path::new(dir).join(format!("{name}.golden")))
                .unwrap_or_default(),
            name,
            program,
        };
        if !fx.queries().is_empty() {
            out.push(fx);
        }
    }
    Ok(out)
}

struct Memory(BTreeMap<String, String>);

impl Files for Memory {
    fn read(&self, path: &str) -> io::Result<String> {
        self.0
            .get(path)
            .cloned()
            .ok_or_else(|| io::Error::new(io::ErrorKind::NotFound, "no such fixture"))
    }
}

impl Fixture {
    pub fn file_name(&self) -> String {
        format!("{}.dlp", self.name)
    }

    /// Query lines, each as the words following the verb's file argument.
    pub fn queries(&self) -> Vec<Vec<String>> {
        self.program
            .lines()
            .filter_map(|l| l.trim().strip_prefix("%$"))
            .map(|q| q.split_whitespace().map(str::to_string).collect::<Vec<_>>())
            .filter(|q| !q.is_empty())
            .collect()
    }

    /// The transcript of every query: the command, its output and any failure.
    pub fn run(&self, budget: usize) -> String {
        let file = self.file_name();
        let files = Memory(BTreeMap::from([(file.clone(), self.program.clone())]));
        let budget = budget.to_string();
        let mut out = String::new();
        for q in self.queries() {
            let mut argv = vec!["argeo".to_string(), q[0].clone(), file.clone()];
            argv.extend(q[1..].iter().cloned());
            let _ = writeln!(out, "$ {}", argv[1..].join(" "));
            let r = run_with(&argv, &files, Some(&budget));
            out.push_str(&r.stdout);
            if r.code != 0 {
                let _ = writeln!(out, "[exit {}] {}", r.code, r.stderr.trim_end());
            }
        }
        out
    }
}

/// Line-by-line difference, enough to spot what changed.
pub fn diff(want: &str, got: &str) -> String {
    let (w, g): (Vec<&str>, Vec<&str>) = (want.lines().collect(), got.lines().collect());
    let mut out = String::new();
    for i in 0..w.len().max(g.len()) {
        match (w.get(i), g.get(i)) {
            (Some(a), Some(b)) if a == b => {}
            (a, b) => {
                if let Some(a) = a {
                    let _ = writeln!(out, "  -{a}");
                }
                if let Some(b) = b {
                    let _ = writeln!(out, "  +{b}");
                }
            }
        }
    }
    out
}
