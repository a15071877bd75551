use std::path::Path;
use std::process::{Command, Output};

use sigmalat::report::Record;

fn sigmalat(args: &[&str]) -> Output {
    sigmalat_env(args, None)
}

fn sigmalat_env(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sigmalat"));
    cmd.args(args).env_remove("SIGMALAT_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("SIGMALAT_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(
        o.status.success(),
        "exit {:?}: {}",
        o.status.code(),
        String::from_utf8_lossy(&o.stderr)
    );
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(text: &str) -> Vec<Record> {
    text.lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn write_s4(dir: &Path) -> String {
    let path = dir.join("s4.grp");
    std::fs::write(&path, "degree 4\ngen (1 2 3 4)\ngen (1 2)\n").unwrap();
    path.to_str().unwrap().to_string()
}

const PROPS: &str = "T,PT,PST,PsigmaT,QsigmaT,T_sigma,MT";

#[test]
fn classify_s4_pst() {
    let dir = tempfile::tempdir().unwrap();
    let s4 = write_s4(dir.path());
    let out = stdout(&sigmalat(&[
        "classify",
        "--group",
        &s4,
        "--sigma",
        "sigma1",
        "--properties",
        "PST",
    ]));
    assert_eq!(
        out,
        "{\"group\":\"s4\",\"order\":24,\"sigma\":\"sigma1\",\"property\":\"PST\",\
         \"verdict\":false,\"witness\":[\"(1 2)(3 4)\"],\"details\":{},\"elapsed_ms\":0}\n"
    );
}

#[test]
fn classify_defaults_cover_grid_and_properties() {
    let rs = records(&stdout(&sigmalat(&["classify", "--builtin", "S3"])));
    assert_eq!(rs.len(), 4 * 8);
    let mut sorted = rs.clone();
    sigmalat::report::sort_records(&mut sorted);
    assert_eq!(rs, sorted);
    assert!(rs.iter().all(|r| r.verdict.is_some() && r.order == 6));
}

#[test]
fn lattice_stats_for_s4() {
    let out = stdout(&sigmalat(&["lattice", "--builtin", "S4", "--stats"]));
    let expected = "group: S4\norder: 24\nsubgroups: 30\n\
        subgroups of order 1: 1\nsubgroups of order 2: 9\nsubgroups of order 3: 4\n\
        subgroups of order 4: 7\nsubgroups of order 6: 4\nsubgroups of order 8: 3\n\
        subgroups of order 12: 1\nsubgroups of order 24: 1\n\
        normal subgroups: 4\nfrattini order: 1\n";
    assert_eq!(out, expected);
    let listing = stdout(&sigmalat(&["lattice", "--builtin", "S4"]));
    assert_eq!(listing.lines().count(), 30);
    assert_eq!(listing.matches(" normal:").count(), 4);
}

#[test]
fn residual_and_hall() {
    let out = stdout(&sigmalat(&[
        "residual",
        "--builtin",
        "S4",
        "--formation",
        "nilpotent",
    ]));
    assert!(out.starts_with("order: 12\ngenerators: "), "{out}");
    let out = stdout(&sigmalat(&[
        "residual",
        "--builtin",
        "A5",
        "--formation",
        "soluble",
    ]));
    assert!(out.starts_with("order: 60\n"), "{out}");
    let out = stdout(&sigmalat(&["hall", "--builtin", "S4", "--sigma", "sigma1"]));
    assert!(out.contains("order 8, 3 subgroups"), "{out}");
    assert!(out.contains("order 3, 4 subgroups"), "{out}");
    assert!(out.ends_with("sigma-full: true\n"), "{out}");
}

#[test]
fn check_theorem_reports_conditions() {
    let out = stdout(&sigmalat(&[
        "check-theorem",
        "--builtin",
        "SL(2,3)",
        "--name",
        "psigmat-soluble",
    ]));
    let r = &records(&out)[0];
    assert_eq!(r.property, "psigmat-soluble");
    assert_eq!(r.verdict, Some(false));
    assert!(!r.details["d_abelian"]);
    assert!(!r.details["direct"]);

    let out = stdout(&sigmalat(&[
        "check-theorem",
        "--builtin",
        "SL(2,5)",
        "--name",
        "psigmat-robinson",
    ]));
    let r = &records(&out)[0];
    assert_eq!(r.verdict, Some(true));
    assert!(r.details.values().all(|&v| v), "{:?}", r.details);

    let out = stdout(&sigmalat(&[
        "check-theorem",
        "--builtin",
        "A5",
        "--name",
        "mt-soluble",
    ]));
    let r = &records(&out)[0];
    assert_eq!(r.verdict, None);
    assert!(!r.details["soluble"]);
}

#[test]
fn corpus_is_deterministic_across_workers_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let run = |name: &str, workers: &str, cache: Option<&Path>| {
        let out = dir.path().join(name);
        let o = sigmalat_env(
            &[
                "corpus",
                "--max-order",
                "100",
                "--sigma",
                "sigma1",
                "--sigma",
                "pi:[2,3]",
                "--properties",
                PROPS,
                "--workers",
                workers,
                "--out",
                out.to_str().unwrap(),
            ],
            cache,
        );
        stdout(&o);
        std::fs::read(out).unwrap()
    };
    let a = run("a.jsonl", "1", None);
    let b = run("b.jsonl", "4", Some(&cache));
    assert!(
        cache.read_dir().unwrap().next().is_some(),
        "cache was not populated"
    );
    let c = run("c.jsonl", "2", Some(&cache));
    assert_eq!(a, b);
    assert_eq!(a, c);
    let rs = records(std::str::from_utf8(&a).unwrap());
    assert_eq!(rs.len() % 14, 0);
    assert!(rs.iter().all(|r| r.order <= 100 && r.elapsed_ms == 0));

    let path = dir.path().join("a.jsonl");
    let p = path.to_str().unwrap();
    let o = sigmalat(&["report-diff", p, p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
}

#[test]
fn report_diff_flags_changes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    let text = stdout(&sigmalat(&[
        "classify",
        "--builtin",
        "S3",
        "--sigma",
        "sigma1",
    ]));
    std::fs::write(&a, &text).unwrap();
    std::fs::write(
        &b,
        text.replacen("\"verdict\":true", "\"verdict\":false", 1),
    )
    .unwrap();
    let o = sigmalat(&["report-diff", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = String::from_utf8(o.stdout).unwrap();
    assert_eq!(out.lines().count(), 1);
    assert!(out.starts_with("changed: S3 sigma1 "), "{out}");

    std::fs::write(&b, "not json\n").unwrap();
    let o = sigmalat(&["report-diff", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| sigmalat(args).status.code();
    assert_eq!(
        code(&["classify", "--builtin", "S3", "--properties", "XT"]),
        Some(2)
    );
    assert_eq!(
        code(&["classify", "--builtin", "S3", "--sigma", "pi:[4]"]),
        Some(2)
    );
    assert_eq!(code(&["classify", "--builtin", "NoSuchGroup"]), Some(2));
    assert_eq!(
        code(&["classify", "--group", "/nonexistent/g.grp"]),
        Some(5)
    );
    assert_eq!(
        code(&[
            "--element-cap",
            "50",
            "classify",
            "--builtin",
            "S5",
            "--properties",
            "T"
        ]),
        Some(3)
    );
    assert_eq!(
        code(&[
            "--lattice-cap",
            "10",
            "classify",
            "--builtin",
            "S4",
            "--properties",
            "T"
        ]),
        Some(3)
    );
}

#[test]
fn corpus_marks_capped_groups() {
    let out = stdout(&sigmalat(&[
        "--element-cap",
        "100",
        "corpus",
        "--max-order",
        "120",
        "--sigma",
        "sigma1",
        "--properties",
        "T",
    ]));
    let rs = records(&out);
    let s5 = rs.iter().find(|r| r.group == "S5").unwrap();
    assert_eq!(s5.verdict, None);
    assert!(s5.details["cap_exceeded"]);
    let s4 = rs.iter().find(|r| r.group == "S4").unwrap();
    assert_eq!(s4.verdict, Some(false));
}

#[test]
fn checkers_extend_details() {
    let out = stdout(&sigmalat(&[
        "classify",
        "--builtin",
        "S3",
        "--sigma",
        "sigma1",
        "--properties",
        "MT",
        "--with-checkers",
    ]));
    let r = &records(&out)[0];
    assert_eq!(r.details.get("mt-soluble"), Some(&true));
    assert_eq!(r.details.get("mt-robinson"), Some(&true));
    assert_eq!(r.details.len(), 2);
}
