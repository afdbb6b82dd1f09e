use std::path::Path;
use std::process::{Command, Output};

fn domino(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domino"))
        .args(args)
        .env_remove("DOMINO_CAP_OVERRIDE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_then_solve_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p9.txt");
    let g = domino(&["generate", "--family", "path", "--params", "n=9", "--out", path_str(&file)]);
    assert!(g.status.success());
    let s = domino(&["solve", "--instance", path_str(&file), "--variant", "cds", "--baseline", "off"]);
    assert!(s.status.success());
    assert!(stdout(&s).contains("size: 7"), "{}", stdout(&s));
}

#[test]
fn run_config_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.cfg");
    std::fs::write(
        &cfg,
        "random = connected:n=4..9,count=8\nfamily = rotor:delta=4\nvariant = ds\nvariant = tds\n\
         algorithm = first-parent\nalgorithm = opt-inc\nseed = 5\n",
    )
    .unwrap();
    let a = domino(&["run", "--config", path_str(&cfg)]);
    let b = domino(&["run", "--config", path_str(&cfg)]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("instance,variant,algorithm,alg_size,opt_inc,opt_off,ratio_inc,ratio_off,n,delta,notes\n"));
    assert!(text.contains("random-connected-s5-"));
    assert_eq!(text.lines().count(), 1 + (8 + 1) * 2 * 2);
}

#[test]
fn exit_codes() {
    let bad = domino(&["run", "--family", "rotor", "--params", "delta=3"]);
    assert_eq!(bad.status.code(), Some(2));
    let unknown = domino(&["verify", "--suite", "nope"]);
    assert_eq!(unknown.status.code(), Some(2));
    let ok = domino(&["verify", "--suite", "ids-uniqueness", "--pool", "20"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    let not_dominating = domino(&["transform", "--kind", "connectify", "--family", "path", "--params", "n=5", "--set", "1"]);
    assert_eq!(not_dominating.status.code(), Some(1));
    let clap_error = domino(&["solve", "--variant", "xyz"]);
    assert_eq!(clap_error.status.code(), Some(2));
}

#[test]
fn cap_override_environment() {
    let plain = domino(&["solve", "--family", "path", "--params", "n=16", "--baseline", "inc"]);
    assert_eq!(plain.status.code(), Some(2));
    let raised = Command::new(env!("CARGO_BIN_EXE_domino"))
        .args(["solve", "--family", "path", "--params", "n=16", "--baseline", "inc"])
        .env("DOMINO_CAP_OVERRIDE", "16")
        .output()
        .unwrap();
    assert!(raised.status.success());
    assert!(stdout(&raised).contains("size: 8"));
}

#[test]
fn duel_and_sweep() {
    let d = domino(&["duel", "--adversary", "two-layer", "--delta", "5", "--algorithm", "first-parent", "--solve"]);
    assert!(d.status.success());
    let text = stdout(&d);
    assert!(text.contains("opt_inc: 2"), "{text}");
    let size: usize = text
        .lines()
        .find_map(|l| l.strip_prefix("size: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(size >= 5);

    let s = domino(&[
        "sweep", "--family", "path", "--param", "n", "--values", "4,6,8", "--algorithm", "parent", "--format", "md",
    ]);
    assert!(s.status.success());
    let md = stdout(&s);
    assert!(md.contains("| path-n4 | ds | parent | 3 | 2 | 2 | 1.500 | 1.500 | 4 | 2 |"), "{md}");
    let rows: Vec<&str> = md.lines().skip(2).collect();
    assert!(rows[0].contains("path-n4") && rows[2].contains("path-n8"));
}

#[test]
fn transform_with_chain_syntax() {
    let t = domino(&[
        "transform", "--kind", "inc-connectify", "--family", "path", "--params", "n=8", "--set", "1@1,3@3,5@5,7@7",
    ]);
    assert!(t.status.success());
    let text = stdout(&t);
    assert!(text.contains("output_size: 7") && text.contains("satisfied: true"), "{text}");
}
