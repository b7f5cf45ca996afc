use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> String {
    format!("{}/corpus/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn qflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qflow")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn rows(table: &str) -> Vec<(usize, u64)> {
    table
        .lines()
        .skip(1)
        .map(|l| {
            let mut it = l.split_whitespace().map(|x| x.parse::<u64>().unwrap());
            (it.next().unwrap() as usize, it.next().unwrap())
        })
        .collect()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qflow-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn analyze_exit_codes_follow_the_verdict() {
    let relay = qflow(&["analyze", &corpus("relay.t")]);
    assert_eq!(relay.status.code(), Some(2));
    assert!(stdout(&relay).starts_with("verdict: linear flow"));

    let interrupt = qflow(&["analyze", &corpus("interrupt.t"), "--format", "records"]);
    assert_eq!(interrupt.status.code(), Some(0));
    let out = stdout(&interrupt);
    assert!(out.starts_with("format: 1\nkind: capacity\n"));
    assert!(out.contains("verdict: logarithmic\norder: 2\n"));
    assert!(out.contains("fit: pass"));
    assert!(out.contains("width: 20 56\n"));
}

#[test]
fn width_table_for_relay() {
    let o = qflow(&["width", &corpus("relay.t"), "--n-max", "8", "--format", "records"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "format: 1\nkind: width\nwidth: 2 2\nwidth: 4 4\nwidth: 6 8\nwidth: 8 16\n");
}

#[test]
fn empty_language_has_zero_width() {
    let o = qflow(&["width", &corpus("empty.nfa"), "--n-max", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<String> = stdout(&o).lines().skip(1).map(str::to_owned).collect();
    assert_eq!(rows, ["0  0", "1  0", "2  0", "3  0"]);
}

#[test]
fn reduce_output_parses_back() {
    let o = qflow(&["reduce", &corpus("interrupt.t")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let a = qflow::nfa::parse_nfa(&text).unwrap();
    assert_eq!(a.to_text(), text);
    assert_eq!(a.state_count(), 8);

    // the NFA table lists every length; the transducer table only even ones from 2
    let path = scratch("interrupt.nfa", &text);
    let via_nfa = rows(&stdout(&qflow(&["width", path.to_str().unwrap(), "--n-max", "12"])));
    let direct = rows(&stdout(&qflow(&["width", &corpus("interrupt.t"), "--n-max", "12"])));
    let even: Vec<(usize, u64)> = via_nfa.into_iter().filter(|&(n, _)| n > 0 && n % 2 == 0).collect();
    assert_eq!(even, direct);
}

#[test]
fn interrupt_widths_grow_quadratically() {
    let out = stdout(&qflow(&["width", &corpus("interrupt.t"), "--n-max", "8", "--format", "records"]));
    let w: Vec<u64> = out.lines().filter_map(|l| l.strip_prefix("width: ")).map(|l| l.split(' ').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(w.len(), 4);
    assert!(w.windows(2).all(|p| p[0] < p[1]), "{w:?}");
    // doubling n from 4 to 8 multiplies a quadratic by about 4
    let ratio = w[3] as f64 / w[1] as f64;
    assert!((2.0..=8.0).contains(&ratio), "{ratio}");
}

#[test]
fn oracle_agrees_on_the_corpus() {
    for name in ["relay.t", "interrupt.t", "switch.t", "parity.t"] {
        let o = qflow(&["oracle", &corpus(name), "--k", "2"]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
        assert!(stdout(&o).ends_with("equal\n"));
    }
}

#[test]
fn leakage_of_identity_channel_is_two_bits() {
    let mut src = String::from("channel\ninputs: a b c d\noutputs: w x y z\n");
    for (i, x) in ["a", "b", "c", "d"].iter().enumerate() {
        let row: Vec<&str> = (0..4).map(|j| if i == j { "1" } else { "0" }).collect();
        src.push_str(&format!("row {x}: {}\n", row.join(" ")));
    }
    let path = scratch("identity.ch", &src);
    let o = qflow(&["leakage", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "capacity bits: 2.000000\n");

    let flat = scratch("flat.ch", "channel\ninputs: a b\noutputs: y z\nrow a: 1/3 2/3\nrow b: 1/3 2/3\n");
    assert_eq!(stdout(&qflow(&["leakage", flat.to_str().unwrap()])), "capacity bits: 0.000000\n");
}

#[test]
fn leakage_of_interactive_and_joint_files() {
    let ich = "ichannel\ninputs: a0 a1\nbob_inputs: b1 b2\noutputs: y0 y1\n\
               row a0 b1: 1 0\nrow a1 b1: 0 1\nrow a0 b2: 1 0\nrow a1 b2: 1 0\n";
    let path = scratch("slices.ich", ich);
    let out = stdout(&qflow(&["leakage", path.to_str().unwrap(), "--format", "records"]));
    assert!(out.contains("capacity_bits: 1.000000\n"));
    assert!(out.contains("bob_witness: b1\n"));
    assert!(out.contains("max_outputs: 2\n"));

    let joint = "joint\ninputs: x0 x1\noutputs: y0 y1\nrow x0: 1/2 0\nrow x1: 1/4 1/4\n";
    let path = scratch("small.joint", joint);
    let out = stdout(&qflow(&["leakage", path.to_str().unwrap()]));
    // max_x p(y0|x) + max_x p(y1|x) = 1 + 1/2
    assert!(out.contains("dalenius bits: 0.584963\n"), "{out}");
}

#[test]
fn error_exit_codes() {
    let missing = qflow(&["analyze", "/nonexistent/file.t"]);
    assert_eq!(missing.status.code(), Some(1));

    let bad = scratch("bad.t", "transducer\nstates: q0\n");
    let o = qflow(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.t") && err.contains("line "), "{err}");

    let budget = qflow(&["width", &corpus("relay.t"), "--budget-states", "1"]);
    assert_eq!(budget.status.code(), Some(3));

    assert_eq!(qflow(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(qflow(&["width", &corpus("relay.t"), "--budget-states", "0"]).status.code(), Some(1));
    assert_eq!(qflow(&["--help"]).status.code(), Some(0));
}

#[test]
fn crosscheck_is_reproducible() {
    let a = qflow(&["crosscheck", "--count", "10", "--seed", "11", "--k", "2"]);
    let b = qflow(&["crosscheck", "--count", "10", "--seed", "11", "--k", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).ends_with("10 of 10 agree\n"));
}
