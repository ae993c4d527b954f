use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pathlister::generators::{complete, named_graphs, path_graph, tripartite};
use pathlister::graph::{to_edge_list, Graph};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pathlister"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_graph(name: &str, g: &Graph) -> PathBuf {
    let p = scratch(name);
    std::fs::write(&p, to_edge_list(g)).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path_arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn path_examples() {
    let k4 = write_graph("k4.txt", &complete(4));
    let o = run(&["paths", path_arg(&k4), "0", "3", "--count-only"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "5\n");

    let p3 = write_graph("path3.txt", &path_graph(3));
    assert_eq!(stdout(&run(&["paths", path_arg(&p3), "0", "2"])), "0 1 2\n");

    let two = write_graph("two_comps.txt", &Graph::new(4, [(0, 1), (2, 3)]).unwrap());
    assert_eq!(
        stdout(&run(&["paths", path_arg(&two), "0", "3", "--count-only"])),
        "0\n"
    );
}

#[test]
fn cycle_examples() {
    let tri = write_graph("triangle.txt", &complete(3));
    assert_eq!(stdout(&run(&["cycles", path_arg(&tri)])), "0 1 2\n");
    let k4 = write_graph("k4c.txt", &complete(4));
    assert_eq!(stdout(&run(&["cycles", path_arg(&k4), "--count-only"])), "7\n");
}

#[test]
fn johnson_counts_every_tripartite_six_cycle() {
    // 8 triangles plus 55 longer cycles
    let t6 = write_graph("trip6.txt", &tripartite(6).unwrap());
    let o = run(&["cycles", path_arg(&t6), "--count-only", "--algo", "johnson"]);
    assert_eq!(stdout(&o), "63\n");
}

#[test]
fn engines_agree_on_named_graphs() {
    for (name, g) in named_graphs() {
        let f = write_graph(&format!("agree_{name}.txt"), &g);
        let outs: Vec<String> = ["optimal", "johnson", "brute"]
            .iter()
            .map(|a| {
                let o = run(&["cycles", path_arg(&f), "--algo", a]);
                assert!(o.status.success(), "{name} {a}");
                let mut lines: Vec<&str> = stdout(&o).leak().lines().collect();
                lines.sort_unstable();
                lines.join("\n")
            })
            .collect();
        assert_eq!(outs[0], outs[1], "{name}: optimal vs johnson");
        assert_eq!(outs[0], outs[2], "{name}: optimal vs brute");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    for (name, g) in named_graphs() {
        let f = write_graph(&format!("det_{name}.txt"), &g);
        let a = run(&["cycles", path_arg(&f)]);
        let b = run(&["cycles", path_arg(&f)]);
        assert_eq!(a.stdout, b.stdout, "{name}");
        let t = (g.n() - 1).to_string();
        let a = run(&["paths", path_arg(&f), "0", &t]);
        let b = run(&["paths", path_arg(&f), "0", &t]);
        assert_eq!(a.stdout, b.stdout, "{name}");
    }
}

#[test]
fn exit_codes() {
    let bad = scratch("bad.txt");
    std::fs::write(&bad, "3 1\n0 x\n").unwrap();
    assert_eq!(run(&["cycles", path_arg(&bad)]).status.code(), Some(2));
    assert_eq!(run(&["paths", path_arg(&bad), "0", "1"]).status.code(), Some(2));

    let k4 = write_graph("k4e.txt", &complete(4));
    assert_eq!(run(&["paths", path_arg(&k4), "0", "9"]).status.code(), Some(3));
    assert_eq!(run(&["paths", path_arg(&k4), "2", "2"]).status.code(), Some(3));

    let big = write_graph("path20.txt", &path_graph(20));
    assert_eq!(
        run(&["cycles", path_arg(&big), "--algo", "brute"]).status.code(),
        Some(4)
    );

    assert_eq!(run(&["bench", "diamond", "5..2"]).status.code(), Some(2));
    assert_eq!(run(&["bench", "diamond", "a..b"]).status.code(), Some(2));
    assert_eq!(run(&["bench", "tripartite", "4"]).status.code(), Some(2));
}

#[test]
fn stats_go_to_stderr_as_json() {
    let k4 = write_graph("k4s.txt", &complete(4));
    let o = run(&["paths", path_arg(&k4), "0", "3", "--count-only", "--stats"]);
    assert_eq!(stdout(&o), "5\n");
    let v: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    for key in [
        "leaves",
        "unary_nodes",
        "binary_nodes",
        "spines",
        "work_units",
        "output_size",
        "elapsed_ns",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["leaves"], 5);
    assert_eq!(v["binary_nodes"], 4);
}

#[test]
fn output_file_and_generate_roundtrip() {
    let gen = scratch("gen_diamond.txt");
    let o = run(&["generate", "--family", "diamond", "--n", "3", "-o", path_arg(&gen)]);
    assert!(o.status.success());
    let out = scratch("diamond_cycles.txt");
    let o = run(&["cycles", path_arg(&gen), "--output", path_arg(&out)]);
    assert!(o.status.success() && o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 15);

    let a = run(&[
        "generate", "--family", "random", "--n", "12", "--p", "0.4", "--seed", "9",
    ]);
    let b = run(&[
        "generate", "--family", "random", "--n", "12", "--p", "0.4", "--seed", "9",
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("12 "));
}

#[test]
fn bcc_lists_blocks_and_cut_vertices() {
    let bowtie = named_graphs().into_iter().find(|(n, _)| *n == "bowtie").unwrap().1;
    let f = write_graph("bowtie.txt", &bowtie);
    let text = stdout(&run(&["bcc", path_arg(&f)]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[2], "articulation: 2");
}

#[test]
fn bench_csv() {
    let o = run(&["bench", "tripartite", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("family,n,m,eta,total_output,algo,work_units,elapsed_ns,ratio,lemma5_violations,lemma6_violations")
    );
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 11);
        assert_eq!(cols[3], "1");
    }

    let strip = |o: &Output| -> Vec<String> {
        stdout(o)
            .lines()
            .map(|l| {
                let mut c: Vec<&str> = l.split(',').collect();
                c[7] = "";
                c.join(",")
            })
            .collect()
    };
    let a = run(&["bench", "diamond", "1..6"]);
    let b = run(&["bench", "diamond", "1..6"]);
    assert_eq!(strip(&a), strip(&b));
    assert_eq!(strip(&a).len(), 13);
}
