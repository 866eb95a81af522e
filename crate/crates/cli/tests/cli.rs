use std::process::{Command, Output};

fn khovanov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_khovanov")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn enumerate_lists_the_block_in_order() {
    let o = khovanov(&["enumerate", "--block", "vv^^"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0], "vv^^");
}

#[test]
fn multiply_prints_the_product() {
    let o = khovanov(&["multiply", "--block", "^v", "--x", "(1,2)|^v|", "--y", "|^v|(1,2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "+1·((1,2)|^v|(1,2))\n");
    let o = khovanov(&["multiply", "--block", "^v", "--x", "(1,2)|^v|", "--y", "|^v|(1,2)", "--method", "closure"]);
    assert_eq!(stdout(&o), "+1·((1,2)|^v|(1,2))\n");
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(khovanov(&["multiply", "--block", "^v", "--x", "junk", "--y", "|^v|"]).status.code(), Some(2));
    assert_eq!(khovanov(&["multiply", "--block", "vv^^", "--x", "|^v|", "--y", "|^v|"]).status.code(), Some(2));
    assert_eq!(khovanov(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(khovanov(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(khovanov(&["enumerate", "--block", "v?"]).status.code(), Some(2));
}

#[test]
fn verify_all_passes_and_prints_the_seed() {
    let o = khovanov(&["verify", "--suite", "all", "--max-vertices", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.starts_with("seed: 0\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 7);
}

#[test]
fn decomposition_csv_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.csv");
    let o = khovanov(&["decomp", "--block", "vv^^", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read_to_string(&path).unwrap();
    let expected = ",vv^^,v^v^,^vv^,v^^v,^v^v,^^vv\n\
                    vv^^,1,q,0,0,q,q^2\n\
                    v^v^,0,1,q,q,q^2,0\n\
                    ^vv^,0,0,1,0,q,0\n\
                    v^^v,0,0,0,1,q,0\n\
                    ^v^v,0,0,0,0,1,q\n\
                    ^^vv,0,0,0,0,0,1\n";
    assert_eq!(written, expected);
    let again = khovanov(&["decomp", "--block", "vv^^"]);
    assert_eq!(stdout(&again), expected);
}

#[test]
fn cartan_csv_of_the_smallest_block() {
    let o = khovanov(&["cartan", "--block", "^v"]);
    assert_eq!(stdout(&o), ",v^,^v\nv^,1+q^2,q\n^v,q,1\n");
}

#[test]
fn module_data() {
    let o = khovanov(&["cellmod", "--block", "vv^^", "--mu", "^v^v"]);
    assert!(stdout(&o).ends_with("dim_q = 1+3q+q^2\n"));
    let o = khovanov(&["filtration", "--block", "v^", "--lambda", "v^"]);
    assert_eq!(stdout(&o), "V(^v)<1>\nV(v^)<0>\ndim_q = 1+q+q^2\n");
    let o = khovanov(&["basis", "--block", "vv^^", "--algebra", "h"]);
    assert_eq!(stdout(&o).lines().count(), 13);
}

#[test]
fn render_draws_rays_and_cups() {
    let o = khovanov(&["render", "--x", "(1,2)|^v|"]);
    assert_eq!(stdout(&o), "(1,2)|^v|\n│ │\n^ v\n└─┘\n");
    let o = khovanov(&["render", "--x", "2·((1,2)|v^|(1,2))"]);
    assert!(stdout(&o).starts_with("+2·\n"));
}
