mod common;

use common::{corpus, run, Server};

fn path(id: &str) -> String {
    corpus(id).to_string_lossy().into_owned()
}

#[test]
fn check_valid() {
    let r = run(&["check", &path("transitivity")], None);
    assert_eq!((r.code, r.stdout.as_str()), (0, "Valid.\n"));
}

#[test]
fn check_countermodel() {
    let r = run(&["check", &path("countermodel-1")], None);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.lines().next(), Some("Countermodel: v(A)=T, v(B)=F, v(C)=F"));
}

#[test]
fn check_fresh_variable_violation() {
    let r = run(&["check", &path("fresh-variable-error")], None);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("line 4: [NOT_FRESH]"));
    assert!(r.stdout.contains("not a new variable (see line 3)"));
}

#[test]
fn check_incomplete_and_stdin() {
    let text = std::fs::read_to_string(corpus("transitivity-incomplete")).unwrap();
    let r = run(&["check"], Some(&text));
    assert_eq!(r.code, 1);
    assert!(r.stdout.starts_with("Incomplete."));
    assert!(r.stdout.contains("lines 7-7"));
    let r = run(&["check", "-"], Some(&text));
    assert_eq!(r.code, 1);
}

#[test]
fn parse_errors_exit_2() {
    let r = run(&["check"], Some("T A pre\nF A& conclusion"));
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 2, column 4"));
    let r = run(&["check", "--json"], Some("T A pre\nF A& conclusion"));
    assert_eq!(r.code, 2);
    assert!(r.stdout.contains("\"parse_error\""));
    let r = run(&["latex"], Some("garbage((("));
    assert_eq!(r.code, 2);
}

#[test]
fn usage_and_io_errors_exit_3() {
    assert_eq!(run(&["check", "--bogus"], None).code, 3);
    assert_eq!(run(&["check", "/nonexistent/proof.txt"], None).code, 3);
    assert_eq!(run(&["check", "--expect", "maybe", &path("identity")], None).code, 3);
    assert_eq!(run(&["frobnicate"], None).code, 3);
    assert_eq!(run(&["--help"], None).code, 0);
}

#[test]
fn json_is_stable() {
    let a = run(&["check", "--json", "--latex", &path("countermodel-2")], None);
    let b = run(&["check", "--json", "--latex", &path("countermodel-2")], None);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["countermodel"], serde_json::json!({"A": "T", "C": "F"}));
    assert!(v["latex"].as_str().unwrap().contains("\\Tree"));
}

#[test]
fn grading_mode() {
    let p = path("transitivity");
    assert_eq!(run(&["check", "--expect", "valid", "--sequent", "A->B, B->C, A |- C", &p], None).code, 0);
    assert_eq!(run(&["check", "--sequent", "A |- C", &p], None).code, 1);
    assert_eq!(run(&["check", "--expect", "countermodel", &p], None).code, 1);
    let r = run(&["check", "--json", "--expect", "valid", &p], None);
    assert!(r.stdout.contains("\"grade_ok\": true"));
    assert_eq!(run(&["check", "--expect", "countermodel", &path("countermodel-1")], None).code, 0);
}

#[test]
fn latex_command() {
    let r = run(&["latex", &path("transitivity")], None);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.matches("$\\times$").count(), 3);
    let r = run(&["latex", &path("transitivity-incomplete")], None);
    assert!(r.stdout.contains("\\color{red}"));
}

#[test]
fn prove_command() {
    let r = run(&["prove", "--sequent", "A->B, B->C, A |- C"], None);
    assert_eq!(r.code, 0);
    let check = run(&["check"], Some(&r.stdout));
    assert_eq!((check.code, check.stdout.as_str()), (0, "Valid.\n"));
    let r = run(&["prove", "--sequent", "A, A&B->C |- C"], None);
    assert_eq!((r.code, r.stdout.as_str()), (0, "Countermodel: v(A)=T, v(B)=F, v(C)=F\n"));
    let r = run(&["prove", "--sequent", "Ax H(x) |- H(a)"], None);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("not propositional"));
}

#[tokio::test]
async fn serve_end_to_end() {
    let server = Server::start();
    let client = reqwest::Client::new();
    let health = client.get(server.url("/health")).send().await.unwrap();
    assert_eq!(health.status(), 200);
    let body = serde_json::json!({"proof": std::fs::read_to_string(corpus("transitivity")).unwrap()});
    let res = client.post(server.url("/check")).body(body.to_string()).send().await.unwrap();
    let v: serde_json::Value = serde_json::from_str(&res.text().await.unwrap()).unwrap();
    assert_eq!(v["verdict"], "valid");

    let port = server.base.rsplit(':').next().unwrap();
    let r = run(&["serve", "--port", port], None);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("cannot bind"));
}
