use std::collections::BTreeSet;
use std::process::{Command, Output};

use serde_json::Value;

fn krc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_krc"))
        .args(args)
        .output()
        .expect("krc runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

/// Parser for the part of the DOT language a crystal graph can use:
///
/// ```text
/// graph     : [strict] (graph | digraph) [ID] '{' stmt_list '}'
/// stmt_list : (stmt [';'])*
/// stmt      : ID '=' ID | attr_stmt | node_id [edge_rhs] [attr_list]
/// attr_stmt : (graph | node | edge) attr_list
/// edge_rhs  : (edgeop node_id)+
/// attr_list : ('[' [a_list] ']')+
/// a_list    : ID '=' ID ([';' | ','] ID '=' ID)*
/// ```
///
/// IDs are alphanumeric words, numerals or double-quoted strings. Returns the
/// node ids and `(from, to, label)` edges.
mod dot {
    #[derive(Debug, Clone, PartialEq)]
    enum Tok {
        Id(String),
        Sym(&'static str),
    }

    fn lex(src: &str) -> Result<Vec<Tok>, String> {
        let chars: Vec<char> = src.chars().collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
            } else if c == '"' {
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err("unterminated string".into()),
                        Some('"') => break,
                        Some('\\') if chars.get(i + 1) == Some(&'"') => {
                            s.push('"');
                            i += 2;
                        }
                        Some(&ch) => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                i += 1;
                out.push(Tok::Id(s));
            } else if c == '-' && matches!(chars.get(i + 1), Some('>') | Some('-')) {
                out.push(Tok::Sym(if chars[i + 1] == '>' { "->" } else { "--" }));
                i += 2;
            } else if c.is_alphanumeric() || c == '_' || c == '.' || c == '-' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '.') {
                    i += 1;
                }
                if i == start {
                    return Err(format!("stray {c:?}"));
                }
                out.push(Tok::Id(chars[start..i].iter().collect()));
            } else {
                let sym = match c {
                    '{' => "{",
                    '}' => "}",
                    '[' => "[",
                    ']' => "]",
                    '=' => "=",
                    ';' => ";",
                    ',' => ",",
                    _ => return Err(format!("unexpected character {c:?}")),
                };
                out.push(Tok::Sym(sym));
                i += 1;
            }
        }
        Ok(out)
    }

    struct Parser {
        toks: Vec<Tok>,
        pos: usize,
        directed: bool,
    }

    #[derive(Debug, Default)]
    pub struct Graph {
        pub nodes: Vec<String>,
        pub edges: Vec<(String, String, Option<String>)>,
    }

    impl Parser {
        fn peek(&self) -> Option<&Tok> {
            self.toks.get(self.pos)
        }

        fn eat(&mut self, sym: &str) -> bool {
            if matches!(self.peek(), Some(Tok::Sym(s)) if *s == sym) {
                self.pos += 1;
                true
            } else {
                false
            }
        }

        fn expect(&mut self, sym: &str) -> Result<(), String> {
            if self.eat(sym) {
                Ok(())
            } else {
                Err(format!(
                    "expected {sym:?} at token {}, found {:?}",
                    self.pos,
                    self.peek()
                ))
            }
        }

        fn id(&mut self) -> Result<String, String> {
            match self.peek().cloned() {
                Some(Tok::Id(s)) => {
                    self.pos += 1;
                    Ok(s)
                }
                other => Err(format!("expected an ID at token {}, found {other:?}", self.pos)),
            }
        }

        fn keyword(&mut self, word: &str) -> bool {
            if matches!(self.peek(), Some(Tok::Id(s)) if s.eq_ignore_ascii_case(word)) {
                self.pos += 1;
                true
            } else {
                false
            }
        }

        fn attr_list(&mut self) -> Result<Vec<(String, String)>, String> {
            let mut attrs = Vec::new();
            while self.eat("[") {
                while !self.eat("]") {
                    let key = self.id()?;
                    self.expect("=")?;
                    attrs.push((key, self.id()?));
                    if !self.eat(",") {
                        self.eat(";");
                    }
                }
            }
            Ok(attrs)
        }

        fn stmt(&mut self, g: &mut Graph) -> Result<(), String> {
            if self.keyword("graph") || self.keyword("node") || self.keyword("edge") {
                self.attr_list()?;
                return Ok(());
            }
            let first = self.id()?;
            if self.eat("=") {
                self.id()?;
                return Ok(());
            }
            let mut chain = vec![first];
            loop {
                let op = if self.directed { "->" } else { "--" };
                if self.eat(op) {
                    chain.push(self.id()?);
                } else if matches!(self.peek(), Some(Tok::Sym("->")) | Some(Tok::Sym("--"))) {
                    return Err("edge operator does not match graph kind".into());
                } else {
                    break;
                }
            }
            let attrs = self.attr_list()?;
            let label = attrs.into_iter().find(|(k, _)| k == "label").map(|(_, v)| v);
            if chain.len() == 1 {
                g.nodes.push(chain.pop().unwrap());
            } else {
                for w in chain.windows(2) {
                    g.edges.push((w[0].clone(), w[1].clone(), label.clone()));
                }
            }
            Ok(())
        }
    }

    pub fn parse(src: &str) -> Result<Graph, String> {
        let mut p = Parser {
            toks: lex(src)?,
            pos: 0,
            directed: false,
        };
        p.keyword("strict");
        if p.keyword("digraph") {
            p.directed = true;
        } else if !p.keyword("graph") {
            return Err("expected graph or digraph".into());
        }
        if matches!(p.peek(), Some(Tok::Id(_))) {
            p.id()?;
        }
        p.expect("{")?;
        let mut g = Graph::default();
        while !p.eat("}") {
            p.stmt(&mut g)?;
            p.eat(";");
        }
        if p.pos != p.toks.len() {
            return Err("trailing input after graph".into());
        }
        Ok(g)
    }
}

#[test]
fn dot_parser_rejects_garbage() {
    assert!(dot::parse("digraph { a -> }").is_err());
    assert!(dot::parse("digraph { a -- b }").is_err());
    assert!(dot::parse("digraph g { a [label=\"x\"] ").is_err());
    assert!(dot::parse("digraph g { a -> b -> c [label=1]; }").unwrap().edges.len() == 2);
}

#[test]
fn tensor_graph_matches_rank_one_figure() {
    let out = krc(&[
        "graph", "--n", "1", "--r", "1", "--s", "3", "--tensor", "1,1,1", "--format", "dot",
    ]);
    assert!(out.status.success());
    let g = dot::parse(&stdout(&out)).expect("valid DOT");
    let label: std::collections::HashMap<String, String> = {
        let text = stdout(&out);
        let ids = g.nodes.clone();
        // Node statements carry the element as their label.
        ids.into_iter()
            .map(|id| {
                let needle = format!("  {id} [label=\"");
                let start = text.find(&needle).unwrap() + needle.len();
                let end = start + text[start..].find('"').unwrap();
                (id, text[start..end].to_string())
            })
            .collect()
    };
    let edges: BTreeSet<(String, String, String)> = g
        .edges
        .iter()
        .map(|(u, v, l)| (label[u].clone(), l.clone().unwrap(), label[v].clone()))
        .collect();
    let expected: BTreeSet<(String, String, String)> = [
        ("0⊗0", "1", "0⊗1"),
        ("0⊗1", "1", "0⊗2"),
        ("0⊗2", "1", "0⊗3"),
        ("0⊗3", "1", "1⊗3"),
        ("1⊗0", "1", "1⊗1"),
        ("1⊗1", "1", "1⊗2"),
        ("1⊗3", "0", "1⊗2"),
        ("1⊗2", "0", "1⊗1"),
        ("1⊗1", "0", "1⊗0"),
        ("1⊗0", "0", "0⊗0"),
        ("0⊗3", "0", "0⊗2"),
        ("0⊗2", "0", "0⊗1"),
    ]
    .into_iter()
    .map(|(a, l, b)| (a.to_string(), l.to_string(), b.to_string()))
    .collect();
    assert_eq!(g.nodes.len(), 8);
    assert_eq!(g.edges.len(), 12);
    assert_eq!(edges, expected);
}

#[test]
fn dot_is_valid_for_larger_crystals() {
    for args in [
        &["graph", "--n", "3", "--r", "2", "--s", "2"][..],
        &["graph", "--factor", "2,1,1", "--factor", "2,2,1", "--factor", "2,1,2"][..],
    ] {
        let out = krc(args);
        assert!(out.status.success());
        let g = dot::parse(&stdout(&out)).expect("valid DOT");
        assert!(!g.nodes.is_empty() && !g.edges.is_empty());
    }
}

#[test]
fn graph_json_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let out = krc(&[
        "graph",
        "--n",
        "2",
        "--r",
        "1",
        "--s",
        "1",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 3);
    // B^{1,1} of A_2^(1) is a 3-cycle in colors 0, 1, 2.
    assert_eq!(v["edges"].as_array().unwrap().len(), 3);
}

#[test]
fn energy_suite_passes() {
    let out = krc(&["verify", "--suite", "energy", "--n", "2", "--max-s", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).starts_with("PASS energy"));
}

#[test]
fn enumerate_three_element_crystal() {
    let out = krc(&["enumerate", "--n", "2", "--r", "1", "--s", "1"]);
    assert!(out.status.success());
    let v: Vec<Value> = serde_json::from_slice(&out.stdout).unwrap();
    let rows: Vec<Value> = v.iter().map(|p| p["rows"].clone()).collect();
    assert_eq!(
        rows,
        vec![
            serde_json::json!([[0], [0]]),
            serde_json::json!([[0], [1]]),
            serde_json::json!([[1], [0]])
        ]
    );

    let text = krc(&["enumerate", "--n", "2", "--r", "1", "--s", "1", "--format", "text"]);
    assert_eq!(stdout(&text), "0/0\n0/1\n1/0\n");
}

#[test]
fn exit_codes() {
    assert_eq!(
        krc(&["enumerate", "--n", "4", "--r", "2", "--s", "3", "--limit", "10"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        krc(&["graph", "--n", "3", "--r", "2", "--s", "3", "--limit", "5"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        krc(&["enumerate", "--n", "2", "--r", "3", "--s", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(krc(&["enumerate", "--n", "2"]).status.code(), Some(2));
    assert_eq!(krc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(krc(&["graph", "--factor", "2,1"]).status.code(), Some(2));
    assert_eq!(krc(&["verify", "--suite", "nope", "--n", "2"]).status.code(), Some(2));
    assert_eq!(krc(&["rmatrix", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(krc(&["gsp", "--weight", "1,0,1", "--r", "3"]).status.code(), Some(2));
}

#[test]
fn rmatrix_rank_one_middle_case() {
    // s1 = 1 < A + B = 3 <= s2 = 3: image is (2A - s1 + B) ⊗ (s1 - A).
    let a = r#"{"n":1,"r":1,"s":1,"rows":[[1]]}"#;
    let b = r#"{"n":1,"r":1,"s":3,"rows":[[2]]}"#;
    let out = krc(&["rmatrix", a, b]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["factors"][0]["rows"], serde_json::json!([[3]]));
    assert_eq!(v["factors"][0]["s"], 3);
    assert_eq!(v["factors"][1]["rows"], serde_json::json!([[0]]));

    // The same pair given as one tensor from a file.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json");
    std::fs::write(&path, format!("{{\"factors\":[{a},{b}]}}")).unwrap();
    let from_file = krc(&["rmatrix", path.to_str().unwrap()]);
    assert_eq!(from_file.stdout, out.stdout);

    assert_eq!(krc(&["rmatrix", a]).status.code(), Some(2));
}

#[test]
fn energy_closed_form_and_oracle_agree() {
    let x = r#"{"factors":[{"n":2,"r":1,"s":1,"rows":[[1],[0]]},{"n":2,"r":2,"s":2,"rows":[[1,1]]},{"n":2,"r":1,"s":2,"rows":[[0],[2]]}]}"#;
    let out = krc(&["energy", "--both", x]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["agree"], true);
    assert_eq!(v["closed_form"], v["oracle"]);
    assert_eq!(krc(&["energy", x, "--oracle", "--closed-form"]).status.code(), Some(2));
}

#[test]
fn perfect_and_gsp() {
    let out = krc(&["perfect", "--n", "2", "--r", "1", "--s", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["perfect"], true);
    assert_eq!(v["report"]["conditions"].as_array().unwrap().len(), 5);

    // r = n: b_k is the row Λ_k[0..n] and the weights rotate with period n + 1.
    let out = krc(&["gsp", "--weight", "1,0,1", "--r", "2", "--len", "4"]);
    assert!(out.status.success());
    let v: Vec<Value> = serde_json::from_slice(&out.stdout).unwrap();
    let rows: Vec<Value> = v.iter().map(|p| p["rows"].clone()).collect();
    assert_eq!(
        rows,
        vec![
            serde_json::json!([[1, 0]]),
            serde_json::json!([[1, 1]]),
            serde_json::json!([[0, 1]]),
            serde_json::json!([[1, 0]])
        ]
    );
}

#[test]
fn output_is_deterministic() {
    for args in [
        &[
            "graph", "--factor", "2,1,2", "--n", "2", "--r", "2", "--s", "1", "--format", "json",
        ][..],
        &["graph", "--n", "3", "--r", "2", "--s", "1"][..],
        &["enumerate", "--n", "3", "--r", "2", "--s", "2"][..],
        &["verify", "--suite", "census", "--n", "2", "--max-s", "2"][..],
    ] {
        let first = krc(args);
        assert!(first.status.success());
        for _ in 0..3 {
            assert_eq!(krc(args).stdout, first.stdout);
        }
    }
}
