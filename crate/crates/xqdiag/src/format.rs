//! Text formats.
//!
//! * `.xq` graphs: a header line `xq <n>` followed by `2^n` lines
//!   `<id>: <nbr_1> ... <nbr_n>` in ascending id order.
//! * Traces: one `round<TAB>tester<TAB>testee<TAB>result` line per test.
//! * Verdict blocks: one `node<TAB>faulty|fault-free` line per node.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;
use xqdiag_core::graph::Violation;
use xqdiag_core::{validate_xq, AdversaryPolicy, HLGraph, Network, Node, NodeSet, Status, Syndrome, TestRecord};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("graph violates the XQ structure: {0}")]
    Invalid(Violation),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Serializes `g` in `.xq` form. The output is byte-stable.
pub fn write_xq(g: &HLGraph) -> String {
    let mut out = String::new();
    writeln!(out, "xq {}", g.dimension()).unwrap();
    for v in 0..g.node_count() as Node {
        write!(out, "{v}:").unwrap();
        for w in g.neighbors(v) {
            write!(out, " {w}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Parses the neighbor table without running the structural validator.
pub fn parse_xq_unvalidated(text: &str) -> Result<HLGraph, FormatError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| syntax(1, "empty file"))?;
    let n: u32 = header
        .strip_prefix("xq ")
        .and_then(|rest| rest.trim().parse().ok())
        .ok_or_else(|| syntax(1, format!("expected `xq <n>`, found {header:?}")))?;
    if !(1..=HLGraph::MAX_DIMENSION).contains(&n) {
        return Err(syntax(1, format!("dimension {n} is outside 1..={}", HLGraph::MAX_DIMENSION)));
    }
    let count = 1usize << n;
    let mut table = Vec::with_capacity(count * n as usize);
    let mut next_id = 0usize;
    for (line_no, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let (id, rest) = line
            .split_once(':')
            .ok_or_else(|| syntax(line_no, "expected `<id>: <neighbors>`"))?;
        let id: usize = id
            .trim()
            .parse()
            .map_err(|_| syntax(line_no, format!("bad node id {id:?}")))?;
        if id < next_id {
            return Err(syntax(line_no, format!("duplicate or out-of-order node id {id}")));
        }
        if id != next_id {
            return Err(syntax(line_no, format!("expected node id {next_id}, found {id}")));
        }
        if id >= count {
            return Err(syntax(line_no, format!("node id {id} out of range for n = {n}")));
        }
        let before = table.len();
        for tok in rest.split_whitespace() {
            let w: usize = tok
                .parse()
                .map_err(|_| syntax(line_no, format!("bad neighbor {tok:?}")))?;
            if w >= count {
                return Err(syntax(line_no, format!("neighbor {w} out of range for n = {n}")));
            }
            table.push(w as Node);
        }
        if table.len() - before != n as usize {
            return Err(syntax(line_no, format!("node {id} lists {} neighbors, expected {n}", table.len() - before)));
        }
        next_id += 1;
    }
    if next_id != count {
        return Err(syntax(0, format!("expected {count} node lines, found {next_id}")));
    }
    Ok(HLGraph::from_table(n, table).expect("table shape checked while parsing"))
}

/// Parses and validates an `.xq` graph.
pub fn parse_xq(text: &str) -> Result<HLGraph, FormatError> {
    let g = parse_xq_unvalidated(text)?;
    validate_xq(&g).map_err(FormatError::Invalid)?;
    Ok(g)
}

pub fn read_xq(path: &Path) -> Result<HLGraph, FormatError> {
    parse_xq(&fs::read_to_string(path)?)
}

pub fn write_trace(s: &Syndrome) -> String {
    let mut out = String::new();
    for r in s.records() {
        writeln!(out, "{}\t{}\t{}\t{}", r.round, r.tester, r.testee, u8::from(r.result)).unwrap();
    }
    out
}

pub fn parse_trace(text: &str) -> Result<Syndrome, FormatError> {
    let mut s = Syndrome::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let [round, tester, testee, result] = fields[..] else {
            return Err(syntax(i + 1, "expected four tab-separated fields"));
        };
        let num = |f: &str| f.parse::<u64>().map_err(|_| syntax(i + 1, format!("bad number {f:?}")));
        let result = match result {
            "0" => false,
            "1" => true,
            other => return Err(syntax(i + 1, format!("result must be 0 or 1, found {other:?}"))),
        };
        s.push(TestRecord {
            round: num(round)? as usize,
            tester: num(tester)? as Node,
            testee: num(testee)? as Node,
            result,
        })
        .map_err(|e| syntax(i + 1, e.to_string()))?;
    }
    Ok(s)
}

pub fn write_verdict_block(status: &[Status]) -> String {
    let mut out = String::new();
    for (v, s) in status.iter().enumerate() {
        writeln!(out, "{v}\t{}", s.as_str()).unwrap();
    }
    out
}

/// Comma-separated node ids; the empty string is the empty set.
pub fn parse_node_list(text: &str) -> Result<NodeSet, String> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(NodeSet::new());
    }
    let ids: Vec<Node> = text
        .split(',')
        .map(|tok| tok.trim().parse::<Node>().map_err(|_| format!("bad node id {tok:?}")))
        .collect::<Result<_, _>>()?;
    let set: NodeSet = ids.iter().copied().collect();
    if set.len() != ids.len() {
        return Err(format!("duplicate node id in {text:?}"));
    }
    Ok(set)
}

/// `zero`, `one` or `random:SEED`.
pub fn parse_policy(text: &str) -> Result<AdversaryPolicy, String> {
    match text {
        "zero" => Ok(AdversaryPolicy::AllZero),
        "one" => Ok(AdversaryPolicy::AllOne),
        _ => text
            .strip_prefix("random:")
            .and_then(|seed| seed.parse().ok())
            .map(AdversaryPolicy::Random)
            .ok_or_else(|| format!("expected zero, one or random:SEED, found {text:?}")),
    }
}
