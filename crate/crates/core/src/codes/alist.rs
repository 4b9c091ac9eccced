//! ALIST interchange format for sparse parity-check matrices.
//!
//! Layout (all indices 1-based, `0` entries are padding and are ignored):
//!
//! ```text
//! n m
//! max_var_degree max_check_degree
//! <n variable degrees>
//! <m check degrees>
//! <n lines: check indices of each variable, padded to max_var_degree>
//! <m lines: variable indices of each check, padded to max_check_degree>
//! ```
//!
//! [`write_alist`] emits a canonical form: ascending adjacency, zero-padded
//! to the max degree, single spaces, trailing newline. `parse(write(g)) == g`
//! for every graph, and `write(parse(t)) == t` for canonical `t`.

use super::TannerGraph;
use crate::error::{Error, Result};

/// Serializes a graph to canonical ALIST text.
pub fn write_alist(graph: &TannerGraph) -> String {
    let n = graph.num_vars();
    let m = graph.num_checks();
    let max_dv = graph.max_var_degree();
    let max_dc = graph.max_check_degree();

    let mut out = String::new();
    out.push_str(&format!("{n} {m}\n"));
    out.push_str(&format!("{max_dv} {max_dc}\n"));
    push_counts(&mut out, (0..n).map(|v| graph.var_degree(v)));
    push_counts(&mut out, (0..m).map(|c| graph.check_degree(c)));
    for v in 0..n {
        push_padded(&mut out, graph.var_neighbors(v), max_dv);
    }
    for c in 0..m {
        push_padded(&mut out, graph.check_neighbors(c), max_dc);
    }
    out
}

fn push_counts(out: &mut String, counts: impl Iterator<Item = usize>) {
    let line: Vec<String> = counts.map(|d| d.to_string()).collect();
    out.push_str(&line.join(" "));
    out.push('\n');
}

fn push_padded(out: &mut String, neighbors: &[usize], width: usize) {
    let mut fields: Vec<String> = neighbors.iter().map(|&i| (i + 1).to_string()).collect();
    fields.resize(width, "0".to_string());
    out.push_str(&fields.join(" "));
    out.push('\n');
}

/// Parses ALIST text into a Tanner graph, validating both adjacency blocks
/// against each other.
pub fn parse_alist(text: &str) -> Result<TannerGraph> {
    let mut lines = NumberedLines::new(text);

    let header = lines.next_fields("header")?;
    if header.1.len() != 2 {
        return Err(parse_err(header.0, "expected exactly two fields: n m"));
    }
    let n = parse_count(header.0, &header.1[0], "n")?;
    let m = parse_count(header.0, &header.1[1], "m")?;
    if n == 0 || m == 0 {
        return Err(parse_err(header.0, "n and m must be positive"));
    }

    let maxes = lines.next_fields("max degrees")?;
    if maxes.1.len() != 2 {
        return Err(parse_err(maxes.0, "expected exactly two fields: max degrees"));
    }
    let max_dv = parse_count(maxes.0, &maxes.1[0], "max variable degree")?;
    let max_dc = parse_count(maxes.0, &maxes.1[1], "max check degree")?;

    let var_degrees = parse_degree_list(&mut lines, n, max_dv, "variable degree list")?;
    let check_degrees = parse_degree_list(&mut lines, m, max_dc, "check degree list")?;

    let mut var_lists = Vec::with_capacity(n);
    for v in 0..n {
        var_lists.push(parse_adjacency_line(
            &mut lines,
            var_degrees[v],
            m,
            "variable adjacency",
        )?);
    }
    let mut check_lists = Vec::with_capacity(m);
    for c in 0..m {
        check_lists.push(parse_adjacency_line(
            &mut lines,
            check_degrees[c],
            n,
            "check adjacency",
        )?);
    }
    let end_line = lines.line_no;
    if let Some((line_no, _)) = lines.peek_fields() {
        return Err(parse_err(*line_no, "unexpected trailing content"));
    }

    // Cross-check: the two adjacency blocks must describe the same matrix.
    let mut derived_var_lists = vec![Vec::new(); n];
    for (c, vars) in check_lists.iter().enumerate() {
        for &v in vars {
            derived_var_lists[v].push(c);
        }
    }
    for v in 0..n {
        let mut declared = var_lists[v].clone();
        declared.sort_unstable();
        if derived_var_lists[v] != declared {
            return Err(parse_err(
                end_line,
                &format!("variable {} adjacency disagrees with the check block", v + 1),
            ));
        }
    }

    TannerGraph::from_check_adjacency(n, check_lists)
}

fn parse_degree_list(
    lines: &mut NumberedLines,
    count: usize,
    max_degree: usize,
    what: &str,
) -> Result<Vec<usize>> {
    let (line_no, fields) = lines.next_fields(what)?;
    if fields.len() != count {
        return Err(parse_err(
            line_no,
            &format!("{what}: expected {count} entries, got {}", fields.len()),
        ));
    }
    let mut degrees = Vec::with_capacity(count);
    for f in &fields {
        let d = parse_count(line_no, f, what)?;
        if d > max_degree {
            return Err(parse_err(
                line_no,
                &format!("{what}: degree {d} exceeds declared maximum {max_degree}"),
            ));
        }
        degrees.push(d);
    }
    Ok(degrees)
}

fn parse_adjacency_line(
    lines: &mut NumberedLines,
    degree: usize,
    bound: usize,
    what: &str,
) -> Result<Vec<usize>> {
    let (line_no, fields) = lines.next_fields(what)?;
    let mut neighbors = Vec::with_capacity(degree);
    for f in &fields {
        let idx = parse_count(line_no, f, what)?;
        if idx == 0 {
            continue; // padding
        }
        if idx > bound {
            return Err(parse_err(
                line_no,
                &format!("{what}: index {idx} out of range 1..={bound}"),
            ));
        }
        neighbors.push(idx - 1);
    }
    if neighbors.len() != degree {
        return Err(parse_err(
            line_no,
            &format!(
                "{what}: {} non-zero entries but declared degree {degree}",
                neighbors.len()
            ),
        ));
    }
    Ok(neighbors)
}

fn parse_count(line: usize, field: &str, what: &str) -> Result<usize> {
    field
        .parse::<usize>()
        .map_err(|_| parse_err(line, &format!("{what}: `{field}` is not a non-negative integer")))
}

fn parse_err(line: usize, msg: &str) -> Error {
    Error::AlistParse {
        line,
        msg: msg.to_string(),
    }
}

/// Iterator over non-blank lines, tracking 1-based line numbers.
struct NumberedLines<'a> {
    inner: std::str::Lines<'a>,
    line_no: usize,
    peeked: Option<(usize, Vec<String>)>,
}

impl<'a> NumberedLines<'a> {
    fn new(text: &'a str) -> Self {
        NumberedLines {
            inner: text.lines(),
            line_no: 0,
            peeked: None,
        }
    }

    fn next_fields(&mut self, what: &str) -> Result<(usize, Vec<String>)> {
        if let Some(item) = self.peeked.take() {
            return Ok(item);
        }
        for line in self.inner.by_ref() {
            self.line_no += 1;
            let fields: Vec<String> = line.split_whitespace().map(str::to_string).collect();
            if !fields.is_empty() {
                return Ok((self.line_no, fields));
            }
        }
        Err(parse_err(
            self.line_no + 1,
            &format!("unexpected end of input while reading {what}"),
        ))
    }

    fn peek_fields(&mut self) -> Option<&(usize, Vec<String>)> {
        if self.peeked.is_none() {
            self.peeked = self.next_fields("").ok();
        }
        self.peeked.as_ref()
    }
}
