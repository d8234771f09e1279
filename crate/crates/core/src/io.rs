//! Text formats. All vertex ids in files are 1-based.
//!
//! Graphs: `p chvd <n> <m>`, then `e <u> <v>` per edge, optional `n <v> <w>` weights
//! (default 1), `c ...` comments. Tree decompositions follow the PACE `.td` layout:
//! `s td <bags> <width+1> <n>`, `b <id> <v>...`, and `<i> <j>` tree edges. Labels: one
//! `label <name> <v>` per line.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::gadgets::GadgetLabels;
use crate::graph::WeightedGraph;
use crate::treedec::TreeDecomposition;

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn num<T: std::str::FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| perr(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| perr(line, format!("bad {what} `{tok}`")))
}

fn vertex(line: usize, tok: Option<&str>, n: usize) -> Result<usize> {
    let v: usize = num(line, tok, "vertex")?;
    if v == 0 || v > n {
        return Err(perr(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

fn no_more<'a>(line: usize, mut toks: impl Iterator<Item = &'a str>) -> Result<()> {
    match toks.next() {
        Some(t) => Err(perr(line, format!("unexpected token `{t}`"))),
        None => Ok(()),
    }
}

/// Lines that carry content, with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && *l != "c" && !l.starts_with("c "))
}

pub fn read_graph(text: &str) -> Result<WeightedGraph> {
    let mut g: Option<WeightedGraph> = None;
    let mut declared_m = 0;
    let mut weighted = Vec::new();
    let mut last_line = 0;
    for (ln, line) in content_lines(text) {
        last_line = ln;
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("p") => {
                if g.is_some() {
                    return Err(perr(ln, "second header"));
                }
                if toks.next() != Some("chvd") {
                    return Err(perr(ln, "expected `p chvd <n> <m>`"));
                }
                let n: usize = num(ln, toks.next(), "vertex count")?;
                declared_m = num(ln, toks.next(), "edge count")?;
                no_more(ln, toks)?;
                g = Some(WeightedGraph::new(n));
                weighted = vec![false; n];
            }
            Some(kind @ ("e" | "n")) => {
                let g = g.as_mut().ok_or_else(|| perr(ln, "line before header"))?;
                let n = g.n();
                let a = vertex(ln, toks.next(), n)?;
                if kind == "e" {
                    let b = vertex(ln, toks.next(), n)?;
                    no_more(ln, toks)?;
                    if a == b {
                        return Err(perr(ln, format!("self-loop at {}", a + 1)));
                    }
                    if !g.add_edge(a, b)? {
                        return Err(perr(ln, format!("duplicate edge {} {}", a + 1, b + 1)));
                    }
                } else {
                    let w: u64 = num(ln, toks.next(), "weight")?;
                    no_more(ln, toks)?;
                    if std::mem::replace(&mut weighted[a], true) {
                        return Err(perr(ln, format!("second weight for {}", a + 1)));
                    }
                    g.set_weight(a, w);
                }
            }
            Some(t) => return Err(perr(ln, format!("unknown line type `{t}`"))),
            None => unreachable!(),
        }
    }
    let g = g.ok_or_else(|| perr(last_line.max(1), "missing header"))?;
    if g.m() != declared_m {
        return Err(perr(
            last_line,
            format!("header declares {declared_m} edges, found {}", g.m()),
        ));
    }
    g.total_weight()?;
    Ok(g)
}

/// Writes weight lines only for vertices whose weight is not 1.
pub fn write_graph(g: &WeightedGraph) -> String {
    let mut s = String::new();
    writeln!(s, "p chvd {} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(s, "e {} {}", u + 1, v + 1).unwrap();
    }
    for v in 0..g.n() {
        if g.weight(v) != 1 {
            writeln!(s, "n {} {}", v + 1, g.weight(v)).unwrap();
        }
    }
    s
}

/// Parses a `.td` file. Bag ids must be exactly `1..=bags`, and the declared width must match
/// the largest bag. Returns the decomposition and the declared vertex count.
pub fn read_td(text: &str) -> Result<(TreeDecomposition, usize)> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (ln, line) in content_lines(text) {
        last_line = ln;
        let mut toks = line.split_whitespace();
        let first = toks.next().unwrap();
        if first == "s" {
            if header.is_some() {
                return Err(perr(ln, "second header"));
            }
            if toks.next() != Some("td") {
                return Err(perr(ln, "expected `s td <bags> <width+1> <n>`"));
            }
            let nb = num(ln, toks.next(), "bag count")?;
            let w1 = num(ln, toks.next(), "bag size")?;
            let n = num(ln, toks.next(), "vertex count")?;
            no_more(ln, toks)?;
            header = Some((nb, w1, n));
            bags = vec![None; nb];
            continue;
        }
        let (nb, _, n) = header.ok_or_else(|| perr(ln, "line before header"))?;
        if first == "b" {
            let id = vertex(ln, toks.next(), nb).map_err(|_| perr(ln, "bag id out of range"))?;
            let mut bag = Vec::new();
            for t in toks {
                bag.push(vertex(ln, Some(t), n)?);
            }
            bag.sort_unstable();
            if bag.windows(2).any(|w| w[0] == w[1]) {
                return Err(perr(ln, "repeated vertex in bag"));
            }
            if bags[id].replace(bag).is_some() {
                return Err(perr(ln, format!("bag {} listed twice", id + 1)));
            }
        } else {
            let i = vertex(ln, Some(first), nb).map_err(|_| perr(ln, "tree edge out of range"))?;
            let j = vertex(ln, toks.next(), nb).map_err(|_| perr(ln, "tree edge out of range"))?;
            no_more(ln, toks)?;
            edges.push((i, j));
        }
    }
    let (_, w1, n) = header.ok_or_else(|| perr(last_line.max(1), "missing header"))?;
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| perr(last_line, format!("bag {} missing", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    let largest = bags.iter().map(Vec::len).max().unwrap_or(0);
    if largest != w1 {
        return Err(perr(
            last_line,
            format!("header declares bag size {w1}, largest bag has {largest}"),
        ));
    }
    Ok((TreeDecomposition::new(bags, edges), n))
}

pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let mut s = String::new();
    let largest = td.bags.iter().map(Vec::len).max().unwrap_or(0);
    writeln!(s, "s td {} {} {}", td.bags.len(), largest, n).unwrap();
    for (i, bag) in td.bags.iter().enumerate() {
        write!(s, "b {}", i + 1).unwrap();
        for v in bag {
            write!(s, " {}", v + 1).unwrap();
        }
        s.push('\n');
    }
    for &(i, j) in &td.edges {
        writeln!(s, "{} {}", i + 1, j + 1).unwrap();
    }
    s
}

pub fn write_labels(labels: &GadgetLabels) -> String {
    let mut s = String::new();
    for (name, v) in &labels.entries {
        writeln!(s, "label {name} {}", v + 1).unwrap();
    }
    s
}

pub fn read_labels(text: &str) -> Result<GadgetLabels> {
    let mut labels = GadgetLabels::default();
    for (ln, line) in content_lines(text) {
        let mut toks = line.split_whitespace();
        if toks.next() != Some("label") {
            return Err(perr(ln, "expected `label <name> <vertex>`"));
        }
        let name = toks.next().ok_or_else(|| perr(ln, "missing name"))?;
        let v: usize = num(ln, toks.next(), "vertex")?;
        if v == 0 {
            return Err(perr(ln, "vertex ids start at 1"));
        }
        no_more(ln, toks)?;
        labels.push(name, v - 1);
    }
    Ok(labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let mut g = WeightedGraph::cycle(5);
        g.set_weight(2, 7);
        let text = write_graph(&g);
        assert_eq!(text, "p chvd 5 5\ne 1 2\ne 1 5\ne 2 3\ne 3 4\ne 4 5\nn 3 7\n");
        assert_eq!(read_graph(&text).unwrap(), g);
    }

    #[test]
    fn graph_errors_carry_lines() {
        let cases = [
            ("p chvd 3 1\ne 1 2\ne 2 1\n", 3),
            ("p chvd 3 2\ne 1 2\n", 2),
            ("c hi\ne 1 2\n", 2),
            ("p chvd 3 1\ne 1 4\n", 2),
            ("p chvd 3 1\ne 2 2\n", 2),
            ("p chvd 2 0\nn 1 x\n", 2),
            ("p chvd 2 0\nn 1 3\nn 1 4\n", 3),
        ];
        for (text, line) in cases {
            match read_graph(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn td_round_trip() {
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![(0, 1)]);
        let text = write_td(&td, 3);
        assert_eq!(text, "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n");
        let (back, n) = read_td(&text).unwrap();
        assert_eq!((back, n), (td, 3));
        assert!(read_td("s td 2 3 3\nb 1 1 2\nb 2 2 3\n1 2\n").is_err());
        assert!(read_td("s td 2 2 3\nb 1 1 2\n").is_err());
    }

    #[test]
    fn labels_round_trip() {
        let mut l = GadgetLabels::default();
        l.push("y1", 0);
        l.push("C1_2:g1_1", 40);
        let text = write_labels(&l);
        assert_eq!(text, "label y1 1\nlabel C1_2:g1_1 41\n");
        assert_eq!(read_labels(&text).unwrap(), l);
    }
}
