//! Line-oriented graph files: graph6 streams and adjacency-list text.

use std::io::{self, BufRead, Write};

use sicgraph_core::graph6::{self, Line};
use sicgraph_core::{Graph, Graph6Error};

use crate::error::Error;

/// Streams graphs from graph6 text, one record per line. Blank lines, `>` comment
/// lines, and a leading `>>graph6<<` header are skipped.
pub struct Graph6Reader<R> {
    inner: R,
    line: usize,
    buf: String,
}

impl<R: BufRead> Graph6Reader<R> {
    pub fn new(inner: R) -> Self {
        Graph6Reader {
            inner,
            line: 0,
            buf: String::new(),
        }
    }
}

impl<R: BufRead> Iterator for Graph6Reader<R> {
    type Item = Result<Graph, Error>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            self.buf.clear();
            match self.inner.read_line(&mut self.buf) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(e) => return Some(Err(e.into())),
            }
            self.line += 1;
            match graph6::decode_line(&self.buf) {
                Ok(Line::Graph(g)) => return Some(Ok(g)),
                Ok(Line::Skip) => continue,
                Err(source) => {
                    return Some(Err(Error::Graph6 {
                        line: self.line,
                        source,
                    }))
                }
            }
        }
    }
}

/// Writes one graph6 record per line.
pub struct Graph6Writer<W> {
    inner: W,
    buf: Vec<u8>,
    count: u64,
}

impl<W: Write> Graph6Writer<W> {
    pub fn new(inner: W) -> Self {
        Graph6Writer {
            inner,
            buf: Vec::new(),
            count: 0,
        }
    }

    pub fn write(&mut self, g: &Graph) -> io::Result<()> {
        self.buf.clear();
        graph6::encode_into(g, &mut self.buf);
        self.buf.push(b'\n');
        self.count += 1;
        self.inner.write_all(&self.buf)
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn into_inner(mut self) -> io::Result<W> {
        self.inner.flush()?;
        Ok(self.inner)
    }
}

/// Adjacency-list text for one graph: a line `order N`, then `v: u w ...` for each vertex.
pub fn to_adjacency_text(g: &Graph) -> String {
    let mut out = format!("order {}\n", g.order());
    for v in 0..g.order() {
        let nbrs: Vec<String> = g.neighbors(v).iter().map(|u| u.to_string()).collect();
        out.push_str(&format!("{v}:"));
        for u in nbrs {
            out.push(' ');
            out.push_str(&u);
        }
        out.push('\n');
    }
    out
}

/// Parses a sequence of [`to_adjacency_text`] blocks. Blank lines and `#` comments are
/// ignored; every edge must be listed from both ends.
pub fn parse_adjacency_text(text: &str) -> Result<Vec<Graph>, Error> {
    fn bad(line: usize, reason: &str) -> Error {
        Error::AdjacencyText {
            line,
            reason: reason.to_string(),
        }
    }
    fn finish(block: Option<(usize, Vec<Vec<usize>>)>, graphs: &mut Vec<Graph>, line: usize) -> Result<(), Error> {
        let Some((n, rows)) = block else {
            return Ok(());
        };
        if rows.len() != n {
            return Err(bad(line, "fewer vertex lines than the order"));
        }
        let mut edges = Vec::new();
        for (v, row) in rows.iter().enumerate() {
            for &u in row {
                if !rows[u].contains(&v) {
                    return Err(bad(line, "asymmetric adjacency"));
                }
                if v < u {
                    edges.push((v, u));
                }
            }
        }
        graphs.push(Graph::from_edges(n, &edges).map_err(|e| bad(line, &e.to_string()))?);
        Ok(())
    }

    let mut graphs = Vec::new();
    let mut block: Option<(usize, Vec<Vec<usize>>)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let no = i + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("order") {
            finish(block.take(), &mut graphs, no)?;
            let n: usize = rest.trim().parse().map_err(|_| bad(no, "bad order"))?;
            block = Some((n, Vec::new()));
            continue;
        }
        let Some((n, rows)) = block.as_mut() else {
            return Err(bad(no, "vertex line before `order`"));
        };
        let (head, tail) = line.split_once(':').ok_or_else(|| bad(no, "missing `:`"))?;
        let v: usize = head.trim().parse().map_err(|_| bad(no, "bad vertex"))?;
        if v != rows.len() || v >= *n {
            return Err(bad(no, "vertex lines out of sequence"));
        }
        let mut row = Vec::new();
        for tok in tail.split_whitespace() {
            let u: usize = tok.parse().map_err(|_| bad(no, "bad neighbor"))?;
            if u >= *n || u == v {
                return Err(bad(no, "neighbor out of range"));
            }
            row.push(u);
        }
        rows.push(row);
    }
    finish(block, &mut graphs, text.lines().count())?;
    Ok(graphs)
}

/// Decodes every graph6 record in `text`, reporting the first bad line.
pub fn read_all_graph6(text: &str) -> Result<Vec<Graph>, Error> {
    graph6::decode_all(text).map_err(|(line, source): (usize, Graph6Error)| Error::Graph6 { line, source })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reader_skips_noise() {
        let text = ">>graph6<<Bw\n\n> comment\n  C~  \n";
        let gs: Vec<Graph> = Graph6Reader::new(text.as_bytes()).collect::<Result<_, _>>().unwrap();
        assert_eq!(gs, [Graph::complete(3).unwrap(), Graph::complete(4).unwrap()]);
        let mut r = Graph6Reader::new("Bw\nBx\n".as_bytes());
        assert!(r.next().unwrap().is_ok());
        assert!(matches!(r.next(), Some(Err(Error::Graph6 { line: 2, .. }))));
    }

    #[test]
    fn writer_round_trip() {
        let mut w = Graph6Writer::new(Vec::new());
        w.write(&Graph::path(4).unwrap()).unwrap();
        w.write(&Graph::cycle(5).unwrap()).unwrap();
        assert_eq!(w.count(), 2);
        let bytes = w.into_inner().unwrap();
        assert_eq!(read_all_graph6(std::str::from_utf8(&bytes).unwrap()).unwrap(), [Graph::path(4).unwrap(), Graph::cycle(5).unwrap()]);
    }

    #[test]
    fn adjacency_text() {
        let c5 = Graph::cycle(5).unwrap();
        let text = to_adjacency_text(&c5);
        assert!(text.starts_with("order 5\n0: 1 4\n"));
        let two = format!("{text}\n{}", to_adjacency_text(&Graph::empty(2).unwrap()));
        assert_eq!(parse_adjacency_text(&two).unwrap(), [c5, Graph::empty(2).unwrap()]);
        assert!(parse_adjacency_text("order 2\n0: 1\n1:\n").is_err());
        assert!(parse_adjacency_text("order 3\n0: 1\n1: 0\n").is_err());
        assert!(parse_adjacency_text("0: 1\n").is_err());
    }
}
