use std::collections::{HashMap, HashSet};

use thiserror::Error;

use super::{Arc, Edge, GraphDiagram, Node, NodeKind, OverPair, Part, Port};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token { text: &body[s..i], column: body[..s].chars().count() + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &body[s..], column: body[..s].chars().count() + 1 });
    }
    out
}

struct Ctx {
    line: usize,
}

impl Ctx {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column, message: message.into() }
    }
}

fn number(ctx: &Ctx, t: &Token<'_>, what: &str) -> Result<usize, ParseError> {
    t.text
        .parse::<usize>()
        .map_err(|_| ctx.err(t.column, format!("expected {what}, found `{}`", t.text)))
}

fn valid_id(ctx: &Ctx, t: &Token<'_>) -> Result<String, ParseError> {
    if t.text.contains('.') {
        return Err(ctx.err(t.column, format!("identifier `{}` may not contain `.`", t.text)));
    }
    Ok(t.text.to_string())
}

/// Parses the `.bsg` text format into a diagram with all references resolved.
pub fn parse_diagram(text: &str) -> Result<GraphDiagram, ParseError> {
    let mut nodes: Vec<Node> = Vec::new();
    let mut node_ix: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<Edge> = Vec::new();
    let mut edge_ix: HashMap<String, usize> = HashMap::new();
    let mut arcs: Vec<Arc> = Vec::new();
    let mut arc_ids: HashSet<String> = HashSet::new();
    let mut used: HashMap<Port, String> = HashMap::new();
    let mut seqs: HashSet<(usize, usize)> = HashSet::new();

    for (ln, raw) in text.lines().enumerate() {
        let ctx = Ctx { line: ln + 1 };
        let toks = tokens(raw);
        let Some(head) = toks.first() else { continue };
        let arity = |n: usize| -> Result<(), ParseError> {
            if toks.len() != n {
                let col = toks.get(n).map_or(head.column, |t| t.column);
                return Err(ctx.err(
                    col,
                    format!("`{}` takes {} fields, found {}", head.text, n - 1, toks.len() - 1),
                ));
            }
            Ok(())
        };
        match head.text {
            "vertex" => {
                arity(4)?;
                let id = valid_id(&ctx, &toks[1])?;
                let part = match toks[2].text {
                    "V1" => Part::V1,
                    "V2" => Part::V2,
                    other => {
                        return Err(ctx.err(toks[2].column, format!("expected V1 or V2, found `{other}`")))
                    }
                };
                let valency = number(&ctx, &toks[3], "a valency")?;
                if valency == 0 {
                    return Err(ctx.err(toks[3].column, "isolated vertices are not allowed"));
                }
                if node_ix.contains_key(&id) {
                    return Err(ctx.err(toks[1].column, format!("duplicate node id `{id}`")));
                }
                node_ix.insert(id.clone(), nodes.len());
                nodes.push(Node { id, kind: NodeKind::Vertex { part, valency } });
            }
            "cross" => {
                arity(3)?;
                let id = valid_id(&ctx, &toks[1])?;
                let over = match toks[2].text {
                    "02" => OverPair::Slots02,
                    "13" => OverPair::Slots13,
                    other => {
                        return Err(ctx.err(toks[2].column, format!("over pair must be 02 or 13, found `{other}`")))
                    }
                };
                if node_ix.contains_key(&id) {
                    return Err(ctx.err(toks[1].column, format!("duplicate node id `{id}`")));
                }
                node_ix.insert(id.clone(), nodes.len());
                nodes.push(Node { id, kind: NodeKind::Crossing { over } });
            }
            "edge" => {
                arity(4)?;
                let id = valid_id(&ctx, &toks[1])?;
                if edge_ix.contains_key(&id) {
                    return Err(ctx.err(toks[1].column, format!("duplicate edge id `{id}`")));
                }
                let mut ends = [0usize; 2];
                for (k, t) in toks[2..4].iter().enumerate() {
                    let &n = node_ix
                        .get(t.text)
                        .ok_or_else(|| ctx.err(t.column, format!("unknown vertex `{}`", t.text)))?;
                    if nodes[n].is_crossing() {
                        return Err(ctx.err(t.column, format!("`{}` is a double point, not a vertex", t.text)));
                    }
                    ends[k] = n;
                }
                edge_ix.insert(id.clone(), edges.len());
                edges.push(Edge { id, tail: ends[0], head: ends[1] });
            }
            "arc" => {
                arity(6)?;
                let id = valid_id(&ctx, &toks[1])?;
                if !arc_ids.insert(id.clone()) {
                    return Err(ctx.err(toks[1].column, format!("duplicate arc id `{id}`")));
                }
                let &edge = edge_ix
                    .get(toks[2].text)
                    .ok_or_else(|| ctx.err(toks[2].column, format!("unknown edge `{}`", toks[2].text)))?;
                let seq = number(&ctx, &toks[3], "a sequence index")?;
                if !seqs.insert((edge, seq)) {
                    return Err(ctx.err(toks[3].column, format!("sequence index {seq} repeated on edge `{}`", toks[2].text)));
                }
                let mut ports = [Port { node: 0, slot: 0 }; 2];
                for (k, t) in toks[4..6].iter().enumerate() {
                    let (nid, slot) = t
                        .text
                        .rsplit_once('.')
                        .ok_or_else(|| ctx.err(t.column, format!("expected <node>.<slot>, found `{}`", t.text)))?;
                    let &node = node_ix
                        .get(nid)
                        .ok_or_else(|| ctx.err(t.column, format!("unknown node `{nid}`")))?;
                    let slot_col = t.column + nid.chars().count() + 1;
                    let slot: usize = slot
                        .parse()
                        .map_err(|_| ctx.err(slot_col, format!("expected a slot number, found `{slot}`")))?;
                    let deg = nodes[node].degree();
                    if slot >= deg {
                        return Err(ctx.err(slot_col, format!("slot {slot} out of range for `{nid}` (degree {deg})")));
                    }
                    let p = Port { node, slot };
                    if let Some(prev) = used.get(&p) {
                        return Err(ctx.err(t.column, format!("slot {nid}.{slot} already used by arc `{prev}`")));
                    }
                    used.insert(p, id.clone());
                    ports[k] = p;
                }
                arcs.push(Arc { id, edge, seq, from: ports[0], to: ports[1] });
            }
            other => return Err(ctx.err(head.column, format!("unknown directive `{other}`"))),
        }
    }
    Ok(GraphDiagram::from_parts(nodes, edges, arcs))
}
