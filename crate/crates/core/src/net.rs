//! Place/transition nets, the line-oriented net file format, and the token game.
//!
//! ```text
//! # comment
//! place <id> [<initial-tokens>]
//! trans <id> [in <pid>[:<w>] ...] [out <pid>[:<w>] ...]
//! ```
//!
//! Places are numbered in declaration order; that order fixes the coordinates
//! of every vector produced by the library.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PetriNet {
    places: Vec<String>,
    transitions: Vec<String>,
    /// `pre[p][t]`: weight of the arc from place `p` to transition `t`.
    pre: Vec<Vec<BigUint>>,
    /// `post[p][t]`: weight of the arc from transition `t` to place `p`.
    post: Vec<Vec<BigUint>>,
}

/// Token count per place.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Marking(Vec<BigUint>);

impl Marking {
    pub fn new(coords: Vec<BigUint>) -> Self {
        Marking(coords)
    }

    pub fn from_u64s(coords: &[u64]) -> Self {
        Marking(coords.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Marking(vec![BigUint::zero(); dim])
    }

    pub fn coords(&self) -> &[BigUint] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl PetriNet {
    /// Builds a net from dense `|P| x |T|` weight matrices.
    pub fn new(
        places: Vec<String>,
        transitions: Vec<String>,
        pre: Vec<Vec<BigUint>>,
        post: Vec<Vec<BigUint>>,
    ) -> Result<Self> {
        if places.is_empty() {
            return Err(Error::InvalidArgument("net has no places".into()));
        }
        let mut seen = HashSet::new();
        for id in places.iter().chain(&transitions) {
            if id.is_empty() {
                return Err(Error::InvalidArgument("empty identifier".into()));
            }
            if !seen.insert(id.as_str()) {
                return Err(Error::InvalidArgument(format!("duplicate identifier {id}")));
            }
        }
        check_dim(places.len(), pre.len())?;
        check_dim(places.len(), post.len())?;
        for row in pre.iter().chain(&post) {
            check_dim(transitions.len(), row.len())?;
        }
        Ok(PetriNet {
            places,
            transitions,
            pre,
            post,
        })
    }

    pub fn places(&self) -> &[String] {
        &self.places
    }

    pub fn transitions(&self) -> &[String] {
        &self.transitions
    }

    pub fn place_count(&self) -> usize {
        self.places.len()
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn pre(&self, place: usize, transition: usize) -> &BigUint {
        &self.pre[place][transition]
    }

    pub fn post(&self, place: usize, transition: usize) -> &BigUint {
        &self.post[place][transition]
    }

    pub fn place_index(&self, id: &str) -> Option<usize> {
        self.places.iter().position(|p| p == id)
    }

    pub fn transition_index(&self, id: &str) -> Option<usize> {
        self.transitions.iter().position(|t| t == id)
    }

    /// Input places of `t` with their weights.
    pub fn inputs(&self, t: usize) -> Vec<(usize, &BigUint)> {
        (0..self.place_count())
            .filter(|&p| !self.pre[p][t].is_zero())
            .map(|p| (p, &self.pre[p][t]))
            .collect()
    }

    pub fn outputs(&self, t: usize) -> Vec<(usize, &BigUint)> {
        (0..self.place_count())
            .filter(|&p| !self.post[p][t].is_zero())
            .map(|p| (p, &self.post[p][t]))
            .collect()
    }

    /// Incidence matrix `C = Post - Pre`, one row per place.
    pub fn incidence(&self) -> Vec<Vec<BigInt>> {
        self.pre
            .iter()
            .zip(&self.post)
            .map(|(pre, post)| {
                pre.iter()
                    .zip(post)
                    .map(|(a, b)| BigInt::from(b.clone()) - BigInt::from(a.clone()))
                    .collect()
            })
            .collect()
    }

    fn check_marking(&self, m: &Marking) -> Result<()> {
        check_dim(self.place_count(), m.len())
    }

    pub fn is_enabled(&self, m: &Marking, t: usize) -> Result<bool> {
        self.check_marking(m)?;
        if t >= self.transition_count() {
            return Err(Error::UnknownTransition(t));
        }
        Ok((0..self.place_count()).all(|p| m.0[p] >= self.pre[p][t]))
    }

    /// Canonical text form: places first, then transitions with explicit weights.
    pub fn render(&self, m0: &Marking) -> Result<String> {
        self.check_marking(m0)?;
        let mut out = String::new();
        for (p, id) in self.places.iter().enumerate() {
            let _ = writeln!(out, "place {id} {}", m0.0[p]);
        }
        for (t, id) in self.transitions.iter().enumerate() {
            let _ = write!(out, "trans {id}");
            for (keyword, arcs) in [("in", self.inputs(t)), ("out", self.outputs(t))] {
                if !arcs.is_empty() {
                    let _ = write!(out, " {keyword}");
                    for (p, w) in arcs {
                        let _ = write!(out, " {}:{w}", self.places[p]);
                    }
                }
            }
            out.push('\n');
        }
        Ok(out)
    }
}

/// Transitions enabled at `m`, in declaration order.
pub fn enabled(net: &PetriNet, m: &Marking) -> Result<Vec<usize>> {
    net.check_marking(m)?;
    let mut out = Vec::new();
    for t in 0..net.transition_count() {
        if net.is_enabled(m, t)? {
            out.push(t);
        }
    }
    Ok(out)
}

/// `m - Pre(.,t) + Post(.,t)`.
pub fn fire(net: &PetriNet, m: &Marking, t: usize) -> Result<Marking> {
    if !net.is_enabled(m, t)? {
        return Err(Error::NotEnabled(net.transitions[t].clone()));
    }
    Ok(Marking(
        (0..net.place_count())
            .map(|p| &m.0[p] - &net.pre[p][t] + &net.post[p][t])
            .collect(),
    ))
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn valid_id(id: &str) -> bool {
    !id.is_empty() && id != "in" && id != "out" && !id.contains(':')
}

fn parse_count(token: &str, line: usize, what: &str) -> Result<BigUint> {
    if token.starts_with('-') {
        return Err(parse_error(line, format!("negative {what} '{token}'")));
    }
    token
        .parse::<BigUint>()
        .map_err(|_| parse_error(line, format!("invalid {what} '{token}'")))
}

struct TransLine<'a> {
    line: usize,
    id: &'a str,
    inputs: Vec<(&'a str, BigUint)>,
    outputs: Vec<(&'a str, BigUint)>,
}

fn parse_trans<'a>(line: usize, tokens: &[&'a str]) -> Result<TransLine<'a>> {
    let id = *tokens
        .first()
        .ok_or_else(|| parse_error(line, "missing transition identifier"))?;
    if !valid_id(id) {
        return Err(parse_error(line, format!("invalid identifier '{id}'")));
    }
    let mut inputs = Vec::new();
    let mut outputs = Vec::new();
    let mut seen_in = false;
    let mut seen_out = false;
    let mut current: Option<&mut Vec<(&str, BigUint)>> = None;
    for &tok in &tokens[1..] {
        match tok {
            "in" if !seen_in => {
                seen_in = true;
                current = Some(&mut inputs);
            }
            "out" if !seen_out => {
                seen_out = true;
                current = Some(&mut outputs);
            }
            "in" | "out" => return Err(parse_error(line, format!("repeated '{tok}' list"))),
            arc => {
                let list = current
                    .as_mut()
                    .ok_or_else(|| parse_error(line, format!("arc '{arc}' outside in/out list")))?;
                let (pid, weight) = match arc.split_once(':') {
                    Some((pid, w)) => (pid, parse_count(w, line, "weight")?),
                    None => (arc, BigUint::one()),
                };
                if list.iter().any(|(p, _)| *p == pid) {
                    return Err(parse_error(line, format!("duplicate arc on place '{pid}'")));
                }
                list.push((pid, weight));
            }
        }
    }
    Ok(TransLine {
        line,
        id,
        inputs,
        outputs,
    })
}

/// Parses the net file format, returning the net and its initial marking.
pub fn parse_net(text: &str) -> Result<(PetriNet, Marking)> {
    let mut places: Vec<String> = Vec::new();
    let mut tokens0: Vec<BigUint> = Vec::new();
    let mut trans_lines = Vec::new();
    let mut ids: HashMap<&str, usize> = HashMap::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some((&head, rest)) = tokens.split_first() else {
            continue;
        };
        match head {
            "place" => {
                let (id, count) = match rest {
                    [id] => (*id, BigUint::zero()),
                    [id, n] => (*id, parse_count(n, line, "token count")?),
                    [] => return Err(parse_error(line, "missing place identifier")),
                    _ => return Err(parse_error(line, "too many fields in place declaration")),
                };
                if !valid_id(id) {
                    return Err(parse_error(line, format!("invalid identifier '{id}'")));
                }
                if let Some(prev) = ids.insert(id, line) {
                    return Err(parse_error(
                        line,
                        format!("duplicate identifier '{id}' (first declared on line {prev})"),
                    ));
                }
                places.push(id.to_string());
                tokens0.push(count);
            }
            "trans" => {
                let tl = parse_trans(line, rest)?;
                if let Some(prev) = ids.insert(tl.id, line) {
                    return Err(parse_error(
                        line,
                        format!("duplicate identifier '{}' (first declared on line {prev})", tl.id),
                    ));
                }
                trans_lines.push(tl);
            }
            other => return Err(parse_error(line, format!("unknown directive '{other}'"))),
        }
    }

    if places.is_empty() {
        return Err(parse_error(last_line.max(1), "net declares no places"));
    }

    let index: HashMap<&str, usize> = places
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_str(), i))
        .collect();
    let d = places.len();
    let nt = trans_lines.len();
    let mut pre = vec![vec![BigUint::zero(); nt]; d];
    let mut post = vec![vec![BigUint::zero(); nt]; d];
    let mut transitions = Vec::with_capacity(nt);
    for (t, tl) in trans_lines.into_iter().enumerate() {
        for (arcs, matrix) in [(tl.inputs, &mut pre), (tl.outputs, &mut post)] {
            for (pid, w) in arcs {
                let p = *index
                    .get(pid)
                    .ok_or_else(|| parse_error(tl.line, format!("unknown place '{pid}'")))?;
                matrix[p][t] = w;
            }
        }
        transitions.push(tl.id.to_string());
    }

    let net = PetriNet::new(places, transitions, pre, post)?;
    Ok((net, Marking(tokens0)))
}
