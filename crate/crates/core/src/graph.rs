//! Decorated Coxeter graphs: labels, spanning tree, root and bold-edge parameters.
//!
//! Text format, one directive per line, `#` starts a comment:
//!
//! ```text
//! n=4 field=[1,-3,1]
//! vertex 1 s1
//! edge 1 2 p=5 alpha=theta tree
//! edge 2 3 p=5 alpha=3-theta l=1 m=3-theta
//! root 1
//! split 1 3
//! ```
//!
//! Vertices are numbered from 1 in files and from 0 in the API. `field=` lists
//! the minimal polynomial coefficients from the leading one down; it defaults
//! to the rationals. Field-element expressions accept rational literals
//! (`3`, `-1/2`), `theta`, `+`, `-`, `*` and parentheses. Tokens inside a value
//! must not contain whitespace.

use std::collections::VecDeque;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::field::{v_p, Field, FieldElement, FieldError, MinimalPolynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph has no vertices")]
    Empty,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {i}-{j}: label {p} must be at least 3")]
    LabelTooSmall { i: usize, j: usize, p: u32 },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("tree edges do not form a spanning tree: {0}")]
    NotSpanningTree(String),
    #[error("edge {i}-{j}: l*m = {lm} but alpha = {alpha}")]
    ProductMismatch { i: usize, j: usize, lm: String, alpha: String },
    #[error("edge {i}-{j}: tree edges take no l/m parameters")]
    TreeEdgeParameters { i: usize, j: usize },
    #[error("edge {i}-{j}: bold edge has no l/m parameters")]
    UnboundParameter { i: usize, j: usize },
    #[error("edge {i}-{j}: alpha = {alpha} is not a root of {poly}")]
    NotARoot { i: usize, j: usize, alpha: String, poly: String },
    #[error("edge {i}-{j}: {source}")]
    Label { i: usize, j: usize, source: FieldError },
    #[error("parameter belongs to a different field")]
    FieldMismatch,
    #[error("invalid split: {0}")]
    InvalidSplit(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub label: u32,
    pub alpha: FieldElement,
    pub tree: bool,
    /// For a bold edge: `c_ij = -l`, `c_ji = -m`.
    pub lm: Option<(FieldElement, FieldElement)>,
    /// User-supplied minimal polynomial for `alpha`, overriding the built-in table.
    pub vp: Option<MinimalPolynomial>,
}

impl Edge {
    pub fn tree(i: usize, j: usize, label: u32, alpha: FieldElement) -> Self {
        Self { i, j, label, alpha, tree: true, lm: None, vp: None }
    }

    pub fn bold(i: usize, j: usize, label: u32, l: FieldElement, m: FieldElement) -> Self {
        let alpha = &l * &m;
        Self { i, j, label, alpha, tree: false, lm: Some((l, m)), vp: None }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.i == v || self.j == v
    }

    pub fn other(&self, v: usize) -> usize {
        if self.i == v {
            self.j
        } else {
            self.i
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedGraph {
    field: Field,
    n: usize,
    names: Vec<Option<String>>,
    edges: Vec<Edge>,
    root: usize,
    split: Option<Vec<usize>>,
}

/// The four-vertex shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Family {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::I => "I (path)",
            Family::II => "II (star)",
            Family::III => "III (triangle with pendant)",
            Family::IV => "IV (square)",
            Family::V => "V (two circuits)",
            Family::VI => "VI (complete)",
        };
        f.write_str(s)
    }
}

impl DecoratedGraph {
    /// Builds and structurally validates a graph. When no edge is a tree edge
    /// the first breadth-first tree from `root` is used.
    pub fn new(field: Field, n: usize, mut edges: Vec<Edge>, root: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if root >= n {
            return Err(GraphError::VertexOutOfRange(root));
        }
        if !edges.iter().any(|e| e.tree) {
            let free: Vec<usize> = (0..edges.len()).filter(|&k| edges[k].lm.is_none()).collect();
            let sub: Vec<Edge> = free.iter().map(|&k| edges[k].clone()).collect();
            for k in bfs_tree(n, &sub, root) {
                edges[free[k]].tree = true;
            }
        }
        let g = Self { field, n, names: vec![None; n], edges, root, split: None };
        g.validate()?;
        Ok(g)
    }

    pub fn with_names(mut self, names: Vec<Option<String>>) -> Self {
        assert_eq!(names.len(), self.n);
        self.names = names;
        self
    }

    /// Records a preferred fixed-part index set (0-based).
    pub fn with_split(mut self, s0: Vec<usize>) -> Result<Self, GraphError> {
        let mut s0 = s0;
        s0.sort_unstable();
        s0.dedup();
        if let Some(&v) = s0.iter().find(|&&v| v >= self.n) {
            return Err(GraphError::VertexOutOfRange(v));
        }
        self.split = Some(s0);
        Ok(self)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn names(&self) -> &[Option<String>] {
        &self.names
    }

    pub fn preferred_split(&self) -> Option<&[usize]> {
        self.split.as_deref()
    }

    pub fn edge(&self, a: usize, b: usize) -> Option<&Edge> {
        self.edges
            .iter()
            .find(|e| (e.i == a && e.j == b) || (e.i == b && e.j == a))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.touches(v)).count()
    }

    pub fn bold_edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| !e.tree)
    }

    fn validate(&self) -> Result<(), GraphError> {
        let mut seen = std::collections::HashSet::new();
        for e in &self.edges {
            for v in [e.i, e.j] {
                if v >= self.n {
                    return Err(GraphError::VertexOutOfRange(v));
                }
            }
            if e.i == e.j {
                return Err(GraphError::SelfLoop(e.i));
            }
            if !seen.insert((e.i.min(e.j), e.i.max(e.j))) {
                return Err(GraphError::DuplicateEdge(e.i, e.j));
            }
            if e.label < 3 {
                return Err(GraphError::LabelTooSmall { i: e.i, j: e.j, p: e.label });
            }
            if e.alpha.field() != &self.field {
                return Err(GraphError::FieldMismatch);
            }
            if let Some((l, m)) = &e.lm {
                if l.field() != &self.field || m.field() != &self.field {
                    return Err(GraphError::FieldMismatch);
                }
                if e.tree {
                    return Err(GraphError::TreeEdgeParameters { i: e.i, j: e.j });
                }
                let lm = l * m;
                if lm != e.alpha {
                    return Err(GraphError::ProductMismatch {
                        i: e.i,
                        j: e.j,
                        lm: lm.to_expr(),
                        alpha: e.alpha.to_expr(),
                    });
                }
            }
        }
        if bfs_tree(self.n, &self.edges, self.root).len() != self.n - 1 {
            return Err(GraphError::Disconnected);
        }
        let tree: Vec<&Edge> = self.edges.iter().filter(|e| e.tree).collect();
        if tree.len() != self.n - 1 {
            return Err(GraphError::NotSpanningTree(format!(
                "{} tree edges for {} vertices",
                tree.len(),
                self.n
            )));
        }
        let mut uf: Vec<usize> = (0..self.n).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        for e in tree {
            let (a, b) = (find(&mut uf, e.i), find(&mut uf, e.j));
            if a == b {
                return Err(GraphError::NotSpanningTree(format!(
                    "cycle through {}-{}",
                    e.i + 1,
                    e.j + 1
                )));
            }
            uf[a] = b;
        }
        Ok(())
    }

    /// Checks every `alpha` against the minimal polynomial of its label.
    pub fn check_label_roots(&self) -> Result<(), GraphError> {
        for e in &self.edges {
            let poly = match &e.vp {
                Some(p) => p.clone(),
                None => {
                    v_p(e.label)
                        .map_err(|source| GraphError::Label { i: e.i, j: e.j, source })?
                        .minpoly
                }
            };
            let val = self.field.eval_poly(poly.ascending(), &e.alpha);
            if !val.is_zero() {
                return Err(GraphError::NotARoot {
                    i: e.i,
                    j: e.j,
                    alpha: e.alpha.to_expr(),
                    poly: poly.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Parent of each vertex in the spanning tree (`None` for the root).
    pub fn tree_parents(&self) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.n];
        let mut seen = vec![false; self.n];
        seen[self.root] = true;
        let mut queue = VecDeque::from([self.root]);
        while let Some(u) = queue.pop_front() {
            for e in self.edges.iter().filter(|e| e.tree && e.touches(u)) {
                let w = e.other(u);
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    /// Product of `alpha` along the tree path from the root to each vertex.
    pub fn tree_path_products(&self) -> Vec<FieldElement> {
        let parent = self.tree_parents();
        let mut order = vec![self.root];
        let mut k = 0;
        while k < order.len() {
            let u = order[k];
            for w in 0..self.n {
                if parent[w] == Some(u) {
                    order.push(w);
                }
            }
            k += 1;
        }
        let mut prod = vec![self.field.one(); self.n];
        for &w in order.iter().skip(1) {
            let u = parent[w].expect("non-root has a parent");
            let e = self.edge(u, w).expect("tree edge");
            prod[w] = &prod[u] * &e.alpha;
        }
        prod
    }

    /// Shape of a four-vertex graph; `None` otherwise.
    pub fn classify_family(&self) -> Option<Family> {
        if self.n != 4 {
            return None;
        }
        let degrees: Vec<usize> = (0..4).map(|v| self.degree(v)).collect();
        match self.edges.len() {
            3 if degrees.contains(&3) => Some(Family::II),
            3 => Some(Family::I),
            4 if degrees.iter().all(|&d| d == 2) => Some(Family::IV),
            4 => Some(Family::III),
            5 => Some(Family::V),
            6 => Some(Family::VI),
            _ => None,
        }
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n
    }

    /// Canonical text form; `parse_graph(&g.serialize())` reproduces `g`.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let desc: Vec<String> = self.field.minpoly().descending().iter().map(BigInt::to_string).collect();
        let _ = writeln!(out, "n={} field=[{}]", self.n, desc.join(","));
        for (v, name) in self.names.iter().enumerate() {
            if let Some(name) = name {
                let _ = writeln!(out, "vertex {} {}", v + 1, name);
            }
        }
        for e in &self.edges {
            let _ = write!(out, "edge {} {} p={} alpha={}", e.i + 1, e.j + 1, e.label, e.alpha.to_expr());
            if e.tree {
                out.push_str(" tree");
            }
            if let Some((l, m)) = &e.lm {
                let _ = write!(out, " l={} m={}", l.to_expr(), m.to_expr());
            }
            if let Some(vp) = &e.vp {
                let d: Vec<String> = vp.descending().iter().map(BigInt::to_string).collect();
                let _ = write!(out, " vp=[{}]", d.join(","));
            }
            out.push('\n');
        }
        let _ = writeln!(out, "root {}", self.root + 1);
        if let Some(s) = &self.split {
            let idx: Vec<String> = s.iter().map(|v| (v + 1).to_string()).collect();
            let _ = writeln!(out, "split {}", idx.join(" "));
        }
        out
    }
}

fn bfs_tree(n: usize, edges: &[Edge], root: usize) -> Vec<usize> {
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut used = Vec::new();
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let mut incident: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.touches(u))
            .map(|(k, e)| (e.other(u), k))
            .collect();
        incident.sort_unstable();
        for (w, k) in incident {
            if w < n && !seen[w] {
                seen[w] = true;
                used.push(k);
                queue.push_back(w);
            }
        }
    }
    used
}

/// Parses the text format and checks that every `alpha` is a root of its label polynomial.
pub fn parse_graph(text: &str) -> Result<DecoratedGraph, GraphError> {
    let g = parse_graph_unchecked(text)?;
    g.check_label_roots()?;
    Ok(g)
}

/// Parses the text format with structural validation only.
pub fn parse_graph_unchecked(text: &str) -> Result<DecoratedGraph, GraphError> {
    let mut header: Option<(usize, Field)> = None;
    let mut names: Vec<Option<String>> = Vec::new();
    let mut edges = Vec::new();
    let mut root: Option<usize> = None;
    let mut split: Option<Vec<usize>> = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |msg: String| GraphError::Parse { line, msg };
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some((n, field)) = &header else {
            header = Some(parse_header(&tokens).map_err(err)?);
            names = vec![None; header.as_ref().unwrap().0];
            continue;
        };
        let vertex = |tok: &str| -> Result<usize, GraphError> {
            let v: usize = tok
                .parse()
                .map_err(|_| err(format!("expected a vertex index, found `{tok}`")))?;
            if v == 0 || v > *n {
                return Err(err(format!("vertex {v} out of range 1..={n}")));
            }
            Ok(v - 1)
        };
        match tokens[0] {
            "vertex" => {
                if tokens.len() != 3 {
                    return Err(err("expected `vertex <i> <name>`".into()));
                }
                let v = vertex(tokens[1])?;
                if names[v].is_some() {
                    return Err(err(format!("vertex {} named twice", v + 1)));
                }
                names[v] = Some(tokens[2].to_string());
            }
            "edge" => {
                if tokens.len() < 4 {
                    return Err(err("expected `edge <i> <j> p=<int> alpha=<expr> ...`".into()));
                }
                let i = vertex(tokens[1])?;
                let j = vertex(tokens[2])?;
                let e = parse_edge_attrs(field, i, j, &tokens[3..]).map_err(err)?;
                edges.push((line, e));
            }
            "root" => {
                if tokens.len() != 2 || root.is_some() {
                    return Err(err("expected a single `root <i>`".into()));
                }
                root = Some(vertex(tokens[1])?);
            }
            "split" => {
                if split.is_some() {
                    return Err(err("split given twice".into()));
                }
                let s = tokens[1..].iter().map(|t| vertex(t)).collect::<Result<Vec<_>, _>>()?;
                split = Some(s);
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }

    let Some((n, field)) = header else {
        return Err(GraphError::Parse { line: last_line.max(1), msg: "missing `n=<int>` header".into() });
    };
    for (line, e) in &edges {
        if let Some((l2, _)) = edges
            .iter()
            .find(|(l2, f)| l2 < line && ((f.i == e.i && f.j == e.j) || (f.i == e.j && f.j == e.i)))
        {
            return Err(GraphError::Parse {
                line: *line,
                msg: format!("edge {}-{} already given on line {l2}", e.i + 1, e.j + 1),
            });
        }
    }
    let edges: Vec<Edge> = edges.into_iter().map(|(_, e)| e).collect();
    let mut g = DecoratedGraph::new(field, n, edges, root.unwrap_or(0))?.with_names(names);
    if let Some(s) = split {
        g = g.with_split(s)?;
    }
    Ok(g)
}

fn parse_header(tokens: &[&str]) -> Result<(usize, Field), String> {
    let mut n = None;
    let mut field = None;
    for tok in tokens {
        if let Some(v) = tok.strip_prefix("n=") {
            let k: usize = v.parse().map_err(|_| format!("bad vertex count `{v}`"))?;
            if k == 0 {
                return Err("vertex count must be positive".into());
            }
            n = Some(k);
        } else if let Some(v) = tok.strip_prefix("field=") {
            let coeffs = parse_int_list(v)?;
            let mp = MinimalPolynomial::from_descending(coeffs).map_err(|e| e.to_string())?;
            field = Some(Field::new(mp).map_err(|e| e.to_string())?);
        } else {
            return Err(format!("unexpected header token `{tok}`"));
        }
    }
    let n = n.ok_or("header must start with `n=<int>`")?;
    Ok((n, field.unwrap_or_else(Field::rationals)))
}

fn parse_int_list(s: &str) -> Result<Vec<BigInt>, String> {
    let inner = s
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| format!("expected `[c0,c1,...]`, found `{s}`"))?;
    inner
        .split(',')
        .map(|t| t.parse::<BigInt>().map_err(|_| format!("bad integer `{t}`")))
        .collect()
}

fn parse_edge_attrs(field: &Field, i: usize, j: usize, tokens: &[&str]) -> Result<Edge, String> {
    let mut label = None;
    let mut alpha = None;
    let mut tree = false;
    let mut l = None;
    let mut m = None;
    let mut vp = None;
    for tok in tokens {
        let (key, val) = match tok.split_once('=') {
            Some((k, v)) => (k, Some(v)),
            None => (*tok, None),
        };
        let slot_taken = |taken: bool| if taken { Err(format!("`{key}` given twice")) } else { Ok(()) };
        match (key, val) {
            ("tree", None) => {
                slot_taken(tree)?;
                tree = true;
            }
            ("p", Some(v)) => {
                slot_taken(label.is_some())?;
                label = Some(v.parse::<u32>().map_err(|_| format!("bad label `{v}`"))?);
            }
            ("alpha", Some(v)) => {
                slot_taken(alpha.is_some())?;
                alpha = Some(parse_expr(field, v)?);
            }
            ("l", Some(v)) => {
                slot_taken(l.is_some())?;
                l = Some(parse_expr(field, v)?);
            }
            ("m", Some(v)) => {
                slot_taken(m.is_some())?;
                m = Some(parse_expr(field, v)?);
            }
            ("vp", Some(v)) => {
                slot_taken(vp.is_some())?;
                let c = parse_int_list(v)?;
                vp = Some(MinimalPolynomial::from_descending(c).map_err(|e| e.to_string())?);
            }
            _ => return Err(format!("unknown edge attribute `{tok}`")),
        }
    }
    let label = label.ok_or("edge needs `p=<int>`")?;
    let alpha = alpha.ok_or("edge needs `alpha=<expr>`")?;
    let lm = match (l, m) {
        (Some(l), Some(m)) => Some((l, m)),
        (None, None) => None,
        _ => return Err("`l` and `m` must be given together".into()),
    };
    Ok(Edge { i, j, label, alpha, tree, lm, vp })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Theta,
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < bytes.len() {
        let c = bytes[k] as char;
        match c {
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '*' => out.push(Tok::Star),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            '0'..='9' => {
                let start = k;
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                let num: BigInt = s[start..k].parse().expect("digits");
                let mut den = BigInt::from(1);
                if k < bytes.len() && bytes[k] == b'/' {
                    k += 1;
                    let ds = k;
                    while k < bytes.len() && bytes[k].is_ascii_digit() {
                        k += 1;
                    }
                    if ds == k {
                        return Err(format!("`/` must be followed by digits in `{s}`"));
                    }
                    den = s[ds..k].parse().expect("digits");
                    if den == BigInt::from(0) {
                        return Err(format!("zero denominator in `{s}`"));
                    }
                }
                out.push(Tok::Num(BigRational::new(num, den)));
                continue;
            }
            't' if s[k..].starts_with("theta") => {
                out.push(Tok::Theta);
                k += 5;
                continue;
            }
            _ => return Err(format!("unexpected character `{c}` in `{s}`")),
        }
        k += 1;
    }
    Ok(out)
}

/// Parses a field-element expression.
pub fn parse_expr(field: &Field, s: &str) -> Result<FieldElement, String> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err("empty expression".into());
    }
    let mut p = ExprParser { field, toks: &toks, pos: 0, src: s };
    let v = p.expr()?;
    if p.pos != toks.len() {
        return Err(format!("trailing input in `{s}`"));
    }
    Ok(v)
}

struct ExprParser<'a> {
    field: &'a Field,
    toks: &'a [Tok],
    pos: usize,
    src: &'a str,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<FieldElement, String> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FieldElement, String> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<FieldElement, String> {
        let tok = self.peek().cloned().ok_or_else(|| format!("unexpected end of `{}`", self.src))?;
        self.pos += 1;
        let v = match tok {
            Tok::Minus => -self.factor()?,
            Tok::Num(q) => self.field.from_rational(q),
            Tok::Theta => self.field.theta(),
            Tok::LParen => {
                let v = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(format!("unbalanced parentheses in `{}`", self.src));
                }
                self.pos += 1;
                v
            }
            _ => return Err(format!("unexpected token in `{}`", self.src)),
        };
        if matches!(self.peek(), Some(Tok::Num(_) | Tok::Theta | Tok::LParen)) {
            return Err(format!("missing operator in `{}`", self.src));
        }
        Ok(v)
    }
}
