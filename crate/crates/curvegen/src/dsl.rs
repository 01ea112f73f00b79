//! Input DSL: lexer, parser, and semantic analysis.
//!
//! ```text
//! curve genus 2
//! object E = bundle(r=1,d=0) + bundle(r=1,d=1,id=L)
//! assume hom(E.1, L) = 0
//! analyze E
//! ```
//!
//! Pieces default to Split; the `hn_only` attribute marks the enclosing
//! graded component as HN factors. At genus 0 every sheaf is coerced to
//! Split, since every bundle on the projective line splits into line
//! bundles. Pieces without an explicit `id` receive the synthetic label
//! `NAME.i` (1-based declaration position) so that positional references
//! always resolve; synthetic labels contain a dot and are therefore never
//! printable as `id=` attributes.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::engine::Assumption;
use crate::formal::{FormalObject, FormalSheaf, SemistablePiece, Splitting};
use crate::numerics::{ChernPair, Curve};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("syntax error at {line}:{col}: expected {expected}, found {found}")]
    Syntax {
        line: u32,
        col: u32,
        expected: String,
        found: String,
    },
    #[error("semantic error at {line}:{col}: {message}")]
    Semantic { line: u32, col: u32, message: String },
}

fn syntax(line: u32, col: u32, expected: &str, found: impl fmt::Display) -> DslError {
    DslError::Syntax {
        line,
        col,
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

fn semantic(line: u32, col: u32, message: impl Into<String>) -> DslError {
    DslError::Semantic {
        line,
        col,
        message: message.into(),
    }
}

// ---------------------------------------------------------------------------
// lexer

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Eq,
    Plus,
    Dot,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Dot => write!(f, "`.`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: u32,
    col: u32,
}

fn lex(src: &str) -> Result<Vec<Spanned>, DslError> {
    let mut out = Vec::new();
    let mut line: u32 = 1;
    let mut col: u32 = 1;
    let mut chars = src.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (tline, tcol) = (line, col);
        let bump = |c: char, line: &mut u32, col: &mut u32| {
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        };
        match ch {
            ' ' | '\t' | '\r' | '\n' => {
                chars.next();
                bump(ch, &mut line, &mut col);
            }
            '#' => {
                // comment to end of line
                while let Some(&c) = chars.peek() {
                    chars.next();
                    bump(c, &mut line, &mut col);
                    if c == '\n' {
                        break;
                    }
                }
            }
            '(' | ')' | '[' | ']' | ',' | '=' | '+' | '.' => {
                chars.next();
                bump(ch, &mut line, &mut col);
                let tok = match ch {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ',' => Tok::Comma,
                    '=' => Tok::Eq,
                    '+' => Tok::Plus,
                    '.' => Tok::Dot,
                    _ => unreachable!(),
                };
                out.push(Spanned { tok, line: tline, col: tcol });
            }
            '-' | '0'..='9' => {
                let mut text = String::new();
                if ch == '-' {
                    text.push('-');
                    chars.next();
                    bump('-', &mut line, &mut col);
                }
                let mut any_digit = false;
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        any_digit = true;
                        text.push(c);
                        chars.next();
                        bump(c, &mut line, &mut col);
                    } else {
                        break;
                    }
                }
                if !any_digit {
                    return Err(syntax(tline, tcol, "integer", "`-`"));
                }
                let n: i64 = text
                    .parse()
                    .map_err(|_| syntax(tline, tcol, "integer", format!("`{text}`")))?;
                out.push(Spanned { tok: Tok::Int(n), line: tline, col: tcol });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut text = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        text.push(c);
                        chars.next();
                        bump(c, &mut line, &mut col);
                    } else {
                        break;
                    }
                }
                out.push(Spanned { tok: Tok::Ident(text), line: tline, col: tcol });
            }
            other => {
                return Err(syntax(tline, tcol, "token", format!("`{other}`")));
            }
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

// ---------------------------------------------------------------------------
// AST

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    Analyze(String),
    Pairing(String, String),
    Semiorth(String, String),
    Faltings(String),
}

/// A parsed, semantically validated request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisRequest {
    pub curve: Curve,
    pub objects: Vec<(String, FormalObject)>,
    pub assumptions: Vec<Assumption>,
    pub queries: Vec<Query>,
}

impl AnalysisRequest {
    pub fn object(&self, name: &str) -> Option<&FormalObject> {
        self.objects
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, o)| o)
    }
}

#[derive(Debug, Clone)]
struct PieceDecl {
    class: ChernPair,
    h0: Option<u64>,
    stable: bool,
    id: Option<String>,
    hn_only: bool,
    shift: i64,
    line: u32,
    col: u32,
}

#[derive(Debug, Clone)]
enum RawRef {
    Name(String, u32, u32),
    Positional(String, i64, u32, u32),
}

#[derive(Debug, Clone)]
struct RawAssume {
    source: RawRef,
    target: RawRef,
}

// ---------------------------------------------------------------------------
// parser

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect_tok(&mut self, want: Tok, what: &str) -> Result<Spanned, DslError> {
        let t = self.next();
        if t.tok == want {
            Ok(t)
        } else {
            Err(syntax(t.line, t.col, what, &t.tok))
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, u32, u32), DslError> {
        let t = self.next();
        match t.tok {
            Tok::Ident(s) => Ok((s, t.line, t.col)),
            other => Err(syntax(t.line, t.col, what, &other)),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), DslError> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) if s == kw => Ok(()),
            other => Err(syntax(t.line, t.col, &format!("`{kw}`"), other)),
        }
    }

    fn expect_int(&mut self, what: &str) -> Result<(i64, u32, u32), DslError> {
        let t = self.next();
        match t.tok {
            Tok::Int(n) => Ok((n, t.line, t.col)),
            other => Err(syntax(t.line, t.col, what, &other)),
        }
    }

    fn parse_piece(&mut self) -> Result<PieceDecl, DslError> {
        let (kw, line, col) = self.expect_ident("`bundle` or `tors`")?;
        self.expect_tok(Tok::LParen, "`(`")?;
        let decl = match kw.as_str() {
            "bundle" => {
                self.expect_keyword("r")?;
                self.expect_tok(Tok::Eq, "`=`")?;
                let (rank, rline, rcol) = self.expect_int("rank integer")?;
                self.expect_tok(Tok::Comma, "`,`")?;
                self.expect_keyword("d")?;
                self.expect_tok(Tok::Eq, "`=`")?;
                let (degree, _, _) = self.expect_int("degree integer")?;
                if rank < 1 {
                    if rank == 0 && degree == 0 {
                        return Err(semantic(rline, rcol, "zero class: rank 0 and degree 0"));
                    }
                    return Err(semantic(
                        rline,
                        rcol,
                        "bundle rank must be positive (use tors(len=..) for torsion)",
                    ));
                }
                if rank > u32::MAX as i64 {
                    return Err(semantic(rline, rcol, "rank too large"));
                }
                let class = ChernPair::bundle(rank as u32, degree)
                    .map_err(|e| semantic(rline, rcol, e.to_string()))?;
                let mut decl = PieceDecl {
                    class,
                    h0: None,
                    stable: false,
                    id: None,
                    hn_only: false,
                    shift: 0,
                    line,
                    col,
                };
                while self.peek().tok == Tok::Comma {
                    self.next();
                    let (attr, aline, acol) = self.expect_ident("attribute")?;
                    match attr.as_str() {
                        "h0" => {
                            self.expect_tok(Tok::Eq, "`=`")?;
                            let (v, vl, vc) = self.expect_int("h0 value")?;
                            if v < 0 {
                                return Err(semantic(vl, vc, "h0 must be non-negative"));
                            }
                            decl.h0 = Some(v as u64);
                        }
                        "stable" => decl.stable = true,
                        "id" => {
                            self.expect_tok(Tok::Eq, "`=`")?;
                            let (name, _, _) = self.expect_ident("id label")?;
                            decl.id = Some(name);
                        }
                        "hn_only" => decl.hn_only = true,
                        _ => {
                            return Err(syntax(
                                aline,
                                acol,
                                "`h0=`, `stable`, `id=` or `hn_only`",
                                format!("`{attr}`"),
                            ))
                        }
                    }
                }
                decl
            }
            "tors" => {
                self.expect_keyword("len")?;
                self.expect_tok(Tok::Eq, "`=`")?;
                let (len, lline, lcol) = self.expect_int("length integer")?;
                let class = ChernPair::torsion(len)
                    .map_err(|e| semantic(lline, lcol, e.to_string()))?;
                PieceDecl {
                    class,
                    h0: None,
                    stable: false,
                    id: None,
                    hn_only: false,
                    shift: 0,
                    line,
                    col,
                }
            }
            other => return Err(syntax(line, col, "`bundle` or `tors`", format!("`{other}`"))),
        };
        self.expect_tok(Tok::RParen, "`)`")?;
        let mut decl = decl;
        if self.peek().tok == Tok::LBracket {
            self.next();
            let (n, _, _) = self.expect_int("shift integer")?;
            self.expect_tok(Tok::RBracket, "`]`")?;
            decl.shift = n;
        }
        Ok(decl)
    }

    fn parse_ref(&mut self) -> Result<RawRef, DslError> {
        let (name, line, col) = self.expect_ident("piece reference")?;
        if self.peek().tok == Tok::Dot {
            self.next();
            let (idx, _, _) = self.expect_int("piece index")?;
            Ok(RawRef::Positional(name, idx, line, col))
        } else {
            Ok(RawRef::Name(name, line, col))
        }
    }
}

// ---------------------------------------------------------------------------
// semantic analysis

struct ObjectDecl {
    name: String,
    pieces: Vec<PieceDecl>,
    line: u32,
    col: u32,
}

fn build_object(decl: &ObjectDecl, genus: u32) -> Result<(FormalObject, Vec<String>), DslError> {
    // Assign labels: explicit id, or synthetic "NAME.i" where i is the
    // 1-based position in graded order (degree ascending), which is also
    // the order the pretty-printer emits. Positional references in the
    // source still resolve by declaration order, via the returned list.
    let mut graded_rank: Vec<usize> = (0..decl.pieces.len()).collect();
    graded_rank.sort_by_key(|&i| -decl.pieces[i].shift);
    let mut labels: Vec<String> = vec![String::new(); decl.pieces.len()];
    for (pos, &i) in graded_rank.iter().enumerate() {
        labels[i] = decl.pieces[i]
            .id
            .clone()
            .unwrap_or_else(|| format!("{}.{}", decl.name, pos + 1));
    }
    let mut by_degree: BTreeMap<i64, (Vec<SemistablePiece>, bool)> = BTreeMap::new();
    for (i, p) in decl.pieces.iter().enumerate() {
        let mut piece = SemistablePiece::new(p.class).with_id(labels[i].clone());
        if let Some(h0) = p.h0 {
            piece = piece
                .with_h0(h0)
                .map_err(|e| semantic(p.line, p.col, e.to_string()))?;
        }
        if p.stable {
            piece = piece
                .with_stable()
                .map_err(|e| semantic(p.line, p.col, e.to_string()))?;
        }
        let degree = -p.shift;
        let entry = by_degree.entry(degree).or_insert_with(|| (Vec::new(), false));
        entry.0.push(piece);
        if p.hn_only {
            entry.1 = true;
        }
    }
    let mut graded = BTreeMap::new();
    for (degree, (pieces, hn_only)) in by_degree {
        // genus-zero sheaves always split
        let splitting = if hn_only && genus != 0 {
            Splitting::HNOnly
        } else {
            Splitting::Split
        };
        let sheaf = FormalSheaf::new(pieces, splitting)
            .map_err(|e| semantic(decl.line, decl.col, e.to_string()))?;
        graded.insert(degree, sheaf);
    }
    let object =
        FormalObject::new(graded).map_err(|e| semantic(decl.line, decl.col, e.to_string()))?;
    Ok((object, labels))
}

fn resolve_ref(
    objects: &[(String, FormalObject)],
    decl_labels: &[(String, Vec<String>)],
    r: &RawRef,
) -> Result<String, DslError> {
    match r {
        RawRef::Positional(obj, idx, line, col) => {
            let (_, labels) = decl_labels
                .iter()
                .find(|(n, _)| n == obj)
                .ok_or_else(|| semantic(*line, *col, format!("unknown object `{obj}`")))?;
            if *idx < 1 || *idx as usize > labels.len() {
                return Err(semantic(
                    *line,
                    *col,
                    format!("object `{obj}` has no piece {idx} (it has {})", labels.len()),
                ));
            }
            Ok(labels[*idx as usize - 1].clone())
        }
        RawRef::Name(name, line, col) => {
            // an id label anywhere, or a single-piece object
            for (_, o) in objects {
                if o.pieces().any(|p| p.id.as_deref() == Some(name)) {
                    return Ok(name.clone());
                }
            }
            if let Some((_, o)) = objects.iter().find(|(n, _)| n == name) {
                let pieces: Vec<_> = o.pieces().collect();
                if pieces.len() == 1 {
                    return Ok(pieces[0].id.clone().expect("labelled"));
                }
                return Err(semantic(
                    *line,
                    *col,
                    format!("ambiguous reference `{name}`: object has several pieces, use `{name}.i`"),
                ));
            }
            Err(semantic(*line, *col, format!("dangling reference `{name}`")))
        }
    }
}

/// Parse DSL source into a validated request.
pub fn parse(source: &str) -> Result<AnalysisRequest, DslError> {
    let toks = lex(source)?;
    let mut p = Parser { toks, pos: 0 };

    p.expect_keyword("curve")?;
    p.expect_keyword("genus")?;
    let (genus, gline, gcol) = p.expect_int("genus integer")?;
    if genus < 0 {
        return Err(semantic(gline, gcol, "genus must be non-negative"));
    }
    let curve = Curve::new(genus as u32);

    let mut object_decls: Vec<ObjectDecl> = Vec::new();
    let mut raw_assumes: Vec<RawAssume> = Vec::new();
    let mut raw_queries: Vec<(Query, u32, u32)> = Vec::new();

    loop {
        let t = p.peek().clone();
        match &t.tok {
            Tok::Eof => break,
            Tok::Ident(kw) => match kw.as_str() {
                "object" => {
                    p.next();
                    let (name, line, col) = p.expect_ident("object name")?;
                    if object_decls.iter().any(|d| d.name == name) {
                        return Err(semantic(line, col, format!("duplicate object `{name}`")));
                    }
                    p.expect_tok(Tok::Eq, "`=`")?;
                    let mut pieces = vec![p.parse_piece()?];
                    while p.peek().tok == Tok::Plus {
                        p.next();
                        pieces.push(p.parse_piece()?);
                    }
                    object_decls.push(ObjectDecl { name, pieces, line, col });
                }
                "assume" => {
                    p.next();
                    p.expect_keyword("hom")?;
                    p.expect_tok(Tok::LParen, "`(`")?;
                    let source = p.parse_ref()?;
                    p.expect_tok(Tok::Comma, "`,`")?;
                    let target = p.parse_ref()?;
                    p.expect_tok(Tok::RParen, "`)`")?;
                    p.expect_tok(Tok::Eq, "`=`")?;
                    let (zero, zl, zc) = p.expect_int("`0`")?;
                    if zero != 0 {
                        return Err(syntax(zl, zc, "`0`", format!("`{zero}`")));
                    }
                    raw_assumes.push(RawAssume { source, target });
                }
                "analyze" => {
                    p.next();
                    let (name, line, col) = p.expect_ident("object name")?;
                    raw_queries.push((Query::Analyze(name), line, col));
                }
                "pairing" => {
                    p.next();
                    let (a, line, col) = p.expect_ident("object name")?;
                    let (b, _, _) = p.expect_ident("object name")?;
                    raw_queries.push((Query::Pairing(a, b), line, col));
                }
                "semiorth" => {
                    p.next();
                    let (a, line, col) = p.expect_ident("object name")?;
                    let (b, _, _) = p.expect_ident("object name")?;
                    raw_queries.push((Query::Semiorth(a, b), line, col));
                }
                "faltings" => {
                    p.next();
                    let (name, line, col) = p.expect_ident("object name")?;
                    raw_queries.push((Query::Faltings(name), line, col));
                }
                other => {
                    return Err(syntax(
                        t.line,
                        t.col,
                        "`object`, `assume`, `analyze`, `pairing`, `semiorth` or `faltings`",
                        format!("`{other}`"),
                    ))
                }
            },
            other => {
                return Err(syntax(t.line, t.col, "statement keyword", other));
            }
        }
    }

    let mut objects = Vec::new();
    let mut decl_labels: Vec<(String, Vec<String>)> = Vec::new();
    for decl in &object_decls {
        let (o, labels) = build_object(decl, curve.genus())?;
        objects.push((decl.name.clone(), o));
        decl_labels.push((decl.name.clone(), labels));
    }

    let mut assumptions = Vec::new();
    for ra in &raw_assumes {
        let source = resolve_ref(&objects, &decl_labels, &ra.source)?;
        let target = resolve_ref(&objects, &decl_labels, &ra.target)?;
        assumptions.push(Assumption::hom_vanishes(source, target));
    }

    let mut queries = Vec::new();
    for (q, line, col) in raw_queries {
        let names: Vec<&String> = match &q {
            Query::Analyze(n) | Query::Faltings(n) => vec![n],
            Query::Pairing(a, b) | Query::Semiorth(a, b) => vec![a, b],
        };
        for n in names {
            if !objects.iter().any(|(name, _)| name == n) {
                return Err(semantic(line, col, format!("query references undeclared object `{n}`")));
            }
        }
        queries.push(q);
    }

    Ok(AnalysisRequest {
        curve,
        objects,
        assumptions,
        queries,
    })
}

// ---------------------------------------------------------------------------
// pretty-printer

fn print_ref(label: &str) -> String {
    // synthetic labels are positional references
    label.to_string()
}

/// Regenerate DSL source from a request. Reparsing the output yields an
/// equivalent request.
pub fn pretty_print(req: &AnalysisRequest) -> String {
    let mut out = String::new();
    out.push_str(&format!("curve genus {}\n", req.curve.genus()));
    for (name, o) in &req.objects {
        let mut parts = Vec::new();
        for (degree, sheaf) in o.graded() {
            let first_bundle = sheaf
                .pieces()
                .iter()
                .position(|p| !p.class.is_torsion());
            for (i, p) in sheaf.pieces().iter().enumerate() {
                let mut s = if let Some(len) = p.class.length() {
                    format!("tors(len={len})")
                } else {
                    let mut s = format!("bundle(r={},d={}", p.class.rank(), p.class.degree());
                    if let Some(h0) = p.h0 {
                        s.push_str(&format!(",h0={h0}"));
                    }
                    if p.stable {
                        s.push_str(",stable");
                    }
                    if let Some(id) = &p.id {
                        if !id.contains('.') {
                            s.push_str(&format!(",id={id}"));
                        }
                    }
                    if sheaf.splitting() == Splitting::HNOnly && Some(i) == first_bundle {
                        s.push_str(",hn_only");
                    }
                    s.push(')');
                    s
                };
                if *degree != 0 {
                    s.push_str(&format!("[{}]", -degree));
                }
                parts.push(s);
            }
        }
        out.push_str(&format!("object {} = {}\n", name, parts.join(" + ")));
    }
    for a in &req.assumptions {
        out.push_str(&format!(
            "assume hom({}, {}) = 0\n",
            print_ref(&a.source),
            print_ref(&a.target)
        ));
    }
    for q in &req.queries {
        match q {
            Query::Analyze(n) => out.push_str(&format!("analyze {n}\n")),
            Query::Pairing(a, b) => out.push_str(&format!("pairing {a} {b}\n")),
            Query::Semiorth(a, b) => out.push_str(&format!("semiorth {a} {b}\n")),
            Query::Faltings(n) => out.push_str(&format!("faltings {n}\n")),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::Stability;

    #[test]
    fn parses_the_two_line_bundle_example() {
        let src = "curve genus 2\nobject E = bundle(r=1,d=0) + bundle(r=1,d=1,id=L)\nassume hom(E.1, L) = 0\nanalyze E\n";
        let req = parse(src).unwrap();
        assert_eq!(req.curve.genus(), 2);
        assert_eq!(req.objects.len(), 1);
        assert_eq!(
            req.assumptions,
            vec![Assumption::hom_vanishes("E.1", "L")]
        );
        assert_eq!(req.queries, vec![Query::Analyze("E".into())]);
        let o = req.object("E").unwrap();
        assert_eq!(o.classify().stability, Stability::NotSemistable);
    }

    #[test]
    fn parses_shifted_piece() {
        let src = "curve genus 0\nobject F = bundle(r=1,d=2)[3]\nanalyze F\n";
        let req = parse(src).unwrap();
        let o = req.object("F").unwrap();
        assert_eq!(o.graded().keys().copied().collect::<Vec<_>>(), vec![-3]);
    }

    #[test]
    fn zero_class_is_a_semantic_error() {
        let src = "curve genus 1\nobject X = bundle(r=0,d=0)\n";
        match parse(src) {
            Err(DslError::Semantic { message, .. }) => {
                assert!(message.contains("zero class"), "{message}")
            }
            other => panic!("expected semantic error, got {other:?}"),
        }
    }

    #[test]
    fn syntax_error_carries_position() {
        let src = "curve genus 2\nobject E = bundle(r=1 d=0)\n";
        match parse(src) {
            Err(DslError::Syntax { line, col, .. }) => {
                assert_eq!(line, 2);
                assert!(col > 1);
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_object_rejected() {
        let src = "curve genus 2\nobject E = bundle(r=1,d=0)\nobject E = tors(len=1)\n";
        assert!(matches!(parse(src), Err(DslError::Semantic { .. })));
    }

    #[test]
    fn dangling_reference_rejected() {
        let src = "curve genus 2\nobject E = bundle(r=1,d=0)\nassume hom(E, Ghost) = 0\n";
        assert!(matches!(parse(src), Err(DslError::Semantic { .. })));
    }

    #[test]
    fn query_on_undeclared_object_rejected() {
        let src = "curve genus 2\nanalyze E\n";
        assert!(matches!(parse(src), Err(DslError::Semantic { .. })));
    }

    #[test]
    fn genus_zero_coerces_hn_only_to_split() {
        let src = "curve genus 0\nobject E = bundle(r=2,d=1,hn_only) + bundle(r=1,d=5)\nanalyze E\n";
        let req = parse(src).unwrap();
        let o = req.object("E").unwrap();
        assert!(o.graded().values().all(|s| s.is_split()));
    }

    #[test]
    fn hn_only_respected_at_higher_genus() {
        let src = "curve genus 2\nobject E = bundle(r=2,d=1,hn_only) + bundle(r=1,d=5)\n";
        let req = parse(src).unwrap();
        let o = req.object("E").unwrap();
        assert!(o.graded().values().all(|s| !s.is_split()));
    }

    #[test]
    fn round_trip_is_stable() {
        let src = "curve genus 2\nobject E = bundle(r=1,d=0) + bundle(r=1,d=1,h0=0,id=L) + tors(len=2)[1]\nassume hom(E.1, L) = 0\nanalyze E\nfaltings E\n";
        let req = parse(src).unwrap();
        let printed = pretty_print(&req);
        let reparsed = parse(&printed).unwrap();
        assert_eq!(req, reparsed);
    }
}
