//! Plain-text code bundles.
//!
//! ```text
//! linearcode q n k
//! modulus c0,c1,...            (fields that are not prime)
//! d <value> <method>           (optional)
//! <G in matrix text format>
//! <H in matrix text format>
//! expander n r c d seed        (optional, then r adjacency lines)
//! alternant p m0 m r           (optional, then modulus/a/y lines)
//! provenance <text>            (any number)
//! ```
//!
//! CSS bundles start with `csscode q n k [n0]`, carry `dx`/`dz` lines and the
//! matrices H_X then H_Z. Stabilizer bundles start with `stabcode q n k` and
//! carry one matrix of (x | z) rows. Writing a parsed bundle reproduces the
//! input byte for byte.

use std::fmt::Write as _;

use thiserror::Error;

use crate::codes::{AlternantData, CertifiedDistance, CodeError, ExpanderGraph, LinearCode};
use crate::css::{CssCode, CssError, StabilizerCode};
use crate::galois::FieldSpec;
use crate::matgf::{MatError, MatrixGF};

#[derive(Debug, Error)]
pub enum BundleError {
    #[error("line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("bundle content is inconsistent: {0}")]
    Code(#[from] CodeError),
    #[error("bundle content is inconsistent: {0}")]
    Css(#[from] CssError),
}

pub type Result<T> = std::result::Result<T, BundleError>;

#[derive(Clone, Debug)]
pub enum Bundle {
    Linear(LinearCode),
    Css(CssCode),
    Stabilizer(StabilizerCode),
}

impl Bundle {
    pub fn kind(&self) -> &'static str {
        match self {
            Bundle::Linear(_) => "linearcode",
            Bundle::Css(_) => "csscode",
            Bundle::Stabilizer(_) => "stabcode",
        }
    }

    pub fn parse(text: &str) -> Result<Bundle> {
        let mut r = Reader::new(text);
        let (line, toks) = r.peek_tokens().ok_or_else(|| r.err(1, "empty bundle"))?;
        match toks[0].0 {
            "linearcode" => parse_linear(&mut r).map(Bundle::Linear),
            "csscode" => parse_css(&mut r).map(Bundle::Css),
            "stabcode" => parse_stab(&mut r).map(Bundle::Stabilizer),
            other => Err(BundleError::Parse {
                line,
                col: 1,
                msg: format!("unknown bundle kind `{other}`"),
            }),
        }
    }
}

impl std::fmt::Display for Bundle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&match self {
            Bundle::Linear(c) => write_linear(c),
            Bundle::Css(c) => write_css(c),
            Bundle::Stabilizer(c) => write_stab(c),
        })
    }
}

fn modulus_line(out: &mut String, f: &FieldSpec) {
    if f.degree() > 1 {
        let m: Vec<String> = f.modulus().iter().map(|c| c.to_string()).collect();
        writeln!(out, "modulus {}", m.join(",")).unwrap();
    }
}

fn join(v: &[impl ToString]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn write_linear(c: &LinearCode) -> String {
    let mut out = String::new();
    writeln!(out, "linearcode {} {} {}", c.q(), c.n(), c.k()).unwrap();
    modulus_line(&mut out, c.field());
    if let Some(d) = &c.d_certified {
        writeln!(out, "d {} {}", d.value, d.method).unwrap();
    }
    write!(out, "{}", c.generator()).unwrap();
    write!(out, "{}", c.parity_check()).unwrap();
    if let Some(g) = &c.graph {
        writeln!(out, "expander {} {} {} {} {}", g.n, g.r, g.c, g.d, g.seed).unwrap();
        for bits in &g.check_bits {
            writeln!(out, "{}", join(bits)).unwrap();
        }
    }
    if let Some(a) = &c.alternant {
        writeln!(
            out,
            "alternant {} {} {} {}",
            a.ext.p(),
            a.ext.m0(),
            a.ext.m(),
            a.r
        )
        .unwrap();
        modulus_line(&mut out, &a.ext);
        writeln!(out, "a {}", join(&a.a)).unwrap();
        writeln!(out, "y {}", join(&a.y)).unwrap();
    }
    for p in &c.provenance {
        writeln!(out, "provenance {p}").unwrap();
    }
    out
}

pub fn write_css(c: &CssCode) -> String {
    let mut out = String::new();
    write!(out, "csscode {} {} {}", c.q(), c.n(), c.k()).unwrap();
    if let Some(n0) = c.n0 {
        write!(out, " {n0}").unwrap();
    }
    out.push('\n');
    modulus_line(&mut out, c.field());
    for (tag, d) in [("dx", &c.dx), ("dz", &c.dz)] {
        if let Some(d) = d {
            writeln!(out, "{tag} {} {}", d.value, d.method).unwrap();
        }
    }
    write!(out, "{}", c.hx()).unwrap();
    write!(out, "{}", c.hz()).unwrap();
    for p in &c.provenance {
        writeln!(out, "provenance {p}").unwrap();
    }
    out
}

pub fn write_stab(c: &StabilizerCode) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "stabcode {} {} {}",
        c.generators().field().size(),
        c.n(),
        c.k()
    )
    .unwrap();
    modulus_line(&mut out, c.generators().field());
    if let Some(d) = &c.d {
        writeln!(out, "d {} {}", d.value, d.method).unwrap();
    }
    write!(out, "{}", c.generators()).unwrap();
    for p in &c.provenance {
        writeln!(out, "provenance {p}").unwrap();
    }
    out
}

struct Reader<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

type Tokens<'a> = Vec<(&'a str, usize)>;

fn tokenize(line: &str) -> Tokens<'_> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line
        .char_indices()
        .chain(std::iter::once((line.len(), ' ')))
    {
        match (start, ch.is_whitespace()) {
            (None, false) => start = Some(i),
            (Some(s), true) => {
                out.push((&line[s..i], s + 1));
                start = None;
            }
            _ => {}
        }
    }
    out
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| {
                let t = l.trim();
                !t.is_empty() && !t.starts_with('#')
            })
            .collect();
        Reader { lines, pos: 0 }
    }

    fn err(&self, line: usize, msg: &str) -> BundleError {
        BundleError::Parse {
            line,
            col: 1,
            msg: msg.into(),
        }
    }

    fn eof_line(&self) -> usize {
        self.lines.last().map_or(1, |l| l.0 + 1)
    }

    fn peek_tokens(&self) -> Option<(usize, Tokens<'a>)> {
        self.lines.get(self.pos).map(|&(n, l)| (n, tokenize(l)))
    }

    fn next_tokens(&mut self, what: &str) -> Result<(usize, Tokens<'a>)> {
        let t = self
            .peek_tokens()
            .ok_or_else(|| self.err(self.eof_line(), &format!("missing {what}")))?;
        self.pos += 1;
        Ok(t)
    }

    fn keyword_is(&self, kw: &str) -> bool {
        self.peek_tokens().is_some_and(|(_, t)| t[0].0 == kw)
    }

    /// The next matrix: header line plus its rows, parsed with the original line numbers.
    fn matrix(&mut self, what: &str) -> Result<MatrixGF> {
        let (line, toks) = self.next_tokens(what)?;
        let rows = toks
            .get(1)
            .and_then(|t| t.0.parse::<usize>().ok())
            .ok_or_else(|| BundleError::Parse {
                line,
                col: 1,
                msg: format!("expected the `q rows cols` header of {what}"),
            })?;
        let start = self.pos - 1;
        if self.pos + rows > self.lines.len() {
            return Err(self.err(self.eof_line(), &format!("{what} is missing rows")));
        }
        self.pos += rows;
        let text: String = self.lines[start..self.pos]
            .iter()
            .map(|(_, l)| format!("{l}\n"))
            .collect();
        let lines: Vec<usize> = self.lines[start..self.pos].iter().map(|l| l.0).collect();
        MatrixGF::parse(&text).map_err(|e| match e {
            MatError::Parse { line, col, msg } => BundleError::Parse {
                line: lines[line - 1],
                col,
                msg,
            },
            other => BundleError::Parse {
                line: lines[0],
                col: 1,
                msg: other.to_string(),
            },
        })
    }

    fn provenance(&mut self) -> Vec<String> {
        let mut out = Vec::new();
        while let Some(&(_, l)) = self.lines.get(self.pos) {
            match l.strip_prefix("provenance ") {
                Some(rest) => out.push(rest.to_string()),
                None => break,
            }
            self.pos += 1;
        }
        out
    }

    fn finish(&self) -> Result<()> {
        match self.lines.get(self.pos) {
            None => Ok(()),
            Some(&(line, _)) => Err(self.err(line, "unexpected trailing content")),
        }
    }
}

fn num<T: std::str::FromStr>(line: usize, tok: Option<&(&str, usize)>, what: &str) -> Result<T> {
    let &(s, col) = tok.ok_or(BundleError::Parse {
        line,
        col: 1,
        msg: format!("missing {what}"),
    })?;
    s.parse().map_err(|_| BundleError::Parse {
        line,
        col,
        msg: format!("`{s}` is not a valid {what}"),
    })
}

fn expect_len(line: usize, toks: &Tokens<'_>, n: usize, what: &str) -> Result<()> {
    if toks.len() != n {
        return Err(BundleError::Parse {
            line,
            col: 1,
            msg: format!(
                "{what} line needs {} values, found {}",
                n - 1,
                toks.len() - 1
            ),
        });
    }
    Ok(())
}

fn field_of(r: &mut Reader<'_>, q: u64, line: usize) -> Result<FieldSpec> {
    let field = FieldSpec::gf(q).map_err(|e| BundleError::Parse {
        line,
        col: 1,
        msg: e.to_string(),
    })?;
    if field.degree() > 1 {
        let (ml, mt) = r.next_tokens("modulus line")?;
        let modulus = modulus_values(ml, &mt)?;
        if modulus != field.modulus() {
            return Err(BundleError::Parse {
                line: ml,
                col: 1,
                msg: "only the default modulus is supported for code fields".into(),
            });
        }
    }
    Ok(field)
}

fn modulus_values(line: usize, toks: &Tokens<'_>) -> Result<Vec<u32>> {
    if toks[0].0 != "modulus" || toks.len() != 2 {
        return Err(BundleError::Parse {
            line,
            col: 1,
            msg: "expected `modulus c0,c1,...`".into(),
        });
    }
    let (list, col) = toks[1];
    list.split(',')
        .map(|c| {
            c.parse::<u32>().map_err(|_| BundleError::Parse {
                line,
                col,
                msg: format!("bad coefficient `{c}`"),
            })
        })
        .collect()
}

fn distance_line(line: usize, toks: &Tokens<'_>) -> Result<CertifiedDistance> {
    if toks.len() < 3 {
        return Err(BundleError::Parse {
            line,
            col: 1,
            msg: "distance line needs a value and a method".into(),
        });
    }
    Ok(CertifiedDistance {
        value: num(line, toks.get(1), "distance")?,
        method: toks[2..].iter().map(|t| t.0).collect::<Vec<_>>().join(" "),
    })
}

fn check_dims(line: usize, m: &MatrixGF, field: &FieldSpec, cols: usize, what: &str) -> Result<()> {
    if m.field() != field || m.cols() != cols {
        return Err(BundleError::Parse {
            line,
            col: 1,
            msg: format!(
                "{what} must be over GF({}) with {cols} columns",
                field.size()
            ),
        });
    }
    Ok(())
}

fn parse_linear(r: &mut Reader<'_>) -> Result<LinearCode> {
    let (hl, h) = r.next_tokens("header")?;
    expect_len(hl, &h, 4, "linearcode")?;
    let q: u64 = num(hl, h.get(1), "field size")?;
    let n: usize = num(hl, h.get(2), "length")?;
    let k: usize = num(hl, h.get(3), "dimension")?;
    let field = field_of(r, q, hl)?;
    let mut d = None;
    if r.keyword_is("d") {
        let (l, t) = r.next_tokens("distance")?;
        d = Some(distance_line(l, &t)?);
    }
    let gl = r.peek_tokens().map_or(hl, |t| t.0);
    let g = r.matrix("generator matrix")?;
    check_dims(gl, &g, &field, n, "G")?;
    let hl2 = r.peek_tokens().map_or(hl, |t| t.0);
    let hm = r.matrix("parity-check matrix")?;
    check_dims(hl2, &hm, &field, n, "H")?;
    let mut code = LinearCode::from_pair(g, hm)?;
    if code.k() != k {
        return Err(BundleError::Parse {
            line: hl,
            col: 1,
            msg: format!("header says k = {k} but G has rank {}", code.k()),
        });
    }
    code.d_certified = d;
    if r.keyword_is("expander") {
        let (l, t) = r.next_tokens("expander")?;
        expect_len(l, &t, 6, "expander")?;
        let (en, er, c, dd, seed) = (
            num(l, t.get(1), "n")?,
            num(l, t.get(2), "r")?,
            num(l, t.get(3), "c")?,
            num(l, t.get(4), "d")?,
            num(l, t.get(5), "seed")?,
        );
        let mut check_bits = Vec::with_capacity(er);
        for _ in 0..er {
            let (al, at) = r.next_tokens("adjacency line")?;
            let bits = at
                .iter()
                .map(|tok| num::<usize>(al, Some(tok), "bit index"))
                .collect::<Result<Vec<_>>>()?;
            if bits.iter().any(|&b| b >= en) {
                return Err(BundleError::Parse {
                    line: al,
                    col: 1,
                    msg: "bit index out of range".into(),
                });
            }
            check_bits.push(bits);
        }
        let mut bit_checks = vec![Vec::new(); en];
        for (j, bits) in check_bits.iter().enumerate() {
            for &b in bits {
                bit_checks[b].push(j);
            }
        }
        let graph = ExpanderGraph {
            n: en,
            r: er,
            c,
            d: dd,
            seed,
            bit_checks,
            check_bits,
        };
        let rows: Vec<Vec<usize>> = (0..code.parity_check().rows())
            .map(|j| {
                code.parity_check()
                    .row(j)
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        if en != n || rows != graph.check_bits {
            return Err(BundleError::Parse {
                line: l,
                col: 1,
                msg: "adjacency lists disagree with H".into(),
            });
        }
        code.graph = Some(graph);
    }
    if r.keyword_is("alternant") {
        let (l, t) = r.next_tokens("alternant")?;
        expect_len(l, &t, 5, "alternant")?;
        let (p, m0, m, rr) = (
            num(l, t.get(1), "p")?,
            num(l, t.get(2), "m0")?,
            num(l, t.get(3), "m")?,
            num(l, t.get(4), "r")?,
        );
        let mut ext = FieldSpec::new(p, m0, m).map_err(|e| BundleError::Parse {
            line: l,
            col: 1,
            msg: e.to_string(),
        })?;
        if ext.degree() > 1 {
            let (ml, mt) = r.next_tokens("modulus line")?;
            let modulus = modulus_values(ml, &mt)?;
            ext = FieldSpec::with_modulus(p, m0, m, Some(modulus)).map_err(|e| {
                BundleError::Parse {
                    line: ml,
                    col: 1,
                    msg: e.to_string(),
                }
            })?;
        }
        let mut vec_line = |tag: &str| -> Result<Vec<u32>> {
            let (vl, vt) = r.next_tokens(tag)?;
            if vt[0].0 != tag {
                return Err(BundleError::Parse {
                    line: vl,
                    col: 1,
                    msg: format!("expected `{tag}` line"),
                });
            }
            let v = vt[1..]
                .iter()
                .map(|tok| num::<u32>(vl, Some(tok), "field element"))
                .collect::<Result<Vec<_>>>()?;
            if v.len() != n || v.iter().any(|&x| x >= ext.size()) {
                return Err(BundleError::Parse {
                    line: vl,
                    col: 1,
                    msg: format!("`{tag}` needs {n} elements of GF({})", ext.size()),
                });
            }
            Ok(v)
        };
        let a = vec_line("a")?;
        let y = vec_line("y")?;
        code.alternant = Some(AlternantData { ext, a, y, r: rr });
    }
    code.provenance = r.provenance();
    r.finish()?;
    Ok(code)
}

fn parse_css(r: &mut Reader<'_>) -> Result<CssCode> {
    let (hl, h) = r.next_tokens("header")?;
    if h.len() != 4 && h.len() != 5 {
        return Err(BundleError::Parse {
            line: hl,
            col: 1,
            msg: "csscode header is `csscode q n k [n0]`".into(),
        });
    }
    let q: u64 = num(hl, h.get(1), "field size")?;
    let n: usize = num(hl, h.get(2), "length")?;
    let k: usize = num(hl, h.get(3), "dimension")?;
    let n0: Option<usize> = if h.len() == 5 {
        Some(num(hl, h.get(4), "block length")?)
    } else {
        None
    };
    let field = field_of(r, q, hl)?;
    let (mut dx, mut dz) = (None, None);
    for tag in ["dx", "dz"] {
        if r.keyword_is(tag) {
            let (l, t) = r.next_tokens(tag)?;
            let d = Some(distance_line(l, &t)?);
            if tag == "dx" {
                dx = d;
            } else {
                dz = d;
            }
        }
    }
    let xl = r.peek_tokens().map_or(hl, |t| t.0);
    let hx = r.matrix("H_X")?;
    check_dims(xl, &hx, &field, n, "H_X")?;
    let zl = r.peek_tokens().map_or(hl, |t| t.0);
    let hz = r.matrix("H_Z")?;
    check_dims(zl, &hz, &field, n, "H_Z")?;
    let mut code = CssCode::unchecked(hx, hz, k);
    code.dx = dx;
    code.dz = dz;
    code.n0 = n0;
    code.provenance = r.provenance();
    r.finish()?;
    Ok(code)
}

fn parse_stab(r: &mut Reader<'_>) -> Result<StabilizerCode> {
    let (hl, h) = r.next_tokens("header")?;
    expect_len(hl, &h, 4, "stabcode")?;
    let q: u64 = num(hl, h.get(1), "field size")?;
    let n: usize = num(hl, h.get(2), "length")?;
    let k: usize = num(hl, h.get(3), "dimension")?;
    let field = field_of(r, q, hl)?;
    let mut d = None;
    if r.keyword_is("d") {
        let (l, t) = r.next_tokens("distance")?;
        d = Some(distance_line(l, &t)?);
    }
    let gl = r.peek_tokens().map_or(hl, |t| t.0);
    let g = r.matrix("generator matrix")?;
    check_dims(gl, &g, &field, 2 * n, "generators")?;
    let mut code = StabilizerCode::new(g)?;
    if code.k() != k {
        return Err(BundleError::Parse {
            line: hl,
            col: 1,
            msg: format!("header says k = {k} but generators give {}", code.k()),
        });
    }
    code.d = d;
    code.provenance = r.provenance();
    r.finish()?;
    Ok(code)
}
