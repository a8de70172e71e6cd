//! The line-oriented `.dga` text format.
//!
//! ```text
//! # comment
//! ring Z                      (or: ring F3, ring F4, ...)
//! h1 rank 2 names mu1 lambda1 (omitted when the rank is 0)
//! gen c deg 2                 (append `mixed` for mixed chords)
//! gen c1 deg 1
//! d c = 0
//! d c1 = 1 + lambda1 + mu1*lambda1
//! ```
//!
//! Polynomials are `+`/`-`-joined terms; a term is an optional integer
//! followed by `*`-joined factors; a factor is an H₁ variable with an
//! optional `^<int>` exponent, or a generator name (order preserved).
//! Over GF(p^k) with k > 1 the integer literals are element codes in
//! [0, q). Parsing verifies the differential unless told otherwise;
//! rendering produces the canonical form, which round-trips.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::{FreeAlgebra, Generator, NcPoly, Word};
use crate::dga::Dga;
use crate::ring::{is_identifier, GroupRingElem, RingSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub message: String,
}

impl Diagnostic {
    fn new(line: usize, message: impl Into<String>) -> Self {
        Diagnostic {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    /// Grammar or name-resolution problems.
    Syntax(Vec<Diagnostic>),
    /// The document parsed, but the differential fails verification.
    Verify(Vec<Diagnostic>),
}

impl ParseError {
    pub fn diagnostics(&self) -> &[Diagnostic] {
        match self {
            ParseError::Syntax(d) | ParseError::Verify(d) => d,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.diagnostics().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", d)?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Name(String),
    Star,
    Caret,
    Plus,
    Minus,
    Eq,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{}", n),
            Tok::Name(s) => write!(f, "{}", s),
            Tok::Star => write!(f, "*"),
            Tok::Caret => write!(f, "^"),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Eq => write!(f, "="),
        }
    }
}

fn tokenize(line: &str, lineno: usize) -> Result<Vec<Tok>, Diagnostic> {
    let mut toks = Vec::new();
    let bytes = line.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            '*' => {
                toks.push(Tok::Star);
                i += 1;
            }
            '^' => {
                toks.push(Tok::Caret);
                i += 1;
            }
            '+' => {
                toks.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                toks.push(Tok::Minus);
                i += 1;
            }
            '=' => {
                toks.push(Tok::Eq);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &line[start..i];
                let n = text.parse::<u64>().map_err(|_| {
                    Diagnostic::new(lineno, format!("integer literal {} is too large", text))
                })?;
                toks.push(Tok::Int(n));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push(Tok::Name(line[start..i].to_string()));
            }
            other => {
                return Err(Diagnostic::new(
                    lineno,
                    format!("unexpected character '{}'", other),
                ))
            }
        }
    }
    Ok(toks)
}

fn int_coeff(
    spec: &Arc<RingSpec>,
    n: u64,
    negative: bool,
    lineno: usize,
) -> Result<GroupRingElem, Diagnostic> {
    if let Some(f) = spec.field() {
        if f.degree() > 1 {
            if n >= f.q() {
                return Err(Diagnostic::new(
                    lineno,
                    format!(
                        "{} is not a GF({}) element code (codes run 0..{})",
                        n,
                        f.q(),
                        f.q()
                    ),
                ));
            }
            let e = GroupRingElem::from_code(spec, n)
                .map_err(|e| Diagnostic::new(lineno, e.to_string()))?;
            return Ok(if negative { e.neg() } else { e });
        }
    }
    let mut v = BigInt::from(n);
    if negative {
        v = -v;
    }
    Ok(GroupRingElem::from_bigint(spec, &v))
}

fn parse_poly(
    toks: &[Tok],
    lineno: usize,
    algebra: &Arc<FreeAlgebra>,
) -> Result<NcPoly, Diagnostic> {
    let spec = algebra.spec().clone();
    let rank = spec.h1_rank();
    let mut out = NcPoly::zero(algebra);
    let mut i = 0;
    if toks.is_empty() {
        return Err(Diagnostic::new(lineno, "empty polynomial"));
    }
    loop {
        let mut negative = false;
        if let Some(Tok::Minus) = toks.get(i) {
            negative = true;
            i += 1;
        } else if let Some(Tok::Plus) = toks.get(i) {
            i += 1;
        }
        let mut numeral: Option<u64> = None;
        let mut expect_factor = true;
        if let Some(Tok::Int(n)) = toks.get(i) {
            numeral = Some(*n);
            i += 1;
            expect_factor = false;
            if let Some(Tok::Star) = toks.get(i) {
                i += 1;
                expect_factor = true;
            } else if matches!(toks.get(i), Some(Tok::Name(_))) {
                return Err(Diagnostic::new(
                    lineno,
                    "factors must be joined with '*'".to_string(),
                ));
            }
        }
        let mut exps = vec![0i64; rank];
        let mut word: Vec<crate::algebra::GenId> = Vec::new();
        while let Some(Tok::Name(name)) = toks.get(i) {
            expect_factor = false;
            i += 1;
            let mut exponent: i64 = 1;
            let mut has_caret = false;
            if let Some(Tok::Caret) = toks.get(i) {
                has_caret = true;
                i += 1;
                let mut exp_negative = false;
                if let Some(Tok::Minus) = toks.get(i) {
                    exp_negative = true;
                    i += 1;
                }
                match toks.get(i) {
                    Some(Tok::Int(e)) => {
                        let e = i64::try_from(*e).map_err(|_| {
                            Diagnostic::new(lineno, "exponent is too large".to_string())
                        })?;
                        exponent = if exp_negative { -e } else { e };
                        i += 1;
                    }
                    _ => {
                        return Err(Diagnostic::new(
                            lineno,
                            "expected an integer exponent after '^'".to_string(),
                        ))
                    }
                }
            }
            if let Some(h) = spec.h1_index(name) {
                exps[h] += exponent;
            } else if let Some(g) = algebra.gen_id(name) {
                if has_caret {
                    return Err(Diagnostic::new(
                        lineno,
                        format!(
                            "exponents only apply to H1 variables, not generator '{}'",
                            name
                        ),
                    ));
                }
                word.push(g);
            } else {
                return Err(Diagnostic::new(
                    lineno,
                    format!("unknown identifier '{}'", name),
                ));
            }
            match toks.get(i) {
                Some(Tok::Star) => {
                    expect_factor = true;
                    i += 1;
                }
                _ => break,
            }
        }
        if expect_factor {
            return Err(Diagnostic::new(
                lineno,
                format!(
                    "expected a factor{}",
                    toks.get(i)
                        .map_or(String::new(), |t| format!(", found '{}'", t))
                ),
            ));
        }
        let mut coeff = int_coeff(&spec, numeral.unwrap_or(1), negative, lineno)?;
        coeff = coeff
            .mul(
                &GroupRingElem::monomial(&spec, &exps)
                    .map_err(|e| Diagnostic::new(lineno, e.to_string()))?,
            )
            .map_err(|e| Diagnostic::new(lineno, e.to_string()))?;
        let term = NcPoly::term(algebra, coeff, Word::from_ids(word))
            .map_err(|e| Diagnostic::new(lineno, e.to_string()))?;
        out = out
            .add(&term)
            .map_err(|e| Diagnostic::new(lineno, e.to_string()))?;
        match toks.get(i) {
            None => return Ok(out),
            Some(Tok::Plus) | Some(Tok::Minus) => continue,
            Some(t) => {
                return Err(Diagnostic::new(
                    lineno,
                    format!("expected '+' or '-', found '{}'", t),
                ))
            }
        }
    }
}

/// Parses a `.dga` document. With `verify` set (the normal mode) the
/// differential must pass verification; grammar and name problems are
/// reported as [`ParseError::Syntax`], a failing differential as
/// [`ParseError::Verify`], each with line-positioned diagnostics.
pub fn parse_dga(text: &str, verify: bool) -> Result<Dga, ParseError> {
    let mut diags: Vec<Diagnostic> = Vec::new();
    let mut spec: Option<Arc<RingSpec>> = None;
    let mut ring_line = 0usize;
    let mut h1_seen = false;
    let mut gens: Vec<(Generator, usize)> = Vec::new();
    let mut h1_names: Vec<String> = Vec::new();
    let mut order: u64 = 0;
    let mut algebra: Option<Arc<FreeAlgebra>> = None;
    let mut diffs: BTreeMap<String, (NcPoly, usize)> = BTreeMap::new();

    let finalize_algebra = |spec: &Option<Arc<RingSpec>>,
                            gens: &[(Generator, usize)],
                            diags: &mut Vec<Diagnostic>,
                            lineno: usize|
     -> Option<Arc<FreeAlgebra>> {
        let spec = spec.clone()?;
        match FreeAlgebra::new(spec, gens.iter().map(|(g, _)| g.clone()).collect()) {
            Ok(a) => Some(a),
            Err(e) => {
                diags.push(Diagnostic::new(lineno, e.to_string()));
                None
            }
        }
    };

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let toks = match tokenize(line, lineno) {
            Ok(t) => t,
            Err(d) => {
                diags.push(d);
                continue;
            }
        };
        let keyword = match &toks[0] {
            Tok::Name(s) => s.as_str(),
            t => {
                diags.push(Diagnostic::new(lineno, format!("unexpected '{}'", t)));
                continue;
            }
        };
        match keyword {
            "ring" => {
                if spec.is_some() {
                    diags.push(Diagnostic::new(lineno, "duplicate ring line"));
                    continue;
                }
                if h1_seen || !gens.is_empty() || !diffs.is_empty() {
                    diags.push(Diagnostic::new(lineno, "ring line must come first"));
                    continue;
                }
                match toks.get(1) {
                    Some(Tok::Name(s)) if s == "Z" && toks.len() == 2 => {
                        order = 0;
                        spec = Some(RingSpec::integral(&[]).unwrap());
                        ring_line = lineno;
                    }
                    Some(Tok::Name(s)) if s.starts_with('F') && toks.len() == 2 => {
                        match s[1..].parse::<u64>() {
                            Ok(q) => match RingSpec::new(q, Vec::new()) {
                                Ok(r) => {
                                    order = q;
                                    spec = Some(r);
                                    ring_line = lineno;
                                }
                                Err(e) => diags.push(Diagnostic::new(lineno, e.to_string())),
                            },
                            Err(_) => diags.push(Diagnostic::new(
                                lineno,
                                format!("cannot read a field order from '{}'", s),
                            )),
                        }
                    }
                    _ => diags.push(Diagnostic::new(
                        lineno,
                        "expected 'ring Z' or 'ring F<q>'".to_string(),
                    )),
                }
            }
            "h1" => {
                if spec.is_none() {
                    diags.push(Diagnostic::new(lineno, "h1 line before ring line"));
                    continue;
                }
                if h1_seen {
                    diags.push(Diagnostic::new(lineno, "duplicate h1 line"));
                    continue;
                }
                if !gens.is_empty() || !diffs.is_empty() {
                    diags.push(Diagnostic::new(
                        lineno,
                        "h1 line must precede gen and d lines",
                    ));
                    continue;
                }
                // h1 rank <n> [names <id> ...]
                let rank = match (toks.get(1), toks.get(2)) {
                    (Some(Tok::Name(k)), Some(Tok::Int(n))) if k == "rank" => *n as usize,
                    _ => {
                        diags.push(Diagnostic::new(
                            lineno,
                            "expected 'h1 rank <n> names <id> ...'".to_string(),
                        ));
                        continue;
                    }
                };
                let mut names = Vec::new();
                let mut ok = true;
                if rank > 0 {
                    match toks.get(3) {
                        Some(Tok::Name(k)) if k == "names" => {}
                        _ => {
                            diags.push(Diagnostic::new(
                                lineno,
                                "expected 'names' after the rank".to_string(),
                            ));
                            continue;
                        }
                    }
                    for t in &toks[4..] {
                        match t {
                            Tok::Name(n) => names.push(n.clone()),
                            _ => {
                                diags.push(Diagnostic::new(
                                    lineno,
                                    format!("'{}' is not an identifier", t),
                                ));
                                ok = false;
                            }
                        }
                    }
                    if ok && names.len() != rank {
                        diags.push(Diagnostic::new(
                            lineno,
                            format!("rank {} but {} names", rank, names.len()),
                        ));
                        ok = false;
                    }
                } else if toks.len() > 3 {
                    diags.push(Diagnostic::new(lineno, "rank 0 takes no names"));
                    ok = false;
                }
                if ok {
                    match RingSpec::new(order, names.clone()) {
                        Ok(r) => {
                            spec = Some(r);
                            h1_names = names;
                            h1_seen = true;
                        }
                        Err(e) => diags.push(Diagnostic::new(lineno, e.to_string())),
                    }
                }
            }
            "gen" => {
                if spec.is_none() {
                    diags.push(Diagnostic::new(lineno, "gen line before ring line"));
                    continue;
                }
                if !diffs.is_empty() || algebra.is_some() {
                    diags.push(Diagnostic::new(lineno, "gen lines must precede d lines"));
                    continue;
                }
                // gen <id> deg <int> [mixed]
                let name = match toks.get(1) {
                    Some(Tok::Name(n)) if is_identifier(n) => n.clone(),
                    _ => {
                        diags.push(Diagnostic::new(
                            lineno,
                            "expected 'gen <id> deg <int> [mixed]'".to_string(),
                        ));
                        continue;
                    }
                };
                match toks.get(2) {
                    Some(Tok::Name(k)) if k == "deg" => {}
                    _ => {
                        diags.push(Diagnostic::new(lineno, "expected 'deg' after the name"));
                        continue;
                    }
                }
                let mut i = 3;
                let mut neg = false;
                if let Some(Tok::Minus) = toks.get(i) {
                    neg = true;
                    i += 1;
                }
                let degree = match toks.get(i) {
                    Some(Tok::Int(n)) => {
                        let d = *n as i64;
                        i += 1;
                        if neg {
                            -d
                        } else {
                            d
                        }
                    }
                    _ => {
                        diags.push(Diagnostic::new(lineno, "expected an integer degree"));
                        continue;
                    }
                };
                let mixed = match toks.get(i) {
                    None => false,
                    Some(Tok::Name(k)) if k == "mixed" && toks.len() == i + 1 => true,
                    Some(t) => {
                        diags.push(Diagnostic::new(lineno, format!("unexpected '{}'", t)));
                        continue;
                    }
                };
                if gens.iter().any(|(g, _)| g.name == name) || h1_names.contains(&name) {
                    diags.push(Diagnostic::new(lineno, format!("name collision: {}", name)));
                    continue;
                }
                let g = if mixed {
                    Generator::mixed(&name, degree)
                } else {
                    Generator::new(&name, degree)
                };
                gens.push((g, lineno));
            }
            "d" => {
                if spec.is_none() {
                    diags.push(Diagnostic::new(lineno, "d line before ring line"));
                    continue;
                }
                if algebra.is_none() {
                    algebra = finalize_algebra(&spec, &gens, &mut diags, lineno);
                    if algebra.is_none() {
                        continue;
                    }
                }
                let alg = algebra.as_ref().unwrap();
                let name = match toks.get(1) {
                    Some(Tok::Name(n)) => n.clone(),
                    _ => {
                        diags.push(Diagnostic::new(lineno, "expected 'd <id> = <poly>'"));
                        continue;
                    }
                };
                if alg.gen_id(&name).is_none() {
                    diags.push(Diagnostic::new(
                        lineno,
                        format!("unknown generator: {}", name),
                    ));
                    continue;
                }
                if !matches!(toks.get(2), Some(Tok::Eq)) {
                    diags.push(Diagnostic::new(lineno, "expected '=' after the generator"));
                    continue;
                }
                if diffs.contains_key(&name) {
                    diags.push(Diagnostic::new(
                        lineno,
                        format!("duplicate d line for {}", name),
                    ));
                    continue;
                }
                match parse_poly(&toks[3..], lineno, alg) {
                    Ok(p) => {
                        diffs.insert(name, (p, lineno));
                    }
                    Err(d) => diags.push(d),
                }
            }
            other => diags.push(Diagnostic::new(
                lineno,
                format!("unknown directive '{}'", other),
            )),
        }
    }

    if spec.is_none() {
        diags.push(Diagnostic::new(1, "missing ring line"));
        return Err(ParseError::Syntax(diags));
    }
    if algebra.is_none() {
        algebra = finalize_algebra(&spec, &gens, &mut diags, ring_line);
    }
    let Some(algebra) = algebra else {
        return Err(ParseError::Syntax(diags));
    };
    let mut diff_vec = Vec::with_capacity(gens.len());
    let mut d_lines: BTreeMap<String, usize> = BTreeMap::new();
    for (g, gen_line) in &gens {
        match diffs.get(&g.name) {
            Some((p, dl)) => {
                diff_vec.push(p.clone());
                d_lines.insert(g.name.clone(), *dl);
            }
            None => {
                diags.push(Diagnostic::new(
                    *gen_line,
                    format!("generator '{}' has no d line", g.name),
                ));
            }
        }
    }
    if !diags.is_empty() {
        return Err(ParseError::Syntax(diags));
    }
    let dga = match Dga::new(algebra, diff_vec) {
        Ok(d) => d,
        Err(e) => {
            return Err(ParseError::Syntax(vec![Diagnostic::new(
                ring_line,
                e.to_string(),
            )]))
        }
    };
    if verify {
        match dga.verify() {
            Ok(report) => {
                if let Some(f) = report.failure {
                    let line = d_lines.get(&f.generator).copied().unwrap_or(ring_line);
                    return Err(ParseError::Verify(vec![Diagnostic::new(line, f.message)]));
                }
            }
            Err(e) => {
                return Err(ParseError::Verify(vec![Diagnostic::new(
                    ring_line,
                    e.to_string(),
                )]))
            }
        }
    }
    Ok(dga)
}

/// Renders the canonical form: ring, h1 (when the rank is positive), gen
/// lines in generator order, then one d line per generator.
pub fn render_dga(d: &Dga) -> String {
    let spec = d.spec();
    let mut out = String::new();
    match spec.field() {
        None => out.push_str("ring Z\n"),
        Some(f) => out.push_str(&format!("ring F{}\n", f.q())),
    }
    if spec.h1_rank() > 0 {
        out.push_str(&format!(
            "h1 rank {} names {}\n",
            spec.h1_rank(),
            spec.h1_names().join(" ")
        ));
    }
    for g in d.algebra().gen_ids() {
        let gen = d.algebra().generator(g);
        out.push_str(&format!("gen {} deg {}", gen.name, gen.degree));
        if gen.chord.is_mixed() {
            out.push_str(" mixed");
        }
        out.push('\n');
    }
    for g in d.algebra().gen_ids() {
        out.push_str(&format!(
            "d {} = {}\n",
            d.algebra().generator(g).name,
            d.diff(g)
        ));
    }
    out
}
