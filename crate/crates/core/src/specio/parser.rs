use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::{NamedState, Selection, Settings, SpecDocument, StateSpec};
use crate::error::Error;
use crate::observables::ObservableKind;
use crate::relations::{RelationId, RelationParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParseErrorCode {
    Syntax,
    UnknownSetting,
    UnknownFamily,
    UnknownKey,
    DuplicateKey,
    MissingKey,
    InvalidValue,
    UnknownRelation,
    InvalidParams,
    EqualChiIntegers,
    NegativeRadicand,
    IndexOutOfRange,
    NotNormalized,
    DuplicateName,
    NoStates,
    NoRelations,
}

impl ParseErrorCode {
    pub fn as_str(self) -> &'static str {
        use ParseErrorCode::*;
        match self {
            Syntax => "E001-syntax",
            UnknownSetting => "E002-unknown-setting",
            UnknownFamily => "E003-unknown-family",
            UnknownKey => "E004-unknown-key",
            DuplicateKey => "E005-duplicate-key",
            MissingKey => "E006-missing-key",
            InvalidValue => "E007-invalid-value",
            UnknownRelation => "E101-unknown-relation",
            InvalidParams => "E102-invalid-params",
            EqualChiIntegers => "E103-equal-chi-integers",
            NegativeRadicand => "E104-negative-radicand",
            IndexOutOfRange => "E201-index-out-of-range",
            NotNormalized => "E202-not-normalized",
            DuplicateName => "E203-duplicate-name",
            NoStates => "E301-no-states",
            NoRelations => "E302-no-relations",
        }
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub struct ParseError {
    pub code: ParseErrorCode,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: [{}] {}", self.line, self.column, self.code.as_str(), self.message)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ParseOptions {
    /// Rescale every state's coefficients, whatever the file says.
    pub force_normalize: bool,
}

pub fn parse(text: &str) -> Result<SpecDocument, ParseError> {
    parse_with_options(text, ParseOptions::default())
}

type PResult<T> = Result<T, ParseError>;

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(src: &str, line: usize) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, line }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn err_at(&self, column: usize, code: ParseErrorCode, message: impl Into<String>) -> ParseError {
        ParseError { code, line: self.line, column, message: message.into() }
    }

    fn err(&self, code: ParseErrorCode, message: impl Into<String>) -> ParseError {
        self.err_at(self.column(), code, message)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of line".to_string(), |f| format!("'{f}'"));
            Err(self.err(ParseErrorCode::Syntax, format!("expected '{c}', found {found}")))
        }
    }

    fn word(&mut self) -> PResult<(String, usize)> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
            self.pos += 1;
        }
        if start == self.pos || !self.chars[start].is_ascii_alphabetic() && self.chars[start] != '_' {
            self.pos = start;
            return Err(self.err(ParseErrorCode::Syntax, "expected a name"));
        }
        Ok((self.chars[start..self.pos].iter().collect(), start + 1))
    }

    /// Raw lexeme of a decimal or scientific literal.
    fn number_lexeme(&mut self) -> PResult<(String, usize)> {
        self.skip_ws();
        let start = self.pos;
        let digits = |cur: &mut Self| {
            let s = cur.pos;
            while cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                cur.pos += 1;
            }
            cur.pos - s
        };
        if matches!(self.peek(), Some('+' | '-')) {
            self.pos += 1;
        }
        let mut n = digits(self);
        if self.peek() == Some('.') {
            self.pos += 1;
            n += digits(self);
        }
        if n == 0 {
            self.pos = start;
            return Err(self.err(ParseErrorCode::Syntax, "expected a number"));
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            self.pos += 1;
            if matches!(self.peek(), Some('+' | '-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                return Err(self.err(ParseErrorCode::Syntax, "malformed exponent"));
            }
        }
        Ok((self.chars[start..self.pos].iter().collect(), start + 1))
    }

    fn real(&mut self) -> PResult<f64> {
        let (lex, col) = self.number_lexeme()?;
        lex.parse::<f64>()
            .map_err(|_| self.err_at(col, ParseErrorCode::Syntax, format!("bad number '{lex}'")))
    }

    fn integer(&mut self) -> PResult<i64> {
        let (lex, col) = self.number_lexeme()?;
        if lex.contains(['.', 'e', 'E']) {
            return Err(self.err_at(
                col,
                ParseErrorCode::InvalidValue,
                format!("'{lex}' is not an integer (integers must not contain a decimal point)"),
            ));
        }
        lex.parse::<i64>()
            .map_err(|_| self.err_at(col, ParseErrorCode::InvalidValue, format!("integer '{lex}' out of range")))
    }

    fn boolean(&mut self) -> PResult<bool> {
        let (w, col) = self.word()?;
        match w.as_str() {
            "true" => Ok(true),
            "false" => Ok(false),
            _ => Err(self.err_at(col, ParseErrorCode::InvalidValue, format!("expected true or false, found '{w}'"))),
        }
    }

    fn complex(&mut self) -> PResult<Complex64> {
        self.expect('(')?;
        let re = self.real()?;
        self.expect(',')?;
        let im = self.real()?;
        self.expect(')')?;
        Ok(Complex64::new(re, im))
    }

    fn complex_list(&mut self) -> PResult<Vec<Complex64>> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.eat(']') {
            return Ok(out);
        }
        loop {
            out.push(self.complex()?);
            if self.eat(']') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn complex_map(&mut self) -> PResult<BTreeMap<i64, Complex64>> {
        self.expect('{')?;
        let mut out = BTreeMap::new();
        if self.eat('}') {
            return Ok(out);
        }
        loop {
            self.skip_ws();
            let col = self.column();
            let m = self.integer()?;
            self.expect(':')?;
            let v = self.complex()?;
            if out.insert(m, v).is_some() {
                return Err(self.err_at(col, ParseErrorCode::DuplicateKey, format!("coefficient m={m} given twice")));
            }
            if self.eat('}') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn observable(&mut self) -> PResult<ObservableKind> {
        let (mut w, col) = self.word()?;
        if self.peek() == Some('[') {
            self.pos += 1;
            let n = self.integer()?;
            self.expect(']')?;
            w = format!("{w}[{n}]");
        }
        w.parse::<ObservableKind>()
            .map_err(|_| self.err_at(col, ParseErrorCode::InvalidValue, format!("unknown observable '{w}'")))
    }
}

fn map_state_error(cur: &Cursor, col: usize, e: Error) -> ParseError {
    let code = match e {
        Error::NotNormalized { .. } => ParseErrorCode::NotNormalized,
        _ => ParseErrorCode::InvalidValue,
    };
    cur.err_at(col, code, e.to_string())
}

/// Parses a spec document.
pub fn parse_with_options(text: &str, options: ParseOptions) -> Result<SpecDocument, ParseError> {
    let mut settings = Settings::default();
    let mut pending: Vec<(String, StateSpec, usize)> = Vec::new();
    let mut selections = Vec::new();
    let mut last_line = 1;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("");
        let mut cur = Cursor::new(content, line_no);
        if cur.at_end() {
            continue;
        }
        let (head, col) = cur.word()?;
        match head.as_str() {
            "setting" => parse_setting(&mut cur, &mut settings)?,
            "state" => {
                let (name, spec) = parse_state(&mut cur, pending.len() + 1)?;
                if pending.iter().any(|(n, _, _)| *n == name) {
                    return Err(cur.err_at(col, ParseErrorCode::DuplicateName, format!("state name '{name}' used twice")));
                }
                pending.push((name, spec, line_no));
            }
            "relations" => parse_relations(&mut cur, &mut selections)?,
            other => {
                return Err(cur.err_at(
                    col,
                    ParseErrorCode::Syntax,
                    format!("expected 'setting', 'state' or 'relations', found '{other}'"),
                ))
            }
        }
    }

    // States are built after all settings are known, so `setting hbar` may
    // follow the states it applies to.
    let mut states = Vec::with_capacity(pending.len());
    for (name, spec, line_no) in pending {
        let cur = Cursor::new("", line_no);
        if let StateSpec::Spherical { l, c, .. } = &spec {
            let expected = 2 * *l + 1;
            if *l < 0 || c.len() as i64 != expected {
                return Err(cur.err_at(
                    1,
                    ParseErrorCode::IndexOutOfRange,
                    format!("l = {l} needs {} coefficients for |m| <= l, got {}", expected.max(0), c.len()),
                ));
            }
        }
        let state = spec.build(&settings, options.force_normalize).map_err(|e| map_state_error(&cur, 1, e))?;
        states.push(NamedState { name, spec, state });
    }

    let end = Cursor::new("", last_line);
    if states.is_empty() {
        return Err(end.err_at(1, ParseErrorCode::NoStates, "document defines no state"));
    }
    if selections.is_empty() {
        return Err(end.err_at(1, ParseErrorCode::NoRelations, "document selects no relation"));
    }
    Ok(SpecDocument { settings, states, selections })
}

fn parse_setting(cur: &mut Cursor, settings: &mut Settings) -> PResult<()> {
    let (key, col) = cur.word()?;
    let dup = |cur: &Cursor| cur.err_at(col, ParseErrorCode::DuplicateKey, format!("setting '{key}' given twice"));
    fn set<T>(slot: &mut Option<T>, v: T) -> bool {
        slot.replace(v).is_none()
    }
    let ok = match key.as_str() {
        "hbar" => {
            let v = positive(cur)?;
            set(&mut settings.hbar, v)
        }
        "tolerance" => {
            let v = positive(cur)?;
            set(&mut settings.tolerance, v)
        }
        "phi_nodes" | "theta_nodes" | "hermite_nodes" => {
            cur.skip_ws();
            let vcol = cur.column();
            let v = cur.integer()?;
            if v < 2 {
                return Err(cur.err_at(vcol, ParseErrorCode::InvalidValue, format!("{key} must be >= 2")));
            }
            let v = v as usize;
            match key.as_str() {
                "phi_nodes" => set(&mut settings.phi_nodes, v),
                "theta_nodes" => set(&mut settings.theta_nodes, v),
                _ => set(&mut settings.hermite_nodes, v),
            }
        }
        "normalize" => {
            let v = cur.boolean()?;
            set(&mut settings.normalize, v)
        }
        _ => return Err(cur.err_at(col, ParseErrorCode::UnknownSetting, format!("unknown setting '{key}'"))),
    };
    if !ok {
        return Err(dup(cur));
    }
    end_of_line(cur)
}

fn positive(cur: &mut Cursor) -> PResult<f64> {
    cur.skip_ws();
    let col = cur.column();
    let v = cur.real()?;
    if !(v > 0.0 && v.is_finite()) {
        return Err(cur.err_at(col, ParseErrorCode::InvalidValue, format!("expected a positive value, got {v}")));
    }
    Ok(v)
}

fn end_of_line(cur: &mut Cursor) -> PResult<()> {
    if cur.at_end() {
        Ok(())
    } else {
        Err(cur.err(ParseErrorCode::Syntax, "unexpected trailing input"))
    }
}

fn parse_state(cur: &mut Cursor, index: usize) -> PResult<(String, StateSpec)> {
    let (family, fcol) = cur.word()?;
    let allowed: &[&str] = match family.as_str() {
        "circular" => &["name", "m", "hbar"],
        "rotor" => &["name", "c", "hbar", "normalize"],
        "spherical" => &["name", "l", "c", "hbar", "inertia", "normalize"],
        "pendulum" => &["name", "n", "inertia", "omega", "hbar"],
        _ => {
            return Err(cur.err_at(
                fcol,
                ParseErrorCode::UnknownFamily,
                format!("unknown family '{family}' (circular, rotor, spherical, pendulum)"),
            ))
        }
    };

    let mut name = None;
    let mut ints: BTreeMap<&str, i64> = BTreeMap::new();
    let mut reals: BTreeMap<&str, f64> = BTreeMap::new();
    let mut normalize = None;
    let mut list = None;
    let mut map = None;
    let mut seen: Vec<String> = Vec::new();

    while !cur.at_end() {
        let (key, kcol) = cur.word()?;
        let Some(&key) = allowed.iter().find(|k| **k == key) else {
            return Err(cur.err_at(kcol, ParseErrorCode::UnknownKey, format!("'{key}' is not a {family} key")));
        };
        if seen.iter().any(|s| s == key) {
            return Err(cur.err_at(kcol, ParseErrorCode::DuplicateKey, format!("key '{key}' given twice")));
        }
        seen.push(key.to_string());
        cur.expect('=')?;
        match key {
            "name" => name = Some(cur.word()?.0),
            "m" | "l" | "n" => {
                cur.skip_ws();
                let vcol = cur.column();
                let v = cur.integer()?;
                if key != "m" && v < 0 {
                    return Err(cur.err_at(vcol, ParseErrorCode::InvalidValue, format!("{key} must be >= 0")));
                }
                ints.insert(key, v);
            }
            "hbar" | "inertia" | "omega" => {
                let v = positive(cur)?;
                reals.insert(key, v);
            }
            "normalize" => normalize = Some(cur.boolean()?),
            "c" if family == "rotor" => map = Some(cur.complex_map()?),
            "c" => list = Some(cur.complex_list()?),
            _ => unreachable!(),
        }
    }

    let missing = |cur: &Cursor, key: &str| {
        cur.err_at(1, ParseErrorCode::MissingKey, format!("{family} state requires '{key}'"))
    };
    let spec = match family.as_str() {
        "circular" => StateSpec::Circular {
            m: *ints.get("m").ok_or_else(|| missing(cur, "m"))?,
            hbar: reals.get("hbar").copied(),
        },
        "rotor" => {
            let c = map.ok_or_else(|| missing(cur, "c"))?;
            if c.is_empty() {
                return Err(cur.err_at(1, ParseErrorCode::InvalidValue, "rotor state needs at least one coefficient"));
            }
            StateSpec::Rotor { c, hbar: reals.get("hbar").copied(), normalize }
        }
        "spherical" => StateSpec::Spherical {
            l: *ints.get("l").ok_or_else(|| missing(cur, "l"))?,
            c: list.ok_or_else(|| missing(cur, "c"))?,
            hbar: reals.get("hbar").copied(),
            inertia: reals.get("inertia").copied(),
            normalize,
        },
        _ => StateSpec::Pendulum {
            n: *ints.get("n").ok_or_else(|| missing(cur, "n"))?,
            inertia: reals.get("inertia").copied(),
            omega: reals.get("omega").copied(),
            hbar: reals.get("hbar").copied(),
        },
    };
    Ok((name.unwrap_or_else(|| format!("state{index}")), spec))
}

fn parse_relations(cur: &mut Cursor, out: &mut Vec<Selection>) -> PResult<()> {
    while !cur.at_end() {
        let (id, col) = cur.word()?;
        let relation = match id.parse::<RelationId>() {
            Ok(r) => r,
            Err(_) if id == "R9" || id == "R13" => {
                return Err(cur.err_at(col, ParseErrorCode::UnknownRelation, format!("{id} is excluded: under-specified")))
            }
            Err(_) => return Err(cur.err_at(col, ParseErrorCode::UnknownRelation, format!("unknown relation '{id}'"))),
        };
        let mut params = RelationParams::default();
        // no whitespace between the identifier and its argument list
        if cur.peek() == Some('(') {
            cur.pos += 1;
            let mut a = None;
            let mut b = None;
            loop {
                let (key, kcol) = cur.word()?;
                if !relation.parameters().contains(&key.as_str()) {
                    return Err(cur.err_at(kcol, ParseErrorCode::InvalidParams, format!("{relation} takes no parameter '{key}'")));
                }
                cur.expect('=')?;
                let dup = match key.as_str() {
                    "alpha" => params.alpha.replace(cur.real()?).is_some(),
                    "N" => params.n.replace(cur.integer()?).is_some(),
                    "N1" => params.n1.replace(cur.integer()?).is_some(),
                    "A" => a.replace(cur.observable()?).is_some(),
                    _ => b.replace(cur.observable()?).is_some(),
                };
                if dup {
                    return Err(cur.err_at(kcol, ParseErrorCode::DuplicateKey, format!("parameter '{key}' given twice")));
                }
                if cur.eat(')') {
                    break;
                }
                cur.expect(',')?;
            }
            match (a, b) {
                (Some(a), Some(b)) => params.pair = Some((a, b)),
                (None, None) => {}
                _ => return Err(cur.err_at(col, ParseErrorCode::InvalidParams, "R60 needs both A and B")),
            }
        }
        params.validate(relation).map_err(|e| {
            let (code, message) = match e {
                Error::EqualChiIntegers => (ParseErrorCode::EqualChiIntegers, "R12 requires N ≠ N1".to_string()),
                Error::NegativeRadicand { .. } => (ParseErrorCode::NegativeRadicand, e.to_string()),
                other => (ParseErrorCode::InvalidParams, other.to_string()),
            };
            cur.err_at(col, code, message)
        })?;
        out.push(Selection { relation, params });
    }
    Ok(())
}
