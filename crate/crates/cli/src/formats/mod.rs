//! Line-oriented text formats: quiver algebras, structure-constant dumps,
//! modules, graded modules and complexes.

mod algebra;
mod complex;
mod dump;
mod module;

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use derizero::algebra::Algebra;
use derizero::exactlin::{parse_scalar, Field, PrimeField, Rationals};

pub use algebra::parse_algebra;
pub use complex::{parse_complex, write_complex, AnyComplex, ParsedComplex};
pub use dump::{parse_dump, write_dump, DUMP_HEADER};
pub use module::{parse_module, AnyModule, ParsedModule};

/// An error with a 1-based position in a named source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub source: String,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}: {}", self.source, self.message)
        } else {
            write!(f, "{}:{}:{}: {}", self.source, self.line, self.col, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub col: usize,
}

#[derive(Clone, Debug)]
pub struct Line {
    pub number: usize,
    pub tokens: Vec<Token>,
}

/// Source text split into lines of whitespace-separated tokens, with `#`
/// comments removed. The characters in `specials` always form their own
/// tokens.
#[derive(Clone, Debug)]
pub struct Source {
    pub name: String,
    pub lines: Vec<Line>,
}

impl Source {
    pub fn new(name: &str, text: &str, specials: &[char]) -> Self {
        let mut lines = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut cur = String::new();
            let mut start = 0;
            for (j, ch) in content.char_indices() {
                if ch.is_whitespace() || specials.contains(&ch) {
                    if !cur.is_empty() {
                        tokens.push(Token { text: std::mem::take(&mut cur), col: start + 1 });
                    }
                    if specials.contains(&ch) {
                        tokens.push(Token { text: ch.to_string(), col: j + 1 });
                    }
                } else {
                    if cur.is_empty() {
                        start = j;
                    }
                    cur.push(ch);
                }
            }
            if !cur.is_empty() {
                tokens.push(Token { text: cur, col: start + 1 });
            }
            if !tokens.is_empty() {
                lines.push(Line { number: i + 1, tokens });
            }
        }
        Source { name: name.to_string(), lines }
    }

    pub fn error(&self, line: usize, col: usize, message: impl Into<String>) -> ParseError {
        ParseError { source: self.name.clone(), line, col, message: message.into() }
    }

    pub fn at(&self, line: &Line, tok: usize, message: impl Into<String>) -> ParseError {
        let col = line.tokens.get(tok).map_or_else(|| line.tokens.last().map_or(1, |t| t.col + t.text.len()), |t| t.col);
        self.error(line.number, col, message)
    }

    /// Error without a position, for problems found after parsing.
    pub fn whole(&self, message: impl Into<String>) -> ParseError {
        self.error(0, 0, message)
    }

    pub fn arity(&self, line: &Line, n: usize) -> Result<(), ParseError> {
        if line.tokens.len() != n {
            return Err(self.at(line, line.tokens.len().min(n), format!("{} expects {} arguments", line.tokens[0].text, n - 1)));
        }
        Ok(())
    }

    pub fn integer<T: std::str::FromStr>(&self, line: &Line, tok: usize) -> Result<T, ParseError> {
        line.tokens
            .get(tok)
            .and_then(|t| t.text.parse().ok())
            .ok_or_else(|| self.at(line, tok, "expected an integer"))
    }

    pub fn scalar<F: Field>(&self, field: &F, line: &Line, tok: usize) -> Result<F::Elem, ParseError> {
        let t = line.tokens.get(tok).ok_or_else(|| self.at(line, tok, "expected a scalar"))?;
        parse_scalar(field, &t.text).ok_or_else(|| self.at(line, tok, format!("invalid scalar {}", t.text)))
    }
}

/// A loaded algebra over one of the supported fields, with degrees when
/// read from a dump.
#[derive(Clone, Debug)]
pub struct Loaded<F: Field> {
    pub algebra: Arc<Algebra<F>>,
    pub degrees: Option<Vec<u32>>,
}

#[derive(Clone, Debug)]
pub enum AnyAlgebra {
    Q(Loaded<Rationals>),
    P(Loaded<PrimeField>),
}

/// Run `$body` with `$a` bound to the typed [`Loaded`] algebra.
#[macro_export]
macro_rules! with_field {
    ($any:expr, $a:ident => $body:expr) => {
        match $any {
            $crate::formats::AnyAlgebra::Q($a) => $body,
            $crate::formats::AnyAlgebra::P($a) => $body,
        }
    };
}

/// Read an algebra file, either a quiver presentation or a dump.
pub fn load_algebra(path: &Path) -> Result<AnyAlgebra, ParseError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path)
        .map_err(|e| ParseError { source: name.clone(), line: 0, col: 0, message: e.to_string() })?;
    parse_any(&name, &text)
}

pub fn parse_any(name: &str, text: &str) -> Result<AnyAlgebra, ParseError> {
    let first = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).find(|l| !l.is_empty());
    if first == Some(DUMP_HEADER) {
        parse_dump(name, text)
    } else {
        parse_algebra(name, text)
    }
}

/// Resolve `over <path>` relative to the file that mentions it.
pub(crate) fn relative(base: &Path, target: &str) -> PathBuf {
    let t = Path::new(target);
    if t.is_absolute() {
        t.to_path_buf()
    } else {
        base.parent().unwrap_or(Path::new(".")).join(t)
    }
}

/// Parse a `FIELD` directive.
pub(crate) enum FieldChoice {
    Q,
    P(PrimeField),
}

pub(crate) fn field_directive(src: &Source, line: &Line) -> Result<FieldChoice, ParseError> {
    match line.tokens.get(1).map(|t| t.text.as_str()) {
        Some("Q") => {
            src.arity(line, 2)?;
            Ok(FieldChoice::Q)
        }
        Some("GF") => {
            src.arity(line, 3)?;
            let p: u32 = src.integer(line, 2)?;
            PrimeField::new(p).map(FieldChoice::P).map_err(|e| src.at(line, 2, e.to_string()))
        }
        _ => Err(src.at(line, 1, "expected Q or GF <p>")),
    }
}
