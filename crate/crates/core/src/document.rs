//! The plain-text family format.
//!
//! ```text
//! infgon/1
//! # the fountain at 0
//! orbit 0 2 dl 0 dr 1
//! orbit -2 0 dl -1 dr 0
//! remove 0 3
//! arc 1 3
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::arcs::{Arc, ArcFamily, Count, FamilyError, Orbit};

pub const HEADER: &str = "infgon/1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Statement {
    Orbit(Orbit),
    Remove(Arc),
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Orbit(o) if o.is_single() => {
                write!(f, "arc {} {}", o.base().left(), o.base().right())
            }
            Statement::Orbit(o) => {
                let b = o.base();
                write!(
                    f,
                    "orbit {} {} dl {} dr {}",
                    b.left(),
                    b.right(),
                    o.step_left(),
                    o.step_right()
                )?;
                if let Count::Finite(k) = o.count() {
                    write!(f, " count {k}")?;
                }
                Ok(())
            }
            Statement::Remove(a) => write!(f, "remove {} {}", a.left(), a.right()),
        }
    }
}

/// Statements in declaration order, each with its source line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyDocument {
    pub header: bool,
    pub statements: Vec<(usize, Statement)>,
}

impl FamilyDocument {
    pub fn family(&self) -> ArcFamily {
        let mut family = ArcFamily::empty();
        for (_, s) in &self.statements {
            family = match *s {
                Statement::Orbit(o) => family.with_orbit(o),
                Statement::Remove(a) => family.with_removed(a),
            };
        }
        family
    }

    fn orbit_line(&self, index: usize) -> usize {
        self.statements
            .iter()
            .filter(|(_, s)| matches!(s, Statement::Orbit(_)))
            .nth(index)
            .map_or(0, |(line, _)| *line)
    }

    fn removal_line(&self, arc: Arc) -> usize {
        self.statements
            .iter()
            .find(|(_, s)| *s == Statement::Remove(arc))
            .map_or(0, |(line, _)| *line)
    }

    fn locate(&self, e: &FamilyError) -> usize {
        match *e {
            FamilyError::InvalidArc { orbit, .. }
            | FamilyError::DegenerateOrbit { orbit }
            | FamilyError::EmptyOrbit { orbit } => self.orbit_line(orbit),
            FamilyError::StrayRemoval { arc } => self.removal_line(arc),
            FamilyError::SelfCrossing { orbits: (i, j), .. } => self.orbit_line(i.max(j)),
        }
    }
}

impl fmt::Display for FamilyDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.header {
            writeln!(f, "{HEADER}")?;
        }
        for (_, s) in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Parses without validating.
pub fn parse_document(text: &str) -> Result<FamilyDocument, ParseError> {
    let mut doc = FamilyDocument {
        header: false,
        statements: Vec::new(),
    };
    let mut seen_content = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(version) = content.strip_prefix("infgon/") {
            if seen_content {
                return Err(ParseError::new(line, "header must come first"));
            }
            if version != "1" {
                return Err(ParseError::new(
                    line,
                    format!("unsupported format version {version}"),
                ));
            }
            doc.header = true;
            seen_content = true;
            continue;
        }
        seen_content = true;
        doc.statements.push((
            line,
            parse_statement(content).map_err(|m| ParseError::new(line, m))?,
        ));
    }
    Ok(doc)
}

fn parse_statement(content: &str) -> Result<Statement, String> {
    let words: Vec<&str> = content.split_whitespace().collect();
    let int = |w: &str| {
        w.parse::<i64>()
            .map_err(|_| format!("expected an integer, found `{w}`"))
    };
    let arc = |m: &str, n: &str| -> Result<Arc, String> {
        Arc::new(int(m)?, int(n)?).map_err(|e| e.to_string())
    };
    match words[..] {
        ["arc", m, n] => Ok(Statement::Orbit(Orbit::single(arc(m, n)?))),
        ["remove", m, n] => Ok(Statement::Remove(arc(m, n)?)),
        ["orbit", m, n, "dl", dl, "dr", dr, ref rest @ ..] => {
            let count = match rest {
                [] => Count::Infinite,
                ["count", k] => Count::Finite(
                    k.parse()
                        .map_err(|_| format!("expected a count, found `{k}`"))?,
                ),
                _ => return Err(format!("unexpected trailing input `{}`", rest.join(" "))),
            };
            Ok(Statement::Orbit(Orbit::new(
                arc(m, n)?,
                int(dl)?,
                int(dr)?,
                count,
            )))
        }
        [kw, ..] if ["arc", "remove", "orbit"].contains(&kw) => {
            Err(format!("malformed `{kw}` statement"))
        }
        [kw, ..] => Err(format!("unknown statement `{kw}`")),
        [] => unreachable!("blank lines are skipped"),
    }
}

/// Parses and validates, reporting validation failures at the offending line.
pub fn parse_family(text: &str) -> Result<ArcFamily, ParseError> {
    let doc = parse_document(text)?;
    let family = doc.family();
    family
        .validate()
        .map_err(|e| ParseError::new(doc.locate(&e), e.to_string()))?;
    Ok(family)
}

impl FromStr for ArcFamily {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_family(s)
    }
}

fn count_key(c: Count) -> (u8, u64) {
    match c {
        Count::Finite(k) => (0, k),
        Count::Infinite => (1, 0),
    }
}

/// Canonical text: header, orbits sorted by `(base, dl, dr, count)`, then
/// sorted removals.
pub fn serialize_family(family: &ArcFamily) -> String {
    let mut orbits: Vec<Orbit> = family.orbits().to_vec();
    orbits.sort_by_key(|o| {
        (
            o.base(),
            o.step_left(),
            o.step_right(),
            count_key(o.count()),
        )
    });
    let doc = FamilyDocument {
        header: true,
        statements: orbits
            .into_iter()
            .map(Statement::Orbit)
            .chain(family.removed().iter().copied().map(Statement::Remove))
            .map(|s| (0, s))
            .collect(),
    };
    doc.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::canonical::{fountain, leapfrog, split};
    use crate::arcs::Window;

    fn arc(l: i64, r: i64) -> Arc {
        Arc::new(l, r).unwrap()
    }

    #[test]
    fn singles() {
        let f = parse_family("arc 0 2\narc 0 3").unwrap();
        assert_eq!(f, ArcFamily::from_arcs([arc(0, 2), arc(0, 3)]));
    }

    #[test]
    fn fountain_text() {
        let f = parse_family("orbit 0 2 dl 0 dr 1\norbit -2 0 dl -1 dr 0").unwrap();
        assert_eq!(f, fountain());
        assert_eq!(
            serialize_family(&f),
            "infgon/1\norbit -2 0 dl -1 dr 0\norbit 0 2 dl 0 dr 1\n"
        );
    }

    #[test]
    fn short_arc_rejected() {
        let e = parse_family("arc 0 1").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(e.message.contains("m <= n-2"), "{e}");
    }

    #[test]
    fn header_comments_and_counts() {
        let text = "# fan\ninfgon/1\n\norbit 0 2 dl 0 dr 1 count 3   # three arcs\nremove 0 3\n";
        let f = parse_family(text).unwrap();
        assert_eq!(
            f.arcs_in_window(Window::new(0, 9).unwrap()),
            vec![arc(0, 2), arc(0, 4)]
        );
        let doc = parse_document(text).unwrap();
        assert!(doc.header);
        assert_eq!(
            doc.to_string(),
            "infgon/1\norbit 0 2 dl 0 dr 1 count 3\nremove 0 3\n"
        );
    }

    #[test]
    fn syntax_errors_carry_lines() {
        let cases = [
            ("arc 0", 1),
            ("arc 0 2\nbogus 1 2", 2),
            ("arc 0 x", 1),
            ("orbit 0 2 dl 0 dr 1 count", 1),
            ("orbit 0 2 dl 0 dr 1 count -1", 1),
            ("arc 0 2\ninfgon/1", 2),
            ("infgon/2", 1),
        ];
        for (text, line) in cases {
            assert_eq!(parse_family(text).unwrap_err().line, line, "{text:?}");
        }
    }

    #[test]
    fn validation_errors_carry_lines() {
        let e = parse_family("arc 0 2\n# x\narc 1 3").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("cross"));
        let e = parse_family("orbit 0 5 dl 1 dr 0").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_family("arc 0 2\nremove 0 3").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_family("orbit 0 2 dl 0 dr 0 count 2").unwrap_err();
        assert_eq!(e.line, 1);
    }

    #[test]
    fn removal_serialized() {
        let text = serialize_family(&fountain().with_removed(arc(0, 2)));
        assert!(text.lines().any(|l| l == "remove 0 2"));
    }

    #[test]
    fn empty_is_header_only() {
        assert_eq!(serialize_family(&ArcFamily::empty()), "infgon/1\n");
        assert_eq!(parse_family("infgon/1\n").unwrap(), ArcFamily::empty());
    }

    #[test]
    fn canonical_round_trip() {
        let w = Window::new(-20, 20).unwrap();
        for f in [
            fountain(),
            leapfrog(),
            split(),
            fountain()
                .with_removed(arc(0, 2))
                .with_orbit(Orbit::single(arc(1, 3))),
        ] {
            let g = parse_family(&serialize_family(&f)).unwrap();
            assert_eq!(g.arcs_in_window(w), f.arcs_in_window(w));
            assert_eq!(g.classify(), f.classify());
            assert_eq!(serialize_family(&g), serialize_family(&f));
        }
    }
}
