//! Text format for forms and cuts.
//!
//! ```text
//! # α_1
//! form.phi.breaks = 0:1,0  1:0,1;1
//! form.radial     = 1
//! form.domain     = 0,1
//! collapse0       = 0,1
//! collapse1       = 1,0
//! ```
//!
//! One `key = value` per line; `#` starts a comment. Rationals are integers or
//! `p/q`, angles are `x,y;n` literals. Without `collapse0`/`collapse1` the
//! file describes a line-type form.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use num_traits::One;

use crate::angle::{parse_pair, Angle};
use crate::cut::{validate_cutspec, CutSpec, End, Violation};
use crate::form::{AngleProfile, FormError, InvariantContactForm, RadialFactor, RadialProfile};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagnosticKind {
    Syntax,
    Semantic,
}

/// A parse or validation failure tied to a line of the input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    /// 1-based; `None` when the problem is a missing key.
    pub line: Option<usize>,
    pub message: String,
}

impl Diagnostic {
    fn syntax(line: Option<usize>, message: impl Into<String>) -> Self {
        Diagnostic { kind: DiagnosticKind::Syntax, line, message: message.into() }
    }

    fn semantic(line: Option<usize>, message: impl Into<String>) -> Self {
        Diagnostic { kind: DiagnosticKind::Semantic, line, message: message.into() }
    }

    /// 2 for syntax errors, 3 for semantic violations.
    pub fn exit_code(&self) -> i32 {
        match self.kind {
            DiagnosticKind::Syntax => 2,
            DiagnosticKind::Semantic => 3,
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            DiagnosticKind::Syntax => "syntax error",
            DiagnosticKind::Semantic => "invalid",
        };
        match self.line {
            Some(l) => write!(f, "line {l}: {what}: {}", self.message),
            None => write!(f, "{what}: {}", self.message),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedInput {
    Cut(CutSpec),
    Line(InvariantContactForm),
}

impl ParsedInput {
    pub fn form(&self) -> &InvariantContactForm {
        match self {
            ParsedInput::Cut(spec) => spec.form(),
            ParsedInput::Line(form) => form,
        }
    }
}

const KEYS: [&str; 5] = ["form.phi.breaks", "form.radial", "form.domain", "collapse0", "collapse1"];

fn rational(s: &str, line: usize) -> Result<Rational, Diagnostic> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Diagnostic::syntax(Some(line), format!("bad rational {s:?}: {e}")))
}

fn knot<T>(
    token: &str,
    line: usize,
    value: impl Fn(&str) -> Result<T, String>,
) -> Result<(Rational, T), Diagnostic> {
    let (t, v) = token
        .split_once(':')
        .ok_or_else(|| Diagnostic::syntax(Some(line), format!("expected t:value, got {token:?}")))?;
    let v = value(v).map_err(|e| Diagnostic::syntax(Some(line), e))?;
    Ok((rational(t, line)?, v))
}

fn pair(s: &str, line: usize) -> Result<(i64, i64), Diagnostic> {
    parse_pair(s.trim()).map_err(|e| Diagnostic::syntax(Some(line), e.to_string()))
}

/// `Variant: message`, so that diagnostics name the violated condition.
fn named(e: &(impl fmt::Debug + fmt::Display)) -> String {
    let debug = format!("{e:?}");
    let name = debug.split([' ', '(', '{']).next().unwrap_or_default();
    format!("{name}: {e}")
}

fn form_diagnostic(e: FormError, line: Option<usize>) -> Diagnostic {
    Diagnostic::semantic(line, named(&e))
}

/// Parses the text of a spec file.
pub fn parse_spec(text: &str) -> Result<ParsedInput, Diagnostic> {
    let mut entries: HashMap<&str, (usize, &str)> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| Diagnostic::syntax(Some(line), format!("expected key = value, got {content:?}")))?;
        let key = key.trim();
        let Some(&key) = KEYS.iter().find(|k| **k == key) else {
            return Err(Diagnostic::syntax(Some(line), format!("unknown key {key:?}")));
        };
        if let Some((first, _)) = entries.insert(key, (line, value.trim())) {
            return Err(Diagnostic::syntax(Some(line), format!("{key} already set on line {first}")));
        }
    }

    let (phi_line, phi_text) = *entries
        .get("form.phi.breaks")
        .ok_or_else(|| Diagnostic::syntax(None, "missing key form.phi.breaks"))?;
    let points = phi_text
        .split_whitespace()
        .map(|tok| knot(tok, phi_line, |v| v.parse::<Angle>().map_err(|e| e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let phi = AngleProfile::new(points).map_err(|e| form_diagnostic(e, Some(phi_line)))?;

    let radial = match entries.get("form.radial") {
        None => RadialProfile::one(),
        Some(&(line, text)) => {
            let tokens: Vec<&str> = text.split_whitespace().collect();
            let profile = if tokens.len() == 1 && !tokens[0].contains(':') {
                RadialProfile::constant(rational(tokens[0], line)?)
            } else {
                let points = tokens
                    .iter()
                    .map(|tok| knot(tok, line, |v| v.trim().parse::<Rational>().map_err(|e| e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?;
                RadialProfile::piecewise(points)
            };
            profile.map_err(|e| form_diagnostic(e, Some(line)))?
        }
    };

    if let Some(&(line, text)) = entries.get("form.domain") {
        let (a, b) = text
            .split_once(',')
            .ok_or_else(|| Diagnostic::syntax(Some(line), format!("expected t0,t1, got {text:?}")))?;
        let declared = (rational(a, line)?, rational(b, line)?);
        let actual = phi.domain();
        if declared != actual {
            return Err(Diagnostic::semantic(
                Some(line),
                format!(
                    "domain [{}, {}] disagrees with the phi breakpoints spanning [{}, {}]",
                    declared.0, declared.1, actual.0, actual.1
                ),
            ));
        }
    }

    let form = InvariantContactForm::new(phi, radial).map_err(|e| {
        let line = match e {
            FormError::NonPositiveRadial(_) | FormError::DomainMismatch { .. } => {
                entries.get("form.radial").map(|(l, _)| *l)
            }
            _ => Some(phi_line),
        };
        form_diagnostic(e, line)
    })?;

    let collapse0 = entries.get("collapse0").copied();
    let collapse1 = entries.get("collapse1").copied();
    let ((l0, c0), (l1, c1)) = match (collapse0, collapse1) {
        (None, None) => return Ok(ParsedInput::Line(form)),
        (Some(a), Some(b)) => (a, b),
        (Some((l, _)), None) => return Err(Diagnostic::syntax(Some(l), "collapse0 given without collapse1")),
        (None, Some((l, _))) => return Err(Diagnostic::syntax(Some(l), "collapse1 given without collapse0")),
    };
    let (v0, v1) = (pair(c0, l0)?, pair(c1, l1)?);
    let unit = form.to_unit_interval();
    if let Err(violations) = validate_cutspec(&unit, v0, v1) {
        let first = &violations[0];
        let end = match first {
            Violation::NonPrimitive { end, .. }
            | Violation::NonzeroBoundaryMoment { end }
            | Violation::WrongSign { end } => *end,
        };
        let line = match end {
            End::Start => l0,
            End::Finish => l1,
        };
        let message = violations.iter().map(named).collect::<Vec<_>>().join("; ");
        return Err(Diagnostic::semantic(Some(line), message));
    }
    let spec = CutSpec::new(form, v0, v1).map_err(|e| Diagnostic::semantic(Some(l0), e.to_string()))?;
    Ok(ParsedInput::Cut(spec))
}

/// Reads and parses a spec file.
pub fn read_spec(path: &Path) -> Result<ParsedInput, Diagnostic> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Diagnostic::syntax(None, format!("cannot read {}: {e}", path.display())))?;
    parse_spec(&text)
}

/// The radial profile as spec-file text, when it is a single piecewise-affine
/// function (a product with at most one non-constant factor).
fn radial_text(radial: &RadialProfile) -> Option<String> {
    let mut scale = Rational::one();
    let mut piecewise = None;
    for f in radial.factors() {
        match f {
            RadialFactor::Constant(c) => scale *= *c,
            RadialFactor::Piecewise { breaks, values } if piecewise.is_none() => piecewise = Some((breaks, values)),
            RadialFactor::Piecewise { .. } => return None,
        }
    }
    Some(match piecewise {
        None => scale.to_string(),
        Some((breaks, values)) => breaks
            .iter()
            .zip(values)
            .map(|(t, v)| format!("{t}:{}", *v * scale))
            .collect::<Vec<_>>()
            .join(" "),
    })
}

fn write_form(form: &InvariantContactForm) -> Option<String> {
    let breaks: Vec<String> = form
        .phi()
        .breakpoints()
        .iter()
        .zip(form.phi().values())
        .map(|(t, a)| format!("{t}:{a}"))
        .collect();
    let (t0, t1) = form.domain();
    Some(format!(
        "form.phi.breaks = {}\nform.radial = {}\nform.domain = {t0},{t1}\n",
        breaks.join("  "),
        radial_text(form.radial())?
    ))
}

/// Renders a cut in the spec-file format; `None` when the radial profile is
/// a product of several non-constant factors.
pub fn write_spec(spec: &CutSpec) -> Option<String> {
    let form = write_form(spec.form())?;
    Some(format!("{form}collapse0 = {}\ncollapse1 = {}\n", spec.v0(), spec.v1()))
}

/// Renders a line-type form in the spec-file format.
pub fn write_line(form: &InvariantContactForm) -> Option<String> {
    write_form(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard::alpha_k_spec;

    const ALPHA_1: &str = "\
# alpha_1
form.phi.breaks = 0:1,0  1:0,1;1
form.radial     = 1
form.domain     = 0,1
collapse0       = 0,1
collapse1       = 1,0
";

    #[test]
    fn parses_alpha_1() {
        assert_eq!(parse_spec(ALPHA_1).unwrap(), ParsedInput::Cut(alpha_k_spec(1).unwrap()));
    }

    #[test]
    fn non_primitive_collapse() {
        let text = ALPHA_1.replace("collapse0       = 0,1", "collapse0 = 2,4");
        let d = parse_spec(&text).unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::Semantic);
        assert_eq!(d.line, Some(5));
        assert!(d.message.contains("NonPrimitive"), "{d}");
        assert_eq!(d.exit_code(), 3);
    }

    #[test]
    fn non_monotone_phi() {
        let text = ALPHA_1.replace("0:1,0  1:0,1;1", "0:1,0  1/2:0,1  1:1,0");
        let d = parse_spec(&text).unwrap_err();
        assert_eq!(d.line, Some(2));
        assert!(d.message.starts_with("NonMonotone:"), "{d}");
        assert!(d.message.contains("segment 1"), "{d}");
    }

    #[test]
    fn syntax_errors_carry_lines() {
        let d = parse_spec("form.phi.breaks = 0:1,0 1:0,1\nnonsense\n").unwrap_err();
        assert_eq!((d.kind.clone(), d.line), (DiagnosticKind::Syntax, Some(2)));
        assert_eq!(d.exit_code(), 2);
        let d = parse_spec("form.phi.breaks = 0:1,0 1/0:0,1\n").unwrap_err();
        assert_eq!(d.line, Some(1));
        let d = parse_spec("form.radial = 1\n").unwrap_err();
        assert_eq!(d.line, None);
        let d = parse_spec("form.phi.breaks = 0:1,0 1:0,1\ncollapse0 = 0,1\n").unwrap_err();
        assert_eq!(d.line, Some(2));
        let d = parse_spec("form.phi.breaks = 0:1,0 1:0,1\nform.phi.breaks = 0:1,0 1:0,1\n").unwrap_err();
        assert!(d.message.contains("line 1"));
    }

    #[test]
    fn line_forms_and_domains() {
        let line = parse_spec("form.phi.breaks = -3:-1,0;-2  3:-1,0;1\nform.domain = -3,3\n").unwrap();
        assert!(matches!(line, ParsedInput::Line(_)));
        assert_eq!(line.form().sweep(), Angle::half_turns(6));
        let d = parse_spec("form.phi.breaks = 0:1,0 1:0,1\nform.domain = 0,2\n").unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::Semantic);
    }

    #[test]
    fn radial_variants() {
        let text = "form.phi.breaks = 0:1,0 1:0,1\nform.radial = 0:1 1:3\n";
        let form = parse_spec(text).unwrap();
        assert_eq!(form.form().radial().eval(Rational::new(1, 2)), Rational::from_integer(2));
        let d = parse_spec("form.phi.breaks = 0:1,0 1:0,1\nform.radial = 0:1 1:-1\n").unwrap_err();
        assert_eq!(d.line, Some(2));
    }

    #[test]
    fn write_then_parse() {
        for k in 0..4 {
            let spec = alpha_k_spec(k).unwrap();
            assert_eq!(parse_spec(&write_spec(&spec).unwrap()).unwrap(), ParsedInput::Cut(spec));
        }
    }
}
