//! Line-oriented model files:
//!
//! ```text
//! model fine
//! worlds w u1 u2 v1 v2
//! val p: u1 u2 v1 v2
//! order w: w | v1 | v2 | u1 | u2
//! order-pairs x: x<=x, x<=y, y<=y
//! ```
//!
//! `#` starts a comment. Propositions without a `val` line are false
//! everywhere; worlds without an order get the trivial one.

use std::fmt::Write as _;

use super::{ConditionalModel, ModelError, ValidationMode};

fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|c| c.is_ascii_alphanumeric() || c == b'_')
}

fn syntax(line: usize, message: impl Into<String>) -> ModelError {
    ModelError::Syntax {
        line,
        message: message.into(),
    }
}

fn idents(line: usize, text: &str) -> Result<Vec<String>, ModelError> {
    text.split_whitespace()
        .map(|t| {
            if is_ident(t) {
                Ok(t.to_string())
            } else {
                Err(syntax(line, format!("invalid identifier `{t}`")))
            }
        })
        .collect()
}

fn split_head(line: usize, rest: &str) -> Result<(String, &str), ModelError> {
    let (head, tail) = rest.split_once(':').ok_or_else(|| syntax(line, "expected `<name>:`"))?;
    let head = head.trim();
    if !is_ident(head) {
        return Err(syntax(line, format!("invalid identifier `{head}`")));
    }
    Ok((head.to_string(), tail))
}

/// Parses without validation; see [`parse_model`].
pub(crate) fn parse_model_unchecked(text: &str) -> Result<ConditionalModel, ModelError> {
    let mut name = None;
    let mut worlds = None;
    let mut builder = ConditionalModel::builder("");
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match kw {
            "model" => {
                let n = rest.trim();
                if !is_ident(n) {
                    return Err(syntax(ln, format!("invalid model name `{n}`")));
                }
                name = Some(n.to_string());
            }
            "worlds" => {
                if worlds.is_some() {
                    return Err(syntax(ln, "duplicate `worlds` line"));
                }
                let ws = idents(ln, rest)?;
                if ws.is_empty() {
                    return Err(syntax(ln, "a model needs at least one world"));
                }
                worlds = Some(ws.clone());
                builder = builder.worlds(ws);
            }
            "val" => {
                let (p, tail) = split_head(ln, rest)?;
                builder = builder.val(&p, idents(ln, tail)?);
            }
            "order" => {
                let (c, tail) = split_head(ln, rest)?;
                let ranks = tail.split('|').map(|r| idents(ln, r)).collect::<Result<Vec<_>, _>>()?;
                if ranks.iter().any(Vec::is_empty) {
                    return Err(syntax(ln, "empty rank"));
                }
                builder = builder.order(&c, ranks);
            }
            "order-pairs" => {
                let (c, tail) = split_head(ln, rest)?;
                let mut pairs = Vec::new();
                for item in tail.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    let (a, b) = item
                        .split_once("<=")
                        .ok_or_else(|| syntax(ln, format!("expected `u<=v`, found `{item}`")))?;
                    let (a, b) = (a.trim(), b.trim());
                    if !is_ident(a) || !is_ident(b) {
                        return Err(syntax(ln, format!("invalid pair `{item}`")));
                    }
                    pairs.push((a.to_string(), b.to_string()));
                }
                builder = builder.order_pairs(&c, pairs);
            }
            other => return Err(syntax(ln, format!("unknown directive `{other}`"))),
        }
        if kw != "model" && kw != "worlds" && worlds.is_none() {
            return Err(syntax(ln, "`worlds` must come before valuations and orders"));
        }
    }
    if worlds.is_none() {
        return Err(syntax(0, "missing `worlds` line"));
    }
    let mut m = builder.build_unchecked().map_err(|e| match e {
        ModelError::Syntax { message, .. } => syntax(0, message),
        e => e,
    })?;
    m.set_name(name.as_deref().unwrap_or("unnamed"));
    Ok(m)
}

/// Parses and strictly validates a model file.
pub fn parse_model(text: &str) -> Result<ConditionalModel, ModelError> {
    parse_model_with(text, ValidationMode::Strict)
}

pub fn parse_model_with(text: &str, mode: ValidationMode) -> Result<ConditionalModel, ModelError> {
    parse_model_unchecked(text)?.validated(mode)
}

/// Serializes a model; the output parses back to an equal model.
pub fn render_model(m: &ConditionalModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "model {}", m.name());
    let _ = writeln!(out, "worlds {}", m.names_of(&m.all_worlds()).join(" "));
    for p in m.props() {
        let ws = m.valuation(p);
        let names = m.names_of(&ws);
        if names.is_empty() {
            let _ = writeln!(out, "val {p}:");
        } else {
            let _ = writeln!(out, "val {p}: {}", names.join(" "));
        }
    }
    for w in m.world_ids() {
        if !m.has_explicit_order(w) {
            continue;
        }
        let o = m.order(w);
        match o.ranks() {
            Some(ranks) => {
                let rs: Vec<String> = ranks
                    .iter()
                    .map(|r| r.iter().map(|&u| m.world_name(u)).collect::<Vec<_>>().join(" "))
                    .collect();
                let _ = writeln!(out, "order {}: {}", m.world_name(w), rs.join(" | "));
            }
            None => {
                let ps: Vec<String> = o
                    .pairs()
                    .into_iter()
                    .map(|(u, v)| format!("{}<={}", m.world_name(u), m.world_name(v)))
                    .collect();
                let _ = writeln!(out, "order-pairs {}: {}", m.world_name(w), ps.join(", "));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::WorldSet;

    const FINE: &str = "\
# the Fine model
model fine
worlds w u1 u2 v1 v2
val p: u1 u2 v1 v2
val s: u1 u2
val h: u1 u2
val m: v1 v2
order w: w | v1 | v2 | u1 | u2
";

    #[test]
    fn parses_fine() {
        let m = parse_model(FINE).unwrap();
        assert_eq!(m.name(), "fine");
        assert_eq!(m.len(), 5);
        let w = m.world("w").unwrap();
        let ranks = m.order(w).ranks().unwrap();
        let named: Vec<Vec<&str>> = ranks
            .iter()
            .map(|r| r.iter().map(|&u| m.world_name(u)).collect())
            .collect();
        assert_eq!(named, vec![vec!["w"], vec!["v1"], vec!["v2"], vec!["u1"], vec!["u2"]]);
    }

    #[test]
    fn round_trip() {
        let m = parse_model(FINE).unwrap();
        assert_eq!(parse_model(&render_model(&m)).unwrap(), m);

        let partial = "model x\nworlds a b c\nval q:\norder-pairs a: a<=a, b<=b, c<=c, a<=b, a<=c\n";
        let m = parse_model_with(partial, ValidationMode::Relaxed).unwrap();
        assert_eq!(m.valuation(&"q".into()), WorldSet::empty(3));
        assert_eq!(parse_model_with(&render_model(&m), ValidationMode::Relaxed).unwrap(), m);
        assert!(parse_model(partial).is_err());
    }

    #[test]
    fn missing_center_is_a_validation_error() {
        let text = "model bad\nworlds w u\norder w: u\n";
        match parse_model(text) {
            Err(ModelError::Invalid(r)) => assert!(r.violations[0].witnesses.contains(&"w".to_string())),
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(
            parse_model("model a\nval p: x\n"),
            Err(ModelError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_model("worlds a\nfrobnicate\n"),
            Err(ModelError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_model("worlds a\norder a: a ||\n"),
            Err(ModelError::Syntax { .. })
        ));
        assert!(matches!(
            parse_model("worlds a b\nval p: c\n"),
            Err(ModelError::UnknownWorld(_))
        ));
        assert!(matches!(parse_model("worlds a a\n"), Err(ModelError::Syntax { .. })));
        assert!(matches!(parse_model("worlds a-b\n"), Err(ModelError::Syntax { .. })));
    }
}
