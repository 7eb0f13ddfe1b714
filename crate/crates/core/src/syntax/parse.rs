use thiserror::Error;

use super::{ClauseSet, Comparison, Formula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at byte {pos}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    fn new(pos: usize, message: impl Into<String>) -> Self {
        ParseError {
            pos,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Bottom,
    Tilde,
    Amp,
    Pipe,
    Arrow,
    Cf,
    Mcf,
    Le,
    LBrack,
    RBrack,
    LAngle,
    RAngle,
    LBrace,
    RBrace,
    Comma,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::Bottom => "_|_",
            Tok::Tilde => "~",
            Tok::Amp => "&",
            Tok::Pipe => "|",
            Tok::Arrow => "->",
            Tok::Cf => "cf>",
            Tok::Mcf => "mcf>",
            Tok::Le => "=<",
            Tok::LBrack => "[",
            Tok::RBrack => "]",
            Tok::LAngle => "<",
            Tok::RAngle => ">",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Ident(_) | Tok::Eof => "",
        }
    }
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_'
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let rest = &src[i..];
        let tok = if rest.starts_with("_|_") {
            i += 3;
            Tok::Bottom
        } else if rest.starts_with("->") {
            i += 2;
            Tok::Arrow
        } else if rest.starts_with("=<") {
            i += 2;
            Tok::Le
        } else if is_ident_char(c) {
            while i < bytes.len() && is_ident_char(bytes[i]) {
                i += 1;
            }
            let word = &src[start..i];
            // `cf>` / `mcf>` arrows; `>` otherwise only closes a diamond after `}`
            let mut j = i;
            while j < bytes.len() && bytes[j].is_ascii_whitespace() {
                j += 1;
            }
            if (word == "cf" || word == "mcf") && bytes.get(j) == Some(&b'>') {
                i = j + 1;
                if word == "cf" {
                    Tok::Cf
                } else {
                    Tok::Mcf
                }
            } else {
                Tok::Ident(word.to_string())
            }
        } else {
            i += 1;
            match c {
                b'~' => Tok::Tilde,
                b'&' => Tok::Amp,
                b'|' => Tok::Pipe,
                b'[' => Tok::LBrack,
                b']' => Tok::RBrack,
                b'<' => Tok::LAngle,
                b'>' => Tok::RAngle,
                b'{' => Tok::LBrace,
                b'}' => Tok::RBrace,
                b',' => Tok::Comma,
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                _ => {
                    let ch = rest.chars().next().unwrap_or('?');
                    return Err(ParseError::new(start, format!("unexpected character `{ch}`")));
                }
            }
        };
        out.push((start, tok));
    }
    out.push((src.len(), Tok::Eof));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(ParseError::new(
                self.pos(),
                format!("expected `{}`, found {}", t.text(), self.peek().describe()),
            ))
        }
    }

    // cf>, mcf>, =< and its clause variants: loosest, right-associative
    fn modal(&mut self) -> Result<Formula, ParseError> {
        let left = self.implication()?;
        match self.peek() {
            Tok::Cf => {
                self.bump();
                let right = self.modal()?;
                Ok(Formula::counterfactual(left, right))
            }
            Tok::Mcf => {
                self.bump();
                let right = self.modal()?;
                Ok(Formula::might(left, right))
            }
            Tok::Le => {
                self.bump();
                let kind = if *self.peek() == Tok::LBrace {
                    let g = self.clause()?;
                    let pos = self.pos();
                    match self.bump() {
                        Tok::Ident(t) if t == "nc" => Comparison::Counting(g),
                        Tok::Ident(t) if t == "cp" => Comparison::Restricted(g),
                        Tok::Ident(t) if t == "ms" => Comparison::Superset(g),
                        other => {
                            return Err(ParseError::new(
                                pos,
                                format!("expected comparison tag `nc`, `cp` or `ms`, found {}", other.describe()),
                            ))
                        }
                    }
                } else {
                    Comparison::Plain
                };
                let right = self.modal()?;
                Ok(Formula::compare(kind, left, right))
            }
            _ => Ok(left),
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let left = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let right = self.implication()?;
            Ok(Formula::implies(left, right))
        } else {
            Ok(left)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conjunction()?;
        while self.eat(&Tok::Pipe) {
            let rhs = self.conjunction()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while self.eat(&Tok::Amp) {
            let rhs = self.unary()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::LBrack => {
                self.bump();
                let (a, g) = self.modal_prefix()?;
                self.expect(Tok::RBrack)?;
                let c = self.unary()?;
                Ok(Formula::cp_box(a, g, c))
            }
            Tok::LAngle => {
                self.bump();
                let (a, g) = self.modal_prefix()?;
                self.expect(Tok::RAngle)?;
                let c = self.unary()?;
                Ok(Formula::cp_diamond(a, g, c))
            }
            _ => self.primary(),
        }
    }

    fn modal_prefix(&mut self) -> Result<(Formula, ClauseSet), ParseError> {
        let a = self.modal()?;
        self.expect(Tok::Comma)?;
        if *self.peek() != Tok::LBrace {
            return Err(ParseError::new(
                self.pos(),
                format!("expected a clause set `{{...}}`, found {}", self.peek().describe()),
            ));
        }
        let g = self.clause()?;
        Ok((a, g))
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Ident(name) => Ok(Formula::atom(&name)),
            Tok::Bottom => Ok(Formula::bottom()),
            Tok::LParen => {
                let f = self.modal()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::LBrace => Err(ParseError::new(pos, "clause set used where a formula is expected")),
            other => Err(ParseError::new(
                pos,
                format!("expected a formula, found {}", other.describe()),
            )),
        }
    }

    fn clause(&mut self) -> Result<ClauseSet, ParseError> {
        self.expect(Tok::LBrace)?;
        let mut items = Vec::new();
        if !self.eat(&Tok::RBrace) {
            loop {
                items.push(self.modal()?);
                if self.eat(&Tok::RBrace) {
                    break;
                }
                self.expect(Tok::Comma)?;
            }
        }
        Ok(ClauseSet::new(items))
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Eof => Ok(()),
            t => Err(ParseError::new(
                self.pos(),
                format!("unexpected trailing {}", t.describe()),
            )),
        }
    }
}

/// Parses a formula in the concrete ASCII syntax.
///
/// `~ & | ->` are the Boolean connectives (tightest first), `cf>`/`mcf>` the
/// plain would/might counterfactuals, `[φ, {..}] ψ` and `<φ, {..}> ψ` the
/// ceteris paribus box and diamond, `=<` the comparative possibility order with
/// optional `{..}nc`, `{..}cp`, `{..}ms` variants, and `_|_` falsum.
pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    let f = p.modal()?;
    p.finish()?;
    Ok(f)
}

/// Parses a brace-delimited clause such as `{m, s}`.
pub fn parse_clause_set(src: &str) -> Result<ClauseSet, ParseError> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    let g = p.clause()?;
    p.finish()?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn grammar_cases() {
        assert_eq!(
            parse_formula("[p, {m}] h").unwrap(),
            Formula::cp_box(at("p"), ClauseSet::new([at("m")]), at("h"))
        );
        assert_eq!(
            parse_formula("p cf> h").unwrap(),
            Formula::cp_box(at("p"), ClauseSet::empty(), at("h"))
        );
        assert_eq!(
            parse_formula("(p & s) =< (p & ~s)").unwrap(),
            Formula::compare(
                Comparison::Plain,
                Formula::and(at("p"), at("s")),
                Formula::and(at("p"), Formula::not(at("s")))
            )
        );
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse_formula("~p & q | r -> s").unwrap(),
            Formula::implies(
                Formula::or(Formula::and(Formula::not(at("p")), at("q")), at("r")),
                at("s")
            )
        );
        assert_eq!(
            parse_formula("p -> q -> r").unwrap(),
            Formula::implies(at("p"), Formula::implies(at("q"), at("r")))
        );
        assert_eq!(
            parse_formula("p cf> q cf> r").unwrap(),
            Formula::counterfactual(at("p"), Formula::counterfactual(at("q"), at("r")))
        );
        assert_eq!(
            parse_formula("p | q cf> r & s").unwrap(),
            Formula::counterfactual(Formula::or(at("p"), at("q")), Formula::and(at("r"), at("s")))
        );
        // prefix modalities bind like negation
        assert_eq!(
            parse_formula("[p, {}] q & r").unwrap(),
            Formula::and(Formula::counterfactual(at("p"), at("q")), at("r"))
        );
    }

    #[test]
    fn clause_variants_and_diamonds() {
        let g = ClauseSet::new([at("m"), at("s")]);
        assert_eq!(
            parse_formula("p =<{s, m}ms q").unwrap(),
            Formula::compare(Comparison::Superset(g.clone()), at("p"), at("q"))
        );
        assert_eq!(
            parse_formula("p =< {m,s} nc q").unwrap(),
            Formula::compare(Comparison::Counting(g.clone()), at("p"), at("q"))
        );
        assert_eq!(
            parse_formula("<p, {m, s}> q").unwrap(),
            Formula::cp_diamond(at("p"), g, at("q"))
        );
        assert_eq!(parse_formula("p mcf> q").unwrap(), Formula::might(at("p"), at("q")));
        assert_eq!(parse_formula("~_|_").unwrap(), Formula::top());
    }

    #[test]
    fn identifiers_named_like_keywords() {
        assert_eq!(parse_formula("cf & mcf").unwrap(), Formula::and(at("cf"), at("mcf")));
        assert_eq!(
            parse_formula("cf cf> nc").unwrap(),
            Formula::counterfactual(at("cf"), at("nc"))
        );
        assert_eq!(
            parse_formula("p cf >x").unwrap(),
            Formula::counterfactual(at("p"), at("x"))
        );
        assert!(parse_formula("cf >x").is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_formula("p & ").unwrap_err();
        assert_eq!(e.pos, 4);
        let e = parse_formula("[p, m] h").unwrap_err();
        assert!(e.message.contains("clause set"), "{e}");
        let e = parse_formula("p =<{m}xx q").unwrap_err();
        assert!(e.message.contains("tag"), "{e}");
        assert!(parse_formula("p $ q").is_err());
        assert!(parse_formula("(p").is_err());
        assert!(parse_formula("p q").is_err());
        let e = parse_formula("{p} & q").unwrap_err();
        assert!(e.message.contains("clause set used"), "{e}");
    }

    #[test]
    fn clause_sets() {
        assert_eq!(parse_clause_set("{}").unwrap(), ClauseSet::empty());
        assert_eq!(parse_clause_set(" { m , s } ").unwrap().len(), 2);
        assert!(parse_clause_set("{m,}").is_err());
        assert!(parse_clause_set("m").is_err());
    }
}
