use super::{ClauseSet, Formula, Node};

// Binding strength, loosest first.
const MODAL: u8 = 0;
const IMPLIES: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;
const ATOM: u8 = 5;

enum View<'a> {
    And(&'a Formula, &'a Formula),
    Implies(&'a Formula, &'a Formula),
    Diamond(&'a Formula, &'a ClauseSet, &'a Formula),
    Raw,
}

// Abbreviations are printed only when the node matches them exactly, so the
// sugared text parses back to the same tree.
fn view(f: &Formula) -> View<'_> {
    match f.node() {
        Node::Not(inner) => match inner.node() {
            Node::Or(a, b) => match (a.node(), b.node()) {
                (Node::Not(x), Node::Not(y)) => View::And(x, y),
                _ => View::Raw,
            },
            Node::CpBox {
                antecedent,
                clause,
                consequent,
            } => match consequent.node() {
                Node::Not(c) => View::Diamond(antecedent, clause, c),
                _ => View::Raw,
            },
            _ => View::Raw,
        },
        Node::Or(a, b) => match a.node() {
            Node::Not(x) => View::Implies(x, b),
            _ => View::Raw,
        },
        _ => View::Raw,
    }
}

fn level(f: &Formula) -> u8 {
    match view(f) {
        View::And(..) => AND,
        View::Implies(..) => IMPLIES,
        View::Diamond(..) => UNARY,
        View::Raw => match f.node() {
            Node::Atom(_) | Node::Bottom => ATOM,
            Node::Not(_) | Node::CpBox { .. } => UNARY,
            Node::Or(..) => OR,
            Node::Compare { .. } => MODAL,
        },
    }
}

fn emit_at(f: &Formula, min: u8, out: &mut String) {
    if level(f) < min {
        out.push('(');
        emit(f, out);
        out.push(')');
    } else {
        emit(f, out);
    }
}

fn emit_clause(g: &ClauseSet, out: &mut String) {
    out.push('{');
    for (i, m) in g.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        emit_at(m, MODAL, out);
    }
    out.push('}');
}

fn emit(f: &Formula, out: &mut String) {
    match view(f) {
        View::And(a, b) => {
            emit_at(a, AND, out);
            out.push_str(" & ");
            emit_at(b, UNARY, out);
        }
        View::Implies(a, b) => {
            emit_at(a, OR, out);
            out.push_str(" -> ");
            emit_at(b, IMPLIES, out);
        }
        View::Diamond(a, g, c) => {
            out.push('<');
            emit_at(a, MODAL, out);
            out.push_str(", ");
            emit_clause(g, out);
            out.push_str("> ");
            emit_at(c, UNARY, out);
        }
        View::Raw => match f.node() {
            Node::Atom(p) => out.push_str(p.as_str()),
            Node::Bottom => out.push_str("_|_"),
            Node::Not(a) => {
                out.push('~');
                emit_at(a, UNARY, out);
            }
            Node::Or(a, b) => {
                emit_at(a, OR, out);
                out.push_str(" | ");
                emit_at(b, AND, out);
            }
            Node::CpBox {
                antecedent,
                clause,
                consequent,
            } => {
                out.push('[');
                emit_at(antecedent, MODAL, out);
                out.push_str(", ");
                emit_clause(clause, out);
                out.push_str("] ");
                emit_at(consequent, UNARY, out);
            }
            Node::Compare { kind, left, right } => {
                emit_at(left, IMPLIES, out);
                out.push_str(" =<");
                if let Some(g) = kind.clause() {
                    emit_clause(g, out);
                    out.push_str(kind.tag().unwrap_or_default());
                }
                out.push(' ');
                emit_at(right, MODAL, out);
            }
        },
    }
}

/// Prints a formula in the concrete syntax accepted by
/// [`parse_formula`](super::parse_formula), with minimal parentheses.
pub fn render_formula(f: &Formula) -> String {
    let mut out = String::new();
    emit(f, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::super::{parse_formula, ClauseSet, Formula};
    use super::render_formula;

    fn at(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn examples() {
        assert_eq!(
            render_formula(&Formula::cp_box(at("p"), ClauseSet::of_atoms(["m"]), at("h"))),
            "[p, {m}] h"
        );
        assert_eq!(render_formula(&Formula::not(Formula::or(at("p"), at("q")))), "~(p | q)");
        let nested = Formula::cp_box(
            at("p"),
            ClauseSet::of_atoms(["s"]),
            Formula::cp_box(at("q"), ClauseSet::empty(), at("r")),
        );
        assert_eq!(render_formula(&nested), "[p, {s}] [q, {}] r");
    }

    #[test]
    fn sugar_round_trips() {
        for src in [
            "p & q & r",
            "p & (q & r)",
            "p -> q -> r",
            "(p -> q) -> r",
            "<p, {m, s}> ~h",
            "(p & s) =< (p & ~s)",
            "p =<{m}nc q =< r",
            "(p =< q) =< r",
            "~(_|_ =< p)",
            "[p cf> q, {a | b, ~c}] (r -> s)",
            "~[p, {}] q & r",
            "p | q & r",
            "(p | q) & r",
        ] {
            let f = parse_formula(src).unwrap();
            let text = render_formula(&f);
            assert_eq!(parse_formula(&text).unwrap(), f, "{src} -> {text}");
        }
        assert_eq!(render_formula(&parse_formula("p & (q & r)").unwrap()), "p & (q & r)");
        assert_eq!(
            render_formula(&parse_formula("(p & s) =< (p & ~s)").unwrap()),
            "p & s =< p & ~s"
        );
    }
}
