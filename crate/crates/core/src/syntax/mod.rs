//! Formula ASTs for the ceteris paribus language and the comparative
//! possibility language, with parsing, printing and universe-of-discourse
//! computation.
//!
//! Only the primitive connectives are AST nodes. Conjunction, implication,
//! diamonds, strict comparatives and the plain counterfactual are built
//! through the constructor functions on [`Formula`] as abbreviations.

mod parse;
mod render;

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub use parse::{parse_clause_set, parse_formula, ParseError};
pub use render::render_formula;

/// A proposition identifier.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prop(Arc<str>);

impl Prop {
    pub fn new(name: &str) -> Self {
        Prop(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<&str> for Prop {
    fn from(s: &str) -> Self {
        Prop::new(s)
    }
}

/// Set of proposition identifiers used as the ambient vocabulary.
pub type PropUniverse = BTreeSet<Prop>;

/// Which comparative possibility relation a `Compare` node refers to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Comparison {
    /// `≼`, the similarity order itself.
    Plain,
    /// `≼^Γ`, the agreement-counting order.
    Counting(ClauseSet),
    /// `⊴^Γ`, the similarity order restricted to worlds agreeing on Γ.
    Restricted(ClauseSet),
    /// `⊑^Γ`, the agreement-inclusion order.
    Superset(ClauseSet),
}

impl Comparison {
    pub fn clause(&self) -> Option<&ClauseSet> {
        match self {
            Comparison::Plain => None,
            Comparison::Counting(g) | Comparison::Restricted(g) | Comparison::Superset(g) => Some(g),
        }
    }

    /// Concrete-syntax tag (`nc`, `cp`, `ms`); `None` for the plain order.
    pub fn tag(&self) -> Option<&'static str> {
        match self {
            Comparison::Plain => None,
            Comparison::Counting(_) => Some("nc"),
            Comparison::Restricted(_) => Some("cp"),
            Comparison::Superset(_) => Some("ms"),
        }
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Atom(Prop),
    Bottom,
    Not(Formula),
    Or(Formula, Formula),
    /// `[φ, Γ]ψ`
    CpBox {
        antecedent: Formula,
        clause: ClauseSet,
        consequent: Formula,
    },
    /// `φ ≼ ψ` and its clause-indexed variants.
    Compare {
        kind: Comparison,
        left: Formula,
        right: Formula,
    },
}

/// An immutable, cheaply clonable formula.
///
/// Subformulas are reference counted, so repeated occurrences produced by the
/// translations share storage. Equality is structural with a pointer fast path.
#[derive(Clone)]
pub struct Formula(Arc<Node>);

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Formula {}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_formula(self))
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", render_formula(self))
    }
}

impl Formula {
    pub fn from_node(node: Node) -> Self {
        Formula(Arc::new(node))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    /// Address of the shared node; stable for as long as any clone lives.
    pub(crate) fn addr(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn atom(name: &str) -> Self {
        Self::from_node(Node::Atom(Prop::new(name)))
    }

    pub fn prop(p: Prop) -> Self {
        Self::from_node(Node::Atom(p))
    }

    pub fn bottom() -> Self {
        Self::from_node(Node::Bottom)
    }

    /// `⊤ := ¬⊥`
    pub fn top() -> Self {
        Self::not(Self::bottom())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Self::from_node(Node::Not(f))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Self::from_node(Node::Or(a, b))
    }

    /// `a ∧ b := ¬(¬a ∨ ¬b)`
    pub fn and(a: Formula, b: Formula) -> Self {
        Self::not(Self::or(Self::not(a), Self::not(b)))
    }

    /// `a → b := ¬a ∨ b`
    pub fn implies(a: Formula, b: Formula) -> Self {
        Self::or(Self::not(a), b)
    }

    /// Left-nested conjunction; the empty conjunction is `⊤`.
    pub fn conj<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        items.into_iter().reduce(Self::and).unwrap_or_else(Self::top)
    }

    /// Left-nested disjunction; the empty disjunction is `⊥`.
    pub fn disj<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        items.into_iter().reduce(Self::or).unwrap_or_else(Self::bottom)
    }

    pub fn cp_box(antecedent: Formula, clause: ClauseSet, consequent: Formula) -> Self {
        Self::from_node(Node::CpBox {
            antecedent,
            clause,
            consequent,
        })
    }

    /// `⟨φ, Γ⟩ψ := ¬[φ, Γ]¬ψ`
    pub fn cp_diamond(antecedent: Formula, clause: ClauseSet, consequent: Formula) -> Self {
        Self::not(Self::cp_box(antecedent, clause, Self::not(consequent)))
    }

    /// `φ □→ ψ`, canonicalized as `[φ, ∅]ψ`.
    pub fn counterfactual(antecedent: Formula, consequent: Formula) -> Self {
        Self::cp_box(antecedent, ClauseSet::empty(), consequent)
    }

    /// `φ ◇→ ψ := ¬(φ □→ ¬ψ)`
    pub fn might(antecedent: Formula, consequent: Formula) -> Self {
        Self::cp_diamond(antecedent, ClauseSet::empty(), consequent)
    }

    pub fn compare(kind: Comparison, left: Formula, right: Formula) -> Self {
        Self::from_node(Node::Compare { kind, left, right })
    }

    /// Strict comparative: `φ < ψ := ¬(ψ ≤ φ)` for the chosen relation.
    pub fn strict(kind: Comparison, left: Formula, right: Formula) -> Self {
        Self::not(Self::compare(kind, right, left))
    }

    /// `◇φ := φ ≺ ⊥`
    pub fn possibly(f: Formula) -> Self {
        Self::strict(Comparison::Plain, f, Self::bottom())
    }

    /// `□φ := ¬◇¬φ`
    pub fn necessarily(f: Formula) -> Self {
        Self::not(Self::possibly(Self::not(f)))
    }

    /// True when the formula contains no conditional or comparative operator.
    pub fn is_boolean(&self) -> bool {
        self.all_nodes(|n| matches!(n, Node::Atom(_) | Node::Bottom | Node::Not(_) | Node::Or(..)))
    }

    pub fn is_modal(&self) -> bool {
        !self.is_boolean()
    }

    /// Membership in the target fragment of the translation: atoms, `⊥`, `¬`,
    /// `∨` and the plain `≼` only.
    pub fn is_plain_fragment(&self) -> bool {
        self.all_nodes(|n| match n {
            Node::CpBox { .. } => false,
            Node::Compare { kind, .. } => *kind == Comparison::Plain,
            _ => true,
        })
    }

    fn all_nodes(&self, pred: impl Fn(&Node) -> bool) -> bool {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.clone()];
        while let Some(f) = stack.pop() {
            if !seen.insert(f.addr()) {
                continue;
            }
            if !pred(f.node()) {
                return false;
            }
            f.push_children(&mut stack);
        }
        true
    }

    fn push_children(&self, out: &mut Vec<Formula>) {
        match self.node() {
            Node::Atom(_) | Node::Bottom => {}
            Node::Not(a) => out.push(a.clone()),
            Node::Or(a, b) => {
                out.push(a.clone());
                out.push(b.clone());
            }
            Node::CpBox {
                antecedent,
                clause,
                consequent,
            } => {
                out.push(antecedent.clone());
                out.extend(clause.iter().cloned());
                out.push(consequent.clone());
            }
            Node::Compare { kind, left, right } => {
                out.push(left.clone());
                if let Some(g) = kind.clause() {
                    out.extend(g.iter().cloned());
                }
                out.push(right.clone());
            }
        }
    }

    /// Immediate subformulas, clause members included.
    pub fn children(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        self.push_children(&mut out);
        out
    }

    /// Number of nodes when the formula is written out as a tree.
    /// Saturates instead of overflowing.
    pub fn tree_size(&self) -> u64 {
        fn go(f: &Formula, memo: &mut std::collections::HashMap<usize, u64>) -> u64 {
            if let Some(&n) = memo.get(&f.addr()) {
                return n;
            }
            let n = f.children().iter().fold(1u64, |acc, c| acc.saturating_add(go(c, memo)));
            memo.insert(f.addr(), n);
            n
        }
        go(self, &mut Default::default())
    }

    /// Number of distinct shared nodes held in memory.
    pub fn dag_size(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.clone()];
        while let Some(f) = stack.pop() {
            if seen.insert(f.addr()) {
                f.push_children(&mut stack);
            }
        }
        seen.len()
    }

    /// Maximum nesting of conditional and comparative operators.
    pub fn modal_depth(&self) -> usize {
        let inner = self.children().iter().map(Formula::modal_depth).max().unwrap_or(0);
        match self.node() {
            Node::CpBox { .. } | Node::Compare { .. } => inner + 1,
            _ => inner,
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

/// A finite ceteris paribus clause Γ.
///
/// Members are deduplicated structurally and kept in lexicographic order of
/// their printed form, which fixes the enumeration order used everywhere else.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ClauseSet {
    members: Vec<Formula>,
}

impl ClauseSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        let mut keyed: Vec<(String, Formula)> = items.into_iter().map(|f| (render_formula(&f), f)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.0 == b.0);
        ClauseSet {
            members: keyed.into_iter().map(|(_, f)| f).collect(),
        }
    }

    /// Clause of atoms.
    pub fn of_atoms<'a, I: IntoIterator<Item = &'a str>>(names: I) -> Self {
        Self::new(names.into_iter().map(Formula::atom))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Formula> {
        self.members.iter()
    }

    pub fn members(&self) -> &[Formula] {
        &self.members
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.members.contains(f)
    }

    /// `Γ ∪ {α}`
    pub fn with(&self, f: Formula) -> Self {
        Self::new(self.members.iter().cloned().chain(std::iter::once(f)))
    }

    pub fn is_boolean(&self) -> bool {
        self.members.iter().all(Formula::is_boolean)
    }
}

impl fmt::Display for ClauseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for ClauseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> IntoIterator for &'a ClauseSet {
    type Item = &'a Formula;
    type IntoIter = std::slice::Iter<'a, Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Propositional variables occurring in a formula, clause members included.
pub fn universe_of_discourse(f: &Formula) -> PropUniverse {
    let mut out = PropUniverse::new();
    collect_props(f, &mut out, &mut Default::default());
    out
}

/// Union of the universes of discourse of the clause members.
pub fn clause_universe(g: &ClauseSet) -> PropUniverse {
    let mut out = PropUniverse::new();
    let mut seen = Default::default();
    for m in g {
        collect_props(m, &mut out, &mut seen);
    }
    out
}

fn collect_props(f: &Formula, out: &mut PropUniverse, seen: &mut std::collections::HashSet<usize>) {
    if !seen.insert(f.addr()) {
        return;
    }
    if let Node::Atom(p) = f.node() {
        out.insert(p.clone());
    }
    for c in f.children() {
        collect_props(&c, out, seen);
    }
}

/// The clause that fixes every variable of `universe` not mentioned by the
/// antecedent or the consequent.
pub fn von_wright_clause(antecedent: &Formula, consequent: &Formula, universe: &PropUniverse) -> ClauseSet {
    let mut mentioned = universe_of_discourse(antecedent);
    mentioned.extend(universe_of_discourse(consequent));
    ClauseSet::new(
        universe
            .iter()
            .filter(|p| !mentioned.contains(*p))
            .cloned()
            .map(Formula::prop),
    )
}
