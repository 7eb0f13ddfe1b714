use std::fmt;

use super::{ConditionalModel, WorldId, WorldSet};

/// `Strict` enforces every conditional-model condition; `Relaxed` accepts
/// partial (non-total) preorders such as those produced by superset updates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationMode {
    Strict,
    Relaxed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub center: String,
    pub message: String,
    pub witnesses: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "order at {}: {}", self.center, self.message)?;
        if !self.witnesses.is_empty() {
            write!(f, " ({})", self.witnesses.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Informational remarks, e.g. defaulted orders.
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "violation: {v}")?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

/// Checks the conditional-model conditions for every world's order.
pub fn validate_model(m: &ConditionalModel, mode: ValidationMode) -> ValidationReport {
    let mut report = ValidationReport::default();
    for w in m.world_ids() {
        if !m.has_explicit_order(w) {
            report
                .notes
                .push(format!("order at {} defaulted to the trivial order", m.world_name(w)));
        }
        check_order(m, w, mode, &mut report.violations);
    }
    report
}

fn check_order(m: &ConditionalModel, w: WorldId, mode: ValidationMode, out: &mut Vec<Violation>) {
    let order = m.order(w);
    let names = |ws: &[WorldId]| ws.iter().map(|&u| m.world_name(u).to_string()).collect::<Vec<_>>();
    let mut push = |message: &str, witnesses: Vec<String>| {
        out.push(Violation {
            center: m.world_name(w).to_string(),
            message: message.to_string(),
            witnesses,
        })
    };

    if !order.domain().contains(w) {
        push("center world is not entertainable from itself", names(&[w]));
        return;
    }

    if let Some(ranks) = order.ranks() {
        if ranks.iter().any(Vec::is_empty) {
            push("empty rank", vec![]);
        }
        let mut seen = WorldSet::empty(m.len());
        let mut dup = Vec::new();
        for r in ranks {
            for (i, &u) in r.iter().enumerate() {
                if seen.contains(u) || r[..i].contains(&u) {
                    dup.push(u);
                }
                seen.insert(u);
            }
        }
        if !dup.is_empty() {
            dup.sort_unstable();
            dup.dedup();
            push("ranks not disjoint", names(&dup));
        }
        if ranks.first().map(|r| r.as_slice()) != Some(&[w][..]) {
            let first = ranks.first().cloned().unwrap_or_default();
            push(
                "first rank must be exactly the center (center must be strictly most similar)",
                names(&first),
            );
        }
        return;
    }

    let dom: Vec<WorldId> = order.domain().iter().collect();
    let not_reflexive: Vec<WorldId> = dom.iter().copied().filter(|&u| !order.le(u, u)).collect();
    if !not_reflexive.is_empty() {
        push("not reflexive", names(&not_reflexive));
    }
    'outer: for &a in &dom {
        for &b in &dom {
            for &c in &dom {
                if order.le(a, b) && order.le(b, c) && !order.le(a, c) {
                    push("not transitive", names(&[a, b, c]));
                    break 'outer;
                }
            }
        }
    }
    let not_below: Vec<WorldId> = dom.iter().copied().filter(|&u| u != w && !order.lt(w, u)).collect();
    if !not_below.is_empty() {
        push("center is not strictly below", names(&not_below));
    }
    if mode == ValidationMode::Strict {
        for &a in &dom {
            if let Some(&b) = dom.iter().find(|&&b| !order.le(a, b) && !order.le(b, a)) {
                push("not total", names(&[a, b]));
                break;
            }
        }
    }
}
