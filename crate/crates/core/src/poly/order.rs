use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    Degrevlex,
    Lex,
    /// Block order: the first `k` variables (in the order's variable sequence)
    /// are eliminated; degrevlex inside each block.
    Elimination(usize),
    /// Local order: lower total degree is larger, ties broken by degrevlex.
    NegDegrevlex,
}

/// A monomial order together with the variable sequence it reads exponents in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    /// `perm[k]` is the ring index of the k-th most significant variable.
    /// `None` means the declared variable order.
    pub perm: Option<Vec<usize>>,
}

impl MonomialOrder {
    pub fn degrevlex() -> Self {
        Self { kind: OrderKind::Degrevlex, perm: None }
    }

    pub fn lex() -> Self {
        Self { kind: OrderKind::Lex, perm: None }
    }

    pub fn elimination(k: usize) -> Self {
        Self { kind: OrderKind::Elimination(k), perm: None }
    }

    pub fn local() -> Self {
        Self { kind: OrderKind::NegDegrevlex, perm: None }
    }

    pub fn with_perm(mut self, perm: Vec<usize>) -> Self {
        self.perm = Some(perm);
        self
    }

    /// Global orders have 1 as their smallest monomial.
    pub fn is_global(&self) -> bool {
        !matches!(self.kind, OrderKind::NegDegrevlex)
    }

    fn exps<'a>(&self, m: &'a Monomial) -> std::borrow::Cow<'a, [u32]> {
        match &self.perm {
            None => std::borrow::Cow::Borrowed(m.exponents()),
            Some(p) => std::borrow::Cow::Owned(p.iter().map(|&i| m.exponents()[i]).collect()),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let ea = self.exps(a);
        let eb = self.exps(b);
        match self.kind {
            OrderKind::Lex => ea.as_ref().cmp(eb.as_ref()),
            OrderKind::Degrevlex => degrevlex(&ea, &eb),
            OrderKind::NegDegrevlex => {
                let da: u64 = ea.iter().map(|&e| e as u64).sum();
                let db: u64 = eb.iter().map(|&e| e as u64).sum();
                db.cmp(&da).then_with(|| revlex_tie(&ea, &eb))
            }
            OrderKind::Elimination(k) => {
                let k = k.min(ea.len());
                degrevlex(&ea[..k], &eb[..k]).then_with(|| degrevlex(&ea[k..], &eb[k..]))
            }
        }
    }
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| revlex_tie(a, b))
}

// Among equal degrees, the monomial with the smaller exponent in the last
// differing variable is larger.
fn revlex_tie(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}
