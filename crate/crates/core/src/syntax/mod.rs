//! Terms and case bindings of the lambda-calculus with constructors.
//!
//! Binders keep the names the user wrote. Capture is avoided by renaming
//! with primes (`x`, `x'`, `x''`, ...) and alpha-equivalence is decided on
//! a nameless key (see [`alpha`]).

pub mod alpha;
pub mod measure;
pub mod subst;

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

pub use alpha::{alpha_eq, alpha_eq_binding, AlphaKey};
pub use measure::{node_count, structural_measure, structural_measure_binding, Measure};
pub use subst::{fresh_name, substitute, substitute_binding};

/// A term of the calculus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Constr(String),
    Lam(String, Box<Term>),
    App(Box<Term>, Box<Term>),
    Case(Binding, Box<Term>),
    Daimon,
}

/// A case binding: a finite map from constructors to branch bodies.
///
/// Branch order is kept for printing and positions, but two bindings are
/// equal when they map the same constructors to equal bodies.
#[derive(Clone, Debug, Default, Eq)]
pub struct Binding {
    branches: Vec<(String, Term)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("constructor {0} appears twice in a case binding")]
pub struct DuplicateBranch(pub String);

impl Binding {
    pub fn new(branches: Vec<(String, Term)>) -> Result<Self, DuplicateBranch> {
        let mut seen = BTreeSet::new();
        for (c, _) in &branches {
            if !seen.insert(c.as_str()) {
                return Err(DuplicateBranch(c.clone()));
            }
        }
        Ok(Binding { branches })
    }

    pub fn empty() -> Self {
        Binding::default()
    }

    pub fn branches(&self) -> &[(String, Term)] {
        &self.branches
    }

    pub fn len(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }

    /// The body bound to constructor `c`, if `c` is in the domain.
    pub fn get(&self, c: &str) -> Option<&Term> {
        self.branches.iter().find(|(k, _)| k == c).map(|(_, u)| u)
    }

    pub fn contains(&self, c: &str) -> bool {
        self.get(c).is_some()
    }

    pub fn domain(&self) -> impl Iterator<Item = &str> {
        self.branches.iter().map(|(c, _)| c.as_str())
    }

    /// Applies `f` to every branch body, keeping keys and order.
    pub fn map_bodies(&self, mut f: impl FnMut(&Term) -> Term) -> Binding {
        Binding {
            branches: self
                .branches
                .iter()
                .map(|(c, u)| (c.clone(), f(u)))
                .collect(),
        }
    }

    pub(crate) fn body_mut(&mut self, index: usize) -> Option<&mut Term> {
        self.branches.get_mut(index).map(|(_, u)| u)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for (_, u) in &self.branches {
            u.collect_free(&mut Vec::new(), &mut out);
        }
        out
    }
}

impl PartialEq for Binding {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self
                .branches
                .iter()
                .all(|(c, u)| other.get(c).is_some_and(|v| u == v))
    }
}

impl Hash for Binding {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let mut sorted: Vec<&(String, Term)> = self.branches.iter().collect();
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        sorted.hash(state);
    }
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn constr(name: impl Into<String>) -> Term {
        Term::Constr(name.into())
    }

    pub fn lam(x: impl Into<String>, body: Term) -> Term {
        Term::Lam(x.into(), Box::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    /// Left-nested application `head a1 ... an`.
    pub fn apps(head: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(head, Term::app)
    }

    pub fn case(binding: Binding, scrutinee: Term) -> Term {
        Term::Case(binding, Box::new(scrutinee))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn has_free(&self, x: &str) -> bool {
        match self {
            Term::Var(y) => x == y,
            Term::Constr(_) | Term::Daimon => false,
            Term::Lam(y, body) => y != x && body.has_free(x),
            Term::App(f, a) => f.has_free(x) || a.has_free(x),
            Term::Case(theta, t) => {
                t.has_free(x) || theta.branches.iter().any(|(_, u)| u.has_free(x))
            }
        }
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                if !bound.contains(&x.as_str()) {
                    out.insert(x.clone());
                }
            }
            Term::Constr(_) | Term::Daimon => {}
            Term::Lam(x, body) => {
                bound.push(x);
                body.collect_free(bound, out);
                bound.pop();
            }
            Term::App(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            Term::Case(theta, t) => {
                for (_, u) in &theta.branches {
                    u.collect_free(bound, out);
                }
                t.collect_free(bound, out);
            }
        }
    }

    pub fn contains_daimon(&self) -> bool {
        match self {
            Term::Daimon => true,
            Term::Var(_) | Term::Constr(_) => false,
            Term::Lam(_, b) => b.contains_daimon(),
            Term::App(f, a) => f.contains_daimon() || a.contains_daimon(),
            Term::Case(theta, t) => {
                t.contains_daimon() || theta.branches.iter().any(|(_, u)| u.contains_daimon())
            }
        }
    }

    /// Splits `h t1 ... tk` into its head and arguments.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut head = self;
        while let Term::App(f, a) = head {
            args.push(a.as_ref());
            head = f;
        }
        args.reverse();
        (head, args)
    }

    /// Child terms in position order: a case has its scrutinee at 0 and
    /// branch bodies at 1..=n.
    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Var(_) | Term::Constr(_) | Term::Daimon => Vec::new(),
            Term::Lam(_, b) => vec![b],
            Term::App(f, a) => vec![f, a],
            Term::Case(theta, t) => {
                let mut out = vec![t.as_ref()];
                out.extend(theta.branches.iter().map(|(_, u)| u));
                out
            }
        }
    }

    pub fn child_mut(&mut self, index: usize) -> Option<&mut Term> {
        match (self, index) {
            (Term::Lam(_, b), 0) => Some(b),
            (Term::App(f, _), 0) => Some(f),
            (Term::App(_, a), 1) => Some(a),
            (Term::Case(_, t), 0) => Some(t),
            (Term::Case(theta, _), i) if i >= 1 => theta.body_mut(i - 1),
            _ => None,
        }
    }

    pub fn at(&self, path: &Path) -> Option<&Term> {
        let mut cur = self;
        for &i in path.steps() {
            cur = *cur.children().get(i)?;
        }
        Some(cur)
    }

    pub fn at_mut(&mut self, path: &Path) -> Option<&mut Term> {
        let mut cur = self;
        for &i in path.steps() {
            cur = cur.child_mut(i)?;
        }
        Some(cur)
    }

    /// Visits every subterm in pre-order together with its position.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&Path, &'a Term)) {
        fn go<'a>(t: &'a Term, path: &mut Path, f: &mut impl FnMut(&Path, &'a Term)) {
            f(path, t);
            for (i, c) in t.children().into_iter().enumerate() {
                path.push(i);
                go(c, path, f);
                path.pop();
            }
        }
        go(self, &mut Path::root(), f)
    }
}

/// Position of a subterm: the child indices followed from the root.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path(Vec<usize>);

impl Path {
    pub fn root() -> Path {
        Path(Vec::new())
    }

    pub fn from_steps(steps: Vec<usize>) -> Path {
        Path(steps)
    }

    pub fn steps(&self) -> &[usize] {
        &self.0
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, i: usize) {
        self.0.push(i)
    }

    pub fn pop(&mut self) -> Option<usize> {
        self.0.pop()
    }

    pub fn child(&self, i: usize) -> Path {
        let mut p = self.clone();
        p.push(i);
        p
    }

    /// True when `self` addresses `other` or one of its ancestors.
    pub fn is_prefix_of(&self, other: &Path) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join("."))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn constructors_have_no_free_variables() {
        assert!(Term::constr("C").free_vars().is_empty());
    }

    #[test]
    fn lambda_binds_its_variable() {
        let t = Term::lam("x", Term::app(Term::var("x"), Term::var("y")));
        assert_eq!(t.free_vars(), set(&["y"]));
    }

    #[test]
    fn case_free_vars_union_branches_and_scrutinee() {
        let theta = Binding::new(vec![
            ("C".into(), Term::var("x")),
            ("D".into(), Term::var("y")),
        ])
        .unwrap();
        let t = Term::case(theta, Term::var("x"));
        assert_eq!(t.free_vars(), set(&["x", "y"]));
    }

    #[test]
    fn duplicate_keys_rejected() {
        let err =
            Binding::new(vec![("C".into(), Term::Daimon), ("C".into(), Term::Daimon)]).unwrap_err();
        assert_eq!(err, DuplicateBranch("C".into()));
    }

    #[test]
    fn binding_equality_ignores_branch_order() {
        let a = Binding::new(vec![
            ("C".into(), Term::constr("C")),
            ("D".into(), Term::Daimon),
        ])
        .unwrap();
        let b = Binding::new(vec![
            ("D".into(), Term::Daimon),
            ("C".into(), Term::constr("C")),
        ])
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn positions_address_scrutinee_then_branches() {
        let theta = Binding::new(vec![("C".into(), Term::var("u"))]).unwrap();
        let t = Term::case(theta, Term::var("s"));
        assert_eq!(t.at(&Path::from_steps(vec![0])), Some(&Term::var("s")));
        assert_eq!(t.at(&Path::from_steps(vec![1])), Some(&Term::var("u")));
        assert_eq!(t.at(&Path::from_steps(vec![2])), None);
    }
}
