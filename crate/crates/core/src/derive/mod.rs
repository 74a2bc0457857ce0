//! Explicit typing and sub-typing derivations: data model, checker and a
//! bounded sub-typing search.

mod check;
mod search;

pub use check::{check, check_subtyping, check_typing, Checked, Reason, Rejection};
pub use search::search_subtyping;

use std::collections::BTreeSet;

use crate::syntax::{Binding, Term};
use crate::types::{type_alpha_eq, TyVar, Type, TypeVector};

/// Finite map from term variables to types, kept in insertion order for
/// printing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Context(Vec<(String, Type)>);

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("variable `{0}` bound twice in context")]
pub struct DuplicateEntry(pub String);

impl Context {
    pub fn new(entries: Vec<(String, Type)>) -> Result<Self, DuplicateEntry> {
        let mut seen = BTreeSet::new();
        for (x, _) in &entries {
            if !seen.insert(x.as_str()) {
                return Err(DuplicateEntry(x.clone()));
            }
        }
        Ok(Context(entries))
    }

    pub fn empty() -> Self {
        Context(Vec::new())
    }

    pub fn entries(&self) -> &[(String, Type)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, x: &str) -> Option<&Type> {
        self.0.iter().find(|(y, _)| y == x).map(|(_, t)| t)
    }

    /// `self, x : t`, replacing any earlier entry for `x`.
    pub fn with(&self, x: &str, t: Type) -> Context {
        let mut out = self.without(x);
        out.0.push((x.to_string(), t));
        out
    }

    pub fn without(&self, x: &str) -> Context {
        Context(self.0.iter().filter(|(y, _)| y != x).cloned().collect())
    }

    /// Same domain and alpha-equivalent types, ignoring order.
    pub fn same_as(&self, other: &Context) -> bool {
        self.0.len() == other.0.len()
            && self
                .0
                .iter()
                .all(|(x, t)| other.get(x).is_some_and(|u| type_alpha_eq(t, u)))
    }

    pub fn free_tyvars(&self) -> BTreeSet<TyVar> {
        self.0.iter().flat_map(|(_, t)| t.free_vars()).collect()
    }
}

/// A term or a case binding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subject {
    Term(Term),
    Binding(Binding),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Judgment {
    Subtype(Type, Type),
    Typing {
        ctx: Context,
        subject: Subject,
        ty: Type,
    },
}

impl Judgment {
    pub fn is_typing(&self) -> bool {
        matches!(self, Judgment::Typing { .. })
    }

    pub fn types(&self) -> Vec<&Type> {
        match self {
            Judgment::Subtype(a, b) => vec![a, b],
            Judgment::Typing { ctx, ty, .. } => {
                let mut v: Vec<&Type> = ctx.entries().iter().map(|(_, t)| t).collect();
                v.push(ty);
                v
            }
        }
    }
}

macro_rules! rule_names {
    ($enum:ident { $($variant:ident => $name:literal),* $(,)? }) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
        pub enum $enum { $($variant),* }

        impl $enum {
            pub const ALL: &'static [$enum] = &[$($enum::$variant),*];

            pub fn name(self) -> &'static str {
                match self { $($enum::$variant => $name),* }
            }

            pub fn from_name(s: &str) -> Option<$enum> {
                match s { $($name => Some($enum::$variant),)* _ => None }
            }
        }
    };
}

rule_names!(TypingRule {
    Cb => "cb",
    CbBot => "cb-bot",
    Init => "init",
    False => "false",
    Constr => "constr",
    ArrowIntro => "arrow-intro",
    ArrowElim => "arrow-elim",
    Case => "case",
    Univ => "univ",
    Inter => "inter",
    Exist => "exist",
    Union => "union",
    Subs => "subs",
});

rule_names!(SubtypingRule {
    Refl => "refl",
    Trans => "trans",
    Arrow => "arrow",
    App => "app",
    UnionIntroL => "union-intro-l",
    UnionIntroR => "union-intro-r",
    UnionElim => "union-elim",
    InterIntro => "inter-intro",
    InterElimL => "inter-elim-l",
    InterElimR => "inter-elim-r",
    ForallIntro => "forall-intro",
    ForallElim => "forall-elim",
    ForallElimD => "forall-elim-d",
    ExistsIntro => "exists-intro",
    ExistsIntroD => "exists-intro-d",
    ExistsElim => "exists-elim",
    Data => "data",
    Constr => "constr",
    AppInter => "app-inter",
    AppForall => "app-forall",
    ArrowInter => "arrow-inter",
    ArrowForall => "arrow-forall",
    ArrowUnion => "arrow-union",
    ArrowExists => "arrow-exists",
    UnionAppR => "union-app-r",
    UnionAppL => "union-app-l",
    ExistsAppR => "exists-app-r",
    ExistsAppL => "exists-app-l",
    UnionForall => "union-forall",
    ExistsInter => "exists-inter",
});

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Typing(TypingRule),
    Subtyping(SubtypingRule),
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Typing(r) => r.name(),
            Rule::Subtyping(r) => r.name(),
        }
    }

    /// `constr` names both a typing and a sub-typing rule; the judgment
    /// kind picks one.
    pub fn from_name(s: &str, typing: bool) -> Option<Rule> {
        if typing {
            TypingRule::from_name(s).map(Rule::Typing)
        } else {
            SubtypingRule::from_name(s).map(Rule::Subtyping)
        }
    }
}

/// Rule-specific data that makes checking local.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Witnesses {
    /// Instantiating type of the quantifier elimination/introduction axioms.
    pub inst: Option<Type>,
    /// The vector of the `case` rule.
    pub args: Option<TypeVector>,
    /// 1-based branch index of `cb`.
    pub i0: Option<usize>,
    /// Per-branch `(vector, result)` split of `cb`.
    pub splits: Option<Vec<(TypeVector, Type)>>,
    /// Quantified variable of `univ` and `exist`.
    pub var: Option<TyVar>,
    /// Context variable rewritten by `exist` and `union`.
    pub x: Option<String>,
}

impl Witnesses {
    pub fn is_empty(&self) -> bool {
        *self == Witnesses::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub rule: Rule,
    pub conclusion: Judgment,
    pub witnesses: Witnesses,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn leaf(rule: Rule, conclusion: Judgment) -> Self {
        Derivation {
            rule,
            conclusion,
            witnesses: Witnesses::default(),
            premises: Vec::new(),
        }
    }

    pub fn node(rule: Rule, conclusion: Judgment, premises: Vec<Derivation>) -> Self {
        Derivation {
            rule,
            conclusion,
            witnesses: Witnesses::default(),
            premises,
        }
    }

    pub fn with_witnesses(mut self, witnesses: Witnesses) -> Self {
        self.witnesses = witnesses;
        self
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }
}
