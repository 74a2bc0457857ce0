//! Types, data types and type substitution.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

mod subst;

pub use subst::{fresh_tyvar, type_alpha_eq, type_substitute, DataSubstitutionViolation};

/// Ordinary (`$X`) or data (`@a`) type variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TyVar {
    Ord(String),
    Data(String),
}

impl TyVar {
    pub fn name(&self) -> &str {
        match self {
            TyVar::Ord(n) | TyVar::Data(n) => n,
        }
    }

    pub fn is_data(&self) -> bool {
        matches!(self, TyVar::Data(_))
    }

    pub fn to_type(&self) -> Type {
        match self {
            TyVar::Ord(n) => Type::OrdVar(n.clone()),
            TyVar::Data(n) => Type::DataVar(n.clone()),
        }
    }

    pub(crate) fn renamed(&self, name: String) -> TyVar {
        match self {
            TyVar::Ord(_) => TyVar::Ord(name),
            TyVar::Data(_) => TyVar::Data(name),
        }
    }
}

impl fmt::Display for TyVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TyVar::Ord(n) => write!(f, "${n}"),
            TyVar::Data(n) => write!(f, "@{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Type {
    OrdVar(String),
    DataVar(String),
    /// Type constant of the constructor with the same name.
    Const(String),
    App(Box<Type>, Box<Type>),
    Arrow(Box<Type>, Box<Type>),
    Union(Box<Type>, Box<Type>),
    Inter(Box<Type>, Box<Type>),
    Forall(TyVar, Box<Type>),
    Exists(TyVar, Box<Type>),
}

impl Type {
    pub fn ord(name: impl Into<String>) -> Type {
        Type::OrdVar(name.into())
    }

    pub fn data(name: impl Into<String>) -> Type {
        Type::DataVar(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Type {
        Type::Const(name.into())
    }

    pub fn app(d: Type, t: Type) -> Type {
        Type::App(Box::new(d), Box::new(t))
    }

    pub fn arrow(t: Type, u: Type) -> Type {
        Type::Arrow(Box::new(t), Box::new(u))
    }

    pub fn union(t: Type, u: Type) -> Type {
        Type::Union(Box::new(t), Box::new(u))
    }

    pub fn inter(t: Type, u: Type) -> Type {
        Type::Inter(Box::new(t), Box::new(u))
    }

    pub fn forall(v: TyVar, t: Type) -> Type {
        Type::Forall(v, Box::new(t))
    }

    pub fn exists(v: TyVar, t: Type) -> Type {
        Type::Exists(v, Box::new(t))
    }

    /// `forall @a. @a`, the least data type.
    pub fn bottom_data() -> Type {
        Type::forall(TyVar::Data("a".into()), Type::data("a"))
    }

    /// `forall $X. $X`, the least type.
    pub fn bottom() -> Type {
        Type::forall(TyVar::Ord("X".into()), Type::ord("X"))
    }

    pub fn is_data_type(&self) -> bool {
        match self {
            Type::OrdVar(_) | Type::Arrow(..) => false,
            Type::DataVar(_) | Type::Const(_) => true,
            Type::App(d, _) => d.is_data_type(),
            Type::Union(a, b) | Type::Inter(a, b) => a.is_data_type() && b.is_data_type(),
            Type::Forall(_, t) | Type::Exists(_, t) => t.is_data_type(),
        }
    }

    /// Built from constants and application only.
    pub fn is_pure_data_type(&self) -> bool {
        match self {
            Type::Const(_) => true,
            Type::App(d, t) => d.is_pure_data_type() && t.is_pure_data_type(),
            _ => false,
        }
    }

    /// Head and arguments of a left-nested application chain.
    pub fn app_spine(&self) -> (&Type, Vec<&Type>) {
        let mut head = self;
        let mut args = Vec::new();
        while let Type::App(d, t) = head {
            args.push(t.as_ref());
            head = d;
        }
        args.reverse();
        (head, args)
    }

    pub fn free_vars(&self) -> BTreeSet<TyVar> {
        let mut out = BTreeSet::new();
        collect_free(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn has_free(&self, v: &TyVar) -> bool {
        self.free_vars().contains(v)
    }

    pub fn children(&self) -> Vec<&Type> {
        match self {
            Type::OrdVar(_) | Type::DataVar(_) | Type::Const(_) => vec![],
            Type::App(a, b) | Type::Arrow(a, b) | Type::Union(a, b) | Type::Inter(a, b) => {
                vec![a, b]
            }
            Type::Forall(_, t) | Type::Exists(_, t) => vec![t],
        }
    }

    /// Position (child-index path) of the first application whose head is
    /// not a data type.
    pub fn check_wellformed(&self) -> Result<(), IllFormedType> {
        fn go(t: &Type, path: &mut Vec<usize>) -> Result<(), IllFormedType> {
            if let Type::App(d, _) = t {
                if !d.is_data_type() {
                    return Err(IllFormedType {
                        path: path.clone(),
                        head: (**d).clone(),
                    });
                }
            }
            for (i, c) in t.children().into_iter().enumerate() {
                path.push(i);
                go(c, path)?;
                path.pop();
            }
            Ok(())
        }
        go(self, &mut Vec::new())
    }
}

fn collect_free<'a>(t: &'a Type, bound: &mut Vec<&'a TyVar>, out: &mut BTreeSet<TyVar>) {
    let mut free = |v: TyVar| {
        if !bound.contains(&&v) {
            out.insert(v);
        }
    };
    match t {
        Type::OrdVar(n) => free(TyVar::Ord(n.clone())),
        Type::DataVar(n) => free(TyVar::Data(n.clone())),
        Type::Const(_) => {}
        Type::App(a, b) | Type::Arrow(a, b) | Type::Union(a, b) | Type::Inter(a, b) => {
            collect_free(a, bound, out);
            collect_free(b, bound, out);
        }
        Type::Forall(v, body) | Type::Exists(v, body) => {
            bound.push(v);
            collect_free(body, bound, out);
            bound.pop();
        }
    }
}

pub fn type_free_vars(t: &Type) -> BTreeSet<TyVar> {
    t.free_vars()
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("type application head `{head}` is not a data type")]
pub struct IllFormedType {
    pub path: Vec<usize>,
    pub head: Type,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("`{0}` is not a data type and cannot head a type application")]
pub struct NotDataHead(pub Type);

/// Ordered sequence of types.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TypeVector(pub Vec<Type>);

impl TypeVector {
    pub fn new(types: Vec<Type>) -> Self {
        TypeVector(types)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `head T1 ... Tk`, left-folded.
    pub fn apply(&self, head: Type) -> Result<Type, NotDataHead> {
        if !self.0.is_empty() && !head.is_data_type() {
            return Err(NotDataHead(head));
        }
        Ok(self.0.iter().cloned().fold(head, Type::app))
    }

    /// `T1 -> ... -> Tk -> result`, right-folded.
    pub fn arrow(&self, result: Type) -> Type {
        self.0
            .iter()
            .rev()
            .cloned()
            .fold(result, |acc, t| Type::arrow(t, acc))
    }

    /// Peels `self.len()` arrows off `t` whose domains match the vector up to
    /// alpha-equivalence and returns the remaining codomain.
    pub fn strip_arrows<'a>(&self, mut t: &'a Type) -> Option<&'a Type> {
        for u in &self.0 {
            match t {
                Type::Arrow(dom, cod) if type_alpha_eq(dom, u) => t = cod,
                _ => return None,
            }
        }
        Some(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Type {
        Type::ord("X")
    }

    #[test]
    fn data_types() {
        assert!(Type::constant("C").is_data_type());
        assert!(!Type::arrow(x(), x()).is_data_type());
        let a = TyVar::Data("a".into());
        assert!(Type::forall(a, Type::app(Type::data("a"), x())).is_data_type());
        assert!(!x().is_data_type());
    }

    #[test]
    fn wellformedness() {
        let bad = Type::app(Type::arrow(x(), x()), Type::constant("C"));
        assert_eq!(
            bad.check_wellformed().unwrap_err().path,
            Vec::<usize>::new()
        );
        assert!(Type::app(Type::constant("C"), Type::arrow(x(), x()))
            .check_wellformed()
            .is_ok());
        let chain = Type::app(Type::app(Type::constant("C"), x()), Type::ord("Y"));
        assert!(chain.check_wellformed().is_ok());
        let nested = Type::union(Type::constant("C"), bad);
        assert_eq!(nested.check_wellformed().unwrap_err().path, vec![1]);
    }

    #[test]
    fn free_vars() {
        assert!(Type::forall(TyVar::Ord("X".into()), x())
            .free_vars()
            .is_empty());
        let t = Type::app(Type::data("a"), x());
        assert_eq!(
            t.free_vars(),
            BTreeSet::from([TyVar::Data("a".into()), TyVar::Ord("X".into())])
        );
        let u = Type::union(Type::constant("C"), Type::data("a"));
        assert_eq!(u.free_vars(), BTreeSet::from([TyVar::Data("a".into())]));
    }

    #[test]
    fn vectors() {
        let v = TypeVector::new(vec![Type::ord("T1"), Type::ord("T2")]);
        assert_eq!(
            v.apply(Type::constant("C")).unwrap(),
            Type::app(
                Type::app(Type::constant("C"), Type::ord("T1")),
                Type::ord("T2")
            )
        );
        assert_eq!(TypeVector::default().arrow(Type::ord("U")), Type::ord("U"));
        let arrows = v.arrow(Type::ord("U"));
        assert_eq!(
            arrows,
            Type::arrow(
                Type::ord("T1"),
                Type::arrow(Type::ord("T2"), Type::ord("U"))
            )
        );
        assert_eq!(v.strip_arrows(&arrows), Some(&Type::ord("U")));
        assert!(v.apply(x()).is_err());
    }
}
