use std::fmt;
use std::sync::Arc;

use serde::Serialize;

/// Distinguished generator kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Gen {
    E,
    F,
    H,
}

/// Construction word for an algebra element, built from the generators.
///
/// Carrying these alongside values lets an element be transported along a
/// map defined on generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Gen(Gen, usize),
    Bracket(Arc<Expr>, Arc<Expr>),
    Scale(i64, Arc<Expr>),
    Add(Arc<Expr>, Arc<Expr>),
    /// `exp(ad e) exp(-ad f) exp(ad e)` applied to `arg`.
    Reflect { e: Arc<Expr>, f: Arc<Expr>, arg: Arc<Expr> },
}

impl Expr {
    pub fn e(i: usize) -> Expr {
        Expr::Gen(Gen::E, i)
    }

    pub fn f(i: usize) -> Expr {
        Expr::Gen(Gen::F, i)
    }

    pub fn h(i: usize) -> Expr {
        Expr::Gen(Gen::H, i)
    }

    pub fn bracket(a: Expr, b: Expr) -> Expr {
        Expr::Bracket(Arc::new(a), Arc::new(b))
    }

    pub fn scale(k: i64, a: Expr) -> Expr {
        Expr::Scale(k, Arc::new(a))
    }

    pub fn neg(a: Expr) -> Expr {
        Expr::scale(-1, a)
    }

    pub fn sum(a: Expr, b: Expr) -> Expr {
        Expr::Add(Arc::new(a), Arc::new(b))
    }

    /// `s'_i(arg)` in terms of the generators at node `i`.
    pub fn s_prime(i: usize, arg: Expr) -> Expr {
        Expr::Reflect { e: Arc::new(Expr::e(i)), f: Arc::new(Expr::f(i)), arg: Arc::new(arg) }
    }

    /// Swaps `e_i` and `f_i` outside any reflection; the reflection operators
    /// themselves are kept, so `s'_l(e_j)` becomes `s'_l(f_j)`.
    pub fn swap_ef(&self) -> Expr {
        match self {
            Expr::Gen(Gen::E, i) => Expr::f(*i),
            Expr::Gen(Gen::F, i) => Expr::e(*i),
            Expr::Gen(Gen::H, i) => Expr::h(*i),
            Expr::Bracket(a, b) => Expr::bracket(a.swap_ef(), b.swap_ef()),
            Expr::Scale(k, a) => Expr::scale(*k, a.swap_ef()),
            Expr::Add(a, b) => Expr::sum(a.swap_ef(), b.swap_ef()),
            Expr::Reflect { e, f, arg } => Expr::Reflect { e: e.clone(), f: f.clone(), arg: Arc::new(arg.swap_ef()) },
        }
    }

    /// Replaces every generator by its image under `map`.
    pub fn substitute(&self, map: &dyn Fn(Gen, usize) -> Expr) -> Expr {
        match self {
            Expr::Gen(g, i) => map(*g, *i),
            Expr::Bracket(a, b) => Expr::bracket(a.substitute(map), b.substitute(map)),
            Expr::Scale(k, a) => Expr::scale(*k, a.substitute(map)),
            Expr::Add(a, b) => Expr::sum(a.substitute(map), b.substitute(map)),
            Expr::Reflect { e, f, arg } => Expr::Reflect {
                e: Arc::new(e.substitute(map)),
                f: Arc::new(f.substitute(map)),
                arg: Arc::new(arg.substitute(map)),
            },
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Gen(g, i) => write!(f, "{}{i}", format!("{g:?}").to_lowercase()),
            Expr::Bracket(a, b) => write!(f, "[{a}, {b}]"),
            Expr::Scale(k, a) => write!(f, "{k}*({a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Reflect { e, f: ff, arg } => write!(f, "R<{e},{ff}>({arg})"),
        }
    }
}

impl Serialize for Expr {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
