use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{Monomial, VariableId, Variables};

/// Scheme used inside each block of an elimination order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockScheme {
    Lex,
    GrevLex,
}

/// A monomial order. Variables are ranked by their position in the
/// [`Variables`] set the order is compiled against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Every monomial involving the eliminated variables beats every monomial
    /// that does not; ties inside a block use `inner`.
    Block {
        eliminate: Vec<VariableId>,
        inner: BlockScheme,
    },
}

impl MonomialOrder {
    pub fn elimination(eliminate: impl IntoIterator<Item = VariableId>) -> Self {
        MonomialOrder::Block {
            eliminate: eliminate.into_iter().collect(),
            inner: BlockScheme::GrevLex,
        }
    }

    pub fn compile(&self, vars: &Variables) -> TermOrder {
        match self {
            MonomialOrder::Lex => TermOrder::Plain(BlockScheme::Lex),
            MonomialOrder::GrevLex => TermOrder::Plain(BlockScheme::GrevLex),
            MonomialOrder::Block { eliminate, inner } => {
                let (first, second): (Vec<usize>, Vec<usize>) =
                    (0..vars.len()).partition(|&i| eliminate.contains(vars.get(i)));
                TermOrder::Block {
                    scheme: *inner,
                    first,
                    second,
                }
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::GrevLex => "grevlex",
            MonomialOrder::Block {
                inner: BlockScheme::Lex,
                ..
            } => "block(lex)",
            MonomialOrder::Block {
                inner: BlockScheme::GrevLex,
                ..
            } => "block(grevlex)",
        }
    }
}

/// A [`MonomialOrder`] resolved against a concrete variable set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermOrder {
    Plain(BlockScheme),
    Block {
        scheme: BlockScheme,
        first: Vec<usize>,
        second: Vec<usize>,
    },
}

impl TermOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Plain(BlockScheme::Lex) => a.exponents().cmp(b.exponents()),
            TermOrder::Plain(BlockScheme::GrevLex) => grevlex(a.exponents(), b.exponents()),
            TermOrder::Block {
                scheme,
                first,
                second,
            } => cmp_on(*scheme, first, a, b).then_with(|| cmp_on(*scheme, second, a, b)),
        }
    }
}

fn grevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().rev().zip(b.iter().rev()) {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

fn cmp_on(scheme: BlockScheme, idx: &[usize], a: &Monomial, b: &Monomial) -> Ordering {
    let (a, b) = (a.exponents(), b.exponents());
    match scheme {
        BlockScheme::Lex => {
            for &i in idx {
                if a[i] != b[i] {
                    return a[i].cmp(&b[i]);
                }
            }
            Ordering::Equal
        }
        BlockScheme::GrevLex => {
            let da: u32 = idx.iter().map(|&i| a[i] as u32).sum();
            let db: u32 = idx.iter().map(|&i| b[i] as u32).sum();
            da.cmp(&db).then_with(|| {
                for &i in idx.iter().rev() {
                    if a[i] != b[i] {
                        return b[i].cmp(&a[i]);
                    }
                }
                Ordering::Equal
            })
        }
    }
}
