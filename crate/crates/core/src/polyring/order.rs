use std::cmp::Ordering;

use super::monomial::Monomial;

/// Order applied within each block of a block order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseOrder {
    Lex,
    GrevLex,
}

/// Monomial orders. Variable 0 is the largest variable in every order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[derive(Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    GrevLex,
    /// Elimination order: monomials are first compared on the `block`
    /// variables, then on the remaining ones, each with `inner`.
    Block { block: Vec<usize>, inner: BaseOrder },
}


impl MonomialOrder {
    pub fn elimination(block: impl IntoIterator<Item = usize>) -> Self {
        let mut block: Vec<usize> = block.into_iter().collect();
        block.sort_unstable();
        block.dedup();
        MonomialOrder::Block { block, inner: BaseOrder::GrevLex }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match self {
            MonomialOrder::Lex => ea.cmp(eb),
            MonomialOrder::GrevLex => grevlex(ea.iter().copied().zip(eb.iter().copied())),
            MonomialOrder::Block { block, inner } => {
                let pairs_in = block.iter().map(|&i| (ea[i], eb[i]));
                let first = match inner {
                    BaseOrder::Lex => lex(pairs_in),
                    BaseOrder::GrevLex => grevlex(pairs_in),
                };
                if first != Ordering::Equal {
                    return first;
                }
                let pairs_out = (0..ea.len())
                    .filter(|i| block.binary_search(i).is_err())
                    .map(|i| (ea[i], eb[i]));
                match inner {
                    BaseOrder::Lex => lex(pairs_out),
                    BaseOrder::GrevLex => grevlex(pairs_out),
                }
            }
        }
    }
}

fn lex(pairs: impl Iterator<Item = (u32, u32)>) -> Ordering {
    for (a, b) in pairs {
        match a.cmp(&b) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn grevlex<I>(pairs: I) -> Ordering
where
    I: Iterator<Item = (u32, u32)> + Clone,
{
    let (da, db) = pairs.clone().fold((0u64, 0u64), |(x, y), (a, b)| (x + a as u64, y + b as u64));
    if da != db {
        return da.cmp(&db);
    }
    // ties: the monomial with the smaller exponent in the last differing
    // variable is larger
    let mut last = Ordering::Equal;
    for (a, b) in pairs {
        if a != b {
            last = b.cmp(&a);
        }
    }
    last
}
