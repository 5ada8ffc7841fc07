//! Monomial orders, compiled to a flat list of comparison stages.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monomial order. Positions inside `Block` and `Weighted` are relative to the
/// variables the order is applied to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    Grlex,
    Grevlex,
    /// Eliminated variables are compared first (with `inner`), the rest with `outer`.
    Block {
        elim: Vec<usize>,
        inner: Box<MonomialOrder>,
        outer: Box<MonomialOrder>,
    },
    Weighted {
        weights: Vec<u32>,
        tie: Box<MonomialOrder>,
    },
}

impl MonomialOrder {
    /// Elimination order for `elim`, grevlex inside both blocks.
    pub fn elimination(elim: Vec<usize>) -> Self {
        MonomialOrder::Block {
            elim,
            inner: Box::new(MonomialOrder::Grevlex),
            outer: Box::new(MonomialOrder::Grevlex),
        }
    }

    pub fn is_degree_compatible(&self) -> bool {
        match self {
            MonomialOrder::Grlex | MonomialOrder::Grevlex => true,
            MonomialOrder::Lex | MonomialOrder::Block { .. } => false,
            MonomialOrder::Weighted { weights, .. } => weights.windows(2).all(|w| w[0] == w[1]),
        }
    }

    pub fn validate(&self, nvars: usize) -> Result<()> {
        match self {
            MonomialOrder::Block { elim, inner, outer } => {
                let mut seen = vec![false; nvars];
                for &e in elim {
                    if e >= nvars || seen[e] {
                        return Err(Error::InvalidInput(format!("bad block position {e}")));
                    }
                    seen[e] = true;
                }
                inner.validate(elim.len())?;
                outer.validate(nvars - elim.len())
            }
            MonomialOrder::Weighted { weights, tie } => {
                if weights.len() != nvars || weights.contains(&0) {
                    return Err(Error::InvalidInput(
                        "weights must be positive, one per variable".into(),
                    ));
                }
                tie.validate(nvars)
            }
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug)]
enum Stage {
    Weight(Vec<(usize, u64)>),
    Lex(Vec<usize>),
    RevLex(Vec<usize>),
}

/// Flattened comparison program for a fixed number of variables.
#[derive(Clone, Debug)]
pub struct CompiledOrder {
    stages: Vec<Stage>,
}

impl CompiledOrder {
    pub fn new(order: &MonomialOrder, nvars: usize) -> Self {
        let mut stages = Vec::new();
        let idx: Vec<usize> = (0..nvars).collect();
        compile(order, &idx, &mut stages);
        CompiledOrder { stages }
    }

    #[inline]
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        for st in &self.stages {
            let o = match st {
                Stage::Weight(w) => {
                    let sa: u64 = w.iter().map(|&(i, c)| c * a[i] as u64).sum();
                    let sb: u64 = w.iter().map(|&(i, c)| c * b[i] as u64).sum();
                    sa.cmp(&sb)
                }
                Stage::Lex(idx) => {
                    let mut o = Ordering::Equal;
                    for &i in idx {
                        if a[i] != b[i] {
                            o = a[i].cmp(&b[i]);
                            break;
                        }
                    }
                    o
                }
                Stage::RevLex(idx) => {
                    let mut o = Ordering::Equal;
                    for &i in idx.iter().rev() {
                        if a[i] != b[i] {
                            o = b[i].cmp(&a[i]);
                            break;
                        }
                    }
                    o
                }
            };
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    }
}

fn compile(order: &MonomialOrder, idx: &[usize], out: &mut Vec<Stage>) {
    match order {
        MonomialOrder::Lex => out.push(Stage::Lex(idx.to_vec())),
        MonomialOrder::Grlex => {
            out.push(Stage::Weight(idx.iter().map(|&i| (i, 1)).collect()));
            out.push(Stage::Lex(idx.to_vec()));
        }
        MonomialOrder::Grevlex => {
            out.push(Stage::Weight(idx.iter().map(|&i| (i, 1)).collect()));
            out.push(Stage::RevLex(idx.to_vec()));
        }
        MonomialOrder::Block { elim, inner, outer } => {
            let e_idx: Vec<usize> = elim.iter().map(|&j| idx[j]).collect();
            let r_idx: Vec<usize> = (0..idx.len())
                .filter(|j| !elim.contains(j))
                .map(|j| idx[j])
                .collect();
            compile(inner, &e_idx, out);
            compile(outer, &r_idx, out);
        }
        MonomialOrder::Weighted { weights, tie } => {
            out.push(Stage::Weight(
                idx.iter()
                    .zip(weights)
                    .map(|(&i, &w)| (i, w as u64))
                    .collect(),
            ));
            compile(tie, idx, out);
        }
    }
}

/// Compares two exponent vectors under `order`.
pub fn compare_monomials(order: &MonomialOrder, a: &[u32], b: &[u32]) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::InvalidInput(format!(
            "exponent lengths {} and {} differ",
            a.len(),
            b.len()
        )));
    }
    order.validate(a.len())?;
    Ok(CompiledOrder::new(order, a.len()).cmp(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn grevlex_tie_break() {
        // X1*X2 < X1^2
        assert_eq!(
            compare_monomials(&MonomialOrder::Grevlex, &[1, 1], &[2, 0]).unwrap(),
            Ordering::Less
        );
        // grevlex vs grlex differ on X1*X3 vs X2^2
        assert_eq!(
            compare_monomials(&MonomialOrder::Grevlex, &[1, 0, 1], &[0, 2, 0]).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            compare_monomials(&MonomialOrder::Grlex, &[1, 0, 1], &[0, 2, 0]).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn block_eliminates() {
        let o = MonomialOrder::elimination(vec![0]);
        assert_eq!(
            compare_monomials(&o, &[0, 5], &[1, 0]).unwrap(),
            Ordering::Less
        );
        assert!(compare_monomials(&o, &[1], &[1, 0]).is_err());
        assert!(!o.is_degree_compatible());
    }

    fn orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::Lex,
            MonomialOrder::Grlex,
            MonomialOrder::Grevlex,
            MonomialOrder::elimination(vec![1]),
            MonomialOrder::Block {
                elim: vec![0, 2],
                inner: Box::new(MonomialOrder::Lex),
                outer: Box::new(MonomialOrder::Grlex),
            },
            MonomialOrder::Weighted {
                weights: vec![3, 1, 2],
                tie: Box::new(MonomialOrder::Grevlex),
            },
        ]
    }

    proptest! {
        #[test]
        fn order_axioms(i in 0usize..6, a in proptest::collection::vec(0u32..4, 3),
                        b in proptest::collection::vec(0u32..4, 3), m in proptest::collection::vec(0u32..4, 3)) {
            let o = &orders()[i];
            let c = CompiledOrder::new(o, 3);
            // one is the minimum
            prop_assert_ne!(c.cmp(&[0, 0, 0], &a), Ordering::Greater);
            // total: equal iff identical
            prop_assert_eq!(c.cmp(&a, &b) == Ordering::Equal, a == b);
            prop_assert_eq!(c.cmp(&a, &b), c.cmp(&b, &a).reverse());
            // multiplicative
            let am: Vec<u32> = a.iter().zip(&m).map(|(x, y)| x + y).collect();
            let bm: Vec<u32> = b.iter().zip(&m).map(|(x, y)| x + y).collect();
            prop_assert_eq!(c.cmp(&a, &b), c.cmp(&am, &bm));
        }
    }
}
