use crate::error::{Error, Result};
use crate::mpoly::squarefree_check;
use crate::{MPoly, Scalar};

use super::Circuit;

/// Outcome of the normalization of a circuit. `common` holds the factors taken out of
/// every summand, so the input equals Π common · (circuit).
#[derive(Clone, Debug)]
pub enum NormalForm {
    /// At most one summand left; no summands means the zero polynomial.
    K1 {
        common: Vec<MPoly>,
        circuit: Circuit,
    },
    K2 {
        common: Vec<MPoly>,
        circuit: Circuit,
    },
    /// The factor `factor` of F₀ divides F_`divides` but not the other summand.
    Justify {
        common: Vec<MPoly>,
        circuit: Circuit,
        factor: usize,
        divides: usize,
    },
    /// F₀ squarefree with f_{0,1} dividing none of F₁, F₂, F₁+F₂.
    Main {
        common: Vec<MPoly>,
        circuit: Circuit,
    },
}

impl NormalForm {
    pub fn circuit(&self) -> &Circuit {
        match self {
            NormalForm::K1 { circuit, .. }
            | NormalForm::K2 { circuit, .. }
            | NormalForm::Justify { circuit, .. }
            | NormalForm::Main { circuit, .. } => circuit,
        }
    }

    pub fn common(&self) -> &[MPoly] {
        match self {
            NormalForm::K1 { common, .. }
            | NormalForm::K2 { common, .. }
            | NormalForm::Justify { common, .. }
            | NormalForm::Main { common, .. } => common,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            NormalForm::K1 { .. } => "k1",
            NormalForm::K2 { .. } => "k2",
            NormalForm::Justify { .. } => "justify",
            NormalForm::Main { .. } => "main",
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, NormalForm::K1 { circuit, .. } if circuit.k() == 0)
    }
}

fn divides(f: &MPoly, g: &MPoly) -> bool {
    g.exact_div(f).is_ok()
}

/// c with a = c·b, if any.
fn proportion(a: &MPoly, b: &MPoly) -> Option<Scalar> {
    if a.lm() != b.lm() {
        return None;
    }
    let c = a.lc().div(&b.lc()).ok()?;
    (b.scale(&c) == *a).then_some(c)
}

fn product(fs: &[MPoly], one: &MPoly) -> MPoly {
    fs.iter().fold(one.clone(), |acc, f| acc.mul(f))
}

/// Removes one copy of `f` from the factor list of a summand divisible by f.
fn divide_out(factors: &mut Vec<MPoly>, f: &MPoly, one: &MPoly) -> Result<()> {
    if let Some(pos) = factors.iter().position(|g| divides(f, g)) {
        let q = factors[pos].exact_div(f)?;
        if q.is_constant() && !q.is_one() {
            factors[pos] = q;
        } else if q.is_one() {
            factors.remove(pos);
        } else {
            factors[pos] = q;
        }
        return Ok(());
    }
    // f is not irreducible after all: fall back to the expanded cofactor
    let q = product(factors, one).exact_div(f)?;
    *factors = vec![q];
    Ok(())
}

fn scaled(mut factors: Vec<MPoly>, c: &Scalar, one: &MPoly) -> Vec<MPoly> {
    if !c.is_one() {
        factors.push(one.scale(c));
    }
    factors
}

/// Brings a circuit into one of the four normal forms.
pub fn normal_form(c: &Circuit) -> Result<NormalForm> {
    let sf = c
        .squarefree_summand()
        .ok_or_else(|| Error::UnsupportedClass("no squarefree summand declared".into()))?;
    if !squarefree_check(&c.summand(sf))? {
        return Err(Error::UnsupportedClass(format!(
            "summand {sf} is not squarefree"
        )));
    }
    let ring = c.ring().clone();
    let one = MPoly::one(&ring);
    let mut work: Vec<Vec<MPoly>> = vec![c.summands()[sf].clone()];
    work.extend(
        c.summands()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != sf)
            .map(|(_, s)| s.clone()),
    );

    // common factors: each divides the squarefree summand, so it is one of its factors
    let mut common = Vec::new();
    if work.len() > 1 {
        let mut j = 0;
        while j < work[0].len() {
            let f = work[0][j].clone();
            if f.is_constant() || !work[1..].iter().all(|s| divides(&f, &product(s, &one))) {
                j += 1;
                continue;
            }
            work[0].remove(j);
            for s in work[1..].iter_mut() {
                divide_out(s, &f, &one)?;
            }
            common.push(f);
        }
    }

    // merge scalar-proportional summands into the first representative
    let mut kept: Vec<(Vec<MPoly>, MPoly, Scalar)> = Vec::new();
    for s in work {
        let e = product(&s, &one);
        match kept
            .iter_mut()
            .find_map(|(_, b, scale)| proportion(&e, b).map(|c| (scale, c)))
        {
            Some((scale, c)) => *scale = scale.add(&c),
            None => kept.push((s, e, c.field().one())),
        }
    }
    let first_is_sf = !kept.is_empty() && !kept[0].2.is_zero();
    let kept: Vec<(Vec<MPoly>, MPoly)> = kept
        .into_iter()
        .filter(|(_, _, scale)| !scale.is_zero())
        .map(|(s, e, scale)| (scaled(s, &scale, &one), e.scale(&scale)))
        .collect();
    let sf_index = |k: usize| if first_is_sf && k > 0 { Some(0) } else { None };
    let build = |parts: Vec<Vec<MPoly>>| {
        let k = parts.len();
        Circuit::new(&ring, parts, sf_index(k))
    };
    match kept.len() {
        0 | 1 => {
            return Ok(NormalForm::K1 {
                common,
                circuit: build(kept.into_iter().map(|(s, _)| s).collect())?,
            });
        }
        2 => {
            return Ok(NormalForm::K2 {
                common,
                circuit: build(kept.into_iter().map(|(s, _)| s).collect())?,
            });
        }
        3 => {}
        k => return Err(Error::UnsupportedClass(format!("{k} independent summands"))),
    }
    if !first_is_sf {
        return Err(Error::UnsupportedClass(
            "the squarefree summand cancelled".into(),
        ));
    }
    let f0 = kept[0].1.clone();
    let (f1, f2) = (kept[1].1.clone(), kept[2].1.clone());
    let sum = f1.add(&f2);
    if let Some(cf) = proportion(&sum, &f0) {
        let total = cf.add(&c.field().one());
        let parts = if total.is_zero() {
            Vec::new()
        } else {
            vec![scaled(kept[0].0.clone(), &total, &one)]
        };
        return Ok(NormalForm::K1 {
            common,
            circuit: build(parts)?,
        });
    }
    let mut parts: Vec<Vec<MPoly>> = kept.into_iter().map(|(s, _)| s).collect();
    let nonconst: Vec<usize> = (0..parts[0].len())
        .filter(|&j| !parts[0][j].is_constant())
        .collect();
    let admissible = nonconst.iter().copied().find(|&j| {
        let f = &parts[0][j];
        !divides(f, &f1) && !divides(f, &f2) && !divides(f, &sum)
    });
    if let Some(j) = admissible {
        let f = parts[0].remove(j);
        parts[0].insert(0, f);
        return Ok(NormalForm::Main {
            common,
            circuit: build(parts)?,
        });
    }
    for &j in &nonconst {
        let f = &parts[0][j];
        if divides(f, &sum) {
            continue;
        }
        let by = if divides(f, &f1) { 1 } else { 2 };
        return Ok(NormalForm::Justify {
            common,
            circuit: build(parts)?,
            factor: j,
            divides: by,
        });
    }
    Err(Error::UnsupportedClass(
        "every factor of the squarefree summand divides F₁ + F₂".into(),
    ))
}
