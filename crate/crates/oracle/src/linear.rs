use std::collections::HashMap;

use normpit_core::{Field, MPoly, Scalar};

use crate::Result;

/// Some solution of A·x = b by Gauss–Jordan elimination, free variables set to zero.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar], field: &Field) -> Result<Option<Vec<Scalar>>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Scalar>> = a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].inv()?;
        for x in m[row].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=cols {
                    let v = m[r][c].sub(&factor.mul(&m[row][c]));
                    m[r][c] = v;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return Ok(None);
    }
    let mut x = vec![field.zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    Ok(Some(x))
}

fn monomials_up_to(n: usize, degree: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for e in 0..=degree {
        for mut rest in monomials_up_to(n - 1, degree - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

/// Membership with cofactors of degree-bounded shape: f = Σ hᵢ·gᵢ with deg(hᵢ·gᵢ) ≤ `bound`,
/// decided by linear algebra on the Macaulay matrix.
pub fn bounded_member(f: &MPoly, gens: &[MPoly], bound: u32) -> Result<Option<Vec<MPoly>>> {
    let ring = f.ring();
    let field = ring.field().clone();
    let n = ring.nvars();
    let mut columns: Vec<(usize, Vec<u32>, MPoly)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let Some(dg) = g.degree() else { continue };
        if dg > bound {
            continue;
        }
        for m in monomials_up_to(n, bound - dg) {
            let col = g.mul(&MPoly::monomial(ring, &m, field.one()));
            columns.push((i, m, col));
        }
    }
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    for p in columns.iter().map(|c| &c.2).chain([f]) {
        for (m, _) in p.terms() {
            let next = index.len();
            index.entry(m.to_vec()).or_insert(next);
        }
    }
    let mut a = vec![vec![field.zero(); columns.len()]; index.len()];
    for (j, (_, _, p)) in columns.iter().enumerate() {
        for (m, c) in p.terms() {
            a[index[&m.to_vec()]][j] = c.clone();
        }
    }
    let mut b = vec![field.zero(); index.len()];
    for (m, c) in f.terms() {
        b[index[&m.to_vec()]] = c.clone();
    }
    let Some(x) = solve(&a, &b, &field)? else { return Ok(None) };
    let mut cof = vec![MPoly::zero(ring); gens.len()];
    for ((i, m, _), c) in columns.iter().zip(x) {
        if !c.is_zero() {
            cof[*i] = cof[*i].add(&MPoly::monomial(ring, m, c));
        }
    }
    Ok(Some(cof))
}

#[cfg(test)]
mod tests {
    use super::*;
    use normpit_core::mpoly::parse_poly;
    use normpit_core::PolyRing;

    #[test]
    fn small_systems() {
        let f = Field::Fp(7);
        let s = |v: &[i64]| v.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>();
        let x = solve(&[s(&[1, 2]), s(&[3, 4])], &s(&[5, 6]), &f).unwrap().unwrap();
        // x = −4, y = 9/2 ≡ 1
        assert_eq!(x, s(&[-4, 1]));
        assert!(solve(&[s(&[1, 1]), s(&[2, 2])], &s(&[1, 3]), &f).unwrap().is_none());
        let under = solve(&[s(&[1, 1, 1])], &s(&[2]), &f).unwrap().unwrap();
        assert_eq!(under[0].add(&under[1]).add(&under[2]), f.from_i64(2));
    }

    #[test]
    fn macaulay_membership() {
        let r = PolyRing::with_names(Field::Q, "X", 2);
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let gens = [p("X1^2 - X2"), p("X1*X2 - 1")];
        let f = p("X1^3*X2 - X1*X2^2 + X1*X2 - 1");
        let cof = bounded_member(&f, &gens, 4).unwrap().unwrap();
        let back = cof.iter().zip(&gens).fold(MPoly::zero(&r), |a, (h, g)| a.add(&h.mul(g)));
        assert_eq!(back, f);
        assert!(bounded_member(&p("X1"), &gens, 4).unwrap().is_none());
    }
}
