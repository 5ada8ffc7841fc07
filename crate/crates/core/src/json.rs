//! JSON encodings for fields, polynomials, ideals, circuits, presentations and hitting sets.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::curve::OrderPresentation;
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::mpoly::{parse_poly, Mono};
use crate::pit::{Circuit, HittingSet, Provenance};
use crate::{Field, MPoly, MonomialOrder, PolyRing, Ring, Scalar};

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum FieldRepr {
    Q,
    Fp { p: u64 },
    Gf { p: u64, k: u32 },
}

/// Accepts `{"kind":"fp","p":7}` or the shorthands `"QQ"`, `"GF(7)"`, `"GF(7^2)"`.
pub fn field_from_json(v: &Value) -> Result<Field> {
    if let Some(s) = v.as_str() {
        return field_from_str(s);
    }
    match serde_json::from_value::<FieldRepr>(v.clone()).map_err(|e| bad(format!("field: {e}")))? {
        FieldRepr::Q => Ok(Field::Q),
        FieldRepr::Fp { p } => Field::fp(p),
        FieldRepr::Gf { p, k } => Field::gf(p, k),
    }
}

pub fn field_from_str(s: &str) -> Result<Field> {
    let t = s.trim();
    if matches!(t, "QQ" | "Q" | "q") {
        return Ok(Field::Q);
    }
    let inner = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| bad(format!("unknown field '{t}'")))?;
    let num = |x: &str| {
        x.trim()
            .parse::<u64>()
            .map_err(|_| bad(format!("bad field '{t}'")))
    };
    match inner.split_once('^') {
        Some((p, k)) => Field::gf(num(p)?, num(k)? as u32),
        None => Field::fp(num(inner)?),
    }
}

pub fn field_to_json(f: &Field) -> Result<Value> {
    let repr = match f {
        Field::Q => FieldRepr::Q,
        Field::Fp(p) => FieldRepr::Fp { p: *p },
        Field::Gf(g) => FieldRepr::Gf {
            p: g.p(),
            k: g.degree(),
        },
        Field::Fn(_) => {
            return Err(Error::Unsupported(
                "function fields have no JSON encoding".into(),
            ))
        }
    };
    Ok(serde_json::to_value(repr).expect("plain enum"))
}

/// Rationals as `num/den`, prime-field residues as integers, 𝔽_{p^k} elements as
/// coordinate vectors `[c0,c1,…]` in the power basis.
pub fn scalar_to_string(c: &Scalar) -> String {
    match c {
        Scalar::Gf(x) => {
            let parts: Vec<String> = x.coeffs().iter().map(|v| v.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
        _ => c.to_string(),
    }
}

pub fn scalar_from_json(field: &Field, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => field.parse(s),
        Value::Number(n) => field.parse(&n.to_string()),
        Value::Array(a) => {
            let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
            field.parse(&format!("[{}]", parts.join(",")))
        }
        _ => Err(bad(format!("bad coefficient {v}"))),
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: Value,
    exps: Vec<u32>,
}

pub fn poly_to_json(f: &MPoly) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .iter()
        .map(|(m, c)| json!({"coeff": scalar_to_string(c), "exps": m.to_vec()}))
        .collect();
    json!({"vars": f.ring().vars(), "terms": terms})
}

fn vars_of(v: &Value) -> Result<Option<Vec<String>>> {
    match v.get("vars") {
        None => Ok(None),
        Some(x) => serde_json::from_value(x.clone())
            .map(Some)
            .map_err(|e| bad(format!("vars: {e}"))),
    }
}

/// Reads a polynomial object into `ring`, matching variables by name; a plain string
/// is parsed as an expression.
pub fn poly_from_json(ring: &Ring, v: &Value) -> Result<MPoly> {
    if let Some(s) = v.as_str() {
        return parse_poly(ring, s);
    }
    let names = vars_of(v)?.unwrap_or_else(|| ring.vars().to_vec());
    let map: Vec<usize> = names
        .iter()
        .map(|n| {
            ring.var_index(n)
                .ok_or_else(|| bad(format!("unknown variable '{n}'")))
        })
        .collect::<Result<_>>()?;
    let terms: Vec<TermRepr> = serde_json::from_value(
        v.get("terms")
            .cloned()
            .ok_or_else(|| bad("missing terms"))?,
    )
    .map_err(|e| bad(format!("terms: {e}")))?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        if t.exps.len() != names.len() {
            return Err(bad(format!(
                "exponent vector of length {} for {} variables",
                t.exps.len(),
                names.len()
            )));
        }
        let mut m: Mono = smallvec::smallvec![0; ring.nvars()];
        for (i, e) in t.exps.iter().enumerate() {
            m[map[i]] += e;
        }
        out.push((m, scalar_from_json(ring.field(), &t.coeff)?));
    }
    Ok(MPoly::from_terms(ring, out))
}

fn order_from_json(v: Option<&Value>) -> Result<MonomialOrder> {
    match v {
        None => Ok(MonomialOrder::Grevlex),
        Some(o) => serde_json::from_value(o.clone()).map_err(|e| bad(format!("order: {e}"))),
    }
}

/// Collects the variable names of a document: an explicit top-level `vars`, else the
/// union of the `vars` of the polynomial objects in `polys`, in order of appearance.
fn collect_vars(doc: &Value, polys: &[&Value]) -> Result<Vec<String>> {
    if let Some(v) = vars_of(doc)? {
        return Ok(v);
    }
    let mut out: Vec<String> = Vec::new();
    for p in polys {
        for n in vars_of(p)?.unwrap_or_default() {
            if !out.contains(&n) {
                out.push(n);
            }
        }
    }
    if out.is_empty() {
        return Err(bad("no variables given"));
    }
    Ok(out)
}

fn array<'a>(doc: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    doc.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| bad(format!("missing array '{key}'")))
}

fn field_of(doc: &Value) -> Result<Field> {
    field_from_json(doc.get("field").ok_or_else(|| bad("missing field"))?)
}

/// `{"field", "vars"?, "order"?, "generators": [poly, …]}`.
pub fn ideal_from_json(doc: &Value) -> Result<(Ring, Vec<MPoly>)> {
    let field = field_of(doc)?;
    let gens = array(doc, "generators")?;
    let vars = collect_vars(doc, &gens.iter().collect::<Vec<_>>())?;
    let order = order_from_json(doc.get("order"))?;
    let ring = PolyRing::try_new(field, vars, order)?;
    let polys = gens
        .iter()
        .map(|g| poly_from_json(&ring, g))
        .collect::<Result<_>>()?;
    Ok((ring, polys))
}

pub fn gb_to_json(gb: &GroebnerBasis) -> Result<Value> {
    let ring = gb.ring();
    Ok(json!({
        "field": field_to_json(ring.field())?,
        "vars": ring.vars(),
        "order": serde_json::to_value(ring.order()).expect("order"),
        "basis": gb.polys().iter().map(poly_to_json).collect::<Vec<_>>(),
    }))
}

/// `{"field", "vars"?, "f": poly}` with exactly two variables.
pub fn curve_from_json(doc: &Value) -> Result<MPoly> {
    let field = field_of(doc)?;
    let f = doc.get("f").ok_or_else(|| bad("missing 'f'"))?;
    let vars = collect_vars(doc, &[f])?;
    if vars.len() != 2 {
        return Err(Error::InvalidInput(format!(
            "a plane curve needs 2 variables, got {}",
            vars.len()
        )));
    }
    let ring = PolyRing::try_new(field, vars, MonomialOrder::Grevlex)?;
    poly_from_json(&ring, f)
}

pub fn presentation_to_json(o: &OrderPresentation) -> Result<Value> {
    let ring = &o.ring;
    Ok(json!({
        "field": field_to_json(ring.field())?,
        "vars": ring.vars(),
        "relations": o.relations.polys().iter().map(poly_to_json).collect::<Vec<_>>(),
        "coord_images": o.coord_images.iter().map(poly_to_json).collect::<Vec<_>>(),
        "alpha": ring.vars()[o.alpha_var],
        "e": o.root_exponent,
        "steps": o.steps.iter().map(|s| json!({"disc_degree": s.disc_degree, "adjoined": s.adjoined})).collect::<Vec<_>>(),
    }))
}

/// `{"field", "vars"?, "summands": [[poly, …], …], "squarefree_summand"?}`.
pub fn circuit_from_json(doc: &Value) -> Result<Circuit> {
    let field = field_of(doc)?;
    let summands = array(doc, "summands")?;
    let mut all = Vec::new();
    for s in summands {
        let fs = s
            .as_array()
            .ok_or_else(|| bad("a summand must be an array of factors"))?;
        all.extend(fs.iter());
    }
    let vars = collect_vars(doc, &all)?;
    let ring = PolyRing::try_new(field, vars, MonomialOrder::Grevlex)?;
    let parsed = summands
        .iter()
        .map(|s| {
            s.as_array()
                .expect("checked")
                .iter()
                .map(|f| poly_from_json(&ring, f))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let sf = match doc.get("squarefree_summand") {
        None | Some(Value::Null) => None,
        Some(v) => Some(
            v.as_u64()
                .ok_or_else(|| bad("squarefree_summand must be an index"))? as usize,
        ),
    };
    Circuit::new(&ring, parsed, sf)
}

pub fn circuit_to_json(c: &Circuit) -> Result<Value> {
    let summands: Vec<Vec<Value>> = c
        .summands()
        .iter()
        .map(|s| s.iter().map(poly_to_json).collect())
        .collect();
    Ok(json!({
        "field": field_to_json(c.field())?,
        "vars": c.ring().vars(),
        "summands": summands,
        "squarefree_summand": c.squarefree_summand(),
    }))
}

pub fn point_to_json(p: &[Scalar]) -> Value {
    Value::Array(
        p.iter()
            .map(|c| Value::String(scalar_to_string(c)))
            .collect(),
    )
}

pub fn hitting_set_to_json(h: &HittingSet) -> Result<Value> {
    Ok(json!({
        "field": field_to_json(&h.field)?,
        "nvars": h.nvars,
        "provenance": h.provenance.name(),
        "size": h.len(),
        "points": h.points.iter().map(|p| point_to_json(p)).collect::<Vec<_>>(),
    }))
}

pub fn hitting_set_from_json(doc: &Value) -> Result<HittingSet> {
    let field = field_of(doc)?;
    let nvars = doc
        .get("nvars")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing nvars"))? as usize;
    let provenance = match doc.get("provenance").and_then(Value::as_str) {
        None => Provenance::Grid,
        Some(name) => Provenance::from_name(name)
            .ok_or_else(|| bad(format!("unknown provenance '{name}'")))?,
    };
    let mut points = Vec::new();
    for p in array(doc, "points")? {
        let coords = p
            .as_array()
            .ok_or_else(|| bad("a point must be an array"))?;
        if coords.len() != nvars {
            return Err(bad(format!(
                "point with {} coordinates, expected {nvars}",
                coords.len()
            )));
        }
        points.push(
            coords
                .iter()
                .map(|c| scalar_from_json(&field, c))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(HittingSet {
        field,
        nvars,
        points,
        provenance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_shorthands() {
        assert_eq!(field_from_json(&json!("QQ")).unwrap(), Field::Q);
        assert_eq!(field_from_json(&json!("GF(7)")).unwrap(), Field::Fp(7));
        assert_eq!(
            field_from_json(&json!({"kind": "gf", "p": 3, "k": 2}))
                .unwrap()
                .size(),
            Some(9)
        );
        assert!(field_from_json(&json!("GF(8)")).is_err());
        let gf = Field::gf(5, 2).unwrap();
        assert_eq!(field_from_json(&field_to_json(&gf).unwrap()).unwrap(), gf);
    }

    #[test]
    fn polynomial_round_trip() {
        let ring = PolyRing::with_names(Field::Q, "X", 2);
        let doc = json!({"vars": ["X1", "X2"], "terms": [{"coeff": "3/2", "exps": [2, 0]}, {"coeff": "-1", "exps": [0, 1]}]});
        let f = poly_from_json(&ring, &doc).unwrap();
        assert_eq!(f, parse_poly(&ring, "3/2*X1^2 - X2").unwrap());
        assert_eq!(poly_from_json(&ring, &poly_to_json(&f)).unwrap(), f);
        // variables are matched by name
        let swapped = json!({"vars": ["X2", "X1"], "terms": [{"coeff": 1, "exps": [1, 0]}]});
        assert_eq!(
            poly_from_json(&ring, &swapped).unwrap(),
            MPoly::var(&ring, 1)
        );
        assert!(poly_from_json(&ring, &json!({"vars": ["W"], "terms": []})).is_err());
    }

    #[test]
    fn gf_coefficients_round_trip() {
        let gf = Field::gf(3, 2).unwrap();
        let ring = PolyRing::with_names(gf.clone(), "X", 1);
        let f = MPoly::var(&ring, 0)
            .scale(&gf.element(5))
            .add(&MPoly::constant(&ring, gf.element(7)));
        assert_eq!(poly_from_json(&ring, &poly_to_json(&f)).unwrap(), f);
    }

    #[test]
    fn circuit_round_trip() {
        let doc = json!({
            "field": "GF(7)",
            "vars": ["X1", "X2", "X3"],
            "summands": [["X1", "X2"], ["X3", "X1 + X2"], [{"vars": ["X3"], "terms": [{"coeff": "2", "exps": [2]}]}]],
            "squarefree_summand": 0
        });
        let c = circuit_from_json(&doc).unwrap();
        assert_eq!(c.k(), 3);
        assert_eq!(c.squarefree_summand(), Some(0));
        let again = circuit_from_json(&circuit_to_json(&c).unwrap()).unwrap();
        assert_eq!(again.expand(), c.expand());
    }

    #[test]
    fn hitting_set_round_trip() {
        let h = crate::pit::bounded_degree_hitting_set(2, 2, &Field::Fp(5)).unwrap();
        let back = hitting_set_from_json(&hitting_set_to_json(&h).unwrap()).unwrap();
        assert_eq!(back.points, h.points);
        assert_eq!(back.provenance, h.provenance);
    }

    #[test]
    fn ideal_documents() {
        let doc = json!({"field": "QQ", "order": "lex", "generators": ["x^2 - y", {"vars": ["x", "y"], "terms": [{"coeff": 1, "exps": [1, 1]}]}], "vars": ["x", "y"]});
        let (ring, gens) = ideal_from_json(&doc).unwrap();
        assert_eq!(ring.order(), &MonomialOrder::Lex);
        assert_eq!(gens.len(), 2);
    }
}
