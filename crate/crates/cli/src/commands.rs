use serde_json::{json, Value};

use normpit_core::curve::{trager_normalize, CurveContext};
use normpit_core::groebner::{eliminate, Ideal};
use normpit_core::json::{self, point_to_json, poly_to_json, scalar_to_string};
use normpit_core::mpoly::UPoly;
use normpit_core::pit::{
    certify_nonzero_with, hitting_set_inhom, hitting_set_main, CertifyOptions, PlaneParams, Route,
    Verdict,
};
use normpit_core::zerodim::extract_maximal;
use normpit_core::{Error, Field, MPoly, Scalar};

use crate::Failure;

/// A JSON document plus whether the answer was a mathematical negative.
pub struct Answer {
    pub doc: Value,
    pub negative: bool,
}

impl From<Value> for Answer {
    fn from(doc: Value) -> Self {
        Answer { doc, negative: false }
    }
}

pub fn gb(doc: &Value) -> Result<Answer, Failure> {
    let (ring, gens) = json::ideal_from_json(doc)?;
    let ideal = Ideal::new(&ring, gens);
    Ok(json::gb_to_json(ideal.gb()?)?.into())
}

pub fn eliminate_vars(doc: &Value, names: &[String]) -> Result<Answer, Failure> {
    let (ring, gens) = json::ideal_from_json(doc)?;
    let idx = names
        .iter()
        .map(|n| ring.var_index(n).ok_or_else(|| Failure::Input(format!("unknown variable '{n}'"))))
        .collect::<Result<Vec<_>, _>>()?;
    let gb = eliminate(&Ideal::new(&ring, gens), &idx)?;
    Ok(json::gb_to_json(&gb)?.into())
}

fn upoly_json(u: &UPoly) -> Value {
    Value::Array(u.coeffs().iter().map(|c| Value::String(scalar_to_string(c))).collect())
}

fn scalars(v: &[Scalar]) -> Value {
    point_to_json(v)
}

pub fn maxideals(doc: &Value) -> Result<Answer, Failure> {
    let (ring, gens) = json::ideal_from_json(doc)?;
    let ms = extract_maximal(&Ideal::new(&ring, gens))?;
    let out: Vec<Value> = ms
        .iter()
        .map(|m| {
            let pe = &m.primitive;
            json!({
                "basis": m.gb.polys().iter().map(poly_to_json).collect::<Vec<_>>(),
                "residue_degree": m.residue_degree,
                "separable": m.separable,
                "primitive": {
                    "direction": scalars(&pe.direction),
                    "minpoly": upoly_json(&pe.beta_minpoly),
                    "denominator": upoly_json(&pe.denominator),
                    "numerators": pe.numerators.iter().map(upoly_json).collect::<Vec<_>>(),
                },
            })
        })
        .collect();
    Ok(json!({
        "field": json::field_to_json(ring.field())?,
        "vars": ring.vars(),
        "count": out.len(),
        "maximal_ideals": out,
    })
    .into())
}

/// Projects along the first coordinate when the curve is monic in the second, else
/// takes the first admissible direction of the fixed sequence.
pub fn curve_context(f: &MPoly, direction: Option<[i64; 2]>) -> normpit_core::Result<CurveContext> {
    let field = f.field().clone();
    match direction {
        Some([c1, c2]) => CurveContext::with_direction(f, field.from_i64(c1), field.from_i64(c2)),
        None => match CurveContext::with_direction(f, field.one(), field.zero()) {
            Err(Error::Finiteness(_) | Error::Separability { .. }) => CurveContext::new(f),
            r => r,
        },
    }
}

pub fn normalize(doc: &Value, direction: Option<&[i64]>) -> Result<Answer, Failure> {
    let direction = match direction {
        None => None,
        Some(&[c1, c2]) => Some([c1, c2]),
        Some(_) => return Err(Failure::Input("--direction takes two integers".into())),
    };
    let f = json::curve_from_json(doc)?;
    let ctx = curve_context(&f, direction)?;
    let o = trager_normalize(&ctx)?;
    let mut out = json::presentation_to_json(&o)?;
    out["direction"] = scalars(ctx.direction());
    Ok(out.into())
}

pub fn hitset(
    n: usize,
    d: usize,
    delta: usize,
    field: &str,
    degree: usize,
    inhom: bool,
) -> Result<Answer, Failure> {
    let field: Field = json::field_from_str(field)?;
    let h = if inhom {
        hitting_set_inhom(n, d, delta, &field, degree)?
    } else {
        hitting_set_main(n, d, delta, &field, degree)?
    };
    let mut out = json::hitting_set_to_json(&h)?;
    out["parameters"] = json!({"n": n, "d": d, "delta": delta, "degree_bound": degree, "homogeneous": !inhom});
    Ok(out.into())
}

fn route_json(r: &Route) -> Value {
    match r {
        Route::SmallCase { k0 } => json!({"name": r.name(), "k0": k0}),
        Route::Justify { factor, divides } => json!({"name": r.name(), "factor": factor, "divides": divides}),
        Route::Easy { gamma } => json!({"name": r.name(), "gamma": scalar_to_string(gamma)}),
        Route::Hard(cert) => json!({
            "name": r.name(),
            "chart": cert.chart,
            "residue_degree": cert.residue_degree,
            "orders": cert.orders,
            "n": cert.n,
            "uniformizer": poly_to_json(&cert.uniformizer),
            "checks": {
                "proper": cert.checks.proper,
                "non_zerodivisor": cert.checks.non_zerodivisor,
                "injective": cert.checks.injective,
                "sum_survives": cert.checks.sum_survives,
            },
            "verified": cert.verify(),
        }),
        Route::LowVariate | Route::Fallback => json!({"name": r.name()}),
    }
}

pub fn pit(doc: &Value, seed: u64) -> Result<Answer, Failure> {
    let c = json::circuit_from_json(doc)?;
    let opts = CertifyOptions { seed, ..CertifyOptions::default() };
    match certify_nonzero_with(&c, &opts)? {
        Verdict::Zero => Ok(Answer { doc: json!({"verdict": "zero", "seed": seed}), negative: true }),
        Verdict::Witness(w) => {
            let plane = match w.plane.as_ref().map(|p| &p.params) {
                Some(PlaneParams::Point(a)) => scalars(a),
                _ => Value::Null,
            };
            Ok(json!({
                "verdict": "nonzero",
                "seed": seed,
                "point": point_to_json(&w.point),
                "value": scalar_to_string(&w.value),
                "normal_form": w.normal_form,
                "planes_tried": w.planes_tried,
                "plane": plane,
                "route": route_json(&w.route),
            })
            .into())
        }
    }
}
