use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use normpit_core::curve::{is_integrally_closed, trager_normalize};
use normpit_core::groebner::Ideal;
use normpit_core::mpoly::parse_poly;
use normpit_core::pit::sample::{cancelling_circuit, random_circuit, random_factor, CircuitShape};
use normpit_core::pit::{certify_nonzero, hitting_set_main};
use normpit_core::{Error, Field, MonomialOrder, PolyRing};
use normpit_oracle::{
    brute_force_nonzero, eval_circuit, integrality_witness_check, is_reduced_gb, schoolbook_divide,
    verify_hitting_set,
};

use crate::commands::curve_context;
use crate::jobs::par_map;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Gb,
    Curves,
    Pit,
    Hitset,
}

/// One case: `Ok(true)` agreement, `Ok(false)` skipped at a resource cap, `Err` disagreement.
type Case = Result<bool, String>;

fn rng_for(seed: u64, stream: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream << 32 | i as u64);
    rng
}

fn capped<T>(r: normpit_core::Result<T>) -> Result<Option<T>, String> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(Error::ResourceCap(_)) => Ok(None),
        Err(e) => Err(e.to_string()),
    }
}

fn oracle<T>(r: normpit_oracle::Result<T>) -> Result<T, String> {
    r.map_err(|e| format!("oracle: {e}"))
}

fn gb_case(seed: u64, i: usize) -> Case {
    let mut rng = rng_for(seed, 1, i);
    let field = if i.is_multiple_of(2) { Field::Q } else { Field::Fp(7) };
    let ring = PolyRing::with_names(field, "X", 3).with_order(MonomialOrder::Grevlex);
    let k = rng.gen_range(2..=3);
    let gens: Vec<_> = (0..k)
        .map(|_| {
            let deg = rng.gen_range(1..=2);
            random_factor(&mut rng, &ring, deg, false)
        }).collect();
    let ideal = Ideal::new(&ring, gens.clone());
    let Some(gb) = capped(ideal.gb())? else { return Ok(false) };
    let basis = gb.polys();
    if !oracle(is_reduced_gb(basis))? {
        return Err(format!("ideal {i}: basis is not a reduced Gröbner basis"));
    }
    for g in &gens {
        if !oracle(schoolbook_divide(g, basis))?.remainder.is_zero() {
            return Err(format!("ideal {i}: generator {g} not in the span of the basis"));
        }
    }
    let f = random_factor(&mut rng, &ring, 3, false);
    let nf = gb.normal_form(&f).map_err(|e| e.to_string())?;
    if nf != oracle(schoolbook_divide(&f, basis))?.remainder {
        return Err(format!("ideal {i}: normal form of {f} differs from the division remainder"));
    }
    Ok(true)
}

const CURVES: [&str; 4] = ["Y^2 - X^2*(X + 1)", "Y^2 - X^3", "X^2 + Y^2 - 1", "Y^2 - X^4 - X^5"];

fn curve_case(i: usize) -> Case {
    let field = if i < CURVES.len() { Field::Q } else { Field::Fp(7) };
    let ring = PolyRing::new(field.clone(), vec!["X".into(), "Y".into()], MonomialOrder::Grevlex);
    let f = parse_poly(&ring, CURVES[i % CURVES.len()]).map_err(|e| e.to_string())?;
    let ctx = curve_context(&f, None).map_err(|e| e.to_string())?;
    let Some(o) = capped(trager_normalize(&ctx))? else { return Ok(false) };
    let label = format!("{} over {field}", CURVES[i % CURVES.len()]);
    if !capped(is_integrally_closed(&o))?.is_some_and(|(closed, _)| closed) {
        return Err(format!("{label}: order not integrally closed"));
    }
    if !oracle(integrality_witness_check(&o))? {
        return Err(format!("{label}: integrality relations do not check"));
    }
    Ok(true)
}

fn pit_shape() -> CircuitShape {
    CircuitShape { n: 3, d: 4, delta: 1, field: Field::Fp(7), homogeneous: true }
}

fn pit_case(seed: u64, i: usize) -> Case {
    let mut rng = rng_for(seed, 2, i);
    let shape = pit_shape();
    let c = if i % 6 == 5 { cancelling_circuit(&mut rng, &shape) } else { random_circuit(&mut rng, &shape) }
        .map_err(|e| e.to_string())?;
    let Some(v) = capped(certify_nonzero(&c, seed))? else { return Ok(false) };
    let truth = oracle(brute_force_nonzero(&c, 1))?;
    if v.is_zero() == truth {
        return Err(format!("circuit {i}: verdict disagrees with dense expansion ({c})"));
    }
    if let Some(w) = v.witness() {
        if oracle(eval_circuit(&c, &w.point))?.is_zero() {
            return Err(format!("circuit {i}: witness point is a root"));
        }
    }
    Ok(true)
}

fn hitset_cases(seed: u64, jobs: usize) -> Vec<Case> {
    let shape = pit_shape();
    let h = match capped(hitting_set_main(shape.n, shape.d, shape.delta, &shape.field, 1)) {
        Ok(Some(h)) => h,
        Ok(None) => return vec![Ok(false)],
        Err(e) => return vec![Err(e)],
    };
    par_map(jobs, 60, |i| {
        let mut rng = rng_for(seed, 3, i);
        let c = random_circuit(&mut rng, &shape).map_err(|e| e.to_string())?;
        if !oracle(verify_hitting_set(&h, &c))? {
            return Err(format!("circuit {i} vanishes on all {} points", h.len()));
        }
        Ok(true)
    })
}

fn report(name: &str, cases: Vec<Case>) -> Value {
    let agreed = cases.iter().filter(|c| matches!(c, Ok(true))).count();
    let skipped = cases.iter().filter(|c| matches!(c, Ok(false))).count();
    let failures: Vec<&String> = cases.iter().filter_map(|c| c.as_ref().err()).collect();
    json!({
        "suite": name,
        "cases": cases.len(),
        "agreed": agreed,
        "capped": skipped,
        "failures": failures,
        "passed": failures.is_empty(),
    })
}

/// Runs the chosen suites against the brute-force oracle. The boolean is overall agreement.
pub fn run(suite: Suite, seed: u64, jobs: usize) -> (Value, bool) {
    let want = |s: Suite| suite == Suite::All || suite == s;
    let mut suites = Vec::new();
    if want(Suite::Gb) {
        suites.push(report("gb", par_map(jobs, 40, |i| gb_case(seed, i))));
    }
    if want(Suite::Curves) {
        suites.push(report("curves", par_map(jobs, 2 * CURVES.len(), curve_case)));
    }
    if want(Suite::Pit) {
        suites.push(report("pit", par_map(jobs, 60, |i| pit_case(seed, i))));
    }
    if want(Suite::Hitset) {
        suites.push(report("hitset", hitset_cases(seed, jobs)));
    }
    for s in &suites {
        log::debug!(target: "verify", "{}: {} of {} agreed", s["suite"], s["agreed"], s["cases"]);
    }
    let passed = suites.iter().all(|s| s["passed"] == true);
    (json!({"seed": seed, "passed": passed, "suites": suites}), passed)
}
