use crate::curve::{
    maximal_ideals_containing, trager_normalize, CurveContext, OrderPresentation, ValuationWitness,
};
use crate::error::{Error, Result};
use crate::groebner::{ideal_member, krull_dimension, quotient, Ideal};
use crate::limits::check_time;
use crate::linalg::solve;
use crate::zerodim::{quotient_basis, MaximalIdeal};
use crate::{Field, MPoly, Ring, Scalar};

use super::normal::{normal_form, NormalForm};
use super::{
    boost_epsilon, boosted_count, bounded_degree_hitting_set, bounded_degree_size, extension_for,
    restrict, restrict_chart, Circuit, PlaneMode, PlaneRestriction,
};

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    /// Recorded with the verdict; the search order itself is fixed.
    pub seed: u64,
    /// Degree of the bounded-degree generator behind the candidate planes.
    pub plane_degree: usize,
    pub eps: (u64, u64),
    /// Stop the structural search after this many candidate planes.
    pub max_planes: Option<usize>,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            seed: 0,
            plane_degree: 1,
            eps: (1, 2),
            max_planes: None,
        }
    }
}

/// The three claims behind a hard-case certificate, checked at the chosen plane, plus the
/// conclusion they imply.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SStarChecks {
    /// 1 ∉ m̂.
    pub proper: bool,
    /// (⟨h⟩ : u) = ⟨h⟩.
    pub non_zerodivisor: bool,
    /// res(f_{0,1})(g₁, g₂) ∈ ⟨h⟩.
    pub injective: bool,
    /// res(F₁ + F₂)(g₁, g₂) ∉ ⟨h⟩.
    pub sum_survives: bool,
}

impl SStarChecks {
    pub fn all(&self) -> bool {
        self.proper && self.non_zerodivisor && self.injective && self.sum_survives
    }
}

/// Witness that ord_m̂(res F₁) < ord_m̂(res F₂) at a point of the normalized restricted curve.
#[derive(Clone, Debug)]
pub struct SStarCertificate {
    /// Affine chart Ẑ_chart = 1 of the projective plane.
    pub chart: usize,
    pub ring: Ring,
    /// h_ℓ: the relations of the normalization.
    pub relations: Vec<MPoly>,
    /// g₁, g₂: images of the plane coordinates.
    pub images: Vec<MPoly>,
    /// Gröbner basis of m̂.
    pub maximal: Vec<MPoly>,
    pub residue_degree: usize,
    pub uniformizer: MPoly,
    /// res(f_{i,j})(g₁, g₂) for i = 1, 2.
    pub restricted: [Vec<MPoly>; 2],
    /// k_{i,j} = ord_m̂ res(f_{i,j}).
    pub orders: [Vec<u32>; 2],
    /// n_i = Σ_j k_{i,j}.
    pub n: [u32; 2],
    pub t: [Vec<MPoly>; 2],
    pub s: [Vec<MPoly>; 2],
    pub a: [Vec<Vec<MPoly>>; 2],
    pub b: [Vec<Vec<MPoly>>; 2],
    pub c: [Vec<Vec<MPoly>>; 2],
    pub d: Vec<MPoly>,
    pub e: Vec<Vec<MPoly>>,
    pub checks: SStarChecks,
}

fn combo(coeffs: &[MPoly], gens: &[MPoly], ring: &Ring) -> MPoly {
    coeffs
        .iter()
        .zip(gens)
        .fold(MPoly::zero(ring), |acc, (a, g)| acc.add(&a.mul(g)))
}

impl SStarCertificate {
    /// Re-expands every stored identity and checks the order bookkeeping.
    pub fn verify(&self) -> bool {
        let r = &self.ring;
        let one = MPoly::one(r);
        let g = &self.maximal;
        let h = &self.relations;
        for i in 0..2 {
            if self.orders[i].iter().sum::<u32>() != self.n[i] {
                return false;
            }
            for (j, res) in self.restricted[i].iter().enumerate() {
                let uk = self.uniformizer.pow(self.orders[i][j]);
                let lhs = self.t[i][j].mul(res);
                let rhs =
                    uk.mul(&one.add(&combo(&self.a[i][j], g, r)))
                        .add(&combo(&self.b[i][j], h, r));
                if lhs != rhs {
                    return false;
                }
                if self.s[i][j].mul(&self.t[i][j]) != one.add(&combo(&self.c[i][j], g, r)) {
                    return false;
                }
            }
        }
        if self.uniformizer != combo(&self.d, g, r) {
            return false;
        }
        if h.len() != self.e.len() || h.iter().zip(&self.e).any(|(hl, el)| *hl != combo(el, g, r)) {
            return false;
        }
        self.n[0] < self.n[1] && self.checks.all()
    }
}

#[derive(Clone, Debug)]
pub enum Route {
    /// At most two independent summands after normalization.
    SmallCase {
        k0: usize,
    },
    /// Two or fewer variables: a plain grid.
    LowVariate,
    Justify {
        factor: usize,
        divides: usize,
    },
    /// res(F₁)/res(F₂) is the constant γ on the restricted curve.
    Easy {
        gamma: Scalar,
    },
    Hard(Box<SStarCertificate>),
    /// No candidate plane certified; the bounded-degree grid decided.
    Fallback,
}

impl Route {
    pub fn name(&self) -> &'static str {
        match self {
            Route::SmallCase { .. } => "small-case",
            Route::LowVariate => "low-variate",
            Route::Justify { .. } => "justify",
            Route::Easy { .. } => "easy",
            Route::Hard(_) => "hard",
            Route::Fallback => "fallback",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub plane: Option<PlaneRestriction>,
    /// Point in 𝔽ⁿ (or an extension) with F(point) = value ≠ 0.
    pub point: Vec<Scalar>,
    pub value: Scalar,
    pub route: Route,
    pub normal_form: &'static str,
    pub planes_tried: usize,
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Zero,
    Witness(Box<Witness>),
}

impl Verdict {
    pub fn is_zero(&self) -> bool {
        matches!(self, Verdict::Zero)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Witness(w) => Some(w),
            Verdict::Zero => None,
        }
    }
}

pub fn certify_nonzero(c: &Circuit, seed: u64) -> Result<Verdict> {
    certify_nonzero_with(
        c,
        &CertifyOptions {
            seed,
            ..CertifyOptions::default()
        },
    )
}

enum Outcome {
    Zero,
    Found(Witness),
    Exhausted(usize, &'static str),
}

/// Decides whether the circuit is zero. Inhomogeneous circuits are homogenized first and
/// the witness is moved back off X0 = 0.
pub fn certify_nonzero_with(c: &Circuit, opts: &CertifyOptions) -> Result<Verdict> {
    let inhom = !c.is_homogeneous();
    let work = if inhom { c.homogenized()? } else { c.clone() };
    match structural(&work, inhom, c, opts)? {
        Outcome::Zero => Ok(Verdict::Zero),
        Outcome::Found(mut w) => {
            if inhom {
                let x0 = w.point[0].clone();
                let inv = x0.inv()?;
                w.point = w.point[1..].iter().map(|x| x.mul(&inv)).collect();
            }
            w.value = c.eval(&w.point)?;
            if w.value.is_zero() {
                return Err(Error::Internal(
                    "witness does not evaluate to a nonzero value".into(),
                ));
            }
            log::debug!(target: "pit", "normal form {}, route {} after {} planes", w.normal_form, w.route.name(), w.planes_tried);
            Ok(Verdict::Witness(Box::new(w)))
        }
        Outcome::Exhausted(tried, nf) => {
            log::debug!(target: "pit", "normal form {nf}: no plane certified after {tried} candidates, grid fallback");
            match grid_witness(c, Route::Fallback, nf, tried)? {
                Some(w) => Ok(Verdict::Witness(Box::new(w))),
                None => Ok(Verdict::Zero),
            }
        }
    }
}

/// First point of the degree-d bounded-degree generator where F is nonzero.
fn grid_witness(
    c: &Circuit,
    route: Route,
    nf: &'static str,
    tried: usize,
) -> Result<Option<Witness>> {
    let h = bounded_degree_hitting_set(c.nvars(), c.d() as usize, c.field())?;
    let lifted = c.over(&h.field)?;
    for p in &h.points {
        check_time()?;
        let v = lifted.eval(p)?;
        if !v.is_zero() {
            return Ok(Some(Witness {
                plane: None,
                point: p.clone(),
                value: v,
                route,
                normal_form: nf,
                planes_tried: tried,
            }));
        }
    }
    Ok(None)
}

fn structural(
    work: &Circuit,
    inhom: bool,
    original: &Circuit,
    opts: &CertifyOptions,
) -> Result<Outcome> {
    let nf = normal_form(work)?;
    let name = nf.name();
    if nf.is_zero() {
        return Ok(Outcome::Zero);
    }
    let small = match &nf {
        NormalForm::K1 { circuit, .. } | NormalForm::K2 { circuit, .. } => {
            Some(Route::SmallCase { k0: circuit.k() })
        }
        _ if work.nvars() <= 2 => Some(Route::LowVariate),
        _ => None,
    };
    if let Some(route) = small {
        return match grid_witness(original, route, name, 0)? {
            Some(mut w) => {
                if inhom {
                    // grid_witness ran on the original circuit; undo the later dehomogenization
                    let one = w
                        .point
                        .first()
                        .map(|x| x.field().one())
                        .unwrap_or_else(|| original.field().one());
                    w.point.insert(0, one);
                }
                Ok(Outcome::Found(w))
            }
            None => Err(Error::Internal(
                "a circuit with at most two summands vanished on the grid".into(),
            )),
        };
    }
    let planes = candidate_planes(work.nvars(), work.d() as usize + 1, work.field(), opts)?;
    let Some(first) = planes.first() else {
        return Ok(Outcome::Exhausted(0, name));
    };
    let ext = first.field();
    let lifted = work.over(&ext)?;
    let nfl = lift_form(&nf, &ext)?;
    let full = lifted.expand();
    let grid = work.d() as usize + 1 + usize::from(inhom);
    let limit = opts.max_planes.unwrap_or(usize::MAX);
    let mut tried = 0;
    for plane in planes.iter().take(limit) {
        check_time()?;
        tried += 1;
        if restrict(&full, plane)?.is_zero() {
            continue;
        }
        let route = match &nfl {
            NormalForm::Justify {
                circuit,
                factor,
                divides,
                ..
            } => justify_plane(circuit, *factor, *divides, plane)?,
            NormalForm::Main { circuit, .. } => main_plane(circuit, plane)?,
            _ => None,
        };
        let Some(route) = route else { continue };
        let (point, value) = plane_witness(&lifted, plane, grid, inhom)?.ok_or_else(|| {
            Error::Internal(format!(
                "plane certified by the {} route has no nonzero grid point",
                route.name()
            ))
        })?;
        return Ok(Outcome::Found(Witness {
            plane: Some(plane.clone()),
            point,
            value,
            route,
            normal_form: name,
            planes_tried: tried,
        }));
    }
    Ok(Outcome::Exhausted(tried, name))
}

fn lift_form(nf: &NormalForm, field: &Field) -> Result<NormalForm> {
    let lift_all = |v: &[MPoly]| -> Result<Vec<MPoly>> {
        let ring = v.first().map(|f| f.ring().with_field(field.clone()));
        v.iter()
            .map(|f| f.map_coeffs(ring.as_ref().unwrap(), |c| c.embed_into(field)))
            .collect()
    };
    Ok(match nf {
        NormalForm::K1 { common, circuit } => NormalForm::K1 {
            common: lift_all(common)?,
            circuit: circuit.over(field)?,
        },
        NormalForm::K2 { common, circuit } => NormalForm::K2 {
            common: lift_all(common)?,
            circuit: circuit.over(field)?,
        },
        NormalForm::Justify {
            common,
            circuit,
            factor,
            divides,
        } => NormalForm::Justify {
            common: lift_all(common)?,
            circuit: circuit.over(field)?,
            factor: *factor,
            divides: *divides,
        },
        NormalForm::Main { common, circuit } => NormalForm::Main {
            common: lift_all(common)?,
            circuit: circuit.over(field)?,
        },
    })
}

/// Nondegenerate planes from the boosted bounded-degree generator in 𝔽^{3n}, emission order.
pub(crate) fn candidate_planes(
    n: usize,
    grid: usize,
    field: &Field,
    opts: &CertifyOptions,
) -> Result<Vec<PlaneRestriction>> {
    let degree = opts.plane_degree;
    let count = boosted_count(
        bounded_degree_size(3 * n, degree) as usize,
        degree,
        opts.eps,
    );
    let ext = extension_for(field, count.max(grid as u128 + 1))?;
    let base = bounded_degree_hitting_set(3 * n, degree, &ext)?;
    let boosted = boost_epsilon(&base, opts.eps, degree)?;
    let mut out = Vec::new();
    for p in boosted.points {
        let plane = PlaneRestriction::at_point(p, PlaneMode::Affine)?;
        if plane.is_nondegenerate() {
            out.push(plane);
        }
    }
    Ok(out)
}

/// First grid point of the plane with F ≠ 0 (and X0 ≠ 0 when `off_infinity`).
fn plane_witness(
    c: &Circuit,
    plane: &PlaneRestriction,
    grid: usize,
    off_infinity: bool,
) -> Result<Option<(Vec<Scalar>, Scalar)>> {
    for x in super::plane_grid(plane, grid)? {
        if off_infinity && x[0].is_zero() {
            continue;
        }
        let v = c.eval(&x)?;
        if !v.is_zero() {
            return Ok(Some((x, v)));
        }
    }
    Ok(None)
}

fn dim(gens: Vec<MPoly>) -> Result<i64> {
    let ring = gens[0].ring().clone();
    krull_dimension(&Ideal::new(&ring, gens))
}

/// V(f_{0,j}) ∩ P is a curve on which none of the factors of the non-divided summand
/// vanishes identically.
fn justify_plane(
    c: &Circuit,
    factor: usize,
    divides: usize,
    plane: &PlaneRestriction,
) -> Result<Option<Route>> {
    let r = restrict(&c.summands()[0][factor], plane)?;
    if r.is_constant() || dim(vec![r.clone()])? != 1 {
        return Ok(None);
    }
    let other = if divides == 1 { 2 } else { 1 };
    for g in &c.summands()[other] {
        if g.is_constant() {
            continue;
        }
        if dim(vec![r.clone(), restrict(g, plane)?])? != 0 {
            return Ok(None);
        }
    }
    Ok(Some(Route::Justify { factor, divides }))
}

/// Normalization of one chart curve; `None` when the curve cannot be handled at this plane.
fn chart_order(curve: &MPoly) -> Result<Option<OrderPresentation>> {
    let attempt = CurveContext::new(curve).and_then(|ctx| trager_normalize(&ctx));
    match attempt {
        Ok(o) => Ok(Some(o)),
        Err(e @ Error::ResourceCap(_)) => Err(e),
        Err(_) => Ok(None),
    }
}

struct ChartData {
    chart: usize,
    order: OrderPresentation,
    curve: MPoly,
    /// res(f_{i,j})(g₁, g₂) reduced modulo the relations, i = 1, 2.
    factors: [Vec<MPoly>; 2],
    products: [MPoly; 2],
}

fn chart_data(
    c: &Circuit,
    plane: &PlaneRestriction,
    chart: usize,
) -> Result<Option<Option<ChartData>>> {
    let f01 = &c.summands()[0][0];
    let curve = restrict_chart(f01, plane, chart)?;
    if curve.is_constant() {
        // the whole restricted curve lies on Ẑ_chart = 0
        return Ok(Some(None));
    }
    let Some(order) = chart_order(&curve)? else {
        return Ok(None);
    };
    let mut factors: [Vec<MPoly>; 2] = [Vec::new(), Vec::new()];
    let mut products = [MPoly::one(&order.ring), MPoly::one(&order.ring)];
    for i in 0..2 {
        for f in &c.summands()[i + 1] {
            let fc = restrict_chart(f, plane, chart)?;
            let img = order
                .relations
                .normal_form(&fc.substitute(&order.ring, &order.coord_images)?)?;
            products[i] = order.relations.normal_form(&products[i].mul(&img))?;
            factors[i].push(img);
        }
    }
    Ok(Some(Some(ChartData {
        chart,
        order,
        curve,
        factors,
        products,
    })))
}

/// The white-box test at one plane: either a hard-case certificate on some chart, or a
/// constant ratio γ ≠ −1 on the restricted curve.
fn main_plane(c: &Circuit, plane: &PlaneRestriction) -> Result<Option<Route>> {
    let f01 = &c.summands()[0][0];
    let r0 = restrict(f01, plane)?;
    if r0.degree() != f01.degree() {
        return Ok(None);
    }
    let mut chart0 = None;
    for chart in 0..3 {
        let data = match chart_data(c, plane, chart)? {
            None => return Ok(None),
            Some(None) => continue,
            Some(Some(d)) => d,
        };
        let [r1, r2] = &data.products;
        if r2.is_zero() {
            return Ok(None);
        }
        let o = &data.order;
        for m in maximal_ideals_containing(o, std::slice::from_ref(r2))? {
            let vw = ValuationWitness::new(o, &m)?;
            let n2 = vw
                .ord(r2)?
                .ok_or_else(|| Error::Internal("nonzero element of infinite order".into()))?;
            if vw.ord(r1)?.is_some_and(|n1| n1 < n2) {
                let cert = hard_certificate(&data, &m, &vw)?;
                return Ok(cert.verify().then(|| Route::Hard(Box::new(cert))));
            }
        }
        if chart == 0 {
            chart0 = Some(data);
        }
    }
    let Some(data) = chart0 else { return Ok(None) };
    easy_route(c, plane, &data)
}

fn easy_route(c: &Circuit, plane: &PlaneRestriction, data: &ChartData) -> Result<Option<Route>> {
    let rel = &data.order.relations;
    let [r1, r2] = &data.products;
    let gamma = if r1.is_zero() {
        data.curve.field().zero()
    } else {
        if r1.lm() != r2.lm() {
            return Ok(None);
        }
        r1.lc().div(&r2.lc())?
    };
    if !rel.normal_form(&r1.sub(&r2.scale(&gamma)))?.is_zero()
        || gamma.add(&gamma.one_like()).is_zero()
    {
        return Ok(None);
    }
    let r0 = &data.curve;
    if dim(vec![r0.clone()])? != 1 {
        return Ok(None);
    }
    for f in &c.summands()[2] {
        if f.is_constant() {
            continue;
        }
        if dim(vec![r0.clone(), restrict_chart(f, plane, 0)?])? != 0 {
            return Ok(None);
        }
    }
    Ok(Some(Route::Easy { gamma }))
}

/// t with t·f ≡ u^k modulo u^k·m̂ + ⟨h⟩, by linear algebra in the finite quotient.
fn solve_in_quotient(ideal: &Ideal, f: &MPoly, target: &MPoly) -> Result<MPoly> {
    let qb = quotient_basis(ideal)?;
    let m = qb.mul_matrix(f)?;
    let b = qb.coords(target)?;
    let x = solve(&m, &b, qb.field())
        .ok_or_else(|| Error::Internal("no inverse modulo the maximal ideal".into()))?;
    Ok(qb.element(&x))
}

fn member(f: &MPoly, gens: &[MPoly]) -> Result<Vec<MPoly>> {
    let ring = f.ring().clone();
    ideal_member(f, &Ideal::new(&ring, gens.to_vec()))?
        .ok_or_else(|| Error::Internal("certificate relation is not an ideal member".into()))
}

fn hard_certificate(
    data: &ChartData,
    m: &MaximalIdeal,
    vw: &ValuationWitness,
) -> Result<SStarCertificate> {
    let o = &data.order;
    let ring = o.ring.clone();
    let h: Vec<MPoly> = o.relations.polys().to_vec();
    let g: Vec<MPoly> = m.gb.polys().to_vec();
    let u = vw.uniformizer.clone();
    let one = MPoly::one(&ring);
    let m_ideal = m.ideal();

    let mut orders: [Vec<u32>; 2] = [Vec::new(), Vec::new()];
    let (mut t, mut s) = ([Vec::new(), Vec::new()], [Vec::new(), Vec::new()]);
    let (mut a, mut b, mut cc) = (
        [Vec::new(), Vec::new()],
        [Vec::new(), Vec::new()],
        [Vec::new(), Vec::new()],
    );
    for i in 0..2 {
        for res in &data.factors[i] {
            check_time()?;
            let k = vw
                .ord(res)?
                .ok_or_else(|| Error::Internal("factor vanishes on the curve".into()))?;
            let uk = u.pow(k);
            let mut gens: Vec<MPoly> = g.iter().map(|x| uk.mul(x)).collect();
            gens.extend(h.iter().cloned());
            let j = Ideal::new(&ring, gens.clone());
            let tij = solve_in_quotient(&j, res, &uk)?;
            let cof = member(&tij.mul(res).sub(&uk), &gens)?;
            let sij = solve_in_quotient(&m_ideal, &tij, &one)?;
            let cij = member(&sij.mul(&tij).sub(&one), &g)?;
            orders[i].push(k);
            t[i].push(tij);
            s[i].push(sij);
            a[i].push(cof[..g.len()].to_vec());
            b[i].push(cof[g.len()..].to_vec());
            cc[i].push(cij);
        }
    }
    let d = member(&u, &g)?;
    let e = h
        .iter()
        .map(|hl| member(hl, &g))
        .collect::<Result<Vec<_>>>()?;
    let n = [orders[0].iter().sum(), orders[1].iter().sum()];
    let rel = o.ideal();
    let checks = SStarChecks {
        proper: !m.gb.is_unit(),
        non_zerodivisor: quotient(&rel, &Ideal::new(&ring, vec![u.clone()]))?.same_as(&rel)?,
        injective: o
            .relations
            .normal_form(&data.curve.substitute(&ring, &o.coord_images)?)?
            .is_zero(),
        sum_survives: !o
            .relations
            .normal_form(&data.products[0].add(&data.products[1]))?
            .is_zero(),
    };
    Ok(SStarCertificate {
        chart: data.chart,
        ring,
        relations: h,
        images: o.coord_images.clone(),
        maximal: g,
        residue_degree: m.residue_degree,
        uniformizer: u,
        restricted: data.factors.clone(),
        orders,
        n,
        t,
        s,
        a,
        b,
        c: cc,
        d,
        e,
        checks,
    })
}
