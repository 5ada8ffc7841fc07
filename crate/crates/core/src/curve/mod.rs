//! Normalization of affine plane curves: orders over a Noether coordinate, discriminants,
//! the idealizer criterion and enlargement loop, and discrete valuations.

mod algebra;

use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use algebra::{det_upoly, trace_discriminant, Elem, FunctionAlgebra, Lattice};

use crate::coeff::{Field, Scalar};
use crate::error::{Error, Result};
use crate::groebner::{
    buchberger, embed, extend_ring, hom_preimage, idealizer_preimage, ring_hom_kernel,
    GroebnerBasis, Ideal,
};
use crate::mpoly::{factor_upoly, is_irreducible, MPoly, MonomialOrder, PolyRing, Ring, UPoly};
use crate::zerodim::{extract_maximal, MaximalIdeal};

#[cfg(test)]
mod tests;

const FACTOR_SEED: u64 = 0x7a6e;
const UNIFORMIZER_SEED: u64 = 0x5eed_0001;

/// A plane curve f(Z₁, Z₂) = 0 with a Noether coordinate α = c₁Z₁ + c₂Z₂.
#[derive(Clone, Debug)]
pub struct CurveContext {
    ring: Ring,
    f: MPoly,
    direction: [Scalar; 2],
    generator: usize,
    minpoly: MPoly,
    algebra: FunctionAlgebra,
    root_exponent: u32,
}

fn alpha_ring(field: &Field) -> Ring {
    PolyRing::new(
        field.clone(),
        vec!["T".into(), "A".into()],
        MonomialOrder::Lex,
    )
}

/// Noether directions (1,1), (1,2), (2,1), (1,3), … skipping proportional pairs.
fn noether_directions(field: &Field, cap: usize) -> Vec<[Scalar; 2]> {
    let mut out: Vec<[Scalar; 2]> = Vec::new();
    let mut seen: Vec<Scalar> = Vec::new();
    let mut total = 2i64;
    while out.len() < cap && total < 4 * cap as i64 + 4 {
        for a in 1..total {
            let (ca, cb) = (field.from_i64(a), field.from_i64(total - a));
            if ca.is_zero() || cb.is_zero() {
                continue;
            }
            let ratio = cb.div(&ca).expect("nonzero");
            if seen.contains(&ratio) {
                continue;
            }
            seen.push(ratio);
            out.push([ca, cb]);
        }
        total += 1;
    }
    out.truncate(cap);
    out
}

impl CurveContext {
    /// Picks the first Noether direction from the fixed sequence that passes all checks.
    pub fn new(f: &MPoly) -> Result<Self> {
        let mut last = Error::Finiteness("no Noether direction found".into());
        for [c1, c2] in noether_directions(f.field(), 32) {
            match Self::with_direction(f, c1, c2) {
                Ok(ctx) => return Ok(ctx),
                Err(e @ (Error::Finiteness(_) | Error::Separability { .. })) => last = e,
                Err(e) => return Err(e),
            }
        }
        Err(last)
    }

    pub fn with_direction(f: &MPoly, c1: Scalar, c2: Scalar) -> Result<Self> {
        let ring = f.ring().clone();
        if ring.nvars() != 2 {
            return Err(Error::InvalidInput(
                "a plane curve needs exactly two variables".into(),
            ));
        }
        if f.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidInput(
                "the curve equation must be non-constant".into(),
            ));
        }
        if c1.is_zero() && c2.is_zero() {
            return Err(Error::InvalidInput("zero Noether direction".into()));
        }
        let generator = if c2.is_zero() { 1 } else { 0 };
        let mut ctx = CurveContext {
            ring: ring.clone(),
            f: f.clone(),
            direction: [c1, c2],
            generator,
            minpoly: MPoly::zero(&alpha_ring(ring.field())),
            algebra: FunctionAlgebra::new(
                ring.field(),
                &[UPoly::x(ring.field()), UPoly::one(ring.field())],
            )?,
            root_exponent: 0,
        };
        let mp = minpoly_over_kalpha(&ctx)?;
        let coeffs = alpha_coefficients(&mp)?;
        let s = coeffs.len() - 1;
        ctx.algebra = FunctionAlgebra::new(ring.field(), &coeffs)?;
        ctx.minpoly = mp;
        if ctx.minpoly.partial(0).is_zero() {
            return Err(Error::Separability { required_e: 1 });
        }
        if s > 1 && !certify_irreducible(&coeffs)? {
            return Err(Error::InvalidInput(
                "could not certify that the curve is irreducible".into(),
            ));
        }
        Ok(ctx)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    pub fn f(&self) -> &MPoly {
        &self.f
    }

    pub fn direction(&self) -> &[Scalar; 2] {
        &self.direction
    }

    /// Index of the coordinate that plays the role of X̄.
    pub fn generator_var(&self) -> usize {
        self.generator
    }

    pub fn alpha(&self) -> MPoly {
        let r = &self.ring;
        MPoly::var(r, 0)
            .scale(&self.direction[0])
            .add(&MPoly::var(r, 1).scale(&self.direction[1]))
    }

    pub fn degree(&self) -> usize {
        self.algebra.degree()
    }

    pub fn algebra(&self) -> &FunctionAlgebra {
        &self.algebra
    }

    pub fn minpoly(&self) -> &MPoly {
        &self.minpoly
    }

    pub fn root_exponent(&self) -> u32 {
        self.root_exponent
    }

    /// The class of a polynomial in Z₁, Z₂ inside K(α)[X̄]/⟨F⟩.
    pub fn to_elem(&self, g: &MPoly) -> Result<Elem> {
        let alg = &self.algebra;
        let field = self.field();
        let xbar = alg.generator();
        let alpha = alg.alpha();
        let [c1, c2] = &self.direction;
        let other = if self.generator == 0 {
            // Z₂ = (α − c₁·Z₁)/c₂
            let inv = c2.inv()?;
            let t = alg.sub(
                &alpha,
                &alg.scale(&xbar, &UPoly::constant(field, c1.clone()))?,
            )?;
            alg.scale(&t, &UPoly::constant(field, inv))?
        } else {
            alg.scale(&alpha, &UPoly::constant(field, c1.inv()?))?
        };
        let images = if self.generator == 0 {
            [xbar, other]
        } else {
            [other, xbar]
        };
        eval_in_algebra(alg, g, &images)
    }

    /// The polynomial in Z₁, Z₂ representing an element without denominator.
    pub fn from_elem(&self, e: &Elem) -> Result<MPoly> {
        if e.den.deg() > 0 {
            return Err(Error::InvalidInput("element has a denominator".into()));
        }
        let inv = e.den.lc().inv()?;
        let alpha = self.alpha();
        let xbar = MPoly::var(&self.ring, self.generator);
        let mut acc = MPoly::zero(&self.ring);
        for c in e.num.iter().rev() {
            acc = acc.mul(&xbar).add(&upoly_at_mpoly(c, &alpha));
        }
        Ok(acc.scale(&inv))
    }

    fn alpha_poly(&self, u: &UPoly) -> MPoly {
        upoly_at_mpoly(u, &self.alpha())
    }
}

fn upoly_at_mpoly(u: &UPoly, t: &MPoly) -> MPoly {
    crate::zerodim::upoly_at(u, t)
}

/// Evaluates a polynomial at algebra elements, one per variable.
pub fn eval_in_algebra(alg: &FunctionAlgebra, g: &MPoly, images: &[Elem]) -> Result<Elem> {
    let n = images.len();
    let mut powers: Vec<Vec<Elem>> = vec![vec![alg.one()]; n];
    let mut acc = alg.zero();
    for (m, c) in g.terms() {
        let mut t = alg.from_poly(UPoly::constant(alg.field(), c.clone()));
        for (v, &e) in m.iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[v].len() <= e as usize {
                let next = alg.mul(powers[v].last().unwrap(), &images[v])?;
                powers[v].push(next);
            }
            t = alg.mul(&t, &powers[v][e as usize])?;
        }
        acc = alg.add(&acc, &t)?;
    }
    Ok(acc)
}

/// Coefficients in T (degree 0..s) of a polynomial in the ring [T, A], as polynomials in A.
fn alpha_coefficients(f: &MPoly) -> Result<Vec<UPoly>> {
    let field = f.field().clone();
    let s = f.degree_in(0).unwrap_or(0) as usize;
    let mut out = vec![Vec::<Scalar>::new(); s + 1];
    for (m, c) in f.terms() {
        let (i, j) = (m[0] as usize, m[1] as usize);
        let v = &mut out[i];
        if v.len() <= j {
            v.resize(j + 1, field.zero());
        }
        v[j] = c.clone();
    }
    Ok(out.into_iter().map(|c| UPoly::new(&field, c)).collect())
}

/// Irreducibility of F(T, α) over K(α), certified by an irreducible specialization of α.
fn certify_irreducible(coeffs: &[UPoly]) -> Result<bool> {
    let field = coeffs[0].field().clone();
    let cap = field.size().map(|q| q.min(64)).unwrap_or(64);
    for j in 0..cap {
        let a = field.element(j);
        let specialized = UPoly::new(&field, coeffs.iter().map(|c| c.eval(&a)).collect());
        if is_irreducible(&specialized)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// F(T, α): the monic minimal polynomial of X̄ over K[α], from eliminating Z₁, Z₂ out of
/// ⟨f, T − X̄, A − α⟩.
pub fn minpoly_over_kalpha(ctx: &CurveContext) -> Result<MPoly> {
    let field = ctx.field().clone();
    let order = MonomialOrder::Block {
        elim: vec![0, 1],
        inner: Box::new(MonomialOrder::Grevlex),
        outer: Box::new(MonomialOrder::Lex),
    };
    let names: Vec<String> = ctx
        .ring
        .vars()
        .iter()
        .cloned()
        .chain(["T".to_string(), "A".to_string()])
        .collect();
    let big = PolyRing::try_new(field.clone(), names, order)?;
    let lift = |g: &MPoly| embed(g, &big);
    let xbar = MPoly::var(&big, ctx.generator);
    let alpha = lift(&ctx.alpha());
    let gens = vec![
        lift(&ctx.f),
        MPoly::var(&big, 2).sub(&xbar),
        MPoly::var(&big, 3).sub(&alpha),
    ];
    let gb = buchberger(&gens)?;
    let best = gb
        .polys()
        .iter()
        .filter(|g| !g.uses_var(0) && !g.uses_var(1) && g.uses_var(2))
        .min_by_key(|g| g.lm()[2])
        .ok_or_else(|| Error::Finiteness("no relation in T over K[α]".into()))?;
    if best.lm()[3] != 0 {
        return Err(Error::Finiteness(
            "minimal polynomial is not monic over K[α]".into(),
        ));
    }
    let target = alpha_ring(&field);
    let map = vec![None, None, Some(0), Some(1)];
    Ok(best.monic().rename(&target, &map)?.reorder(&target))
}

/// (−1)^{d(d−1)/2}·Res(f, ∂f/∂x) for f monic in the variable `var`, via the Sylvester
/// determinant over the remaining variables.
pub fn disc_univariate(f: &MPoly, var: usize) -> Result<MPoly> {
    let ring = f.ring().clone();
    let d = f.degree_in(var).unwrap_or(0) as usize;
    if d == 0 {
        return Err(Error::InvalidInput(
            "discriminant needs positive degree".into(),
        ));
    }
    let coeffs = crate::mpoly::coeffs_in(f, var);
    if !coeffs[d].is_one() {
        return Err(Error::InvalidInput(
            "discriminant input must be monic".into(),
        ));
    }
    let field = ring.field().clone();
    let deriv: Vec<MPoly> = (1..=d)
        .map(|i| coeffs[i].scale(&field.from_i64(i as i64)))
        .collect();
    let size = 2 * d - 1;
    let mut m = vec![vec![MPoly::zero(&ring); size]; size];
    for r in 0..d - 1 {
        for (k, c) in coeffs.iter().rev().enumerate() {
            m[r][r + k] = c.clone();
        }
    }
    for r in 0..d {
        for (k, c) in deriv.iter().rev().enumerate() {
            m[d - 1 + r][r + k] = c.clone();
        }
    }
    let det = det_mpoly(&m, &ring)?;
    Ok(if (d * (d - 1) / 2) % 2 == 1 {
        det.neg()
    } else {
        det
    })
}

/// Fraction-free determinant of a polynomial matrix.
pub fn det_mpoly(m: &[Vec<MPoly>], ring: &Ring) -> Result<MPoly> {
    let n = m.len();
    if n == 0 {
        return Ok(MPoly::one(ring));
    }
    let mut a = m.to_vec();
    let mut sign = false;
    let mut prev = MPoly::one(ring);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(MPoly::zero(ring));
            };
            a.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v.exact_div(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign { d.neg() } else { d })
}

/// The presentation ⟨I, f·U − 1⟩ of the localization at f, in a ring with U appended.
pub fn localization_presentation(i: &Ideal, f: &MPoly) -> Result<Ideal> {
    if i.contains(f)? {
        return Err(Error::InvalidInput(
            "localizing at an element of the ideal".into(),
        ));
    }
    let big = extend_ring(i.ring(), 1, "U");
    let u = MPoly::var(&big, i.ring().nvars());
    let mut gens: Vec<MPoly> = i.gens().iter().map(|g| embed(g, &big)).collect();
    gens.push(embed(f, &big).mul(&u).sub(&MPoly::one(&big)));
    Ok(Ideal::new(&big, gens))
}

/// One enlargement of the normalization loop.
#[derive(Clone, Debug)]
pub struct Step {
    pub disc_degree: usize,
    pub adjoined: String,
}

/// An order K[T₁..T_m]/⟨relations⟩ between K[α][X̄] and the integral closure; T₁ = α,
/// T₂ = X̄ and the remaining variables are adjoined fractions.
#[derive(Clone, Debug)]
pub struct OrderPresentation {
    pub ring: Ring,
    pub relations: GroebnerBasis,
    pub coord_images: Vec<MPoly>,
    pub alpha_var: usize,
    pub disc_gen: UPoly,
    pub root_exponent: u32,
    pub generators: Vec<Elem>,
    pub lattice: Lattice,
    pub steps: Vec<Step>,
    algebra: FunctionAlgebra,
    power_disc: UPoly,
}

impl OrderPresentation {
    pub fn ideal(&self) -> Ideal {
        Ideal::from_gb(self.relations.clone())
    }

    pub fn algebra(&self) -> &FunctionAlgebra {
        &self.algebra
    }

    /// The value in K(α)[X̄]/⟨F⟩ of a polynomial in the T variables.
    pub fn elem_of(&self, g: &MPoly) -> Result<Elem> {
        eval_in_algebra(&self.algebra, g, &self.generators)
    }

    /// Discriminant of the power basis 1, X̄, …, X̄^{s−1}, up to sign.
    pub fn power_basis_disc(&self) -> &UPoly {
        &self.power_disc
    }

    pub fn disc_degree(&self) -> usize {
        self.disc_gen.deg()
    }

    fn disc_poly(&self) -> MPoly {
        crate::zerodim::upoly_at(&self.disc_gen, &MPoly::var(&self.ring, self.alpha_var))
    }
}

fn presentation_ring(field: &Field, m: usize) -> Ring {
    PolyRing::new(
        field.clone(),
        (1..=m).map(|i| format!("T{i}")).collect(),
        MonomialOrder::Grevlex,
    )
}

fn monic_or_one(u: &UPoly) -> UPoly {
    if u.is_zero() {
        u.clone()
    } else {
        u.monic()
    }
}

/// Builds the presentation for the order generated over K[α] by X̄ and `extra`.
fn present(ctx: &CurveContext, extra: &[Elem], steps: Vec<Step>) -> Result<OrderPresentation> {
    let alg = ctx.algebra.clone();
    let field = ctx.field().clone();
    let s = alg.degree();
    let xbar = alg.generator();
    let mut power = vec![alg.one()];
    for _ in 1..s {
        let next = alg.mul(power.last().unwrap(), &xbar)?;
        power.push(next);
    }
    let mut lattice = Lattice::span(&alg, &power)?;
    for theta in extra {
        let mut elems = Vec::new();
        let basis = lattice.basis(&alg)?;
        let mut tp = alg.one();
        for _ in 0..s {
            for b in &basis {
                elems.push(alg.mul(b, &tp)?);
            }
            tp = alg.mul(&tp, theta)?;
        }
        lattice = Lattice::span(&alg, &elems)?;
    }
    let (power_disc_num, power_disc_den) = trace_discriminant(&alg, &power)?;
    let power_disc = monic_or_one(&power_disc_num.exact_div(&power_disc_den)?);
    if power_disc.is_zero() {
        return Err(Error::Separability {
            required_e: ctx.root_exponent + 1,
        });
    }
    let (det, den_s) = lattice.determinant(&field)?;
    let disc_gen = monic_or_one(
        &power_disc
            .mul(&det)
            .mul(&det)
            .exact_div(&den_s.mul(&den_s))?,
    );

    let m = 2 + extra.len();
    let target = presentation_ring(&field, m);
    let ambient = extend_ring(&ctx.ring, 1, "U");
    let u = MPoly::var(&ambient, 2);
    let d_amb = embed(&ctx.alpha_poly(&power_disc), &ambient);
    let local = Ideal::new(
        &ambient,
        vec![
            embed(&ctx.f, &ambient),
            d_amb.mul(&u).sub(&MPoly::one(&ambient)),
        ],
    );
    let mut images = vec![
        embed(&ctx.alpha(), &ambient),
        MPoly::var(&ambient, ctx.generator),
    ];
    for theta in extra {
        let a = alg.scale(theta, &power_disc)?;
        images.push(embed(&ctx.from_elem(&a)?, &ambient).mul(&u));
    }
    let relations = ring_hom_kernel(&local, &images, &target)?;
    let coord_images = (0..2)
        .map(|i| hom_preimage(&MPoly::var(&ambient, i), &local, &images, &target))
        .collect::<Result<Vec<_>>>()?;
    let mut generators = vec![alg.alpha(), xbar];
    generators.extend(extra.iter().cloned());
    Ok(OrderPresentation {
        ring: target,
        relations,
        coord_images,
        alpha_var: 0,
        disc_gen,
        root_exponent: ctx.root_exponent,
        generators,
        lattice,
        steps,
        algebra: alg,
        power_disc,
    })
}

/// O₀ = K[α][X̄].
pub fn initial_order(ctx: &CurveContext) -> Result<OrderPresentation> {
    present(ctx, &[], Vec::new())
}

/// Discriminant of a tuple of order elements via the trace form; the flag marks a
/// K(α)-dependent tuple.
pub fn disc_tuple(o: &OrderPresentation, tuple: &[MPoly]) -> Result<(UPoly, bool)> {
    if tuple.len() != o.algebra.degree() {
        return Err(Error::InvalidInput(
            "tuple length must equal the extension degree".into(),
        ));
    }
    let elems = tuple
        .iter()
        .map(|g| o.elem_of(g))
        .collect::<Result<Vec<_>>>()?;
    let (num, den) = trace_discriminant(&o.algebra, &elems)?;
    let d = num.exact_div(&den)?;
    let degenerate = d.is_zero();
    Ok((d, degenerate))
}

/// An element of the idealizer preimage at `m` that does not lie in ⟨disc⟩ + relations.
fn enlarging_element(o: &OrderPresentation, m: &MaximalIdeal) -> Result<Option<MPoly>> {
    let c = o.disc_poly();
    let rel = o.ideal();
    let g1 = idealizer_preimage(&rel, &m.generators(), &c)?;
    let base = rel.add_gens(&[c]);
    let base_gb = base.gb()?;
    for g in g1.polys() {
        if !base_gb.normal_form(g)?.is_zero() {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

/// Maximal ideals of the order lying over the irreducible factors of the discriminant.
pub fn maximal_ideals_over_disc(o: &OrderPresentation) -> Result<Vec<MaximalIdeal>> {
    let mut out = Vec::new();
    if o.disc_gen.deg() == 0 {
        return Ok(out);
    }
    let alpha = MPoly::var(&o.ring, o.alpha_var);
    for (q, _) in factor_upoly(&o.disc_gen, FACTOR_SEED)? {
        let iq = o.ideal().add_gens(&[crate::zerodim::upoly_at(&q, &alpha)]);
        out.extend(extract_maximal(&iq)?);
    }
    Ok(out)
}

/// Whether the order is integrally closed, with the maximal ideals where it is not.
pub fn is_integrally_closed(o: &OrderPresentation) -> Result<(bool, Vec<MaximalIdeal>)> {
    let mut witnesses = Vec::new();
    for m in maximal_ideals_over_disc(o)? {
        if enlarging_element(o, &m)?.is_some() {
            witnesses.push(m);
        }
    }
    Ok((witnesses.is_empty(), witnesses))
}

/// Adjoins one element of the idealizer of `m` to the order.
pub fn enlarge_order(
    ctx: &CurveContext,
    o: &OrderPresentation,
    m: &MaximalIdeal,
) -> Result<OrderPresentation> {
    let gamma = enlarging_element(o, m)?
        .ok_or_else(|| Error::Internal("no strict enlargement at a witness ideal".into()))?;
    let alg = &o.algebra;
    let field = ctx.field().clone();
    // a = remainder of γ(r)·(D/Q) modulo ⟨f, D·U − 1⟩ under an elimination order for U
    let ambient = PolyRing::try_new(
        field.clone(),
        ctx.ring
            .vars()
            .iter()
            .cloned()
            .chain(["U".to_string()])
            .collect(),
        MonomialOrder::elimination(vec![2]),
    )?;
    let u = MPoly::var(&ambient, 2);
    let d = &o.power_disc;
    let d_amb = embed(&ctx.alpha_poly(d), &ambient);
    let g2 = buchberger(&[
        embed(&ctx.f, &ambient),
        d_amb.mul(&u).sub(&MPoly::one(&ambient)),
    ])?;
    let mut images = vec![
        embed(&ctx.alpha(), &ambient),
        MPoly::var(&ambient, ctx.generator),
    ];
    for theta in &o.generators[2..] {
        let a = alg.scale(theta, d)?;
        images.push(embed(&ctx.from_elem(&a)?, &ambient).mul(&u));
    }
    let cofactor = d.exact_div(&o.disc_gen)?;
    let lifted = gamma
        .substitute(&ambient, &images)?
        .mul(&embed(&ctx.alpha_poly(&cofactor), &ambient));
    let a = g2.normal_form(&lifted)?;
    if a.uses_var(2) {
        return Err(Error::Internal(
            "adjoined numerator still involves the inverted discriminant".into(),
        ));
    }
    let a_z = a
        .rename(&ctx.ring, &[Some(0), Some(1), None])?
        .reorder(&ctx.ring);
    let theta0 = alg.div_poly(&ctx.to_elem(&a_z)?, d)?;
    let reduced = o.lattice.reduce(alg, &theta0)?;
    if alg.is_zero(&reduced) {
        return Err(Error::Internal(
            "idealizer element already lies in the order".into(),
        ));
    }
    let lead = reduced
        .num
        .iter()
        .rev()
        .find(|c| !c.is_zero())
        .expect("nonzero")
        .lc();
    let theta = alg.scale(&reduced, &UPoly::constant(&field, lead.inv()?))?;
    let mut extra: Vec<Elem> = o.generators[2..].to_vec();
    extra.push(theta.clone());
    let mut steps = o.steps.clone();
    steps.push(Step {
        disc_degree: o.disc_gen.deg(),
        adjoined: describe_fraction(ctx, &theta)?,
    });
    let next = present(ctx, &extra, steps)?;
    if next.disc_gen.deg() + 2 > o.disc_gen.deg() {
        return Err(Error::Internal(
            "discriminant degree did not drop by two".into(),
        ));
    }
    Ok(next)
}

/// "num / den" in the curve coordinates.
fn describe_fraction(ctx: &CurveContext, e: &Elem) -> Result<String> {
    let num = ctx.from_elem(&Elem {
        num: e.num.clone(),
        den: UPoly::one(ctx.field()),
    })?;
    if e.den.deg() == 0 {
        return Ok(num.to_string());
    }
    let den = ctx.alpha_poly(&e.den);
    let wrap = |p: &MPoly| {
        if p.nterms() > 1 {
            format!("({p})")
        } else {
            p.to_string()
        }
    };
    Ok(format!("{} / {}", wrap(&num), wrap(&den)))
}

/// Runs the idealizer loop from K[α][X̄] until the order is integrally closed.
pub fn trager_normalize(ctx: &CurveContext) -> Result<OrderPresentation> {
    let mut o = initial_order(ctx)?;
    let bound = o.disc_gen.deg() / 2;
    for round in 0..=bound {
        let (closed, witnesses) = is_integrally_closed(&o)?;
        log::debug!(target: "trager", "round {round}: disc degree {}, closed {closed}", o.disc_gen.deg());
        if closed {
            return Ok(o);
        }
        o = enlarge_order(ctx, &o, &witnesses[0])?;
        if let Some(step) = o.steps.last() {
            log::debug!(target: "trager", "adjoined {}", step.adjoined);
        }
    }
    let (closed, _) = is_integrally_closed(&o)?;
    if closed {
        return Ok(o);
    }
    Err(Error::Internal(
        "normalization loop exceeded the discriminant bound".into(),
    ))
}

/// A monic relation over K[α] satisfied by the T-variable `var`, read off an elimination.
pub fn integral_relation(o: &OrderPresentation, var: usize) -> Result<MPoly> {
    let keep = [var, o.alpha_var];
    let elim: Vec<usize> = (0..o.ring.nvars()).filter(|v| !keep.contains(v)).collect();
    let n = o.ring.nvars();
    let order = MonomialOrder::Block {
        elim: elim.clone(),
        inner: Box::new(MonomialOrder::Grevlex),
        outer: Box::new(MonomialOrder::Lex),
    };
    // lex on the kept pair must rank `var` above α
    let mut names: Vec<String> = elim.iter().map(|&v| o.ring.vars()[v].clone()).collect();
    names.push(o.ring.vars()[var].clone());
    names.push(o.ring.vars()[o.alpha_var].clone());
    let ring = PolyRing::try_new(o.ring.field().clone(), names, order)?;
    let mut map = vec![None; n];
    for (j, &v) in elim.iter().enumerate() {
        map[v] = Some(j);
    }
    map[var] = Some(elim.len());
    map[o.alpha_var] = Some(elim.len() + 1);
    let gens = o
        .relations
        .polys()
        .iter()
        .map(|g| Ok(g.rename(&ring, &map)?.reorder(&ring)))
        .collect::<Result<Vec<_>>>()?;
    let gb = buchberger(&gens)?;
    let t = elim.len();
    let best = gb
        .polys()
        .iter()
        .filter(|g| (0..t).all(|v| !g.uses_var(v)) && g.uses_var(t))
        .min_by_key(|g| g.lm()[t])
        .ok_or_else(|| Error::Finiteness("generator is not algebraic over K[α]".into()))?;
    if best.lm()[t + 1] != 0 {
        return Err(Error::Finiteness(
            "generator is not integral over K[α]".into(),
        ));
    }
    Ok(best.monic())
}

/// The order of vanishing at a maximal ideal of an integrally closed order.
#[derive(Debug)]
pub struct ValuationWitness {
    pub maximal: MaximalIdeal,
    pub uniformizer: MPoly,
    relations: Ideal,
    powers: Mutex<Vec<GroebnerBasis>>,
}

/// +∞ is `None`.
pub type Valuation = Option<u32>;

impl ValuationWitness {
    pub fn new(o: &OrderPresentation, m: &MaximalIdeal) -> Result<Self> {
        let rel = o.ideal();
        let mi = m.ideal();
        let msq = mi.mul(&mi).add(&rel);
        let msq_gb = msq.gb()?.clone();
        let mut candidates: Vec<MPoly> = m.generators();
        candidates.extend(m.gb.polys().iter().cloned());
        let mut chosen = None;
        for g in &candidates {
            if !msq_gb.normal_form(g)?.is_zero() {
                chosen = Some(g.clone());
                break;
            }
        }
        if chosen.is_none() {
            let mut rng = ChaCha8Rng::seed_from_u64(UNIFORMIZER_SEED);
            let field = o.ring.field().clone();
            let q = field.size().unwrap_or(1 << 20);
            for _ in 0..64 {
                let mut comb = MPoly::zero(&o.ring);
                for g in m.gb.polys() {
                    comb = comb.add(&g.scale(&field.element(rng.gen_range(0..q))));
                }
                if !msq_gb.normal_form(&comb)?.is_zero() {
                    chosen = Some(comb);
                    break;
                }
            }
        }
        let uniformizer = chosen.ok_or(Error::NotClosed)?;
        let first = Ideal::from_gb(m.gb.clone()).add(&rel).gb()?.clone();
        Ok(ValuationWitness {
            maximal: m.clone(),
            uniformizer,
            relations: rel,
            powers: Mutex::new(vec![first, msq_gb]),
        })
    }

    fn power(&self, k: usize) -> Result<GroebnerBasis> {
        let mut p = self.powers.lock().unwrap();
        while p.len() < k {
            let last = Ideal::from_gb(p.last().unwrap().clone());
            let next = last.mul(&self.maximal.ideal()).add(&self.relations);
            p.push(next.gb()?.clone());
        }
        Ok(p[k - 1].clone())
    }

    /// ord_m of an order element.
    pub fn ord(&self, f: &MPoly) -> Result<Valuation> {
        if self.relations.contains(f)? {
            return Ok(None);
        }
        let mut k = 0;
        loop {
            if !self.power(k + 1)?.normal_form(f)?.is_zero() {
                return Ok(Some(k as u32));
            }
            k += 1;
            if k > 256 {
                return Err(Error::ResourceCap("valuation exceeds 256".into()));
            }
        }
    }

    /// ord_m(num) − ord_m(den); `None` when the numerator vanishes.
    pub fn ord_fraction(&self, num: &MPoly, den: &MPoly) -> Result<Option<i64>> {
        let d = self
            .ord(den)?
            .ok_or_else(|| Error::Arithmetic("zero denominator".into()))?;
        Ok(self.ord(num)?.map(|n| n as i64 - d as i64))
    }
}

/// The valuation at `m` of an element of an integrally closed order.
pub fn ord_at(o: &OrderPresentation, m: &MaximalIdeal, f: &MPoly) -> Result<Valuation> {
    let (closed, _) = is_integrally_closed(o)?;
    if !closed {
        return Err(Error::NotClosed);
    }
    ValuationWitness::new(o, m)?.ord(f)
}

/// All maximal ideals of the order containing the given elements.
pub fn maximal_ideals_containing(
    o: &OrderPresentation,
    elems: &[MPoly],
) -> Result<Vec<MaximalIdeal>> {
    extract_maximal(&o.ideal().add_gens(elems))
}
