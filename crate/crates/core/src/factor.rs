//! Factorization of binary forms over 𝔽_p and over ℚ.
//!
//! Over 𝔽_p this is the usual squarefree / distinct-degree /
//! Cantor–Zassenhaus pipeline. Over ℚ only what the verifier needs is
//! supported: rational roots, and quadratic factors of quartics and
//! quintics found by Kronecker's method.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{ConcreteField, Field, Fp, PrimeField, Q};
use crate::poly::Form;
use crate::upoly::UPoly;

/// Multiset of `(multiplicity, degree)` pairs, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorPattern(Vec<(u32, u32)>);

impl FactorPattern {
    pub fn new(mut parts: Vec<(u32, u32)>) -> Self {
        parts.sort_unstable();
        Self(parts)
    }

    pub fn parts(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(m, d)| m * d).sum()
    }
}

/// `unit · Π factor^mult`, with monic (or `t`) factors sorted by degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization<F> {
    pub unit: F,
    pub factors: Vec<(Form<F>, u32)>,
}

impl<F: Field> Factorization<F> {
    pub fn pattern(&self) -> FactorPattern {
        FactorPattern::new(self.factors.iter().map(|(f, m)| (*m, f.degree())).collect())
    }

    pub fn expand(&self) -> Form<F> {
        let mut acc = Form::constant(2, self.unit.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m)).expect("binary forms");
        }
        acc
    }
}

/// Fields over which univariate polynomials can be factored.
pub trait FactorField: Field {
    /// Factors a monic, nonconstant polynomial into monic irreducibles.
    fn factor_monic(f: &UPoly<Self>) -> Result<Vec<(UPoly<Self>, u32)>>;
}

/// Factors a nonzero binary form.
pub fn factor_binary<F: FactorField>(f: &Form<F>) -> Result<Factorization<F>> {
    if f.nvars() != 2 {
        return Err(Error::InvalidForm("binary form expected".into()));
    }
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let d = f.degree();
    let vt = f.terms().map(|(e, _)| e[1]).min().unwrap();
    let vs = f.terms().map(|(e, _)| e[0]).min().unwrap();
    let u = UPoly::dehomogenize(f);
    // strip the factor s^vs as well
    let core = UPoly::new(u.coeffs()[vs as usize..].to_vec());
    let unit = core.lead().unwrap().clone();
    let mut factors = Vec::new();
    if vs > 0 {
        factors.push((Form::var(2, 0), vs));
    }
    if vt > 0 {
        factors.push((Form::var(2, 1), vt));
    }
    if !core.is_constant() {
        for (g, m) in F::factor_monic(&core.monic())? {
            let k = g.degree().unwrap() as u32;
            factors.push((g.homogenize(k), m));
        }
    }
    factors.sort_by(|(a, ma), (b, mb)| {
        (a.degree(), ma)
            .cmp(&(b.degree(), mb))
            .then_with(|| format!("{:?}", a.coeffs_dense()).cmp(&format!("{:?}", b.coeffs_dense())))
    });
    let out = Factorization { unit, factors };
    debug_assert_eq!(out.pattern().total_degree(), d);
    Ok(out)
}

fn modulus_of(f: &UPoly<Fp>) -> Result<PrimeField> {
    let p = f
        .coeffs()
        .iter()
        .find_map(|c| c.modulus())
        .ok_or_else(|| Error::Unsupported("polynomial over F_p with unbound coefficients".into()))?;
    Ok(PrimeField::new(p).expect("modulus of an existing element"))
}

/// Squarefree decomposition over a finite field of characteristic `p`.
fn squarefree_fp(f: &UPoly<Fp>, p: u64) -> Vec<(UPoly<Fp>, u32)> {
    let mut out = Vec::new();
    let one = UPoly::constant(Fp::one());
    let df = f.derivative();
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while w.degree() != Some(0) {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac, i));
        }
        c = c.div_exact(&y).expect("gcd divides");
        w = y;
        i += 1;
    }
    if c != one && c.degree().unwrap_or(0) > 0 {
        // c is a p-th power; in F_p the p-th root acts on exponents only
        let root = UPoly::new(c.coeffs().iter().step_by(p as usize).cloned().collect());
        for (g, m) in squarefree_fp(&root, p) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree.
fn distinct_degree(f: &UPoly<Fp>, p: u64) -> Vec<(UPoly<Fp>, usize)> {
    let mut out = Vec::new();
    let x = UPoly::x();
    let pe = BigUint::from(p);
    let mut g = f.clone();
    let mut h = x.clone();
    let mut d = 1;
    while g.degree().unwrap_or(0) >= 2 * d {
        h = h.powmod(&pe, &g);
        let fac = g.gcd(&h.sub(&x));
        if fac.degree().unwrap_or(0) > 0 {
            g = g.div_exact(&fac).expect("gcd divides");
            h = h.rem(&g);
            out.push((fac, d));
        }
        d += 1;
    }
    if g.degree().unwrap_or(0) > 0 {
        let k = g.degree().unwrap();
        out.push((g, k));
    }
    out
}

fn equal_degree(f: &UPoly<Fp>, d: usize, field: PrimeField, rng: &mut ChaCha8Rng) -> Vec<UPoly<Fp>> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let e = (BigUint::from(field.modulus()).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a = UPoly::new((0..n).map(|_| Fp::random(&field, rng)).collect());
        if a.is_constant() {
            continue;
        }
        let b = a.powmod(&e, f).sub(&UPoly::constant(Fp::one()));
        let g = f.gcd(&b);
        let k = g.degree().unwrap_or(0);
        if k > 0 && k < n {
            let rest = f.div_exact(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, field, rng);
            out.extend(equal_degree(&rest, d, field, rng));
            return out;
        }
    }
}

impl FactorField for Fp {
    fn factor_monic(f: &UPoly<Fp>) -> Result<Vec<(UPoly<Fp>, u32)>> {
        let field = modulus_of(f)?;
        let p = field.modulus();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut out = Vec::new();
        for (sf, m) in squarefree_fp(f, p) {
            for (block, d) in distinct_degree(&sf, p) {
                for g in equal_degree(&block, d, field, &mut rng) {
                    out.push((g, m));
                }
            }
        }
        Ok(out)
    }
}

/// Yun's squarefree decomposition in characteristic zero.
fn squarefree_char0<F: Field>(f: &UPoly<F>) -> Vec<(UPoly<F>, u32)> {
    let mut out = Vec::new();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_exact(&a0).expect("gcd divides");
    let mut c = df.div_exact(&a0).expect("gcd divides");
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        b = b.div_exact(&a).expect("gcd divides");
        c = d.div_exact(&a).expect("gcd divides");
        d = c.sub(&b.derivative());
        if !a.is_constant() {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

const TRIAL_LIMIT: u64 = 1 << 20;

/// Positive divisors of `n ≠ 0`, if `n` factors by trial division.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut m = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut q = BigInt::from(2);
    while &q * &q <= m {
        if q > BigInt::from(TRIAL_LIMIT) {
            return None;
        }
        let mut e = 0;
        while (&m % &q).is_zero() {
            m /= &q;
            e += 1;
        }
        if e > 0 {
            primes.push((q.clone(), e));
        }
        q += 1;
    }
    if m > BigInt::one() {
        primes.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Some(divs)
}

/// Integer polynomial proportional to `f`.
fn primitive_integer(f: &UPoly<Q>) -> Vec<BigInt> {
    let l = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f.coeffs().iter().map(|c| (c * Q::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn rational_roots(f: &UPoly<Q>) -> Result<Vec<Q>> {
    let ints = primitive_integer(f);
    let mut roots = Vec::new();
    if ints[0].is_zero() {
        roots.push(Q::zero());
    }
    let low = ints.iter().find(|c| !c.is_zero()).unwrap();
    let high = ints.last().unwrap();
    let (Some(nums), Some(dens)) = (divisors(low), divisors(high)) else {
        return Err(Error::Unsupported("coefficients too large for rational root search".into()));
    };
    for a in &nums {
        for b in &dens {
            for sign in [1, -1] {
                let r = Q::new(a * sign, b.clone());
                if !roots.contains(&r) && f.eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    Ok(roots)
}

fn interpolate_quadratic(xs: [i64; 3], ys: [&BigInt; 3]) -> Option<UPoly<Q>> {
    let mut acc = UPoly::zero();
    for i in 0..3 {
        let mut basis = UPoly::constant(Q::one());
        let mut denom = Q::one();
        for j in 0..3 {
            if i != j {
                basis = basis.mul(&UPoly::new(vec![Q::from_i64(-xs[j]), Q::one()]));
                denom = denom * Q::from_i64(xs[i] - xs[j]);
            }
        }
        acc = acc.add(&basis.scale(&(Q::from_integer(ys[i].clone()) / denom)));
    }
    (acc.degree() == Some(2)).then_some(acc)
}

/// A monic quadratic factor of a rootless quartic or quintic, if any.
fn quadratic_factor(f: &UPoly<Q>) -> Result<Option<UPoly<Q>>> {
    let ints = primitive_integer(f);
    let fi = UPoly::new(ints.iter().map(|c| Q::from_integer(c.clone())).collect());
    let xs = [0i64, 1, -1];
    let vals: Vec<BigInt> = xs.iter().map(|&x| fi.eval(&Q::from_i64(x)).to_integer()).collect();
    let mut divs = Vec::new();
    for v in &vals {
        let Some(ds) = divisors(v) else {
            return Err(Error::Unsupported("value too large for Kronecker search".into()));
        };
        divs.push(ds.iter().flat_map(|d| [d.clone(), -d]).collect::<Vec<_>>());
    }
    if divs.iter().map(Vec::len).product::<usize>() > 2_000_000 {
        return Err(Error::Unsupported("Kronecker search space too large".into()));
    }
    for a in &divs[0] {
        for b in &divs[1] {
            for c in &divs[2] {
                if let Some(q) = interpolate_quadratic(xs, [a, b, c]) {
                    if f.div_exact(&q).is_some() {
                        return Ok(Some(q.monic()));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn factor_squarefree_q(f: &UPoly<Q>) -> Result<Vec<UPoly<Q>>> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    for r in rational_roots(f)? {
        let lin = UPoly::new(vec![-r, Q::one()]);
        rest = rest.div_exact(&lin).expect("root gives a factor");
        out.push(lin);
    }
    loop {
        match rest.degree().unwrap_or(0) {
            0 => break,
            1..=3 => {
                out.push(rest.monic());
                break;
            }
            4 | 5 => match quadratic_factor(&rest)? {
                Some(q) => {
                    rest = rest.div_exact(&q).expect("found factor");
                    out.push(q);
                }
                None => {
                    out.push(rest.monic());
                    break;
                }
            },
            k => {
                return Err(Error::Unsupported(format!(
                    "factoring a rootless degree {k} polynomial over Q"
                )))
            }
        }
    }
    Ok(out)
}

impl FactorField for Q {
    fn factor_monic(f: &UPoly<Q>) -> Result<Vec<(UPoly<Q>, u32)>> {
        let mut out = Vec::new();
        for (sf, m) in squarefree_char0(f) {
            for g in factor_squarefree_q(&sf)? {
                out.push((g, m));
            }
        }
        Ok(out)
    }
}

/// Number of roots of `f` in 𝔽_p, counted without multiplicity.
pub fn distinct_roots_fp(f: &UPoly<Fp>) -> Result<usize> {
    let field = modulus_of(f)?;
    let x = UPoly::x();
    let h = x.powmod(&BigUint::from(field.modulus()), f);
    Ok(f.gcd(&h.sub(&x)).degree().unwrap_or(0))
}

/// Merges two patterns as for the product of coprime forms, given the
/// factorizations they came from; shared factors add multiplicities.
pub fn merge_factorizations<F: Field>(a: &Factorization<F>, b: &Factorization<F>) -> FactorPattern {
    let mut by_key: BTreeMap<String, (u32, u32)> = BTreeMap::new();
    for (f, m) in a.factors.iter().chain(&b.factors) {
        let key = format!("{:?}", f.coeffs_dense());
        let entry = by_key.entry(key).or_insert((0, f.degree()));
        entry.0 += m;
    }
    FactorPattern::new(by_key.into_values().collect())
}
