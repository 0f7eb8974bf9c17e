//! Counting irreducible factors with multiplicity, for composition lengths.
//!
//! Integers use trial division. Polynomials over a prime field use a sieve of
//! monic irreducibles and repeated trial division. Polynomials over the
//! rationals use Kronecker's interpolation method on a primitive integer
//! model; everything stays exact and the sizes are guarded.

use super::{poly_deg, Elem, Ring};
use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

/// Number of irreducible factors of `e`, counted with multiplicity.
/// Units count as 0; the zero element is rejected.
pub fn factor_count(ring: &Ring, e: &Elem) -> Result<u64> {
    if ring.is_zero(e) {
        return Err(Error::Unsupported("factor count of zero".into()));
    }
    if ring.is_unit(e) {
        return Ok(0);
    }
    match ring {
        Ring::Integers => {
            let Elem::Int(n) = e else { unreachable!() };
            Ok(count_int(n.magnitude().clone().into()))
        }
        Ring::Poly { coeff, .. } => match **coeff {
            Ring::PrimeField(_) => count_gfp(ring, coeff, e),
            Ring::Rationals => count_rat(e),
            _ => Err(Error::Unsupported(format!("factor count over {ring}"))),
        },
        _ => Err(Error::Unsupported(format!("factor count over {ring}"))),
    }
}

fn count_int(mut n: BigInt) -> u64 {
    let mut count = 0;
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        while (&n % &d).is_zero() {
            n /= &d;
            count += 1;
        }
        d += 1;
    }
    if n > BigInt::one() {
        count += 1;
    }
    count
}

/// Monic irreducibles of degree up to `max_deg` over GF(p), by sieve.
fn irreducibles(ring: &Ring, coeff: &Ring, max_deg: usize) -> Result<Vec<Elem>> {
    let scalars = coeff.elements()?;
    let p = scalars.len();
    if max_deg > 0 && p.checked_pow(max_deg as u32).is_none_or(|n| n > 1 << 20) {
        return Err(Error::SizeLimit("irreducible sieve too large".into()));
    }
    let mut irr: Vec<Elem> = Vec::new();
    for d in 1..=max_deg {
        let mut idx = vec![0usize; d];
        loop {
            let mut cs: Vec<Elem> = idx.iter().map(|&i| scalars[i].clone()).collect();
            cs.push(coeff.one());
            let cand = Elem::Poly(cs);
            let reducible = irr
                .iter()
                .take_while(|q| poly_deg(q).unwrap() <= d / 2)
                .any(|q| {
                    let (_, r) = ring.divrem(&cand, q).unwrap();
                    ring.is_zero(&r)
                });
            if !reducible {
                irr.push(cand);
            }
            let mut pos = 0;
            loop {
                if pos == d {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < p {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == d {
                break;
            }
        }
        irr.sort_by_key(|q| poly_deg(q).unwrap());
    }
    Ok(irr)
}

fn count_gfp(ring: &Ring, coeff: &Ring, e: &Elem) -> Result<u64> {
    let mut f = ring.canonize(e).0;
    let deg = poly_deg(&f).unwrap();
    let mut count = 0;
    for q in irreducibles(ring, coeff, deg / 2)? {
        loop {
            let (quo, rem) = ring.divrem(&f, &q)?;
            if ring.is_zero(&rem) {
                f = quo;
                count += 1;
            } else {
                break;
            }
        }
        if poly_deg(&f) == Some(0) {
            break;
        }
    }
    if poly_deg(&f).unwrap() >= 1 {
        count += 1;
    }
    Ok(count)
}

// --- Kronecker factorization over QQ[x] ---

type ZPoly = Vec<BigInt>;

fn to_primitive(e: &Elem) -> ZPoly {
    let Elem::Poly(cs) = e else {
        panic!("not a polynomial")
    };
    let rats: Vec<&BigRational> = cs
        .iter()
        .map(|c| match c {
            Elem::Rat(q) => q,
            _ => panic!("not rational coefficients"),
        })
        .collect();
    let mut denom_lcm = BigInt::one();
    for q in &rats {
        denom_lcm = denom_lcm.lcm(q.denom());
    }
    let ints: Vec<BigInt> = rats
        .iter()
        .map(|q| q.numer() * (&denom_lcm / q.denom()))
        .collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    if content.is_zero() {
        return vec![];
    }
    ints.iter().map(|c| c / &content).collect()
}

fn zp_eval(f: &ZPoly, x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in f.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            large.push(&n / &d);
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small.dedup();
    small
}

/// Divides integer polynomials exactly over QQ; `None` when not a factor.
fn zp_try_div(f: &ZPoly, g: &ZPoly) -> Option<ZPoly> {
    let mut rem: Vec<BigRational> = f
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let glead = BigRational::from_integer(g.last().unwrap().clone());
    let dg = g.len() - 1;
    if rem.len() <= dg {
        return None;
    }
    let mut quo = vec![BigRational::zero(); rem.len() - dg];
    while rem.len() > dg {
        let q = rem.last().unwrap() / &glead;
        let d = rem.len() - 1;
        quo[d - dg] = q.clone();
        for (i, gc) in g.iter().enumerate() {
            let idx = d - dg + i;
            rem[idx] = &rem[idx] - &q * BigRational::from_integer(gc.clone());
        }
        rem.pop();
        while rem.last().is_some_and(|c| c.is_zero()) {
            rem.pop();
        }
    }
    if !rem.is_empty() {
        return None;
    }
    let mut out = Vec::with_capacity(quo.len());
    for q in quo {
        if !q.denom().is_one() {
            return None;
        }
        out.push(q.numer().clone());
    }
    Some(out)
}

/// Finds a proper factor of a primitive integer polynomial, or `None` when
/// irreducible over QQ.
fn kronecker_factor(f: &ZPoly) -> Result<Option<ZPoly>> {
    let deg = f.len() - 1;
    if deg > 16 {
        return Err(Error::SizeLimit(
            "Kronecker factorization degree cap".into(),
        ));
    }
    for d in 1..=deg / 2 {
        let points: Vec<BigInt> = sample_points(d + 1);
        let mut value_divs: Vec<Vec<BigInt>> = Vec::with_capacity(points.len());
        for x in &points {
            let v = zp_eval(f, x);
            if v.is_zero() {
                // x is a rational root.
                return Ok(Some(vec![-x.clone(), BigInt::one()]));
            }
            let mut ds: Vec<BigInt> = divisors(&v);
            let negs: Vec<BigInt> = ds.iter().map(|d| -d).collect();
            ds.extend(negs);
            value_divs.push(ds);
        }
        // Fix the sign at the first point: g and -g divide alike.
        let half = value_divs[0].len() / 2;
        value_divs[0].truncate(half);
        let combos: usize = value_divs.iter().map(Vec::len).product();
        if combos > 2_000_000 {
            return Err(Error::SizeLimit("Kronecker divisor combinations".into()));
        }
        let mut idx = vec![0usize; points.len()];
        'combo: loop {
            let values: Vec<BigInt> = idx
                .iter()
                .zip(&value_divs)
                .map(|(&i, ds)| ds[i].clone())
                .collect();
            if let Some(g) = interpolate(&points, &values) {
                if g.len() >= 2 && zp_try_div(f, &g).is_some() {
                    return Ok(Some(g));
                }
            }
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    break 'combo;
                }
                idx[pos] += 1;
                if idx[pos] < value_divs[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }
    Ok(None)
}

fn sample_points(n: usize) -> Vec<BigInt> {
    let mut pts = vec![BigInt::zero()];
    let mut k = 1i64;
    while pts.len() < n {
        pts.push(BigInt::from(k));
        if pts.len() < n {
            pts.push(BigInt::from(-k));
        }
        k += 1;
    }
    pts
}

/// Lagrange interpolation; `None` when the result is not an integer polynomial.
fn interpolate(points: &[BigInt], values: &[BigInt]) -> Option<ZPoly> {
    let n = points.len();
    let mut acc = vec![BigRational::zero(); n];
    for i in 0..n {
        // Basis polynomial for point i.
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, xj) in points.iter().enumerate() {
            if j == i {
                continue;
            }
            // basis *= (x - xj)
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * BigRational::from_integer(xj.clone());
            }
            basis = next;
            denom *= BigRational::from_integer(&points[i] - xj);
        }
        let scale = BigRational::from_integer(values[i].clone()) / denom;
        for (k, c) in basis.iter().enumerate() {
            acc[k] += c * &scale;
        }
    }
    while acc.last().is_some_and(|c| c.is_zero()) {
        acc.pop();
    }
    let mut out = Vec::with_capacity(acc.len());
    for q in acc {
        if !q.denom().is_one() {
            return None;
        }
        out.push(q.numer().clone());
    }
    Some(out)
}

fn count_rat(e: &Elem) -> Result<u64> {
    fn go(f: &ZPoly) -> Result<u64> {
        if f.len() <= 1 {
            return Ok(0);
        }
        match kronecker_factor(f)? {
            None => Ok(1),
            Some(g) => {
                let h = zp_try_div(f, &g).expect("verified factor");
                Ok(go(&g)? + go(&h)?)
            }
        }
    }
    go(&to_primitive(e))
}
