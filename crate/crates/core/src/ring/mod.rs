//! Exact arithmetic over the supported commutative rings.
//!
//! A [`Ring`] is a runtime descriptor; elements are passive [`Elem`] values
//! and every operation goes through the descriptor, so matrices over
//! scenario-chosen rings can share one code path. Representatives are kept
//! canonical: residues reduced into `0..m`, rationals in lowest terms with
//! positive denominator, polynomials with trailing zeros trimmed.

mod factor;
mod parse;

use crate::error::{Error, Result};
use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use std::fmt;

pub use factor::factor_count;

/// Canonical representative of a ring element.
///
/// `Int` carries integers and residues, `Rat` rationals, `Poly` a coefficient
/// vector (index = degree, trailing zeros trimmed, empty = zero) over the
/// coefficient field of a polynomial ring or quotient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Elem {
    Int(BigInt),
    Rat(BigRational),
    Poly(Vec<Elem>),
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Int(n) => write!(f, "{n}"),
            Elem::Rat(q) => write!(f, "{q}"),
            Elem::Poly(cs) => write!(f, "poly{cs:?}"),
        }
    }
}

/// Descriptor of a supported commutative ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Ring {
    Integers,
    Modular(BigUint),
    PrimeField(BigUint),
    Rationals,
    Poly { coeff: Box<Ring>, var: String },
    PolyQuot { base: Box<Ring>, modulus: Elem },
}

fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u8);
    if n < &two {
        return false;
    }
    let mut d = two.clone();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            return false;
        }
        d += 1u8;
    }
    true
}

impl Ring {
    pub fn integers() -> Ring {
        Ring::Integers
    }

    pub fn rationals() -> Ring {
        Ring::Rationals
    }

    pub fn modular(m: impl Into<BigUint>) -> Result<Ring> {
        let m = m.into();
        if m < BigUint::from(2u8) {
            return Err(Error::InvalidRing("modulus must be at least 2".into()));
        }
        Ok(Ring::Modular(m))
    }

    pub fn prime_field(p: impl Into<BigUint>) -> Result<Ring> {
        let p = p.into();
        if !is_prime(&p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(Ring::PrimeField(p))
    }

    pub fn poly(coeff: Ring, var: impl Into<String>) -> Result<Ring> {
        if !coeff.is_field() {
            return Err(Error::InvalidRing(
                "polynomial coefficients must form a field".into(),
            ));
        }
        if matches!(coeff, Ring::Poly { .. } | Ring::PolyQuot { .. }) {
            return Err(Error::InvalidRing(
                "nested polynomial rings are not supported".into(),
            ));
        }
        let var = var.into();
        if var.is_empty() || !var.chars().all(|c| c.is_ascii_alphabetic()) {
            return Err(Error::InvalidRing(
                "variable name must be alphabetic".into(),
            ));
        }
        Ok(Ring::Poly {
            coeff: Box::new(coeff),
            var,
        })
    }

    pub fn poly_quot(base: Ring, modulus: Elem) -> Result<Ring> {
        let Ring::Poly { ref coeff, .. } = base else {
            return Err(Error::InvalidRing(
                "quotient base must be a polynomial ring".into(),
            ));
        };
        let Elem::Poly(ref cs) = modulus else {
            return Err(Error::InvalidRing("modulus must be a polynomial".into()));
        };
        if cs.len() < 2 {
            return Err(Error::InvalidRing(
                "modulus must have degree at least 1".into(),
            ));
        }
        if cs.last() != Some(&coeff.one()) {
            return Err(Error::InvalidRing("modulus must be monic".into()));
        }
        Ok(Ring::PolyQuot {
            base: Box::new(base),
            modulus,
        })
    }

    pub fn is_field(&self) -> bool {
        matches!(self, Ring::PrimeField(_) | Ring::Rationals)
    }

    /// Euclidean-capable kinds: Smith normal form is offered exactly here.
    pub fn is_euclidean(&self) -> bool {
        matches!(
            self,
            Ring::Integers | Ring::PrimeField(_) | Ring::Rationals | Ring::Poly { .. }
        )
    }

    /// The coefficient field of a polynomial ring or quotient.
    fn coeff_ring(&self) -> &Ring {
        match self {
            Ring::Poly { coeff, .. } => coeff,
            Ring::PolyQuot { base, .. } => base.coeff_ring(),
            _ => unreachable!("coeff_ring on non-polynomial ring"),
        }
    }

    pub fn var_name(&self) -> Option<&str> {
        match self {
            Ring::Poly { var, .. } => Some(var),
            Ring::PolyQuot { base, .. } => base.var_name(),
            _ => None,
        }
    }

    /// The Euclidean cover used for lifting computations, together with the
    /// modulus to append as extra relations: `Z` for `Z/m` and `k[x]` for
    /// `k[x]/(f)`. Euclidean rings are their own cover.
    pub fn cover(&self) -> (Ring, Option<Elem>) {
        match self {
            Ring::Modular(m) => (Ring::Integers, Some(Elem::Int(BigInt::from(m.clone())))),
            Ring::PolyQuot { base, modulus } => ((**base).clone(), Some(modulus.clone())),
            other => (other.clone(), None),
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            Ring::Rationals => Elem::Rat(BigRational::zero()),
            Ring::Poly { .. } | Ring::PolyQuot { .. } => Elem::Poly(Vec::new()),
            _ => Elem::Int(BigInt::zero()),
        }
    }

    pub fn one(&self) -> Elem {
        match self {
            Ring::Rationals => Elem::Rat(BigRational::one()),
            Ring::Poly { .. } | Ring::PolyQuot { .. } => Elem::Poly(vec![self.coeff_ring().one()]),
            _ => Elem::Int(BigInt::one()),
        }
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        self.from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(&self, n: BigInt) -> Elem {
        match self {
            Ring::Integers => Elem::Int(n),
            Ring::Modular(m) | Ring::PrimeField(m) => {
                let m = BigInt::from(m.clone());
                Elem::Int(n.mod_floor(&m))
            }
            Ring::Rationals => Elem::Rat(BigRational::from_integer(n)),
            Ring::Poly { coeff, .. } => {
                let c = coeff.from_bigint(n);
                if coeff.is_zero(&c) {
                    Elem::Poly(Vec::new())
                } else {
                    Elem::Poly(vec![c])
                }
            }
            Ring::PolyQuot { base, .. } => {
                let lifted = base.from_bigint(n);
                self.reduce_from_cover(lifted)
            }
        }
    }

    /// The variable as an element of a polynomial ring or quotient.
    pub fn var_elem(&self) -> Result<Elem> {
        match self {
            Ring::Poly { coeff, .. } => Ok(Elem::Poly(vec![coeff.zero(), coeff.one()])),
            Ring::PolyQuot { base, .. } => {
                let x = base.var_elem()?;
                Ok(self.reduce_from_cover(x))
            }
            _ => Err(Error::Unsupported("ring has no variable".into())),
        }
    }

    /// Builds a polynomial from low-degree-first integer coefficients.
    pub fn poly_from_i64(&self, coeffs: &[i64]) -> Result<Elem> {
        match self {
            Ring::Poly { coeff, .. } => {
                let cs: Vec<Elem> = coeffs.iter().map(|&c| coeff.from_i64(c)).collect();
                Ok(normalize_poly(cs, coeff))
            }
            Ring::PolyQuot { base, .. } => {
                let lifted = base.poly_from_i64(coeffs)?;
                Ok(self.reduce_from_cover(lifted))
            }
            _ => Err(Error::Unsupported("not a polynomial ring".into())),
        }
    }

    fn check(&self, e: &Elem) -> bool {
        match (self, e) {
            (Ring::Integers, Elem::Int(_)) => true,
            (Ring::Modular(m) | Ring::PrimeField(m), Elem::Int(n)) => {
                !n.is_negative() && n < &BigInt::from(m.clone())
            }
            (Ring::Rationals, Elem::Rat(_)) => true,
            (Ring::Poly { coeff, .. }, Elem::Poly(cs)) => {
                cs.iter().all(|c| coeff.check(c)) && cs.last().is_none_or(|c| !coeff.is_zero(c))
            }
            (Ring::PolyQuot { base, modulus }, Elem::Poly(_)) => {
                base.check(e) && poly_deg(e) < poly_deg(modulus)
            }
            _ => false,
        }
    }

    pub fn expect(&self, e: &Elem) -> Result<()> {
        if self.check(e) {
            Ok(())
        } else {
            Err(Error::WrongRing(self.to_string()))
        }
    }

    pub fn is_zero(&self, e: &Elem) -> bool {
        match e {
            Elem::Int(n) => n.is_zero(),
            Elem::Rat(q) => q.is_zero(),
            Elem::Poly(cs) => cs.is_empty(),
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Ring::Integers, Elem::Int(x), Elem::Int(y)) => Elem::Int(x + y),
            (Ring::Modular(m) | Ring::PrimeField(m), Elem::Int(x), Elem::Int(y)) => {
                Elem::Int((x + y).mod_floor(&BigInt::from(m.clone())))
            }
            (Ring::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (Ring::Poly { coeff, .. }, Elem::Poly(_), Elem::Poly(_)) => poly_add(a, b, coeff),
            (Ring::PolyQuot { base, .. }, Elem::Poly(_), Elem::Poly(_)) => {
                self.reduce_from_cover(base.add(a, b))
            }
            _ => panic!("ring/element mismatch in add"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self, a) {
            (Ring::Integers, Elem::Int(x)) => Elem::Int(-x),
            (Ring::Modular(m) | Ring::PrimeField(m), Elem::Int(x)) => {
                Elem::Int((-x).mod_floor(&BigInt::from(m.clone())))
            }
            (Ring::Rationals, Elem::Rat(x)) => Elem::Rat(-x),
            (Ring::Poly { coeff, .. }, Elem::Poly(cs)) => {
                Elem::Poly(cs.iter().map(|c| coeff.neg(c)).collect())
            }
            (Ring::PolyQuot { base, .. }, Elem::Poly(_)) => base.neg(a),
            _ => panic!("ring/element mismatch in neg"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Ring::Integers, Elem::Int(x), Elem::Int(y)) => Elem::Int(x * y),
            (Ring::Modular(m) | Ring::PrimeField(m), Elem::Int(x), Elem::Int(y)) => {
                Elem::Int((x * y).mod_floor(&BigInt::from(m.clone())))
            }
            (Ring::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (Ring::Poly { coeff, .. }, Elem::Poly(_), Elem::Poly(_)) => poly_mul(a, b, coeff),
            (Ring::PolyQuot { base, .. }, Elem::Poly(_), Elem::Poly(_)) => {
                self.reduce_from_cover(base.mul(a, b))
            }
            _ => panic!("ring/element mismatch in mul"),
        }
    }

    pub fn pow(&self, a: &Elem, n: u32) -> Elem {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Exact division: some `c` with `b * c = a`, if one exists.
    pub fn try_div(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        if self.is_zero(b) {
            return if self.is_zero(a) {
                Some(self.zero())
            } else {
                None
            };
        }
        match self {
            Ring::Integers => {
                let (Elem::Int(x), Elem::Int(y)) = (a, b) else {
                    unreachable!()
                };
                let (q, r) = x.div_rem(y);
                r.is_zero().then_some(Elem::Int(q))
            }
            Ring::Rationals | Ring::PrimeField(_) => Some(self.mul(a, &self.inv(b)?)),
            Ring::Poly { .. } => {
                let (q, r) = self.divrem(a, b).ok()?;
                self.is_zero(&r).then_some(q)
            }
            Ring::Modular(_) | Ring::PolyQuot { .. } => {
                // Solve b*c = a by lifting: b*c + m*t = a over the cover.
                let (cover, modulus) = self.cover();
                let m = modulus.unwrap();
                solve_scalar_pair(&cover, b, &m, a).map(|c| self.reduce_from_cover(c))
            }
        }
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        self.inv(a).is_some()
    }

    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        if self.is_zero(a) {
            return None;
        }
        match self {
            Ring::Integers => {
                let Elem::Int(x) = a else { unreachable!() };
                (x.magnitude().is_one()).then(|| a.clone())
            }
            Ring::Rationals => {
                let Elem::Rat(q) = a else { unreachable!() };
                Some(Elem::Rat(q.recip()))
            }
            Ring::PrimeField(p) => {
                let m = Elem::Int(BigInt::from(p.clone()));
                solve_scalar_pair(&Ring::Integers, a, &m, &Elem::Int(BigInt::one()))
                    .map(|c| self.reduce_int(c))
            }
            Ring::Modular(_) | Ring::PolyQuot { .. } => {
                let (cover, modulus) = self.cover();
                let m = modulus.unwrap();
                solve_scalar_pair(&cover, a, &m, &cover.one()).map(|c| self.reduce_from_cover(c))
            }
            Ring::Poly { coeff, .. } => {
                let Elem::Poly(cs) = a else { unreachable!() };
                if cs.len() == 1 {
                    coeff.inv(&cs[0]).map(|c| Elem::Poly(vec![c]))
                } else {
                    None
                }
            }
        }
    }

    /// Euclidean division `a = q*b + r` with `norm(r) < norm(b)`.
    pub fn divrem(&self, a: &Elem, b: &Elem) -> Result<(Elem, Elem)> {
        if self.is_zero(b) {
            return Err(Error::Indivisible);
        }
        match self {
            Ring::Integers => {
                let (Elem::Int(x), Elem::Int(y)) = (a, b) else {
                    unreachable!()
                };
                let (q, r) = x.div_rem(y);
                Ok((Elem::Int(q), Elem::Int(r)))
            }
            Ring::Rationals | Ring::PrimeField(_) => {
                Ok((self.mul(a, &self.inv(b).unwrap()), self.zero()))
            }
            Ring::Poly { coeff, .. } => Ok(poly_divrem(a, b, coeff)),
            _ => Err(Error::NotEuclidean(self.to_string())),
        }
    }

    /// Pivot norm for Smith reduction: `None` for zero.
    pub fn norm(&self, a: &Elem) -> Option<Norm> {
        if self.is_zero(a) {
            return None;
        }
        Some(match self {
            Ring::Integers => {
                let Elem::Int(x) = a else { unreachable!() };
                Norm::Int(x.magnitude().clone())
            }
            Ring::Poly { .. } => Norm::Deg(poly_deg(a).unwrap()),
            _ => Norm::Unit,
        })
    }

    /// Unit normalization: returns `(canonical, u)` with `canonical = u * a`,
    /// positive over the integers, monic over polynomial rings, `1` over
    /// fields.
    pub fn canonize(&self, a: &Elem) -> (Elem, Elem) {
        if self.is_zero(a) {
            return (self.zero(), self.one());
        }
        match self {
            Ring::Integers => {
                let Elem::Int(x) = a else { unreachable!() };
                if x.is_negative() {
                    (Elem::Int(-x), Elem::Int(BigInt::from(-1)))
                } else {
                    (a.clone(), self.one())
                }
            }
            Ring::Rationals | Ring::PrimeField(_) => (self.one(), self.inv(a).unwrap()),
            Ring::Poly { coeff, .. } => {
                let Elem::Poly(cs) = a else { unreachable!() };
                let lc = cs.last().unwrap();
                let u = Elem::Poly(vec![coeff.inv(lc).unwrap()]);
                (self.mul(&u, a), u)
            }
            _ => (a.clone(), self.one()),
        }
    }

    /// Monic gcd over a Euclidean domain.
    pub fn gcd(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        if !self.is_euclidean() {
            return Err(Error::NotEuclidean(self.to_string()));
        }
        let (mut x, mut y) = (a.clone(), b.clone());
        while !self.is_zero(&y) {
            let (_, r) = self.divrem(&x, &y)?;
            x = y;
            y = r;
        }
        Ok(self.canonize(&x).0)
    }

    fn reduce_int(&self, e: Elem) -> Elem {
        let (Ring::Modular(m) | Ring::PrimeField(m)) = self else {
            return e;
        };
        let Elem::Int(n) = e else {
            panic!("bad residue")
        };
        Elem::Int(n.mod_floor(&BigInt::from(m.clone())))
    }

    /// Reduces an element of the Euclidean cover into this ring.
    pub fn reduce_from_cover(&self, e: Elem) -> Elem {
        match self {
            Ring::Modular(m) => {
                let Elem::Int(n) = e else {
                    panic!("bad cover element")
                };
                Elem::Int(n.mod_floor(&BigInt::from(m.clone())))
            }
            Ring::PolyQuot { base, modulus } => {
                let (_, r) = poly_divrem(&e, modulus, base.coeff_ring());
                r
            }
            _ => e,
        }
    }

    /// Number of elements, when finite and enumerable at desk scale.
    pub fn size(&self) -> Option<BigUint> {
        match self {
            Ring::Modular(m) | Ring::PrimeField(m) => Some(m.clone()),
            Ring::PolyQuot { base, modulus } => {
                let q = base.coeff_ring().size()?;
                Some(num::pow::pow(q, poly_deg(modulus).unwrap()))
            }
            Ring::Poly { .. } | Ring::Integers | Ring::Rationals => None,
        }
    }

    /// All elements of a finite ring, in a fixed order. Errors when the ring
    /// is infinite or too large to enumerate.
    pub fn elements(&self) -> Result<Vec<Elem>> {
        let cap = BigUint::from(1u32 << 20);
        let size = self
            .size()
            .ok_or_else(|| Error::Unsupported(format!("{self} is infinite")))?;
        if size > cap {
            return Err(Error::SizeLimit(format!("ring of size {size}")));
        }
        match self {
            Ring::Modular(m) | Ring::PrimeField(m) => {
                let m: u64 = m.try_into().unwrap();
                Ok((0..m).map(|n| Elem::Int(BigInt::from(n))).collect())
            }
            Ring::PolyQuot { base, modulus } => {
                let coeff = base.coeff_ring();
                let scalars = coeff.elements()?;
                let deg = poly_deg(modulus).unwrap();
                // Coefficient vectors of length `deg`, counted in mixed radix,
                // trimmed to canonical form.
                let mut out = Vec::new();
                let mut idx = vec![0usize; deg];
                loop {
                    let cs: Vec<Elem> = idx.iter().map(|&i| scalars[i].clone()).collect();
                    out.push(normalize_poly(cs, coeff));
                    let mut pos = 0;
                    loop {
                        if pos == deg {
                            return Ok(out);
                        }
                        idx[pos] += 1;
                        if idx[pos] < scalars.len() {
                            break;
                        }
                        idx[pos] = 0;
                        pos += 1;
                    }
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn fmt_elem(&self, e: &Elem) -> String {
        match e {
            Elem::Int(n) => n.to_string(),
            Elem::Rat(q) => {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            Elem::Poly(cs) => {
                if cs.is_empty() {
                    return "0".into();
                }
                let coeff = self.coeff_ring();
                let var = self.var_name().unwrap_or("x");
                let mut parts: Vec<String> = Vec::new();
                for (d, c) in cs.iter().enumerate().rev() {
                    if coeff.is_zero(c) {
                        continue;
                    }
                    let cstr = coeff.fmt_elem(c);
                    let (sign, mag) = match cstr.strip_prefix('-') {
                        Some(rest) => ("-", rest.to_string()),
                        None => ("+", cstr),
                    };
                    let body = match d {
                        0 => mag,
                        _ => {
                            let xp = if d == 1 {
                                var.to_string()
                            } else {
                                format!("{var}^{d}")
                            };
                            if mag == "1" {
                                xp
                            } else {
                                format!("{mag}*{xp}")
                            }
                        }
                    };
                    if parts.is_empty() {
                        parts.push(if sign == "-" {
                            format!("-{body}")
                        } else {
                            body
                        });
                    } else {
                        parts.push(format!(" {sign} {body}"));
                    }
                }
                parts.concat()
            }
        }
    }

    /// Parses an element from an expression such as `x^2 - 3*x + 1/2`.
    pub fn parse(&self, text: &str) -> Result<Elem> {
        parse::parse_elem(self, text)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "ZZ"),
            Ring::Modular(m) => write!(f, "ZZ/{m}"),
            Ring::PrimeField(p) => write!(f, "GF({p})"),
            Ring::Rationals => write!(f, "QQ"),
            Ring::Poly { coeff, var } => write!(f, "{coeff}[{var}]"),
            Ring::PolyQuot { base, modulus } => {
                write!(f, "{base}/({})", base.fmt_elem(modulus))
            }
        }
    }
}

/// Pivot norms; a matrix holds elements of one ring, so variants never mix.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Norm {
    Unit,
    Deg(usize),
    Int(BigUint),
}

/// Degree of a polynomial element; `None` for the zero polynomial.
pub fn poly_deg(e: &Elem) -> Option<usize> {
    match e {
        Elem::Poly(cs) if !cs.is_empty() => Some(cs.len() - 1),
        _ => None,
    }
}

fn normalize_poly(mut cs: Vec<Elem>, coeff: &Ring) -> Elem {
    while cs.last().is_some_and(|c| coeff.is_zero(c)) {
        cs.pop();
    }
    Elem::Poly(cs)
}

fn poly_add(a: &Elem, b: &Elem, coeff: &Ring) -> Elem {
    let (Elem::Poly(xs), Elem::Poly(ys)) = (a, b) else {
        panic!("not polynomials")
    };
    let n = xs.len().max(ys.len());
    let zero = coeff.zero();
    let cs = (0..n)
        .map(|i| coeff.add(xs.get(i).unwrap_or(&zero), ys.get(i).unwrap_or(&zero)))
        .collect();
    normalize_poly(cs, coeff)
}

fn poly_mul(a: &Elem, b: &Elem, coeff: &Ring) -> Elem {
    let (Elem::Poly(xs), Elem::Poly(ys)) = (a, b) else {
        panic!("not polynomials")
    };
    if xs.is_empty() || ys.is_empty() {
        return Elem::Poly(Vec::new());
    }
    let mut cs = vec![coeff.zero(); xs.len() + ys.len() - 1];
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in ys.iter().enumerate() {
            cs[i + j] = coeff.add(&cs[i + j], &coeff.mul(x, y));
        }
    }
    normalize_poly(cs, coeff)
}

fn poly_divrem(a: &Elem, b: &Elem, coeff: &Ring) -> (Elem, Elem) {
    let Elem::Poly(ys) = b else {
        panic!("not polynomials")
    };
    assert!(!ys.is_empty(), "division by zero polynomial");
    let lc_inv = coeff
        .inv(ys.last().unwrap())
        .expect("leading coefficient not invertible");
    let Elem::Poly(xs) = a else {
        panic!("not polynomials")
    };
    let mut rem = xs.clone();
    let db = ys.len() - 1;
    if rem.len() <= db {
        return (Elem::Poly(Vec::new()), normalize_poly(rem, coeff));
    }
    let mut quot = vec![coeff.zero(); rem.len() - db];
    while rem.len() > db && !rem.is_empty() {
        let d = rem.len() - 1;
        let q = coeff.mul(rem.last().unwrap(), &lc_inv);
        if !coeff.is_zero(&q) {
            quot[d - db] = q.clone();
            for (i, y) in ys.iter().enumerate() {
                let idx = d - db + i;
                rem[idx] = coeff.sub(&rem[idx], &coeff.mul(&q, y));
            }
        }
        rem.pop();
        while rem.last().is_some_and(|c| coeff.is_zero(c)) {
            rem.pop();
        }
        if rem.len() <= db {
            break;
        }
    }
    (normalize_poly(quot, coeff), normalize_poly(rem, coeff))
}

/// Solves `b*c + m*t = a` over a Euclidean domain, returning `c`.
fn solve_scalar_pair(ring: &Ring, b: &Elem, m: &Elem, a: &Elem) -> Option<Elem> {
    // Extended Euclid on (b, m): g = u*b + v*m; solvable iff g | a.
    let (mut r0, mut r1) = (b.clone(), m.clone());
    let (mut u0, mut u1) = (ring.one(), ring.zero());
    while !ring.is_zero(&r1) {
        let (q, r) = ring.divrem(&r0, &r1).ok()?;
        let u = ring.sub(&u0, &ring.mul(&q, &u1));
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, u);
    }
    let c = ring.try_div(a, &r0)?;
    Some(ring.mul(&u0, &c))
}
