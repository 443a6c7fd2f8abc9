//! Exact arithmetic for the two supported coefficient fields and their
//! discrete rank-one valuations.
//!
//! Elements are either rationals (arbitrary precision, always reduced)
//! or rational functions over F_p (numerator/denominator coprime, the
//! denominator monic). Valuations are p-adic, (pi)-adic at a monic
//! irreducible polynomial, or the degree valuation at infinity.

pub mod intfactor;
pub mod poly;

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use poly::Poly;
use std::fmt;

/// Which coefficient field an element lives in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FieldKind {
    Rational,
    /// F_p(t) for the given prime p.
    Function(u64),
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Function(p) => write!(f, "F_{p}(t)"),
        }
    }
}

/// A rational function num/den over F_p, kept in canonical form:
/// gcd(num, den) = 1, den monic and nonzero, zero is 0/1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        assert_eq!(num.modulus(), den.modulus());
        if num.is_zero() {
            return Ok(RationalFunction {
                num,
                den: Poly::one(den.modulus()),
            });
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num.divmod(&g).0, den.divmod(&g).0);
        let lc = den.leading_coeff();
        if lc != 1 {
            let s = poly::invm(lc, den.modulus());
            num = num.scale(s);
            den = den.scale(s);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

/// An exact element of Q or of F_p(t).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FieldElement {
    Rational(BigRational),
    Function(RationalFunction),
}

impl FieldElement {
    pub fn kind(&self) -> FieldKind {
        match self {
            FieldElement::Rational(_) => FieldKind::Rational,
            FieldElement::Function(rf) => FieldKind::Function(rf.num.modulus()),
        }
    }

    pub fn zero(kind: FieldKind) -> FieldElement {
        match kind {
            FieldKind::Rational => FieldElement::Rational(BigRational::zero()),
            FieldKind::Function(p) => FieldElement::Function(RationalFunction {
                num: Poly::zero(p),
                den: Poly::one(p),
            }),
        }
    }

    pub fn one(kind: FieldKind) -> FieldElement {
        match kind {
            FieldKind::Rational => FieldElement::Rational(BigRational::one()),
            FieldKind::Function(p) => FieldElement::Function(RationalFunction {
                num: Poly::one(p),
                den: Poly::one(p),
            }),
        }
    }

    pub fn from_int(n: i64) -> FieldElement {
        FieldElement::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> FieldElement {
        assert!(d != 0);
        FieldElement::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_poly(num: Poly) -> FieldElement {
        let p = num.modulus();
        FieldElement::Function(RationalFunction {
            num,
            den: Poly::one(p),
        })
    }

    pub fn from_poly_ratio(num: Poly, den: Poly) -> Result<FieldElement> {
        Ok(FieldElement::Function(RationalFunction::new(num, den)?))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Function(rf) => rf.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        self == &FieldElement::one(self.kind())
    }

    fn same_kind(&self, other: &FieldElement) -> FieldKind {
        let k = self.kind();
        assert_eq!(
            k,
            other.kind(),
            "mixed-field arithmetic: {} vs {}",
            k,
            other.kind()
        );
        k
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        self.same_kind(other);
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                FieldElement::Rational(a + b)
            }
            (FieldElement::Function(a), FieldElement::Function(b)) => {
                let num = a.num.mul(&b.den).add(&b.num.mul(&a.den));
                let den = a.den.mul(&b.den);
                FieldElement::Function(RationalFunction::new(num, den).unwrap())
            }
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Function(a) => FieldElement::Function(RationalFunction {
                num: a.num.neg(),
                den: a.den.clone(),
            }),
        }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        self.same_kind(other);
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                FieldElement::Rational(a * b)
            }
            (FieldElement::Function(a), FieldElement::Function(b)) => FieldElement::Function(
                RationalFunction::new(a.num.mul(&b.num), a.den.mul(&b.den)).unwrap(),
            ),
            _ => unreachable!(),
        }
    }

    /// Multiplicative inverse; panics on zero (construction sites reject
    /// zero denominators and singular matrices before this is reachable).
    pub fn inv(&self) -> FieldElement {
        assert!(!self.is_zero(), "inversion of zero");
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(a.recip()),
            FieldElement::Function(a) => FieldElement::Function(
                RationalFunction::new(a.den.clone(), a.num.clone()).unwrap(),
            ),
        }
    }

    pub fn div(&self, other: &FieldElement) -> FieldElement {
        self.mul(&other.inv())
    }

    pub fn checked_inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.inv())
        }
    }

    pub fn pow(&self, e: i64) -> FieldElement {
        if e == 0 {
            return FieldElement::one(self.kind());
        }
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = FieldElement::one(self.kind());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_function(&self) -> Option<&RationalFunction> {
        match self {
            FieldElement::Function(rf) => Some(rf),
            _ => None,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => write!(f, "{r}"),
            FieldElement::Function(rf) => {
                if rf.den.is_one() {
                    write!(f, "{}", rf.num)
                } else {
                    write!(f, "({})/({})", rf.num, rf.den)
                }
            }
        }
    }
}

/// Value group element: an integer or +infinity (the valuation of zero).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ValInt {
    Finite(i64),
    Infinity,
}

impl ValInt {
    pub fn finite(self) -> Option<i64> {
        match self {
            ValInt::Finite(n) => Some(n),
            ValInt::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ValInt::Infinity)
    }

    pub fn add(self, other: ValInt) -> ValInt {
        match (self, other) {
            (ValInt::Finite(a), ValInt::Finite(b)) => ValInt::Finite(a + b),
            _ => ValInt::Infinity,
        }
    }

    pub fn min(self, other: ValInt) -> ValInt {
        if self <= other {
            self
        } else {
            other
        }
    }
}

impl PartialOrd for ValInt {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ValInt {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (ValInt::Infinity, ValInt::Infinity) => std::cmp::Ordering::Equal,
            (ValInt::Infinity, _) => std::cmp::Ordering::Greater,
            (_, ValInt::Infinity) => std::cmp::Ordering::Less,
            (ValInt::Finite(a), ValInt::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ValInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValInt::Finite(n) => write!(f, "{n}"),
            ValInt::Infinity => write!(f, "inf"),
        }
    }
}

/// A discrete rank-one valuation of one of the supported fields.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Valuation {
    /// The p-adic valuation of Q.
    PAdic(BigUint),
    /// The (pi)-adic valuation of F_p(t) at a monic irreducible pi.
    PolyAdic(Poly),
    /// The degree valuation of F_p(t) at infinity: deg(den) - deg(num).
    Infinity(u64),
}

impl Valuation {
    pub fn p_adic(p: u64) -> Result<Valuation> {
        Valuation::p_adic_big(BigUint::from(p))
    }

    pub fn p_adic_big(p: BigUint) -> Result<Valuation> {
        if !intfactor::is_prime(&p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        Ok(Valuation::PAdic(p))
    }

    pub fn poly_adic(pi: Poly) -> Result<Valuation> {
        if !poly::is_prime_u64(pi.modulus()) {
            return Err(Error::Invalid(format!(
                "coefficient modulus {} is not prime",
                pi.modulus()
            )));
        }
        if !pi.is_irreducible() {
            return Err(Error::Invalid(format!("{pi} is not irreducible over F_{}", pi.modulus())));
        }
        Ok(Valuation::PolyAdic(pi.make_monic()))
    }

    pub fn infinity(p: u64) -> Result<Valuation> {
        if !poly::is_prime_u64(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        Ok(Valuation::Infinity(p))
    }

    /// The field kind this valuation applies to.
    pub fn field_kind(&self) -> FieldKind {
        match self {
            Valuation::PAdic(_) => FieldKind::Rational,
            Valuation::PolyAdic(pi) => FieldKind::Function(pi.modulus()),
            Valuation::Infinity(p) => FieldKind::Function(*p),
        }
    }

    pub fn check_kind(&self, kind: FieldKind) -> Result<()> {
        if self.field_kind() == kind {
            Ok(())
        } else {
            Err(Error::ValuationMismatch(format!(
                "valuation over {} applied to {}",
                self.field_kind(),
                kind
            )))
        }
    }

    /// Residue field size q; the tree is (q+1)-regular.
    pub fn residue_size(&self) -> BigUint {
        match self {
            Valuation::PAdic(p) => p.clone(),
            Valuation::PolyAdic(pi) => {
                BigUint::from(pi.modulus()).pow(pi.degree().unwrap() as u32)
            }
            Valuation::Infinity(p) => BigUint::from(*p),
        }
    }

    /// The valuation map. Panics on a field-kind mismatch; callers that
    /// accept external input validate kinds first.
    pub fn val(&self, x: &FieldElement) -> ValInt {
        self.check_kind(x.kind())
            .unwrap_or_else(|e| panic!("{e}"));
        if x.is_zero() {
            return ValInt::Infinity;
        }
        match (self, x) {
            (Valuation::PAdic(p), FieldElement::Rational(r)) => {
                let vn = int_multiplicity(r.numer(), p);
                let vd = int_multiplicity(r.denom(), p);
                ValInt::Finite(vn - vd)
            }
            (Valuation::PolyAdic(pi), FieldElement::Function(rf)) => {
                let vn = rf.num.multiplicity_of(pi) as i64;
                let vd = rf.den.multiplicity_of(pi) as i64;
                ValInt::Finite(vn - vd)
            }
            (Valuation::Infinity(_), FieldElement::Function(rf)) => {
                ValInt::Finite(rf.den.deg() as i64 - rf.num.deg() as i64)
            }
            _ => unreachable!(),
        }
    }

    /// An element of valuation exactly 1: p, pi, or 1/t.
    pub fn uniformizer(&self) -> FieldElement {
        match self {
            Valuation::PAdic(p) => {
                FieldElement::Rational(BigRational::from_integer(BigInt::from(p.clone())))
            }
            Valuation::PolyAdic(pi) => FieldElement::from_poly(pi.clone()),
            Valuation::Infinity(p) => {
                FieldElement::from_poly_ratio(Poly::one(*p), Poly::x(*p)).unwrap()
            }
        }
    }

    /// uniformizer^k as a field element.
    pub fn uniformizer_pow(&self, k: i64) -> FieldElement {
        match self {
            Valuation::PAdic(p) => {
                let pk = BigInt::from(p.clone()).pow(k.unsigned_abs() as u32);
                if k >= 0 {
                    FieldElement::Rational(BigRational::from_integer(pk))
                } else {
                    FieldElement::Rational(BigRational::new(BigInt::one(), pk))
                }
            }
            Valuation::PolyAdic(pi) => {
                let pk = pi.pow(k.unsigned_abs());
                if k >= 0 {
                    FieldElement::from_poly(pk)
                } else {
                    FieldElement::from_poly_ratio(Poly::one(pi.modulus()), pk).unwrap()
                }
            }
            Valuation::Infinity(p) => {
                let tk = Poly::x(*p).pow(k.unsigned_abs());
                if k >= 0 {
                    FieldElement::from_poly_ratio(Poly::one(*p), tk).unwrap()
                } else {
                    FieldElement::from_poly(tk)
                }
            }
        }
    }

    /// Truncated digit expansion: the canonical representative of
    /// x modulo { val >= below }. The result y satisfies
    /// val(x - y) >= below, and two elements are congruent modulo that
    /// fractional ideal exactly when they truncate identically.
    pub fn truncate_digits(&self, x: &FieldElement, below: i64) -> FieldElement {
        let v0 = match self.val(x) {
            ValInt::Infinity => return FieldElement::zero(x.kind()),
            ValInt::Finite(v) if v >= below => return FieldElement::zero(x.kind()),
            ValInt::Finite(v) => v,
        };
        let m = (below - v0) as u32;
        match (self, x) {
            (Valuation::PAdic(p), FieldElement::Rational(r)) => {
                // x = p^v0 * (a/b) with a, b coprime to p
                let pb = BigInt::from(p.clone());
                let (a, va) = strip_power(r.numer(), &pb);
                let (b, vb) = strip_power(r.denom(), &pb);
                debug_assert_eq!(va - vb, v0);
                let modulus = pb.pow(m);
                let c = (&a * mod_inverse(&b, &modulus)).mod_floor(&modulus);
                let unit = BigRational::from_integer(c);
                FieldElement::Rational(unit)
                    .mul(&self.uniformizer_pow(v0))
            }
            (Valuation::PolyAdic(pi), FieldElement::Function(rf)) => {
                let a = strip_poly_power(&rf.num, pi).0;
                let b = strip_poly_power(&rf.den, pi).0;
                let modulus = pi.pow(m as u64);
                let c = a.mul(&b.inverse_mod(&modulus).unwrap()).rem(&modulus);
                FieldElement::from_poly(c).mul(&self.uniformizer_pow(v0))
            }
            (Valuation::Infinity(p), FieldElement::Function(rf)) => {
                // Work in the variable s = 1/t via coefficient reversal.
                let fr = rf.num.reverse();
                let gr = rf.den.reverse();
                let s_mod = Poly::x(*p).pow(m as u64);
                let c = fr.mul(&gr.inverse_mod(&s_mod).unwrap()).rem(&s_mod);
                // c(s) * s^v0 back in terms of t
                let d = c.degree().expect("nonzero digit block") as i64;
                let num_t = c.reverse(); // c_d + ... + c_0 t^d, constant term nonzero
                let e = d + v0;
                let elem = if e >= 0 {
                    FieldElement::from_poly_ratio(num_t, Poly::x(*p).pow(e as u64)).unwrap()
                } else {
                    FieldElement::from_poly(num_t.shift_up((-e) as usize))
                };
                elem
            }
            _ => unreachable!(),
        }
    }

    /// Lifts of the residue field to digit representatives, used to
    /// enumerate tree neighbors. Errors out for residue fields larger
    /// than the enumeration cap.
    pub fn residue_lifts(&self) -> Result<Vec<FieldElement>> {
        const CAP: u64 = 1 << 16;
        match self {
            Valuation::PAdic(p) => {
                let p = u64::try_from(p).map_err(|_| {
                    Error::ResourceCap("residue field too large to enumerate".into())
                })?;
                if p > CAP {
                    return Err(Error::ResourceCap("residue field too large to enumerate".into()));
                }
                Ok((0..p).map(|c| FieldElement::from_int(c as i64)).collect())
            }
            Valuation::PolyAdic(pi) => {
                let p = pi.modulus();
                let d = pi.degree().unwrap() as u32;
                let count = (p as u128).checked_pow(d).unwrap_or(u128::MAX);
                if count > CAP as u128 {
                    return Err(Error::ResourceCap("residue field too large to enumerate".into()));
                }
                let mut out = Vec::with_capacity(count as usize);
                let mut digits = vec![0u64; d as usize];
                loop {
                    out.push(FieldElement::from_poly(Poly::new(p, digits.clone())));
                    let mut i = 0;
                    loop {
                        if i == digits.len() {
                            return Ok(out);
                        }
                        digits[i] += 1;
                        if digits[i] < p {
                            break;
                        }
                        digits[i] = 0;
                        i += 1;
                    }
                }
            }
            Valuation::Infinity(p) => Ok((0..*p)
                .map(|c| FieldElement::from_poly(Poly::constant(*p, c)))
                .collect()),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::PAdic(p) => write!(f, "v_{p}"),
            Valuation::PolyAdic(pi) => write!(f, "v_({pi})"),
            Valuation::Infinity(_) => write!(f, "v_inf"),
        }
    }
}

/// Multiplicity of the prime p in a nonzero integer.
fn int_multiplicity(n: &BigInt, p: &BigUint) -> i64 {
    let p = BigInt::from(p.clone());
    let mut n = n.abs();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

/// Write n = p^k * m with p not dividing m; returns (m, k).
fn strip_power(n: &BigInt, p: &BigInt) -> (BigInt, i64) {
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return (n, k);
        }
        n = q;
        k += 1;
    }
}

fn strip_poly_power(f: &Poly, pi: &Poly) -> (Poly, i64) {
    let mut f = f.clone();
    let mut k = 0;
    loop {
        let (q, r) = f.divmod(pi);
        if !r.is_zero() {
            return (f, k);
        }
        f = q;
        k += 1;
    }
}

/// Inverse of b modulo m (m > 0, gcd(b, m) = 1).
fn mod_inverse(b: &BigInt, m: &BigInt) -> BigInt {
    let e = b.extended_gcd(m);
    debug_assert!(e.gcd.is_one(), "non-invertible residue");
    e.x.mod_floor(m)
}
