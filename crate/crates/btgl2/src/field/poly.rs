//! Dense univariate polynomials over the prime field F_p.
//!
//! Coefficients are stored least-degree-first with trailing zeros
//! stripped, so equal polynomials have identical representations.

use std::fmt;

/// Modular addition in F_p.
pub fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

/// Modular subtraction in F_p.
pub fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

/// Modular multiplication in F_p (via u128 intermediates).
pub fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Modular exponentiation in F_p.
pub fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse in F_p, p prime; panics on zero.
pub fn invm(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero in F_p");
    powm(a, p - 2, p)
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A polynomial over F_p, canonical (reduced, stripped) at all times.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u64,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Poly {
        let mut c: Vec<u64> = coeffs.into_iter().map(|x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { p, coeffs: c }
    }

    pub fn from_signed(p: u64, coeffs: &[i64]) -> Poly {
        let q = p as i64;
        Poly::new(p, coeffs.iter().map(|&x| (x.rem_euclid(q)) as u64).collect())
    }

    pub fn zero(p: u64) -> Poly {
        Poly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Poly {
        Poly::new(p, vec![1])
    }

    pub fn constant(p: u64, c: u64) -> Poly {
        Poly::new(p, vec![c])
    }

    /// The monomial t.
    pub fn x(p: u64) -> Poly {
        Poly::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree as isize with deg 0 = -1 for the zero polynomial.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn leading_coeff(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(addm(self.coeff(i), other.coeff(i), self.p));
        }
        Poly::new(self.p, c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(subm(self.coeff(i), other.coeff(i), self.p));
        }
        Poly::new(self.p, c)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.p, self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.p, other.p);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.p);
        }
        let mut c = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = addm(c[i + j], mulm(a, b, self.p), self.p);
            }
        }
        Poly::new(self.p, c)
    }

    pub fn scale(&self, c: u64) -> Poly {
        Poly::new(self.p, self.coeffs.iter().map(|&a| mulm(a, c, self.p)).collect())
    }

    /// Euclidean division; panics if the divisor is zero.
    pub fn divmod(&self, d: &Poly) -> (Poly, Poly) {
        assert_eq!(self.p, d.p);
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dd = d.coeffs.len() - 1;
        let lead_inv = invm(d.leading_coeff(), p);
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            return (Poly::zero(p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = mulm(rem[i], lead_inv, p);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for j in 0..=dd {
                rem[i - dd + j] = subm(rem[i - dd + j], mulm(c, d.coeffs[j], p), p);
            }
        }
        (Poly::new(p, quot), Poly::new(p, rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divmod(d).1
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    pub fn make_monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(invm(self.leading_coeff(), self.p))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Extended gcd: returns (g, u) with u * self = g mod m, g monic.
    pub fn ext_gcd_bezout(&self, m: &Poly) -> (Poly, Poly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), m.clone());
        let (mut u0, mut u1) = (Poly::one(p), Poly::zero(p));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1);
            let u = u0.sub(&q.mul(&u1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = u;
        }
        let lc = r0.leading_coeff();
        if lc != 0 && lc != 1 {
            let s = invm(lc, p);
            r0 = r0.scale(s);
            u0 = u0.scale(s);
        }
        (r0, u0)
    }

    /// Inverse modulo m; None if gcd(self, m) != 1.
    pub fn inverse_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, u) = self.rem(m).ext_gcd_bezout(m);
        if g.is_one() {
            Some(u.rem(m))
        } else {
            None
        }
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// self^e mod m where e is given as (p^d - 1) / 2 style big exponents,
    /// encoded as a little-endian bit iterator over e = p^d halved etc.
    /// Here we only need e = (p^d - 1) / 2, passed via u128.
    pub fn pow_mod_u128(&self, mut e: u128, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.p);
        }
        let mut c = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, &a) in self.coeffs.iter().enumerate().skip(1) {
            c.push(mulm(a, (i as u64) % self.p, self.p));
        }
        Poly::new(self.p, c)
    }

    /// Multiplicity of the factor pi in self (0 if pi does not divide).
    pub fn multiplicity_of(&self, pi: &Poly) -> u32 {
        assert!(!self.is_zero() && pi.deg() >= 1);
        let mut f = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = f.divmod(pi);
            if !r.is_zero() {
                return k;
            }
            f = q;
            k += 1;
        }
    }

    /// Coefficient reversal: rev(f)(t) = t^deg(f) * f(1/t).
    pub fn reverse(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly::new(self.p, c)
    }

    /// Multiply by t^k.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0u64; k];
        c.extend_from_slice(&self.coeffs);
        Poly::new(self.p, c)
    }

    /// x^(p^d) mod self, computed by iterating the p-power map.
    fn frobenius_power(&self, d: usize) -> Poly {
        let mut h = Poly::x(self.p).rem(self);
        for _ in 0..d {
            h = h.pow_mod(self.p, self);
        }
        h
    }

    /// Rabin irreducibility test; constants and zero are not irreducible.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        if n == 1 {
            return true;
        }
        let f = self.make_monic();
        // x^(p^n) == x mod f
        let xn = f.frobenius_power(n);
        if xn != Poly::x(self.p).rem(&f) {
            return false;
        }
        for q in prime_divisors(n as u64) {
            let k = n / q as usize;
            let xk = f.frobenius_power(k);
            let g = xk.sub(&Poly::x(self.p)).gcd(&f);
            if !g.is_one() {
                return false;
            }
        }
        true
    }

    /// Monic irreducible factors with multiplicities, sorted by
    /// (degree, coefficient sequence). Requires self nonzero.
    pub fn factor(&self) -> Vec<(Poly, u32)> {
        assert!(!self.is_zero());
        let mut out: Vec<(Poly, u32)> = Vec::new();
        let mut f = self.make_monic();
        while f.deg() >= 1 {
            let fp = f.derivative();
            if fp.is_zero() {
                // f = g(t)^p in characteristic p with F_p coefficients
                let g = pth_root(&f);
                for (pi, m) in g.factor() {
                    merge_factor(&mut out, pi, m * self.p as u32);
                }
                break;
            }
            let w = f.divmod(&f.gcd(&fp)).0; // squarefree part of the separable kernel
            for pi in factor_squarefree(&w) {
                let m = f.multiplicity_of(&pi);
                merge_factor(&mut out, pi.clone(), m);
                for _ in 0..m {
                    f = f.divmod(&pi).0;
                }
            }
        }
        out.sort_by(|a, b| cmp_poly(&a.0, &b.0));
        out
    }
}

fn merge_factor(out: &mut Vec<(Poly, u32)>, pi: Poly, m: u32) {
    for entry in out.iter_mut() {
        if entry.0 == pi {
            entry.1 += m;
            return;
        }
    }
    out.push((pi, m));
}

/// Order polynomials by (degree, coefficients from high to low degree).
pub fn cmp_poly(a: &Poly, b: &Poly) -> std::cmp::Ordering {
    a.deg()
        .cmp(&b.deg())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// p-th root of a polynomial whose derivative vanishes (coefficients in F_p).
fn pth_root(f: &Poly) -> Poly {
    let p = f.modulus() as usize;
    let mut c = Vec::new();
    let mut i = 0;
    while i < f.coeffs().len() {
        c.push(f.coeff(i));
        i += p;
    }
    Poly::new(f.modulus(), c)
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Distinct-degree then equal-degree factorization of a squarefree monic input.
fn factor_squarefree(w: &Poly) -> Vec<Poly> {
    let p = w.modulus();
    let mut out = Vec::new();
    let mut rest = w.clone();
    let mut h = Poly::x(p);
    let mut d = 0usize;
    while rest.deg() >= 1 && 2 * (d + 1) <= rest.deg() as usize {
        d += 1;
        h = h.pow_mod(p, &rest);
        let g = h.sub(&Poly::x(p)).gcd(&rest);
        if g.deg() >= 1 {
            equal_degree_split(&g, d, &mut out);
            rest = rest.divmod(&g).0;
            h = h.rem(&rest);
        }
    }
    if rest.deg() >= 1 {
        out.push(rest.make_monic());
    }
    out
}

/// Cantor-Zassenhaus split of a product of distinct irreducibles of degree d.
/// Randomness comes from a deterministic splitmix so results are reproducible.
fn equal_degree_split(f: &Poly, d: usize, out: &mut Vec<Poly>) {
    let p = f.modulus();
    if f.deg() as usize == d {
        out.push(f.make_monic());
        return;
    }
    let mut seed = 0x9e3779b97f4a7c15u64 ^ (f.deg() as u64) ^ (d as u64) << 32;
    for coeff in f.coeffs() {
        seed = seed.wrapping_mul(0xbf58476d1ce4e5b9).wrapping_add(*coeff);
    }
    loop {
        let r = random_poly(p, f.deg() as usize - 1, &mut seed);
        if r.deg() < 1 {
            continue;
        }
        let g = if p == 2 {
            // trace map r + r^2 + r^4 + ... + r^(2^(d-1))
            let mut tr = r.clone();
            let mut cur = r.clone();
            for _ in 1..d {
                cur = cur.mul(&cur).rem(f);
                tr = tr.add(&cur);
            }
            tr.gcd(f)
        } else {
            let e: u128 = ((p as u128).pow(d as u32) - 1) / 2;
            let s = r.pow_mod_u128(e, f);
            s.sub(&Poly::one(p)).gcd(f)
        };
        if g.deg() >= 1 && g.deg() < f.deg() {
            equal_degree_split(&g, d, out);
            equal_degree_split(&f.divmod(&g).0, d, out);
            return;
        }
    }
}

fn random_poly(p: u64, max_deg: usize, seed: &mut u64) -> Poly {
    let mut c = Vec::with_capacity(max_deg + 1);
    for _ in 0..=max_deg {
        *seed = seed.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = *seed;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^= z >> 31;
        c.push(z % p);
    }
    Poly::new(p, c)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, c) => write!(f, "{c}t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly(F{}; {})", self.p, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_char2() {
        // (t+1)^2 = t^2+1 over F_2
        let a = Poly::new(2, vec![1, 1]);
        assert_eq!(a.mul(&a), Poly::new(2, vec![1, 0, 1]));
    }

    #[test]
    fn divmod_roundtrip() {
        let f = Poly::new(5, vec![3, 0, 1, 4, 2]);
        let d = Poly::new(5, vec![1, 2, 1]);
        let (q, r) = f.divmod(&d);
        assert_eq!(q.mul(&d).add(&r), f);
        assert!(r.deg() < d.deg());
    }

    #[test]
    fn gcd_and_inverse() {
        let p = 7;
        let a = Poly::new(p, vec![1, 1]); // t+1
        let b = Poly::new(p, vec![2, 1]); // t+2
        let m = a.mul(&b);
        assert_eq!(a.gcd(&m), a.make_monic());
        let c = Poly::new(p, vec![3, 1]);
        let inv = c.inverse_mod(&m).unwrap();
        assert!(c.mul(&inv).rem(&m).is_one());
        // 5t+3 = 5(t+2) shares the factor t+2 with m
        assert!(Poly::new(p, vec![3, 5]).inverse_mod(&m).is_none());
    }

    #[test]
    fn irreducibility() {
        // t^2+t+1 irreducible over F_2, t^2+1 = (t+1)^2 is not
        assert!(Poly::new(2, vec![1, 1, 1]).is_irreducible());
        assert!(!Poly::new(2, vec![1, 0, 1]).is_irreducible());
        assert!(Poly::new(3, vec![1, 0, 1]).is_irreducible()); // t^2+1 over F_3
        assert!(Poly::new(5, vec![2, 0, 1]).is_irreducible()); // t^2+2 over F_5
        assert!(!Poly::new(5, vec![1, 0, 1]).is_irreducible()); // (t+2)(t+3)
    }

    #[test]
    fn factorization() {
        let p = 2;
        // f = t^2 (t+1) (t^2+t+1)^2
        let f = Poly::x(p)
            .pow(2)
            .mul(&Poly::new(p, vec![1, 1]))
            .mul(&Poly::new(p, vec![1, 1, 1]).pow(2));
        let fac = f.factor();
        assert_eq!(
            fac,
            vec![
                (Poly::x(p), 2),
                (Poly::new(p, vec![1, 1]), 1),
                (Poly::new(p, vec![1, 1, 1]), 2),
            ]
        );
    }

    #[test]
    fn factor_inseparable_power() {
        // (t+1)^4 over F_2 has vanishing derivative twice over
        let f = Poly::new(2, vec![1, 1]).pow(4);
        assert_eq!(f.factor(), vec![(Poly::new(2, vec![1, 1]), 4)]);
    }

    #[test]
    fn factor_char3() {
        let f = Poly::new(3, vec![1, 0, 1]).mul(&Poly::x(3).pow(3)); // (t^2+1) t^3
        let fac = f.factor();
        assert_eq!(fac, vec![(Poly::x(3), 3), (Poly::new(3, vec![1, 0, 1]), 1)]);
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(2) && is_prime_u64(3) && is_prime_u64(101));
        assert!(!is_prime_u64(1) && !is_prime_u64(91) && !is_prime_u64(561));
    }
}
