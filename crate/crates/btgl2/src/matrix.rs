//! Exact 2x2 matrix group algebra: products, inverses, word evaluation,
//! projective canonical forms, and trace-based order/ellipticity tests.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldKind};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// An invertible 2x2 matrix with entries in one field, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat2 {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub d: FieldElement,
}

impl Mat2 {
    pub fn new(
        a: FieldElement,
        b: FieldElement,
        c: FieldElement,
        d: FieldElement,
    ) -> Result<Mat2> {
        let kind = a.kind();
        for e in [&b, &c, &d] {
            if e.kind() != kind {
                return Err(Error::FieldMismatch(format!(
                    "matrix entries mix {} and {}",
                    kind,
                    e.kind()
                )));
            }
        }
        let m = Mat2 { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(m)
    }

    pub fn from_i64(rows: [[i64; 2]; 2]) -> Result<Mat2> {
        Mat2::new(
            FieldElement::from_int(rows[0][0]),
            FieldElement::from_int(rows[0][1]),
            FieldElement::from_int(rows[1][0]),
            FieldElement::from_int(rows[1][1]),
        )
    }

    pub fn identity(kind: FieldKind) -> Mat2 {
        Mat2 {
            a: FieldElement::one(kind),
            b: FieldElement::zero(kind),
            c: FieldElement::zero(kind),
            d: FieldElement::one(kind),
        }
    }

    pub fn kind(&self) -> FieldKind {
        self.a.kind()
    }

    pub fn entries(&self) -> [&FieldElement; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> FieldElement {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    pub fn trace(&self) -> FieldElement {
        self.a.add(&self.d)
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        Mat2 {
            a: self.a.mul(&other.a).add(&self.b.mul(&other.c)),
            b: self.a.mul(&other.b).add(&self.b.mul(&other.d)),
            c: self.c.mul(&other.a).add(&self.d.mul(&other.c)),
            d: self.c.mul(&other.b).add(&self.d.mul(&other.d)),
        }
    }

    /// Inverse via adjugate over the determinant.
    pub fn inv(&self) -> Mat2 {
        let det_inv = self.det().inv();
        Mat2 {
            a: self.d.mul(&det_inv),
            b: self.b.neg().mul(&det_inv),
            c: self.c.neg().mul(&det_inv),
            d: self.a.mul(&det_inv),
        }
    }

    pub fn scale(&self, s: &FieldElement) -> Mat2 {
        Mat2 {
            a: self.a.mul(s),
            b: self.b.mul(s),
            c: self.c.mul(s),
            d: self.d.mul(s),
        }
    }

    pub fn neg(&self) -> Mat2 {
        self.scale(&FieldElement::one(self.kind()).neg())
    }

    pub fn commutator(&self, other: &Mat2) -> Mat2 {
        self.mul(other).mul(&self.inv()).mul(&other.inv())
    }

    pub fn conjugate_by(&self, s: &Mat2) -> Mat2 {
        s.mul(self).mul(&s.inv())
    }

    pub fn pow(&self, e: i64) -> Mat2 {
        if e == 0 {
            return Mat2::identity(self.kind());
        }
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = Mat2::identity(self.kind());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity(self.kind())
    }

    pub fn is_scalar(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    /// Scales so the first nonzero entry in row-major order is 1; the
    /// result is a canonical representative of the image in PGL(2).
    pub fn projective_canonical(&self) -> Mat2 {
        let pivot = self
            .entries()
            .into_iter()
            .find(|e| !e.is_zero())
            .expect("invertible matrix has a nonzero entry");
        self.scale(&pivot.inv())
    }

    fn rational_entries(&self) -> Result<(BigRational, BigRational)> {
        match self.kind() {
            FieldKind::Rational => Ok((
                self.det().as_rational().unwrap().clone(),
                self.trace().as_rational().unwrap().clone(),
            )),
            k => Err(Error::FieldMismatch(format!(
                "order/ellipticity tests require rational entries, got {k}"
            ))),
        }
    }

    /// True when some power of the matrix is scalar, i.e. the element
    /// has finite order modulo scalars. For rational entries this is a
    /// pure trace/determinant test; the repeated-eigenvalue boundary
    /// (trace^2 = 4 det) is finite only for scalar matrices.
    pub fn is_finite_order(&self) -> Result<bool> {
        let (det, trace) = self.rational_entries()?;
        if self.is_scalar() {
            return Ok(true);
        }
        let one = BigRational::one();
        if det == one {
            let t = trace;
            return Ok(t == -BigRational::one() || t.is_zero() || t == one);
        }
        if det == -one {
            return Ok(trace.is_zero());
        }
        Ok(false)
    }

    /// Elliptic as a Moebius transformation: trace^2 < 4 det. Requires
    /// rational entries and positive determinant.
    pub fn is_elliptic_mobius(&self) -> Result<bool> {
        let (det, trace) = self.rational_entries()?;
        if !det.is_positive() {
            return Err(Error::Invalid(
                "ellipticity test requires positive determinant".into(),
            ));
        }
        Ok(&trace * &trace < BigRational::from_integer(4.into()) * det)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// An ordered finite generating set with symbolic names.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    mats: Vec<Mat2>,
    names: Vec<String>,
}

impl GeneratorSet {
    pub fn new(mats: Vec<Mat2>, names: Option<Vec<String>>) -> Result<GeneratorSet> {
        if mats.is_empty() {
            return Err(Error::Invalid("empty generating set".into()));
        }
        let kind = mats[0].kind();
        for m in &mats {
            if m.kind() != kind {
                return Err(Error::FieldMismatch(
                    "generators over different fields".into(),
                ));
            }
        }
        let names = match names {
            Some(names) => {
                if names.len() != mats.len() {
                    return Err(Error::Invalid(format!(
                        "{} names for {} generators",
                        names.len(),
                        mats.len()
                    )));
                }
                let mut seen = std::collections::HashSet::new();
                for n in &names {
                    if n.is_empty() || n.contains(['*', '^', ' ']) {
                        return Err(Error::Invalid(format!("bad generator name {n:?}")));
                    }
                    if !seen.insert(n.clone()) {
                        return Err(Error::Invalid(format!("duplicate generator name {n:?}")));
                    }
                }
                names
            }
            None => (0..mats.len()).map(|i| format!("g{i}")).collect(),
        };
        Ok(GeneratorSet { mats, names })
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn kind(&self) -> FieldKind {
        self.mats[0].kind()
    }

    pub fn mat(&self, i: usize) -> &Mat2 {
        &self.mats[i]
    }

    pub fn mats(&self) -> &[Mat2] {
        &self.mats
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A word over the generators with exponents +1 or -1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupWord(pub Vec<(usize, i8)>);

impl GroupWord {
    pub fn empty() -> GroupWord {
        GroupWord(Vec::new())
    }

    pub fn single(i: usize) -> GroupWord {
        GroupWord(vec![(i, 1)])
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn validate(&self, set: &GeneratorSet) -> Result<()> {
        for &(i, e) in &self.0 {
            if i >= set.len() {
                return Err(Error::Invalid(format!("letter index {i} out of range")));
            }
            if e != 1 && e != -1 {
                return Err(Error::Invalid(format!("exponent {e} not in {{-1, +1}}")));
            }
        }
        Ok(())
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        GroupWord(letters)
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|&(i, e)| (i, -e)).collect())
    }

    /// The word for the wrapped element raised to the given sign.
    pub fn signed(&self, sign: i8) -> GroupWord {
        if sign >= 0 {
            self.clone()
        } else {
            self.inverse()
        }
    }

    /// Left-to-right product; the empty word evaluates to the identity.
    pub fn evaluate(&self, set: &GeneratorSet) -> Result<Mat2> {
        self.validate(set)?;
        let mut acc = Mat2::identity(set.kind());
        for &(i, e) in &self.0 {
            let m = if e == 1 {
                set.mat(i).clone()
            } else {
                set.mat(i).inv()
            };
            acc = acc.mul(&m);
        }
        Ok(acc)
    }

    pub fn display(&self, set: &GeneratorSet) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&(i, e)| {
                if e == 1 {
                    set.name(i).to_string()
                } else {
                    format!("{}^-1", set.name(i))
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Parses words like "a*t^-1*a" (also accepts whitespace separators).
    pub fn parse(text: &str, set: &GeneratorSet) -> Result<GroupWord> {
        let mut letters = Vec::new();
        for token in text.split(['*', ' ']).filter(|t| !t.is_empty()) {
            if token == "1" && letters.is_empty() && text.trim() == "1" {
                return Ok(GroupWord::empty());
            }
            let (name, exp) = match token.strip_suffix("^-1") {
                Some(base) => (base, -1),
                None => match token.strip_suffix("^1") {
                    Some(base) => (base, 1),
                    None => (token, 1),
                },
            };
            let i = set
                .index_of(name)
                .ok_or_else(|| Error::Parse(format!("unknown generator {name:?} in word")))?;
            letters.push((i, exp));
        }
        Ok(GroupWord(letters))
    }
}

/// Word evaluation with the set's element order; convenience free function.
pub fn evaluate_word(set: &GeneratorSet, word: &GroupWord) -> Result<Mat2> {
    word.evaluate(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: [[i64; 2]; 2]) -> Mat2 {
        Mat2::from_i64(rows).unwrap()
    }

    /// Independent 2x2 integer product used as the oracle for the
    /// matrix examples below.
    fn imul(x: [[i64; 2]; 2], y: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
        [
            [
                x[0][0] * y[0][0] + x[0][1] * y[1][0],
                x[0][0] * y[0][1] + x[0][1] * y[1][1],
            ],
            [
                x[1][0] * y[0][0] + x[1][1] * y[1][0],
                x[1][0] * y[0][1] + x[1][1] * y[1][1],
            ],
        ]
    }

    #[test]
    fn commutator_of_elementary_pair() {
        let x = mat([[1, 1], [0, 1]]);
        let y = mat([[1, 0], [1, 1]]);
        // oracle: x y x^{-1} y^{-1} computed with plain integer products
        let expect = imul(
            imul(imul([[1, 1], [0, 1]], [[1, 0], [1, 1]]), [[1, -1], [0, 1]]),
            [[1, 0], [-1, 1]],
        );
        assert_eq!(x.commutator(&y), mat(expect));
        assert_eq!(mat(expect), mat([[3, -1], [1, 0]]));
        assert_eq!(x.commutator(&y).trace(), FieldElement::from_int(3));
        // the conjugate x y x^{-1} is the parabolic with trace 2
        assert_eq!(y.conjugate_by(&x), mat([[2, -1], [1, 0]]));
        assert_eq!(y.conjugate_by(&x).trace(), FieldElement::from_int(2));
    }

    #[test]
    fn inverse_and_trace() {
        let m = mat([[2, 0], [0, 1]]);
        let mi = m.inv();
        assert_eq!(mi.a, FieldElement::from_ratio(1, 2));
        assert!(m.mul(&mi).is_identity());
        assert_eq!(mat([[0, -1], [1, 0]]).trace(), FieldElement::from_int(0));
    }

    #[test]
    fn word_evaluation() {
        let s = GeneratorSet::new(
            vec![mat([[2, 0], [0, 1]]), mat([[1, 1], [0, 1]])],
            Some(vec!["t".into(), "a".into()]),
        )
        .unwrap();
        assert!(GroupWord::empty().evaluate(&s).unwrap().is_identity());
        assert!(GroupWord(vec![(0, 1), (0, -1)])
            .evaluate(&s)
            .unwrap()
            .is_identity());
        let w = GroupWord(vec![(1, 1), (0, 1), (1, -1)]);
        assert_eq!(w.evaluate(&s).unwrap(), mat([[2, -1], [0, 1]]));
        assert_eq!(w.display(&s), "a*t*a^-1");
        assert_eq!(GroupWord::parse("a*t*a^-1", &s).unwrap(), w);
    }

    #[test]
    fn projective_canonical_examples() {
        assert!(mat([[2, 0], [0, 2]]).projective_canonical().is_identity());
        assert_eq!(
            mat([[0, -3], [3, 0]]).projective_canonical(),
            mat([[0, 1], [-1, 0]])
        );
        let m = mat([[4, 2], [0, 2]]).projective_canonical();
        assert_eq!(m.b, FieldElement::from_ratio(1, 2));
        assert_eq!(m.d, FieldElement::from_ratio(1, 2));
    }

    #[test]
    fn projective_canonical_kills_scalars() {
        let m = mat([[3, 5], [-1, 9]]);
        for s in [-7i64, 2, 3, 11] {
            let scaled = m.scale(&FieldElement::from_int(s));
            assert_eq!(scaled.projective_canonical(), m.projective_canonical());
        }
    }

    #[test]
    fn finite_order_examples() {
        assert!(mat([[0, -1], [1, 0]]).is_finite_order().unwrap());
        assert!(!mat([[1, 1], [0, 1]]).is_finite_order().unwrap());
        let m = Mat2::new(
            FieldElement::from_int(2),
            FieldElement::from_int(0),
            FieldElement::from_int(0),
            FieldElement::from_ratio(1, 2),
        )
        .unwrap();
        assert!(!m.is_finite_order().unwrap());
    }

    #[test]
    fn finite_order_matches_power_oracle() {
        // all integer matrices with entries in -2..=2 and det +-1:
        // compare against directly powering until a scalar appears
        let one = FieldElement::from_int(1);
        for a in -2..=2i64 {
            for b in -2..=2i64 {
                for c in -2..=2i64 {
                    for d in -2..=2i64 {
                        let det = a * d - b * c;
                        if det != 1 && det != -1 {
                            continue;
                        }
                        let m = mat([[a, b], [c, d]]);
                        let mut pow = m.clone();
                        let mut oracle = false;
                        for _ in 1..=12 {
                            if pow.is_scalar() {
                                oracle = true;
                                break;
                            }
                            pow = pow.mul(&m);
                        }
                        assert_eq!(
                            m.is_finite_order().unwrap(),
                            oracle,
                            "disagreement at [[{a},{b}],[{c},{d}]]"
                        );
                        let _ = one;
                    }
                }
            }
        }
    }

    #[test]
    fn ellipticity_examples() {
        assert!(mat([[0, -1], [1, 0]]).is_elliptic_mobius().unwrap());
        let m = Mat2::new(
            FieldElement::from_int(2),
            FieldElement::from_int(0),
            FieldElement::from_int(0),
            FieldElement::from_ratio(1, 2),
        )
        .unwrap();
        assert!(!m.is_elliptic_mobius().unwrap());
        assert!(!mat([[1, 1], [0, 1]]).is_elliptic_mobius().unwrap());
    }

    #[test]
    fn det_and_trace_identities() {
        let x = mat([[3, 5], [-1, 9]]);
        let y = mat([[1, -2], [4, 1]]);
        assert_eq!(x.mul(&y).det(), x.det().mul(&y.det()));
        assert_eq!(y.conjugate_by(&x).trace(), y.trace());
    }
}
