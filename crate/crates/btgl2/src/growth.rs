//! Exact Cayley-ball enumeration, growth-rate estimates, the free-pair
//! growth lower bound, and finite-index subgroup generator extraction
//! via reduction modulo an integer.

use crate::error::{Error, Result};
use crate::field::FieldKind;
use crate::matrix::{GeneratorSet, GroupWord, Mat2};
use crate::pingpong::CompareMode;
use std::collections::HashMap;

/// Enumeration limits. The ball cap can be overridden through the
/// BTG_MAX_BALL environment variable at the CLI layer.
#[derive(Clone, Copy, Debug)]
pub struct EnumCaps {
    pub max_radius: u64,
    pub max_elements: usize,
}

impl Default for EnumCaps {
    fn default() -> Self {
        EnumCaps {
            max_radius: 10,
            max_elements: 10_000_000,
        }
    }
}

impl EnumCaps {
    /// Same element cap, custom radius allowance.
    pub fn with_radius(radius: u64) -> EnumCaps {
        EnumCaps {
            max_radius: radius,
            ..EnumCaps::default()
        }
    }
}

/// Exact ball sizes and display-precision rate estimates.
#[derive(Clone, Debug)]
pub struct BallStats {
    pub mode: CompareMode,
    /// sizes[n] is the number of elements of word length at most n.
    pub sizes: Vec<u64>,
    /// rate_estimates[n] = sizes[n]^(1/n) at six decimal places, for
    /// n >= 1; index 0 is None.
    pub rate_estimates: Vec<Option<String>>,
}

fn rate_string(size: u64, n: usize) -> String {
    format!("{:.6}", (size as f64).powf(1.0 / n as f64))
}

/// The ball of radius N in the Cayley graph over S and inverses, with
/// exact canonical-form deduplication.
pub fn ball_sizes(
    set: &GeneratorSet,
    radius: u64,
    mode: CompareMode,
    caps: &EnumCaps,
) -> Result<BallStats> {
    if radius > caps.max_radius {
        return Err(Error::ResourceCap(format!(
            "radius {radius} exceeds the cap {}",
            caps.max_radius
        )));
    }
    let canon = |m: &Mat2| match mode {
        CompareMode::Gl => m.clone(),
        CompareMode::Pgl => m.projective_canonical(),
    };
    let letters = alphabet(set);
    let identity = canon(&Mat2::identity(set.kind()));
    let mut seen = HashMap::new();
    seen.insert(identity.clone(), ());
    let mut frontier = vec![identity];
    let mut sizes = vec![1u64];
    for _ in 0..radius {
        let mut next = Vec::new();
        for m in &frontier {
            for (_, gen) in &letters {
                let value = canon(&m.mul(gen));
                if seen.len() >= caps.max_elements {
                    return Err(Error::ResourceCap(format!(
                        "ball exceeded {} elements",
                        caps.max_elements
                    )));
                }
                if seen.insert(value.clone(), ()).is_none() {
                    next.push(value);
                }
            }
        }
        sizes.push(seen.len() as u64);
        frontier = next;
    }
    let rate_estimates = sizes
        .iter()
        .enumerate()
        .map(|(n, &s)| if n == 0 { None } else { Some(rate_string(s, n)) })
        .collect();
    Ok(BallStats {
        mode,
        sizes,
        rate_estimates,
    })
}

/// Ball elements with their first (shortest, earliest in scan order)
/// words and the cumulative count per radius. GL-exact deduplication.
pub struct BallElements {
    /// Discovery order: identity first, then radius 1, 2, ...
    pub elements: Vec<(Mat2, GroupWord)>,
    /// cumulative[r] = number of elements of word length <= r.
    pub cumulative: Vec<usize>,
}

impl BallElements {
    /// Word length of the element at the given discovery index.
    pub fn radius_of(&self, index: usize) -> u64 {
        self.cumulative
            .iter()
            .position(|&c| index < c)
            .expect("index within ball") as u64
    }
}

/// The generator alphabet in scan order: s0, s0^-1, s1, s1^-1, ...
fn alphabet(set: &GeneratorSet) -> Vec<((usize, i8), Mat2)> {
    let mut out = Vec::with_capacity(set.len() * 2);
    for i in 0..set.len() {
        out.push(((i, 1), set.mat(i).clone()));
        out.push(((i, -1), set.mat(i).inv()));
    }
    out
}

pub fn ball_elements(set: &GeneratorSet, radius: u64, caps: &EnumCaps) -> Result<BallElements> {
    if radius > caps.max_radius {
        return Err(Error::ResourceCap(format!(
            "radius {radius} exceeds the cap {}",
            caps.max_radius
        )));
    }
    let letters = alphabet(set);
    let identity = Mat2::identity(set.kind());
    let mut index: HashMap<Mat2, usize> = HashMap::new();
    index.insert(identity.clone(), 0);
    let mut elements = vec![(identity, GroupWord::empty())];
    let mut cumulative = vec![1usize];
    let mut frontier = vec![0usize];
    for _ in 0..radius {
        let mut next = Vec::new();
        for &i in &frontier {
            let (m, w) = elements[i].clone();
            for (letter, gen) in &letters {
                if elements.len() >= caps.max_elements {
                    return Err(Error::ResourceCap(format!(
                        "ball exceeded {} elements",
                        caps.max_elements
                    )));
                }
                let value = m.mul(gen);
                if !index.contains_key(&value) {
                    let mut word = w.clone();
                    word.0.push(*letter);
                    index.insert(value.clone(), elements.len());
                    next.push(elements.len());
                    elements.push((value, word));
                }
            }
        }
        cumulative.push(elements.len());
        frontier = next;
    }
    Ok(BallElements {
        elements,
        cumulative,
    })
}

/// 2^(1/m): the growth-rate lower bound contributed by a free pair of
/// words of maximal length m.
pub fn lower_bound_from_max_length(m: usize) -> f64 {
    2f64.powf(1.0 / m as f64)
}

/// Checks the growth consequence of a certified free pair of words of
/// maximal length m: the ball of radius k*m contains at least
/// 2^(k+1) - 2 elements for each k up to k_max, witnessed by counting
/// the distinct values of the positive words in the pair.
pub fn verify_uf_inequality(
    set: &GeneratorSet,
    pair: (&Mat2, &Mat2),
    max_len: usize,
    k_max: u32,
    caps: &EnumCaps,
) -> Result<bool> {
    let (a, b) = pair;
    for k in 1..=k_max {
        let needed = 2u64.pow(k + 1) - 2;
        // distinct positive words of length <= k in the pair
        let mut values = std::collections::HashSet::new();
        let mut frontier = vec![Mat2::identity(set.kind())];
        for _ in 0..k {
            let mut next = Vec::new();
            for m in &frontier {
                for gen in [a, b] {
                    let value = m.mul(gen);
                    values.insert(value.projective_canonical());
                    next.push(value);
                }
            }
            frontier = next;
        }
        if (values.len() as u64) < needed {
            return Ok(false);
        }
        // and the ambient ball of radius k * m is at least that large
        let radius = k as u64 * max_len as u64;
        let stats = ball_sizes(set, radius, CompareMode::Gl, caps)?;
        if stats.sizes[radius as usize] < needed {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A 2x2 matrix over Z/q.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ResidueMat {
    pub e: [u64; 4],
    pub q: u64,
}

impl ResidueMat {
    pub fn identity(q: u64) -> ResidueMat {
        ResidueMat {
            e: [1 % q, 0, 0, 1 % q],
            q,
        }
    }

    pub fn mul(&self, o: &ResidueMat) -> ResidueMat {
        let qq = self.q as u128;
        let a = |i: usize| self.e[i] as u128;
        let b = |i: usize| o.e[i] as u128;
        ResidueMat {
            e: [
                ((a(0) * b(0) + a(1) * b(2)) % qq) as u64,
                ((a(0) * b(1) + a(1) * b(3)) % qq) as u64,
                ((a(2) * b(0) + a(3) * b(2)) % qq) as u64,
                ((a(2) * b(1) + a(3) * b(3)) % qq) as u64,
            ],
            q: self.q,
        }
    }

    pub fn det(&self) -> u64 {
        let q = self.q as i128;
        let d = (self.e[0] as i128 * self.e[3] as i128 - self.e[1] as i128 * self.e[2] as i128)
            .rem_euclid(q);
        d as u64
    }

    pub fn inv(&self) -> Result<ResidueMat> {
        let det_inv = mod_inv_u64(self.det(), self.q).ok_or_else(|| {
            Error::Invalid(format!("determinant not invertible mod {}", self.q))
        })?;
        let q = self.q;
        let neg = |x: u64| (q - x % q) % q;
        let scale = |x: u64| ((x as u128 * det_inv as u128) % q as u128) as u64;
        Ok(ResidueMat {
            e: [
                scale(self.e[3]),
                scale(neg(self.e[1])),
                scale(neg(self.e[2])),
                scale(self.e[0]),
            ],
            q,
        })
    }

    pub fn is_scalar(&self) -> bool {
        self.e[1] == 0 && self.e[2] == 0 && self.e[0] == self.e[3]
    }

    pub fn is_identity(&self) -> bool {
        *self == ResidueMat::identity(self.q)
    }
}

fn mod_inv_u64(a: u64, q: u64) -> Option<u64> {
    let (mut r0, mut r1) = (q as i128, (a % q) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (t0, t1) = (t1, t0 - quot * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(q as i128) as u64)
}

/// Reduces a rational-entry matrix modulo q; errors if a denominator or
/// the determinant is not invertible mod q.
pub fn reduce_mod(m: &Mat2, q: u64) -> Result<ResidueMat> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    if m.kind() != FieldKind::Rational {
        return Err(Error::FieldMismatch(
            "reduction mod q requires rational entries".into(),
        ));
    }
    let qb = BigInt::from(q);
    let mut e = [0u64; 4];
    for (i, entry) in m.entries().into_iter().enumerate() {
        let r = entry.as_rational().unwrap();
        let den = r.denom().mod_floor(&qb);
        let den_small = den.to_u64().unwrap();
        let den_inv = mod_inv_u64(den_small, q).ok_or_else(|| {
            Error::Invalid(format!("entry denominator {} not coprime to {q}", r.denom()))
        })?;
        let num = r.numer().mod_floor(&qb).to_u64().unwrap();
        e[i] = ((num as u128 * den_inv as u128) % q as u128) as u64;
    }
    let rm = ResidueMat { e, q };
    if mod_inv_u64(rm.det(), q).is_none() {
        return Err(Error::Invalid(format!(
            "determinant not invertible mod {q}"
        )));
    }
    Ok(rm)
}

/// The target subgroup of the finite image.
#[derive(Clone, Debug)]
pub enum TargetSubgroup {
    /// Elements whose image is a scalar matrix; the kernel of the map
    /// to the projective image group.
    Kernel,
    /// An explicit list of residue matrices forming a subgroup.
    Custom(Vec<ResidueMat>),
}

/// Reduction modulus and target for subgroup generator extraction.
#[derive(Clone, Debug)]
pub struct FiniteImageSpec {
    pub modulus: u64,
    pub target: TargetSubgroup,
}

/// Output of the finite-index generator extraction.
pub struct SubgroupGenReport {
    pub modulus: u64,
    pub image_order: usize,
    pub subgroup_order: usize,
    pub index: usize,
    pub max_word_length: u64,
    /// Deduplicated by evaluated element, identity omitted; each entry
    /// carries the first word found for the element.
    pub generators: Vec<(GroupWord, Mat2)>,
}

const IMAGE_CAP: usize = 1_000_000;

/// Enumerates the finite image of the generator set modulo q.
fn image_closure(set: &GeneratorSet, q: u64) -> Result<Vec<ResidueMat>> {
    let mut gens = Vec::new();
    for m in set.mats() {
        let r = reduce_mod(m, q)?;
        gens.push(r);
        gens.push(r.inv()?);
    }
    let mut seen = std::collections::HashSet::new();
    let id = ResidueMat::identity(q);
    seen.insert(id);
    let mut order = vec![id];
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in &frontier {
            for g in &gens {
                let value = m.mul(g);
                if seen.insert(value) {
                    if seen.len() > IMAGE_CAP {
                        return Err(Error::ResourceCap(format!(
                            "image group mod {q} exceeded {IMAGE_CAP} elements"
                        )));
                    }
                    order.push(value);
                    next.push(value);
                }
            }
        }
        frontier = next;
    }
    Ok(order)
}

fn validate_subgroup(elements: &[ResidueMat], q: u64) -> Result<()> {
    let set: std::collections::HashSet<_> = elements.iter().copied().collect();
    if !set.contains(&ResidueMat::identity(q)) {
        return Err(Error::Invalid("custom subgroup misses the identity".into()));
    }
    for a in elements {
        if a.q != q {
            return Err(Error::Invalid("custom subgroup modulus mismatch".into()));
        }
        if !set.contains(&a.inv()?) {
            return Err(Error::Invalid(
                "custom subgroup not closed under inversion".into(),
            ));
        }
        for b in elements {
            if !set.contains(&a.mul(b)) {
                return Err(Error::Invalid(
                    "custom subgroup not closed under multiplication".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Words of length at most 2d - 1 landing in the target subgroup, where
/// d is the index of the target in the finite image; these generate the
/// preimage subgroup.
pub fn subgroup_generators(
    set: &GeneratorSet,
    spec: &FiniteImageSpec,
    caps: &EnumCaps,
) -> Result<SubgroupGenReport> {
    let q = spec.modulus;
    if q < 2 {
        return Err(Error::Invalid("modulus must be at least 2".into()));
    }
    let image = image_closure(set, q)?;
    let in_target: Box<dyn Fn(&ResidueMat) -> bool> = match &spec.target {
        TargetSubgroup::Kernel => Box::new(|m: &ResidueMat| m.is_scalar()),
        TargetSubgroup::Custom(list) => {
            validate_subgroup(list, q)?;
            let set: std::collections::HashSet<_> = list.iter().copied().collect();
            Box::new(move |m: &ResidueMat| set.contains(m))
        }
    };
    let subgroup_order = image.iter().filter(|m| in_target(m)).count();
    if subgroup_order == 0 || image.len() % subgroup_order != 0 {
        return Err(Error::Invalid(
            "target does not cut out a subgroup of the image".into(),
        ));
    }
    let index = image.len() / subgroup_order;
    let max_word_length = 2 * index as u64 - 1;
    if max_word_length > caps.max_radius {
        return Err(Error::ResourceCap(format!(
            "index {index} needs words of length {max_word_length}, beyond the radius cap {}",
            caps.max_radius
        )));
    }
    let ball = ball_elements(set, max_word_length, caps)?;
    let mut generators = Vec::new();
    for (m, w) in &ball.elements {
        if w.is_empty() {
            continue;
        }
        if in_target(&reduce_mod(m, q)?) {
            generators.push((w.clone(), m.clone()));
        }
    }
    Ok(SubgroupGenReport {
        modulus: q,
        image_order: image.len(),
        subgroup_order,
        index,
        max_word_length,
        generators,
    })
}
