//! Free-semigroup certificates for pairs of hyperbolic tree isometries:
//! orientation along disjoint axes, the brute-force word-collision
//! oracle, and the combined sign/certificate selection.

use crate::error::{Error, Result};
use crate::field::Valuation;
use crate::matrix::Mat2;
use crate::tree::{self, Vertex};
use std::collections::HashMap;

/// Where words are compared: modulo scalars (the isometry-level
/// statement) or as bare matrices.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CompareMode {
    Gl,
    Pgl,
}

/// Outcome of the truncated free-semigroup check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OracleOutcome {
    /// All positive words up to the depth evaluate to distinct elements.
    Ok { words_checked: u64 },
    /// The first colliding pair in length-then-lexicographic order,
    /// written over the letters "a" and "b".
    Collision(String, String),
}

impl OracleOutcome {
    pub fn is_ok(&self) -> bool {
        matches!(self, OracleOutcome::Ok { .. })
    }
}

/// Evaluates all nonempty positive words in {a, b} of length at most
/// depth and reports the first collision, scanning words in
/// length-then-lexicographic order with a < b.
pub fn oracle_free_semigroup(a: &Mat2, b: &Mat2, depth: u32, mode: CompareMode) -> OracleOutcome {
    assert!(depth >= 1, "oracle depth must be at least 1");
    let key = |m: &Mat2| match mode {
        CompareMode::Gl => m.clone(),
        CompareMode::Pgl => m.projective_canonical(),
    };
    let mut seen: HashMap<Mat2, String> = HashMap::new();
    let mut frontier: Vec<(String, Mat2)> = vec![(String::new(), Mat2::identity(a.kind()))];
    let mut words_checked = 0u64;
    for _ in 0..depth {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for (word, m) in &frontier {
            for (letter, gen) in [('a', a), ('b', b)] {
                let mut w = word.clone();
                w.push(letter);
                let value = m.mul(gen);
                words_checked += 1;
                match seen.entry(key(&value)) {
                    std::collections::hash_map::Entry::Occupied(prev) => {
                        return OracleOutcome::Collision(prev.get().clone(), w);
                    }
                    std::collections::hash_map::Entry::Vacant(slot) => {
                        slot.insert(w.clone());
                    }
                }
                next.push((w, value));
            }
        }
        frontier = next;
    }
    OracleOutcome::Ok { words_checked }
}

/// A freeness certificate for a pair of hyperbolic elements.
#[derive(Clone, Debug)]
pub enum Certificate {
    /// Disjoint axes: the bridge and translation data prove freeness
    /// outright; the oracle depth records the extra spot-check.
    Geometric {
        a1: Vertex,
        a2: Vertex,
        separation: u64,
        signs: (i8, i8),
        lengths: (u64, u64),
        oracle_depth: u32,
    },
    /// Intersecting axes: freeness verified by exhausting all positive
    /// words up to the recorded depth.
    Empirical {
        depth: u32,
        words_checked: u64,
        signs: (i8, i8),
    },
}

impl Certificate {
    pub fn signs(&self) -> (i8, i8) {
        match self {
            Certificate::Geometric { signs, .. } => *signs,
            Certificate::Empirical { signs, .. } => *signs,
        }
    }
}

/// Picks signs so that each element translates its bridge endpoint away
/// from the other axis: distance(g^e a1, a2) = separation + length(g),
/// and symmetrically for h. Both signs satisfy this (the bridge meets
/// each axis orthogonally), so the first pair in canonical order is
/// returned after verifying the stated distance conditions.
pub fn orient_for_disjoint_axes(g: &Mat2, h: &Mat2, v: &Valuation) -> Result<(i8, i8)> {
    let (a1, a2, sep) = tree::bridge(g, h, v)?;
    if sep == 0 {
        return Err(Error::IntersectingAxes);
    }
    orient_at_bridge(g, h, &a1, &a2, sep)
}

fn orient_at_bridge(g: &Mat2, h: &Mat2, a1: &Vertex, a2: &Vertex, sep: u64) -> Result<(i8, i8)> {
    let v = a1.valuation();
    let ell_g = tree::translation_length(g, v)?;
    let ell_h = tree::translation_length(h, v)?;
    let mut eps = None;
    for sign in [1i8, -1] {
        let moved = tree::act(&g.pow(sign as i64), a1)?;
        if tree::distance(&moved, a2) == sep + ell_g {
            eps = Some(sign);
            break;
        }
    }
    let mut delta = None;
    for sign in [1i8, -1] {
        let moved = tree::act(&h.pow(sign as i64), a2)?;
        if tree::distance(&moved, a1) == sep + ell_h {
            delta = Some(sign);
            break;
        }
    }
    match (eps, delta) {
        (Some(e), Some(d)) => Ok((e, d)),
        _ => Err(Error::Contradiction(
            "no translation direction satisfies the bridge distance condition".into(),
        )),
    }
}

/// Sign and certificate selection for a pair of hyperbolic elements
/// with distinct axes. Disjoint axes yield a geometric certificate
/// (additionally spot-checked by the oracle); intersecting axes fall
/// back to trying the four sign pairs against the oracle.
pub fn select_free_pair(
    g: &Mat2,
    h: &Mat2,
    v: &Valuation,
    depth: u32,
) -> Result<(i8, i8, Certificate)> {
    let (a1, a2, sep) = tree::bridge(g, h, v)?;
    if sep >= 1 {
        let (eps, delta) = orient_at_bridge(g, h, &a1, &a2, sep)?;
        let outcome = oracle_free_semigroup(
            &g.pow(eps as i64),
            &h.pow(delta as i64),
            depth,
            CompareMode::Pgl,
        );
        if let OracleOutcome::Collision(w1, w2) = outcome {
            return Err(Error::Contradiction(format!(
                "geometric certificate contradicted by oracle collision {w1} = {w2}"
            )));
        }
        let lengths = (
            tree::translation_length(g, v)?,
            tree::translation_length(h, v)?,
        );
        return Ok((
            eps,
            delta,
            Certificate::Geometric {
                a1,
                a2,
                separation: sep,
                signs: (eps, delta),
                lengths,
                oracle_depth: depth,
            },
        ));
    }
    for (eps, delta) in [(1i8, 1i8), (1, -1), (-1, 1), (-1, -1)] {
        if let OracleOutcome::Ok { words_checked } = oracle_free_semigroup(
            &g.pow(eps as i64),
            &h.pow(delta as i64),
            depth,
            CompareMode::Pgl,
        ) {
            return Ok((
                eps,
                delta,
                Certificate::Empirical {
                    depth,
                    words_checked,
                    signs: (eps, delta),
                },
            ));
        }
    }
    Err(Error::Contradiction(format!(
        "all four sign pairs collide at depth {depth}; upstream axis data must be wrong"
    )))
}
