//! Randomized object corpus shared by `selftest` and the acceptance suite.

use std::collections::BTreeMap;

use rand::Rng;

use crate::formal::{FormalObject, FormalSheaf, SemistablePiece, Splitting};
use crate::numerics::ChernPair;

#[derive(Debug, Clone, Copy)]
pub struct FuzzParams {
    pub max_pieces: usize,
    pub max_rank: u32,
    pub max_abs_degree: i64,
    pub max_torsion_length: i64,
    pub max_abs_shift: i64,
    /// Probability (out of 100) that a piece is torsion.
    pub torsion_percent: u32,
    /// Allow HNOnly sheaves (never at genus 0).
    pub allow_hn_only: bool,
    /// Attach stable flags to some higher-rank pieces.
    pub allow_stable: bool,
    /// Force every piece into cohomological degree 0.
    pub single_degree: bool,
}

impl Default for FuzzParams {
    fn default() -> Self {
        FuzzParams {
            max_pieces: 6,
            max_rank: 8,
            max_abs_degree: 50,
            max_torsion_length: 6,
            max_abs_shift: 3,
            torsion_percent: 20,
            allow_hn_only: true,
            allow_stable: true,
            single_degree: false,
        }
    }
}

/// A random formal object. At genus 0 every sheaf is Split, matching the
/// construction-time coercion of the DSL.
pub fn random_object<R: Rng>(rng: &mut R, genus: u32, params: &FuzzParams) -> FormalObject {
    let n_pieces = rng.gen_range(1..=params.max_pieces);
    let mut by_degree: BTreeMap<i64, Vec<SemistablePiece>> = BTreeMap::new();
    for _ in 0..n_pieces {
        let class = if rng.gen_range(0..100) < params.torsion_percent {
            ChernPair::torsion(rng.gen_range(1..=params.max_torsion_length)).unwrap()
        } else {
            ChernPair::bundle(
                rng.gen_range(1..=params.max_rank),
                rng.gen_range(-params.max_abs_degree..=params.max_abs_degree),
            )
            .unwrap()
        };
        let mut piece = SemistablePiece::new(class);
        if params.allow_stable && !class.is_torsion() && class.rank() > 1 && rng.gen_bool(0.2) {
            piece = piece.with_stable().unwrap();
        }
        let degree = if params.single_degree {
            0
        } else {
            rng.gen_range(-params.max_abs_shift..=params.max_abs_shift)
        };
        by_degree.entry(degree).or_default().push(piece);
    }
    let graded = by_degree
        .into_iter()
        .map(|(d, pieces)| {
            let splitting = if genus != 0 && params.allow_hn_only && rng.gen_bool(0.25) {
                Splitting::HNOnly
            } else {
                Splitting::Split
            };
            (d, FormalSheaf::new(pieces, splitting).unwrap())
        })
        .collect();
    FormalObject::new(graded).unwrap()
}

/// Semistability decided from raw rank/degree data only, independently of
/// the classification path: reduce every slope to lowest terms by hand and
/// count distinct values (torsion pieces contribute a dedicated marker).
pub fn independent_is_semistable(o: &FormalObject) -> bool {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let mut slopes: Vec<Option<(i64, i64)>> = Vec::new();
    for p in o.pieces() {
        let s = if p.class.is_torsion() {
            None
        } else {
            let r = p.class.rank() as i64;
            let d = p.class.degree();
            let g = gcd(d, r).max(1);
            Some((d / g, r / g))
        };
        if !slopes.contains(&s) {
            slopes.push(s);
        }
    }
    slopes.len() == 1
}
