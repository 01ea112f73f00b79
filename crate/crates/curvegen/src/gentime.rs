//! Generating-time upper bounds.
//!
//! No attempt is made to materialize the build sets themselves; the
//! calculus is a static table of structural patterns plus the composition
//! law, and every bound comes with a derivation trace. When several
//! patterns match, the smallest bound is reported.

use serde::Serialize;
use thiserror::Error;

use crate::engine::{classical_status, Decision, Verdict};
use crate::formal::{FormalObject, SemistablePiece, Support};
use crate::numerics::{Curve, ExtendedSlope, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GentimeError {
    #[error("verdict does not correspond to the given object and curve")]
    VerdictMismatch,
}

/// Generating time of the optimal four-term line-bundle generator.
pub const FAST_GENERATOR_TIME: u64 = 1;

/// One step of a derivation trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivationStep {
    pub rule: String,
    pub citation: String,
    pub value: u64,
}

impl DerivationStep {
    fn new(rule: &str, citation: &str, value: u64) -> Self {
        DerivationStep {
            rule: rule.into(),
            citation: citation.into(),
            value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value")]
pub enum BoundValue {
    Finite(u64),
    Unbounded,
    /// Classical generator with no table entry: an upper bound exists in
    /// principle but none is known here.
    UnboundedWithNote,
}

/// An upper bound on the generating time, with its derivation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenTimeBound {
    pub value: BoundValue,
    pub derivation: Vec<DerivationStep>,
}

impl GenTimeBound {
    pub fn finite(&self) -> Option<u64> {
        match self.value {
            BoundValue::Finite(v) => Some(v),
            _ => None,
        }
    }
}

/// Composition law: an object built from F in one cone-step budget a, with
/// F built from G in b steps, lies within b * (a + 1) - 1 of G.
pub fn compose_bound(a: u64, b: u64) -> u64 {
    assert!(b >= 1, "build depth must be at least 1");
    b * (a + 1) - 1
}

/// Sufficient criterion for global generation: slope strictly larger than
/// 2g - 1. False only means not guaranteed by this criterion.
pub fn globally_generated_check(p: &SemistablePiece, c: &Curve) -> bool {
    match p.slope() {
        ExtendedSlope::Infinity => false,
        ExtendedSlope::Finite(q) => q > Rational::from_integer(2 * c.genus() as i64 - 1),
    }
}

struct Candidate {
    value: u64,
    derivation: Vec<DerivationStep>,
}

fn line_plus_skyscraper_bound(g: u64) -> Vec<DerivationStep> {
    vec![
        DerivationStep::new(
            "fast-four-term-generator",
            "thm:orlov_optimal_generator",
            FAST_GENERATOR_TIME,
        ),
        DerivationStep::new(
            "line-bundle-ladder",
            "lem:line_plus_skyscraper_generating_time",
            24 * g + 1,
        ),
        DerivationStep::new(
            "compose",
            "cor:generating_time_bound",
            compose_bound(FAST_GENERATOR_TIME, 24 * g + 1),
        ),
    ]
}

fn torsion_plus_bundle_trace(g: u64) -> Vec<DerivationStep> {
    let mut steps = line_plus_skyscraper_bound(g);
    steps.push(DerivationStep::new(
        "skyscraper-from-torsion",
        "lem:torsion_plus_bundle_generating_time",
        2,
    ));
    steps.push(DerivationStep::new(
        "compose",
        "cor:generating_time_bound",
        compose_bound(48 * g + 1, 2),
    ));
    steps
}

fn wide_gap_trace(g: u64) -> Vec<DerivationStep> {
    let mut steps = torsion_plus_bundle_trace(g);
    steps.push(DerivationStep::new(
        "torsion-cokernel",
        "lem:sufficiently_unstable_generating_time",
        2,
    ));
    steps.push(DerivationStep::new(
        "compose",
        "cor:generating_time_bound",
        compose_bound(96 * g + 3, 2),
    ));
    steps
}

/// Matches a trivial line bundle plus a length-1 skyscraper, pooled
/// across degrees: every bundle piece must have class (1, 0) and the
/// torsion pieces must have total length 1.
fn is_line_plus_skyscraper(o: &FormalObject) -> bool {
    let mut torsion_length: i64 = 0;
    let mut has_trivial_bundle = false;
    for p in o.pieces() {
        if let Some(len) = p.class.length() {
            torsion_length += len * p.multiplicity as i64;
        } else if p.class.rank() == 1 && p.class.degree() == 0 {
            has_trivial_bundle = true;
        } else {
            return false;
        }
    }
    has_trivial_bundle && torsion_length == 1
}

/// Pooled Split slope gap strictly wider than 2g.
fn has_very_wide_split_gap(o: &FormalObject, g: u64) -> bool {
    let mut slopes: Vec<Rational> = Vec::new();
    for sheaf in o.graded().values() {
        if !sheaf.is_split() {
            continue;
        }
        for p in sheaf.hn_normalize().pieces() {
            if let ExtendedSlope::Finite(q) = p.slope() {
                if !slopes.contains(&q) {
                    slopes.push(q);
                }
            }
        }
    }
    slopes.sort_by(|a, b| b.cmp(a));
    slopes
        .windows(2)
        .any(|w| w[0] - w[1] > Rational::from_integer(2 * g as i64))
}

/// Matches the four-term fast generator: rank-1 Split pieces with degrees
/// -m, 0, m, 2m for some m >= 8g, all linked by one id label declaring
/// them powers of a single line bundle.
fn is_fast_four_term(o: &FormalObject, g: u64) -> bool {
    let pieces: Vec<&SemistablePiece> = o.pieces().collect();
    if pieces.len() != 4 {
        return false;
    }
    if !o.graded().values().all(|s| s.is_split()) {
        return false;
    }
    let first_id = match &pieces[0].id {
        Some(id) => id,
        None => return false,
    };
    if !pieces
        .iter()
        .all(|p| p.class.rank() == 1 && p.id.as_ref() == Some(first_id))
    {
        return false;
    }
    let mut degs: Vec<i64> = pieces.iter().map(|p| p.class.degree()).collect();
    degs.sort_unstable();
    let m = degs[2] - degs[1];
    m >= 8 * g as i64 && degs == vec![degs[1] - m, degs[1], degs[1] + m, degs[1] + 2 * m]
}

/// Smallest applicable generating-time bound for an object whose verdict
/// has already been computed.
pub fn gentime_upper_bound(
    o: &FormalObject,
    c: &Curve,
    verdict: &Verdict,
) -> Result<GenTimeBound, GentimeError> {
    let recomputed = classical_status(o, c, &verdict.assumptions_used)
        .map_err(|_| GentimeError::VerdictMismatch)?;
    if recomputed.decision != verdict.decision || recomputed.rule != verdict.rule {
        return Err(GentimeError::VerdictMismatch);
    }

    if verdict.decision != Decision::Yes {
        return Ok(GenTimeBound {
            value: BoundValue::Unbounded,
            derivation: vec![],
        });
    }

    let g = c.genus() as u64;
    let class = o.classify();
    let mut candidates: Vec<Candidate> = Vec::new();

    if g == 1 {
        candidates.push(Candidate {
            value: 4,
            derivation: vec![DerivationStep::new(
                "genus-one-ultimate-bound",
                "genus_one_time_bound",
                4,
            )],
        });
    }

    if is_fast_four_term(o, g) {
        candidates.push(Candidate {
            value: FAST_GENERATOR_TIME,
            derivation: vec![DerivationStep::new(
                "fast-four-term-generator",
                "thm:orlov_optimal_generator",
                FAST_GENERATOR_TIME,
            )],
        });
    }

    if is_line_plus_skyscraper(o) {
        candidates.push(Candidate {
            value: 48 * g + 1,
            derivation: line_plus_skyscraper_bound(g),
        });
    }

    if class.support == Support::Mixed {
        candidates.push(Candidate {
            value: 96 * g + 3,
            derivation: torsion_plus_bundle_trace(g),
        });
    }

    if has_very_wide_split_gap(o, g) {
        candidates.push(Candidate {
            value: 192 * g + 7,
            derivation: wide_gap_trace(g),
        });
    }

    match candidates.into_iter().min_by_key(|c| c.value) {
        Some(best) => Ok(GenTimeBound {
            value: BoundValue::Finite(best.value),
            derivation: best.derivation,
        }),
        None => Ok(GenTimeBound {
            value: BoundValue::UnboundedWithNote,
            derivation: vec![],
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::build::*;

    fn analyzed(o: &FormalObject, g: u32) -> GenTimeBound {
        let c = Curve::new(g);
        let v = classical_status(o, &c, &[]).unwrap();
        gentime_upper_bound(o, &c, &v).unwrap()
    }

    #[test]
    fn compose_bound_examples() {
        assert_eq!(compose_bound(1, 49), 97);
        assert_eq!(compose_bound(0, 1), 0);
        assert_eq!(compose_bound(3, 2), 7);
    }

    #[test]
    fn compose_bound_is_strictly_increasing() {
        for a in 0..10 {
            for b in 1..10 {
                assert!(compose_bound(a + 1, b) > compose_bound(a, b));
                assert!(compose_bound(a, b + 1) > compose_bound(a, b));
            }
        }
    }

    #[test]
    fn line_plus_skyscraper_at_genus_two() {
        let o = object(split_sheaf(vec![piece(1, 0), torsion(1)]));
        let b = analyzed(&o, 2);
        assert_eq!(b.finite(), Some(97));
        // derivation must pass through the composition law
        assert!(b.derivation.iter().any(|s| s.rule == "compose" && s.value == 97));
    }

    #[test]
    fn torsion_plus_bundle_at_genus_two() {
        let o = object(split_sheaf(vec![torsion(2), piece(2, 1)]));
        let b = analyzed(&o, 2);
        assert_eq!(b.finite(), Some(195));
        // the trace shows the two-cone skyscraper step composed at 48g+2
        assert!(b
            .derivation
            .iter()
            .any(|s| s.rule == "skyscraper-from-torsion" && s.value == 2));
        assert!(b.derivation.iter().any(|s| s.rule == "compose" && s.value == 195));
    }

    #[test]
    fn very_wide_split_gap_at_genus_two() {
        let o = object(split_sheaf(vec![piece(1, 0), piece(1, 5)]));
        let b = analyzed(&o, 2);
        assert_eq!(b.finite(), Some(391));
    }

    #[test]
    fn genus_one_yes_always_bounds_at_four() {
        let o = object(split_sheaf(vec![piece(1, 0), piece(1, 1)]));
        let b = analyzed(&o, 1);
        assert_eq!(b.finite(), Some(4));
        // even the skyscraper shape prefers 4 over 48g+1 = 49
        let o = object(split_sheaf(vec![piece(1, 0), torsion(1)]));
        assert_eq!(analyzed(&o, 1).finite(), Some(4));
    }

    #[test]
    fn smallest_applicable_wins() {
        // O + skyscraper is also Mixed; 48g+1 beats 96g+3
        let o = object(split_sheaf(vec![piece(1, 0), torsion(1)]));
        assert_eq!(analyzed(&o, 2).finite(), Some(97));
    }

    #[test]
    fn unknown_and_no_verdicts_are_unbounded() {
        let c = Curve::new(2);
        let o = object(split_sheaf(vec![piece(1, 0), piece(1, 1)]));
        let v = classical_status(&o, &c, &[]).unwrap();
        let b = gentime_upper_bound(&o, &c, &v).unwrap();
        assert_eq!(b.value, BoundValue::Unbounded);

        let o = object(split_sheaf(vec![piece(2, 3)]));
        let v = classical_status(&o, &c, &[]).unwrap();
        let b = gentime_upper_bound(&o, &c, &v).unwrap();
        assert_eq!(b.value, BoundValue::Unbounded);
    }

    #[test]
    fn yes_with_no_table_entry_is_unbounded_with_note() {
        // genus 3: gap 3 fires the Split rule (3 > g-1 = 2) but the
        // generating-time table needs gap > 2g = 6
        let o = object(split_sheaf(vec![piece(1, 0), piece(1, 3)]));
        let b = analyzed(&o, 3);
        assert_eq!(b.value, BoundValue::UnboundedWithNote);
    }

    #[test]
    fn fast_four_term_pattern() {
        let m = 16i64; // 8g at genus 2
        let pieces = vec![
            piece(1, -m).with_id("L"),
            piece(1, 0).with_id("L"),
            piece(1, m).with_id("L"),
            piece(1, 2 * m).with_id("L"),
        ];
        let o = object(split_sheaf(pieces));
        assert_eq!(analyzed(&o, 2).finite(), Some(1));

        // without linkage the pattern must not fire
        let o = object(split_sheaf(vec![
            piece(1, -m),
            piece(1, 0),
            piece(1, m),
            piece(1, 2 * m),
        ]));
        assert_ne!(analyzed(&o, 2).finite(), Some(1));
    }

    #[test]
    fn verdict_mismatch_detected() {
        let c = Curve::new(2);
        let o = object(split_sheaf(vec![torsion(1), piece(1, 0)]));
        let other = object(split_sheaf(vec![piece(2, 3)]));
        let v = classical_status(&other, &c, &[]).unwrap();
        assert_eq!(
            gentime_upper_bound(&o, &c, &v),
            Err(GentimeError::VerdictMismatch)
        );
    }

    #[test]
    fn globally_generated_examples() {
        let c = Curve::new(2);
        assert!(globally_generated_check(&piece(1, 4), &c));
        assert!(!globally_generated_check(&piece(1, 3), &c));
        let c0 = Curve::new(0);
        assert!(globally_generated_check(&piece(2, 1), &c0));
    }
}
