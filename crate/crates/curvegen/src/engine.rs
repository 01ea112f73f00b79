//! Generator detection and the classical-generator verdict tree.
//!
//! Verdicts are three-valued (Yes / No / Unknown) and always carry the
//! rule that fired together with its citation anchor, so every decision
//! in a report can be traced back to a stated criterion. Unknown is a
//! first-class outcome: the engine never guesses.

use serde::Serialize;
use thiserror::Error;

use crate::formal::{FormalObject, SemistablePiece, Stability, Support};
use crate::numerics::{euler_pairing, Curve, ExtendedSlope, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("assumption references unknown piece label `{0}`")]
    UnknownAssumptionTarget(String),
    #[error("no orthogonal object exists: the object is not semistable")]
    NotSemistable,
}

/// A user-supplied Hom-vanishing hypothesis between two labelled pieces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assumption {
    pub source: String,
    pub target: String,
}

impl Assumption {
    pub fn hom_vanishes(source: impl Into<String>, target: impl Into<String>) -> Self {
        Assumption {
            source: source.into(),
            target: target.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Decision {
    Yes,
    No,
    Unknown,
}

/// Identifier of the verdict rule that fired. The numbering and citation
/// strings are part of the stable report vocabulary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RuleId {
    /// Semistable objects span a proper triangulated subcategory.
    Semistable,
    /// On the projective line every generator is classical.
    GenusZero,
    /// On genus-one curves every generator is classical.
    GenusOne,
    /// Torsion plus bundle classically generates everything.
    TorsionPlusBundle,
    /// Split slope gap wider than g - 1.
    WideGapSplit,
    /// HN slope gap wider than 2g - 2 (forces a splitting).
    WideGapHn,
    /// Pairwise orthogonal simples only generate their extensions.
    OrthogonalSimples,
}

impl RuleId {
    pub fn number(&self) -> u8 {
        match self {
            RuleId::Semistable => 1,
            RuleId::GenusZero => 2,
            RuleId::GenusOne => 3,
            RuleId::TorsionPlusBundle => 4,
            RuleId::WideGapSplit => 5,
            RuleId::WideGapHn => 6,
            RuleId::OrthogonalSimples => 7,
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            RuleId::Semistable => "semistable-not-classical",
            RuleId::GenusZero => "genus-zero-generators-are-classical",
            RuleId::GenusOne => "genus-one-generators-are-classical",
            RuleId::TorsionPlusBundle => "torsion-plus-bundle",
            RuleId::WideGapSplit => "wide-gap-split",
            RuleId::WideGapHn => "wide-gap-hn",
            RuleId::OrthogonalSimples => "orthogonal-simples",
        }
    }

    pub fn citation(&self) -> &'static str {
        match self {
            RuleId::Semistable => "cor:semistables_form_triangulated_subcategory",
            RuleId::GenusZero => "rem:genus_zero_classification",
            RuleId::GenusOne => "cor:genus_one_generators",
            RuleId::TorsionPlusBundle => "lem:torsion_plus_bundle_generates_everything",
            RuleId::WideGapSplit => "prop:sufficiently_unstable_bundles",
            RuleId::WideGapHn => "cor:sufficient_instability_criterion",
            RuleId::OrthogonalSimples => "lem:extensions_do_not_generate_everything",
        }
    }
}

/// Three-valued classical-generator decision with its provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub decision: Decision,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<RuleId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub citation: Option<String>,
    pub assumptions_used: Vec<Assumption>,
    /// Present on Unknown verdicts: why no rule fired.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Verdict {
    fn decided(decision: Decision, rule: RuleId, assumptions_used: Vec<Assumption>) -> Self {
        Verdict {
            decision,
            rule: Some(rule),
            citation: Some(rule.citation().to_string()),
            assumptions_used,
            reason: None,
        }
    }

    fn unknown(reason: impl Into<String>) -> Self {
        Verdict {
            decision: Decision::Unknown,
            rule: None,
            citation: None,
            assumptions_used: Vec::new(),
            reason: Some(reason.into()),
        }
    }
}

/// An object generates the derived category exactly when it is not
/// semistable.
pub fn is_generator(o: &FormalObject, _c: &Curve) -> bool {
    !o.classify().stability.is_semistable()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomStatus {
    Vanishes(VanishReason),
    NonzeroOrUnknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VanishReason {
    /// Maps from higher slope to strictly lower slope vanish by
    /// semistability.
    SlopeObstruction,
    /// Nonzero maps between non-isomorphic stable bundles of equal slope
    /// would be isomorphisms.
    Stability,
    /// A user assumption declares the Hom space zero.
    Assumption(Assumption),
}

fn piece_label(p: &SemistablePiece) -> Option<&str> {
    p.id.as_deref()
}

/// Decide whether Hom(a, b) vanishes on numerical-plus-annotation grounds.
///
/// Both pieces must be positive-rank and semistable; the caller is
/// responsible for never asking about a piece paired with itself (distinct
/// pieces without id labels are presumed non-isomorphic).
pub fn hom_vanishes(
    a: &SemistablePiece,
    b: &SemistablePiece,
    assumptions: &[Assumption],
) -> HomStatus {
    if a.isomorphic_to(b) {
        // identity endomorphism
        return HomStatus::NonzeroOrUnknown;
    }
    if b.slope() < a.slope() {
        return HomStatus::Vanishes(VanishReason::SlopeObstruction);
    }
    if a.slope() == b.slope() && a.is_simple() && b.is_simple() {
        return HomStatus::Vanishes(VanishReason::Stability);
    }
    if let (Some(sa), Some(tb)) = (piece_label(a), piece_label(b)) {
        if let Some(assume) = assumptions
            .iter()
            .find(|x| x.source == sa && x.target == tb)
        {
            return HomStatus::Vanishes(VanishReason::Assumption(assume.clone()));
        }
    }
    HomStatus::NonzeroOrUnknown
}

/// Largest gap between consecutive slopes of a strictly decreasing finite
/// slope sequence. Returns None for sequences of length < 2.
fn max_consecutive_gap(slopes: &[Rational]) -> Option<Rational> {
    slopes
        .windows(2)
        .map(|w| w[0] - w[1])
        .max()
}

/// Pooled strictly-decreasing slope sequence of all Split positive-rank
/// pieces across all degrees.
fn pooled_split_slopes(o: &FormalObject) -> Vec<Rational> {
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
}

fn validate_assumptions(o: &FormalObject, assumptions: &[Assumption]) -> Result<(), EngineError> {
    let labels: Vec<&str> = o.pieces().filter_map(piece_label).collect();
    for a in assumptions {
        for label in [&a.source, &a.target] {
            if !labels.contains(&label.as_str()) {
                return Err(EngineError::UnknownAssumptionTarget(label.clone()));
            }
        }
    }
    Ok(())
}

/// The classical-generator verdict tree. Rules are tried in a fixed
/// order and the first rule that fires wins.
pub fn classical_status(
    o: &FormalObject,
    c: &Curve,
    assumptions: &[Assumption],
) -> Result<Verdict, EngineError> {
    validate_assumptions(o, assumptions)?;
    let class = o.classify();
    let g = c.genus() as i64;

    // 1. Semistable objects live in a proper triangulated subcategory.
    if class.stability.is_semistable() {
        return Ok(Verdict::decided(Decision::No, RuleId::Semistable, vec![]));
    }

    // 2-3. At genus 0 and 1 every generator is a classical generator,
    // and the object is a generator since it is not semistable.
    if g == 0 {
        return Ok(Verdict::decided(Decision::Yes, RuleId::GenusZero, vec![]));
    }
    if g == 1 {
        return Ok(Verdict::decided(Decision::Yes, RuleId::GenusOne, vec![]));
    }

    // 4. Torsion and bundle pieces both present.
    if class.support == Support::Mixed {
        return Ok(Verdict::decided(
            Decision::Yes,
            RuleId::TorsionPlusBundle,
            vec![],
        ));
    }

    if class.support == Support::LocallyFree {
        // 5. Pooled Split slope gap wider than g - 1 partitions the
        // summands into the two halves of the sufficient-instability
        // criterion.
        let slopes = pooled_split_slopes(o);
        if let Some(gap) = max_consecutive_gap(&slopes) {
            if gap > Rational::from_integer(g - 1) {
                return Ok(Verdict::decided(Decision::Yes, RuleId::WideGapSplit, vec![]));
            }
        }

        // 6. An HN-only sheaf with a gap wider than 2g - 2 splits at the
        // gap, reducing to the Split criterion with room to spare.
        for sheaf in o.graded().values() {
            if sheaf.is_split() {
                continue;
            }
            let hn_slopes: Vec<Rational> = sheaf
                .hn_normalize()
                .pieces()
                .iter()
                .filter_map(|p| p.slope().as_finite())
                .collect();
            if let Some(gap) = max_consecutive_gap(&hn_slopes) {
                if gap > Rational::from_integer(2 * g - 2) {
                    return Ok(Verdict::decided(Decision::Yes, RuleId::WideGapHn, vec![]));
                }
            }
        }

        // 7. A family of pairwise-orthogonal simples only generates its
        // iterated extensions; skyscrapers are never such objects.
        let pieces: Vec<&SemistablePiece> = o.pieces().collect();
        if pieces.iter().all(|p| p.is_simple()) {
            let mut used = Vec::new();
            let mut all_orthogonal = true;
            'pairs: for i in 0..pieces.len() {
                for j in 0..pieces.len() {
                    if i == j || pieces[i].isomorphic_to(pieces[j]) {
                        continue;
                    }
                    match hom_vanishes(pieces[i], pieces[j], assumptions) {
                        HomStatus::Vanishes(VanishReason::Assumption(a)) => {
                            if !used.contains(&a) {
                                used.push(a);
                            }
                        }
                        HomStatus::Vanishes(_) => {}
                        HomStatus::NonzeroOrUnknown => {
                            all_orthogonal = false;
                            break 'pairs;
                        }
                    }
                }
            }
            if all_orthogonal {
                return Ok(Verdict::decided(
                    Decision::No,
                    RuleId::OrthogonalSimples,
                    used,
                ));
            }
        }
    }

    // 8. No rule fired; no necessary and sufficient criterion is known.
    Ok(Verdict::unknown(
        "no decision rule applies: slope gaps too narrow and Hom spaces undecided",
    ))
}

/// Witness explaining why semiorthogonality is impossible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "witness", content = "detail")]
pub enum SemiorthWitness {
    /// One side is not semistable, hence a generator.
    NotSemistable(String),
    /// Finite slopes do not differ by g - 1.
    SlopeOffset { expected: String, actual: String },
    /// Nonzero Euler characteristic forces a nonzero Ext space.
    EulerNonzero(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", content = "witness")]
pub enum SemiorthResult {
    Impossible(SemiorthWitness),
    /// Necessary conditions pass; not a proof of semiorthogonality.
    Possible,
}

/// Euler pairing of two formal objects: pieces pair with the sign of
/// their relative cohomological degree.
pub fn euler_pairing_objects(e: &FormalObject, f: &FormalObject, c: &Curve) -> i64 {
    let mut chi: i64 = 0;
    for (de, se) in e.graded() {
        for (df, sf) in f.graded() {
            let sign = if (df - de) % 2 == 0 { 1 } else { -1 };
            for pe in se.pieces() {
                for pf in sf.pieces() {
                    let m = pe.multiplicity as i64 * pf.multiplicity as i64;
                    chi += sign * m * euler_pairing(&pe.class, &pf.class, c);
                }
            }
        }
    }
    chi
}

/// Necessary-condition check for Ext-orthogonality of a pair of objects.
pub fn semiorthogonality_check(e: &FormalObject, f: &FormalObject, c: &Curve) -> SemiorthResult {
    let ce = e.classify();
    let cf = f.classify();
    if let Stability::NotSemistable = ce.stability {
        return SemiorthResult::Impossible(SemiorthWitness::NotSemistable("left".into()));
    }
    if let Stability::NotSemistable = cf.stability {
        return SemiorthResult::Impossible(SemiorthWitness::NotSemistable("right".into()));
    }
    if let (Stability::Semistable(ExtendedSlope::Finite(le)), Stability::Semistable(ExtendedSlope::Finite(lf))) =
        (ce.stability, cf.stability)
    {
        let expected = le + Rational::from_integer(c.genus() as i64 - 1);
        if lf != expected {
            return SemiorthResult::Impossible(SemiorthWitness::SlopeOffset {
                expected: format!("{}", ExtendedSlope::Finite(expected)),
                actual: format!("{}", ExtendedSlope::Finite(lf)),
            });
        }
    }
    let chi = euler_pairing_objects(e, f, c);
    if chi != 0 {
        return SemiorthResult::Impossible(SemiorthWitness::EulerNonzero(chi));
    }
    SemiorthResult::Possible
}

/// Numerical description of the Ext-orthogonal class guaranteed to exist
/// for a semistable object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum OrthogonalClass {
    /// A general semistable bundle of this slope; the minimal class is the
    /// reduced (rank, degree) pair realizing it.
    Bundle {
        slope: String,
        minimal_rank: u32,
        minimal_degree: i64,
    },
    /// For torsion objects: a skyscraper at any point outside the support.
    SkyscraperOffSupport,
}

/// For a semistable object, describe the numerical class of a nonzero
/// object Ext-orthogonal to it: slope shifted by g - 1, reduced to the
/// minimal positive class.
pub fn faltings_orthogonal_class(e: &FormalObject, c: &Curve) -> Result<OrthogonalClass, EngineError> {
    match e.classify().stability {
        Stability::NotSemistable => Err(EngineError::NotSemistable),
        Stability::Semistable(ExtendedSlope::Infinity) => Ok(OrthogonalClass::SkyscraperOffSupport),
        Stability::Semistable(ExtendedSlope::Finite(l)) => {
            let target = l + Rational::from_integer(c.genus() as i64 - 1);
            // Ratio is kept reduced with positive denominator, so the
            // minimal class is (denom, numer) directly.
            Ok(OrthogonalClass::Bundle {
                slope: format!("{}", ExtendedSlope::Finite(target)),
                minimal_rank: *target.denom() as u32,
                minimal_degree: *target.numer(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::build::*;
    use crate::formal::FormalObject;

    fn curve(g: u32) -> Curve {
        Curve::new(g)
    }

    #[test]
    fn single_semistable_piece_is_not_a_generator() {
        let o = object(split_sheaf(vec![piece(2, 1)]));
        for g in 0..6 {
            assert!(!is_generator(&o, &curve(g)));
        }
    }

    #[test]
    fn de_jong_object_is_a_generator() {
        let o = object(split_sheaf(vec![
            piece(1, 0),
            piece(1, 1).with_h0(0).unwrap(),
        ]));
        assert!(is_generator(&o, &curve(2)));
    }

    #[test]
    fn torsion_plus_bundle_is_a_generator() {
        let o = object(split_sheaf(vec![torsion(1), piece(1, 0)]));
        assert!(is_generator(&o, &curve(3)));
    }

    #[test]
    fn hom_vanishes_by_slope() {
        let a = piece(1, 1);
        let b = piece(1, 0);
        assert_eq!(
            hom_vanishes(&a, &b, &[]),
            HomStatus::Vanishes(VanishReason::SlopeObstruction)
        );
    }

    #[test]
    fn hom_vanishes_by_assumption() {
        let a = piece(1, 0).with_id("O");
        let b = piece(1, 1).with_h0(0).unwrap().with_id("L");
        let assumptions = vec![Assumption::hom_vanishes("O", "L")];
        assert_eq!(
            hom_vanishes(&a, &b, &assumptions),
            HomStatus::Vanishes(VanishReason::Assumption(assumptions[0].clone()))
        );
    }

    #[test]
    fn hom_undecided_without_assumptions() {
        let a = piece(1, 0);
        let b = piece(1, 1);
        assert_eq!(hom_vanishes(&a, &b, &[]), HomStatus::NonzeroOrUnknown);
    }

    #[test]
    fn hom_between_distinct_stables_of_equal_slope_vanishes() {
        let a = piece(1, 0).with_id("A");
        let b = piece(1, 0).with_id("B");
        assert_eq!(
            hom_vanishes(&a, &b, &[]),
            HomStatus::Vanishes(VanishReason::Stability)
        );
        // same label and class: isomorphic, identity map exists
        let b2 = piece(1, 0).with_id("A");
        assert_eq!(hom_vanishes(&a, &b2, &[]), HomStatus::NonzeroOrUnknown);
    }

    #[test]
    fn de_jong_verdict_is_no_by_rule_7() {
        let o = object(split_sheaf(vec![
            piece(1, 0).with_id("O"),
            piece(1, 1).with_h0(0).unwrap().with_id("L"),
        ]));
        let assumptions = vec![Assumption::hom_vanishes("O", "L")];
        let v = classical_status(&o, &curve(2), &assumptions).unwrap();
        assert_eq!(v.decision, Decision::No);
        assert_eq!(v.rule, Some(RuleId::OrthogonalSimples));
        assert_eq!(v.assumptions_used, assumptions);
    }

    #[test]
    fn torsion_plus_bundle_verdict_rule_4() {
        let o = object(split_sheaf(vec![torsion(1), piece(1, 0)]));
        let v = classical_status(&o, &curve(3), &[]).unwrap();
        assert_eq!(v.decision, Decision::Yes);
        assert_eq!(v.rule, Some(RuleId::TorsionPlusBundle));
    }

    #[test]
    fn genus_one_verdict_rule_3() {
        let o = object(split_sheaf(vec![piece(1, 0), piece(1, 1)]));
        let v = classical_status(&o, &curve(1), &[]).unwrap();
        assert_eq!(v.decision, Decision::Yes);
        assert_eq!(v.rule, Some(RuleId::GenusOne));
    }

    #[test]
    fn narrow_gap_without_assumptions_is_unknown() {
        let o = object(split_sheaf(vec![piece(1, 0), piece(1, 1)]));
        let v = classical_status(&o, &curve(2), &[]).unwrap();
        assert_eq!(v.decision, Decision::Unknown);
        assert!(v.reason.is_some());
    }

    #[test]
    fn semistable_verdict_rule_1() {
        let o = object(split_sheaf(vec![piece(2, 3)]));
        let v = classical_status(&o, &curve(2), &[]).unwrap();
        assert_eq!(v.decision, Decision::No);
        assert_eq!(v.rule, Some(RuleId::Semistable));
    }

    #[test]
    fn wide_split_gap_fires_rule_5() {
        // slopes 0 and 5 at genus 2: gap 5 > g - 1 = 1
        let o = object(split_sheaf(vec![piece(1, 0), piece(1, 5)]));
        let v = classical_status(&o, &curve(2), &[]).unwrap();
        assert_eq!(v.decision, Decision::Yes);
        assert_eq!(v.rule, Some(RuleId::WideGapSplit));
    }

    #[test]
    fn hn_only_needs_the_wider_gap() {
        // gap 3 at genus 2: > g-1 = 1 but not > 2g-2 = 2 would fire for
        // Split, not for HNOnly; gap 5 > 2 fires rule 6.
        let narrow = object(hn_sheaf(vec![piece(1, 2), piece(1, 0)]));
        let v = classical_status(&narrow, &curve(2), &[]).unwrap();
        assert_eq!(v.decision, Decision::Unknown);

        let wide = object(hn_sheaf(vec![piece(1, 5), piece(1, 0)]));
        let v = classical_status(&wide, &curve(2), &[]).unwrap();
        assert_eq!(v.decision, Decision::Yes);
        assert_eq!(v.rule, Some(RuleId::WideGapHn));
    }

    #[test]
    fn unknown_assumption_target_is_an_error() {
        let o = object(split_sheaf(vec![piece(1, 0).with_id("O"), piece(1, 1)]));
        let err = classical_status(
            &o,
            &curve(2),
            &[Assumption::hom_vanishes("O", "ghost")],
        )
        .unwrap_err();
        assert_eq!(err, EngineError::UnknownAssumptionTarget("ghost".into()));
    }

    #[test]
    fn semiorth_check_examples() {
        let c = curve(2);
        let e = object(split_sheaf(vec![piece(1, 0)]));
        let f = object(split_sheaf(vec![piece(1, 1)]));
        assert_eq!(semiorthogonality_check(&e, &f, &c), SemiorthResult::Possible);

        let bad = object(split_sheaf(vec![piece(1, 0), piece(1, 1)]));
        match semiorthogonality_check(&bad, &f, &c) {
            SemiorthResult::Impossible(SemiorthWitness::NotSemistable(side)) => {
                assert_eq!(side, "left")
            }
            other => panic!("expected NotSemistable, got {other:?}"),
        }

        // wrong offset
        let f2 = object(split_sheaf(vec![piece(1, 3)]));
        assert!(matches!(
            semiorthogonality_check(&e, &f2, &c),
            SemiorthResult::Impossible(SemiorthWitness::SlopeOffset { .. })
        ));

        // torsion against bundle: chi is nonzero
        let t = object(split_sheaf(vec![torsion(2)]));
        assert!(matches!(
            semiorthogonality_check(&t, &e, &c),
            SemiorthResult::Impossible(SemiorthWitness::EulerNonzero(_))
        ));
    }

    #[test]
    fn faltings_orthogonal_examples() {
        let c = curve(2);
        let e = object(split_sheaf(vec![piece(1, 0)]));
        assert_eq!(
            faltings_orthogonal_class(&e, &c).unwrap(),
            OrthogonalClass::Bundle {
                slope: "1".into(),
                minimal_rank: 1,
                minimal_degree: 1
            }
        );

        let e = object(split_sheaf(vec![piece(2, 1)]));
        assert_eq!(
            faltings_orthogonal_class(&e, &c).unwrap(),
            OrthogonalClass::Bundle {
                slope: "3/2".into(),
                minimal_rank: 2,
                minimal_degree: 3
            }
        );

        let t = object(split_sheaf(vec![torsion(4)]));
        assert_eq!(
            faltings_orthogonal_class(&t, &c).unwrap(),
            OrthogonalClass::SkyscraperOffSupport
        );

        let unstable = object(split_sheaf(vec![piece(1, 0), piece(1, 3)]));
        assert_eq!(
            faltings_orthogonal_class(&unstable, &c),
            Err(EngineError::NotSemistable)
        );
    }
}
