//! Built-in property suites behind the `selftest` CLI subcommand.
//!
//! These mirror the acceptance suite so that a deployed binary can verify
//! itself without the test harness. All randomness is seeded, so the run
//! is reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::{classical_status, is_generator, Assumption, Decision};
use crate::formal::build::{object, piece, split_sheaf, torsion};
use crate::fuzz::{independent_is_semistable, random_object, FuzzParams};
use crate::gentime::{compose_bound, gentime_upper_bound};
use crate::numerics::{euler_pairing, serre_twist, ChernPair, Curve};
use crate::p1;

struct Suite {
    name: &'static str,
    run: fn() -> Result<(), String>,
}

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn suite_p1_cross_check() -> Result<(), String> {
    let r = p1::euler_cross_check(20);
    check(
        r.pairs == 1681 && r.failures == 0,
        format!("expected 1681 clean pairs, got {} with {} failures", r.pairs, r.failures),
    )
}

fn suite_p1_semiorth_diagonal() -> Result<(), String> {
    let pairs = p1::semiorthogonal_pairs(20);
    for (a, b) in &pairs {
        check(*b == a - 1, format!("unexpected semiorthogonal pair ({a},{b})"))?;
    }
    check(pairs.len() == 40, format!("expected 40 pairs, got {}", pairs.len()))
}

fn suite_generator_criterion_and_soundness() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let params = FuzzParams::default();
    for i in 0..10_000 {
        let genus = rng.gen_range(0..=10);
        let c = Curve::new(genus);
        let o = random_object(&mut rng, genus, &params);
        let gen = is_generator(&o, &c);
        let expected = !independent_is_semistable(&o);
        check(gen == expected, format!("generator criterion mismatch at case {i}"))?;
        let v = classical_status(&o, &c, &[]).map_err(|e| e.to_string())?;
        if v.decision == Decision::Yes {
            check(gen, format!("unsound Yes verdict at case {i}"))?;
        }
        gentime_upper_bound(&o, &c, &v).map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn suite_genus_one_completeness() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let params = FuzzParams {
        allow_hn_only: false,
        ..FuzzParams::default()
    };
    let c = Curve::new(1);
    for i in 0..1_000 {
        let o = random_object(&mut rng, 1, &params);
        let v = classical_status(&o, &c, &[]).map_err(|e| e.to_string())?;
        check(v.decision != Decision::Unknown, format!("Unknown at genus 1, case {i}"))?;
        let expected = if is_generator(&o, &c) { Decision::Yes } else { Decision::No };
        check(v.decision == expected, format!("genus-1 trichotomy broken at case {i}"))?;
    }
    Ok(())
}

fn suite_serre_antisymmetry() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for i in 0..1_000 {
        let c = Curve::new(rng.gen_range(0..=10));
        let e = ChernPair::bundle(rng.gen_range(1..=8), rng.gen_range(-50..=50)).unwrap();
        let f = ChernPair::bundle(rng.gen_range(1..=8), rng.gen_range(-50..=50)).unwrap();
        check(
            euler_pairing(&e, &f, &c) == -euler_pairing(&f, &serre_twist(&e, &c), &c),
            format!("serre antisymmetry broken at case {i}"),
        )?;
    }
    Ok(())
}

fn suite_gentime_table() -> Result<(), String> {
    let fixtures: [(FnFixture, u64); 3] = [
        (|| object(split_sheaf(vec![piece(1, 0), torsion(1)])), 97),
        (|| object(split_sheaf(vec![torsion(2), piece(2, 1)])), 195),
        (|| object(split_sheaf(vec![piece(1, 0), piece(1, 5)])), 391),
    ];
    let c = Curve::new(2);
    for (make, expected) in fixtures {
        let o = make();
        let v = classical_status(&o, &c, &[]).map_err(|e| e.to_string())?;
        let b = gentime_upper_bound(&o, &c, &v).map_err(|e| e.to_string())?;
        check(b.finite() == Some(expected), format!("expected bound {expected}, got {:?}", b.value))?;
    }
    for g in 0..=50u64 {
        check(
            48 * g + 1 < 96 * g + 3 && 96 * g + 3 < 192 * g + 7,
            format!("bound chain broken at genus {g}"),
        )?;
    }
    for g in 1..=10u64 {
        check(
            compose_bound(1, 24 * g + 1) == 48 * g + 1,
            format!("composition identity broken at genus {g}"),
        )?;
    }
    Ok(())
}

type FnFixture = fn() -> crate::formal::FormalObject;

fn suite_equivariance() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let params = FuzzParams {
        allow_stable: false,
        ..FuzzParams::default()
    };
    for i in 0..100 {
        let genus = rng.gen_range(0..=10);
        let c = Curve::new(genus);
        let o = random_object(&mut rng, genus, &params);
        let base = classical_status(&o, &c, &[]).map_err(|e| e.to_string())?;
        let base_gen = is_generator(&o, &c);
        for _ in 0..100 {
            let n = rng.gen_range(-5..=5);
            let t = rng.gen_range(-10..=10);
            let moved = o.shift(n).twist(t);
            let v = classical_status(&moved, &c, &[]).map_err(|e| e.to_string())?;
            check(
                v.decision == base.decision && v.rule == base.rule,
                format!("verdict not equivariant at case {i}"),
            )?;
            check(
                is_generator(&moved, &c) == base_gen,
                format!("generator status not equivariant at case {i}"),
            )?;
        }
    }
    Ok(())
}

fn suite_de_jong_family() -> Result<(), String> {
    for g in 2..=10u32 {
        let c = Curve::new(g);
        let o = object(split_sheaf(vec![
            piece(1, 0).with_id("O"),
            piece(1, 1).with_h0(0).unwrap().with_id("L"),
        ]));
        let assumptions = vec![Assumption::hom_vanishes("O", "L")];
        check(is_generator(&o, &c), format!("not a generator at genus {g}"))?;
        let v = classical_status(&o, &c, &assumptions).map_err(|e| e.to_string())?;
        check(
            v.decision == Decision::No && v.rule.map(|r| r.number()) == Some(7),
            format!("expected No by rule 7 at genus {g}, got {v:?}"),
        )?;
    }
    Ok(())
}

/// Run every suite, print one line per suite, return overall success.
pub fn run_selftest() -> bool {
    let suites = [
        Suite { name: "p1-euler-cross-check", run: suite_p1_cross_check },
        Suite { name: "p1-semiorthogonal-diagonal", run: suite_p1_semiorth_diagonal },
        Suite { name: "generator-criterion-and-soundness", run: suite_generator_criterion_and_soundness },
        Suite { name: "genus-one-completeness", run: suite_genus_one_completeness },
        Suite { name: "serre-antisymmetry", run: suite_serre_antisymmetry },
        Suite { name: "gentime-table", run: suite_gentime_table },
        Suite { name: "verdict-equivariance", run: suite_equivariance },
        Suite { name: "two-line-bundle-family", run: suite_de_jong_family },
    ];
    let mut ok = true;
    for s in suites {
        match (s.run)() {
            Ok(()) => println!("PASS {}", s.name),
            Err(msg) => {
                ok = false;
                println!("FAIL {}: {msg}", s.name);
            }
        }
    }
    ok
}
