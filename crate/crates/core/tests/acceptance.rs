//! Acceptance suite: one PASS/FAIL line per criterion. Criteria 1-10 are
//! blocking; criterion 11 is reported but does not fail the run.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use linkage_core::deleted::{closedness_check, deleted_join, involution_sign, orient_deleted_product, self_duality_check};
use linkage_core::geometry::{almost_embedding_check, AlmostEmbedding};
use linkage_core::ledger::{explicit_verify, realize_by_path, PathOptions};
use linkage_core::linking::{
    all_moves, base_embedding_k6, cgs_trials, finger_move, k6_to_f11_minus, link_matrix, matrix_move, move_delta,
    move_reachability, realize_odd_link, sphere_linking, suspend_almost_embedding, xi_contradiction,
    xi_reference_chain, Direction, FingerOptions, LinkMatrix, Reachability, SuspendOptions,
};
use linkage_core::simplicial::{build_family, FamilySelector};
use linkage_core::vk::{pa_condition, vk_invariance_trial};
use linkage_core::Result;

type Outcome = Result<std::result::Result<String, String>>;

fn sign(n: u32) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

fn within(start: Instant, budget: Duration, detail: String) -> std::result::Result<String, String> {
    let t = start.elapsed();
    if t <= budget {
        Ok(format!("{detail} in {:.1}s", t.as_secs_f64()))
    } else {
        Err(format!("{detail} but took {:.1}s (budget {}s)", t.as_secs_f64(), budget.as_secs()))
    }
}

fn c1() -> Outcome {
    let start = Instant::now();
    let r = cgs_trials(200, 1)?;
    if !r.all_odd() {
        return Ok(Err(format!("{}/200 odd; failing seeds {:?}", r.odd, r.failing_seeds)));
    }
    Ok(within(start, Duration::from_secs(30), format!("200/200 odd, histogram {:?}", r.histogram)))
}

fn c2() -> Outcome {
    let start = Instant::now();
    for z in -3..=3 {
        let f = realize_odd_link(z, FingerOptions::default())?;
        if let AlmostEmbedding::Witness { left, right, .. } = almost_embedding_check(&f) {
            return Ok(Err(format!("z={z}: faces {left:?} and {right:?} meet")));
        }
        let mut want = LinkMatrix::zero();
        want.0[0] = 2 * z + 1;
        let got = link_matrix(&f)?;
        if got != want {
            return Ok(Err(format!("z={z}: matrix {:?}", got.0)));
        }
    }
    Ok(within(start, Duration::from_secs(60), "z = -3..3 realized exactly".into()))
}

fn c3() -> Outcome {
    let base = base_embedding_k6();
    let before = link_matrix(&base)?;
    let mut moves = all_moves();
    moves.shuffle(&mut ChaCha8Rng::seed_from_u64(3));
    for m in moves.iter().take(6) {
        let g = finger_move(&base, m, FingerOptions { seed: 3, ..Default::default() })?;
        let delta = link_matrix(&g)?.sub(&before);
        let want = move_delta(m)?;
        if delta != want || want.0.iter().filter(|&&x| x != 0).count() != 2 {
            return Ok(Err(format!("{m:?}: delta {:?}, predicted {:?}", delta.0, want.0)));
        }
    }
    Ok(Ok("6 random edge pairs: geometric delta equals prediction".into()))
}

fn c4() -> Outcome {
    let start = Instant::now();
    for (k, l) in [(1, 0), (2, 1), (3, 1), (3, 2)] {
        let r = pa_condition(&build_family(FamilySelector::F { k, l })?, (k + l + 1) as usize);
        if let Some(w) = r.witness {
            return Ok(Err(format!("parity condition fails for ({k},{l}): {w:?}")));
        }
    }
    for (k, l) in [(1, 0), (2, 1)] {
        let r = vk_invariance_trial(&build_family(FamilySelector::F { k, l })?, (k + l + 1) as usize, 50, 4)?;
        let ones = r.values.iter().filter(|&&v| v == 1).count();
        if ones != 50 {
            return Ok(Err(format!("({k},{l}): v(f) = 1 for {ones}/50 maps")));
        }
    }
    Ok(within(start, Duration::from_secs(300), "parity condition ok for 4 families; v(f) = 1 for 50/50 maps twice".into()))
}

fn c5() -> Outcome {
    for (k, l) in [(1, 0), (2, 0), (2, 1), (3, 2)] {
        let d = self_duality_check(k, l)?;
        if let Some(w) = d.witness {
            return Ok(Err(format!("({k},{l}) not self-dual at {w:?}")));
        }
        let j = deleted_join(&build_family(FamilySelector::F { k, l })?)?;
        let r = j.pseudomanifold_check();
        let chi = 1 + sign(k + l + 2);
        if !r.is_closed_pseudomanifold() || j.dim() != (k + l + 2) as isize || j.euler_characteristic() != chi {
            return Ok(Err(format!("({k},{l}) join: dim {}, chi {}, {r:?}", j.dim(), j.euler_characteristic())));
        }
    }
    Ok(Ok("4 families self-dual; joins are closed connected pseudomanifolds with the sphere's chi".into()))
}

fn c6() -> Outcome {
    let start = Instant::now();
    for (k, l) in [(2, 1), (3, 1), (3, 2)] {
        let a = orient_deleted_product(k, l)?;
        let r = closedness_check(&a)?;
        if let Some(w) = r.witness {
            return Ok(Err(format!("({k},{l}) orientations do not cancel at {w:?}")));
        }
        let s = involution_sign(&a)?;
        if s as i64 != sign(k + l) {
            return Ok(Err(format!("({k},{l}) exchange sign {s}")));
        }
    }
    Ok(within(start, Duration::from_secs(300), "closed orientations, exchange sign (-1)^(k+l)".into()))
}

fn c7() -> Outcome {
    for (k, l) in [(2, 1), (3, 2)] {
        for z in -2..=2 {
            // realize_by_path checks every per-cell assertion itself
            let (ledger, r) = realize_by_path(k, l, z, 1, PathOptions::default())?;
            ledger.check_equivariance()?;
            if r.d_u0 - r.base_u0 != 2 * z || r.d_um - r.base_um != -2 * z {
                return Ok(Err(format!("({k},{l}) z={z}: {r:?}")));
            }
        }
    }
    Ok(Ok("(2,1), (3,2) for z = -2..2: shifts 2z and -2z, rest unchanged, F_- cells zero".into()))
}

fn c8() -> Outcome {
    let mut cases: Vec<(u32, u32, i64)> = (-2..=2).map(|z| (3, 2, z)).collect();
    cases.push((5, 2, 1));
    for (k, l, z) in cases {
        let r = explicit_verify(k, l, z)?;
        if !r.terms_match() || !r.uncovered.is_empty() || r.sphere_degree != 2 * z + 1 {
            return Ok(Err(format!("({k},{l}) z={z}: {r:?}")));
        }
    }
    Ok(Ok("(3,2) z = -2..2 and (5,2) z = 1: zero boundaries, every term matches, degree 2z+1".into()))
}

fn c9() -> Outcome {
    let c = xi_contradiction()?;
    c.verify()?;
    let reference = xi_reference_chain();
    reference.verify()?;
    Ok(Ok(format!("found odd cycle with {} steps; reference 6-step chain verifies", c.steps.len())))
}

fn c10() -> Outcome {
    let from = LinkMatrix::canonical();
    let mut to = from;
    to.0[0] += 2;
    match move_reachability(&from, &to)? {
        Reachability::Sequence(s) => {
            let end = s.iter().try_fold(from, |m, x| matrix_move(&m, x))?;
            if s.len() == 3 && end == to {
                Ok(Ok(format!("3 moves: {s:?}")))
            } else {
                Ok(Err(format!("sequence of length {} reaching {:?}", s.len(), end.0)))
            }
        }
        Reachability::Unreachable(_) => Ok(Err("reported unreachable".into())),
    }
}

fn c11() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for z in [0, 1] {
        let attempt = (|| -> Result<i64> {
            let f = k6_to_f11_minus(&realize_odd_link(z, FingerOptions::default())?)?;
            let g = suspend_almost_embedding(&f, 2, 1, Direction::RaiseK, SuspendOptions::default())?;
            if !almost_embedding_check(&g).is_ok() {
                return Err(linkage_core::Error::Verification("suspension is not an almost embedding".into()));
            }
            sphere_linking(&g, 2, 1)
        })();
        match attempt {
            Ok(lk) if lk == 2 * z + 1 => notes.push(format!("z={z}: lk {lk}")),
            Ok(lk) => {
                ok = false;
                notes.push(format!("z={z}: lk {lk}"));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("z={z}: {e}"));
            }
        }
    }
    let s = notes.join("; ");
    Ok(if ok { Ok(s) } else { Err(s) })
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome, bool); 11] = [
        (1, "CGS parity on random K6 embeddings", c1, true),
        (2, "odd-link realizer", c2, true),
        (3, "finger move delta", c3, true),
        (4, "parity condition and van Kampen number", c4, true),
        (5, "self-duality and deleted join", c5, true),
        (6, "orientation, closedness, exchange sign", c6, true),
        (7, "path realization ledger", c7, true),
        (8, "explicit modification list", c8, true),
        (9, "odd cycle in the sign relation", c9, true),
        (10, "three-move reachability", c10, true),
        (11, "suspension to F_{2,1,-} (best effort)", c11, false),
    ];
    let mut failed = Vec::new();
    for (n, name, run, blocking) in criteria {
        let start = Instant::now();
        let outcome = run().unwrap_or_else(|e| Err(format!("error: {e}")));
        let t = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {n} ({name}): {detail} [{t:.1}s]"),
            Err(detail) => {
                let tag = if blocking { "" } else { " (non-blocking)" };
                println!("FAIL criterion {n} ({name}){tag}: {detail} [{t:.1}s]");
                if blocking {
                    failed.push(n);
                }
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("blocking criteria failed: {failed:?}");
        std::process::exit(1);
    }
}
