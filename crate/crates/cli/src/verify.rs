//! The acceptance checks behind `verify-all`. `quick` trims trial counts and
//! parameter ranges; `full` runs the same sizes as the test suite.

use linkage_core::deleted::{closedness_check, deleted_join, involution_sign, orient_deleted_product, self_duality_check};
use linkage_core::geometry::almost_embedding_check;
use linkage_core::ledger::{explicit_verify, realize_by_path, PathOptions};
use linkage_core::linking::{
    all_moves, base_embedding_k6, cgs_trials, finger_move, link_matrix, matrix_move, move_delta, move_reachability,
    realize_odd_link, xi_contradiction, xi_reference_chain, FingerOptions, LinkMatrix, Reachability,
};
use linkage_core::simplicial::build_family;
use linkage_core::vk::{pa_condition, vk_invariance_trial};
use linkage_core::{FamilySelector, Result};

use crate::{CliError, Ctx, Profile};

type Check = Result<std::result::Result<String, String>>;

fn pass(b: bool, ok: String, bad: String) -> std::result::Result<String, String> {
    if b {
        Ok(ok)
    } else {
        Err(bad)
    }
}

fn cgs(full: bool) -> Check {
    let n = if full { 200 } else { 40 };
    let r = cgs_trials(n, 1)?;
    Ok(pass(r.all_odd(), format!("{n}/{n} odd"), format!("{}/{n} odd, seeds {:?}", r.odd, r.failing_seeds)))
}

fn odd_link(full: bool) -> Check {
    let zs: Vec<i64> = if full { (-3..=3).collect() } else { vec![-1, 0, 1] };
    for &z in &zs {
        let f = realize_odd_link(z, FingerOptions::default())?;
        let mut want = LinkMatrix::zero();
        want.0[0] = 2 * z + 1;
        let got = link_matrix(&f)?;
        if !almost_embedding_check(&f).is_ok() || got != want {
            return Ok(Err(format!("z={z}: {:?}", got.0)));
        }
    }
    Ok(Ok(format!("z in {zs:?}")))
}

fn finger(full: bool) -> Check {
    let base = base_embedding_k6();
    let before = link_matrix(&base)?;
    let count = if full { 6 } else { 2 };
    for m in all_moves().iter().step_by(7).take(count) {
        let g = finger_move(&base, m, FingerOptions::default())?;
        let delta = link_matrix(&g)?.sub(&before);
        if delta != move_delta(m)? {
            return Ok(Err(format!("{m:?}: delta {:?}", delta.0)));
        }
    }
    Ok(Ok(format!("{count} moves match")))
}

fn van_kampen(full: bool) -> Check {
    let fams: &[(u32, u32)] = if full { &[(1, 0), (2, 1), (3, 1), (3, 2)] } else { &[(1, 0), (2, 1)] };
    for &(k, l) in fams {
        let c = build_family(FamilySelector::F { k, l })?;
        let d = (k + l + 1) as usize;
        if !pa_condition(&c, d).is_ok() {
            return Ok(Err(format!("parity condition fails for ({k},{l})")));
        }
    }
    let trials = if full { 50 } else { 10 };
    let r = vk_invariance_trial(&build_family(FamilySelector::F { k: 1, l: 0 })?, 2, trials, 4)?;
    Ok(pass(r.common_value() == Some(1), format!("v(f) = 1 for {trials} maps"), format!("values {:?}", r.values)))
}

fn duality(full: bool) -> Check {
    let fams: &[(u32, u32)] = if full { &[(1, 0), (2, 0), (2, 1), (3, 2)] } else { &[(1, 0), (2, 1)] };
    for &(k, l) in fams {
        let j = deleted_join(&build_family(FamilySelector::F { k, l })?)?;
        let chi = if (k + l) % 2 == 0 { 2 } else { 0 };
        if !self_duality_check(k, l)?.is_ok() || !j.pseudomanifold_check().is_closed_pseudomanifold() || j.euler_characteristic() != chi
        {
            return Ok(Err(format!("({k},{l})")));
        }
    }
    Ok(Ok(format!("{} families", fams.len())))
}

fn orientation(full: bool) -> Check {
    let fams: &[(u32, u32)] = if full { &[(2, 1), (3, 1), (3, 2)] } else { &[(2, 1)] };
    for &(k, l) in fams {
        let a = orient_deleted_product(k, l)?;
        let want = if (k + l) % 2 == 0 { 1 } else { -1 };
        if !closedness_check(&a)?.is_ok() || involution_sign(&a)? != want {
            return Ok(Err(format!("({k},{l})")));
        }
    }
    Ok(Ok(format!("{} families", fams.len())))
}

fn path(full: bool) -> Check {
    let fams: &[(u32, u32)] = if full { &[(2, 1), (3, 2)] } else { &[(2, 1)] };
    for &(k, l) in fams {
        for z in -2..=2 {
            let (_, r) = realize_by_path(k, l, z, 1, PathOptions::default())?;
            if r.d_u0 - r.base_u0 != 2 * z {
                return Ok(Err(format!("({k},{l}) z={z}")));
            }
        }
    }
    Ok(Ok(format!("{} families, z = -2..2", fams.len())))
}

fn explicit(full: bool) -> Check {
    let mut cases: Vec<(u32, u32, i64)> = (-1..=1).map(|z| (3, 2, z)).collect();
    if full {
        cases.extend([(3, 2, -2), (3, 2, 2), (5, 2, 1)]);
    }
    for &(k, l, z) in &cases {
        let r = explicit_verify(k, l, z)?;
        if !r.terms_match() || !r.uncovered.is_empty() || r.sphere_degree != 2 * z + 1 {
            return Ok(Err(format!("({k},{l}) z={z}")));
        }
    }
    Ok(Ok(format!("{} cases", cases.len())))
}

fn xi(_: bool) -> Check {
    let c = xi_contradiction()?;
    c.verify()?;
    xi_reference_chain().verify()?;
    Ok(Ok(format!("{} steps", c.steps.len())))
}

fn reach(_: bool) -> Check {
    let from = LinkMatrix::canonical();
    let mut to = from;
    to.0[0] += 2;
    Ok(match move_reachability(&from, &to)? {
        Reachability::Sequence(s) => {
            let end = s.iter().try_fold(from, |m, x| matrix_move(&m, x))?;
            pass(s.len() == 3 && end == to, "3 moves".into(), format!("{} moves", s.len()))
        }
        Reachability::Unreachable(_) => Err("unreachable".into()),
    })
}

pub(crate) fn verify_all(ctx: &mut Ctx) -> Result<(), CliError> {
    let full = ctx.global.profile == Profile::Full;
    let checks: [(&str, fn(bool) -> Check); 10] = [
        ("cgs parity", cgs),
        ("odd-link realizer", odd_link),
        ("finger move delta", finger),
        ("van kampen number", van_kampen),
        ("self-duality and deleted join", duality),
        ("orientation and exchange sign", orientation),
        ("path realization", path),
        ("explicit list", explicit),
        ("odd sign cycle", xi),
        ("three-move reachability", reach),
    ];
    ctx.report.value("profile", if full { "full" } else { "quick" });
    for (name, f) in checks {
        match f(full) {
            Ok(Ok(d)) => ctx.report.check(name, true, d),
            Ok(Err(d)) => ctx.report.check(name, false, d),
            Err(e) => ctx.report.check(name, false, format!("error: {e}")),
        }
    }
    Ok(())
}
