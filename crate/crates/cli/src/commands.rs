use std::path::PathBuf;

use serde_json::{json, Value};

use linkage_core::deleted::{
    closedness_check, deleted_join, deleted_product, involution_sign, orient_deleted_product, pseudomanifold_check,
    self_duality_check,
};
use linkage_core::geometry::{almost_embedding_check, graph_embedding_check, random_rational_map, AlmostEmbedding, RandomMapOptions};
use linkage_core::ledger::{explicit_list, explicit_verify, realize_by_path, realize_cochain, CochainRealization, DegreeLedger, PathOptions};
use linkage_core::linking::{
    base_embedding_k6, cgs_trials, finger_move, k6, k6_to_f11_minus, link_matrix, realize_odd_link, sphere_linking,
    suspend_almost_embedding, xi_contradiction, xi_reference_chain, Direction, FingerOptions, LinkMatrix, MoveSpec,
    SuspendOptions,
};
use linkage_core::simplicial::build_family;
use linkage_core::vk::{pa_condition, van_kampen_number, vk_invariance_trial};
use linkage_core::{Complex, FamilySelector, PlMap};

use crate::{
    BierCmd, CliError, Command, ComplexCmd, Ctx, DeletedCmd, Family, FamilyArgs, K6Cmd, LedgerCmd, OrientCmd, VkCmd, KL,
};

type Res = Result<(), CliError>;

pub(crate) fn dispatch(cmd: &Command, ctx: &mut Ctx) -> Res {
    match cmd {
        Command::Complex(c) => complex(c, ctx),
        Command::K6(c) => k6_cmd(c, ctx),
        Command::Suspend { input, k, l, z } => suspend(input, *k, *l, *z, ctx),
        Command::Vk(c) => vk(c, ctx),
        Command::Deleted(c) => deleted(c, ctx),
        Command::Bier(BierCmd::Verify(kl)) => bier(*kl, ctx),
        Command::Orient(OrientCmd::Verify(kl)) => orient(*kl, ctx),
        Command::Ledger(c) => ledger(c, ctx),
        Command::VerifyAll => crate::verify::verify_all(ctx),
    }
}

pub(crate) fn selector(a: &FamilyArgs) -> Result<FamilySelector, CliError> {
    let (k, l) = (a.k, a.l);
    Ok(match a.family {
        Family::F => FamilySelector::F { k, l },
        Family::FMinus => FamilySelector::FMinus { k, l },
        Family::FPrime => FamilySelector::FPrime { k, l },
        Family::Kn => FamilySelector::Kn { n: a.n.ok_or_else(|| CliError::Usage("--family Kn needs -n".into()))? },
    })
}

fn family(a: &FamilyArgs, ctx: &mut Ctx) -> Result<(FamilySelector, Complex), CliError> {
    let sel = selector(a)?;
    let k = build_family(sel)?;
    ctx.report.value("complex", sel.name());
    Ok((sel, k))
}

fn read_map(path: &PathBuf, ctx: &mut Ctx) -> Result<PlMap, CliError> {
    let v = ctx.read_json(path)?;
    Ok(PlMap::from_json(&v)?)
}

fn read_complex(path: &PathBuf, ctx: &mut Ctx) -> Result<Complex, CliError> {
    let v = ctx.read_json(path)?;
    // a map document carries its complex too
    match Complex::from_json(&v) {
        Ok(k) => Ok(k),
        Err(_) if v.get("complex").is_some() => Ok(Complex::from_json(&v["complex"])?),
        Err(e) => Err(e.into()),
    }
}

fn complex(c: &ComplexCmd, ctx: &mut Ctx) -> Res {
    let k = match c {
        ComplexCmd::Build(a) => family(a, ctx)?.1,
        ComplexCmd::Fvector { input } => read_complex(input, ctx)?,
    };
    ctx.report.check("downward closed", k.is_downward_closed(), format!("{} faces", k.num_faces()));
    ctx.report.value("dim", k.dim());
    ctx.report.value("f_vector", k.f_vector());
    ctx.report.value("euler_characteristic", k.euler_characteristic());
    if let ComplexCmd::Build(_) = c {
        ctx.write_artifact(&k.to_json())?;
    }
    Ok(())
}

/// Records the embedding checks and the matrix of a map of K6.
fn k6_facts(f: &PlMap, ctx: &mut Ctx) -> Result<LinkMatrix, CliError> {
    if f.complex() != &k6() {
        return Err(CliError::Usage("the map is not defined on K6".into()));
    }
    let emb = graph_embedding_check(f);
    ctx.report.check("embedding", emb.is_ok(), emb.as_ref().err().map(|e| e.to_string()).unwrap_or_else(|| "images of edges meet only at shared vertices".into()));
    let m = link_matrix(f)?;
    let odd = m.0.iter().filter(|x| *x % 2 != 0).count();
    ctx.report.value("link_matrix", m.to_string());
    ctx.report.value("odd_pairs", odd);
    Ok(m)
}

fn k6_cmd(c: &K6Cmd, ctx: &mut Ctx) -> Res {
    match c {
        K6Cmd::Base => {
            let f = base_embedding_k6();
            let m = k6_facts(&f, ctx)?;
            ctx.report.check("canonical matrix", m == LinkMatrix::canonical(), format!("{:?}", m.0));
            ctx.write_artifact(&f.to_json())
        }
        K6Cmd::Matrix { input } => {
            let f = read_map(input, ctx)?;
            let m = k6_facts(&f, ctx)?;
            ctx.report.check("odd sum", m.0.iter().sum::<i64>() % 2 != 0, format!("sum {}", m.0.iter().sum::<i64>()));
            ctx.write_artifact(&m.to_json())
        }
        K6Cmd::Move { input, a, b, m } => {
            let f = read_map(input, ctx)?;
            let spec = MoveSpec::new(*a, *b, *m).map_err(|e| CliError::Usage(e.to_string()))?;
            let before = link_matrix(&f)?;
            let seed = ctx.seed_or_zero();
            let g = finger_move(&f, &spec, FingerOptions { seed, ..Default::default() })?;
            let after = k6_facts(&g, ctx)?;
            let want = linkage_core::linking::move_delta(&spec)?;
            let delta = after.sub(&before);
            ctx.report.check("delta matches prediction", delta == want, format!("delta {:?}", delta.0));
            ctx.report.value("move", spec);
            ctx.write_artifact(&g.to_json())
        }
        K6Cmd::Realize { z } => {
            let seed = ctx.seed_or_zero();
            let f = realize_odd_link(*z, FingerOptions { seed, ..Default::default() })?;
            let m = k6_facts(&f, ctx)?;
            let mut want = LinkMatrix::zero();
            want.0[0] = 2 * z + 1;
            ctx.report.check("target matrix", m == want, format!("lk(123,456) = {}", m.0[0]));
            ctx.write_artifact(&f.to_json())
        }
        K6Cmd::Cgs { trials } => {
            let seed = ctx.require_seed()?;
            let r = cgs_trials(*trials, seed)?;
            ctx.report.check("odd sum in every trial", r.all_odd(), format!("{}/{} odd", r.odd, r.trials));
            ctx.report.value("histogram", r.histogram);
            ctx.report.value("failing_seeds", &r.failing_seeds);
            ctx.write_artifact(&serde_json::to_value(&r).expect("json"))
        }
        K6Cmd::XiCheck => {
            let found = xi_contradiction()?;
            ctx.report.check("found cycle verifies", found.verify().is_ok(), format!("{} steps", found.steps.len()));
            let reference = xi_reference_chain();
            ctx.report.check("reference cycle verifies", reference.verify().is_ok(), format!("{} steps", reference.steps.len()));
            ctx.write_artifact(&json!({ "found": found, "reference": reference }))
        }
    }
}

fn suspend(input: &PathBuf, k: u32, l: u32, z: Option<i64>, ctx: &mut Ctx) -> Res {
    let mut f = read_map(input, ctx)?;
    let seed = ctx.seed_or_zero();
    if f.complex() == &k6() {
        f = k6_to_f11_minus(&f)?;
        ctx.report.value("converted", "K6 to F_{1,1,-}");
    }
    let is = |kk: u32, ll: u32| build_family(FamilySelector::FMinus { k: kk, l: ll }).map(|c| &c == f.complex()).unwrap_or(false);
    let dir = if k > 0 && is(k - 1, l) {
        Direction::RaiseK
    } else if l > 0 && is(k, l - 1) {
        Direction::RaiseL
    } else {
        return Err(CliError::Usage(format!("input is neither F_{{{},{l},-}} nor F_{{{k},{},-}}", k as i64 - 1, l as i64 - 1)));
    };
    ctx.report.value("direction", dir);
    let g = suspend_almost_embedding(&f, k, l, dir, SuspendOptions { seed, ..Default::default() })?;
    match almost_embedding_check(&g) {
        AlmostEmbedding::Ok => ctx.report.check("almost embedding", true, "disjoint faces have disjoint images"),
        AlmostEmbedding::Witness { left, right, .. } => {
            ctx.report.check("almost embedding", false, format!("{left:?} and {right:?} meet"))
        }
    }
    let lk = sphere_linking(&g, k, l)?;
    ctx.report.value("sphere_linking", lk);
    if let Some(z) = z {
        ctx.report.check("sphere linking", lk == 2 * z + 1, format!("lk {lk}, want {}", 2 * z + 1));
    }
    ctx.write_artifact(&g.to_json())
}

fn vk(c: &VkCmd, ctx: &mut Ctx) -> Res {
    match c {
        VkCmd::Number { complex, map, d } => {
            let k = read_complex(complex, ctx)?;
            let f = read_map(map, ctx)?;
            if f.complex() != &k {
                return Err(CliError::Usage("the map is defined on a different complex".into()));
            }
            if f.dim() != *d {
                return Err(CliError::Usage(format!("the map goes to R^{}, not R^{d}", f.dim())));
            }
            let v = van_kampen_number(&f)?;
            ctx.report.check("parity condition", pa_condition(&k, *d).is_ok(), format!("d = {d}"));
            ctx.report.value("van_kampen_number", v);
            Ok(())
        }
        VkCmd::PaCheck { complex, d } => {
            let k = read_complex(complex, ctx)?;
            let r = pa_condition(&k, *d);
            ctx.report.check("parity condition", r.is_ok(), format!("{} pairs examined", r.pairs));
            ctx.report.value("witness", &r.witness);
            Ok(())
        }
        VkCmd::Trial { family: fa, trials, d } => {
            let seed = ctx.require_seed()?;
            let (sel, k) = family(fa, ctx)?;
            let d = d.unwrap_or((fa.k + fa.l + 1) as usize);
            let r = vk_invariance_trial(&k, d, *trials, seed)?;
            ctx.report.check("parity condition", r.pa.is_ok(), format!("{} pairs", r.pa.pairs));
            ctx.report.check("same value for every map", r.all_equal(), format!("values {:?}", r.values));
            if let (FamilySelector::F { .. }, Some(v)) = (sel, r.common_value()) {
                ctx.report.check("value is 1", v == 1, format!("v(f) = {v}"));
            }
            if *trials > 0 {
                ctx.write_artifact(&random_rational_map(&k, d, seed, RandomMapOptions::default())?.to_json())?;
            }
            Ok(())
        }
    }
}

fn deleted(c: &DeletedCmd, ctx: &mut Ctx) -> Res {
    match c {
        DeletedCmd::Product(a) => {
            let (sel, k) = family(a, ctx)?;
            let p = deleted_product(&k);
            let dim = p.dim().unwrap_or(0);
            ctx.report.value("cells", p.len());
            ctx.report.value("dim", dim);
            ctx.report.value("top_cells", p.cells_of_dim(dim).len());
            if let FamilySelector::F { k: kk, l } = sel {
                let r = pseudomanifold_check(&p, (kk + l + 1) as usize);
                ctx.report.check("closed pseudomanifold", r.is_closed_pseudomanifold(), format!("{r:?}"));
            }
            ctx.write_artifact(&p.to_json(None))
        }
        DeletedCmd::Join(a) => {
            let (sel, k) = family(a, ctx)?;
            let j = deleted_join(&k)?;
            let r = j.pseudomanifold_check();
            ctx.report.value("dim", j.dim());
            ctx.report.value("euler_characteristic", j.euler_characteristic());
            ctx.report.value("cells", j.cells().count());
            if let FamilySelector::F { k: kk, l } = sel {
                ctx.report.check("closed pseudomanifold", r.is_closed_pseudomanifold(), format!("{r:?}"));
                let chi = if (kk + l) % 2 == 0 { 2 } else { 0 };
                ctx.report.check("sphere euler characteristic", j.euler_characteristic() == chi, format!("want {chi}"));
            }
            let cells: Vec<Value> = j.cells().map(|c| json!({ "left": c.left, "right": c.right })).collect();
            ctx.write_artifact(&json!({ "format_version": linkage_core::FORMAT_VERSION, "cells": cells }))
        }
    }
}

fn bier(kl: KL, ctx: &mut Ctx) -> Res {
    let d = self_duality_check(kl.k, kl.l)?;
    ctx.report.check("self-dual", d.is_ok(), format!("{} subsets, witness {:?}", d.subsets, d.witness));
    let j = deleted_join(&build_family(FamilySelector::F { k: kl.k, l: kl.l })?)?;
    let r = j.pseudomanifold_check();
    ctx.report.check("deleted join is a closed pseudomanifold", r.is_closed_pseudomanifold(), format!("{r:?}"));
    let chi = if (kl.k + kl.l) % 2 == 0 { 2 } else { 0 };
    ctx.report.check("euler characteristic of a sphere", j.euler_characteristic() == chi, format!("chi {}", j.euler_characteristic()));
    ctx.report.check("dimension", j.dim() == (kl.k + kl.l + 2) as isize, format!("dim {}", j.dim()));
    Ok(())
}

fn orient(kl: KL, ctx: &mut Ctx) -> Res {
    let a = orient_deleted_product(kl.k, kl.l)?;
    let r = closedness_check(&a)?;
    ctx.report.check("boundary cancels", r.is_ok(), format!("{} codimension-one cells, witness {:?}", r.checked, r.witness));
    let s = involution_sign(&a)?;
    let want = if (kl.k + kl.l) % 2 == 0 { 1 } else { -1 };
    ctx.report.check("exchange sign", s == want, format!("sign {s}, want {want}"));
    ctx.report.value("top_cells", a.len());
    ctx.write_artifact(&a.product()?.to_json(Some(&a)))
}

fn ledger(c: &LedgerCmd, ctx: &mut Ctx) -> Res {
    match c {
        LedgerCmd::PathRealize { kl, z, base_degree } => {
            let seed = ctx.seed_or_zero();
            let (l, r) = realize_by_path(kl.k, kl.l, *z, *base_degree, PathOptions { seed })?;
            ctx.report.check("equivariant", l.check_equivariance().is_ok(), "D(πU) = -D(U)");
            ctx.report.check(
                "shifts",
                r.d_u0 - r.base_u0 == 2 * z && r.d_um - r.base_um == -2 * z,
                format!("U_0 {} -> {}, U_m {} -> {}", r.base_u0, r.d_u0, r.base_um, r.d_um),
            );
            ctx.report.value("path", serde_json::to_value(&r).expect("json"));
            ctx.write_artifact(&l.to_json())
        }
        LedgerCmd::Explicit { kl, z } => {
            let r = explicit_verify(kl.k, kl.l, *z)?;
            ctx.report.check("terms match", r.terms_match(), format!("{} terms", r.terms.len()));
            ctx.report.check("no stray cells", r.uncovered.is_empty(), format!("{:?}", r.uncovered));
            ctx.report.check("sphere degree", r.sphere_degree == 2 * z + 1, format!("{}", r.sphere_degree));
            ctx.report.value("modifications", r.modifications);
            ctx.report.value("sphere_contributors", &r.sphere_contributors);
            let list: Vec<Value> = explicit_list(kl.k, kl.l, *z)?
                .iter()
                .map(|(s, t, a)| json!({ "sigma": s.seq(), "sigma_sign": s.sign(), "tau": t.seq(), "tau_sign": t.sign(), "a": a }))
                .collect();
            ctx.write_artifact(&json!({ "format_version": linkage_core::FORMAT_VERSION, "list": list, "report": r }))
        }
        LedgerCmd::RealizeCochain { kl, target } => {
            let v = ctx.read_json(target)?;
            let c = DegreeLedger::degrees_from_json(&v)?;
            match realize_cochain(kl.k, kl.l, &c)? {
                CochainRealization::Modifications(m) => {
                    ctx.report.check("realizable", true, format!("{} modifications, replay matches", m.len()));
                    ctx.write_artifact(&json!({ "modifications": m }))
                }
                CochainRealization::Infeasible(cert) => {
                    ctx.report.check("realizable", false, format!("certificate modulo {}", cert.modulus));
                    ctx.write_artifact(&json!({ "certificate": cert }))
                }
            }
        }
    }
}
