//! Invariant suites run by `quadop selfcheck`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::{catalog, catalog_names, textual_source};
use crate::dong::{dong_verdict, Verdict};
use crate::error::Result;
use crate::koszul::{dual_operad, pairing_matrix, verify_jacobi_duality};
use crate::locality::{locality_sweep, LocalityParams};
use crate::manin::{black_direct, black_product};
use crate::operad::{change_basis, make_operad, QuadOperad};
use crate::par::Exec;
use crate::parse::{parse_relation, pretty_print};
use crate::random::{random_equivariant, random_free3_vector, random_generator_space, random_involution, random_operad};
use crate::free3::GeneratorSpace;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &str, r: Result<std::result::Result<String, String>>) -> CheckOutcome {
    let (passed, detail) = match r {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(e) => (false, format!("error: {e}")),
    };
    CheckOutcome { name: name.to_string(), passed, detail }
}

fn all_catalog() -> Result<Vec<QuadOperad>> {
    catalog_names().into_iter().map(|n| catalog(n).map(|p| p.as_ref().clone())).collect()
}

/// `(R⊥)⊥ = R` and `dim R + dim R⊥ = 3d²`.
pub fn check_duality(operads: &[QuadOperad]) -> Result<std::result::Result<String, String>> {
    for p in operads {
        let dual = dual_operad(p)?;
        if dual.relations().dim() + p.relations().dim() != p.gens().free3_dim() {
            return Ok(Err(format!("{}: dimension formula fails", p.name())));
        }
        if dual_operad(&dual)?.relations() != p.relations() {
            return Ok(Err(format!("{}: double dual differs", p.name())));
        }
    }
    Ok(Ok(format!("{} operads", operads.len())))
}

/// Poisson identities without the Leibniz rule.
pub fn pois_without_leibniz() -> Result<QuadOperad> {
    let (gens, texts) = textual_source("Pois").expect("Pois is textual");
    let kept: Vec<&str> = texts.into_iter().filter(|t| !(t.contains("{c}") && t.contains("{b}"))).collect();
    make_operad("Pois-", gens, &kept)
}

pub fn check_jacobi(operads: &[QuadOperad]) -> Result<std::result::Result<String, String>> {
    for p in operads {
        if let Err(w) = verify_jacobi_duality(p, &dual_operad(p)?)? {
            return Ok(Err(format!("{}: degree {} defect", p.name(), w.degree)));
        }
    }
    let full = catalog("Pois")?;
    if verify_jacobi_duality(&pois_without_leibniz()?, &dual_operad(&full)?)?.is_ok() {
        return Ok(Err("perturbed Pois passed".into()));
    }
    Ok(Ok(format!("{} pairs, perturbation detected", operads.len())))
}

pub fn check_pairing(rng: &mut ChaCha8Rng, count: usize) -> Result<std::result::Result<String, String>> {
    for k in 0..count {
        let d = 1 + k % 4;
        let g = GeneratorSpace::new((1..=d).map(|i| format!("o{i}")).collect(), random_involution(rng, d))?;
        pairing_matrix(&g)?;
    }
    Ok(Ok(format!("{count} random swaps")))
}

pub fn check_parser(rng: &mut ChaCha8Rng, count: usize) -> Result<std::result::Result<String, String>> {
    for k in 0..count {
        let g = random_generator_space(rng, 1 + k % 3, k % 2 == 0);
        let v = random_free3_vector(rng, &g, 4);
        let text = pretty_print(&v, &g);
        if parse_relation(&text, &g)? != v {
            return Ok(Err(format!("round trip failed on `{text}`")));
        }
    }
    Ok(Ok(format!("{count} vectors")))
}

pub fn check_black_routes(pairs: &[(&str, &str)]) -> Result<std::result::Result<String, String>> {
    for (a, b) in pairs {
        let (p, q) = (catalog(a)?, catalog(b)?);
        if black_product(&p, &q)?.relations() != black_direct(&p, &q)?.relations() {
            return Ok(Err(format!("black({a}, {b}) routes differ")));
        }
    }
    Ok(Ok(format!("{} pairs", pairs.len())))
}

pub fn check_basis_invariance(
    rng: &mut ChaCha8Rng,
    operads: &[QuadOperad],
    per_operad: usize,
) -> Result<std::result::Result<String, String>> {
    for p in operads {
        let v = dong_verdict(p)?.verdict;
        for _ in 0..per_operad {
            let t = random_equivariant(rng, p.gens().swap());
            if dong_verdict(&change_basis(p, &t)?)?.verdict != v {
                return Ok(Err(format!("{}: verdict changed under a basis change", p.name())));
            }
        }
    }
    Ok(Ok(format!("{} operads × {per_operad}", operads.len())))
}

pub fn check_locality(names: &[&str], exec: Exec) -> Result<std::result::Result<String, String>> {
    for name in names {
        let p = catalog(name)?;
        let dong = dong_verdict(&p)?.verdict == Verdict::Dong;
        let lab = locality_sweep(&p, LocalityParams::default(), exec)?;
        if lab.all_local != dong {
            return Ok(Err(format!("{name}: sweep says local={} but verdict is {}", lab.all_local, dong)));
        }
    }
    Ok(Ok(format!("{} operads at default window", names.len())))
}

/// Runs every suite; deterministic for a fixed seed.
pub fn run_selfcheck(seed: u64, exec: Exec) -> Vec<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let cat = all_catalog();
    let cat = match cat {
        Ok(c) => c,
        Err(e) => {
            out.push(CheckOutcome { name: "catalog".into(), passed: false, detail: e.to_string() });
            return out;
        }
    };
    out.push(CheckOutcome { name: "catalog".into(), passed: true, detail: format!("{} entries", cat.len()) });

    let mut dual_set = cat.clone();
    for k in 0..10 {
        let g = random_generator_space(&mut rng, 1 + k % 3, k % 2 == 0);
        dual_set.push(random_operad(&mut rng, g, 2));
    }
    out.push(outcome("duality", check_duality(&dual_set)));
    out.push(outcome("jacobi", check_jacobi(&cat)));
    out.push(outcome("pairing", check_pairing(&mut rng, 8)));
    let methods = exec.map(&cat, |p| dong_verdict(p).map(|r| r.method_agreement));
    let agree: Result<Vec<bool>> = methods.into_iter().collect();
    out.push(outcome(
        "dong_methods",
        agree.map(|v| if v.iter().all(|x| *x) { Ok(format!("{} operads", v.len())) } else { Err("methods disagree".into()) }),
    ));
    out.push(outcome("black_routes", check_black_routes(&[("Leib", "Nov"), ("As", "Lie")])));
    out.push(outcome("parser", check_parser(&mut rng, 200)));
    out.push(outcome("basis_invariance", check_basis_invariance(&mut rng, &cat, 2)));
    out.push(outcome("locality", check_locality(&["Lie", "Com", "preLie", "Zinb"], exec)));
    out
}
