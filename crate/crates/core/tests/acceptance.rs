//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quadop_core::catalog::{catalog, catalog_names, resolve, textual_source};
use quadop_core::dong::{dong_table, dong_verdict, Verdict};
use quadop_core::free3::GeneratorSpace;
use quadop_core::koszul::{dual_generators, dual_operad, verify_jacobi_duality};
use quadop_core::linalg::{Rational, SubspaceQ};
use quadop_core::locality::{locality_sweep, LocalityParams};
use quadop_core::manin::{black_direct, black_product, split, white_product, SplitMode};
use quadop_core::operad::{change_basis, make_operad, QuadOperad};
use quadop_core::par::Exec;
use quadop_core::parse::{parse_relation, pretty_print};
use quadop_core::random::{random_equivariant, random_free3_vector, random_generator_space, random_involution, random_operad};
use quadop_core::selfcheck::pois_without_leibniz;
use quadop_core::PermS3;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn get(expr: &str) -> Result<QuadOperad, String> {
    resolve(expr).map(|p| p.as_ref().clone()).map_err(err)
}

fn all_catalog() -> Result<Vec<QuadOperad>, String> {
    catalog_names().into_iter().map(get).collect()
}

fn np_dimension() -> Outcome {
    let (gens, texts) = textual_source("NP").ok_or("NP missing")?;
    ensure(texts.len() == 5, || format!("{} identities", texts.len()))?;
    let np = make_operad("NP", gens, &texts).map_err(err)?;
    let dual = dual_operad(&np).map_err(err)?;
    let got = (np.dims().relations, np.dims().p3, dual.dims().p3);
    ensure(got == (16, 11, 16), || format!("(dim R, dim NP(3), dim NP!(3)) = {got:?}"))?;
    Ok("dim R = 16, dim NP(3) = 11, dim NP!(3) = 16".into())
}

const DONG: [&str; 13] =
    ["Com", "Lie", "As", "Pois", "Nov", "NP", "Alt", "Perm", "Leib", "diAs", "diNov", "dual(GD)", "ComTriAs"];
const NOT_DONG: [&str; 6] = ["Zinb", "preLie", "preAs", "dual(NP)", "GD", "postLie"];

fn verdict_table() -> Outcome {
    let names: Vec<&str> = DONG.iter().chain(NOT_DONG.iter()).copied().collect();
    let operads = names.iter().map(|n| get(n)).collect::<Result<Vec<_>, _>>()?;
    let reports = dong_table(&operads, Exec::default()).map_err(err)?;
    let mut wrong = Vec::new();
    for (name, r) in names.iter().zip(&reports) {
        let expected = if DONG.contains(name) { Verdict::Dong } else { Verdict::NotDong };
        if r.verdict != expected {
            wrong.push(format!("{name} is {} (kernel dim {}), expected {expected}", r.verdict, r.kernel_dim));
        }
    }
    ensure(wrong.is_empty(), || wrong.join("; "))?;
    Ok(format!("{} verdicts match", names.len()))
}

fn pre_as_witness() -> Outcome {
    let pre_as = get("preAs")?;
    let report = dong_verdict(&pre_as).map_err(err)?;
    let dual = dual_operad(&pre_as).map_err(err)?;
    let target =
        parse_relation("(x1 {vdash} x2) {vdash} x3 - (x1 {dashv} x2) {vdash} x3", dual.gens()).map_err(err)?;
    let kernel = SubspaceQ::span(dual.gens().free3_dim(), &report.kernel);
    ensure(kernel.contains(&target).map_err(err)?, || format!("kernel {:?} lacks the witness", report.witnesses_pqt))?;
    Ok(format!("kernel dim {} contains (p⊢q)⊢t - (p⊣q)⊢t", report.kernel_dim))
}

fn duality_involutive() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut operads = all_catalog()?;
    for k in 0..20 {
        let g = random_generator_space(&mut rng, 1 + k % 3, k % 2 == 1);
        operads.push(random_operad(&mut rng, g, 1 + k % 3));
    }
    for p in &operads {
        let dual = dual_operad(p).map_err(err)?;
        let back = dual_operad(&dual).map_err(err)?;
        ensure(back.relations() == p.relations(), || format!("{}: (R⊥)⊥ ≠ R", p.name()))?;
        let total = p.relations().dim() + dual.relations().dim();
        ensure(total == 3 * p.gens().dim().pow(2), || format!("{}: dim R + dim R⊥ = {total}", p.name()))?;
    }
    Ok(format!("{} operads", operads.len()))
}

fn jacobi() -> Outcome {
    let operads = all_catalog()?;
    for p in &operads {
        let dual = dual_operad(p).map_err(err)?;
        let r = verify_jacobi_duality(p, &dual).map_err(err)?;
        ensure(r.is_ok(), || format!("{} fails in degree {}", p.name(), r.clone().unwrap_err().degree))?;
    }
    let perturbed = pois_without_leibniz().map_err(err)?;
    let full_dual = dual_operad(&get("Pois")?).map_err(err)?;
    let r = verify_jacobi_duality(&perturbed, &full_dual).map_err(err)?;
    let w = r.err().ok_or("Pois without the Leibniz rule passed")?;
    ensure(!w.entries.is_empty(), || "empty witness".into())?;
    Ok(format!("{} pairs pass; perturbed Pois fails with {} nonzero entries", operads.len(), w.entries.len()))
}

/// `⟨e_a, e_b⟩` is the identity pairing between the monomial bases.
fn pairing(f: &[Rational], g: &[Rational]) -> Rational {
    f.iter().zip(g).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

fn pairing_equivariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0usize;
    for k in 0..10 {
        let d = 1 + k % 4;
        let v = GeneratorSpace::new((1..=d).map(|i| format!("o{i}")).collect(), random_involution(&mut rng, d))
            .map_err(err)?;
        let vd = dual_generators(&v);
        let n = v.free3_dim();
        for pi in PermS3::ALL {
            let sgn = Rational::from_integer(pi.sign().into());
            for a in 0..n {
                let fa = vd.act(pi, &vd.unit(vd.mono(a)));
                for b in 0..n {
                    let gb = v.act(pi, &v.unit(v.mono(b)));
                    let base = if a == b { Rational::from_integer(1.into()) } else { Rational::zero() };
                    ensure(pairing(&fa, &gb) == &sgn * base, || format!("d = {d}, π = {pi}, ({a}, {b})"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (π, basis pair) checks over 10 swaps"))
}

fn product_identities() -> Outcome {
    let com = get("Com")?;
    let lie = get("Lie")?;
    for name in ["As", "Nov", "Pois"] {
        let p = get(name)?;
        let w = white_product(&com, &p).map_err(err)?;
        ensure(w.gens().swap() == p.gens().swap() && w.relations() == p.relations(), || {
            format!("white(Com, {name}) ≠ {name}")
        })?;
        let b = black_product(&p, &lie).map_err(err)?;
        ensure(b.dims() == p.dims(), || format!("black({name}, Lie) dims {:?}", b.dims()))?;
    }
    for (a, b) in [("Leib", "Nov"), ("Nov", "Pois"), ("As", "Lie")] {
        let (p, q) = (get(a)?, get(b)?);
        let x = black_product(&p, &q).map_err(err)?;
        let y = black_direct(&p, &q).map_err(err)?;
        ensure(x.gens().swap() == y.gens().swap() && x.relations() == y.relations(), || {
            format!("black({a}, {b}) ≠ black_direct")
        })?;
    }
    Ok("white(Com,P) = P, black(P,Lie) ≅ P, black = black_direct on 3 pairs".into())
}

fn leibniz_novikov() -> Outcome {
    let black = black_product(&get("Leib")?, &get("Nov")?).map_err(err)?;
    let di_nov = white_product(&get("Perm")?, &get("Nov")?).map_err(err)?;
    let ids = [
        "(a < b) < c - (a < c) < b",
        "(a < b) > c - (a > c) < b",
        "(a > b) < c - (a > c) > b",
        "(a < b) > c - (a > b) > c",
        "a < (b > c) - a < (b < c)",
        "(a < b) < c - (b > a) < c - a < (b < c) + b > (a < c)",
        "(a < b) < c - (b > a) < c - a < (b > c) + b > (a < c)",
        "(a < b) > c - (b > a) > c - a > (b > c) + b > (a > c)",
        "(a > b) > c - (b < a) > c - a > (b > c) + b > (a > c)",
    ];
    for id in ids {
        // a ⊣ b and a ⊢ b under the Zinbiel-fixed dictionary
        let text = id
            .replace('a', "x1")
            .replace('b', "x2")
            .replace('c', "x3")
            .replace('<', "{m_op*b•g1}")
            .replace('>', "{m*b•g1}");
        let v = parse_relation(&text, black.gens()).map_err(err)?;
        ensure(black.relations().contains(&v).map_err(err)?, || format!("`{id}` is not a relation"))?;
    }
    ensure(black.relations().dim() == di_nov.relations().dim(), || {
        format!("dim {} vs {}", black.relations().dim(), di_nov.relations().dim())
    })?;
    Ok(format!("9 identities are relations; dim R = {}", black.relations().dim()))
}

fn closure_theorems() -> Outcome {
    let base = ["Com", "Lie", "As", "Nov", "Pois"];
    let mut exprs = Vec::new();
    for i in 0..base.len() {
        for j in i..base.len() {
            exprs.push(format!("black({}, {})", base[i], base[j]));
        }
        exprs.push(format!("di({})", base[i]));
        exprs.push(format!("tri({})", base[i]));
    }
    let operads = exprs.iter().map(|e| get(e)).collect::<Result<Vec<_>, _>>()?;
    let reports = dong_table(&operads, Exec::default()).map_err(err)?;
    for (e, r) in exprs.iter().zip(&reports) {
        ensure(r.verdict == Verdict::Dong, || format!("{e} is not Dong"))?;
    }
    let textual = ["Com", "Lie", "As", "Pois", "Nov", "NP", "GD", "Alt", "Perm", "Zinb"];
    let jobs: Vec<(&str, SplitMode)> =
        textual.iter().flat_map(|n| [(*n, SplitMode::Pre), (*n, SplitMode::Post)]).collect();
    let verdicts = Exec::default().map(&jobs, |(n, mode)| -> quadop_core::Result<Verdict> {
        let p = catalog(n)?;
        let s = split(&p, *mode)?;
        dong_verdict(&s).map(|r| r.verdict)
    });
    for ((n, mode), v) in jobs.iter().zip(verdicts) {
        let v = v.map_err(err)?;
        ensure(v == Verdict::NotDong, || format!("{mode:?}({n}) is Dong"))?;
    }
    Ok(format!("{} products Dong, {} splittings NotDong", exprs.len(), jobs.len()))
}

fn basis_invariance() -> Outcome {
    let operads = all_catalog()?;
    let results = Exec::default().map(&operads, |p| -> Result<(), String> {
        let mut rng = ChaCha8Rng::seed_from_u64(p.name().bytes().map(u64::from).sum());
        let v = dong_verdict(p).map_err(err)?.verdict;
        for _ in 0..10 {
            let t = random_equivariant(&mut rng, p.gens().swap());
            let moved = change_basis(p, &t).map_err(err)?;
            ensure(dong_verdict(&moved).map_err(err)?.verdict == v, || format!("{} changed verdict", p.name()))?;
        }
        Ok(())
    });
    results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(format!("{} operads × 10 basis changes", operads.len()))
}

fn locality_sweep_agreement() -> Outcome {
    let mut lines = Vec::new();
    for name in ["Lie", "Com", "Nov", "preLie", "Zinb"] {
        let p = get(name)?;
        let dong = dong_verdict(&p).map_err(err)?.verdict == Verdict::Dong;
        let lab = locality_sweep(&p, LocalityParams::default(), Exec::default()).map_err(err)?;
        ensure(lab.all_local == dong, || format!("{name}: all pairs local = {}, Dong = {dong}", lab.all_local))?;
        if name == "Lie" {
            let n = lab.pairs[0].min_order;
            ensure(matches!(n, Some(x) if x <= 2), || format!("Lie order {n:?}"))?;
        }
        let found = lab.pairs.iter().filter(|o| o.min_order.is_some()).count();
        lines.push(format!("{name} {found}/{}", lab.pairs.len()));
    }
    Ok(format!("local pairs: {}", lines.join(", ")))
}

fn parser_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for k in 0..500 {
        let g = random_generator_space(&mut rng, 1 + k % 3, k % 2 == 0);
        let v = random_free3_vector(&mut rng, &g, 1 + k % 6);
        let text = pretty_print(&v, &g);
        let back = parse_relation(&text, &g).map_err(err)?;
        ensure(back == v, || format!("`{text}` re-parses differently"))?;
    }
    Ok("500 vectors".into())
}

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "NP relation dimension", limit: secs(1), run: np_dimension },
        Criterion { id: 2, name: "Dong verdict table", limit: secs(10), run: verdict_table },
        Criterion { id: 3, name: "preAs witness", limit: secs(1), run: pre_as_witness },
        Criterion { id: 4, name: "duality involutivity", limit: secs(10), run: duality_involutive },
        Criterion { id: 5, name: "Jacobi validation", limit: secs(5), run: jacobi },
        Criterion { id: 6, name: "pairing equivariance", limit: secs(5), run: pairing_equivariance },
        Criterion { id: 7, name: "product identities", limit: secs(60), run: product_identities },
        Criterion { id: 8, name: "Leib • Nov worked example", limit: secs(60), run: leibniz_novikov },
        Criterion { id: 9, name: "closure theorems", limit: secs(300), run: closure_theorems },
        Criterion { id: 10, name: "basis invariance", limit: secs(30), run: basis_invariance },
        Criterion { id: 11, name: "locality sweep K=6 Nmax=4 k=0", limit: secs(600), run: locality_sweep_agreement },
        Criterion { id: 12, name: "parser round trip", limit: secs(5), run: parser_round_trip },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let took = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if took <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!(
            "{} {:>2} {:<32} {:>8.3}s / {:>4}s  {}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            took.as_secs_f64(),
            c.limit.as_secs(),
            detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
